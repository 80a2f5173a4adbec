//! Exact rational linear algebra over small dense matrices.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Rat = BigRational;
pub(crate) type Row = Vec<Rat>;

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped) and
/// the pivot column of each.
pub(crate) fn rref(rows: &[Row], ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub(crate) fn rank(rows: &[Row], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row . x = 0 for all rows}`, one vector per free column, with
/// the free coordinate set to 1.
pub(crate) fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Affine solution set `{x : A x = b}` as a particular solution plus a
/// nullspace basis, or `None` when inconsistent.
pub(crate) fn solve_affine(a: &[Row], b: &[Rat], ncols: usize) -> Option<(Row, Vec<Row>)> {
    let aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some((x, nullspace(a, ncols)))
}

/// Unique solution of a square system, `None` if singular.
pub(crate) fn solve_square(a: &[Row], b: &[Rat]) -> Option<Row> {
    let n = b.len();
    let (x, null) = solve_affine(a, b, n)?;
    if !null.is_empty() || rank(a, n) < n {
        return None;
    }
    Some(x)
}

pub(crate) fn inverse(a: &[Row]) -> Option<Vec<Row>> {
    let n = a.len();
    let aug: Vec<Row> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Dimension of the affine hull of a nonempty point set.
pub(crate) fn affine_rank(points: &[Row]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Row> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(x, y)| x - y).collect())
        .collect();
    rank(&diffs, first.len())
}

pub(crate) fn barycenter(points: &[Row]) -> Row {
    let n = Rat::from_integer(points.len().into());
    let dim = points[0].len();
    (0..dim)
        .map(|i| points.iter().fold(Rat::zero(), |acc, p| acc + &p[i]) / &n)
        .collect()
}

/// A linear inequality `normal . x >= rhs`.
#[derive(Clone, Debug)]
pub(crate) struct Ineq {
    pub normal: Row,
    pub rhs: Rat,
}

impl Ineq {
    pub(crate) fn slack(&self, x: &[Rat]) -> Rat {
        dot(&self.normal, x) - &self.rhs
    }
}

/// Basic feasible solutions of `{x : ineqs}`: all points where `dim`
/// linearly independent inequalities are tight. For a bounded system these
/// are exactly its vertices. Deduplicated and sorted.
pub(crate) fn basic_solutions(ineqs: &[Ineq], dim: usize) -> Vec<Row> {
    if dim == 0 {
        return if ineqs.iter().all(|h| !h.rhs.is_positive()) {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out: Vec<Row> = Vec::new();
    for subset in (0..ineqs.len()).combinations(dim) {
        let a: Vec<Row> = subset.iter().map(|&i| ineqs[i].normal.clone()).collect();
        let b: Vec<Rat> = subset.iter().map(|&i| ineqs[i].rhs.clone()).collect();
        let Some(x) = solve_square(&a, &b) else {
            continue;
        };
        if ineqs.iter().all(|h| !h.slack(&x).is_negative()) {
            out.push(x);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Vertices of the bounded polyhedron `{x : ineqs, eqs}` with `eqs` given as
/// inequalities to be held tight. Empty when infeasible.
pub(crate) fn bounded_vertices(ineqs: &[Ineq], eqs: &[Ineq], dim: usize) -> Vec<Row> {
    let a: Vec<Row> = eqs.iter().map(|e| e.normal.clone()).collect();
    let b: Vec<Rat> = eqs.iter().map(|e| e.rhs.clone()).collect();
    let Some((x0, null)) = solve_affine(&a, &b, dim) else {
        return Vec::new();
    };
    let sub = null.len();
    let mut reduced = Vec::with_capacity(ineqs.len());
    for h in ineqs {
        let normal: Row = null.iter().map(|n| dot(&h.normal, n)).collect();
        let rhs = &h.rhs - dot(&h.normal, &x0);
        if normal.iter().all(Zero::is_zero) {
            if rhs.is_positive() {
                return Vec::new();
            }
            continue;
        }
        reduced.push(Ineq { normal, rhs });
    }
    let mut pts: Vec<Row> = basic_solutions(&reduced, sub)
        .into_iter()
        .map(|y| {
            let mut x = x0.clone();
            for (coef, n) in y.iter().zip(&null) {
                for (xi, ni) in x.iter_mut().zip(n) {
                    *xi += coef * ni;
                }
            }
            x
        })
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn row(v: &[i64]) -> Row {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![row(&[1, -1, 0]), row(&[2, -2, 0])];
        assert_eq!(rank(&rows, 3), 1);
        let null = nullspace(&rows, 3);
        assert_eq!(null, vec![row(&[1, 1, 0]), row(&[0, 0, 1])]);
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = vec![row(&[2, 1]), row(&[1, 1])];
        assert_eq!(inverse(&a).unwrap(), vec![row(&[1, -1]), row(&[-1, 2])]);
        assert!(inverse(&[row(&[1, 2]), row(&[2, 4])]).is_none());
    }

    #[test]
    fn vertices_with_equalities() {
        // unit square cut by x = y
        let ineqs = vec![
            Ineq { normal: row(&[1, 0]), rhs: r(0) },
            Ineq { normal: row(&[-1, 0]), rhs: r(-1) },
            Ineq { normal: row(&[0, 1]), rhs: r(0) },
            Ineq { normal: row(&[0, -1]), rhs: r(-1) },
        ];
        let eqs = vec![Ineq { normal: row(&[1, -1]), rhs: r(0) }];
        assert_eq!(bounded_vertices(&ineqs, &eqs, 2), vec![row(&[0, 0]), row(&[1, 1])]);
        let off = vec![Ineq { normal: row(&[1, 1]), rhs: r(3) }];
        assert!(bounded_vertices(&ineqs, &off, 2).is_empty());
    }
}
