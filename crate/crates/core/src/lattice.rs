//! Integer lattice arithmetic on `Z^d` and rational covectors on its dual.
//!
//! Vectors of the lattice (facet normals, ray generators, complement bases)
//! are [`LatticeVector`]s; points of the dual space (vertices, translations,
//! annihilator covectors) are [`DualVector`]s. The pairing between them is
//! the standard dot product in the fixed basis of `Z^d`.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().cloned().map(BigRational::from_integer).collect()
    }

    pub fn to_dual(&self) -> DualVector {
        DualVector(self.to_rational())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector(Vec<BigRational>);

impl DualVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Build from `(numerator, denominator)` pairs.
    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Self(
            coords
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// Evaluate the covector on a lattice vector.
    pub fn pair(&self, v: &LatticeVector) -> BigRational {
        self.0
            .iter()
            .zip(v.coords())
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &DualVector) -> DualVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DualVector) -> DualVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> DualVector {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// Integer coordinates, if every entry is integral.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_integral()
            .then(|| LatticeVector(self.0.iter().map(|x| x.to_integer()).collect()))
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: &[LatticeVector], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.dim() });
            }
            entries.extend_from_slice(r.coords());
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<LatticeVector> = rows.iter().map(|r| LatticeVector::from_i64(r)).collect();
        Self::from_rows(&vs, cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        Self::from_rows(&rows, n).expect("square")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn rows_vec(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns_vec(&self) -> Vec<LatticeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let cols = self.columns_vec();
        Self::from_rows(&cols, self.rows).expect("transpose shape")
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let rows: Vec<Vec<BigInt>> = self.rows_vec().into_iter().map(|r| r.0).collect();
        Ok(bareiss_det(rows))
    }
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// The gcd of the coordinates; zero only for the zero vector.
pub fn content(v: &LatticeVector) -> BigInt {
    v.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Split `v` as `content * primitive`. The zero vector maps to `(0, 0)`.
pub fn primitive_part(v: &LatticeVector) -> (BigInt, LatticeVector) {
    let c = content(v);
    if c.is_zero() {
        return (c, v.clone());
    }
    let p = LatticeVector(v.0.iter().map(|x| x / &c).collect());
    (c, p)
}

fn check_dims(vs: &[LatticeVector], dim: usize) -> Result<()> {
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
        }
    }
    Ok(())
}

/// Gcd of the maximal (`a x a`) minors of the `a x d` matrix with rows `vs`.
///
/// This is the order of the torsion of `Z^d / span(vs)` when the rows are
/// independent, and 0 when they are dependent. An empty list has content 1.
pub fn system_content(vs: &[LatticeVector]) -> Result<BigInt> {
    let Some(first) = vs.first() else {
        return Ok(BigInt::one());
    };
    let d = first.dim();
    check_dims(vs, d)?;
    let a = vs.len();
    if a > d {
        return Err(Error::TooManyVectors { count: a, dim: d });
    }
    let mut g = BigInt::zero();
    for cols in (0..d).combinations(a) {
        let minor: Vec<Vec<BigInt>> = vs
            .iter()
            .map(|v| cols.iter().map(|&c| v.0[c].clone()).collect())
            .collect();
        g = g.gcd(&bareiss_det(minor));
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Whether `vs` extends to a basis of `Z^d`.
pub fn is_primitive_system(vs: &[LatticeVector]) -> Result<bool> {
    Ok(system_content(vs)?.is_one())
}

/// Column-style echelon reduction `A V = [H | 0]` by unimodular column
/// operations, tracking both `V` and `V^{-1}`.
struct ColumnEchelon {
    a: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    vinv: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl ColumnEchelon {
    fn new(rows: &[LatticeVector], d: usize) -> Self {
        let ident: Vec<Vec<BigInt>> = (0..d).map(|i| LatticeVector::unit(d, i).0).collect();
        let mut e = Self {
            a: rows.iter().map(|r| r.0.clone()).collect(),
            v: ident.clone(),
            vinv: ident,
            pivots: Vec::new(),
        };
        e.reduce(d);
        e
    }

    // col_j += q * col_i
    fn add_col(&mut self, j: usize, i: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &row[i] * q;
            row[j] += t;
        }
        let (ri, rj) = (self.vinv[i].clone(), &self.vinv[j]);
        self.vinv[i] = ri.iter().zip(rj).map(|(x, y)| x - q * y).collect();
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.vinv.swap(i, j);
    }

    fn negate_col(&mut self, i: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[i] = -row[i].clone();
        }
        for x in self.vinv[i].iter_mut() {
            *x = -x.clone();
        }
    }

    fn reduce(&mut self, d: usize) {
        let mut p = 0;
        for k in 0..self.a.len() {
            if p == d {
                break;
            }
            loop {
                let nz: Vec<usize> = (p..d).filter(|&j| !self.a[k][j].is_zero()).collect();
                if nz.is_empty() {
                    break;
                }
                let m = *nz.iter().min_by_key(|&&j| self.a[k][j].abs()).expect("nonempty");
                if m != p {
                    self.swap_cols(m, p);
                }
                if nz.len() == 1 {
                    break;
                }
                for j in p + 1..d {
                    if !self.a[k][j].is_zero() {
                        let q = self.a[k][j].div_floor(&self.a[k][p]);
                        self.add_col(j, p, &-q);
                    }
                }
            }
            if self.a[k][p].is_zero() {
                continue;
            }
            if self.a[k][p].is_negative() {
                self.negate_col(p);
            }
            self.pivots.push(k);
            p += 1;
        }
    }
}

/// Extend a primitive system to a unimodular `d x d` matrix whose first rows
/// are `vs`. The completion is read off a fixed column-echelon reduction, so
/// the output is deterministic.
pub fn complete_to_basis(vs: &[LatticeVector], dim: usize) -> Result<IntegerMatrix> {
    check_dims(vs, dim)?;
    let c = system_content(vs)?;
    if !c.is_one() {
        return Err(Error::NotPrimitiveSystem { content: c });
    }
    let e = ColumnEchelon::new(vs, dim);
    let mut rows: Vec<LatticeVector> = vs.to_vec();
    rows.extend(e.vinv[vs.len()..].iter().cloned().map(LatticeVector));
    IntegerMatrix::from_rows(&rows, dim)
}

/// Row Hermite normal form: upper echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(rows: &[LatticeVector]) -> Vec<LatticeVector> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let d = first.dim();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut r = 0;
    for c in 0..d {
        if r == m.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).expect("nonempty");
            m.swap(p, r);
            if nz.len() == 1 {
                break;
            }
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.into_iter().map(LatticeVector).collect()
}

/// Basis of the integer kernel `{x in Z^r : nu . x = 0}` in Hermite normal form.
pub fn integer_kernel(nu: &LatticeVector) -> Vec<LatticeVector> {
    let r = nu.dim();
    let e = ColumnEchelon::new(std::slice::from_ref(nu), r);
    let skip = e.pivots.len();
    let cols: Vec<LatticeVector> = (skip..r)
        .map(|j| LatticeVector((0..r).map(|i| e.v[i][j].clone()).collect()))
        .collect();
    hermite_rows(&cols)
}

/// The canonical `x in Z^r` with `nu . x = 1`: a Bezout solution reduced
/// modulo the Hermite-form kernel basis so that each kernel pivot coordinate
/// lies in `[0, pivot)`. `None` when `nu` is not primitive.
pub fn unit_preimage(nu: &LatticeVector) -> Option<LatticeVector> {
    let r = nu.dim();
    let e = ColumnEchelon::new(std::slice::from_ref(nu), r);
    if e.pivots.is_empty() || !e.a[0][0].is_one() {
        return None;
    }
    let mut x: Vec<BigInt> = (0..r).map(|i| e.v[i][0].clone()).collect();
    for k in integer_kernel(nu) {
        let Some(p) = k.0.iter().position(|c| !c.is_zero()) else {
            continue;
        };
        let q = x[p].div_floor(&k.0[p]);
        for (xi, ki) in x.iter_mut().zip(&k.0) {
            *xi -= &q * ki;
        }
    }
    Some(LatticeVector(x))
}

/// Unique splitting of a lattice vector along a basis
/// `complement ⊕ Z·nu_tilde ⊕ kernel` of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Component in the complement sublattice (ambient coordinates).
    pub complement_part: LatticeVector,
    /// Coefficient of the ray generator.
    pub ray_coeff: BigInt,
    /// Component in the kernel sublattice (ambient coordinates).
    pub kernel_part: LatticeVector,
    /// Coefficients along the complement basis.
    pub complement_coords: Vec<BigInt>,
    /// Coefficients along the kernel basis.
    pub kernel_coords: Vec<BigInt>,
}

impl Decomposition {
    pub fn reconstruct(&self, nu_tilde: &LatticeVector) -> LatticeVector {
        self.complement_part
            .add(&nu_tilde.scale(&self.ray_coeff))
            .add(&self.kernel_part)
    }
}

pub fn decompose(
    v: &LatticeVector,
    complement_basis: &[LatticeVector],
    nu_tilde: &LatticeVector,
    kernel_basis: &[LatticeVector],
) -> Result<Decomposition> {
    let d = v.dim();
    let basis: Vec<LatticeVector> = complement_basis
        .iter()
        .chain(std::iter::once(nu_tilde))
        .chain(kernel_basis)
        .cloned()
        .collect();
    check_dims(&basis, d)?;
    if basis.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: basis.len() });
    }
    let det = IntegerMatrix::from_rows(&basis, d)?.determinant()?;
    if !det.abs().is_one() {
        return Err(Error::NotABasis { det });
    }
    // solve x . B = v, i.e. B^T x = v
    let bt: Vec<Vec<BigRational>> = (0..d)
        .map(|i| basis.iter().map(|b| BigRational::from_integer(b.0[i].clone())).collect())
        .collect();
    let x = linalg::solve_square(&bt, &v.to_rational()).ok_or(Error::NotABasis { det })?;
    let x: Vec<BigInt> = x.into_iter().map(|c| c.to_integer()).collect();
    let nc = complement_basis.len();
    let combine = |coeffs: &[BigInt], vecs: &[LatticeVector]| {
        vecs.iter()
            .zip(coeffs)
            .fold(LatticeVector::zero(d), |acc, (b, c)| acc.add(&b.scale(c)))
    };
    let complement_coords = x[..nc].to_vec();
    let kernel_coords = x[nc + 1..].to_vec();
    Ok(Decomposition {
        complement_part: combine(&complement_coords, complement_basis),
        ray_coeff: x[nc].clone(),
        kernel_part: combine(&kernel_coords, kernel_basis),
        complement_coords,
        kernel_coords,
    })
}

/// Basis of the annihilator `{l : l(v) = 0 for all v in vs}`, each covector
/// scaled to a primitive integral vector with positive free coordinate.
pub fn annihilator_basis(vs: &[LatticeVector], dim: usize) -> Result<Vec<DualVector>> {
    check_dims(vs, dim)?;
    let rows: Vec<Vec<BigRational>> = vs.iter().map(LatticeVector::to_rational).collect();
    Ok(linalg::nullspace(&rows, dim)
        .into_iter()
        .map(|v| primitive_integral(&v).to_dual())
        .collect())
}

/// Clear denominators and divide by the content.
pub(crate) fn primitive_integral(v: &[BigRational]) -> LatticeVector {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = LatticeVector(v.iter().map(|x| (x * &l).to_integer()).collect());
    primitive_part(&ints).1
}

/// Rows of `(B^T)^{-1}`: the dual basis of the rows of a unimodular `B`.
pub fn dual_basis(basis: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let d = basis.len();
    check_dims(basis, d)?;
    let bt: Vec<Vec<BigRational>> = (0..d)
        .map(|i| basis.iter().map(|b| BigRational::from_integer(b.0[i].clone())).collect())
        .collect();
    let det = IntegerMatrix::from_rows(basis, d)?.determinant()?;
    if !det.abs().is_one() {
        return Err(Error::NotABasis { det });
    }
    let inv = linalg::inverse(&bt).ok_or(Error::NotABasis { det: BigInt::zero() })?;
    Ok(inv
        .into_iter()
        .map(|row| LatticeVector(row.into_iter().map(|x| x.to_integer()).collect()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn content_examples() {
        assert_eq!(content(&lv(&[6, 10, 15])), BigInt::from(1));
        assert_eq!(content(&lv(&[4, 6])), BigInt::from(2));
        assert_eq!(content(&lv(&[0, 0, 5])), BigInt::from(5));
        assert_eq!(content(&lv(&[0, 0])), BigInt::from(0));
        assert_eq!(content(&lv(&[-4, 6])), BigInt::from(2));
    }

    #[test]
    fn primitive_system_examples() {
        assert!(is_primitive_system(&[lv(&[1, 0]), lv(&[0, 1])]).unwrap());
        assert!(!is_primitive_system(&[lv(&[1, 0, 0]), lv(&[0, 2, 0])]).unwrap());
        assert!(is_primitive_system(&[lv(&[2, 1]), lv(&[1, 1])]).unwrap());
        assert!(is_primitive_system(&[]).unwrap());
    }

    #[test]
    fn primitive_system_errors() {
        assert_eq!(
            is_primitive_system(&[lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])]),
            Err(Error::TooManyVectors { count: 3, dim: 2 })
        );
        assert_eq!(
            is_primitive_system(&[lv(&[1, 0]), lv(&[0, 1, 0])]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn completion_examples() {
        let m = complete_to_basis(&[lv(&[1, 1])], 2).unwrap();
        assert_eq!(m.row(0), lv(&[1, 1]));
        assert!(m.determinant().unwrap().abs().is_one());

        let id = complete_to_basis(&[lv(&[1, 0]), lv(&[0, 1])], 2).unwrap();
        assert_eq!(id, IntegerMatrix::identity(2));

        let m = complete_to_basis(&[lv(&[2, 1])], 2).unwrap();
        assert_eq!(m.row(0), lv(&[2, 1]));
        assert!(m.determinant().unwrap().abs().is_one());

        let m = complete_to_basis(&[], 3).unwrap();
        assert!(m.determinant().unwrap().abs().is_one());

        assert_eq!(
            complete_to_basis(&[lv(&[2, 0])], 2),
            Err(Error::NotPrimitiveSystem { content: BigInt::from(2) })
        );
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(&lv(&[0, 1]), &[lv(&[1, 0])], &lv(&[1, 1]), &[]).unwrap();
        assert_eq!(d.complement_coords, vec![BigInt::from(-1)]);
        assert_eq!(d.complement_part, lv(&[-1, 0]));
        assert_eq!(d.ray_coeff, BigInt::from(1));

        let d = decompose(&lv(&[1, 0]), &[], &lv(&[1, 0]), &[lv(&[1, -1])]).unwrap();
        assert_eq!(d.ray_coeff, BigInt::from(1));
        assert!(d.kernel_part.is_zero());

        let d = decompose(&lv(&[-1, -1]), &[], &lv(&[1, 0]), &[lv(&[1, -1])]).unwrap();
        assert_eq!(d.ray_coeff, BigInt::from(-2));
        assert_eq!(d.kernel_part, lv(&[1, -1]));
        assert_eq!(d.reconstruct(&lv(&[1, 0])), lv(&[-1, -1]));

        assert_eq!(
            decompose(&lv(&[1, 0]), &[lv(&[2, 0])], &lv(&[0, 1]), &[]),
            Err(Error::NotABasis { det: BigInt::from(2) })
        );
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(annihilator_basis(&[lv(&[1, -1])], 2).unwrap(), vec![DualVector::from_i64(&[1, 1])]);
        assert_eq!(annihilator_basis(&[], 2).unwrap().len(), 2);
        assert!(annihilator_basis(&[lv(&[1, 0]), lv(&[0, 1])], 2).unwrap().is_empty());
    }

    #[test]
    fn kernel_and_unit_preimage() {
        let nu = lv(&[1, 1]);
        assert_eq!(integer_kernel(&nu), vec![lv(&[1, -1])]);
        let x = unit_preimage(&nu).unwrap();
        assert_eq!(x.dot(&nu), BigInt::from(1));
        assert_eq!(x, lv(&[0, 1]));
        assert!(unit_preimage(&lv(&[2, 4])).is_none());
        let nu = lv(&[3, 5, 7]);
        let x = unit_preimage(&nu).unwrap();
        assert_eq!(x.dot(&nu), BigInt::from(1));
        for k in integer_kernel(&nu) {
            assert!(k.dot(&nu).is_zero());
        }
        assert_eq!(integer_kernel(&nu).len(), 2);
        assert_eq!(integer_kernel(&lv(&[1])), Vec::<LatticeVector>::new());
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = hermite_rows(&[lv(&[2, 4]), lv(&[1, 3])]);
        let b = hermite_rows(&[lv(&[1, 3]), lv(&[3, 7])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![lv(&[1, 1]), lv(&[0, 2])]);
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        let b = vec![lv(&[1, 0]), lv(&[1, 1])];
        let dual = dual_basis(&b).unwrap();
        for (i, di) in dual.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                assert_eq!(di.dot(bj), BigInt::from((i == j) as i64));
            }
        }
    }
}
