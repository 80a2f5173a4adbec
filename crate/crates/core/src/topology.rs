//! Rational Betti numbers of complete simplicial toric varieties from the face
//! counts of their simple polytopes.

use std::fmt;

use serde::Serialize;

use crate::conic::TransformReport;
use crate::error::{Error, Result};
use crate::polytope::{face_lattice, FVector, MarkedPolytope};

/// Even Betti numbers `b_0, b_2, .., b_{2d}`; the odd ones vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BettiVector {
    pub even_betti: Vec<u64>,
}

impl BettiVector {
    pub fn dim(&self) -> usize {
        self.even_betti.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.even_betti.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.even_betti.iter().eq(self.even_betti.iter().rev())
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.even_betti.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `b_{2k} = sum_{i=k}^{d} (-1)^{i-k} C(i,k) d_{d-i}` where `d_j` counts the
/// `j`-dimensional cones, i.e. the faces of codimension `j`.
pub fn betti_from_f_vector(f: &FVector) -> Result<BettiVector> {
    let d = f.dim();
    let cones = |j: usize| -> i128 { f.codim(j) as i128 };
    let mut even_betti = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut b = 0i128;
        for i in k..=d {
            let term = binomial(i, k) * cones(d - i);
            b += if (i - k) % 2 == 0 { term } else { -term };
        }
        let b = u64::try_from(b).map_err(|_| Error::Internal(format!("negative Betti number {b}")))?;
        even_betti.push(b);
    }
    Ok(BettiVector { even_betti })
}

pub fn betti_from_polytope(p: &MarkedPolytope) -> Result<BettiVector> {
    if !p.is_simple() {
        let vertex = p
            .vertices()
            .iter()
            .zip(p.incidence())
            .find(|(_, a)| a.len() != p.dim())
            .map(|(v, _)| v.clone())
            .expect("a non-simple polytope has a vertex with extra facets");
        return Err(Error::NotSimple { vertex });
    }
    betti_from_f_vector(&face_lattice(p).f_vector())
}

/// Compare the Betti numbers of `source` (the original polytope for rank
/// one, the reduced one otherwise) with those of the transform. The f-vectors
/// must also agree.
pub fn verify_conic_cohomology(report: &TransformReport, source: &MarkedPolytope) -> bool {
    let target = &report.transformed;
    if face_lattice(source).f_vector() != face_lattice(target).f_vector() {
        return false;
    }
    match (betti_from_polytope(source), betti_from_polytope(target)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{canonicalize, HRep};

    fn poly(dim: usize, rows: &[(&[i64], i64)]) -> MarkedPolytope {
        canonicalize(&HRep::from_i64(dim, rows).unwrap(), false).unwrap()
    }

    #[test]
    fn small_examples() {
        let seg = poly(1, &[(&[1], 0), (&[-1], -1)]);
        assert_eq!(betti_from_polytope(&seg).unwrap().even_betti, vec![1, 1]);
        let sq = poly(2, &[(&[1, 0], 0), (&[-1, 0], -1), (&[0, 1], 0), (&[0, -1], -1)]);
        assert_eq!(betti_from_polytope(&sq).unwrap().even_betti, vec![1, 2, 1]);
        let tri = poly(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, -1], -1)]);
        assert_eq!(betti_from_polytope(&tri).unwrap().even_betti, vec![1, 1, 1]);
        let cube = poly(
            3,
            &[(&[1, 0, 0], 0), (&[-1, 0, 0], -1), (&[0, 1, 0], 0), (&[0, -1, 0], -1), (&[0, 0, 1], 0), (&[0, 0, -1], -1)],
        );
        assert_eq!(betti_from_polytope(&cube).unwrap().even_betti, vec![1, 3, 3, 1]);
    }

    #[test]
    fn non_simple_rejected() {
        let pyramid = poly(
            3,
            &[(&[0, 0, 1], 0), (&[1, 0, -1], 0), (&[-1, 0, -1], -2), (&[0, 1, -1], 0), (&[0, -1, -1], -2)],
        );
        assert!(matches!(betti_from_polytope(&pyramid), Err(Error::NotSimple { .. })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
