//! Affine subspaces of the dual space, transversality and intersection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::conic::ActionData;
use crate::error::{Error, Result};
use crate::lattice::{DualVector, LatticeVector};
use crate::linalg::{self, Ineq, Row};
use crate::polytope::{face_lattice, HRep, HalfSpace, MarkedPolytope};

/// `base_point + span(direction_basis)`. Points of the subspace are addressed
/// by their coordinates along the direction basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    base_point: DualVector,
    direction_basis: Vec<DualVector>,
    lattice: bool,
}

impl AffineSubspace {
    pub fn new(base_point: DualVector, direction_basis: Vec<DualVector>) -> Result<Self> {
        let d = base_point.dim();
        for v in &direction_basis {
            if v.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.dim() });
            }
        }
        let rows: Vec<Row> = direction_basis.iter().map(|v| v.coords().to_vec()).collect();
        if linalg::rank(&rows, d) != direction_basis.len() {
            return Err(Error::InvalidSubspace("direction basis is linearly dependent".into()));
        }
        Ok(Self { base_point, direction_basis, lattice: false })
    }

    /// Subspace whose integral direction basis is part of a basis of the dual
    /// lattice, so that its coordinates are lattice coordinates.
    pub(crate) fn lattice_chart(base_point: DualVector, direction_basis: Vec<LatticeVector>) -> Result<Self> {
        let mut s = Self::new(base_point, direction_basis.iter().map(LatticeVector::to_dual).collect())?;
        s.lattice = true;
        Ok(s)
    }

    /// The whole dual space with its standard basis.
    pub fn whole(dim: usize) -> Self {
        Self {
            base_point: DualVector::zero(dim),
            direction_basis: (0..dim).map(|i| LatticeVector::unit(dim, i).to_dual()).collect(),
            lattice: true,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.base_point.dim()
    }

    pub fn dim(&self) -> usize {
        self.direction_basis.len()
    }

    pub fn base_point(&self) -> &DualVector {
        &self.base_point
    }

    pub fn direction_basis(&self) -> &[DualVector] {
        &self.direction_basis
    }

    /// Whether the chart coordinates are lattice coordinates.
    pub fn is_lattice(&self) -> bool {
        self.lattice
    }

    /// Ambient point with subspace coordinates `w`.
    pub fn point_at(&self, w: &DualVector) -> DualVector {
        self.direction_basis
            .iter()
            .zip(w.coords())
            .fold(self.base_point.clone(), |acc, (e, c)| acc.add(&e.scale(c)))
    }

    /// Half-space pulled back to subspace coordinates: `(coefficients, rhs)`.
    fn restrict(&self, h: &HalfSpace) -> Ineq {
        Ineq {
            normal: self.direction_basis.iter().map(|e| e.pair(&h.normal)).collect(),
            rhs: &h.offset - self.base_point.pair(&h.normal),
        }
    }

    fn contains_point(&self, point: &DualVector) -> bool {
        let d = self.ambient_dim();
        let a: Vec<Row> = (0..d)
            .map(|i| self.direction_basis.iter().map(|e| e.coords()[i].clone()).collect())
            .collect();
        let b: Row = point.sub(&self.base_point).into_coords();
        linalg::solve_affine(&a, &b, self.dim()).is_some()
    }
}

/// Intersection of a polytope with a transverse subspace, in subspace
/// coordinates.
#[derive(Clone, Debug)]
pub struct IntersectionResult {
    pub polytope_in_w: MarkedPolytope,
    /// Original facet index behind each facet of `polytope_in_w`.
    pub facet_map: Vec<usize>,
    pub coordinate_chart: AffineSubspace,
}

impl IntersectionResult {
    pub fn to_ambient(&self, w: &DualVector) -> DualVector {
        self.coordinate_chart.point_at(w)
    }
}

/// The annihilator of `iota(ker nu)`, with the lattice chart given by the
/// dual basis of the adapted splitting `complement ⊕ Z·iota(nu_tilde) ⊕
/// iota(ker nu)`. For rank one this is the whole space in standard
/// coordinates.
pub fn nu_perp_annihilator(action: &ActionData) -> Result<AffineSubspace> {
    let res = action.resolve()?;
    if res.rank == 1 {
        return Ok(AffineSubspace::whole(res.dim));
    }
    let m = res.dim - res.rank + 1;
    AffineSubspace::lattice_chart(DualVector::zero(res.dim), res.dual_basis[..m].to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityReport {
    /// Facet set of the first face whose relative interior meets the
    /// subspace non-transversely.
    pub failing_face: Option<Vec<usize>>,
}

impl TransversalityReport {
    pub fn holds(&self) -> bool {
        self.failing_face.is_none()
    }
}

/// Whether `w` meets the relative interior of the face with facet set
/// `facets`.
pub(crate) fn meets_relative_interior(p: &MarkedPolytope, w: &AffineSubspace, facets: &[usize]) -> bool {
    let (eqs, ineqs): (Vec<_>, Vec<_>) = p
        .halfspaces()
        .iter()
        .enumerate()
        .map(|(j, h)| (j, w.restrict(h)))
        .partition(|(j, _)| facets.contains(j));
    let eqs: Vec<Ineq> = eqs.into_iter().map(|(_, h)| h).collect();
    let ineqs: Vec<Ineq> = ineqs.into_iter().map(|(_, h)| h).collect();
    let pts = linalg::bounded_vertices(&ineqs, &eqs, w.dim());
    if pts.is_empty() {
        return false;
    }
    // an inequality that is not tight on all of W ∩ F is strict at the barycenter
    let centre = linalg::barycenter(&pts);
    ineqs.iter().all(|h| h.slack(&centre).is_positive())
}

/// Definitional check over every face `F`: whenever `w` meets the relative
/// interior of `F`, the directions of `w` and of `aff F` span the ambient
/// space.
pub fn is_transverse(p: &MarkedPolytope, w: &AffineSubspace) -> Result<TransversalityReport> {
    let d = p.dim();
    if w.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: w.ambient_dim() });
    }
    let dir_w: Vec<Row> = w.direction_basis.iter().map(|e| e.coords().to_vec()).collect();
    for face in face_lattice(p).faces {
        if !meets_relative_interior(p, w, &face.facets) {
            continue;
        }
        let normals: Vec<Row> = face.facets.iter().map(|&j| p.halfspaces()[j].normal.to_rational()).collect();
        let mut span = dir_w.clone();
        span.extend(linalg::nullspace(&normals, d));
        if linalg::rank(&span, d) < d {
            return Ok(TransversalityReport { failing_face: Some(face.facets) });
        }
    }
    Ok(TransversalityReport { failing_face: None })
}

/// Exact intersection `p ∩ w` expressed in `w`-coordinates, with the facet
/// correspondence.
pub fn intersect(p: &MarkedPolytope, w: &AffineSubspace) -> Result<IntersectionResult> {
    let report = is_transverse(p, w)?;
    if let Some(facets) = report.failing_face {
        return Err(Error::NotTransverse { facets });
    }
    if w.dim() == 0 {
        return Err(Error::InvalidSubspace("zero-dimensional subspace".into()));
    }
    let mut rows = Vec::new();
    let mut origin = Vec::new();
    for (j, h) in p.halfspaces().iter().enumerate() {
        let ineq = w.restrict(h);
        if ineq.normal.iter().all(Zero::is_zero) {
            if ineq.rhs.is_positive() {
                return Err(Error::EmptyIntersection);
            }
            continue;
        }
        // clear denominators with a positive factor
        let l = ineq
            .normal
            .iter()
            .chain(std::iter::once(&ineq.rhs))
            .fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let scale = BigRational::from_integer(l);
        let normal = LatticeVector::new(ineq.normal.iter().map(|x| (x * &scale).to_integer()).collect());
        rows.push(HalfSpace::new(normal, &ineq.rhs * &scale));
        origin.push(j);
    }
    let raw = HRep::new(w.dim(), rows)?;
    let polytope_in_w = match MarkedPolytope::from_hrep(&raw, None, false) {
        Ok(q) => q,
        Err(Error::Empty) | Err(Error::EmptyInterior) => return Err(Error::EmptyIntersection),
        Err(e) => return Err(e),
    };
    let facet_map: Vec<usize> = polytope_in_w.sources().iter().map(|&i| origin[i]).collect();
    let mut sorted = facet_map.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != facet_map.len() {
        return Err(Error::Internal("two facets restrict to the same facet of the intersection".into()));
    }
    if p.is_simple() && !polytope_in_w.is_simple() {
        return Err(Error::Internal("transverse intersection of a simple polytope is not simple".into()));
    }
    for v in polytope_in_w.vertices() {
        if !p.contains(&w.point_at(v)) || !w.contains_point(&w.point_at(v)) {
            return Err(Error::Internal("chart image leaves the polytope".into()));
        }
    }
    Ok(IntersectionResult { polytope_in_w, facet_map, coordinate_chart: w.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::canonicalize;

    fn unit_square() -> MarkedPolytope {
        let raw = HRep::from_i64(2, &[(&[1, 0], 0), (&[-1, 0], -1), (&[0, 1], 0), (&[0, -1], -1)]).unwrap();
        canonicalize(&raw, false).unwrap()
    }

    fn horizontal(y: (i64, i64)) -> AffineSubspace {
        AffineSubspace::new(DualVector::from_ratios(&[(0, 1), y]), vec![DualVector::from_i64(&[1, 0])]).unwrap()
    }

    #[test]
    fn transversality_examples() {
        let sq = unit_square();
        assert!(is_transverse(&sq, &horizontal((1, 2))).unwrap().holds());
        // the line y = 1 runs along the top edge and through two vertices;
        // faces are visited by increasing dimension
        let top = is_transverse(&sq, &horizontal((1, 1))).unwrap();
        assert_eq!(top.failing_face.as_ref().map(Vec::len), Some(2));
        let diag = AffineSubspace::new(DualVector::from_i64(&[2, 0]), vec![DualVector::from_i64(&[1, -1])]).unwrap();
        let corner = is_transverse(&sq, &diag).unwrap();
        assert_eq!(corner.failing_face.as_ref().map(Vec::len), Some(2));
    }

    #[test]
    fn intersect_mid_line() {
        let sq = unit_square();
        let res = intersect(&sq, &horizontal((1, 2))).unwrap();
        let seg = &res.polytope_in_w;
        assert_eq!(seg.vertices(), &[DualVector::from_i64(&[0]), DualVector::from_i64(&[1])]);
        let mut facets = res.facet_map.clone();
        facets.sort();
        let left = sq.halfspaces().iter().position(|h| h.normal == LatticeVector::from_i64(&[1, 0])).unwrap();
        let right = sq.halfspaces().iter().position(|h| h.normal == LatticeVector::from_i64(&[-1, 0])).unwrap();
        let mut expected = vec![left, right];
        expected.sort();
        assert_eq!(facets, expected);
        assert_eq!(res.to_ambient(&DualVector::from_i64(&[1])), DualVector::from_ratios(&[(1, 1), (1, 2)]));
    }

    #[test]
    fn intersect_diagonal_of_rectangle() {
        let raw = HRep::from_i64(2, &[(&[1, 0], 0), (&[-1, 0], -3), (&[0, 1], 1), (&[0, -1], -2)]).unwrap();
        let rect = canonicalize(&raw, false).unwrap();
        let diag = AffineSubspace::new(DualVector::zero(2), vec![DualVector::from_i64(&[1, 1])]).unwrap();
        let res = intersect(&rect, &diag).unwrap();
        let ends: Vec<DualVector> = res.polytope_in_w.vertices().iter().map(|v| res.to_ambient(v)).collect();
        assert_eq!(ends, vec![DualVector::from_i64(&[1, 1]), DualVector::from_i64(&[2, 2])]);
        let names: Vec<LatticeVector> = res.facet_map.iter().map(|&j| rect.halfspaces()[j].normal.clone()).collect();
        assert!(names.contains(&LatticeVector::from_i64(&[0, 1])));
        assert!(names.contains(&LatticeVector::from_i64(&[0, -1])));
        assert_eq!(names.len(), 2);
    }

    #[test]
    fn intersection_errors_are_distinct() {
        let sq = unit_square();
        assert!(matches!(intersect(&sq, &horizontal((1, 1))), Err(Error::NotTransverse { .. })));
        assert_eq!(intersect(&sq, &horizontal((3, 1))).unwrap_err(), Error::EmptyIntersection);
    }
}
