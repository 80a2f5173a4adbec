//! Exact H-represented polytopes in the dual space.
//!
//! A polytope is the intersection of half-spaces `{l : l(normal) >= offset}`
//! with integral normals. [`HRep`] is a raw system as supplied or produced by
//! a transform (normals may be non-primitive, constraints may be redundant);
//! [`MarkedPolytope`] is its canonical form: bounded, full-dimensional,
//! irredundant, primitive normals, sorted, with optional facet markings.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{primitive_part, system_content, DualVector, LatticeVector};
use crate::linalg::{self, Ineq, Row};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    pub offset: BigRational,
}

impl HalfSpace {
    pub fn new(normal: LatticeVector, offset: BigRational) -> Self {
        Self { normal, offset }
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Self {
        Self::new(LatticeVector::from_i64(normal), BigRational::from_integer(offset.into()))
    }

    /// `l(normal) - offset`; nonnegative exactly on the half-space.
    pub fn slack(&self, point: &DualVector) -> BigRational {
        point.pair(&self.normal) - &self.offset
    }

    pub fn contains(&self, point: &DualVector) -> bool {
        !self.slack(point).is_negative()
    }

    /// Same half-space shifted by `t`: `{l + t : l in self}`.
    pub fn translate(&self, t: &DualVector) -> HalfSpace {
        Self::new(self.normal.clone(), &self.offset + t.pair(&self.normal))
    }

    pub fn scaled(&self, k: &BigInt) -> HalfSpace {
        Self::new(self.normal.scale(k), &self.offset * BigRational::from_integer(k.clone()))
    }

    fn to_ineq(&self) -> Ineq {
        Ineq { normal: self.normal.to_rational(), rhs: self.offset.clone() }
    }
}

/// A raw half-space system in `dim` dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HRep {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl HRep {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (index, h) in halfspaces.iter().enumerate() {
            if h.normal.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: h.normal.dim() });
            }
            if h.normal.is_zero() {
                return Err(Error::ZeroNormal { index });
            }
        }
        Ok(Self { dim, halfspaces })
    }

    /// Convenience constructor from `(normal, offset)` integer pairs.
    pub fn from_i64(dim: usize, rows: &[(&[i64], i64)]) -> Result<Self> {
        Self::new(dim, rows.iter().map(|(n, o)| HalfSpace::from_i64(n, *o)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn translate(&self, t: &DualVector) -> HRep {
        Self { dim: self.dim, halfspaces: self.halfspaces.iter().map(|h| h.translate(t)).collect() }
    }

    /// Primitive normals and integral offsets throughout.
    pub fn is_primitive_integral(&self) -> bool {
        self.halfspaces.iter().all(|h| {
            crate::lattice::content(&h.normal).is_one() && h.offset.is_integer()
        })
    }

    pub fn contains(&self, point: &DualVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(point))
    }
}

/// Canonical bounded full-dimensional polytope with optional facet markings.
///
/// Equality compares the geometry and markings only; the provenance fields
/// (`scales`, `sources`) record how the canonical facets arose from the raw
/// system and are ignored.
#[derive(Clone, Debug)]
pub struct MarkedPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    markings: Option<Vec<BigInt>>,
    scales: Vec<BigInt>,
    sources: Vec<usize>,
    vertices: Vec<DualVector>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for MarkedPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.halfspaces == other.halfspaces
            && self.markings == other.markings
    }
}

impl Eq for MarkedPolytope {}

impl MarkedPolytope {
    /// Canonicalize `raw`, carrying `markings` (aligned with the raw rows)
    /// over to the surviving facets.
    pub fn from_hrep(raw: &HRep, markings: Option<Vec<BigInt>>, require_integral: bool) -> Result<Self> {
        if let Some(m) = &markings {
            if m.len() != raw.len() || m.iter().any(|s| s < &BigInt::one()) {
                return Err(Error::InvalidMarkings);
            }
        }
        let d = raw.dim;
        let prim: Vec<(BigInt, HalfSpace)> = raw
            .halfspaces
            .iter()
            .map(|h| {
                let (c, n) = primitive_part(&h.normal);
                let off = &h.offset / BigRational::from_integer(c.clone());
                (c, HalfSpace::new(n, off))
            })
            .collect();

        let normals: Vec<Row> = prim.iter().map(|(_, h)| h.normal.to_rational()).collect();
        if linalg::rank(&normals, d) < d || has_recession_ray(&prim, d) {
            return Err(Error::Unbounded);
        }
        let ineqs: Vec<Ineq> = prim.iter().map(|(_, h)| h.to_ineq()).collect();
        let verts = linalg::basic_solutions(&ineqs, d);
        if verts.is_empty() {
            return Err(Error::Empty);
        }
        let centre = linalg::barycenter(&verts);
        if ineqs.iter().any(|h| !h.slack(&centre).is_positive()) {
            return Err(Error::EmptyInterior);
        }

        // facet-defining rows, first source wins on exact duplicates
        let mut kept: BTreeMap<HalfSpace, (BigInt, usize)> = BTreeMap::new();
        for (i, (c, h)) in prim.iter().enumerate() {
            let tight: Vec<Row> = verts
                .iter()
                .filter(|v| h.to_ineq().slack(v).is_zero())
                .cloned()
                .collect();
            if !tight.is_empty() && linalg::affine_rank(&tight) == d - 1 {
                kept.entry(h.clone()).or_insert((c.clone(), i));
            }
        }

        let mut halfspaces = Vec::with_capacity(kept.len());
        let mut scales = Vec::with_capacity(kept.len());
        let mut sources = Vec::with_capacity(kept.len());
        for (h, (c, i)) in kept {
            halfspaces.push(h);
            scales.push(c);
            sources.push(i);
        }
        if require_integral {
            if let Some(j) = halfspaces.iter().position(|h| !h.offset.is_integer()) {
                return Err(Error::NonIntegralOffset { index: sources[j], offset: halfspaces[j].offset.clone() });
            }
        }
        let markings = markings.map(|m| sources.iter().map(|&i| m[i].clone()).collect());
        let vertices: Vec<DualVector> = verts.into_iter().map(DualVector::new).collect();
        let incidence = vertices
            .iter()
            .map(|v| (0..halfspaces.len()).filter(|&j| halfspaces[j].slack(v).is_zero()).collect())
            .collect();
        Ok(Self { dim: d, halfspaces, markings, scales, sources, vertices, incidence })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn num_facets(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn markings(&self) -> Option<&[BigInt]> {
        self.markings.as_deref()
    }

    /// Content of the raw normal behind each canonical facet.
    pub fn scales(&self) -> &[BigInt] {
        &self.scales
    }

    /// Index of the raw row behind each canonical facet.
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    /// Canonical facet produced by raw row `raw_index`, if it survived.
    pub fn facet_of_source(&self, raw_index: usize) -> Option<usize> {
        self.sources.iter().position(|&s| s == raw_index)
    }

    pub fn vertices(&self) -> &[DualVector] {
        &self.vertices
    }

    /// Facets tight at each vertex, aligned with [`Self::vertices`].
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn with_markings(mut self, markings: Option<Vec<BigInt>>) -> Result<Self> {
        if let Some(m) = &markings {
            if m.len() != self.halfspaces.len() || m.iter().any(|s| s < &BigInt::one()) {
                return Err(Error::InvalidMarkings);
            }
        }
        self.markings = markings;
        Ok(self)
    }

    /// The canonical half-spaces as a raw system.
    pub fn hrep(&self) -> HRep {
        HRep { dim: self.dim, halfspaces: self.halfspaces.clone() }
    }

    /// The raw (pre-primitivization) rows of the surviving facets, in
    /// canonical order.
    pub fn raw_hrep(&self) -> HRep {
        let halfspaces = self.halfspaces.iter().zip(&self.scales).map(|(h, c)| h.scaled(c)).collect();
        HRep { dim: self.dim, halfspaces }
    }

    pub fn is_integral(&self) -> bool {
        self.halfspaces.iter().all(|h| h.offset.is_integer())
    }

    pub fn translate(&self, t: &DualVector) -> MarkedPolytope {
        let mut out = self.clone();
        out.halfspaces = self.halfspaces.iter().map(|h| h.translate(t)).collect();
        out.vertices = self.vertices.iter().map(|v| v.add(t)).collect();
        out
    }

    pub fn contains(&self, point: &DualVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(point))
    }

    /// Whether `point` lies in the relative interior of the face cut out by
    /// `facets`: tight on exactly those facets, strictly inside the rest.
    pub fn in_relative_interior(&self, facets: &[usize], point: &DualVector) -> bool {
        self.halfspaces.iter().enumerate().all(|(j, h)| {
            let s = h.slack(point);
            if facets.contains(&j) {
                s.is_zero()
            } else {
                s.is_positive()
            }
        })
    }

    pub fn is_simple(&self) -> bool {
        self.incidence.iter().all(|inc| inc.len() == self.dim)
    }
}

// An unbounded direction x != 0 with normal . x >= 0 for every row exists
// iff, for full-rank normals, some (d-1)-subset has a one-dimensional null
// space spanned by such an x.
fn has_recession_ray(rows: &[(BigInt, HalfSpace)], d: usize) -> bool {
    let normals: Vec<Row> = rows.iter().map(|(_, h)| h.normal.to_rational()).collect();
    for subset in (0..normals.len()).combinations(d - 1) {
        let sub: Vec<Row> = subset.iter().map(|&i| normals[i].clone()).collect();
        let null = linalg::nullspace(&sub, d);
        if null.len() != 1 {
            continue;
        }
        for sign in [1, -1] {
            let x: Row = null[0].iter().map(|c| c * BigRational::from_integer(sign.into())).collect();
            if normals.iter().all(|n| !linalg::dot(n, &x).is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Canonical form of a raw system; see [`MarkedPolytope::from_hrep`].
pub fn canonicalize(raw: &HRep, require_integral: bool) -> Result<MarkedPolytope> {
    MarkedPolytope::from_hrep(raw, None, require_integral)
}

/// Sorted, deduplicated exact vertices.
pub fn vertices(p: &MarkedPolytope) -> Vec<DualVector> {
    p.vertices.clone()
}

/// A nonempty face: the facets containing it, its dimension and its vertices
/// (indices into [`MarkedPolytope::vertices`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub facets: Vec<usize>,
    pub dim: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FVector {
    /// `counts[k]` is the number of `k`-dimensional faces, `k = 0..=d`.
    pub counts: Vec<usize>,
}

impl FVector {
    pub fn dim(&self) -> usize {
        self.counts.len() - 1
    }

    /// Number of faces of codimension `k`.
    pub fn codim(&self, k: usize) -> usize {
        self.counts[self.dim() - k]
    }
}

impl FaceLattice {
    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0; self.dim + 1];
        for f in &self.faces {
            counts[f.dim] += 1;
        }
        FVector { counts }
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn find(&self, facets: &[usize]) -> Option<&Face> {
        self.faces.iter().find(|f| f.facets == facets)
    }
}

/// All nonempty faces, generated by intersecting with facets from the top.
pub fn face_lattice(p: &MarkedPolytope) -> FaceLattice {
    let k = p.halfspaces.len();
    let facet_vertices: Vec<BTreeSet<usize>> = (0..k)
        .map(|j| (0..p.vertices.len()).filter(|&v| p.incidence[v].contains(&j)).collect())
        .collect();
    let closure = |verts: &BTreeSet<usize>| -> Vec<usize> {
        (0..k).filter(|&j| verts.is_subset(&facet_vertices[j])).collect()
    };

    let all: BTreeSet<usize> = (0..p.vertices.len()).collect();
    let mut seen: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
    let mut queue = vec![all.clone()];
    seen.insert(closure(&all), all);
    while let Some(verts) = queue.pop() {
        for fv in &facet_vertices {
            let next: BTreeSet<usize> = verts.intersection(fv).copied().collect();
            if next.is_empty() || next == verts {
                continue;
            }
            let key = closure(&next);
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(next.clone());
                queue.push(next);
            }
        }
    }

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|(facets, verts)| {
            let pts: Vec<Row> = verts.iter().map(|&v| p.vertices[v].coords().to_vec()).collect();
            Face { facets, dim: linalg::affine_rank(&pts), vertices: verts.into_iter().collect() }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.facets.cmp(&b.facets)));
    FaceLattice { faces, dim: p.dim }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DelzantFailure {
    /// More than `d` facets meet at the vertex.
    NotSimple { vertex: DualVector, active: Vec<usize> },
    /// The active normals span a sublattice of index `content`.
    NotUnimodular { vertex: DualVector, active: Vec<usize>, content: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantReport {
    pub failure: Option<DelzantFailure>,
}

impl DelzantReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Simple, with the `d` normals at every vertex forming a lattice basis.
/// Reports the first failing vertex in sorted vertex order.
pub fn is_delzant(p: &MarkedPolytope) -> DelzantReport {
    for (v, active) in p.vertices.iter().zip(&p.incidence) {
        if active.len() != p.dim {
            return DelzantReport {
                failure: Some(DelzantFailure::NotSimple { vertex: v.clone(), active: active.clone() }),
            };
        }
        let normals: Vec<LatticeVector> = active.iter().map(|&j| p.halfspaces[j].normal.clone()).collect();
        let content = system_content(&normals).expect("d normals in dimension d");
        if !content.is_one() {
            return DelzantReport {
                failure: Some(DelzantFailure::NotUnimodular { vertex: v.clone(), active: active.clone(), content }),
            };
        }
    }
    DelzantReport { failure: None }
}
