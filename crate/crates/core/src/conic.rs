//! Conic transforms of marked polytopes.
//!
//! A rank-`r` torus sits in `T^d` through `iota`, acting with a primitive
//! weight `nu`. Choosing `nu_tilde` with `nu(nu_tilde) = 1` and a complement
//! to `iota(Z^r)` splits `Z^d = complement ⊕ Z·ray ⊕ kernel`, where
//! `ray = iota(nu_tilde)` and `kernel = iota(ker nu)`.
//!
//! For rank one, each facet `(v_j, lambda_j)` with `v_j = v'_j + rho_j ray`
//! is replaced by `(v'_j - (lambda_j + rho_j delta) ray, -rho_j)`. Geometrically
//! this is the involution `l -> (l' + ray*) / l(ray)` of the positive half-space
//! applied to the translated polytope. Markings are the contents of the new
//! (generally non-primitive) normals.
//!
//! For higher rank the translated polytope is first cut by the annihilator of
//! the kernel; the cut must be transverse and Delzant, and the rank-one
//! transform with zero shift is applied to it in the adapted lattice chart.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    complete_to_basis, content, decompose, dual_basis, integer_kernel, system_content, unit_preimage,
    Decomposition, DualVector, IntegerMatrix, LatticeVector,
};
use crate::linalg::{self, Ineq, Row};
use crate::polytope::{face_lattice, is_delzant, DelzantFailure, HRep, HalfSpace, MarkedPolytope};
use crate::subspace::{intersect, is_transverse, nu_perp_annihilator, AffineSubspace};

/// Torus action data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    /// Rank of the acting torus.
    pub r: usize,
    /// `d x r` inclusion of lattices; its columns must be a primitive system.
    pub iota: IntegerMatrix,
    /// Weight, a covector on `Z^r`.
    pub nu: LatticeVector,
    /// Integral shift `delta~` on the dual of `Z^d`.
    pub delta_tilde: DualVector,
    /// Optional `nu_tilde in Z^r` with `nu(nu_tilde) = 1`.
    pub nu_tilde: Option<LatticeVector>,
    /// Optional `d x (d - r)` complement basis, one vector per column.
    pub complement: Option<IntegerMatrix>,
}

/// Action data with every optional choice filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedAction {
    pub dim: usize,
    pub rank: usize,
    pub nu_tilde: LatticeVector,
    /// `iota(nu_tilde)`.
    pub ray: LatticeVector,
    pub complement: Vec<LatticeVector>,
    /// `iota` applied to the Hermite basis of `ker nu`.
    pub kernel: Vec<LatticeVector>,
    /// Dual basis of `(complement, ray, kernel)`.
    pub dual_basis: Vec<LatticeVector>,
    /// `delta~(ray)`.
    pub delta: BigInt,
    /// The shift actually used. For rank one this is `delta * ray*`.
    pub delta_tilde: DualVector,
}

impl ResolvedAction {
    /// `complement` followed by `ray`: the adapted basis of the lattice
    /// dual to the reduced space.
    pub fn adapted_basis(&self) -> Vec<LatticeVector> {
        let mut b = self.complement.clone();
        b.push(self.ray.clone());
        b
    }
}

impl ActionData {
    /// Rank-one action generated by `ray`, with shift `delta` along the dual
    /// of `ray` determined by `complement` (a default completion if `None`).
    pub fn rank_one(ray: LatticeVector, complement: Option<Vec<LatticeVector>>, delta: BigInt) -> Result<Self> {
        let d = ray.dim();
        let complement = match complement {
            Some(c) => c,
            None => complete_to_basis(std::slice::from_ref(&ray), d)?.rows_vec()[1..].to_vec(),
        };
        let iota = IntegerMatrix::from_rows(std::slice::from_ref(&ray), d)?.transpose();
        let comp_matrix = IntegerMatrix::from_rows(&complement, d)?.transpose();
        let mut basis = complement.clone();
        basis.push(ray.clone());
        let dual = dual_basis(&basis).map_err(|_| Error::InvalidAction("complement and ray do not form a basis".into()))?;
        let delta_tilde = dual[d - 1].to_dual().scale(&BigRational::from_integer(delta));
        Ok(Self {
            r: 1,
            iota,
            nu: LatticeVector::from_i64(&[1]),
            delta_tilde,
            nu_tilde: Some(LatticeVector::from_i64(&[1])),
            complement: Some(comp_matrix),
        })
    }

    /// The rank-one action in standard coordinates of `Z^dim` with ray the
    /// last basis vector, complement the others, and no shift.
    pub fn standard_rank_one(dim: usize) -> Self {
        let complement = (0..dim - 1).map(|i| LatticeVector::unit(dim, i)).collect();
        Self::rank_one(LatticeVector::unit(dim, dim - 1), Some(complement), BigInt::zero()).expect("standard basis")
    }

    /// Same choices with the shift replaced by zero.
    pub fn without_shift(&self) -> Self {
        Self { delta_tilde: DualVector::zero(self.delta_tilde.dim()), ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.iota.nrows()
    }

    /// Validate and fill in `nu_tilde`, complement and kernel.
    pub fn resolve(&self) -> Result<ResolvedAction> {
        let invalid = |m: &str| Error::InvalidAction(m.to_string());
        let d = self.iota.nrows();
        let r = self.iota.ncols();
        if r != self.r {
            return Err(invalid("iota must have r columns"));
        }
        if r == 0 || r > d {
            return Err(invalid("rank must satisfy 1 <= r <= d"));
        }
        let cols = self.iota.columns_vec();
        if !system_content(&cols)?.is_one() {
            return Err(invalid("columns of iota are not a primitive system"));
        }
        if self.nu.dim() != r {
            return Err(Error::DimensionMismatch { expected: r, found: self.nu.dim() });
        }
        if !content(&self.nu).is_one() {
            return Err(invalid("weight is not primitive"));
        }
        let nu_tilde = match &self.nu_tilde {
            Some(t) => {
                if t.dim() != r {
                    return Err(Error::DimensionMismatch { expected: r, found: t.dim() });
                }
                if !self.nu.dot(t).is_one() {
                    return Err(invalid("nu(nu_tilde) must equal 1"));
                }
                t.clone()
            }
            None => unit_preimage(&self.nu).ok_or_else(|| invalid("weight is not primitive"))?,
        };
        let embed = |x: &LatticeVector| self.iota.mul_vec(x);
        let ray = embed(&nu_tilde);
        let kernel: Vec<LatticeVector> = integer_kernel(&self.nu).iter().map(embed).collect();
        let complement = match &self.complement {
            Some(c) => {
                if c.nrows() != d || c.ncols() != d - r {
                    return Err(invalid("complement must be a d x (d - r) matrix"));
                }
                c.columns_vec()
            }
            None => complete_to_basis(&cols, d)?.rows_vec()[r..].to_vec(),
        };
        let mut basis = complement.clone();
        basis.push(ray.clone());
        basis.extend(kernel.iter().cloned());
        let dual = dual_basis(&basis).map_err(|_| invalid("complement is not complementary to the torus lattice"))?;
        if self.delta_tilde.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: self.delta_tilde.dim() });
        }
        if !self.delta_tilde.is_integral() {
            return Err(invalid("delta_tilde must be integral"));
        }
        let delta = self.delta_tilde.pair(&ray).to_integer();
        let delta_tilde = if r == 1 {
            dual[d - 1].to_dual().scale(&BigRational::from_integer(delta.clone()))
        } else {
            self.delta_tilde.clone()
        };
        Ok(ResolvedAction {
            dim: d,
            rank: r,
            nu_tilde,
            ray,
            complement,
            kernel,
            dual_basis: dual,
            delta,
            delta_tilde,
        })
    }
}

/// The splitting `V* = (complement)* ⊕ span(ray*)` on which the involution
/// of the positive half-space is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSplit {
    ray: LatticeVector,
    ray_dual: DualVector,
}

impl ConeSplit {
    pub fn new(ray: &LatticeVector, complement: &[LatticeVector]) -> Result<Self> {
        let mut basis = complement.to_vec();
        basis.push(ray.clone());
        let dual = dual_basis(&basis)?;
        Ok(Self { ray: ray.clone(), ray_dual: dual[ray.dim() - 1].to_dual() })
    }

    pub fn ray(&self) -> &LatticeVector {
        &self.ray
    }

    /// The covector `ray*`: 1 on the ray, 0 on the complement.
    pub fn ray_dual(&self) -> &DualVector {
        &self.ray_dual
    }

    /// `rho(l) = (l - l(ray) ray* + ray*) / l(ray)`, defined for `l(ray) > 0`.
    pub fn rho(&self, ell: &DualVector) -> Result<DualVector> {
        let t = ell.pair(&self.ray);
        if !t.is_positive() {
            return Err(Error::OutsideHalfSpace { value: t });
        }
        let shifted = ell.sub(&self.ray_dual.scale(&(&t - BigRational::one())));
        Ok(shifted.scale(&t.recip()))
    }
}

pub fn rho_map(ell: &DualVector, nu_tilde_embedded: &LatticeVector, complement: &[LatticeVector]) -> Result<DualVector> {
    ConeSplit::new(nu_tilde_embedded, complement)?.rho(ell)
}

/// When to attach markings to a transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MarkingPolicy {
    /// Attach markings when the source is primitive, integral and irredundant.
    #[default]
    Auto,
    /// Fail with [`Error::MarkingsUnavailable`] unless markings can be attached.
    Require,
    Skip,
}

/// Per-facet splitting data of the source polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetData {
    pub facet: usize,
    pub decomposition: Decomposition,
    /// `delta~(v_j)`.
    pub delta_j: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choices {
    pub nu_tilde: LatticeVector,
    pub ray: LatticeVector,
    pub complement: Vec<LatticeVector>,
    pub delta_tilde: DualVector,
    pub delta: BigInt,
}

impl From<&ResolvedAction> for Choices {
    fn from(r: &ResolvedAction) -> Self {
        Self {
            nu_tilde: r.nu_tilde.clone(),
            ray: r.ray.clone(),
            complement: r.complement.clone(),
            delta_tilde: r.delta_tilde.clone(),
            delta: r.delta.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TransformReport {
    /// Transformed rows before canonicalization, one per source row that
    /// takes part in the transform.
    pub raw: HRep,
    /// Canonical transformed polytope with markings.
    pub transformed: MarkedPolytope,
    /// The reduced polytope in chart coordinates (rank >= 2 only).
    pub reduced: Option<MarkedPolytope>,
    /// Source facet index -> transformed canonical facet index.
    pub facet_correspondence: Vec<Option<usize>>,
    /// Source facets that do not meet the reduced space.
    pub dropped_facets: Vec<usize>,
    pub rho_data: Vec<FacetData>,
    pub choices: Choices,
}

impl TransformReport {
    /// The transformed polytope in coordinates `l -> (l(c_1), .., l(c_{n-1}), l(ray))`
    /// adapted to the complement choice. Higher-rank transforms already live
    /// in such coordinates.
    pub fn adapted(&self) -> Result<MarkedPolytope> {
        if self.reduced.is_some() {
            return Ok(self.transformed.clone());
        }
        let mut basis = self.choices.complement.clone();
        basis.push(self.choices.ray.clone());
        adapted_coordinates(&self.transformed, &basis)
    }
}

/// Clear the offset denominator of a raw row by a positive factor.
fn integral_row(h: &HalfSpace) -> HalfSpace {
    let den = h.offset.denom().clone();
    if den.is_one() {
        h.clone()
    } else {
        h.scaled(&den)
    }
}

fn markings_from(raw: &HRep) -> Vec<BigInt> {
    raw.halfspaces().iter().map(|h| content(&h.normal)).collect()
}

/// The rank-one image `(v' - (lambda + rho delta) ray, -rho)` of a single row,
/// after clearing the offset denominator. The marking of the row is the
/// content of the returned normal.
pub fn transformed_row(h: &HalfSpace, res: &ResolvedAction) -> Result<(HalfSpace, Decomposition)> {
    if res.rank != 1 {
        return Err(Error::WrongRank { expected: 1, found: res.rank });
    }
    let h = integral_row(h);
    let dec = decompose(&h.normal, &res.complement, &res.ray, &[])?;
    let shift = h.offset.to_integer() + &dec.ray_coeff * &res.delta;
    let normal = dec.complement_part.sub(&res.ray.scale(&shift));
    Ok((HalfSpace::new(normal, BigRational::from_integer(-dec.ray_coeff.clone())), dec))
}

/// Rank-one conic transform of a raw H-representation.
pub fn transform_r1(system: &HRep, act: &ActionData, policy: MarkingPolicy) -> Result<TransformReport> {
    if act.r != 1 {
        return Err(Error::WrongRank { expected: 1, found: act.r });
    }
    let res = act.resolve()?;
    if system.dim() != res.dim {
        return Err(Error::DimensionMismatch { expected: res.dim, found: system.dim() });
    }
    let source = MarkedPolytope::from_hrep(system, None, false)?;
    let delta = BigRational::from_integer(res.delta.clone());
    for v in source.vertices() {
        let value = v.pair(&res.ray) + &delta;
        if !value.is_positive() {
            return Err(Error::PositivityViolated { vertex: v.clone(), value });
        }
    }

    let mut rows = Vec::with_capacity(system.len());
    let mut rho_data = Vec::with_capacity(system.len());
    for (j, h) in system.halfspaces().iter().enumerate() {
        let (row, dec) = transformed_row(h, &res)?;
        rows.push(row);
        rho_data.push(FacetData { facet: j, delta_j: res.delta_tilde.pair(&h.normal), decomposition: dec });
    }
    let raw = HRep::new(res.dim, rows)?;
    let eligible = system.is_primitive_integral() && source.num_facets() == system.len();
    let markings = match policy {
        MarkingPolicy::Skip => None,
        MarkingPolicy::Auto => eligible.then(|| markings_from(&raw)),
        MarkingPolicy::Require if eligible => Some(markings_from(&raw)),
        MarkingPolicy::Require => return Err(Error::MarkingsUnavailable),
    };
    let transformed = MarkedPolytope::from_hrep(&raw, markings, false)?;
    let facet_correspondence: Vec<Option<usize>> = (0..system.len()).map(|j| transformed.facet_of_source(j)).collect();
    let dropped_facets = (0..system.len()).filter(|&j| facet_correspondence[j].is_none()).collect();
    Ok(TransformReport {
        raw,
        transformed,
        reduced: None,
        facet_correspondence,
        dropped_facets,
        rho_data,
        choices: Choices::from(&res),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    WeightPrimitive,
    Nonvanishing,
    Transverse,
    MeetsSubspace,
    Positive,
}

impl Clause {
    /// Short reason used when the clause fails.
    pub fn failure_reason(self) -> &'static str {
        match self {
            Clause::WeightPrimitive => "weight is not primitive",
            Clause::Nonvanishing => "moment image contains zero",
            Clause::Transverse => "moment image is not transverse to the ray",
            Clause::MeetsSubspace => "moment image misses the ray",
            Clause::Positive => "moment image meets only the negative ray",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Clause::WeightPrimitive => "weight_primitive",
            Clause::Nonvanishing => "nonvanishing",
            Clause::Transverse => "transverse",
            Clause::MeetsSubspace => "meets_subspace",
            Clause::Positive => "positive",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Pass,
    /// Failed, with a human-readable witness.
    Fail(String),
    /// Not evaluated because an earlier clause it depends on failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicAssumptionReport {
    pub outcomes: Vec<(Clause, ClauseStatus)>,
}

impl BasicAssumptionReport {
    pub fn holds(&self) -> bool {
        self.outcomes.iter().all(|(_, s)| *s == ClauseStatus::Pass)
    }

    pub fn first_failure(&self) -> Option<(Clause, &str)> {
        self.outcomes.iter().find_map(|(c, s)| match s {
            ClauseStatus::Fail(w) => Some((*c, w.as_str())),
            _ => None,
        })
    }

    pub fn status(&self, clause: Clause) -> Option<&ClauseStatus> {
        self.outcomes.iter().find(|(c, _)| *c == clause).map(|(_, s)| s)
    }
}

fn ineqs_of(p: &MarkedPolytope) -> Vec<Ineq> {
    p.halfspaces()
        .iter()
        .map(|h| Ineq { normal: h.normal.to_rational(), rhs: h.offset.clone() })
        .collect()
}

fn restricted_vertices(p: &MarkedPolytope, w: &AffineSubspace) -> Vec<DualVector> {
    let ineqs: Vec<Ineq> = p
        .halfspaces()
        .iter()
        .map(|h| Ineq {
            normal: w.direction_basis().iter().map(|e| e.pair(&h.normal)).collect(),
            rhs: &h.offset - w.base_point().pair(&h.normal),
        })
        .collect();
    linalg::bounded_vertices(&ineqs, &[], w.dim())
        .into_iter()
        .map(|x| w.point_at(&DualVector::new(x)))
        .collect()
}

/// Check the Basic Assumption clauses for the translated polytope.
pub fn check_basic_assumptions(p: &MarkedPolytope, act: &ActionData) -> Result<BasicAssumptionReport> {
    use ClauseStatus::{Fail, Pass, Skipped};
    let mut outcomes = Vec::with_capacity(5);
    if act.nu.is_zero() || !content(&act.nu).is_one() {
        outcomes.push((Clause::WeightPrimitive, Fail(format!("content of {} is {}", act.nu, content(&act.nu)))));
        for c in [Clause::Nonvanishing, Clause::Transverse, Clause::MeetsSubspace, Clause::Positive] {
            outcomes.push((c, Skipped));
        }
        return Ok(BasicAssumptionReport { outcomes });
    }
    outcomes.push((Clause::WeightPrimitive, Pass));
    let res = act.resolve()?;
    if p.dim() != res.dim {
        return Err(Error::DimensionMismatch { expected: res.dim, found: p.dim() });
    }
    let shifted = p.translate(&res.delta_tilde);

    let zero_set: Vec<Ineq> = act
        .iota
        .columns_vec()
        .iter()
        .map(|c| Ineq { normal: c.to_rational(), rhs: BigRational::zero() })
        .collect();
    let zeros = linalg::bounded_vertices(&ineqs_of(&shifted), &zero_set, res.dim);
    outcomes.push(match zeros.first() {
        Some(z) => (Clause::Nonvanishing, Fail(format!("attained at {}", DualVector::new(z.clone())))),
        None => (Clause::Nonvanishing, Pass),
    });

    let w = nu_perp_annihilator(act)?;
    let tr = is_transverse(&shifted, &w)?;
    outcomes.push(match tr.failing_face {
        Some(f) => (Clause::Transverse, Fail(format!("face cut by facets {f:?}"))),
        None => (Clause::Transverse, Pass),
    });

    let meet = restricted_vertices(&shifted, &w);
    if meet.is_empty() {
        outcomes.push((Clause::MeetsSubspace, Fail("empty intersection".into())));
        outcomes.push((Clause::Positive, Skipped));
    } else {
        outcomes.push((Clause::MeetsSubspace, Pass));
        let bad = meet.iter().find(|v| !v.pair(&res.ray).is_positive());
        outcomes.push(match bad {
            Some(v) => (Clause::Positive, Fail(format!("pairing {} at {v}", v.pair(&res.ray)))),
            None => (Clause::Positive, Pass),
        });
    }
    Ok(BasicAssumptionReport { outcomes })
}

/// Lattice form of transversality: for every face of the translated polytope
/// meeting the annihilator of the kernel, the span of its facet normals meets
/// the kernel only in 0.
pub fn lattice_transversality(p: &MarkedPolytope, act: &ActionData) -> Result<bool> {
    let res = act.resolve()?;
    let d = res.dim;
    let shifted = p.translate(&res.delta_tilde);
    let kernel: Vec<Row> = res.kernel.iter().map(LatticeVector::to_rational).collect();
    let on_w: Vec<Ineq> = kernel.iter().map(|k| Ineq { normal: k.clone(), rhs: BigRational::zero() }).collect();
    let all = ineqs_of(&shifted);
    for face in face_lattice(&shifted).faces {
        let mut eqs = on_w.clone();
        eqs.extend(face.facets.iter().map(|&j| all[j].clone()));
        let rest: Vec<Ineq> = (0..all.len()).filter(|j| !face.facets.contains(j)).map(|j| all[j].clone()).collect();
        if linalg::bounded_vertices(&rest, &eqs, d).is_empty() {
            continue;
        }
        let normals: Vec<Row> = face.facets.iter().map(|&j| all[j].normal.clone()).collect();
        let mut both = normals.clone();
        both.extend(kernel.iter().cloned());
        if linalg::rank(&both, d) != linalg::rank(&normals, d) + kernel.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The reduced polytope `(p + delta~) ∩ ann(kernel)` with its Delzant
/// certificate.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Canonical reduced polytope; chart coordinates for rank >= 2, ambient
    /// coordinates of `p + delta~` for rank one.
    pub reduced: MarkedPolytope,
    /// Reduced rows `(v'_j + rho_j ray, lambda_j + delta_j)` in chart
    /// coordinates, one per meeting facet in ascending order.
    pub raw: HRep,
    /// Source facets meeting the reduced space, ascending.
    pub meeting_set: Vec<usize>,
    /// Source facet behind each canonical facet of `reduced`.
    pub facet_map: Vec<usize>,
    pub decompositions: Vec<FacetData>,
    pub chart: AffineSubspace,
    pub resolved: ResolvedAction,
}

pub fn reduce_polytope(p: &MarkedPolytope, act: &ActionData) -> Result<Reduction> {
    let report = check_basic_assumptions(p, act)?;
    if let Some((clause, detail)) = report.first_failure() {
        return Err(Error::BasicAssumption { clause: clause.failure_reason().into(), detail: detail.into() });
    }
    let res = act.resolve()?;
    let shifted = p.translate(&res.delta_tilde);
    let decompositions: Vec<FacetData> = p
        .halfspaces()
        .iter()
        .enumerate()
        .map(|(j, h)| {
            Ok(FacetData {
                facet: j,
                decomposition: decompose(&h.normal, &res.complement, &res.ray, &res.kernel)?,
                delta_j: res.delta_tilde.pair(&h.normal),
            })
        })
        .collect::<Result<_>>()?;

    if res.rank == 1 {
        if let Some(failure) = is_delzant(&shifted).failure {
            return Err(match failure {
                DelzantFailure::NotSimple { vertex, .. } => Error::NotSimple { vertex },
                DelzantFailure::NotUnimodular { vertex, active, content } => {
                    Error::NotDelzant { vertex, facets: active, content }
                }
            });
        }
        let n = p.num_facets();
        return Ok(Reduction {
            raw: shifted.hrep(),
            facet_map: (0..n).collect(),
            meeting_set: (0..n).collect(),
            reduced: shifted,
            decompositions,
            chart: AffineSubspace::whole(res.dim),
            resolved: res,
        });
    }

    let w = nu_perp_annihilator(act)?;
    let inter = intersect(&shifted, &w)?;
    let mut meeting_set = inter.facet_map.clone();
    meeting_set.sort();

    let rows: Vec<HalfSpace> = meeting_set
        .iter()
        .map(|&j| {
            let dec = &decompositions[j].decomposition;
            let mut coords = dec.complement_coords.clone();
            coords.push(dec.ray_coeff.clone());
            HalfSpace::new(LatticeVector::new(coords), &p.halfspaces()[j].offset + &decompositions[j].delta_j)
        })
        .collect();
    let raw = HRep::new(w.dim(), rows)?;
    let reduced = MarkedPolytope::from_hrep(&raw, None, false)?;
    if reduced != inter.polytope_in_w {
        return Err(Error::Internal("chart rows disagree with the subspace intersection".into()));
    }
    let facet_map: Vec<usize> = reduced.sources().iter().map(|&i| meeting_set[i]).collect();

    let m = w.dim();
    for (v, active) in reduced.vertices().iter().zip(reduced.incidence()) {
        let facets: Vec<usize> = active.iter().map(|&a| facet_map[a]).collect();
        let vertex = w.point_at(v);
        if facets.len() != m {
            return Err(Error::NotSimple { vertex });
        }
        let system: Vec<LatticeVector> = facets
            .iter()
            .map(|&j| {
                let dec = &decompositions[j].decomposition;
                dec.complement_part.add(&res.ray.scale(&dec.ray_coeff))
            })
            .collect();
        let c = system_content(&system)?;
        if !c.is_one() {
            return Err(Error::NotDelzant { vertex, facets, content: c });
        }
    }
    Ok(Reduction { reduced, raw, meeting_set, facet_map, decompositions, chart: w, resolved: res })
}

/// Conic transform for an action of any rank.
pub fn transform_general(p: &MarkedPolytope, act: &ActionData, policy: MarkingPolicy) -> Result<TransformReport> {
    let red = reduce_polytope(p, act)?;
    if red.resolved.rank == 1 {
        return transform_r1(&p.hrep(), act, policy);
    }
    let rows: Vec<HalfSpace> = red
        .meeting_set
        .iter()
        .map(|&j| {
            let dec = &red.decompositions[j].decomposition;
            let shift = &p.halfspaces()[j].offset + &red.decompositions[j].delta_j;
            let den = shift.denom().clone();
            let mut coords: Vec<BigInt> = dec.complement_coords.iter().map(|c| c * &den).collect();
            coords.push(-(shift * BigRational::from_integer(den.clone())).to_integer());
            HalfSpace::new(LatticeVector::new(coords), BigRational::from_integer(-&dec.ray_coeff * &den))
        })
        .collect();
    let raw = HRep::new(red.chart.dim(), rows)?;
    let eligible = p.is_integral();
    let markings = match policy {
        MarkingPolicy::Skip => None,
        MarkingPolicy::Auto => eligible.then(|| markings_from(&raw)),
        MarkingPolicy::Require if eligible => Some(markings_from(&raw)),
        MarkingPolicy::Require => return Err(Error::MarkingsUnavailable),
    };
    let transformed = MarkedPolytope::from_hrep(&raw, markings, false)?;

    // the same marked polytope must come out of the rank-one transform of
    // the reduced polytope with zero shift
    let chart_action = ActionData::standard_rank_one(red.chart.dim());
    let check = transform_r1(&red.raw, &chart_action, policy)?;
    if check.raw != raw || check.transformed.halfspaces() != transformed.halfspaces() {
        return Err(Error::Internal("general transform disagrees with the reduced rank-one transform".into()));
    }
    if check.transformed.markings().is_some() && transformed.markings().is_some() && check.transformed != transformed {
        return Err(Error::Internal("general transform markings disagree with the reduced transform".into()));
    }

    let mut facet_correspondence = vec![None; p.num_facets()];
    for (k, &j) in red.meeting_set.iter().enumerate() {
        facet_correspondence[j] = transformed.facet_of_source(k);
    }
    let dropped_facets = (0..p.num_facets()).filter(|j| !red.meeting_set.contains(j)).collect();
    Ok(TransformReport {
        raw,
        transformed,
        reduced: Some(red.reduced),
        facet_correspondence,
        dropped_facets,
        rho_data: red.decompositions,
        choices: Choices::from(&red.resolved),
    })
}

/// Re-express `p` in the coordinates `l -> (l(b_1), .., l(b_d))` of a
/// unimodular basis.
pub fn adapted_coordinates(p: &MarkedPolytope, basis: &[LatticeVector]) -> Result<MarkedPolytope> {
    let d = p.dim();
    let dual = dual_basis(basis)?;
    let rows = p
        .halfspaces()
        .iter()
        .map(|h| {
            let coords = dual.iter().map(|e| e.dot(&h.normal)).collect();
            HalfSpace::new(LatticeVector::new(coords), h.offset.clone())
        })
        .collect();
    let raw = HRep::new(d, rows)?;
    MarkedPolytope::from_hrep(&raw, p.markings().map(<[BigInt]>::to_vec), false)
}

/// Rebase `candidate` (a complement to `Z·ray`) so that each vector agrees
/// with the matching `reference` vector modulo `ray`. Returns the rebased
/// basis and the coefficients `m_i` with `rebased_i = reference_i + m_i ray`.
pub fn align_complement(
    reference: &[LatticeVector],
    candidate: &[LatticeVector],
    ray: &LatticeVector,
) -> Result<(Vec<LatticeVector>, Vec<BigInt>)> {
    let mut out = Vec::with_capacity(reference.len());
    let mut coeffs = Vec::with_capacity(reference.len());
    for c in reference {
        let dec = decompose(c, candidate, ray, &[])?;
        out.push(dec.complement_part);
        coeffs.push(-dec.ray_coeff);
    }
    Ok((out, coeffs))
}

/// `b = S(a) + translation` with `S(x, y) = (x - y delta shear, y)`, the last
/// coordinate being `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearWitness {
    pub shear: Vec<BigInt>,
    pub translation: DualVector,
}

fn shear_vectors(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..len {
        all = all
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    all.sort_by_key(|v| (v.iter().map(|x| x.abs()).max().unwrap_or(0), v.clone()));
    all
}

/// Bounded search for an integer shear plus translation carrying `a` onto
/// `b`, markings included. Not a decision procedure: shears with a
/// coefficient above `max_coeff` are never tried.
pub fn shear_equivalent(a: &MarkedPolytope, b: &MarkedPolytope, delta: &BigInt, max_coeff: u32) -> Option<ShearWitness> {
    let d = a.dim();
    if b.dim() != d || a.num_facets() != b.num_facets() || a.vertices().len() != b.vertices().len() {
        return None;
    }
    let delta_q = BigRational::from_integer(delta.clone());
    for shear in shear_vectors(d - 1, i64::from(max_coeff)) {
        let shear: Vec<BigInt> = shear.into_iter().map(BigInt::from).collect();
        let sq: Vec<BigRational> = shear.iter().map(|s| BigRational::from_integer(s.clone()) * &delta_q).collect();
        let mut image: Vec<DualVector> = a
            .vertices()
            .iter()
            .map(|v| {
                let c = v.coords();
                let y = &c[d - 1];
                let mut out: Vec<BigRational> = (0..d - 1).map(|i| &c[i] - y * &sq[i]).collect();
                out.push(y.clone());
                DualVector::new(out)
            })
            .collect();
        image.sort();
        let translation = b.vertices()[0].sub(&image[0]);
        if image.iter().zip(b.vertices()).any(|(v, w)| &v.add(&translation) != w) {
            continue;
        }
        let rows: Vec<HalfSpace> = a
            .halfspaces()
            .iter()
            .map(|h| {
                let n = h.normal.coords();
                let dotx: BigInt = (0..d - 1).map(|i| &shear[i] * &n[i]).sum();
                let mut coords = n[..d - 1].to_vec();
                coords.push(&n[d - 1] + delta * dotx);
                let normal = LatticeVector::new(coords);
                let offset = &h.offset + translation.pair(&normal);
                HalfSpace::new(normal, offset)
            })
            .collect();
        let moved = HRep::new(d, rows).ok()?;
        let moved = MarkedPolytope::from_hrep(&moved, a.markings().map(<[BigInt]>::to_vec), false).ok()?;
        if &moved == b {
            return Some(ShearWitness { shear, translation });
        }
    }
    None
}

/// Transform `p` under two rank-one actions that differ only in the
/// complement, and search for the shear relating the results in compatible
/// adapted coordinates.
pub fn compare_complements(
    p: &MarkedPolytope,
    first: &ActionData,
    second: &ActionData,
    max_coeff: u32,
) -> Result<Option<ShearWitness>> {
    let ra = first.resolve()?;
    let rb = second.resolve()?;
    if ra.rank != 1 || rb.rank != 1 {
        return Err(Error::WrongRank { expected: 1, found: ra.rank.max(rb.rank) });
    }
    if ra.ray != rb.ray || ra.delta != rb.delta {
        return Err(Error::InvalidAction("actions must share the ray and the shift".into()));
    }
    let ta = transform_r1(&p.hrep(), first, MarkingPolicy::Auto)?;
    let tb = transform_r1(&p.hrep(), second, MarkingPolicy::Auto)?;
    let (aligned, _) = align_complement(&ra.complement, &rb.complement, &ra.ray)?;
    let mut basis_b = aligned;
    basis_b.push(rb.ray.clone());
    let a = adapted_coordinates(&ta.transformed, &ra.adapted_basis())?;
    let b = adapted_coordinates(&tb.transformed, &basis_b)?;
    Ok(shear_equivalent(&a, &b, &ra.delta, max_coeff))
}
