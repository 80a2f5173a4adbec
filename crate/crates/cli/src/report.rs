//! Report documents. Field order is the serialization order.

use conic_core::conic::{compare_complements, ClauseStatus, FacetData, TransformReport};
use conic_core::json::{emit, ints, rationals, JsonInt, JsonRational, PolytopeDoc};
use conic_core::polytope::DelzantFailure;
use conic_core::{
    betti_from_polytope, check_basic_assumptions, content, face_lattice, is_delzant, reduce_polytope,
    shear_equivalent, transform_general, transform_r1, verify_conic_cohomology, ActionData, BigInt, DualVector,
    Error, LatticeVector, MarkedPolytope, MarkingPolicy, ShearWitness,
};
use serde::Serialize;

use crate::{Failure, Loaded, Outcome};

fn lattice(v: &LatticeVector) -> Vec<JsonInt> {
    ints(v.coords())
}

fn dual(v: &DualVector) -> Vec<JsonRational> {
    rationals(v.coords())
}

#[derive(Serialize)]
struct DelzantWitness {
    kind: &'static str,
    vertex: Vec<JsonRational>,
    facets: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    content: Option<JsonInt>,
}

#[derive(Serialize)]
struct DelzantDoc {
    holds: bool,
    witness: Option<DelzantWitness>,
}

#[derive(Serialize)]
struct ClauseDoc {
    clause: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct CheckDoc {
    dim: usize,
    facets: usize,
    vertices: usize,
    delzant: DelzantDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    basic_assumption: Option<Vec<ClauseDoc>>,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn precondition(message: String, document: String) -> Failure {
    Failure { code: 3, message, document: Some(document) }
}

pub fn check(p: &MarkedPolytope, action: Option<&ActionData>) -> Outcome {
    let delzant = match is_delzant(p).failure {
        None => DelzantDoc { holds: true, witness: None },
        Some(DelzantFailure::NotSimple { vertex, active }) => DelzantDoc {
            holds: false,
            witness: Some(DelzantWitness { kind: "not_simple", vertex: dual(&vertex), facets: active, content: None }),
        },
        Some(DelzantFailure::NotUnimodular { vertex, active, content }) => DelzantDoc {
            holds: false,
            witness: Some(DelzantWitness {
                kind: "not_unimodular",
                vertex: dual(&vertex),
                facets: active,
                content: Some(JsonInt(content)),
            }),
        },
    };
    let mut reason = (!delzant.holds).then(|| "polytope is not Delzant".to_string());
    let basic_assumption = match action {
        Some(act) => {
            let report = check_basic_assumptions(p, act)?;
            if reason.is_none() {
                reason = report.first_failure().map(|(c, _)| c.failure_reason().to_string());
            }
            Some(
                report
                    .outcomes
                    .into_iter()
                    .map(|(clause, status)| {
                        let (status, detail) = match status {
                            ClauseStatus::Pass => ("pass", None),
                            ClauseStatus::Fail(w) => ("fail", Some(w)),
                            ClauseStatus::Skipped => ("skipped", None),
                        };
                        ClauseDoc { clause: clause.name(), status, detail }
                    })
                    .collect(),
            )
        }
        None => None,
    };
    let doc = CheckDoc {
        dim: p.dim(),
        facets: p.num_facets(),
        vertices: p.vertices().len(),
        delzant,
        basic_assumption,
        holds: reason.is_none(),
        reason: reason.clone(),
    };
    let text = emit(&doc);
    match reason {
        Some(r) => Err(precondition(r, text)),
        None => Ok(text),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View {
    Full,
    Raw,
    Canonical,
}

#[derive(Serialize)]
struct ChoicesDoc {
    nu_tilde: Vec<JsonInt>,
    ray: Vec<JsonInt>,
    complement: Vec<Vec<JsonInt>>,
    delta: JsonInt,
    delta_tilde: Vec<JsonRational>,
}

#[derive(Serialize)]
struct RhoDoc {
    facet: usize,
    complement_part: Vec<JsonInt>,
    ray_coeff: JsonInt,
    kernel_part: Vec<JsonInt>,
    delta_j: JsonRational,
}

impl From<&FacetData> for RhoDoc {
    fn from(f: &FacetData) -> Self {
        Self {
            facet: f.facet,
            complement_part: lattice(&f.decomposition.complement_part),
            ray_coeff: JsonInt(f.decomposition.ray_coeff.clone()),
            kernel_part: lattice(&f.decomposition.kernel_part),
            delta_j: JsonRational(f.delta_j.clone()),
        }
    }
}

#[derive(Serialize)]
struct TransformDoc {
    rank: usize,
    choices: ChoicesDoc,
    raw: PolytopeDoc,
    canonical: PolytopeDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced: Option<PolytopeDoc>,
    facet_correspondence: Vec<Option<usize>>,
    dropped_facets: Vec<usize>,
    rho_data: Vec<RhoDoc>,
    vertices: Vec<Vec<JsonRational>>,
    betti_source: Option<Vec<u64>>,
    betti_transform: Option<Vec<u64>>,
    cohomology_verified: bool,
}

/// Raw rows with the contents of their normals as markings, when the
/// transform carries markings.
fn raw_doc(rep: &TransformReport) -> PolytopeDoc {
    let marks: Option<Vec<BigInt>> =
        rep.transformed.markings().map(|_| rep.raw.halfspaces().iter().map(|h| content(&h.normal)).collect());
    PolytopeDoc::from_hrep(&rep.raw, marks.as_deref())
}

pub fn transform(l: &Loaded, view: View) -> Outcome {
    let act = l.action.as_ref().expect("checked by load");
    let (rep, source) = if act.r == 1 {
        (transform_r1(&l.raw, act, MarkingPolicy::Auto)?, l.polytope.clone())
    } else {
        let rep = transform_general(&l.polytope, act, MarkingPolicy::Auto)?;
        let reduced = rep.reduced.clone().ok_or_else(|| Error::Internal("missing reduced polytope".into()))?;
        (rep, reduced)
    };
    match view {
        View::Raw => return Ok(emit(&raw_doc(&rep))),
        View::Canonical => return Ok(emit(&PolytopeDoc::from_marked(&rep.transformed))),
        View::Full => {}
    }
    let c = &rep.choices;
    let doc = TransformDoc {
        rank: act.r,
        choices: ChoicesDoc {
            nu_tilde: lattice(&c.nu_tilde),
            ray: lattice(&c.ray),
            complement: c.complement.iter().map(lattice).collect(),
            delta: JsonInt(c.delta.clone()),
            delta_tilde: dual(&c.delta_tilde),
        },
        raw: raw_doc(&rep),
        canonical: PolytopeDoc::from_marked(&rep.transformed),
        reduced: rep.reduced.as_ref().map(PolytopeDoc::from_marked),
        facet_correspondence: rep.facet_correspondence.clone(),
        dropped_facets: rep.dropped_facets.clone(),
        rho_data: rep.rho_data.iter().map(RhoDoc::from).collect(),
        vertices: rep.transformed.vertices().iter().map(dual).collect(),
        betti_source: betti_from_polytope(&source).ok().map(|b| b.even_betti),
        betti_transform: betti_from_polytope(&rep.transformed).ok().map(|b| b.even_betti),
        cohomology_verified: verify_conic_cohomology(&rep, &source),
    };
    Ok(emit(&doc))
}

#[derive(Serialize)]
struct ChartDoc {
    base_point: Vec<JsonRational>,
    directions: Vec<Vec<JsonRational>>,
}

#[derive(Serialize)]
struct ReduceDoc {
    delzant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<DelzantWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meeting_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    facet_map: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chart: Option<ChartDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw: Option<PolytopeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced: Option<PolytopeDoc>,
}

pub fn reduce(p: &MarkedPolytope, act: &ActionData) -> Outcome {
    let failed = |witness: DelzantWitness, message: String| {
        let doc = ReduceDoc {
            delzant: false,
            witness: Some(witness),
            meeting_set: None,
            facet_map: None,
            chart: None,
            raw: None,
            reduced: None,
        };
        Err(precondition(message, emit(&doc)))
    };
    match reduce_polytope(p, act) {
        Ok(red) => Ok(emit(&ReduceDoc {
            delzant: true,
            witness: None,
            meeting_set: Some(red.meeting_set.clone()),
            facet_map: Some(red.facet_map.clone()),
            chart: Some(ChartDoc {
                base_point: dual(red.chart.base_point()),
                directions: red.chart.direction_basis().iter().map(dual).collect(),
            }),
            raw: Some(PolytopeDoc::from_hrep(&red.raw, None)),
            reduced: Some(PolytopeDoc::from_marked(&red.reduced)),
        })),
        Err(e @ Error::NotDelzant { .. }) => {
            let message = e.to_string();
            let Error::NotDelzant { vertex, facets, content } = e else { unreachable!() };
            failed(
                DelzantWitness { kind: "not_unimodular", vertex: dual(&vertex), facets, content: Some(JsonInt(content)) },
                message,
            )
        }
        Err(e @ Error::NotSimple { .. }) => {
            let message = e.to_string();
            let Error::NotSimple { vertex } = e else { unreachable!() };
            failed(DelzantWitness { kind: "not_simple", vertex: dual(&vertex), facets: Vec::new(), content: None }, message)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn betti(p: &MarkedPolytope) -> Outcome {
    Ok(emit(&betti_from_polytope(p)?))
}

#[derive(Serialize)]
struct FaceDoc {
    dim: usize,
    facets: Vec<usize>,
    vertices: Vec<Vec<JsonRational>>,
}

#[derive(Serialize)]
struct FacesDoc {
    dim: usize,
    f_vector: Vec<usize>,
    faces: Vec<FaceDoc>,
}

pub fn faces(p: &MarkedPolytope) -> String {
    let lattice = face_lattice(p);
    let doc = FacesDoc {
        dim: p.dim(),
        f_vector: lattice.f_vector().counts,
        faces: lattice
            .faces
            .iter()
            .map(|f| FaceDoc {
                dim: f.dim,
                facets: f.facets.clone(),
                vertices: f.vertices.iter().map(|&v| dual(&p.vertices()[v])).collect(),
            })
            .collect(),
    };
    emit(&doc)
}

#[derive(Serialize)]
struct WitnessDoc {
    shear: Vec<JsonInt>,
    translation: Vec<JsonRational>,
}

#[derive(Serialize)]
struct ShearDoc {
    max_coeff: u32,
    equivalent: bool,
    witness: Option<WitnessDoc>,
}

fn shear_doc(w: Option<ShearWitness>, max_coeff: u32) -> String {
    emit(&ShearDoc {
        max_coeff,
        equivalent: w.is_some(),
        witness: w.map(|w| WitnessDoc { shear: ints(&w.shear), translation: dual(&w.translation) }),
    })
}

/// Both polytopes are taken to be in adapted coordinates already.
pub fn shear_direct(a: &MarkedPolytope, b: &MarkedPolytope, delta: &BigInt, max_coeff: u32) -> String {
    shear_doc(shear_equivalent(a, b, delta, max_coeff), max_coeff)
}

pub fn shear_actions(p: &MarkedPolytope, first: &ActionData, second: &ActionData, max_coeff: u32) -> Outcome {
    Ok(shear_doc(compare_complements(p, first, second, max_coeff)?, max_coeff))
}
