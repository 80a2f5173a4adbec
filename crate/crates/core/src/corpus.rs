//! Seeded random Delzant polytopes and torus actions for property suites and
//! benchmarks.
//!
//! Polytopes are products of segments and standard simplices, optionally
//! with a vertex blown up, pushed through a small unimodular change of
//! basis. Every candidate is canonicalized and re-checked; candidates
//! violating the configured bounds are discarded and redrawn.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conic::ActionData;
use crate::lattice::{complete_to_basis, content, DualVector, IntegerMatrix, LatticeVector};
use crate::polytope::{is_delzant, HRep, HalfSpace, MarkedPolytope};

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusConfig {
    pub min_dim: usize,
    pub max_dim: usize,
    pub max_facets: usize,
    /// Bound on `|lambda_j|` of the canonical H-representation.
    pub max_offset: i64,
    /// Probability of blowing up one vertex.
    pub blowup_rate: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self { min_dim: 1, max_dim: 3, max_facets: 8, max_offset: 5, blowup_rate: 0.35 }
    }
}

/// A polytope paired with an action satisfying the Basic Assumption.
#[derive(Clone, Debug)]
pub struct Instance {
    pub polytope: MarkedPolytope,
    pub action: ActionData,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lv(v: Vec<i64>) -> LatticeVector {
    LatticeVector::new(v.into_iter().map(BigInt::from).collect())
}

/// Product of segments and simplices in dimension `d`.
fn product_rows<R: Rng>(rng: &mut R, d: usize) -> Vec<HalfSpace> {
    let mut rows = Vec::new();
    let mut start = 0;
    while start < d {
        let size = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=d - start) };
        let lower: Vec<i64> = (0..size).map(|_| rng.gen_range(-2..=1)).collect();
        let len = rng.gen_range(1..=3);
        for (i, &a) in lower.iter().enumerate() {
            let mut n = vec![0; d];
            n[start + i] = 1;
            rows.push(HalfSpace::from_i64(&n, a));
        }
        let mut n = vec![0; d];
        for slot in n.iter_mut().skip(start).take(size) {
            *slot = -1;
        }
        rows.push(HalfSpace::from_i64(&n, -(lower.iter().sum::<i64>() + len)));
        start += size;
    }
    rows
}

fn random_unimodular<R: Rng>(rng: &mut R, d: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    m.shuffle(rng);
    for row in m.iter_mut() {
        if rng.gen_bool(0.3) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if d > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..d);
            let mut j = rng.gen_range(0..d - 1);
            if j >= i {
                j += 1;
            }
            let k = if rng.gen_bool(0.5) { 1 } else { -1 };
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x += k * y;
            }
        }
    }
    m
}

fn apply(m: &[Vec<i64>], v: &LatticeVector) -> LatticeVector {
    LatticeVector::new(
        m.iter()
            .map(|row| row.iter().zip(v.coords()).map(|(&a, b)| BigInt::from(a) * b).sum())
            .collect(),
    )
}

fn within_bounds(p: &MarkedPolytope, cfg: &CorpusConfig) -> bool {
    let bound = BigRational::from_integer(cfg.max_offset.into());
    p.num_facets() <= cfg.max_facets && p.halfspaces().iter().all(|h| h.offset.abs() <= bound) && is_delzant(p).holds()
}

/// Cut off one vertex by the sum of its active normals.
fn blow_up<R: Rng>(rng: &mut R, p: &MarkedPolytope) -> Option<MarkedPolytope> {
    let v = rng.gen_range(0..p.vertices().len());
    let active = &p.incidence()[v];
    let h = p.halfspaces();
    let normal = active.iter().fold(LatticeVector::zero(p.dim()), |acc, &j| acc.add(&h[j].normal));
    let offset = active.iter().fold(BigRational::one(), |acc, &j| acc + &h[j].offset);
    let mut rows = h.to_vec();
    rows.push(HalfSpace::new(normal, offset));
    let out = MarkedPolytope::from_hrep(&HRep::new(p.dim(), rows).ok()?, None, true).ok()?;
    (out.num_facets() == p.num_facets() + 1).then_some(out)
}

/// A random compact Delzant polytope with integral offsets.
pub fn random_delzant<R: Rng>(rng: &mut R, cfg: &CorpusConfig) -> MarkedPolytope {
    loop {
        let d = rng.gen_range(cfg.min_dim..=cfg.max_dim);
        let rows = product_rows(rng, d);
        let Ok(mut p) = MarkedPolytope::from_hrep(&HRep::new(d, rows).expect("nonzero normals"), None, true) else {
            continue;
        };
        if d >= 2 && rng.gen_bool(cfg.blowup_rate) {
            if let Some(q) = blow_up(rng, &p) {
                p = q;
            }
        }
        let steps = rng.gen_range(0..=2);
        let m = random_unimodular(rng, d, steps);
        let rows = p.halfspaces().iter().map(|h| HalfSpace::new(apply(&m, &h.normal), h.offset.clone())).collect();
        let Ok(p) = MarkedPolytope::from_hrep(&HRep::new(d, rows).expect("nonzero normals"), None, true) else {
            continue;
        };
        if within_bounds(&p, cfg) {
            return p;
        }
    }
}

pub fn random_primitive<R: Rng>(rng: &mut R, d: usize, bound: i64) -> LatticeVector {
    loop {
        let v = lv((0..d).map(|_| rng.gen_range(-bound..=bound)).collect());
        if !v.is_zero() && content(&v).is_one() {
            return v;
        }
    }
}

fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Random rank-one action on `p`: a primitive ray, a randomized complement
/// and a shift just large enough for positivity plus a random margin.
pub fn random_rank_one_action<R: Rng>(rng: &mut R, p: &MarkedPolytope) -> ActionData {
    let d = p.dim();
    let ray = random_primitive(rng, d, 2);
    let basis = complete_to_basis(std::slice::from_ref(&ray), d).expect("primitive vector completes");
    let mut complement: Vec<LatticeVector> = basis.rows_vec()[1..].to_vec();
    for c in complement.iter_mut() {
        let k: i64 = rng.gen_range(-1..=1);
        *c = c.add(&ray.scale(&BigInt::from(k)));
    }
    if complement.len() > 1 && rng.gen_bool(0.5) {
        let (i, j) = (0, complement.len() - 1);
        complement[i] = complement[i].add(&complement[j]);
    }
    let min = p.vertices().iter().map(|v| v.pair(&ray)).min().expect("nonempty polytope");
    let delta = -floor(&min) + 1 + rng.gen_range(0..=2);
    ActionData::rank_one(ray, Some(complement), delta).expect("complement completes the ray")
}

/// Random action of rank `r` on `Z^d` with small entries and a random
/// integral shift. Nothing about the Basic Assumption is guaranteed.
pub fn random_action<R: Rng>(rng: &mut R, d: usize, r: usize, shift: i64) -> ActionData {
    let steps = rng.gen_range(0..=2);
    let m = random_unimodular(rng, d, steps);
    let entries: Vec<BigInt> = (0..d).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| BigInt::from(m[i][j])).collect();
    let iota = IntegerMatrix::new(d, r, entries).expect("d x r entries");
    let nu = random_primitive(rng, r, 2);
    let delta_tilde = DualVector::new((0..d).map(|_| BigRational::from_integer(rng.gen_range(-shift..=shift).into())).collect());
    ActionData { r, iota, nu, delta_tilde, nu_tilde: None, complement: None }
}

/// Random instance of rank `r` whose reduction is Delzant by construction:
/// `Q x prod [-a_i, b_i]` with `Q` Delzant, the kernel along the segment
/// factors and the ray inside the `Q` factor, all pushed through a random
/// unimodular change of basis.
pub fn random_reducible_instance<R: Rng>(rng: &mut R, cfg: &CorpusConfig, r: usize) -> Instance {
    let m = rng.gen_range(cfg.min_dim.max(1)..=cfg.max_dim.max(1));
    let d = m + r - 1;
    let q_cfg = CorpusConfig { min_dim: m, max_dim: m, max_facets: cfg.max_facets.saturating_sub(2 * (r - 1)).max(2 * m), ..cfg.clone() };
    let q = random_delzant(rng, &q_cfg);
    let rank_one = random_rank_one_action(rng, &q);
    let q_shift = rank_one.delta_tilde.clone();
    let ray = rank_one.iota.column(0);

    let pad = |v: &LatticeVector| {
        let mut c = v.coords().to_vec();
        c.resize(d, BigInt::zero());
        LatticeVector::new(c)
    };
    let mut rows: Vec<HalfSpace> = q.halfspaces().iter().map(|h| HalfSpace::new(pad(&h.normal), h.offset.clone())).collect();
    for i in m..d {
        let mut e = vec![0; d];
        e[i] = 1;
        rows.push(HalfSpace::from_i64(&e, -rng.gen_range(1..=2)));
        e[i] = -1;
        rows.push(HalfSpace::from_i64(&e, -rng.gen_range(1..=2)));
    }
    let mut cols = vec![pad(&ray)];
    cols.extend((m..d).map(|i| LatticeVector::unit(d, i)));
    let mut shift: Vec<BigRational> = q_shift.coords().to_vec();
    shift.resize(d, BigRational::zero());

    let steps = rng.gen_range(0..=2);
    let u = random_unimodular(rng, d, steps);
    let images: Vec<LatticeVector> = (0..d).map(|j| apply(&u, &LatticeVector::unit(d, j))).collect();
    let dual = crate::lattice::dual_basis(&images).expect("unimodular");
    let delta_tilde = dual
        .iter()
        .zip(&shift)
        .fold(DualVector::zero(d), |acc, (b, s)| acc.add(&b.to_dual().scale(s)));
    let rows = rows.iter().map(|h| HalfSpace::new(apply(&u, &h.normal), h.offset.clone())).collect();
    let polytope = MarkedPolytope::from_hrep(&HRep::new(d, rows).expect("nonzero normals"), None, true).expect("product polytope");
    let iota_cols: Vec<LatticeVector> = cols.iter().map(|c| apply(&u, c)).collect();
    let iota = IntegerMatrix::from_rows(&iota_cols, d).expect("d entries").transpose();
    let mut nu = vec![0; r];
    nu[0] = 1;
    let action = ActionData { r, iota, nu: lv(nu), delta_tilde, nu_tilde: None, complement: None };
    Instance { polytope, action }
}

/// `count` rank-one instances from a fixed seed.
pub fn rank_one_corpus(seed: u64, count: usize, cfg: &CorpusConfig) -> Vec<Instance> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let polytope = random_delzant(&mut rng, cfg);
            let action = random_rank_one_action(&mut rng, &polytope);
            Instance { polytope, action }
        })
        .collect()
}

/// Integer vector with `|x_i| <= bound`, used where a zero vector is allowed.
pub fn random_vector<R: Rng>(rng: &mut R, d: usize, bound: i64) -> LatticeVector {
    lv((0..d).map(|_| rng.gen_range(-bound..=bound)).collect())
}
