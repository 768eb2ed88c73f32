//! Mono-monostatic weighted polyhedra for every legal face vector except
//! that of the tetrahedron.
//!
//! Starting from a (5,8,5) seed, face bending adds one face while keeping the
//! vertex count, and polar duality swaps faces with vertices. Every step is
//! checked by the classifier; nothing is trusted to hold "for small enough"
//! displacements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::duality::polar_dual;
use crate::equilibria::{classify, foot_on_face, EquilibriumReport};
use crate::fixtures;
use crate::geometry::{Rat, Sign, Vec3};
use crate::json::point_to_json;
use crate::polyhedron::{FaceVector, Polyhedron, WeightedPolyhedron};

/// Maximum number of halvings of the bend displacement.
pub const BEND_HALVINGS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("every face is a triangle")]
    AllFacesTriangular,
    #[error("vertex {vertex} does not lie on a bendable face {face}")]
    NotBendable { vertex: usize, face: usize },
    #[error("foot of the center on face {face} lies on the diagonal it would be split along")]
    GeneralPositionViolated { face: usize },
    #[error("bend failed: {0}")]
    BendFailed(String),
    #[error("{0} is not a legal face vector")]
    IllegalFaceVector(FaceVector),
    #[error("no weighted tetrahedron is mono-monostatic")]
    ExcludedTetrahedron,
    #[error("construction of {target} failed: {reason}")]
    ConstructionFailed { target: FaceVector, reason: String },
}

/// How to bend: move `vertex` off `face` by `delta * direction`, splitting
/// `face` along `diagonal`, the two neighbors of `vertex` on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BendPlan {
    pub vertex: usize,
    pub face: usize,
    pub diagonal: (usize, usize),
    pub direction: Vec3,
    pub delta: Rat,
}

fn nontriangular_faces_at(p: &Polyhedron, v: usize) -> Vec<usize> {
    p.faces_at_vertex(v).into_iter().filter(|&f| p.face(f).len() > 3).collect()
}

/// Every `(vertex, face)` pair that can be bent: the vertex lies on one to
/// three nontriangular faces and `face` is one of them. Ordered by vertex,
/// then face.
pub fn bend_candidates(p: &Polyhedron) -> Vec<(usize, usize)> {
    (0..p.num_vertices())
        .flat_map(|v| {
            let faces = nontriangular_faces_at(p, v);
            let ok = (1..=3).contains(&faces.len());
            faces.into_iter().filter(move |_| ok).map(move |f| (v, f))
        })
        .collect()
}

/// Scales a nonzero rational vector to a primitive integer vector.
fn primitive(d: &Vec3) -> Vec3 {
    let coords = d.coords();
    let lcm = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords.iter().map(|c| (*c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let r = |i: usize| Rat::from_integer(&ints[i] / &gcd);
    Vec3::new(r(0), r(1), r(2))
}

/// Largest power of two not above `x > 0`.
fn dyadic_floor(x: &Rat) -> Rat {
    let two = Rat::from_integer(BigInt::from(2));
    let mut d = Rat::one();
    while &d > x {
        d /= &two;
    }
    while &(&d * &two) <= x {
        d *= &two;
    }
    d
}

/// Direction and initial displacement for bending `vertex` off `face`.
pub fn plan_bend(p: &Polyhedron, vertex: usize, face: usize) -> Result<BendPlan, GeneratorError> {
    let nontri = nontriangular_faces_at(p, vertex);
    if !nontri.contains(&face) || nontri.len() > 3 {
        return Err(GeneratorError::NotBendable { vertex, face });
    }
    let diagonal = p.face_neighbors(face, vertex).expect("vertex lies on the face");
    let nf = &p.plane(face).normal;
    let others: Vec<&Vec3> = nontri.iter().filter(|&&g| g != face).map(|&g| &p.plane(g).normal).collect();
    // The vertex must stay on the planes of the other nontriangular faces and
    // move to the inner side of the bent face.
    let d = match others.as_slice() {
        [] => -nf,
        [n2] => &(-nf) + &n2.scale(&(nf.dot(n2) / n2.norm_sq())),
        [n2, n3] => {
            let c = n2.cross(n3);
            match Sign::of(&c.dot(nf)) {
                Sign::Negative => c,
                Sign::Positive => -&c,
                Sign::Zero => return Err(GeneratorError::BendFailed("no admissible direction".into())),
            }
        }
        _ => unreachable!("at most three nontriangular faces"),
    };
    if d.is_zero() || Sign::of(&d.dot(nf)) != Sign::Negative {
        return Err(GeneratorError::BendFailed("no admissible direction".into()));
    }
    let direction = primitive(&d);
    let at = p.vertex(vertex);
    let reach = (0..p.num_faces())
        .filter(|&g| !p.face(g).contains(&vertex))
        .filter_map(|g| {
            let plane = p.plane(g);
            let rate = plane.normal.dot(&direction);
            rate.is_positive().then(|| -plane.eval(at) / rate)
        })
        .min()
        .unwrap_or_else(Rat::one);
    let delta = dyadic_floor(&(reach / Rat::from_integer(BigInt::from(8))));
    Ok(BendPlan { vertex, face, diagonal, direction, delta })
}

/// The plan for the lowest bendable vertex and its lowest bendable face.
pub fn select_bend_vertex(p: &Polyhedron) -> Result<BendPlan, GeneratorError> {
    let &(vertex, face) = bend_candidates(p).first().ok_or(GeneratorError::AllFacesTriangular)?;
    plan_bend(p, vertex, face)
}

#[derive(Debug, Clone)]
pub struct BendOutcome {
    pub weighted: WeightedPolyhedron,
    /// Displacement actually used.
    pub delta: Rat,
    pub halvings: u32,
    /// Index of the new triangle; the shrunken face keeps the old index.
    pub triangle: usize,
    pub report: EquilibriumReport,
}

fn bent_shape(p: &Polyhedron, plan: &BendPlan, delta: &Rat) -> Result<Polyhedron, String> {
    let mut vertices = p.vertices().to_vec();
    vertices[plan.vertex] = &vertices[plan.vertex] + &plan.direction.scale(delta);
    let mut faces = p.faces().to_vec();
    faces[plan.face].retain(|&x| x != plan.vertex);
    let (prev, next) = plan.diagonal;
    faces.push(vec![prev, plan.vertex, next]);
    Polyhedron::new_oriented(vertices, faces).map_err(|e| e.to_string())
}

/// Expected stable faces after a bend: unchanged off the bent face, and
/// either the shrunken face or the new triangle takes over its equilibrium.
fn check_bend(before: &EquilibriumReport, after: &EquilibriumReport, face: usize, triangle: usize) -> Result<(), String> {
    if !after.is_reliable() {
        return Err("classification has ties".into());
    }
    if after.unstable_vertices != before.unstable_vertices {
        return Err(format!("unstable vertices changed to {:?}", after.unstable_vertices));
    }
    let off: Vec<usize> = before.stable_faces.iter().copied().filter(|&f| f != face).collect();
    let after_off: Vec<usize> =
        after.stable_faces.iter().copied().filter(|&f| f != face && f != triangle).collect();
    if off != after_off {
        return Err(format!("stable faces away from the bend changed to {:?}", after.stable_faces));
    }
    let split = after.stable_faces.iter().filter(|&&f| f == face || f == triangle).count();
    let expected = usize::from(before.stable_faces.contains(&face));
    if split != expected {
        return Err(format!("{split} equilibria on the split face, expected {expected}"));
    }
    Ok(())
}

/// Bends `plan.face` by moving `plan.vertex`, halving the displacement until
/// the result keeps its equilibria.
pub fn bend_face(wp: &WeightedPolyhedron, plan: &BendPlan) -> Result<BendOutcome, GeneratorError> {
    let p = wp.shape();
    let (prev, next) = plan.diagonal;
    let q = foot_on_face(wp, plan.face);
    let (a, b) = (p.vertex(prev), p.vertex(next));
    if (b - a).cross(&(&q - a)).dot(&p.plane(plan.face).normal).is_zero() {
        return Err(GeneratorError::GeneralPositionViolated { face: plan.face });
    }
    let before = classify(wp);
    if !before.is_reliable() {
        return Err(GeneratorError::BendFailed("input classification has ties".into()));
    }
    let triangle = p.num_faces();
    let two = Rat::from_integer(BigInt::from(2));
    let mut delta = plan.delta.clone();
    let mut last = String::new();
    for halvings in 0..=BEND_HALVINGS {
        let attempt = bent_shape(p, plan, &delta).and_then(|shape| {
            let weighted = WeightedPolyhedron::new(shape, wp.center().clone()).map_err(|e| e.to_string())?;
            let report = classify(&weighted);
            check_bend(&before, &report, plan.face, triangle)?;
            Ok((weighted, report))
        });
        match attempt {
            Ok((weighted, report)) => return Ok(BendOutcome { weighted, delta, halvings, triangle, report }),
            Err(e) => last = e,
        }
        delta /= &two;
    }
    Err(GeneratorError::BendFailed(last))
}

/// One unique stable and one unique unstable equilibrium, without ties.
pub fn verify_mono_monostatic(wp: &WeightedPolyhedron) -> bool {
    let r = classify(wp);
    r.is_reliable() && r.stable() == 1 && r.unstable() == 1
}

pub fn seed_585() -> WeightedPolyhedron {
    fixtures::seed585().weighted().expect("seed center is interior")
}

/// Attempts at progressively finer grids when snapping.
pub const SNAP_ATTEMPTS: u32 = 24;

fn pow2(e: i32) -> Rat {
    let big = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rat::from_integer(big)
    } else {
        Rat::new(BigInt::one(), big)
    }
}

/// Rounds the center and every vertex that lies only on triangular faces to
/// the coarsest dyadic grid that keeps the same stable faces and unstable
/// vertices. Moving such vertices cannot break face planarity, so this
/// bounds coefficient growth without changing the combinatorics. Returns
/// the snapped polyhedron and the grid step, or `None` if no tried grid
/// works.
pub fn snap(wp: &WeightedPolyhedron) -> Option<(WeightedPolyhedron, Rat)> {
    let p = wp.shape();
    let report = classify(wp);
    if !report.is_reliable() {
        return None;
    }
    let free: Vec<bool> =
        (0..p.num_vertices()).map(|v| p.faces_at_vertex(v).iter().all(|&f| p.face(f).len() == 3)).collect();
    let shortest = p
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints;
            let [x, y, z] = (p.vertex(a) - p.vertex(b)).to_f64();
            (x * x + y * y + z * z).sqrt()
        })
        .fold(f64::INFINITY, f64::min);
    if !shortest.is_finite() || shortest <= 0.0 {
        return None;
    }
    let mut e = shortest.log2().floor() as i32 - 4;
    for _ in 0..SNAP_ATTEMPTS {
        let h = pow2(e);
        let round = |x: &Rat| (x / &h).round() * &h;
        let round_point = |q: &Vec3| Vec3::new(round(&q.x), round(&q.y), round(&q.z));
        let vertices: Vec<Vec3> =
            p.vertices().iter().zip(&free).map(|(q, &f)| if f { round_point(q) } else { q.clone() }).collect();
        let snapped = Polyhedron::new_oriented(vertices, p.faces().to_vec())
            .ok()
            .and_then(|shape| WeightedPolyhedron::new(shape, round_point(wp.center())).ok());
        if let Some(candidate) = snapped {
            let r = classify(&candidate);
            if r.is_reliable() && r.stable_faces == report.stable_faces && r.unstable_vertices == report.unstable_vertices {
                return Some((candidate, h));
            }
        }
        e -= 4;
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionStep {
    Seed { face_vector: FaceVector },
    Bend { vertex: usize, face: usize, delta: Rat, face_vector: FaceVector },
    Dual { face_vector: FaceVector },
    Snap { grid: Rat },
}

impl ConstructionStep {
    pub fn to_json(&self) -> serde_json::Value {
        let fv = |f: &FaceVector| [f.f, f.e, f.v];
        match self {
            ConstructionStep::Seed { face_vector } => json!({"step": "seed", "face_vector": fv(face_vector)}),
            ConstructionStep::Bend { vertex, face, delta, face_vector } => json!({
                "step": "bend",
                "vertex": vertex,
                "face": face,
                "delta": delta.to_string(),
                "face_vector": fv(face_vector),
            }),
            ConstructionStep::Dual { face_vector } => json!({"step": "dual", "face_vector": fv(face_vector)}),
            ConstructionStep::Snap { grid } => json!({"step": "snap", "grid": grid.to_string()}),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub weighted: WeightedPolyhedron,
    pub trace: Vec<ConstructionStep>,
}

impl Construction {
    pub fn trace_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.trace.iter().map(ConstructionStep::to_json).collect())
    }

    pub fn center_json(&self) -> serde_json::Value {
        serde_json::to_value(point_to_json(self.weighted.center())).expect("serializable")
    }
}

fn f_min(v: usize) -> usize {
    v.div_ceil(2) + 2
}

/// Memoizing driver for the bend/dual induction.
#[derive(Debug, Default)]
pub struct Generator {
    cache: BTreeMap<(usize, usize), Construction>,
    /// Targets whose bend needed a candidate other than the first.
    pub fallbacks: Vec<FaceVector>,
}

impl Generator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generate(&mut self, f: usize, v: usize) -> Result<Construction, GeneratorError> {
        let target = FaceVector::from_faces_vertices(f, v);
        if (f, v) == (4, 4) {
            return Err(GeneratorError::ExcludedTetrahedron);
        }
        if f < 4 || v < 4 || !target.is_legal() {
            return Err(GeneratorError::IllegalFaceVector(target));
        }
        if let Some(c) = self.cache.get(&(f, v)) {
            return Ok(c.clone());
        }
        let mut built = self.build(f, v, target)?;
        if let Some((snapped, grid)) = snap(&built.weighted) {
            built.weighted = snapped;
            built.trace.push(ConstructionStep::Snap { grid });
        }
        let fail = |reason: &str| GeneratorError::ConstructionFailed { target, reason: reason.into() };
        if built.weighted.shape().face_vector() != target {
            return Err(fail("face vector mismatch"));
        }
        if !verify_mono_monostatic(&built.weighted) {
            return Err(fail("result is not mono-monostatic"));
        }
        self.cache.insert((f, v), built.clone());
        Ok(built)
    }

    fn build(&mut self, f: usize, v: usize, target: FaceVector) -> Result<Construction, GeneratorError> {
        if (f, v) == (5, 5) {
            return Ok(Construction { weighted: seed_585(), trace: vec![ConstructionStep::Seed { face_vector: target }] });
        }
        if f > f_min(v) {
            let prev = self.generate(f - 1, v)?;
            let p = prev.weighted.shape();
            let mut last = GeneratorError::AllFacesTriangular;
            for (i, (vertex, face)) in bend_candidates(p).into_iter().enumerate() {
                let outcome = plan_bend(p, vertex, face).and_then(|plan| bend_face(&prev.weighted, &plan));
                match outcome {
                    Ok(o) if verify_mono_monostatic(&o.weighted) => {
                        if i > 0 {
                            self.fallbacks.push(target);
                        }
                        let mut trace = prev.trace.clone();
                        trace.push(ConstructionStep::Bend { vertex, face, delta: o.delta, face_vector: target });
                        return Ok(Construction { weighted: o.weighted, trace });
                    }
                    Ok(_) => last = GeneratorError::BendFailed("bend lost mono-monostaticity".into()),
                    Err(e) => last = e,
                }
            }
            return Err(GeneratorError::ConstructionFailed { target, reason: last.to_string() });
        }
        let prev = self.generate(v, f)?;
        let (dual, _) = polar_dual(&prev.weighted);
        let mut trace = prev.trace.clone();
        trace.push(ConstructionStep::Dual { face_vector: target });
        Ok(Construction { weighted: dual, trace })
    }
}

/// Mono-monostatic weighted polyhedron with `f` faces and `v` vertices.
pub fn generate_mono_monostatic(f: usize, v: usize) -> Result<Construction, GeneratorError> {
    Generator::new().generate(f, v)
}
