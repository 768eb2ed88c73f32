//! Monostable and mono-unstable weightings of tetrahedra.
//!
//! A tetrahedron can be weighted to rest on a single face exactly when it
//! has an obtuse path: three edges with obtuse dihedrals and no vertex common
//! to all of them, visiting the vertices in order `A-B-C-D`. It can be
//! weighted to balance on a single vertex exactly when it has an obtuse
//! cycle `A-B-C-D-A` with obtuse face angles `ABC`, `BCD` and `CDA`. The two
//! properties never coexist.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::equilibria::{classify, EquilibriumReport};
use crate::geometry::{intersect_line_plane, orient3d, AngleClass, GeometryError, Plane, Rat, Sign, Vec3};
use crate::json::point_to_json;
use crate::polyhedron::{Polyhedron, WeightedPolyhedron};
use crate::vertex_links::{dihedral_between, face_angle_sign};

/// Budget for each dyadic refinement index in the mono-unstable search.
pub const MONOUNSTABLE_MAX_STEPS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonostaticError {
    #[error("expected a tetrahedron")]
    NotATetrahedron,
    #[error("the tetrahedron has no obtuse path")]
    NoObtusePath,
    #[error("the tetrahedron has no obtuse cycle")]
    NoObtuseCycle,
    #[error("{0:?} is not an obtuse cycle of this tetrahedron")]
    InvalidCycle([usize; 4]),
    #[error("face {0} is not a face of this tetrahedron")]
    NoSuchFace(usize),
    #[error("cut {point} left its open segment (t = {t})")]
    DegenerateCut { point: &'static str, t: Rat },
    #[error("construction failed verification: {0}")]
    VerificationFailed(String),
    #[error("no mono-unstable center found within k, j <= {0}")]
    SearchExhausted(u32),
    #[error("tetrahedron has both an obtuse path and an obtuse cycle")]
    TheoremViolation,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Vertices `A-B-C-D` with obtuse dihedrals on `AB`, `BC` and `CD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ObtusePath(pub [usize; 4]);

impl ObtusePath {
    pub fn reversed(&self) -> ObtusePath {
        let [a, b, c, d] = self.0;
        ObtusePath([d, c, b, a])
    }
}

/// Cycle `A-B-C-D-A` with obtuse face angles at `B`, `C` and `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ObtuseCycle(pub [usize; 4]);

impl ObtuseCycle {
    /// The vertex without an obtuse angle on the cycle.
    pub fn apex(&self) -> usize {
        self.0[0]
    }
}

fn ensure_tetrahedron(t: &Polyhedron) -> Result<(), MonostaticError> {
    if t.is_tetrahedron() {
        Ok(())
    } else {
        Err(MonostaticError::NotATetrahedron)
    }
}

/// The vertex not on `face`.
pub fn opposite_vertex(t: &Polyhedron, face: usize) -> usize {
    (0..4).find(|v| !t.face(face).contains(v)).expect("tetrahedron face misses one vertex")
}

/// The face not containing `vertex`.
pub fn opposite_face(t: &Polyhedron, vertex: usize) -> usize {
    (0..4).find(|&f| !t.face(f).contains(&vertex)).expect("tetrahedron vertex misses one face")
}

fn permutations4() -> impl Iterator<Item = [usize; 4]> {
    (0..4).flat_map(move |a| {
        (0..4).flat_map(move |b| {
            (0..4).flat_map(move |c| {
                (0..4).filter_map(move |d| {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    distinct.then_some(p)
                })
            })
        })
    })
}

fn obtuse_dihedral(t: &Polyhedron, a: usize, b: usize) -> bool {
    dihedral_between(t, a, b) == Some(AngleClass::Obtuse)
}

/// Every vertex ordering whose consecutive edges have obtuse dihedrals. A
/// path and its reversal are both listed.
pub fn find_obtuse_paths(t: &Polyhedron) -> Result<Vec<ObtusePath>, MonostaticError> {
    ensure_tetrahedron(t)?;
    Ok(permutations4()
        .filter(|p| (0..3).all(|i| obtuse_dihedral(t, p[i], p[i + 1])))
        .map(ObtusePath)
        .collect())
}

fn obtuse_face_angle(t: &Polyhedron, u: usize, apex: usize, w: usize) -> bool {
    face_angle_sign(t, apex, u, w) == Ok(AngleClass::Obtuse)
}

fn is_obtuse_cycle(t: &Polyhedron, [a, b, c, d]: [usize; 4]) -> bool {
    obtuse_face_angle(t, a, b, c) && obtuse_face_angle(t, b, c, d) && obtuse_face_angle(t, c, d, a)
}

/// Every labeling `A-B-C-D-A` that is an obtuse cycle. A cycle and its
/// reversal `A-D-C-B-A` are both listed.
pub fn find_obtuse_cycles(t: &Polyhedron) -> Result<Vec<ObtuseCycle>, MonostaticError> {
    ensure_tetrahedron(t)?;
    Ok(permutations4().filter(|&p| is_obtuse_cycle(t, p)).map(ObtuseCycle).collect())
}

/// A point produced by one of the cutting planes, with its segment parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPoint {
    pub label: &'static str,
    pub point: Vec3,
    pub t: Rat,
}

/// A sub-tetrahedron of centers that make the host monostable on
/// `target_face`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadingRegion {
    pub target_face: usize,
    /// The obtuse path the construction ran on, `A-B-C-D`.
    pub path: ObtusePath,
    pub corners: [Vec3; 4],
    pub cuts: Vec<CutPoint>,
}

impl LoadingRegion {
    pub fn centroid(&self) -> Vec3 {
        Vec3::centroid(self.corners.iter())
    }

    pub fn contains_strictly(&self, x: &Vec3) -> bool {
        let [a, b, c, d] = &self.corners;
        let s = Sign::of(&orient3d(a, b, c, d));
        [
            orient3d(x, b, c, d),
            orient3d(a, x, c, d),
            orient3d(a, b, x, d),
            orient3d(a, b, c, x),
        ]
        .iter()
        .all(|v| Sign::of(v) == s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cuts: Vec<_> = self
            .cuts
            .iter()
            .map(|c| json!({"label": c.label, "point": point_to_json(&c.point), "t": c.t.to_string()}))
            .collect();
        json!({
            "target_face": self.target_face,
            "path": self.path.0,
            "corners": self.corners.iter().map(point_to_json).collect::<Vec<_>>(),
            "cuts": cuts,
        })
    }
}

fn cut(label: &'static str, plane: &Plane, from: &Vec3, to: &Vec3) -> Result<CutPoint, MonostaticError> {
    let (point, t) = intersect_line_plane(from, to, plane)?;
    if Sign::of(&t) != Sign::Positive || t >= Rat::one() {
        return Err(MonostaticError::DegenerateCut { point: label, t });
    }
    Ok(CutPoint { label, point, t })
}

/// Runs the cutting-plane chain on path `A-B-C-D`. With `toward_b` the
/// region is `CEFG` (monostable on the face opposite `B`); otherwise it is
/// `BCEH` (monostable on the face opposite `A`).
fn region_on_path(t: &Polyhedron, path: ObtusePath, toward_b: bool) -> Result<LoadingRegion, MonostaticError> {
    let [ia, ib, ic, id] = path.0;
    let (a, b, c, d) = (t.vertex(ia), t.vertex(ib), t.vertex(ic), t.vertex(id));
    let normal_of = |v: usize| t.plane(opposite_face(t, v)).normal.clone();

    let e = cut("E", &Plane::containing_line_perpendicular_to(a, b, &normal_of(ic))?, c, d)?;
    let f = cut("F", &Plane::containing_line_perpendicular_to(b, c, &normal_of(id))?, a, &e.point)?;
    let (target_vertex, last, corners) = if toward_b {
        let g = cut("G", &Plane::containing_line_perpendicular_to(c, &e.point, &normal_of(ia))?, b, &f.point)?;
        let corners = [c.clone(), e.point.clone(), f.point.clone(), g.point.clone()];
        (ib, g, corners)
    } else {
        let h = cut("H", &Plane::containing_line_perpendicular_to(c, &e.point, &normal_of(ib))?, b, &f.point)?;
        let corners = [b.clone(), c.clone(), e.point.clone(), h.point.clone()];
        (ia, h, corners)
    };
    if Sign::of(&orient3d(&corners[0], &corners[1], &corners[2], &corners[3])) == Sign::Zero {
        return Err(MonostaticError::DegenerateCut { point: last.label, t: last.t });
    }
    Ok(LoadingRegion { target_face: opposite_face(t, target_vertex), path, corners, cuts: vec![e, f, last] })
}

/// Loading region for `target_face`. Faces opposite `A` or `B` of the first
/// obtuse path use it directly; the other two use its reversal.
pub fn loading_region(t: &Polyhedron, target_face: usize) -> Result<LoadingRegion, MonostaticError> {
    ensure_tetrahedron(t)?;
    if target_face >= 4 {
        return Err(MonostaticError::NoSuchFace(target_face));
    }
    let path = *find_obtuse_paths(t)?.first().ok_or(MonostaticError::NoObtusePath)?;
    let target = opposite_vertex(t, target_face);
    let [a, b, c, d] = path.0;
    if target == b {
        region_on_path(t, path, true)
    } else if target == a {
        region_on_path(t, path, false)
    } else if target == c {
        region_on_path(t, path.reversed(), true)
    } else {
        debug_assert_eq!(target, d);
        region_on_path(t, path.reversed(), false)
    }
}

#[derive(Debug, Clone)]
pub struct MonostableWeighting {
    pub weighted: WeightedPolyhedron,
    pub region: LoadingRegion,
    pub report: EquilibriumReport,
}

/// Centers `t` at the centroid of its loading region for `target_face` and
/// checks the result is monostable on that face.
pub fn monostable_weighting(t: &Polyhedron, target_face: usize) -> Result<MonostableWeighting, MonostaticError> {
    let region = loading_region(t, target_face)?;
    let weighted = WeightedPolyhedron::new(t.clone(), region.centroid())
        .map_err(|e| MonostaticError::VerificationFailed(e.to_string()))?;
    let report = classify(&weighted);
    if !report.is_reliable() || report.stable_faces != [target_face] {
        return Err(MonostaticError::VerificationFailed(format!(
            "expected S = [{target_face}], got {:?} (degenerate: {})",
            report.stable_faces,
            report.degenerate.len()
        )));
    }
    Ok(MonostableWeighting { weighted, region, report })
}

#[derive(Debug, Clone)]
pub struct MonounstableWeighting {
    pub weighted: WeightedPolyhedron,
    pub cycle: ObtuseCycle,
    /// Point on edge `BC`: `C + (B - C) / 2^k`.
    pub edge_point: Vec3,
    pub k: u32,
    pub j: u32,
    /// Number of centers classified before success.
    pub attempts: u32,
    pub report: EquilibriumReport,
}

impl MonounstableWeighting {
    pub fn trace_json(&self) -> serde_json::Value {
        json!({
            "cycle": self.cycle.0,
            "k": self.k,
            "j": self.j,
            "edge_point": point_to_json(&self.edge_point),
            "center": point_to_json(self.weighted.center()),
            "attempts": self.attempts,
        })
    }
}

fn dyadic(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << k)
}

/// Moves a point `P` along `BC` towards `C` until the angles `ABP`, `DCP`
/// and `ADP` are all obtuse, then moves the center from the centroid
/// towards `P` until only `A` carries an unstable equilibrium.
pub fn monounstable_weighting(t: &Polyhedron, cycle: ObtuseCycle) -> Result<MonounstableWeighting, MonostaticError> {
    ensure_tetrahedron(t)?;
    if !is_obtuse_cycle(t, cycle.0) {
        return Err(MonostaticError::InvalidCycle(cycle.0));
    }
    let [ia, ib, ic, id] = cycle.0;
    let (a, b, c, d) = (t.vertex(ia), t.vertex(ib), t.vertex(ic), t.vertex(id));
    let centroid = Vec3::centroid(t.vertices());
    let obtuse = |apex: &Vec3, u: &Vec3, w: &Vec3| Sign::of(&(u - apex).dot(&(w - apex))) == Sign::Negative;
    let mut attempts = 0;
    for k in 1..=MONOUNSTABLE_MAX_STEPS {
        let p = c.lerp(b, &dyadic(k));
        if !(obtuse(b, a, &p) && obtuse(c, d, &p) && obtuse(d, a, &p)) {
            continue;
        }
        for j in 1..=MONOUNSTABLE_MAX_STEPS {
            let center = p.lerp(&centroid, &dyadic(j));
            attempts += 1;
            let Ok(weighted) = WeightedPolyhedron::new(t.clone(), center) else { continue };
            let report = classify(&weighted);
            if report.is_reliable() && report.unstable_vertices == [ia] {
                return Ok(MonounstableWeighting { weighted, cycle, edge_point: p, k, j, attempts, report });
            }
        }
    }
    Err(MonostaticError::SearchExhausted(MONOUNSTABLE_MAX_STEPS))
}

/// Which of the two weightable properties a tetrahedron has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Exclusivity {
    PathOnly,
    CycleOnly,
    Neither,
}

pub fn check_exclusivity(t: &Polyhedron) -> Result<Exclusivity, MonostaticError> {
    let path = !find_obtuse_paths(t)?.is_empty();
    let cycle = !find_obtuse_cycles(t)?.is_empty();
    match (path, cycle) {
        (true, true) => Err(MonostaticError::TheoremViolation),
        (true, false) => Ok(Exclusivity::PathOnly),
        (false, true) => Ok(Exclusivity::CycleOnly),
        (false, false) => Ok(Exclusivity::Neither),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::from_ints(x, y, z)
    }

    fn tet(p: [(i64, i64, i64); 4]) -> Polyhedron {
        let [a, b, c, d] = p.map(|(x, y, z)| v(x, y, z));
        Polyhedron::tetrahedron(a, b, c, d).unwrap()
    }

    fn regular() -> Polyhedron {
        tet([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])
    }

    fn path_demo() -> Polyhedron {
        tet([(0, 0, 0), (5, 6, 3), (6, 4, 1), (6, 5, 11)])
    }

    fn case_one() -> Polyhedron {
        tet([(-10, 0, 0), (0, 2, 0), (1, 0, 1), (0, -2, 0)])
    }

    fn case_three() -> Polyhedron {
        tet([(-10, 0, 0), (2, 0, 0), (3, 2, 0), (0, 4, 1)])
    }

    #[test]
    fn regular_tetrahedron_has_neither() {
        let t = regular();
        assert!(find_obtuse_paths(&t).unwrap().is_empty());
        assert!(find_obtuse_cycles(&t).unwrap().is_empty());
        assert_eq!(check_exclusivity(&t), Ok(Exclusivity::Neither));
        assert_eq!(loading_region(&t, 0).unwrap_err(), MonostaticError::NoObtusePath);
        assert_eq!(monostable_weighting(&t, 2).unwrap_err(), MonostaticError::NoObtusePath);
    }

    #[test]
    fn path_demo_is_weightable_on_every_face() {
        let t = path_demo();
        let paths = find_obtuse_paths(&t).unwrap();
        assert!(paths.contains(&ObtusePath([0, 1, 2, 3])));
        assert!(paths.contains(&ObtusePath([3, 2, 1, 0])));
        assert_eq!(check_exclusivity(&t), Ok(Exclusivity::PathOnly));
        let mut centers = Vec::new();
        for face in 0..4 {
            let w = monostable_weighting(&t, face).unwrap();
            assert_eq!(w.report.stable_faces, vec![face]);
            assert_eq!(w.report.unstable(), 2);
            assert_eq!(w.report.saddles(), 1);
            assert!(w.region.contains_strictly(w.weighted.center()));
            for c in &w.region.cuts {
                assert!(Sign::of(&c.t) == Sign::Positive && c.t < Rat::one());
            }
            centers.push(w.weighted.center().clone());
        }
        centers.dedup();
        assert_eq!(centers.len(), 4);
    }

    #[test]
    fn cycles_of_reference_cases() {
        let one = find_obtuse_cycles(&case_one()).unwrap();
        assert!(one.contains(&ObtuseCycle([0, 1, 2, 3])));
        let three = find_obtuse_cycles(&case_three()).unwrap();
        assert!(three.contains(&ObtuseCycle([0, 1, 2, 3])));
        assert_eq!(check_exclusivity(&case_one()), Ok(Exclusivity::CycleOnly));
    }

    #[test]
    fn monounstable_on_cycle_cases() {
        for t in [case_one(), case_three()] {
            let w = monounstable_weighting(&t, ObtuseCycle([0, 1, 2, 3])).unwrap();
            assert_eq!(w.report.unstable_vertices, vec![0]);
            assert_eq!(w.report.stable(), 2);
        }
    }

    #[test]
    fn invalid_cycle_rejected() {
        assert_eq!(
            monounstable_weighting(&regular(), ObtuseCycle([0, 1, 2, 3])).unwrap_err(),
            MonostaticError::InvalidCycle([0, 1, 2, 3])
        );
    }

    #[test]
    fn non_tetrahedra_rejected() {
        let pts: Vec<Vec3> = vec![v(0, 0, 0), v(4, 0, 0), v(4, 4, 0), v(0, 4, 0), v(2, 2, 3)];
        let pyramid = crate::hull::convex_hull(&pts).unwrap().polyhedron;
        assert_eq!(find_obtuse_paths(&pyramid).unwrap_err(), MonostaticError::NotATetrahedron);
    }
}
