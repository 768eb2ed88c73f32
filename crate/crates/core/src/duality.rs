//! Polar duality about the center.
//!
//! With the center moved to the origin, a face on the plane `n · x = c`
//! (`c > 0`) becomes the dual vertex `n / c`, and a vertex becomes the dual
//! face whose cycle is the ring of faces around it. Faces of the original
//! carry stable equilibria exactly when the matching dual vertices carry
//! unstable ones, and the other way round.

use num_traits::One;
use serde_json::json;
use thiserror::Error;

use crate::equilibria::{classify, EquilibriumReport};
use crate::geometry::{Rat, Sign, Vec3};
use crate::json::PolyhedronFile;
use crate::polyhedron::{newell_normal, Polyhedron, WeightedPolyhedron};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("classification of the polyhedron or its dual has ties")]
    DegenerateClassification,
}

/// Index maps between a polyhedron and its dual. Dual vertex `i` comes from
/// face `i` and dual face `j` from vertex `j`, so both maps are identities;
/// they are kept explicit for callers that relabel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCorrespondence {
    pub face_to_vertex: Vec<usize>,
    pub vertex_to_face: Vec<usize>,
}

/// Faces around vertex `v`, walking across the edge from `v` to its
/// successor in each face.
pub fn face_ring(p: &Polyhedron, v: usize) -> Vec<usize> {
    let start = p.faces_at_vertex(v)[0];
    let mut ring = vec![start];
    let mut f = start;
    loop {
        let (_, next) = p.face_neighbors(f, v).expect("vertex lies on its face");
        let e = p.edge_between(v, next).expect("face sides are edges");
        f = p.edge(e).other_face(f).expect("edge borders the face");
        if f == start {
            return ring;
        }
        ring.push(f);
    }
}

/// Polar dual of `wp` about its center. The result is expressed in the
/// frame with the center at the origin, and its own center is the origin.
pub fn polar_dual(wp: &WeightedPolyhedron) -> (WeightedPolyhedron, DualCorrespondence) {
    let p = wp.shape().translated(&-wp.center());
    let vertices: Vec<Vec3> = (0..p.num_faces())
        .map(|f| {
            let plane = p.plane(f);
            debug_assert_eq!(Sign::of(&plane.offset), Sign::Positive);
            plane.normal.scale(&(Rat::one() / &plane.offset))
        })
        .collect();
    let faces: Vec<Vec<usize>> = (0..p.num_vertices())
        .map(|v| {
            let mut ring = face_ring(&p, v);
            let pts: Vec<&Vec3> = ring.iter().map(|&f| &vertices[f]).collect();
            if Sign::of(&newell_normal(&pts).dot(p.vertex(v))) == Sign::Negative {
                ring.reverse();
            }
            ring
        })
        .collect();
    let dual = Polyhedron::new_oriented(vertices, faces).expect("polar dual of a convex polyhedron is convex");
    let weighted = WeightedPolyhedron::new(dual, Vec3::zero()).expect("the center is interior to the dual");
    let correspondence = DualCorrespondence {
        face_to_vertex: (0..p.num_faces()).collect(),
        vertex_to_face: (0..p.num_vertices()).collect(),
    };
    (weighted, correspondence)
}

/// Classifications of `wp` and its dual, or an error if either has ties.
pub fn classify_pair(
    wp: &WeightedPolyhedron,
) -> Result<(EquilibriumReport, WeightedPolyhedron, EquilibriumReport, DualCorrespondence), DualityError> {
    let primal = classify(wp);
    let (dual, corr) = polar_dual(wp);
    let report = classify(&dual);
    if !primal.is_reliable() || !report.is_reliable() {
        return Err(DualityError::DegenerateClassification);
    }
    Ok((primal, dual, report, corr))
}

fn mapped(ids: &[usize], map: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = ids.iter().map(|&i| map[i]).collect();
    out.sort_unstable();
    out
}

/// Stable faces map onto the dual's unstable vertices and unstable vertices
/// onto the dual's stable faces.
pub fn check_prop_polar(wp: &WeightedPolyhedron) -> Result<bool, DualityError> {
    let (primal, _, dual, corr) = classify_pair(wp)?;
    Ok(mapped(&primal.stable_faces, &corr.face_to_vertex) == dual.unstable_vertices
        && mapped(&primal.unstable_vertices, &corr.vertex_to_face) == dual.stable_faces)
}

/// Whether saddle edges correspond under the edge map induced by duality
/// (the edge between faces `f`, `g` becomes the dual edge between dual
/// vertices `f`, `g`). Observed, not asserted.
pub fn saddle_correspondence(wp: &WeightedPolyhedron) -> Result<bool, DualityError> {
    let (primal, dual, report, corr) = classify_pair(wp)?;
    let p = wp.shape();
    let mut image: Vec<usize> = primal
        .saddle_edges
        .iter()
        .map(|&e| {
            let (f, g) = p.edge(e).faces;
            dual.shape()
                .edge_between(corr.face_to_vertex[f], corr.face_to_vertex[g])
                .expect("adjacent faces give adjacent dual vertices")
        })
        .collect();
    image.sort_unstable();
    Ok(image == report.saddle_edges)
}

/// Same cyclic sequence up to rotation.
pub fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|r| (0..a.len()).all(|i| a[i] == b[(i + r) % b.len()])))
}

/// The dual in the file schema plus the correspondence maps.
pub fn dual_to_json(dual: &WeightedPolyhedron, corr: &DualCorrespondence) -> serde_json::Value {
    json!({
        "dual": serde_json::to_value(PolyhedronFile::from_weighted(dual)).expect("serializable"),
        "face_to_vertex": corr.face_to_vertex,
        "vertex_to_face": corr.vertex_to_face,
    })
}
