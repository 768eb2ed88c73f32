//! Quasi-static tipping with inelastic landings.
//!
//! A body resting on a face whose center foot falls outside it rolls across
//! the edge it overhangs onto the neighboring face, loses all motion, and
//! repeats until the foot falls strictly inside the supporting face. When
//! the foot overhangs a corner the body pivots on a vertex, which has more
//! than one degree of freedom; that case is reported rather than modeled.

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::equilibria::{edge_functionals, foot_on_face};
use crate::geometry::{Rat, Sign};
use crate::polyhedron::WeightedPolyhedron;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TipError {
    #[error("foot of the center on face {face} lies on the line of one of its edges")]
    Degenerate { face: usize },
    #[error("face {face} tips onto vertex {vertex}")]
    VertexExitEncountered { face: usize, vertex: usize },
    #[error("tipping revisited face {face}")]
    CycleDetected { face: usize },
    #[error("no face {0}")]
    NoSuchFace(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Exit {
    Stable,
    Exit(usize),
    VertexExit(usize),
}

/// Where the body goes from `face`: nowhere, across an edge, or onto a vertex.
pub fn exit_edge(wp: &WeightedPolyhedron, face: usize) -> Result<Exit, TipError> {
    let p = wp.shape();
    if face >= p.num_faces() {
        return Err(TipError::NoSuchFace(face));
    }
    let q = foot_on_face(wp, face);
    let s = edge_functionals(p, face, &q);
    if s.iter().any(|x| Sign::of(x) == Sign::Zero) {
        return Err(TipError::Degenerate { face });
    }
    let cyc = p.face(face);
    let k = cyc.len();
    let beyond: Vec<usize> = (0..k).filter(|&i| Sign::of(&s[i]) == Sign::Negative).collect();
    let edge_id = |i: usize| p.edge_between(cyc[i], cyc[(i + 1) % k]).expect("face side is an edge");
    match beyond.as_slice() {
        [] => Ok(Exit::Stable),
        [i] => Ok(Exit::Exit(edge_id(*i))),
        [i, j] if (i + 1) % k == *j => Ok(Exit::VertexExit(cyc[*j])),
        [i, j] if (j + 1) % k == *i => Ok(Exit::VertexExit(cyc[*i])),
        _ => {
            // Functionals scale with the edge length; compare squared distances.
            let dist = |i: usize| {
                let a = p.vertex(cyc[i]);
                let b = p.vertex(cyc[(i + 1) % k]);
                &s[i] * &s[i] / (b - a).norm_sq()
            };
            let mut best: Vec<(Rat, usize)> = beyond.iter().map(|&i| (dist(i), i)).collect();
            best.sort_by(|a, b| b.0.cmp(&a.0));
            if best[0].0 == best[1].0 {
                return Err(TipError::Degenerate { face });
            }
            Ok(Exit::Exit(edge_id(best[0].1)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TipStep {
    pub from_face: usize,
    pub exit_edge: usize,
    pub to_face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TipPath {
    pub start_face: usize,
    pub steps: Vec<TipStep>,
    pub terminal_face: usize,
}

impl TipPath {
    /// Faces visited, starting face first.
    pub fn faces(&self) -> Vec<usize> {
        std::iter::once(self.start_face).chain(self.steps.iter().map(|s| s.to_face)).collect()
    }

    pub fn to_json(&self, wp: &WeightedPolyhedron) -> serde_json::Value {
        let p = wp.shape();
        let steps: Vec<_> = self
            .steps
            .iter()
            .map(|s| {
                let (a, b) = p.edge(s.exit_edge).endpoints;
                json!({"from_face": s.from_face, "exit_edge": [a, b], "to_face": s.to_face})
            })
            .collect();
        let heights: Vec<String> = self.faces().iter().map(|&f| resting_height_sq(wp, f).to_string()).collect();
        json!({
            "start_face": self.start_face,
            "steps": steps,
            "terminal_face": self.terminal_face,
            "height_sq": heights,
        })
    }
}

/// Squared distance from the center to the plane of `face`: the height of
/// the center when resting on that face, squared.
pub fn resting_height_sq(wp: &WeightedPolyhedron, face: usize) -> Rat {
    let plane = wp.shape().plane(face);
    let d = plane.eval(wp.center());
    &d * &d / plane.normal.norm_sq()
}

/// Rolls from `start_face` until the body rests.
pub fn tip_path(wp: &WeightedPolyhedron, start_face: usize) -> Result<TipPath, TipError> {
    let p = wp.shape();
    let mut face = start_face;
    let mut seen = vec![start_face];
    let mut steps = Vec::new();
    loop {
        match exit_edge(wp, face)? {
            Exit::Stable => return Ok(TipPath { start_face, steps, terminal_face: face }),
            Exit::VertexExit(vertex) => return Err(TipError::VertexExitEncountered { face, vertex }),
            Exit::Exit(edge) => {
                let to_face = p.edge(edge).other_face(face).expect("exit edge borders the face");
                if seen.contains(&to_face) {
                    return Err(TipError::CycleDetected { face: to_face });
                }
                seen.push(to_face);
                steps.push(TipStep { from_face: face, exit_edge: edge, to_face });
                face = to_face;
            }
        }
    }
}

/// Whether the resting height strictly drops at every step of `path`.
pub fn heights_strictly_decrease(wp: &WeightedPolyhedron, path: &TipPath) -> bool {
    let h: Vec<Rat> = path.faces().iter().map(|&f| resting_height_sq(wp, f)).collect();
    h.windows(2).all(|w| w[1] < w[0])
}
