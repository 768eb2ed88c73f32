//! Static equilibria of weighted convex polyhedra.
//!
//! `(P, O)` balances on an element when some point `Q` of its relative
//! interior has a supporting plane of `P` perpendicular to `OQ`. Stable
//! equilibria sit on faces, saddles on edges and unstable ones on vertices.
//! All tests are strict; a zero sign that decides the outcome is recorded as
//! a degeneracy and the element is excluded.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::geometry::{int_sign, project_point_to_plane, HPoint, Rat, Sign, Vec3};
use crate::polyhedron::{Polyhedron, WeightedPolyhedron};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "element", content = "id", rename_all = "snake_case")]
pub enum Element {
    Face(usize),
    Edge(usize),
    Vertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degeneracy {
    #[serde(flatten)]
    pub element: Element,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquilibriumReport {
    pub stable_faces: Vec<usize>,
    pub saddle_edges: Vec<usize>,
    pub unstable_vertices: Vec<usize>,
    pub degenerate: Vec<Degeneracy>,
}

impl EquilibriumReport {
    pub fn stable(&self) -> usize {
        self.stable_faces.len()
    }

    pub fn saddles(&self) -> usize {
        self.saddle_edges.len()
    }

    pub fn unstable(&self) -> usize {
        self.unstable_vertices.len()
    }

    /// `false` when some element could not be decided strictly.
    pub fn is_reliable(&self) -> bool {
        self.degenerate.is_empty()
    }

    /// `(S, U)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.stable(), self.unstable())
    }

    pub fn to_json(&self, p: &Polyhedron) -> serde_json::Value {
        let h: Vec<[usize; 2]> = self
            .saddle_edges
            .iter()
            .map(|&e| {
                let (a, b) = p.edge(e).endpoints;
                [a, b]
            })
            .collect();
        json!({
            "S": self.stable_faces,
            "H": h,
            "U": self.unstable_vertices,
            "maxwell": maxwell_check(self),
            "degenerate": self.degenerate,
        })
    }
}

/// `S - H + U = 2`.
pub fn maxwell_check(r: &EquilibriumReport) -> bool {
    r.stable() + r.unstable() == r.saddles() + 2
}

/// Foot of the perpendicular from the center onto the plane of `face`.
pub fn foot_on_face(wp: &WeightedPolyhedron, face: usize) -> Vec3 {
    project_point_to_plane(wp.center(), wp.shape().plane(face))
}

/// For each edge `v_i v_{i+1}` of `face`, the functional
/// `((v_{i+1} - v_i) × (q - v_i)) · n`, positive when `q` lies on the inner
/// side of that edge's line within the face plane.
pub fn edge_functionals(p: &Polyhedron, face: usize, q: &Vec3) -> Vec<Rat> {
    let cyc = p.face(face);
    let n = &p.plane(face).normal;
    (0..cyc.len())
        .map(|i| {
            let a = p.vertex(cyc[i]);
            let b = p.vertex(cyc[(i + 1) % cyc.len()]);
            (b - a).cross(&(q - a)).dot(n)
        })
        .collect()
}

/// Outcome of a strict test on one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
    Tie(&'static str),
}

/// All values positive: Yes; any negative: No; otherwise a tie.
fn all_positive<I: IntoIterator<Item = BigInt>>(values: I, tie: &'static str) -> Verdict {
    let mut zero = false;
    for v in values {
        match int_sign(&v) {
            Sign::Negative => return Verdict::No,
            Sign::Zero => zero = true,
            Sign::Positive => {}
        }
    }
    if zero {
        Verdict::Tie(tie)
    } else {
        Verdict::Yes
    }
}

/// The vertices and center as homogeneous integer points; every test below
/// is multiplied through by positive weights only.
struct Frame<'a> {
    shape: &'a Polyhedron,
    vertices: Vec<HPoint>,
    center: HPoint,
}

impl<'a> Frame<'a> {
    fn new(wp: &'a WeightedPolyhedron) -> Self {
        let p = wp.shape();
        Frame { shape: p, vertices: p.vertices().iter().map(HPoint::new).collect(), center: HPoint::new(wp.center()) }
    }

    /// The foot of the center on a face plane differs from the center by a
    /// multiple of the normal, which drops out of each edge functional
    /// `((b - a) × (o - a)) · n = (a × b + b × o + o × a) · n`.
    fn face(&self, face: usize) -> Verdict {
        let cyc = self.shape.face(face);
        let n = self.shape.plane(face).normal.direction();
        let o = &self.center;
        let k = cyc.len();
        let values = (0..k).map(|i| {
            let a = &self.vertices[cyc[i]];
            let b = &self.vertices[cyc[(i + 1) % k]];
            let sum = &(&a.x.cross(&b.x).scale(&o.w) + &b.x.cross(&o.x).scale(&a.w)) + &o.x.cross(&a.x).scale(&b.w);
            sum.dot(&n)
        });
        all_positive(values, "foot of the center lies on the face boundary")
    }

    fn vertex(&self, v: usize) -> Verdict {
        let a = &self.vertices[v];
        let to_center = self.center.minus(a);
        let values = (0..self.vertices.len()).filter(|&x| x != v).map(|x| self.vertices[x].minus(a).dot(&to_center));
        all_positive(values, "right angle between the center and another vertex")
    }

    /// With `e = b - a`, `s = (o - a)·e` and `l = |e|^2`, the foot of the
    /// center on the edge line is `a + (s/l) e`. Below, `e`, `o - a` and
    /// `x - a` carry the positive factors `αβ`, `αω` and `αξ` from the
    /// weights of `a`, `b`, `o` and `x`, and the products are rescaled to
    /// match.
    fn edge(&self, e: usize) -> Verdict {
        let (ia, ib) = self.shape.edge(e).endpoints;
        let (a, b) = (&self.vertices[ia], &self.vertices[ib]);
        let omega = &self.center.w;
        let dir = b.minus(a);
        let w = self.center.minus(a);
        let s = w.dot(&dir);
        let l = dir.norm_sq();
        let (lhs, rhs) = (&s * &b.w, &l * omega);
        if s.is_zero() || lhs == rhs {
            return Verdict::Tie("foot of the center is an edge endpoint");
        }
        if s.is_negative() || lhs > rhs {
            return Verdict::No;
        }
        let to_center = &w.scale(&l) - &dir.scale(&s);
        let lo = &l * omega;
        let values = (0..self.vertices.len()).filter(|&x| x != ia && x != ib).map(|x| {
            let p = &self.vertices[x];
            (&p.minus(a).scale(&lo) - &dir.scale(&(&s * &p.w))).dot(&to_center)
        });
        all_positive(values, "edge support plane touches another vertex")
    }
}

fn collect(
    n: usize,
    verdict: impl Fn(usize) -> Verdict,
    element: impl Fn(usize) -> Element,
    degenerate: &mut Vec<Degeneracy>,
) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..n {
        match verdict(i) {
            Verdict::Yes => out.push(i),
            Verdict::No => {}
            Verdict::Tie(reason) => degenerate.push(Degeneracy { element: element(i), reason }),
        }
    }
    out
}

/// Faces carrying a stable equilibrium.
pub fn stable_faces(wp: &WeightedPolyhedron) -> Vec<usize> {
    let fr = Frame::new(wp);
    collect(wp.shape().num_faces(), |f| fr.face(f), Element::Face, &mut Vec::new())
}

/// Vertices carrying an unstable equilibrium.
pub fn unstable_vertices(wp: &WeightedPolyhedron) -> Vec<usize> {
    let fr = Frame::new(wp);
    collect(wp.shape().num_vertices(), |v| fr.vertex(v), Element::Vertex, &mut Vec::new())
}

/// Edge ids carrying a saddle equilibrium.
pub fn saddle_edges(wp: &WeightedPolyhedron) -> Vec<usize> {
    let fr = Frame::new(wp);
    collect(wp.shape().edges().len(), |e| fr.edge(e), Element::Edge, &mut Vec::new())
}

pub fn classify(wp: &WeightedPolyhedron) -> EquilibriumReport {
    let p = wp.shape();
    let fr = Frame::new(wp);
    let mut degenerate = Vec::new();
    let stable_faces = collect(p.num_faces(), |f| fr.face(f), Element::Face, &mut degenerate);
    let saddle_edges = collect(p.edges().len(), |e| fr.edge(e), Element::Edge, &mut degenerate);
    let unstable_vertices = collect(p.num_vertices(), |v| fr.vertex(v), Element::Vertex, &mut degenerate);
    EquilibriumReport { stable_faces, saddle_edges, unstable_vertices, degenerate }
}
