//! Convex polyhedra, weighted polyhedra and their derived combinatorics.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{denominator_lcm, int_sign, orient3d, GeometryError, HPoint, IVec3, Plane, Sign, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid polyhedron: {0}")]
    Invalid(ValidationReport),
    #[error("the four points are coplanar")]
    DegenerateTetrahedron,
    #[error("center is not strictly interior (face {face})")]
    CenterNotInterior { face: usize },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One reason a vertex/face description fails to be a convex polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewVertices { count: usize },
    TooFewFaces { count: usize },
    IndexOutOfRange { face: usize, index: usize },
    FaceTooSmall { face: usize },
    RepeatedVertex { face: usize, vertex: usize },
    DegenerateFace { face: usize },
    NonPlanarFace { face: usize, vertex: usize },
    NonConvexFace { face: usize, vertex: usize },
    EdgeNotManifold { edge: (usize, usize), faces: usize },
    InconsistentOrientation { edge: (usize, usize) },
    InwardFace { face: usize },
    NonConvex { face: usize, vertex: usize },
    VertexOnFacePlane { face: usize, vertex: usize },
    UnusedVertex { vertex: usize },
    EulerViolated { f: usize, e: usize, v: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{v:?}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// An edge with its endpoints in ascending order. `faces.0` traverses the
/// edge from `endpoints.0` to `endpoints.1`, `faces.1` the other way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub endpoints: (usize, usize),
    pub faces: (usize, usize),
}

impl Edge {
    pub fn has_vertex(&self, v: usize) -> bool {
        self.endpoints.0 == v || self.endpoints.1 == v
    }

    pub fn other_face(&self, f: usize) -> Option<usize> {
        if self.faces.0 == f {
            Some(self.faces.1)
        } else if self.faces.1 == f {
            Some(self.faces.0)
        } else {
            None
        }
    }
}

/// Direction of the Newell normal of a polygon (its vector area), as a
/// primitive integer vector pointing to the side from which the cycle
/// appears counterclockwise.
pub fn newell_normal(points: &[&Vec3]) -> Vec3 {
    let l = denominator_lcm(points.iter().copied());
    let ints: Vec<IVec3> = points.iter().map(|p| p.to_ivec(&l)).collect();
    let mut n = IVec3([BigInt::zero(), BigInt::zero(), BigInt::zero()]);
    for i in 0..ints.len() {
        n = &n + &ints[i].cross(&ints[(i + 1) % ints.len()]);
    }
    n.primitive().to_vec3()
}

fn face_plane(vertices: &[Vec3], face: &[usize]) -> Option<Plane> {
    let pts: Vec<&Vec3> = face.iter().map(|&i| &vertices[i]).collect();
    let n = newell_normal(&pts);
    Plane::through(pts[0], n).ok()
}

/// A plane `normal · x = offset` scaled to integer coefficients.
struct IntPlane {
    normal: IVec3,
    offset: BigInt,
}

impl IntPlane {
    fn new(p: &Plane) -> Self {
        let l = denominator_lcm([&p.normal]).lcm(p.offset.denom());
        IntPlane { normal: p.normal.to_ivec(&l), offset: p.offset.numer() * (&l / p.offset.denom()) }
    }

    fn side(&self, p: &HPoint) -> Sign {
        int_sign(&(self.normal.dot(&p.x) - &self.offset * &p.w))
    }
}

/// Checks every convex-polyhedron invariant on raw data without repairing
/// anything. Faces must be counterclockwise as seen from outside.
pub fn validate(vertices: &[Vec3], faces: &[Vec<usize>]) -> ValidationReport {
    let mut out = Vec::new();
    if vertices.len() < 4 {
        out.push(Violation::TooFewVertices { count: vertices.len() });
    }
    if faces.len() < 4 {
        out.push(Violation::TooFewFaces { count: faces.len() });
    }
    // Per-face structural checks; stop before geometry if indices are bad.
    for (fi, face) in faces.iter().enumerate() {
        if face.len() < 3 {
            out.push(Violation::FaceTooSmall { face: fi });
        }
        for &i in face {
            if i >= vertices.len() {
                out.push(Violation::IndexOutOfRange { face: fi, index: i });
            }
        }
        let mut seen = face.clone();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::RepeatedVertex { face: fi, vertex: w[0] });
            }
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    let homogeneous: Vec<HPoint> = vertices.iter().map(HPoint::new).collect();
    let mut planes = Vec::with_capacity(faces.len());
    for (fi, face) in faces.iter().enumerate() {
        let Some(plane) = face_plane(vertices, face) else {
            out.push(Violation::DegenerateFace { face: fi });
            planes.push(None);
            continue;
        };
        let plane = IntPlane::new(&plane);
        for &i in face {
            if plane.side(&homogeneous[i]) != Sign::Zero {
                out.push(Violation::NonPlanarFace { face: fi, vertex: i });
            }
        }
        // Strictly convex polygon, counterclockwise about the normal; the
        // test is invariant under a common positive scale.
        let l = denominator_lcm(face.iter().map(|&i| &vertices[i]));
        let pts: Vec<IVec3> = face.iter().map(|&i| vertices[i].to_ivec(&l)).collect();
        let k = face.len();
        for j in 0..k {
            let (a, b, c) = (&pts[j], &pts[(j + 1) % k], &pts[(j + 2) % k]);
            let turn = (b - a).cross(&(c - b)).dot(&plane.normal);
            if !turn.is_positive() {
                out.push(Violation::NonConvexFace { face: fi, vertex: face[(j + 1) % k] });
            }
        }
        planes.push(Some(plane));
    }

    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for face in faces {
        for j in 0..face.len() {
            *directed.entry((face[j], face[(j + 1) % face.len()])).or_default() += 1;
        }
    }
    let mut undirected: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (&(a, b), &n) in &directed {
        let key = (a.min(b), a.max(b));
        let entry = undirected.entry(key).or_default();
        if a < b {
            entry.0 += n;
        } else {
            entry.1 += n;
        }
    }
    for (&edge, &(fwd, bwd)) in &undirected {
        if fwd + bwd != 2 {
            out.push(Violation::EdgeNotManifold { edge, faces: fwd + bwd });
        } else if fwd != 1 {
            out.push(Violation::InconsistentOrientation { edge });
        }
    }

    for (fi, plane) in planes.iter().enumerate() {
        let Some(plane) = plane else { continue };
        let face = &faces[fi];
        let mut above = Vec::new();
        let mut below = 0usize;
        for (vi, x) in homogeneous.iter().enumerate() {
            if face.contains(&vi) {
                continue;
            }
            match plane.side(x) {
                Sign::Positive => above.push(vi),
                Sign::Negative => below += 1,
                Sign::Zero => out.push(Violation::VertexOnFacePlane { face: fi, vertex: vi }),
            }
        }
        if !above.is_empty() {
            if below == 0 {
                out.push(Violation::InwardFace { face: fi });
            } else {
                for vi in above {
                    out.push(Violation::NonConvex { face: fi, vertex: vi });
                }
            }
        }
    }

    let mut used = vec![false; vertices.len()];
    for face in faces {
        for &i in face {
            used[i] = true;
        }
    }
    for (vi, u) in used.iter().enumerate() {
        if !u {
            out.push(Violation::UnusedVertex { vertex: vi });
        }
    }

    let (f, e, v) = (faces.len(), undirected.len(), vertices.len());
    if f + v != e + 2 {
        out.push(Violation::EulerViolated { f, e, v });
    }
    ValidationReport { violations: out }
}

/// Counts of faces, edges and vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct FaceVector {
    pub f: usize,
    pub e: usize,
    pub v: usize,
}

impl FaceVector {
    pub fn new(f: usize, e: usize, v: usize) -> Self {
        FaceVector { f, e, v }
    }

    /// Face vector of some polyhedron with `f` faces and `v` vertices.
    pub fn from_faces_vertices(f: usize, v: usize) -> Self {
        FaceVector { f, e: (f + v).saturating_sub(2), v }
    }

    /// Realizable by a 3-polytope: `e = f + v - 2`, `f >= v/2 + 2`, `v >= f/2 + 2`.
    pub fn is_legal(&self) -> bool {
        self.f + self.v == self.e + 2 && 2 * self.f >= self.v + 4 && 2 * self.v >= self.f + 4
    }

    /// The face vector of the polar dual.
    pub fn dual(&self) -> Self {
        FaceVector { f: self.v, e: self.e, v: self.f }
    }
}

impl fmt::Display for FaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.f, self.e, self.v)
    }
}

pub fn is_legal(fv: FaceVector) -> bool {
    fv.is_legal()
}

/// A validated convex polyhedron with outward-oriented faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    vertices: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
    planes: Vec<Plane>,
    edges: Vec<Edge>,
    reoriented: Vec<usize>,
}

impl Polyhedron {
    /// Builds a polyhedron, first flipping any face whose cycle is clockwise
    /// from outside. Flipped faces are recorded in [`Polyhedron::reoriented`].
    pub fn new(vertices: Vec<Vec3>, mut faces: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let mut reoriented = Vec::new();
        let indices_ok = faces.iter().all(|f| f.len() >= 3 && f.iter().all(|&i| i < vertices.len()));
        if indices_ok {
            for (fi, face) in faces.iter_mut().enumerate() {
                let Some(plane) = face_plane(&vertices, face) else { continue };
                let mut pos = 0;
                let mut neg = 0;
                for (vi, x) in vertices.iter().enumerate() {
                    if face.contains(&vi) {
                        continue;
                    }
                    match plane.side(x) {
                        Sign::Positive => pos += 1,
                        Sign::Negative => neg += 1,
                        Sign::Zero => {}
                    }
                }
                if pos > 0 && neg == 0 {
                    face.reverse();
                    reoriented.push(fi);
                }
            }
        }
        let mut p = Polyhedron::new_oriented(vertices, faces)?;
        p.reoriented = reoriented;
        Ok(p)
    }

    /// Builds a polyhedron from faces that are already outward-oriented.
    pub fn new_oriented(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let report = validate(&vertices, &faces);
        if !report.is_valid() {
            return Err(ModelError::Invalid(report));
        }
        let planes = faces
            .iter()
            .map(|f| face_plane(&vertices, f).expect("validated face has a plane"))
            .collect();
        let mut by_key: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (fi, face) in faces.iter().enumerate() {
            for j in 0..face.len() {
                let (a, b) = (face[j], face[(j + 1) % face.len()]);
                let entry = by_key.entry((a.min(b), a.max(b))).or_insert((usize::MAX, usize::MAX));
                if a < b {
                    entry.0 = fi;
                } else {
                    entry.1 = fi;
                }
            }
        }
        let edges = by_key.into_iter().map(|(endpoints, faces)| Edge { endpoints, faces }).collect();
        Ok(Polyhedron { vertices, faces, planes, edges, reoriented: Vec::new() })
    }

    /// The tetrahedron `abcd`; face `i` is the triangle opposite vertex `i`.
    pub fn tetrahedron(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> Result<Self, ModelError> {
        let vol = orient3d(&a, &b, &c, &d);
        let vertices = vec![a, b, c, d];
        let sign = Sign::of(&vol);
        if sign == Sign::Zero {
            return Err(ModelError::DegenerateTetrahedron);
        }
        let faces = (0..4)
            .map(|i| {
                let mut f: Vec<usize> = (0..4).filter(|&j| j != i).collect();
                // (f0,f1,f2) is counterclockwise from outside iff the
                // opposite vertex is on the negative side.
                let s = Sign::of(&orient3d(&vertices[f[0]], &vertices[f[1]], &vertices[f[2]], &vertices[i]));
                if s == Sign::Positive {
                    f.swap(1, 2);
                }
                f
            })
            .collect();
        Polyhedron::new_oriented(vertices, faces)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vec3 {
        &self.vertices[i]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    /// Outward supporting plane of face `i`.
    pub fn plane(&self, i: usize) -> &Plane {
        &self.planes[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search_by(|e| e.endpoints.cmp(&key)).ok()
    }

    /// Faces whose cycle was reversed during construction.
    pub fn reoriented(&self) -> &[usize] {
        &self.reoriented
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_tetrahedron(&self) -> bool {
        self.vertices.len() == 4 && self.faces.len() == 4
    }

    pub fn face_vector(&self) -> FaceVector {
        FaceVector::new(self.faces.len(), self.edges.len(), self.vertices.len())
    }

    pub fn faces_at_vertex(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].contains(&v)).collect()
    }

    /// Vertices joined to `v` by an edge, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.has_vertex(v))
            .map(|e| if e.endpoints.0 == v { e.endpoints.1 } else { e.endpoints.0 })
            .collect();
        out.sort_unstable();
        out
    }

    /// Predecessor and successor of `v` in the cycle of `face`.
    pub fn face_neighbors(&self, face: usize, v: usize) -> Option<(usize, usize)> {
        let cyc = &self.faces[face];
        let k = cyc.len();
        let j = cyc.iter().position(|&x| x == v)?;
        Some((cyc[(j + k - 1) % k], cyc[(j + 1) % k]))
    }

    /// The same polyhedron moved by `by`.
    pub fn translated(&self, by: &Vec3) -> Polyhedron {
        let vertices = self.vertices.iter().map(|v| v + by).collect();
        let planes = self
            .planes
            .iter()
            .map(|p| Plane { normal: p.normal.clone(), offset: &p.offset + p.normal.dot(by) })
            .collect();
        Polyhedron {
            vertices,
            faces: self.faces.clone(),
            planes,
            edges: self.edges.clone(),
            reoriented: self.reoriented.clone(),
        }
    }

    /// `true` iff `x` is strictly inside every face's supporting halfspace.
    pub fn contains_strictly(&self, x: &Vec3) -> bool {
        self.first_non_interior_face(x).is_none()
    }

    fn first_non_interior_face(&self, x: &Vec3) -> Option<usize> {
        self.planes.iter().position(|p| p.side(x) != Sign::Negative)
    }
}

/// A convex polyhedron together with a strictly interior center of mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPolyhedron {
    shape: Polyhedron,
    center: Vec3,
}

impl WeightedPolyhedron {
    pub fn new(shape: Polyhedron, center: Vec3) -> Result<Self, ModelError> {
        if let Some(face) = shape.first_non_interior_face(&center) {
            return Err(ModelError::CenterNotInterior { face });
        }
        Ok(WeightedPolyhedron { shape, center })
    }

    pub fn shape(&self) -> &Polyhedron {
        &self.shape
    }

    pub fn center(&self) -> &Vec3 {
        &self.center
    }

    /// Same body with a different center of mass.
    pub fn with_center(&self, center: Vec3) -> Result<Self, ModelError> {
        WeightedPolyhedron::new(self.shape.clone(), center)
    }

    pub fn into_parts(self) -> (Polyhedron, Vec3) {
        (self.shape, self.center)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::from_ints(x, y, z)
    }

    fn regular() -> Polyhedron {
        Polyhedron::tetrahedron(v(1, 1, 1), v(1, -1, -1), v(-1, 1, -1), v(-1, -1, 1)).unwrap()
    }

    fn cube_faces() -> Vec<Vec<usize>> {
        // vertex i = (i&1, i>>1&1, i>>2&1)
        vec![
            vec![0, 2, 3, 1],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 6, 7, 3],
            vec![0, 4, 6, 2],
            vec![1, 3, 7, 5],
        ]
    }

    fn cube_vertices() -> Vec<Vec3> {
        (0..8).map(|i| v(i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect()
    }

    #[test]
    fn regular_tetrahedron_is_valid() {
        let p = regular();
        assert!(validate(p.vertices(), p.faces()).is_valid());
        assert_eq!(p.face_vector(), FaceVector::new(4, 6, 4));
        assert_eq!(p.edges().len(), 6);
    }

    #[test]
    fn reversed_face_is_reported_and_repaired() {
        let p = regular();
        let mut faces = p.faces().to_vec();
        faces[2].reverse();
        let report = validate(p.vertices(), &faces);
        assert!(report.violations.iter().any(|v| matches!(v, Violation::InconsistentOrientation { .. })));
        assert!(report.violations.contains(&Violation::InwardFace { face: 2 }));
        let repaired = Polyhedron::new(p.vertices().to_vec(), faces).unwrap();
        assert_eq!(repaired.reoriented(), &[2]);
    }

    #[test]
    fn tetrahedron_naming_and_degeneracy() {
        let t = Polyhedron::tetrahedron(v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)).unwrap();
        for i in 0..4 {
            assert!(!t.face(i).contains(&i));
        }
        assert_eq!(
            Polyhedron::tetrahedron(v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(1, 1, 0)),
            Err(ModelError::DegenerateTetrahedron)
        );
    }

    #[test]
    fn cube_is_valid_and_counts() {
        let c = Polyhedron::new(cube_vertices(), cube_faces()).unwrap();
        assert!(c.reoriented().is_empty());
        assert_eq!(c.face_vector(), FaceVector::new(6, 12, 8));
        assert!(c.face_vector().is_legal());
        assert_eq!(c.neighbors(0), vec![1, 2, 4]);
        assert_eq!(c.faces_at_vertex(7).len(), 3);
    }

    #[test]
    fn nonplanar_and_nonconvex_are_reported() {
        let mut verts = cube_vertices();
        verts[7] = v(2, 2, 2);
        let report = validate(&verts, &cube_faces());
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NonPlanarFace { .. })));
        assert!(Polyhedron::new(verts, cube_faces()).is_err());

        let mut dented = cube_vertices();
        dented.push(v(1, 1, 1));
        let report = validate(&dented, &cube_faces());
        assert!(report.violations.contains(&Violation::UnusedVertex { vertex: 8 }));
    }

    #[test]
    fn malformed_input_never_panics() {
        let report = validate(&cube_vertices(), &[vec![0, 1], vec![0, 9, 2], vec![1, 1, 2]]);
        assert!(report.violations.contains(&Violation::TooFewFaces { count: 3 }));
        assert!(report.violations.contains(&Violation::FaceTooSmall { face: 0 }));
        assert!(report.violations.contains(&Violation::IndexOutOfRange { face: 1, index: 9 }));
        assert!(report.violations.contains(&Violation::RepeatedVertex { face: 2, vertex: 1 }));
        assert!(Polyhedron::new(cube_vertices(), vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn face_vector_legality() {
        assert!(FaceVector::new(4, 6, 4).is_legal());
        assert!(FaceVector::new(5, 8, 5).is_legal());
        assert!(!FaceVector::new(7, 10, 5).is_legal());
        assert!(!FaceVector::new(5, 9, 5).is_legal());
        assert_eq!(FaceVector::new(8, 12, 6).dual(), FaceVector::new(6, 12, 8));
    }

    #[test]
    fn center_interiority_is_strict() {
        let t = regular();
        assert!(WeightedPolyhedron::new(t.clone(), Vec3::zero()).is_ok());
        // centroid of face 0 lies on that face
        let on_face = Vec3::centroid(t.face(0).iter().map(|&i| t.vertex(i)));
        assert!(matches!(WeightedPolyhedron::new(t.clone(), on_face), Err(ModelError::CenterNotInterior { .. })));
        assert!(WeightedPolyhedron::new(t, v(5, 5, 5)).is_err());
    }

    #[test]
    fn translation_keeps_planes_consistent() {
        let t = regular();
        let by = v(3, -7, 11);
        let moved = t.translated(&by);
        for f in 0..4 {
            for &i in moved.face(f) {
                assert_eq!(moved.plane(f).side(moved.vertex(i)), Sign::Zero);
            }
        }
    }
}
