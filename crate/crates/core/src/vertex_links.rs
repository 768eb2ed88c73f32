//! Vertex links: the spherical triangle cut from a small sphere around a
//! polyhedral vertex.
//!
//! On the link of vertex `A` with rays towards `B`, `C`, `D`, the arc between
//! two rays measures the face angle between them and the spherical angle at
//! a ray measures the dihedral along that edge. Rays are kept as unnormalized
//! direction vectors; only signs of dot products are ever inspected.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{int_sign, AngleClass, Sign, Vec3};
use crate::polyhedron::Polyhedron;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("vertices {u} and {w} are not both adjacent to {apex} on a common face")]
    NotIncident { apex: usize, u: usize, w: usize },
    #[error("vertex signatures are only defined for tetrahedra")]
    NotATetrahedron,
    #[error("directions are not pairwise independent")]
    DegenerateDirections,
}

/// Classification of a spherical arc by the sign of the cosine of its length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArcClass {
    Short,
    Quarter,
    Long,
}

impl ArcClass {
    fn from_cosine_sign(s: Sign) -> ArcClass {
        match s {
            Sign::Positive => ArcClass::Short,
            Sign::Zero => ArcClass::Quarter,
            Sign::Negative => ArcClass::Long,
        }
    }
}

/// `[m, n]`: obtuse face angles and obtuse dihedrals at a tetrahedron vertex.
/// Right angles are excluded from both counts and reported separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexSignature {
    pub m: u8,
    pub n: u8,
    pub right_face_angles: u8,
    pub right_dihedrals: u8,
}

impl VertexSignature {
    pub fn pair(&self) -> (u8, u8) {
        (self.m, self.n)
    }

    pub fn has_right_angles(&self) -> bool {
        self.right_face_angles > 0 || self.right_dihedrals > 0
    }
}

/// Edge classes opposite each corner and angle classes at each corner of a
/// spherical triangle with corners `a`, `b`, `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SphericalTriangleClass {
    /// `edges[i]` is the arc opposite corner `i`.
    pub edges: [ArcClass; 3],
    pub angles: [AngleClass; 3],
}

impl SphericalTriangleClass {
    pub fn long_edges(&self) -> usize {
        self.edges.iter().filter(|&&e| e == ArcClass::Long).count()
    }

    pub fn short_edges(&self) -> usize {
        self.edges.iter().filter(|&&e| e == ArcClass::Short).count()
    }

    pub fn obtuse_angles(&self) -> usize {
        self.angles.iter().filter(|&&a| a == AngleClass::Obtuse).count()
    }

    pub fn acute_angles(&self) -> usize {
        self.angles.iter().filter(|&&a| a == AngleClass::Acute).count()
    }

    pub fn is_generic(&self) -> bool {
        !self.edges.contains(&ArcClass::Quarter) && !self.angles.contains(&AngleClass::Right)
    }
}

/// Face angle at `apex` between the edges towards `u` and `w`, which must be
/// the two neighbors of `apex` on some face.
pub fn face_angle_sign(p: &Polyhedron, apex: usize, u: usize, w: usize) -> Result<AngleClass, LinkError> {
    let incident = p.faces_at_vertex(apex).into_iter().any(|f| {
        p.face_neighbors(f, apex).is_some_and(|(a, b)| (a == u && b == w) || (a == w && b == u))
    });
    if !incident {
        return Err(LinkError::NotIncident { apex, u, w });
    }
    let a = p.vertex(apex);
    let d = (p.vertex(u) - a).dot(&(p.vertex(w) - a));
    Ok(AngleClass::from_cosine_sign(Sign::of(&d)))
}

/// Interior dihedral angle along an edge: the outward normals of the two
/// faces meet at the supplement, so a positive normal dot is obtuse.
pub fn dihedral_sign(p: &Polyhedron, edge: usize) -> AngleClass {
    let (f, g) = p.edge(edge).faces;
    let d = p.plane(f).normal.direction().dot(&p.plane(g).normal.direction());
    AngleClass::from_cosine_sign(match int_sign(&d) {
        Sign::Positive => Sign::Negative,
        Sign::Zero => Sign::Zero,
        Sign::Negative => Sign::Positive,
    })
}

/// Dihedral along the edge joining vertices `a` and `b`, if there is one.
pub fn dihedral_between(p: &Polyhedron, a: usize, b: usize) -> Option<AngleClass> {
    p.edge_between(a, b).map(|e| dihedral_sign(p, e))
}

pub fn vertex_signature(p: &Polyhedron, v: usize) -> Result<VertexSignature, LinkError> {
    if !p.is_tetrahedron() {
        return Err(LinkError::NotATetrahedron);
    }
    let others: Vec<usize> = (0..4).filter(|&x| x != v).collect();
    let mut sig = VertexSignature { m: 0, n: 0, right_face_angles: 0, right_dihedrals: 0 };
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        match face_angle_sign(p, v, others[i], others[j])? {
            AngleClass::Obtuse => sig.m += 1,
            AngleClass::Right => sig.right_face_angles += 1,
            AngleClass::Acute => {}
        }
    }
    for &o in &others {
        match dihedral_between(p, v, o).expect("tetrahedron vertices are pairwise adjacent") {
            AngleClass::Obtuse => sig.n += 1,
            AngleClass::Right => sig.right_dihedrals += 1,
            AngleClass::Acute => {}
        }
    }
    Ok(sig)
}

/// Pairs `[m, n]` that can occur at a tetrahedron vertex (equivalently: long
/// edges and obtuse angles of a spherical triangle).
pub const ADMISSIBLE_SIGNATURES: [(u8, u8); 7] = [(0, 0), (0, 1), (1, 1), (2, 1), (2, 2), (2, 3), (3, 3)];

pub fn admissible_signature(s: &VertexSignature) -> bool {
    admissible_pair(s.m, s.n)
}

pub fn admissible_pair(m: u8, n: u8) -> bool {
    ADMISSIBLE_SIGNATURES.contains(&(m, n))
}

/// Classifies the spherical triangle spanned by three directions from a
/// common apex, without any trigonometry.
///
/// Arc `bc` is short, a quarter or long as `b · c` is positive, zero or
/// negative. The angle at corner `a` has the sign of
/// `(a·a)(b·c) − (a·b)(a·c) = (a × b) · (a × c)`, the numerator of the
/// spherical cosine rule.
pub fn classify_spherical_triangle(a: &Vec3, b: &Vec3, c: &Vec3) -> Result<SphericalTriangleClass, LinkError> {
    // Every test below is homogeneous in each corner, so integer multiples
    // of the directions give the same signs.
    let corners = [a.direction(), b.direction(), c.direction()];
    let [x, y, z] = &corners;
    if x.cross(y).is_zero() || y.cross(z).is_zero() || x.cross(z).is_zero() {
        return Err(LinkError::DegenerateDirections);
    }
    let arc = |i: usize, j: usize| ArcClass::from_cosine_sign(int_sign(&corners[i].dot(&corners[j])));
    let angle = |i: usize, j: usize, k: usize| -> AngleClass {
        let (x, y, z) = (&corners[i], &corners[j], &corners[k]);
        let num = x.norm_sq() * y.dot(z) - x.dot(y) * x.dot(z);
        AngleClass::from_cosine_sign(int_sign(&num))
    };
    Ok(SphericalTriangleClass {
        edges: [arc(1, 2), arc(0, 2), arc(0, 1)],
        angles: [angle(0, 1, 2), angle(1, 0, 2), angle(2, 0, 1)],
    })
}

/// Link of tetrahedron vertex `v`: the spherical triangle of its three edge
/// directions, corners ordered by vertex index.
pub fn vertex_link(p: &Polyhedron, v: usize) -> Result<SphericalTriangleClass, LinkError> {
    if !p.is_tetrahedron() {
        return Err(LinkError::NotATetrahedron);
    }
    let apex = p.vertex(v);
    let dirs: Vec<Vec3> = (0..4).filter(|&x| x != v).map(|x| p.vertex(x) - apex).collect();
    classify_spherical_triangle(&dirs[0], &dirs[1], &dirs[2])
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

    fn case_one() -> Polyhedron {
        tet([(-10, 0, 0), (0, 2, 0), (1, 0, 1), (0, -2, 0)])
    }

    fn case_three() -> Polyhedron {
        tet([(-10, 0, 0), (2, 0, 0), (3, 2, 0), (0, 4, 1)])
    }

    #[test]
    fn regular_tetrahedron_is_all_acute() {
        let p = regular();
        for e in 0..6 {
            assert_eq!(dihedral_sign(&p, e), AngleClass::Acute);
        }
        for apex in 0..4 {
            let o: Vec<usize> = (0..4).filter(|&x| x != apex).collect();
            assert_eq!(face_angle_sign(&p, apex, o[0], o[1]), Ok(AngleClass::Acute));
            let s = vertex_signature(&p, apex).unwrap();
            assert_eq!(s.pair(), (0, 0));
        }
    }

    #[test]
    fn face_angle_examples() {
        assert_eq!(face_angle_sign(&case_one(), 1, 0, 2), Ok(AngleClass::Obtuse));
        let corner = tet([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]);
        assert_eq!(face_angle_sign(&corner, 0, 1, 2), Ok(AngleClass::Right));
        let s = vertex_signature(&corner, 0).unwrap();
        assert_eq!(s.right_face_angles, 3);
        assert_eq!(s.right_dihedrals, 3);
        assert_eq!(s.pair(), (0, 0));
    }

    #[test]
    fn not_incident_on_a_cube() {
        let verts: Vec<Vec3> = (0..8).map(|i| v(i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect();
        let faces = vec![
            vec![0, 2, 3, 1],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 6, 7, 3],
            vec![0, 4, 6, 2],
            vec![1, 3, 7, 5],
        ];
        let cube = Polyhedron::new(verts, faces).unwrap();
        // 0 and 3 are on a common face with apex 1 but 3 is not adjacent to 0
        assert_eq!(face_angle_sign(&cube, 0, 3, 1), Err(LinkError::NotIncident { apex: 0, u: 3, w: 1 }));
        assert_eq!(face_angle_sign(&cube, 0, 1, 2), Ok(AngleClass::Right));
        assert_eq!(vertex_signature(&cube, 0), Err(LinkError::NotATetrahedron));
    }

    #[test]
    fn paper_case_signatures() {
        let sigs: Vec<(u8, u8)> = (0..4).map(|i| vertex_signature(&case_one(), i).unwrap().pair()).collect();
        assert_eq!(sigs[0], (0, 1));
        let mut rest = sigs[1..].to_vec();
        rest.sort();
        assert_eq!(rest, vec![(1, 1), (1, 1), (1, 1)]);
        let sig_d = vertex_signature(&case_three(), 3).unwrap();
        assert_eq!(sig_d.pair(), (2, 1));
        assert_eq!(vertex_signature(&case_three(), 0).unwrap().pair(), (0, 1));
    }

    #[test]
    fn admissible_table() {
        let s = |m, n| VertexSignature { m, n, right_face_angles: 0, right_dihedrals: 0 };
        assert!(admissible_signature(&s(0, 0)));
        assert!(!admissible_signature(&s(1, 0)));
        assert!(admissible_signature(&s(3, 3)));
        assert!(!admissible_signature(&s(3, 2)));
        assert!(!admissible_signature(&s(0, 2)));
    }

    #[test]
    fn spherical_triangle_examples() {
        let c = classify_spherical_triangle(&v(1, 0, 0), &v(0, 1, 0), &v(0, 0, 1)).unwrap();
        assert_eq!(c.edges, [ArcClass::Quarter; 3]);
        assert_eq!(c.angles, [AngleClass::Right; 3]);

        // A narrow cone around (1,1,1): short arcs, acute angles.
        let c = classify_spherical_triangle(&v(10, 1, 1), &v(1, 10, 1), &v(1, 1, 10)).unwrap();
        assert_eq!(c.edges, [ArcClass::Short; 3]);
        assert_eq!(c.angles, [AngleClass::Acute; 3]);

        assert_eq!(
            classify_spherical_triangle(&v(1, 0, 0), &v(2, 0, 0), &v(0, 0, 1)),
            Err(LinkError::DegenerateDirections)
        );
    }

    #[test]
    fn link_agrees_with_face_and_dihedral_route() {
        for p in [regular(), case_one(), case_three()] {
            for vtx in 0..4 {
                let link = vertex_link(&p, vtx).unwrap();
                let sig = vertex_signature(&p, vtx).unwrap();
                assert_eq!(link.long_edges(), sig.m as usize);
                assert_eq!(link.obtuse_angles(), sig.n as usize);
            }
        }
    }
}
