//! Worked examples with known answers, one test per operation.

use weighted_polyhedra::duality::{check_prop_polar, polar_dual};
use weighted_polyhedra::equilibria::{classify, maxwell_check};
use weighted_polyhedra::fixtures;
use weighted_polyhedra::generator::{
    bend_face, generate_mono_monostatic, select_bend_vertex, verify_mono_monostatic, GeneratorError,
};
use weighted_polyhedra::geometry::{
    angle_sign, frac, intersect_line_plane, project_point_to_line, project_point_to_plane, AngleClass, GeometryError,
    Plane, Vec3,
};
use weighted_polyhedra::monostatic::{
    check_exclusivity, find_obtuse_cycles, find_obtuse_paths, loading_region, monounstable_weighting, Exclusivity,
    MonostaticError, ObtuseCycle,
};
use weighted_polyhedra::polyhedron::{validate, FaceVector, ModelError, Polyhedron, Violation, WeightedPolyhedron};
use weighted_polyhedra::tipping::{exit_edge, tip_path, Exit};
use weighted_polyhedra::vertex_links::{
    admissible_pair, classify_spherical_triangle, dihedral_between, dihedral_sign, face_angle_sign, vertex_signature,
    ArcClass,
};

fn v(x: i64, y: i64, z: i64) -> Vec3 {
    Vec3::from_ints(x, y, z)
}

fn regular() -> WeightedPolyhedron {
    fixtures::regular_tetrahedron().weighted().unwrap()
}

#[test]
fn angles_between_rays() {
    let o = v(0, 0, 0);
    assert_eq!(angle_sign(&o, &v(1, 0, 0), &v(0, 1, 0)), Ok(AngleClass::Right));
    assert_eq!(angle_sign(&o, &v(1, 0, 0), &v(1, 1, 0)), Ok(AngleClass::Acute));
    assert_eq!(angle_sign(&o, &v(1, 0, 0), &v(-1, 1, 0)), Ok(AngleClass::Obtuse));
}

#[test]
fn line_plane_intersections() {
    let z1 = Plane::new(v(0, 0, 1), frac(1, 1)).unwrap();
    assert_eq!(intersect_line_plane(&v(0, 0, 0), &v(0, 0, 2), &z1), Ok((v(0, 0, 1), frac(1, 2))));
    assert_eq!(intersect_line_plane(&v(0, 0, 1), &v(1, 0, 1), &z1), Err(GeometryError::ParallelLine));
}

#[test]
fn projections() {
    let z0 = Plane::new(v(0, 0, 1), frac(0, 1)).unwrap();
    assert_eq!(project_point_to_plane(&v(3, 4, 5), &z0), v(3, 4, 0));
    assert_eq!(project_point_to_line(&v(1, 1, 0), &v(0, 0, 0), &v(2, 0, 0)), Ok((v(1, 0, 0), frac(1, 2))));
}

#[test]
fn validation_examples() {
    let t = regular();
    assert!(validate(t.shape().vertices(), t.shape().faces()).is_valid());
    let mut faces = t.shape().faces().to_vec();
    faces[0].reverse();
    let r = validate(t.shape().vertices(), &faces);
    assert!(r.violations.iter().any(|x| matches!(x, Violation::InconsistentOrientation { .. })));
    let corner = Polyhedron::tetrahedron(v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)).unwrap();
    assert_eq!(corner.face_vector(), FaceVector::new(4, 6, 4));
    assert_eq!(
        Polyhedron::tetrahedron(v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(1, 1, 0)).unwrap_err(),
        ModelError::DegenerateTetrahedron
    );
}

#[test]
fn face_vector_legality() {
    assert!(FaceVector::new(4, 6, 4).is_legal());
    assert!(FaceVector::new(5, 8, 5).is_legal());
    assert!(!FaceVector::new(7, 10, 5).is_legal());
}

#[test]
fn center_on_a_face_is_rejected() {
    let shape = regular().shape().clone();
    let on_face = Vec3::centroid([shape.vertex(0), shape.vertex(1), shape.vertex(2)]);
    assert!(matches!(WeightedPolyhedron::new(shape, on_face), Err(ModelError::CenterNotInterior { .. })));
}

#[test]
fn regular_tetrahedron_equilibria() {
    let r = classify(&regular());
    assert_eq!((r.stable(), r.saddles(), r.unstable()), (4, 6, 4));
    assert!(maxwell_check(&r));
}

#[test]
fn nine_centers_extremes() {
    let f = fixtures::nine_centers();
    let r22 = classify(&f.with_named_center("M22").unwrap().unwrap());
    assert_eq!(r22.signature(), (2, 2));
    let r44 = classify(&f.with_named_center("M44").unwrap().unwrap());
    assert_eq!(r44.signature(), (4, 4));
    assert!(find_obtuse_paths(&f.shape).unwrap().is_empty());
}

#[test]
fn seed_polyhedron() {
    let wp = fixtures::seed585().weighted().unwrap();
    let r = classify(&wp);
    assert_eq!((r.stable(), r.saddles(), r.unstable()), (1, 0, 1));
    assert_eq!(wp.shape().face_vector(), FaceVector::new(5, 8, 5));
    assert!(verify_mono_monostatic(&wp));
}

#[test]
fn face_angles_and_dihedrals() {
    let case_one = fixtures::cycle_case_i().shape;
    assert_eq!(face_angle_sign(&case_one, 1, 0, 2), Ok(AngleClass::Obtuse));
    let corner = Polyhedron::tetrahedron(v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)).unwrap();
    assert_eq!(face_angle_sign(&corner, 0, 1, 2), Ok(AngleClass::Right));
    let reg = regular();
    for e in 0..6 {
        assert_eq!(dihedral_sign(reg.shape(), e), AngleClass::Acute);
    }
}

#[test]
fn vertex_signatures() {
    for x in 0..4 {
        assert_eq!(vertex_signature(regular().shape(), x).unwrap().pair(), (0, 0));
    }
    assert_eq!(vertex_signature(&fixtures::cycle_case_i().shape, 0).unwrap().pair(), (0, 1));
    assert_eq!(vertex_signature(&fixtures::cycle_case_iii().shape, 3).unwrap().pair(), (2, 1));
    assert!(admissible_pair(0, 0));
    assert!(!admissible_pair(1, 0));
    assert!(admissible_pair(3, 3));
}

#[test]
fn spherical_triangle_examples() {
    let c = classify_spherical_triangle(&v(1, 0, 0), &v(0, 1, 0), &v(0, 0, 1)).unwrap();
    assert_eq!(c.edges, [ArcClass::Quarter; 3]);
    assert_eq!(c.angles, [AngleClass::Right; 3]);
    let c = classify_spherical_triangle(&v(3, 1, 1), &v(1, 3, 1), &v(1, 1, 3)).unwrap();
    assert_eq!(c.edges, [ArcClass::Short; 3]);
    assert_eq!(c.angles, [AngleClass::Acute; 3]);
}

#[test]
fn obtuse_paths_and_cycles() {
    assert!(find_obtuse_paths(regular().shape()).unwrap().is_empty());
    assert!(find_obtuse_cycles(regular().shape()).unwrap().is_empty());
    for f in [fixtures::cycle_case_i(), fixtures::cycle_case_iii()] {
        assert!(find_obtuse_cycles(&f.shape).unwrap().contains(&ObtuseCycle([0, 1, 2, 3])), "{}", f.name);
    }
    assert_eq!(check_exclusivity(&fixtures::cycle_case_i().shape), Ok(Exclusivity::CycleOnly));
    assert_eq!(check_exclusivity(regular().shape()), Ok(Exclusivity::Neither));
    assert_eq!(check_exclusivity(&fixtures::obtuse_path_demo().shape), Ok(Exclusivity::PathOnly));
}

#[test]
fn loading_regions() {
    assert_eq!(loading_region(regular().shape(), 0).unwrap_err(), MonostaticError::NoObtusePath);
    let demo = fixtures::obtuse_path_demo().shape;
    for face in 0..4 {
        let region = loading_region(&demo, face).unwrap();
        let wp = WeightedPolyhedron::new(demo.clone(), region.centroid()).unwrap();
        assert_eq!(classify(&wp).stable_faces, vec![face]);
    }
}

#[test]
fn mono_unstable_cases() {
    for f in [fixtures::cycle_case_i(), fixtures::cycle_case_iii()] {
        let w = monounstable_weighting(&f.shape, ObtuseCycle([0, 1, 2, 3])).unwrap();
        assert_eq!(w.report.unstable_vertices, vec![0], "{}", f.name);
        assert_eq!(w.report.stable(), 2, "{}", f.name);
    }
    assert_eq!(w_err(), MonostaticError::InvalidCycle([0, 1, 2, 3]));
}

fn w_err() -> MonostaticError {
    monounstable_weighting(regular().shape(), ObtuseCycle([0, 1, 2, 3])).unwrap_err()
}

#[test]
fn regular_tetrahedron_dual() {
    let (d, _) = polar_dual(&regular());
    assert_eq!(d.shape().vertices(), &[v(-1, -1, -1), v(-1, 1, 1), v(1, -1, 1), v(1, 1, -1)]);
    assert_eq!(d.shape().face_vector(), FaceVector::new(4, 6, 4));
    assert_eq!(check_prop_polar(&regular()), Ok(true));
}

#[test]
fn tipping_on_the_regular_tetrahedron() {
    let wp = regular();
    for f in 0..4 {
        assert_eq!(exit_edge(&wp, f), Ok(Exit::Stable));
        let p = tip_path(&wp, f).unwrap();
        assert!(p.steps.is_empty());
        assert_eq!(p.terminal_face, f);
    }
}

#[test]
fn bending_examples() {
    let seed = fixtures::seed585().weighted().unwrap();
    let plan = select_bend_vertex(seed.shape()).unwrap();
    assert_eq!(seed.shape().face(plan.face).len(), 4);
    let out = bend_face(&seed, &plan).unwrap();
    assert_eq!(out.weighted.shape().face_vector(), FaceVector::new(6, 9, 5));
    assert!(verify_mono_monostatic(&out.weighted));
    assert_eq!(select_bend_vertex(out.weighted.shape()).unwrap_err(), GeneratorError::AllFacesTriangular);
    assert_eq!(select_bend_vertex(regular().shape()).unwrap_err(), GeneratorError::AllFacesTriangular);
}

#[test]
fn generation_examples() {
    assert!(verify_mono_monostatic(&generate_mono_monostatic(5, 5).unwrap().weighted));
    assert!(verify_mono_monostatic(&generate_mono_monostatic(6, 5).unwrap().weighted));
    let c = generate_mono_monostatic(8, 6).unwrap();
    assert_eq!(c.weighted.shape().face_vector(), FaceVector::new(8, 12, 6));
    assert!(verify_mono_monostatic(&c.weighted));
    assert_eq!(generate_mono_monostatic(4, 4).unwrap_err(), GeneratorError::ExcludedTetrahedron);
    assert!(!verify_mono_monostatic(&regular()));
}

/// The reference tetrahedron `t0` as stored: its shape is valid, but
/// exact evaluation gives obtuse dihedrals only on `AD` and `BD`, hence no
/// obtuse path, and its stored center lies outside it.
#[test]
fn reference_tetrahedron_as_stored() {
    let t0 = fixtures::t0();
    assert!(validate(t0.shape.vertices(), t0.shape.faces()).is_valid());
    let obtuse: Vec<(usize, usize)> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .into_iter()
        .filter(|&(a, b)| dihedral_between(&t0.shape, a, b) == Some(AngleClass::Obtuse))
        .collect();
    assert_eq!(obtuse, vec![(0, 3), (1, 3)]);
    assert!(find_obtuse_paths(&t0.shape).unwrap().is_empty());
    assert!(matches!(t0.weighted(), Err(ModelError::CenterNotInterior { .. })));
}
