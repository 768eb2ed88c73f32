//! Seeded random instances for property checks. All draws are integers, so
//! every sample is exact and reproducible from its seed.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{orient3d, AngleClass, Rat, Sign, Vec3};
use crate::hull::convex_hull;
use crate::polyhedron::{Polyhedron, WeightedPolyhedron};
use crate::vertex_links::{dihedral_sign, face_angle_sign};

/// Half the side of the coordinate cube for random vertices.
pub const COORD_RANGE: i64 = 100_000;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(rng: &mut SampleRng, range: i64) -> Vec3 {
    Vec3::from_ints(rng.random_range(-range..=range), rng.random_range(-range..=range), rng.random_range(-range..=range))
}

/// No right dihedral and no right face angle.
pub fn has_no_right_angles(t: &Polyhedron) -> bool {
    let dihedrals = (0..t.edges().len()).all(|e| dihedral_sign(t, e) != AngleClass::Right);
    let faces = (0..t.num_faces()).all(|f| {
        let cyc = t.face(f);
        let k = cyc.len();
        (0..k).all(|i| face_angle_sign(t, cyc[i], cyc[(i + k - 1) % k], cyc[(i + 1) % k]) != Ok(AngleClass::Right))
    });
    dihedrals && faces
}

/// Tetrahedron with vertices in the cube of side `2 * COORD_RANGE`,
/// rejecting flat ones and any with a right face or dihedral angle.
pub fn random_tetrahedron(rng: &mut SampleRng) -> Polyhedron {
    loop {
        let [a, b, c, d] = std::array::from_fn(|_| random_point(rng, COORD_RANGE));
        if Sign::of(&orient3d(&a, &b, &c, &d)) == Sign::Zero {
            continue;
        }
        let t = Polyhedron::tetrahedron(a, b, c, d).expect("non-flat tetrahedron");
        if has_no_right_angles(&t) {
            return t;
        }
    }
}

/// Strict convex combination of the vertices with positive integer weights.
pub fn random_interior_point(rng: &mut SampleRng, p: &Polyhedron) -> Vec3 {
    let mut sum = Vec3::zero();
    let mut total = 0i64;
    for v in p.vertices() {
        let w = rng.random_range(1..=1000i64);
        sum = &sum + &v.scale(&Rat::from_integer(BigInt::from(w)));
        total += w;
    }
    sum.scale(&Rat::new(BigInt::from(1), BigInt::from(total)))
}

/// Convex hull of 6 to 20 random points.
pub fn random_polyhedron(rng: &mut SampleRng) -> Polyhedron {
    loop {
        let n = rng.random_range(6..=20);
        let pts: Vec<Vec3> = (0..n).map(|_| random_point(rng, COORD_RANGE)).collect();
        if let Ok(h) = convex_hull(&pts) {
            return h.polyhedron;
        }
    }
}

pub fn random_weighted_polyhedron(rng: &mut SampleRng) -> WeightedPolyhedron {
    let p = random_polyhedron(rng);
    let o = random_interior_point(rng, &p);
    WeightedPolyhedron::new(p, o).expect("strict convex combinations are interior")
}

/// Three linearly independent integer directions.
pub fn random_spherical_triple(rng: &mut SampleRng) -> [Vec3; 3] {
    loop {
        let [a, b, c] = std::array::from_fn(|_| random_point(rng, 1000));
        if Sign::of(&orient3d(&Vec3::zero(), &a, &b, &c)) != Sign::Zero {
            return [a, b, c];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible() {
        let a = random_tetrahedron(&mut rng(7));
        let b = random_tetrahedron(&mut rng(7));
        assert_eq!(a.vertices(), b.vertices());
    }

    #[test]
    fn interior_points_are_interior() {
        let mut r = rng(3);
        for _ in 0..20 {
            let p = random_polyhedron(&mut r);
            let o = random_interior_point(&mut r, &p);
            assert!(p.contains_strictly(&o));
        }
    }

    #[test]
    fn triples_are_independent() {
        let mut r = rng(5);
        for _ in 0..50 {
            let [a, b, c] = random_spherical_triple(&mut r);
            assert_ne!(Sign::of(&orient3d(&Vec3::zero(), &a, &b, &c)), Sign::Zero);
        }
    }
}
