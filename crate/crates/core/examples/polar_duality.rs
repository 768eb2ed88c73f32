//! Polar duals swap stable faces with unstable vertices.
//!
//! `cargo run --example polar_duality`

use weighted_polyhedra::duality::{check_prop_polar, polar_dual, saddle_correspondence};
use weighted_polyhedra::equilibria::classify;
use weighted_polyhedra::fixtures;

fn main() {
    for f in fixtures::all() {
        let Ok(wp) = f.weighted() else { continue };
        let (dual, corr) = polar_dual(&wp);
        let (r, d) = (classify(&wp), classify(&dual));
        println!("{} {} -> {}", f.name, wp.shape().face_vector(), dual.shape().face_vector());
        println!("  primal S={:?} U={:?}", r.stable_faces, r.unstable_vertices);
        println!("  dual   S={:?} U={:?}", d.stable_faces, d.unstable_vertices);
        println!("  face->vertex {:?}", corr.face_to_vertex);
        println!(
            "  swap holds: {:?}, saddles correspond: {:?}",
            check_prop_polar(&wp),
            saddle_correspondence(&wp)
        );
    }
}
