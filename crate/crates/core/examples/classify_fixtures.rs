//! Equilibrium counts for every built-in fixture.
//!
//! `cargo run --example classify_fixtures`

use weighted_polyhedra::equilibria::{classify, maxwell_check};
use weighted_polyhedra::fixtures;

fn main() {
    for f in fixtures::all() {
        print!("{:<20} {:<10} ", f.name, f.shape.face_vector().to_string());
        match f.weighted() {
            Ok(wp) => {
                let r = classify(&wp);
                println!(
                    "S={} H={} U={} maxwell={} stable={:?} unstable={:?}",
                    r.stable(),
                    r.saddles(),
                    r.unstable(),
                    maxwell_check(&r),
                    r.stable_faces,
                    r.unstable_vertices
                );
            }
            Err(e) => println!("unusable center: {e}"),
        }
    }
}
