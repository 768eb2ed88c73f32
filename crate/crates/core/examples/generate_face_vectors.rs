//! Mono-monostatic weighted polyhedra for every legal face vector in range.
//!
//! `cargo run --example generate_face_vectors -- [max]`

use weighted_polyhedra::equilibria::classify;
use weighted_polyhedra::generator::{verify_mono_monostatic, Generator};
use weighted_polyhedra::polyhedron::FaceVector;

fn main() {
    let max: usize = std::env::args().nth(1).map_or(8, |s| s.parse().expect("bound"));
    let mut g = Generator::new();
    for f in 4..=max {
        for v in 4..=max {
            if !FaceVector::from_faces_vertices(f, v).is_legal() {
                continue;
            }
            match g.generate(f, v) {
                Ok(c) => {
                    let r = classify(&c.weighted);
                    let steps: Vec<String> = c.trace.iter().map(|s| s.to_json()["step"].to_string()).collect();
                    println!(
                        "({f},{v}) -> {} S={} H={} U={} ok={} via {}",
                        c.weighted.shape().face_vector(),
                        r.stable(),
                        r.saddles(),
                        r.unstable(),
                        verify_mono_monostatic(&c.weighted),
                        steps.join(",").replace('"', "")
                    );
                }
                Err(e) => println!("({f},{v}) -> {e}"),
            }
        }
    }
}
