//! One tetrahedron, nine centers of mass, every `(S, U)` pair with
//! `2 <= S, U <= 4`.
//!
//! `cargo run --example nine_centers`

use weighted_polyhedra::equilibria::classify;
use weighted_polyhedra::fixtures;

fn main() {
    let f = fixtures::nine_centers();
    println!("{}", f.description);
    for (name, center) in &f.named_centers {
        let wp = f.with_named_center(name).expect("listed").expect("interior");
        let r = classify(&wp);
        println!("{name}: center {center} -> S={} U={} H={}", r.stable(), r.unstable(), r.saddles());
    }
}
