//! Loading regions of a tetrahedron with an obtuse path: a center in the
//! region of face `F` makes `F` the only stable face.
//!
//! `cargo run --example monostable_loading`

use weighted_polyhedra::monostatic::{find_obtuse_paths, monostable_weighting};
use weighted_polyhedra::{fixtures, tipping::tip_path};

fn main() {
    let t = fixtures::obtuse_path_demo().shape;
    println!("obtuse paths: {:?}", find_obtuse_paths(&t).expect("tetrahedron"));
    for face in 0..4 {
        let w = monostable_weighting(&t, face).expect("path exists");
        let cuts: Vec<String> = w.region.cuts.iter().map(|c| format!("{}={}", c.label, c.point)).collect();
        println!("face {face}: center {} S={:?} U={:?}", w.weighted.center(), w.report.stable_faces, w.report.unstable_vertices);
        println!("  cuts {}", cuts.join(" "));
        for start in 0..4 {
            let p = tip_path(&w.weighted, start).expect("descends");
            println!("  tip from {start}: {:?}", p.faces());
        }
    }
}
