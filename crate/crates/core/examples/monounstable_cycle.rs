//! Mono-unstable weightings from obtuse cycles.
//!
//! `cargo run --example monounstable_cycle`

use weighted_polyhedra::fixtures;
use weighted_polyhedra::monostatic::{check_exclusivity, find_obtuse_cycles, monounstable_weighting};

fn main() {
    for f in [fixtures::cycle_case_i(), fixtures::cycle_case_iii()] {
        let cycles = find_obtuse_cycles(&f.shape).expect("tetrahedron");
        println!("{}: {:?}, {:?}", f.name, cycles, check_exclusivity(&f.shape).expect("tetrahedron"));
        for c in cycles {
            let w = monounstable_weighting(&f.shape, c).expect("cycle is obtuse");
            println!(
                "  apex {}: k={} j={} center {} -> U={:?} S={:?}",
                c.apex(),
                w.k,
                w.j,
                w.weighted.center(),
                w.report.unstable_vertices,
                w.report.stable_faces
            );
        }
    }
}
