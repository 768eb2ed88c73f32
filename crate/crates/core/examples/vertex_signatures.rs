//! Vertex signatures `[m, n]` of the cycle fixtures and a tally over random
//! tetrahedra showing that only admissible pairs occur.
//!
//! `cargo run --example vertex_signatures -- [samples] [seed]`

use std::collections::BTreeMap;

use weighted_polyhedra::fixtures;
use weighted_polyhedra::sampling::{rng, random_tetrahedron};
use weighted_polyhedra::vertex_links::{admissible_signature, vertex_signature};

fn main() {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().map_or(2000, |s| s.parse().expect("sample count"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    for f in [fixtures::cycle_case_i(), fixtures::cycle_case_iii(), fixtures::regular_tetrahedron()] {
        let sigs: Vec<_> = (0..4).map(|v| vertex_signature(&f.shape, v).expect("tetrahedron").pair()).collect();
        println!("{:<20} {:?}", f.name, sigs);
    }

    let mut r = rng(seed);
    let mut tally: BTreeMap<(u8, u8), usize> = BTreeMap::new();
    let mut inadmissible = 0;
    for _ in 0..samples {
        let t = random_tetrahedron(&mut r);
        for v in 0..4 {
            let s = vertex_signature(&t, v).expect("tetrahedron");
            *tally.entry(s.pair()).or_default() += 1;
            inadmissible += usize::from(!admissible_signature(&s));
        }
    }
    println!("{samples} random tetrahedra, seed {seed}:");
    for ((m, n), count) in tally {
        println!("  [{m},{n}] {count}");
    }
    println!("inadmissible vertices: {inadmissible}");
}
