//! Frequency table of arc and angle classes of random spherical triangles,
//! with any violation of the spherical triangle lemma counted.
//!
//! `cargo run --example spherical_table -- [samples] [seed]`

use std::collections::BTreeMap;

use weighted_polyhedra::audit::lemma_violations;
use weighted_polyhedra::sampling::{random_spherical_triple, rng};
use weighted_polyhedra::vertex_links::classify_spherical_triangle;

fn main() {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().map_or(20000, |s| s.parse().expect("sample count"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));
    let mut r = rng(seed);
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut violations = 0;
    for _ in 0..samples {
        let [a, b, c] = random_spherical_triple(&mut r);
        let Ok(t) = classify_spherical_triangle(&a, &b, &c) else { continue };
        *table.entry((t.long_edges(), t.obtuse_angles())).or_default() += 1;
        violations += usize::from(!lemma_violations(&t).is_empty());
    }
    println!("long sides, obtuse angles: count");
    for ((long, obtuse), n) in table {
        println!("{long}, {obtuse}: {n}");
    }
    println!("lemma violations: {violations}");
}
