//! Quasi-static tipping from every face until a stable face is reached.
//!
//! `cargo run --example tipping -- [fixture]`

use weighted_polyhedra::fixtures;
use weighted_polyhedra::tipping::{heights_strictly_decrease, tip_path};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "seed585".into());
    let wp = fixtures::get(&name).expect("known fixture").weighted().expect("interior center");
    for start in 0..wp.shape().num_faces() {
        match tip_path(&wp, start) {
            Ok(p) => println!(
                "{start}: {:?} rests on {} (heights decrease: {})",
                p.faces(),
                p.terminal_face,
                heights_strictly_decrease(&wp, &p)
            ),
            Err(e) => println!("{start}: {e}"),
        }
    }
}
