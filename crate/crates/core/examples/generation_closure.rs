//! Closes H^0 + H^1 under m2 and m3 and compares with the full cohomology,
//! then follows the hook chain.
//!
//! cargo run --release --example generation_closure -- 3

use pscohom::cecomplex::CeComplex;
use pscohom::transfer::{generation_closure, TernaryProduct};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cx = CeComplex::new(n).unwrap();
    let r = generation_closure(&cx, TernaryProduct::Literal).unwrap();
    println!("{} rounds", r.rounds);
    println!("{:>6} {:>6} {:>8} {:>9}", "degree", "weight", "closure", "homology");
    for s in &r.slices {
        println!("{:>6} {:>6} {:>8} {:>9}", s.degree, s.weight, s.closure_dim, s.homology_dim);
    }
    for h in &r.hook_chain {
        println!("hook step k={}: slice ({}, {}) reached {}/{}", h.k, h.target_degree, h.target_weight, h.reached, h.expected);
    }
    println!("generated: {}", r.equals_homology());
}
