//! Palindromic homology and a nondegenerate wedge pairing into the top degree.
//!
//! cargo run --release --example duality

use pscohom::cecomplex::CeComplex;

fn main() {
    for n in 1..=4 {
        match CeComplex::new(n).unwrap().duality_verify() {
            Ok(r) => println!("dim V = {n}: d = {}, dims {:?}, {} block pairings", r.top_degree, r.dims, r.block_pairs),
            Err(e) => println!("dim V = {n}: {e}"),
        }
    }
}
