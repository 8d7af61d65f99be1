//! The Euler characteristic of homology, graded by weight, inverts the PBW
//! Hilbert series of the enveloping algebra.
//!
//! cargo run --release --example hilbert_series -- 3

use pscohom::cecomplex::CeComplex;
use pscohom::partitions::{check_against_pbw, hilbert_numerator};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let d = 12;
    let from_diagrams = hilbert_numerator(n, d);
    let from_homology = CeComplex::new(n).unwrap().hilbert_numerator_from_homology(d);
    println!("numerator (diagrams): {:?}", from_diagrams.univariate_coeffs());
    println!("numerator (homology): {:?}", from_homology.univariate_coeffs());
    let r = check_against_pbw(n, &from_homology);
    println!("numerator x PBW series: {}", r.product.join(" "));
    println!("holds: {}", r.holds);
}
