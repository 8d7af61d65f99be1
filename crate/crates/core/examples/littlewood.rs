//! Littlewood's identity: the product of (1 - x_i) and (1 - x_i x_j) equals the
//! signed sum of Schur polynomials over self-conjugate partitions.
//!
//! cargo run --release --example littlewood -- 3 8

use pscohom::partitions::{littlewood_product, littlewood_sum, littlewood_verify, SchurMethod};

fn main() {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let d: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let lhs = littlewood_product(k, d);
    let (ssyt, used) = littlewood_sum(k, d, SchurMethod::Ssyt);
    let (jt, _) = littlewood_sum(k, d, SchurMethod::JacobiTrudi);
    println!("k = {k}, truncated at total degree {d}, {used} partitions");
    for (exps, c) in lhs.terms() {
        println!("  {c:>4} x^{exps:?}");
    }
    println!("tableau sum equal: {}", ssyt == lhs);
    println!("Jacobi-Trudi sum equal: {}", jt == lhs);
    let r = littlewood_verify(k, d);
    println!("verify: equal = {}, {} terms compared", r.equal, r.terms_compared);
}
