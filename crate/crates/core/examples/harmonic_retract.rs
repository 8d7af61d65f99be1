//! Harmonic projection and homotopy on a few forms, then the full retract check.
//!
//! cargo run --release --example harmonic_retract

use pscohom::cecomplex::CeComplex;

fn main() {
    let cx = CeComplex::new(3).unwrap();
    let alg = cx.algebra();
    for s in ["e1^e2", "e2^e{1,3}", "e2^e3", "e{1,2}", "e1^e2^e3"] {
        let x = alg.parse_element(s).unwrap();
        let p = cx.project(&x).unwrap();
        let h = cx.homotopy(&x).unwrap();
        println!("x = {s}");
        println!("  d x  = {}", alg.render(&cx.boundary(&x)));
        println!("  p x  = {}", alg.render(&p));
        println!("  h x  = {}", alg.render(&h));
    }
    for n in 1..=3 {
        match CeComplex::new(n).unwrap().verify_retract() {
            Ok(r) => println!("dim V = {n}: {} blocks, {} identities hold", r.blocks, r.identities_checked),
            Err(e) => println!("dim V = {n}: {e}"),
        }
    }
}
