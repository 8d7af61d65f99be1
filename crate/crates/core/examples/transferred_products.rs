//! m2 and the two-tree m3 on degree-1 classes, with class representatives in
//! tableau monomials.
//!
//! cargo run --release --example transferred_products -- 4

use pscohom::cecomplex::CeComplex;
use pscohom::transfer::{Transfer, TransferConfig};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cx = CeComplex::new(n).unwrap();
    let alg = cx.algebra();
    let t = Transfer::new(&cx, TransferConfig::default());
    let e = t.degree_one();
    let zero_pairs = e.iter().flat_map(|a| e.iter().map(move |b| (a, b))).filter(|(a, b)| t.m2(a, b).unwrap().is_zero()).count();
    println!("m2 vanishes on {zero_pairs} of {} degree-1 pairs", e.len() * e.len());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !(i <= j && j <= k) || i == k {
                    continue;
                }
                let m = t.m3(&e[i], &e[j], &e[k]).unwrap();
                let class = cx.monomial_classes(m.element()).unwrap().map(|c| alg.render_tableau(&c));
                println!(
                    "m3(e{},e{},e{}) = {}   class {}",
                    i + 1,
                    j + 1,
                    k + 1,
                    alg.render(m.element()),
                    class.unwrap_or_else(|| "-".into())
                );
            }
        }
    }
}
