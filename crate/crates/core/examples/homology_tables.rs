//! Homology of the Chevalley–Eilenberg complex by degree and weight, with the
//! self-conjugate diagram predicted for each slice.
//!
//! cargo run --release --example homology_tables -- 4

use pscohom::cecomplex::CeComplex;
use pscohom::partitions::{schur_dim, self_conjugate_by_degree};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cx = CeComplex::new(n).expect("dim V in range");
    let table = cx.homology_table();
    println!("dim V = {n}, dim g = {}", cx.top_degree());
    println!("dims by degree: {:?} (total {})", table.dims, table.total());
    println!("{:>6} {:>6} {:>6}  diagrams", "degree", "weight", "dim");
    for (&(p, t), &d) in &table.by_weight {
        let lams: Vec<String> = self_conjugate_by_degree(p)
            .into_iter()
            .filter(|l| l.size() == t && schur_dim(l, n) > 0)
            .map(|l| format!("{l} [{}]", schur_dim(&l, n)))
            .collect();
        println!("{p:>6} {t:>6} {d:>6}  {}", lams.join(" "));
    }
    match cx.jw_verify() {
        Ok(r) => println!("hook-content sums agree on {} slices", r.slices),
        Err(e) => println!("mismatch: {e}"),
    }
}
