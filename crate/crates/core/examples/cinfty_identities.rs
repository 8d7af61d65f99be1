//! Stasheff and shuffle identities for each sign variant of the tree
//! recursion, followed by the calibration table.
//!
//! cargo run --release --example cinfty_identities

use pscohom::cecomplex::CeComplex;
use pscohom::transfer::{calibrate_signs, CalibrationOptions, SamplingConfig, SignVariant, Transfer, TransferConfig};

fn main() {
    let sampling = SamplingConfig::default();
    for n in [2, 3] {
        let cx = CeComplex::new(n).unwrap();
        let t = Transfer::new(&cx, TransferConfig::default());
        for v in SignVariant::ALL {
            let s = t.check_stasheff_with(v, 4, sampling).unwrap();
            let c = t.check_cinfty_with(v, 4, sampling).unwrap();
            println!(
                "dim V = {n} {v:>14}: stasheff {} ({} tuples), shuffles {} ({} tuples)",
                s.passed(),
                s.tuples(),
                c.passed(),
                c.tuples()
            );
        }
    }
    let report = calibrate_signs(&CalibrationOptions::default()).unwrap();
    println!("{:>14} {:>5} {:>5} {:>8} {:>6}", "variant", "m2", "m3", "stasheff", "cinfty");
    for v in &report.verdicts {
        println!("{:>14} {:>5} {:>5} {:>8} {:>6}", v.variant.to_string(), v.reproduces_m2, v.reproduces_m3, v.stasheff, v.cinfty);
    }
    match report.outcome {
        Ok(v) => println!("calibrated: {v}"),
        Err(e) => println!("calibration: {e}"),
    }
}
