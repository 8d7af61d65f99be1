//! Command implementations behind the `pscohom` binary. Each returns a
//! [`RunReport`]; the binary only parses flags and prints.

use std::time::Instant;

use serde_json::json;
use thiserror::Error;

use crate::cecomplex::{CeComplex, CeError};
use crate::exterior::{split_args, ExteriorError};
use crate::partitions::{check_against_pbw, littlewood_verify, ps_hilbert_numerator_verify, self_conjugate_by_degree, schur_dim};
use crate::ratlinalg::fmt_rational;
use crate::report::{RunReport, Table};
use crate::transfer::{
    calibrate_signs, generation_closure, CalibrationError, CalibrationOptions, HClass, SamplingConfig, SignVariant,
    TernaryProduct, Transfer, TransferConfig, TransferError,
};

/// Default cost guards; `Limits::unbounded` lifts them.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_dim_v: usize,
    pub max_arity: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim_v: 5, max_arity: 5 }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { max_dim_v: crate::exterior::MAX_DIM_V, max_arity: 12 }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("{0}")]
    Usage(String),
}

fn guard_dim(n: usize, limits: Limits) -> Result<(), RunError> {
    if n > limits.max_dim_v {
        return Err(TransferError::CostGuard { what: "dim V", value: n, limit: limits.max_dim_v }.into());
    }
    Ok(())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn homology(n: usize, limits: Limits) -> Result<RunReport, RunError> {
    guard_dim(n, limits)?;
    let start = Instant::now();
    let cx = CeComplex::new(n)?;
    let mut report = RunReport::new("homology");
    report.param("dim_v", n);
    let jw = cx.jw_verify();
    let table = cx.homology_table();
    let mut dims = Table::new("homology by degree", &["degree", "dim"]);
    for (p, d) in table.dims.iter().enumerate() {
        dims.push(vec![p.to_string(), d.to_string()]);
    }
    let mut slices = Table::new("homology by degree and weight", &["degree", "weight", "dim", "partitions"]);
    for (&(p, t), &d) in &table.by_weight {
        let lams: Vec<String> = self_conjugate_by_degree(p)
            .into_iter()
            .filter(|l| l.size() == t && schur_dim(l, n) > 0)
            .map(|l| l.to_string())
            .collect();
        slices.push(vec![p.to_string(), t.to_string(), d.to_string(), lams.join(" ")]);
    }
    let mut diagrams = Table::new("self-conjugate diagrams", &["degree", "partition", "frobenius", "weight", "schur dim"]);
    for p in 0..table.dims.len() {
        for l in self_conjugate_by_degree(p) {
            let d = schur_dim(&l, n);
            if d == 0 {
                continue;
            }
            let (a, b) = l.frobenius();
            let frob = format!("({}|{})", join(&a), join(&b));
            diagrams.push(vec![p.to_string(), l.to_string(), frob, l.size().to_string(), d.to_string()]);
        }
    }
    report.tables.push(dims);
    report.tables.push(slices);
    report.tables.push(diagrams);
    report.verdict("total", true, format!("dims ({}), total {}", join(&table.dims), table.total()));
    match jw {
        Ok(r) => report.verdict("schur decomposition", true, format!("{} slices match", r.slices)),
        Err(e) => report.verdict("schur decomposition", false, e.to_string()),
    }
    report.verdict(
        "euler characteristic",
        table.euler_characteristic() == 0,
        format!("{}", table.euler_characteristic()),
    );
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

pub fn littlewood(k: usize, max_degree: u32) -> RunReport {
    let start = Instant::now();
    let r = littlewood_verify(k, max_degree);
    let mut report = RunReport::new("littlewood");
    report.param("vars", k);
    report.param("max_deg", max_degree);
    let detail = match &r.first_difference {
        None => format!("{} monomials agree, {} partitions", r.terms_compared, r.partitions_used),
        Some((e, a, b)) => format!("first difference at x^{:?}: lhs {a}, rhs {b}", e),
    };
    report.verdict("littlewood identity", r.equal, detail);
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    report
}

/// Resolves which sign variants to run: an explicit choice, or the outcome of
/// calibration. When several variants survive calibration all of them are
/// returned and the report says so.
pub fn resolve_variants(explicit: Option<SignVariant>, report: &mut RunReport) -> Result<Vec<SignVariant>, RunError> {
    if let Some(v) = explicit {
        report.sign_variant = Some(v.to_string());
        return Ok(vec![v]);
    }
    let cal = calibrate_signs(&CalibrationOptions::default())?;
    match cal.outcome {
        Ok(v) => {
            report.sign_variant = Some(v.to_string());
            Ok(vec![v])
        }
        Err(CalibrationError::MultipleVariantsPass(vs)) => {
            report.sign_variant = Some(format!("ambiguous: {}", vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" | ")));
            Ok(vs)
        }
        Err(CalibrationError::NoVariantPasses) => {
            report.verdict("calibration", false, "no sign variant passes");
            Ok(Vec::new())
        }
    }
}

fn parse_class(cx: &CeComplex, s: &str) -> Result<HClass, RunError> {
    let x = cx.algebra().parse_element(s)?;
    if x.is_zero() {
        return Err(RunError::Usage(format!("argument `{s}` is zero")));
    }
    if cx.is_harmonic(&x) {
        return Ok(HClass::new(cx, x)?);
    }
    Ok(HClass::of_closed(cx, &x)?)
}

pub fn transfer(
    n: usize,
    op: &str,
    arity: Option<usize>,
    args: &str,
    variant: Option<SignVariant>,
    limits: Limits,
) -> Result<RunReport, RunError> {
    guard_dim(n, limits)?;
    let start = Instant::now();
    let cx = CeComplex::new(n)?;
    let alg = cx.algebra();
    let classes: Vec<HClass> = split_args(args).iter().map(|a| parse_class(&cx, a)).collect::<Result<_, _>>()?;
    let mut report = RunReport::new("transfer");
    report.param("dim_v", n);
    report.param("op", op);
    report.param("args", json!(split_args(args)));
    let refs: Vec<&HClass> = classes.iter().collect();
    let mut table = Table::new("result", &["op", "variant", "value", "class", "degree", "weight"]);
    let config = TransferConfig { sign_variant: None, max_arity: limits.max_arity };
    let t = Transfer::new(&cx, config);
    let expect = |k: usize| -> Result<(), RunError> {
        if refs.len() != k {
            return Err(RunError::Usage(format!("{op} takes {k} arguments, got {}", refs.len())));
        }
        Ok(())
    };
    let mut push = |label: &str, variant: &str, x: &HClass| -> Result<(), RunError> {
        let class = match cx.monomial_classes(x.element())? {
            Some(terms) => alg.render_tableau(&terms),
            None => "-".to_string(),
        };
        table.push(vec![
            label.into(),
            variant.into(),
            alg.render(x.element()),
            class,
            x.degree().to_string(),
            x.weight().to_string(),
        ]);
        Ok(())
    };
    match op {
        "m2" => {
            expect(2)?;
            push("m2", "-", &t.m2(refs[0], refs[1])?)?;
        }
        "m3" => {
            expect(3)?;
            push("m3", "-", &t.m3(refs[0], refs[1], refs[2])?)?;
            push("m3_graded", "-", &t.m3_graded(refs[0], refs[1], refs[2])?)?;
        }
        "mn" => {
            let k = arity.unwrap_or(refs.len());
            expect(k)?;
            if k > limits.max_arity {
                return Err(TransferError::CostGuard { what: "arity", value: k, limit: limits.max_arity }.into());
            }
            let variants = resolve_variants(variant, &mut report)?;
            let mut values = Vec::new();
            for v in &variants {
                let x = t.mn_with(*v, &refs)?;
                push(&format!("m{k}"), &v.to_string(), &x)?;
                values.push(x);
            }
            let agree = values.windows(2).all(|w| w[0] == w[1]);
            if variants.len() > 1 {
                report.verdict("variants agree", agree, format!("{} surviving variants evaluated", variants.len()));
            }
        }
        other => return Err(RunError::Usage(format!("unknown op `{other}` (m2, m3, mn)"))),
    }
    for (i, c) in classes.iter().enumerate() {
        report.param(&format!("class_{i}"), alg.render(c.element()));
    }
    report.tables.push(table);
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

pub struct VerifyArgs {
    pub suite: String,
    pub dim_v: usize,
    pub max_deg: u32,
    pub up_to: usize,
    pub variant: Option<SignVariant>,
    pub sampling: SamplingConfig,
}

pub fn verify(a: &VerifyArgs, limits: Limits) -> Result<RunReport, RunError> {
    guard_dim(a.dim_v, limits)?;
    let start = Instant::now();
    let n = a.dim_v;
    let cx = CeComplex::new(n)?;
    let mut report = RunReport::new("verify");
    report.param("suite", a.suite.as_str());
    report.param("dim_v", n);
    match a.suite.as_str() {
        "retract" => match cx.verify_retract() {
            Ok(r) => report.verdict("retract", true, format!("{} blocks, {} identities", r.blocks, r.identities_checked)),
            Err(e) => report.verdict("retract", false, e.to_string()),
        },
        "stasheff" | "cinfty" => {
            report.param("up_to", a.up_to);
            if a.up_to > limits.max_arity {
                return Err(TransferError::CostGuard { what: "arity", value: a.up_to, limit: limits.max_arity }.into());
            }
            let t = Transfer::new(&cx, TransferConfig { sign_variant: None, max_arity: limits.max_arity });
            let mut table = Table::new("identity checks", &["variant", "arity", "degree-1 tuples", "sampled", "nontrivial"]);
            for v in resolve_variants(a.variant, &mut report)? {
                let r = if a.suite == "stasheff" {
                    t.check_stasheff_with(v, a.up_to, a.sampling)?
                } else {
                    t.check_cinfty_with(v, a.up_to, a.sampling)?
                };
                for s in &r.arities {
                    table.push(vec![
                        v.to_string(),
                        s.arity.to_string(),
                        s.degree_one_tuples.to_string(),
                        s.sampled_tuples.to_string(),
                        s.nontrivial.to_string(),
                    ]);
                }
                let detail = match &r.failure {
                    None => format!("{} tuples", r.tuples()),
                    Some(f) => format!("{} fails at ({}): residual {}", f.detail, f.args.join(", "), f.residual),
                };
                report.verdict(&format!("{} {}", a.suite, v), r.passed(), detail);
            }
            report.tables.push(table);
        }
        "duality" => match cx.duality_verify() {
            Ok(r) => report.verdict("duality", true, format!("d = {}, dims ({}), {} block pairings", r.top_degree, join(&r.dims), r.block_pairs)),
            Err(e) => report.verdict("duality", false, e.to_string()),
        },
        "hilbert" => {
            report.param("max_deg", a.max_deg);
            let schur = ps_hilbert_numerator_verify(n, a.max_deg);
            let hom = check_against_pbw(n, &cx.hilbert_numerator_from_homology(a.max_deg));
            let mut table = Table::new("hilbert numerator", &["weight", "from partitions", "from homology"]);
            for (w, (x, y)) in schur.numerator.iter().zip(&hom.numerator).enumerate() {
                table.push(vec![w.to_string(), x.clone(), y.clone()]);
            }
            report.tables.push(table);
            report.verdict("numerator x PBW = 1 (partitions)", schur.holds, join(&schur.product));
            report.verdict("numerator x PBW = 1 (homology)", hom.holds, join(&hom.product));
        }
        "generation" => {
            let r = generation_closure(&cx, TernaryProduct::Literal)?;
            let mut table = Table::new("closure", &["degree", "weight", "closure", "homology"]);
            for s in &r.slices {
                table.push(vec![s.degree.to_string(), s.weight.to_string(), s.closure_dim.to_string(), s.homology_dim.to_string()]);
            }
            report.tables.push(table);
            let mut hooks = Table::new("hook chain", &["k", "degree", "weight", "reached", "expected"]);
            for h in &r.hook_chain {
                hooks.push(vec![h.k.to_string(), h.target_degree.to_string(), h.target_weight.to_string(), h.reached.to_string(), h.expected.to_string()]);
            }
            report.tables.push(hooks);
            report.verdict("closure equals cohomology", r.equals_homology(), format!("{} rounds", r.rounds));
            report.verdict("hook chain", r.hooks_reached(), format!("{} steps", r.hook_chain.len()));
        }
        "jw" => match cx.jw_verify() {
            Ok(r) => report.verdict("schur decomposition", true, format!("{} slices", r.slices)),
            Err(e) => report.verdict("schur decomposition", false, e.to_string()),
        },
        "signs" => {
            let cal = calibrate_signs(&CalibrationOptions { sampling: a.sampling, ..Default::default() })?;
            let mut table = Table::new("sign variants", &["variant", "m2", "m3", "literal m3", "stasheff", "cinfty"]);
            for v in &cal.verdicts {
                table.push(vec![
                    v.variant.to_string(),
                    v.reproduces_m2.to_string(),
                    v.reproduces_m3.to_string(),
                    v.reproduces_literal_m3.to_string(),
                    v.stasheff.to_string(),
                    v.cinfty.to_string(),
                ]);
            }
            report.tables.push(table);
            match cal.outcome {
                Ok(v) => {
                    report.sign_variant = Some(v.to_string());
                    report.verdict("calibration", true, format!("unique variant {v}"));
                }
                Err(e) => report.verdict("calibration", false, e.to_string()),
            }
        }
        other => {
            return Err(RunError::Usage(format!(
                "unknown suite `{other}` (retract, stasheff, cinfty, duality, hilbert, generation, jw, signs)"
            )))
        }
    }
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Rational rendering used in tables.
pub fn rational_cell(q: &crate::ratlinalg::Rational) -> String {
    fmt_rational(q)
}
