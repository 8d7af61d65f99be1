//! Transferred products on harmonic forms.
//!
//! The dga is `(Λg*, δ)` with the wedge product; the retract is the harmonic
//! projection `p`, inclusion `i` and homotopy `h = G∂`. Tree sums give
//! `m_k = p ∘ λ_k` with `φ_1 = i`, `φ_j = h ∘ λ_j` and
//!
//! `λ_k = Σ_{u+v=k} ε(u,v) (-1)^{(1-v)(|x_1|+…+|x_u|)} φ_u(x_1..x_u) ∧ φ_v(x_{u+1}..x_k)`.
//!
//! The middle sign is the Koszul rule for `φ_u ⊗ φ_v` (where `|φ_v| = 1 - v`);
//! `ε` is the convention-dependent part selected by [`SignVariant`].

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cecomplex::{CeComplex, CeError};
use crate::exterior::{Element, MultiDegree};
use crate::ratlinalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error("argument is not a harmonic form")]
    NotHarmonic,
    #[error("argument is not homogeneous in degree and weight")]
    Inhomogeneous,
    #[error("sign variant has not been calibrated")]
    Uncalibrated,
    #[error("arity {0} is below 2")]
    ArityTooSmall(usize),
    #[error("{what} = {value} exceeds the cost guard {limit}")]
    CostGuard { what: &'static str, value: usize, limit: usize },
}

/// The convention-dependent sign `ε(u, v)` in the tree recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SignVariant {
    /// `(-1)^{u+1}`
    UPlusOne,
    /// `(-1)^u`
    U,
    /// `(-1)^{v(u+1)}`
    VTimesUPlusOne,
    /// `(-1)^{u(v+1)}`
    UTimesVPlusOne,
}

impl SignVariant {
    /// Fixed enumeration order used by calibration.
    pub const ALL: [SignVariant; 4] =
        [SignVariant::UPlusOne, SignVariant::U, SignVariant::VTimesUPlusOne, SignVariant::UTimesVPlusOne];

    pub fn eps(self, u: usize, v: usize) -> i8 {
        let e = match self {
            SignVariant::UPlusOne => u + 1,
            SignVariant::U => u,
            SignVariant::VTimesUPlusOne => v * (u + 1),
            SignVariant::UTimesVPlusOne => u * (v + 1),
        };
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            SignVariant::UPlusOne => "(-1)^(u+1)",
            SignVariant::U => "(-1)^u",
            SignVariant::VTimesUPlusOne => "(-1)^(v(u+1))",
            SignVariant::UTimesVPlusOne => "(-1)^(u(v+1))",
        }
    }

    /// Accepts the formula, the bare exponent (`u+1`) or the variant name.
    pub fn parse(s: &str) -> Option<SignVariant> {
        let bare = |x: &str| -> String {
            let x: String = x.chars().filter(|c| !c.is_whitespace()).collect();
            let x = x.strip_prefix("(-1)^").unwrap_or(&x).to_string();
            match x.strip_prefix('(').and_then(|y| y.strip_suffix(')')) {
                Some(inner) => inner.to_string(),
                None => x,
            }
        };
        let t = bare(s);
        SignVariant::ALL.into_iter().find(|v| t == bare(v.formula()) || s.trim() == format!("{v:?}"))
    }
}

impl fmt::Display for SignVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.formula())
    }
}

/// A harmonic form, homogeneous in exterior degree and weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HClass {
    element: Element,
    degree: usize,
    weight: usize,
}

impl HClass {
    pub fn new(cx: &CeComplex, element: Element) -> Result<HClass, TransferError> {
        let alg = cx.algebra();
        let degree = element.hom_degree().ok_or(TransferError::Inhomogeneous)?;
        let weights: Vec<usize> = element.terms().map(|(m, _)| alg.weight(m)).collect();
        let weight = weights[0];
        if weights.iter().any(|&w| w != weight) {
            return Err(TransferError::Inhomogeneous);
        }
        if !cx.is_harmonic(&element) {
            return Err(TransferError::NotHarmonic);
        }
        Ok(HClass { element, degree, weight })
    }

    /// Harmonic representative of a cycle or cocycle.
    pub fn of_closed(cx: &CeComplex, x: &Element) -> Result<HClass, TransferError> {
        let rep = cx.class_representative(x)?;
        if rep.is_zero() {
            let degree = x.hom_degree().ok_or(TransferError::Inhomogeneous)?;
            let weight = x.terms().next().map_or(0, |(m, _)| cx.algebra().weight(m));
            return Ok(HClass::zero(degree, weight));
        }
        HClass::new(cx, rep)
    }

    pub fn zero(degree: usize, weight: usize) -> HClass {
        HClass { element: Element::zero(), degree, weight }
    }

    fn from_parts(element: Element, degree: usize, weight: usize) -> HClass {
        debug_assert!(element.hom_degree().is_none_or(|d| d == degree));
        HClass { element, degree, weight }
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    pub fn multidegree(&self, cx: &CeComplex) -> Option<MultiDegree> {
        let mut mds = self.element.terms().map(|(m, _)| cx.algebra().multidegree(m));
        let first = mds.next()?;
        mds.all(|md| md == first).then_some(first)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferConfig {
    pub sign_variant: Option<SignVariant>,
    /// Cost guard on the arity of `m_k`.
    pub max_arity: usize,
}

impl Default for TransferConfig {
    fn default() -> Self {
        TransferConfig { sign_variant: None, max_arity: 5 }
    }
}

/// Which two-tree formula a ternary product uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TernaryProduct {
    /// `p(x ∧ h(y∧z)) - p(h(x∧y) ∧ z)`, evaluated on elements.
    Literal,
    /// The same trees read as graded maps: the first carries `(-1)^{|x|}`.
    Graded,
}

/// `Σ|x_i| + 2 - k`. Units in arity three or more give a zero output, for
/// which the clamped degree is only a label.
fn output_degree(args: &[&HClass]) -> usize {
    (args.iter().map(|a| a.degree).sum::<usize>() + 2).saturating_sub(args.len())
}

pub struct Transfer<'a> {
    cx: &'a CeComplex,
    config: TransferConfig,
}

impl<'a> Transfer<'a> {
    pub fn new(cx: &'a CeComplex, config: TransferConfig) -> Self {
        Transfer { cx, config }
    }

    pub fn complex(&self) -> &'a CeComplex {
        self.cx
    }

    pub fn config(&self) -> &TransferConfig {
        &self.config
    }

    pub fn set_sign_variant(&mut self, v: Option<SignVariant>) {
        self.config.sign_variant = v;
    }

    /// Degree-1 classes `e_1, …, e_n`.
    pub fn degree_one(&self) -> Vec<HClass> {
        let alg = self.cx.algebra();
        (1..=self.cx.dim_v())
            .map(|i| {
                let x = alg.monomial_of(&[crate::exterior::Generator::V(i as u8)]);
                HClass::from_parts(x, 1, 1)
            })
            .collect()
    }

    /// Harmonic basis classes of every degree.
    pub fn harmonic_basis(&self) -> Result<Vec<HClass>, TransferError> {
        let mut out = Vec::new();
        for p in 0..=self.cx.top_degree() {
            for (md, x) in self.cx.harmonic_basis(p)? {
                out.push(HClass::from_parts(x, p, md.weight()));
            }
        }
        Ok(out)
    }

    /// `m_1 = 0`.
    pub fn m1(&self, x: &HClass) -> HClass {
        HClass::zero(x.degree + 1, x.weight)
    }

    pub fn m2(&self, x: &HClass, y: &HClass) -> Result<HClass, TransferError> {
        let e = self.cx.project(&x.element.wedge(&y.element))?;
        Ok(HClass::from_parts(e, x.degree + y.degree, x.weight + y.weight))
    }

    fn two_trees(&self, x: &HClass, y: &HClass, z: &HClass) -> Result<(Element, Element), TransferError> {
        let t1 = self.cx.project(&x.element.wedge(&self.cx.homotopy(&y.element.wedge(&z.element))?))?;
        let t2 = self.cx.project(&self.cx.homotopy(&x.element.wedge(&y.element))?.wedge(&z.element))?;
        Ok((t1, t2))
    }

    /// `m_3(x, y, z) = p(x ∧ h(y∧z)) - p(h(x∧y) ∧ z)`.
    pub fn m3(&self, x: &HClass, y: &HClass, z: &HClass) -> Result<HClass, TransferError> {
        self.ternary(TernaryProduct::Literal, x, y, z)
    }

    /// `(-1)^{|x|} p(x ∧ h(y∧z)) - p(h(x∧y) ∧ z)`.
    pub fn m3_graded(&self, x: &HClass, y: &HClass, z: &HClass) -> Result<HClass, TransferError> {
        self.ternary(TernaryProduct::Graded, x, y, z)
    }

    pub fn ternary(&self, kind: TernaryProduct, x: &HClass, y: &HClass, z: &HClass) -> Result<HClass, TransferError> {
        let (t1, t2) = self.two_trees(x, y, z)?;
        let t1 = if kind == TernaryProduct::Graded && x.degree % 2 == 1 { -&t1 } else { t1 };
        Ok(HClass::from_parts(&t1 - &t2, output_degree(&[x, y, z]), x.weight + y.weight + z.weight))
    }

    /// `m_k` from the tree recursion with the configured sign variant.
    pub fn mn(&self, args: &[&HClass]) -> Result<HClass, TransferError> {
        let v = self.config.sign_variant.ok_or(TransferError::Uncalibrated)?;
        self.mn_with(v, args)
    }

    pub fn mn_with(&self, variant: SignVariant, args: &[&HClass]) -> Result<HClass, TransferError> {
        let k = args.len();
        if k < 2 {
            return Err(TransferError::ArityTooSmall(k));
        }
        if k > self.config.max_arity {
            return Err(TransferError::CostGuard { what: "arity", value: k, limit: self.config.max_arity });
        }
        let degree = output_degree(args);
        let weight = args.iter().map(|a| a.weight).sum();
        if args.iter().any(|a| a.is_zero()) {
            return Ok(HClass::zero(degree, weight));
        }
        // phi[(i, j)] for the half-open interval i..j
        let mut phi: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for (i, a) in args.iter().enumerate() {
            phi.insert((i, i + 1), a.element.clone());
        }
        let mut prefix = vec![0usize; k + 1];
        for i in 0..k {
            prefix[i + 1] = prefix[i] + args[i].degree;
        }
        for len in 2..=k {
            for i in 0..=k - len {
                let j = i + len;
                let mut lambda = Element::zero();
                for u in 1..len {
                    let v = len - u;
                    let (left, right) = (&phi[&(i, i + u)], &phi[&(i + u, j)]);
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    let koszul_odd = v % 2 == 0 && (prefix[i + u] - prefix[i]) % 2 == 1;
                    let sign = variant.eps(u, v) * if koszul_odd { -1 } else { 1 };
                    let w = left.wedge(right);
                    lambda += &if sign > 0 { w } else { -&w };
                }
                let value = if len == k { self.cx.project(&lambda)? } else { self.cx.homotopy(&lambda)? };
                phi.insert((i, j), value);
            }
        }
        Ok(HClass::from_parts(phi.remove(&(0, k)).expect("full interval"), degree, weight))
    }
}

/// Sign convention for shuffle products of tensor words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShuffleSigns {
    /// Koszul sign of the permutation for the letters' own degrees; the plain
    /// permutation sign on degree-1 letters.
    Permutation,
    /// Sign induced through the suspension `s^{-1}` of the bar construction;
    /// all signs are `+` on degree-1 letters and two-letter shuffles reduce
    /// to graded commutativity.
    Suspended,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleTerm {
    pub sign: i8,
    /// Word order: position `j` holds input letter `order[j]`.
    pub order: Vec<usize>,
}

/// Koszul sign of reordering letters of the given degrees into `order`.
pub fn koszul_sign(order: &[usize], degrees: &[i64]) -> i8 {
    let mut s = 1i8;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] && (degrees[order[a]] * degrees[order[b]]).rem_euclid(2) == 1 {
                s = -s;
            }
        }
    }
    s
}

/// All `(p, q)`-shuffles of letters `0..p` with `p..p+q`, with signs.
pub fn shuffle_tensor(p: usize, q: usize, degrees: &[usize], signs: ShuffleSigns) -> Vec<ShuffleTerm> {
    assert_eq!(degrees.len(), p + q);
    let n = p + q;
    let mut out = Vec::new();
    let mut order = Vec::with_capacity(n);
    fn rec(i: usize, j: usize, p: usize, q: usize, order: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == p && j == q {
            out.push(order.clone());
            return;
        }
        if i < p {
            order.push(i);
            rec(i + 1, j, p, q, order, out);
            order.pop();
        }
        if j < q {
            order.push(p + j);
            rec(i, j + 1, p, q, order, out);
            order.pop();
        }
    }
    let mut orders = Vec::new();
    rec(0, 0, p, q, &mut order, &mut orders);
    let degs: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    let shifted: Vec<i64> = degs.iter().map(|d| d - 1).collect();
    // desuspension sign of a word, relative to the identity word
    let desusp = |ord: &[usize]| -> i64 { ord.iter().enumerate().map(|(j, &a)| (n - 1 - j) as i64 * degs[a]).sum() };
    let base = desusp(&(0..n).collect::<Vec<_>>());
    for ord in orders {
        let sign = match signs {
            ShuffleSigns::Permutation => koszul_sign(&ord, &degs),
            ShuffleSigns::Suspended => {
                let s = koszul_sign(&ord, &shifted);
                if (desusp(&ord) - base).rem_euclid(2) == 1 {
                    -s
                } else {
                    s
                }
            }
        };
        out.push(ShuffleTerm { sign, order: ord });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub seed: u64,
    /// Mixed-degree tuples drawn per arity.
    pub samples: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { seed: 0x5eed_c0de, samples: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityStats {
    pub arity: usize,
    pub degree_one_tuples: usize,
    pub sampled_tuples: usize,
    /// Tuples where at least one summand was nonzero.
    pub nontrivial: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub arity: usize,
    pub args: Vec<String>,
    pub residual: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub dim_v: usize,
    pub variant: String,
    pub arities: Vec<ArityStats>,
    pub failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn tuples(&self) -> usize {
        self.arities.iter().map(|a| a.degree_one_tuples + a.sampled_tuples).sum()
    }
}

/// Any operation on harmonic classes that the identity checkers can drive.
pub trait Operations: Sync {
    fn op(&self, args: &[&HClass]) -> Result<HClass, TransferError>;
}

/// The recursion with a fixed sign variant.
pub struct Recursion<'t, 'a> {
    pub transfer: &'t Transfer<'a>,
    pub variant: SignVariant,
}

impl Operations for Recursion<'_, '_> {
    fn op(&self, args: &[&HClass]) -> Result<HClass, TransferError> {
        self.transfer.mn_with(self.variant, args)
    }
}

/// `m_2` together with a chosen two-tree `m_3`; zero in arity above three.
pub struct TwoTree<'t, 'a> {
    pub transfer: &'t Transfer<'a>,
    pub kind: TernaryProduct,
}

impl Operations for TwoTree<'_, '_> {
    fn op(&self, args: &[&HClass]) -> Result<HClass, TransferError> {
        match args {
            [x, y] => self.transfer.m2(x, y),
            [x, y, z] => self.transfer.ternary(self.kind, x, y, z),
            _ => Ok(HClass::zero(output_degree(args), args.iter().map(|a| a.weight).sum())),
        }
    }
}

/// Which form of the Stasheff identities to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StasheffSigns {
    /// `Σ (-1)^{r+st} m(1^r ⊗ m_s ⊗ 1^t)` with the Koszul rule for `1^r ⊗ m_s`.
    Koszul,
    /// `Σ (-1)^{r+st} m(…, m_s(…), …)` evaluated on elements, no Koszul sign.
    Elementwise,
}

/// Left side of the arity-`n` Stasheff identity at the given inputs.
pub fn stasheff_residual(
    ops: &dyn Operations,
    args: &[&HClass],
    signs: StasheffSigns,
) -> Result<(Element, bool), TransferError> {
    let n = args.len();
    let mut total = Element::zero();
    let mut nontrivial = false;
    for s in 2..n {
        for r in 0..=n - s {
            let t = n - r - s;
            let inner = ops.op(&args[r..r + s])?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_args: Vec<&HClass> = args[..r].to_vec();
            outer_args.push(&inner);
            outer_args.extend_from_slice(&args[r + s..]);
            let out = ops.op(&outer_args)?;
            if out.is_zero() {
                continue;
            }
            nontrivial = true;
            let pre: usize = args[..r].iter().map(|a| a.degree).sum();
            let mut exp = r + s * t;
            if signs == StasheffSigns::Koszul {
                // |m_s| = 2 - s
                exp += (s % 2) * (pre % 2);
            }
            total += &if exp.is_multiple_of(2) { out.element } else { -&out.element };
        }
    }
    Ok((total, nontrivial))
}

/// `Σ_σ sign(σ) m_{p+q}(x_σ)` over the `(p, q)`-shuffles.
pub fn shuffle_residual(
    ops: &dyn Operations,
    args: &[&HClass],
    p: usize,
    signs: ShuffleSigns,
) -> Result<(Element, bool), TransferError> {
    let degrees: Vec<usize> = args.iter().map(|a| a.degree).collect();
    let mut total = Element::zero();
    let mut nontrivial = false;
    for term in shuffle_tensor(p, args.len() - p, &degrees, signs) {
        let permuted: Vec<&HClass> = term.order.iter().map(|&i| args[i]).collect();
        let out = ops.op(&permuted)?;
        if !out.is_zero() {
            nontrivial = true;
            total += &if term.sign > 0 { out.element } else { -&out.element };
        }
    }
    Ok((total, nontrivial))
}

fn all_tuples(items: &[HClass], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| (0..items.len()).map(move |i| {
                let mut t = t.clone();
                t.push(i);
                t
            }))
            .collect();
    }
    out
}

fn sampled_tuples(n_items: usize, k: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let idx: Vec<usize> = (0..n_items).collect();
    (0..count).map(|_| (0..k).map(|_| *idx.choose(&mut rng).expect("nonempty")).collect()).collect()
}

type Residual<'a> = dyn Fn(&[&HClass]) -> Result<(Element, bool, String), TransferError> + Sync + 'a;

/// Drives a residual over degree-1 tuples (exhaustive) and sampled tuples
/// drawn from the whole harmonic basis.
fn run_identity(
    transfer: &Transfer,
    identity: &str,
    variant: String,
    arities: std::ops::RangeInclusive<usize>,
    sampling: SamplingConfig,
    residual: &Residual<'_>,
) -> Result<IdentityReport, TransferError> {
    let cx = transfer.complex();
    let ones = transfer.degree_one();
    let basis = transfer.harmonic_basis()?;
    let mut stats = Vec::new();
    let mut failure = None;
    for k in arities {
        let exhaustive = all_tuples(&ones, k);
        let sampled = sampled_tuples(basis.len(), k, sampling.samples, sampling.seed);
        let jobs: Vec<(bool, &Vec<usize>)> =
            exhaustive.iter().map(|t| (true, t)).chain(sampled.iter().map(|t| (false, t))).collect();
        let results: Vec<Result<(Element, bool, String), TransferError>> = jobs
            .par_iter()
            .map(|(deg1, t)| {
                let src = if *deg1 { &ones } else { &basis };
                let args: Vec<&HClass> = t.iter().map(|&i| &src[i]).collect();
                residual(&args)
            })
            .collect();
        let mut nontrivial = 0;
        for ((deg1, t), r) in jobs.iter().zip(results) {
            let (res, nt, detail) = r?;
            nontrivial += nt as usize;
            if !res.is_zero() && failure.is_none() {
                let src = if *deg1 { &ones } else { &basis };
                failure = Some(IdentityFailure {
                    arity: k,
                    args: t.iter().map(|&i| cx.algebra().render(src[i].element())).collect(),
                    residual: cx.algebra().render(&res),
                    detail,
                });
            }
        }
        stats.push(ArityStats { arity: k, degree_one_tuples: exhaustive.len(), sampled_tuples: sampled.len(), nontrivial });
        if failure.is_some() {
            break;
        }
    }
    Ok(IdentityReport { identity: identity.to_string(), dim_v: cx.dim_v(), variant, arities: stats, failure })
}

pub fn check_stasheff_ops(
    transfer: &Transfer,
    ops: &dyn Operations,
    label: String,
    max_arity: usize,
    signs: StasheffSigns,
    sampling: SamplingConfig,
) -> Result<IdentityReport, TransferError> {
    let residual = |args: &[&HClass]| -> Result<(Element, bool, String), TransferError> {
        let (r, nt) = stasheff_residual(ops, args, signs)?;
        Ok((r, nt, format!("SI({})", args.len())))
    };
    run_identity(transfer, "stasheff", label, 3..=max_arity, sampling, &residual)
}

pub fn check_cinfty_ops(
    transfer: &Transfer,
    ops: &dyn Operations,
    label: String,
    max_arity: usize,
    signs: ShuffleSigns,
    sampling: SamplingConfig,
) -> Result<IdentityReport, TransferError> {
    let residual = |args: &[&HClass]| -> Result<(Element, bool, String), TransferError> {
        let mut any = false;
        for p in 1..args.len() {
            let (r, nt) = shuffle_residual(ops, args, p, signs)?;
            any |= nt;
            if !r.is_zero() {
                return Ok((r, true, format!("Sh({},{})", p, args.len() - p)));
            }
        }
        Ok((Element::zero(), any, String::new()))
    };
    run_identity(transfer, "cinfty", label, 2..=max_arity, sampling, &residual)
}

impl Transfer<'_> {
    fn checked_variant(&self) -> Result<SignVariant, TransferError> {
        self.config.sign_variant.ok_or(TransferError::Uncalibrated)
    }

    /// Stasheff identities `SI(3..=n_max)` for the calibrated recursion.
    pub fn check_stasheff(&self, n_max: usize, sampling: SamplingConfig) -> Result<IdentityReport, TransferError> {
        let v = self.checked_variant()?;
        self.check_stasheff_with(v, n_max, sampling)
    }

    pub fn check_stasheff_with(
        &self,
        v: SignVariant,
        n_max: usize,
        sampling: SamplingConfig,
    ) -> Result<IdentityReport, TransferError> {
        let ops = Recursion { transfer: self, variant: v };
        check_stasheff_ops(self, &ops, v.to_string(), n_max, StasheffSigns::Koszul, sampling)
    }

    /// Shuffle relations in arities `2..=n_max` for the calibrated recursion.
    pub fn check_cinfty(&self, n_max: usize, sampling: SamplingConfig) -> Result<IdentityReport, TransferError> {
        let v = self.checked_variant()?;
        self.check_cinfty_with(v, n_max, sampling)
    }

    pub fn check_cinfty_with(
        &self,
        v: SignVariant,
        n_max: usize,
        sampling: SamplingConfig,
    ) -> Result<IdentityReport, TransferError> {
        let ops = Recursion { transfer: self, variant: v };
        check_cinfty_ops(self, &ops, v.to_string(), n_max, ShuffleSigns::Suspended, sampling)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum CalibrationError {
    #[error("no sign variant passes")]
    NoVariantPasses,
    #[error("multiple variants pass: {0:?}")]
    MultipleVariantsPass(Vec<SignVariant>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantVerdict {
    pub variant: SignVariant,
    /// Recursion's `m_2` equals `p(x ∧ y)`.
    pub reproduces_m2: bool,
    /// Recursion's `m_3` equals the graded two-tree formula.
    pub reproduces_m3: bool,
    /// Recursion's `m_3` equals the literal two-tree formula on degree-1 triples.
    pub reproduces_literal_m3: bool,
    pub stasheff: bool,
    pub cinfty: bool,
    pub tuples_checked: usize,
}

impl VariantVerdict {
    pub fn passes(&self) -> bool {
        self.reproduces_m2 && self.reproduces_m3 && self.stasheff && self.cinfty
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationOptions {
    pub reproduce_dim_v: usize,
    pub identity_dims: Vec<usize>,
    pub max_arity: usize,
    pub sampling: SamplingConfig,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        CalibrationOptions { reproduce_dim_v: 3, identity_dims: vec![2, 3], max_arity: 4, sampling: SamplingConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub verdicts: Vec<VariantVerdict>,
    pub outcome: Result<SignVariant, CalibrationError>,
}

/// Runs every sign variant through the reproduction test and the identity
/// checks; succeeds only if exactly one variant passes everything.
pub fn calibrate_signs(opts: &CalibrationOptions) -> Result<CalibrationReport, TransferError> {
    let cx3 = CeComplex::new(opts.reproduce_dim_v)?;
    let t3 = Transfer::new(&cx3, TransferConfig::default());
    let ones = t3.degree_one();
    let basis = t3.harmonic_basis()?;
    let triples: Vec<Vec<&HClass>> = all_tuples(&ones, 3)
        .into_iter()
        .map(|t| t.iter().map(|&i| &ones[i]).collect())
        .chain(
            sampled_tuples(basis.len(), 3, opts.sampling.samples, opts.sampling.seed)
                .into_iter()
                .map(|t| t.iter().map(|&i| &basis[i]).collect()),
        )
        .collect();
    let pairs: Vec<Vec<&HClass>> = sampled_tuples(basis.len(), 2, opts.sampling.samples, opts.sampling.seed)
        .into_iter()
        .map(|t| t.iter().map(|&i| &basis[i]).collect())
        .chain(all_tuples(&ones, 2).into_iter().map(|t| t.iter().map(|&i| &ones[i]).collect()))
        .collect();
    let complexes: Vec<CeComplex> = opts.identity_dims.iter().map(|&n| CeComplex::new(n)).collect::<Result<_, _>>()?;
    let mut verdicts = Vec::new();
    for v in SignVariant::ALL {
        let mut reproduces_m2 = true;
        for args in &pairs {
            if t3.mn_with(v, args)? != t3.m2(args[0], args[1])? {
                reproduces_m2 = false;
                break;
            }
        }
        let mut reproduces = true;
        for args in &triples {
            let rec = t3.mn_with(v, args)?;
            if rec != t3.m3_graded(args[0], args[1], args[2])? {
                reproduces = false;
                break;
            }
        }
        let mut literal = true;
        for args in triples.iter().filter(|a| a.iter().all(|x| x.degree == 1)) {
            if t3.mn_with(v, args)? != t3.m3(args[0], args[1], args[2])? {
                literal = false;
                break;
            }
        }
        let mut stasheff = true;
        let mut cinfty = true;
        let mut tuples = 0;
        for cx in &complexes {
            let t = Transfer::new(cx, TransferConfig::default());
            let s = t.check_stasheff_with(v, opts.max_arity, opts.sampling)?;
            let c = t.check_cinfty_with(v, opts.max_arity, opts.sampling)?;
            tuples += s.tuples() + c.tuples();
            stasheff &= s.passed();
            cinfty &= c.passed();
        }
        verdicts.push(VariantVerdict {
            variant: v,
            reproduces_m2,
            reproduces_m3: reproduces,
            reproduces_literal_m3: literal,
            stasheff,
            cinfty,
            tuples_checked: tuples,
        });
    }
    let passing: Vec<SignVariant> = verdicts.iter().filter(|v| v.passes()).map(|v| v.variant).collect();
    let outcome = match passing.as_slice() {
        [] => Err(CalibrationError::NoVariantPasses),
        [one] => Ok(*one),
        many => Err(CalibrationError::MultipleVariantsPass(many.to_vec())),
    };
    Ok(CalibrationReport { verdicts, outcome })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantComparison {
    pub dim_v: usize,
    pub arity: usize,
    pub tuples: usize,
    pub nonzero_outputs: usize,
    pub disagreements: usize,
}

/// Evaluates `m_k` under two variants on sampled tuples and counts where they differ.
pub fn compare_variants(
    transfer: &Transfer,
    a: SignVariant,
    b: SignVariant,
    arity: usize,
    sampling: SamplingConfig,
) -> Result<VariantComparison, TransferError> {
    let basis: Vec<HClass> = transfer.harmonic_basis()?.into_iter().filter(|x| x.degree > 0).collect();
    let tuples = sampled_tuples(basis.len(), arity, sampling.samples, sampling.seed);
    let results: Vec<Result<(bool, bool), TransferError>> = tuples
        .par_iter()
        .map(|t| {
            let args: Vec<&HClass> = t.iter().map(|&i| &basis[i]).collect();
            let x = transfer.mn_with(a, &args)?;
            let y = transfer.mn_with(b, &args)?;
            Ok((!x.is_zero() || !y.is_zero(), x != y))
        })
        .collect();
    let mut nonzero = 0;
    let mut differ = 0;
    for r in results {
        let (nz, d) = r?;
        nonzero += nz as usize;
        differ += d as usize;
    }
    Ok(VariantComparison { dim_v: transfer.complex().dim_v(), arity, tuples: tuples.len(), nonzero_outputs: nonzero, disagreements: differ })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceClosure {
    pub degree: usize,
    pub weight: usize,
    pub closure_dim: usize,
    pub homology_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookStep {
    /// Source hook `(k+1, 1^k)`; the step reaches `(k+2, 1^{k+1})`.
    pub k: usize,
    pub target_degree: usize,
    pub target_weight: usize,
    pub reached: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub dim_v: usize,
    pub ternary: TernaryProduct,
    pub rounds: usize,
    pub slices: Vec<SliceClosure>,
    pub hook_chain: Vec<HookStep>,
}

impl ClosureReport {
    pub fn equals_homology(&self) -> bool {
        self.slices.iter().all(|s| s.closure_dim == s.homology_dim)
    }

    pub fn hooks_reached(&self) -> bool {
        self.hook_chain.iter().all(|h| h.reached == h.expected)
    }
}

/// Incrementally maintained span of coordinate vectors.
#[derive(Default)]
struct Span {
    rows: BTreeMap<usize, Vec<Rational>>,
}

impl Span {
    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (&piv, row) in &self.rows {
            if !v[piv].is_zero() {
                let f = v[piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let v = self.reduce(v);
        let Some(piv) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &v[piv];
        let v: Vec<Rational> = v.iter().map(|x| x * &inv).collect();
        for row in self.rows.values_mut() {
            if !row[piv].is_zero() {
                let f = row[piv].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x -= &f * r;
                }
            }
        }
        self.rows.insert(piv, v);
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Closes `H^0 ⊕ H^1` under `m_2` and a two-tree `m_3` and compares the span
/// with the full cohomology, slice by slice. Also follows the hook chain
/// `m_3(e, V_(k+1,1^k), e)`.
pub fn generation_closure(cx: &CeComplex, ternary: TernaryProduct) -> Result<ClosureReport, TransferError> {
    let t = Transfer::new(cx, TransferConfig::default());
    type Key = (usize, MultiDegree);
    let mut spans: BTreeMap<Key, Span> = BTreeMap::new();
    let mut full: BTreeMap<Key, usize> = BTreeMap::new();
    for p in 0..=cx.top_degree() {
        for (md, _) in cx.harmonic_basis(p)? {
            *full.entry((p, md)).or_insert(0) += 1;
        }
    }
    let coords = |p: usize, md: &MultiDegree, x: &Element| cx.block(md).coords(p, x);
    let mut members: Vec<HClass> = Vec::new();
    let mut frontier: Vec<HClass> = Vec::new();
    let unit = HClass::from_parts(Element::one(), 0, 0);
    for x in std::iter::once(unit).chain(t.degree_one()) {
        let md = x.multidegree(cx).expect("homogeneous");
        if spans.entry((x.degree, md.clone())).or_default().insert(&coords(x.degree, &md, &x.element)) {
            frontier.push(x);
        }
    }
    let is_full = |spans: &BTreeMap<Key, Span>, key: &Key| {
        spans.get(key).map_or(0, |s| s.dim()) >= full.get(key).copied().unwrap_or(0)
    };
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        let old_len = members.len();
        members.append(&mut frontier);
        let n_all = members.len();
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        // tuples using at least one member added this round
        for a in 0..n_all {
            for b in 0..n_all {
                if a >= old_len || b >= old_len {
                    candidates.push(vec![a, b]);
                }
                for c in 0..n_all {
                    if a >= old_len || b >= old_len || c >= old_len {
                        candidates.push(vec![a, b, c]);
                    }
                }
            }
        }
        let target = |idx: &[usize]| -> Key {
            let deg: usize = idx.iter().map(|&i| members[i].degree).sum::<usize>() + 2 - idx.len();
            let md = idx.iter().fold(MultiDegree::zero(cx.dim_v()), |acc, &i| {
                acc.add(&members[i].multidegree(cx).expect("homogeneous"))
            });
            (deg, md)
        };
        let mut useful: Vec<Vec<usize>> = Vec::new();
        for idx in candidates {
            if idx.iter().any(|&i| members[i].degree == 0) {
                continue;
            }
            let key = target(&idx);
            if full.contains_key(&key) && !is_full(&spans, &key) {
                useful.push(idx);
            }
        }
        let outputs: Vec<Result<HClass, TransferError>> = useful
            .par_iter()
            .map(|idx| match idx.as_slice() {
                [a, b] => t.m2(&members[*a], &members[*b]),
                [a, b, c] => t.ternary(ternary, &members[*a], &members[*b], &members[*c]),
                _ => unreachable!(),
            })
            .collect();
        for (idx, out) in useful.iter().zip(outputs) {
            let out = out?;
            if out.is_zero() {
                continue;
            }
            let key = target(idx);
            if is_full(&spans, &key) {
                continue;
            }
            if spans.entry(key.clone()).or_default().insert(&coords(key.0, &key.1, &out.element)) {
                frontier.push(out);
            }
        }
    }
    let mut by_slice: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (key, &d) in &full {
        let e = by_slice.entry((key.0, key.1.weight())).or_insert((0, 0));
        e.0 += spans.get(key).map_or(0, |s| s.dim());
        e.1 += d;
    }
    let slices = by_slice
        .into_iter()
        .map(|((degree, weight), (closure_dim, homology_dim))| SliceClosure { degree, weight, closure_dim, homology_dim })
        .collect();
    let hook_chain = hook_chain(&t, ternary, &full)?;
    Ok(ClosureReport { dim_v: cx.dim_v(), ternary, rounds, slices, hook_chain })
}

/// Hook slices sit at `(degree k+1, weight 2k+1)`; each step spans the next
/// one from `m_3(e_a, x, e_b)`.
fn hook_chain(
    t: &Transfer,
    ternary: TernaryProduct,
    full: &BTreeMap<(usize, MultiDegree), usize>,
) -> Result<Vec<HookStep>, TransferError> {
    let cx = t.complex();
    let ones = t.degree_one();
    let slice_dim = |p: usize, w: usize| -> usize {
        full.iter().filter(|((q, md), _)| *q == p && md.weight() == w).map(|(_, d)| d).sum()
    };
    let mut steps = Vec::new();
    for k in 0.. {
        let (sp, sw) = (k + 1, 2 * k + 1);
        let (tp, tw) = (k + 2, 2 * k + 3);
        let expected = slice_dim(tp, tw);
        if expected == 0 || slice_dim(sp, sw) == 0 {
            break;
        }
        let sources: Vec<HClass> = t.harmonic_basis()?.into_iter().filter(|x| x.degree == sp && x.weight == sw).collect();
        let mut spans: BTreeMap<MultiDegree, Span> = BTreeMap::new();
        for x in &sources {
            for a in &ones {
                for b in &ones {
                    let out = t.ternary(ternary, a, x, b)?;
                    if let Some(md) = out.multidegree(cx) {
                        let v = cx.block(&md).coords(tp, out.element());
                        spans.entry(md).or_default().insert(&v);
                    }
                }
            }
        }
        let reached = spans.values().map(|s| s.dim()).sum();
        steps.push(HookStep { k, target_degree: tp, target_weight: tw, reached, expected });
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_values() {
        assert_eq!(SignVariant::UPlusOne.eps(1, 1), 1);
        assert_eq!(SignVariant::U.eps(1, 1), -1);
        assert_eq!(SignVariant::UPlusOne.eps(2, 2), -1);
        assert_eq!(SignVariant::VTimesUPlusOne.eps(2, 2), 1);
        for v in SignVariant::ALL {
            assert_eq!(SignVariant::parse(v.formula()), Some(v));
        }
    }

    #[test]
    fn shuffle_counts_and_degree_one_signs() {
        let perm = shuffle_tensor(1, 2, &[1, 1, 1], ShuffleSigns::Permutation);
        let signs: Vec<i8> = perm.iter().map(|t| t.sign).collect();
        assert_eq!(perm.len(), 3);
        assert_eq!(signs, vec![1, -1, 1]);
        let susp = shuffle_tensor(1, 2, &[1, 1, 1], ShuffleSigns::Suspended);
        assert!(susp.iter().all(|t| t.sign == 1));
        assert_eq!(shuffle_tensor(2, 3, &[1; 5], ShuffleSigns::Permutation).len(), 10);
    }

    #[test]
    fn two_letter_suspended_shuffle_is_graded_commutator() {
        for (a, b) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3)] {
            let terms = shuffle_tensor(1, 1, &[a, b], ShuffleSigns::Suspended);
            assert_eq!(terms[0].sign, 1);
            let expect = if (a * b) % 2 == 1 { 1 } else { -1 };
            assert_eq!(terms[1].sign, expect, "degrees {a},{b}");
        }
    }
}
