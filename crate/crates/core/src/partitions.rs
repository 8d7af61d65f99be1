//! Integer partitions, Schur polynomials and the two generating-function
//! identities that govern the cohomology: Littlewood's expansion and the
//! Hilbert series numerator.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("parts must be positive: {0:?}")]
    ZeroPart(Vec<usize>),
}

/// A partition with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    /// Drops zero parts and sorts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows, i.e. the length.
    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Side of the Durfee square.
    pub fn rank(&self) -> usize {
        self.0.iter().enumerate().take_while(|&(i, &p)| p > i).count()
    }

    /// Frobenius coordinates `(a_1..a_r | b_1..b_r)`.
    pub fn frobenius(&self) -> (Vec<usize>, Vec<usize>) {
        let c = self.conjugate();
        let r = self.rank();
        ((0..r).map(|i| self.0[i] - i - 1).collect(), (0..r).map(|i| c.0[i] - i - 1).collect())
    }

    pub fn from_frobenius(a: &[usize], b: &[usize]) -> Partition {
        assert_eq!(a.len(), b.len());
        let r = a.len();
        let mut parts: Vec<usize> = (0..r).map(|i| a[i] + i + 1).collect();
        let height = b.first().map_or(0, |&b0| b0 + 1);
        for i in r..height {
            // column j reaches down to row j + b_j
            parts.push((0..r).filter(|&j| b[j] + j >= i).count());
        }
        Partition::new(parts).expect("valid Frobenius coordinates")
    }

    /// Homological degree `(|λ| + rank) / 2` of the cohomology component.
    pub fn hom_degree(&self) -> usize {
        (self.size() + self.rank()) / 2
    }

    /// Boxes `(row, col)` in reading order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let c = self.conjugate();
        (self.0[i] - j - 1) + (c.0[j] - i - 1) + 1
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Size first, then reverse-lexicographic: (3) < (2,1) < (1,1,1) < (4) < ...
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `m`, in reverse-lexicographic order.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Self-conjugate partitions with `(|λ| + rank)/2 == p`, ascending.
///
/// These correspond to partitions of `p` into distinct parts `a_i + 1`,
/// where `(a | a)` are the Frobenius coordinates.
pub fn self_conjugate_by_degree(p: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part - 1, cur, out);
            cur.pop();
        }
    }
    let mut strict = Vec::new();
    rec(p, p, &mut Vec::new(), &mut strict);
    let mut out: Vec<Partition> = strict
        .into_iter()
        .map(|s| {
            let a: Vec<usize> = s.iter().map(|x| x - 1).collect();
            self_conjugate_from_arms(&a)
        })
        .collect();
    out.sort();
    out
}

fn self_conjugate_from_arms(a: &[usize]) -> Partition {
    Partition::from_frobenius(a, a)
}

/// Dimension of the irreducible GL(n)-module with highest weight `λ`, by the
/// hook-content formula. Zero when `λ` has more than `n` rows.
pub fn schur_dim(lambda: &Partition, n: usize) -> u64 {
    let mut num = BigInt::one();
    let mut den = BigUint::one();
    for (i, j) in lambda.boxes() {
        let content = j as i64 - i as i64;
        num *= BigInt::from(n as i64 + content);
        den *= BigUint::from(lambda.hook_length(i, j));
    }
    if num.is_zero() {
        return 0;
    }
    let q = num / BigInt::from(den);
    q.to_u64().expect("dimension fits in u64")
}

/// Visits the content vector of every semistandard tableau of shape `λ` with
/// entries in `1..=k`.
pub fn for_each_ssyt(lambda: &Partition, k: usize, mut visit: impl FnMut(&[u32])) {
    let boxes: Vec<(usize, usize)> = lambda.boxes().collect();
    let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&p| vec![0; p]).collect();
    let mut content = vec![0u32; k];
    fn rec(
        idx: usize,
        boxes: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        content: &mut Vec<u32>,
        k: usize,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if idx == boxes.len() {
            visit(content);
            return;
        }
        let (i, j) = boxes[idx];
        let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=k {
            grid[i][j] = v;
            content[v - 1] += 1;
            rec(idx + 1, boxes, grid, content, k, visit);
            content[v - 1] -= 1;
        }
    }
    rec(0, &boxes, &mut grid, &mut content, k, &mut visit);
}

pub fn count_ssyt(lambda: &Partition, k: usize) -> u64 {
    let mut c = 0;
    for_each_ssyt(lambda, k, |_| c += 1);
    c
}

/// Polynomial in `vars` variables with integer coefficients, truncated above
/// total degree `max_degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSymPoly {
    vars: usize,
    max_degree: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl TruncatedSymPoly {
    pub fn zero(vars: usize, max_degree: u32) -> Self {
        TruncatedSymPoly { vars, max_degree, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize, max_degree: u32) -> Self {
        Self::monomial(vars, max_degree, vec![0; vars], BigInt::one())
    }

    pub fn monomial(vars: usize, max_degree: u32, exps: Vec<u32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), vars);
        let mut p = Self::zero(vars, max_degree);
        p.add_term(exps, coeff);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn variable(vars: usize, max_degree: u32, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, max_degree, e, BigInt::one())
    }

    /// Complete homogeneous symmetric polynomial `h_m`.
    pub fn complete(vars: usize, max_degree: u32, m: u32) -> Self {
        let mut p = Self::zero(vars, max_degree);
        if m > max_degree {
            return p;
        }
        for e in compositions(m, vars) {
            p.add_term(e, BigInt::one());
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        if exps.iter().sum::<u32>() > self.max_degree || coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        assert_eq!(self.max_degree, other.max_degree, "truncation mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero(self.vars, self.max_degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() > self.max_degree {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncatedSymPoly { vars: self.vars, max_degree: self.max_degree, terms: acc }
    }

    /// Value at `x_i = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// First exponent (in key order) where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<u32>, BigInt, BigInt)> {
        let keys: std::collections::BTreeSet<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| (k.clone(), self.coeff(k), other.coeff(k)))
            .find(|(_, a, b)| a != b)
    }

    /// Coefficients of a univariate polynomial, index = degree.
    pub fn univariate_coeffs(&self) -> Vec<BigInt> {
        assert_eq!(self.vars, 1);
        (0..=self.max_degree).map(|d| self.coeff(&[d])).collect()
    }
}

/// Exponent vectors of `vars` entries summing to `m`.
fn compositions(m: u32, vars: usize) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=m).rev() {
        for mut rest in compositions(m - first, vars - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchurMethod {
    /// Sum over semistandard tableaux.
    Ssyt,
    /// Determinant of complete homogeneous polynomials.
    JacobiTrudi,
}

pub fn schur_poly(lambda: &Partition, vars: usize, max_degree: u32, method: SchurMethod) -> TruncatedSymPoly {
    match method {
        SchurMethod::Ssyt => {
            let mut p = TruncatedSymPoly::zero(vars, max_degree);
            if lambda.size() as u32 > max_degree {
                return p;
            }
            for_each_ssyt(lambda, vars, |c| p.add_term(c.to_vec(), BigInt::one()));
            p
        }
        SchurMethod::JacobiTrudi => jacobi_trudi(lambda, vars, max_degree),
    }
}

fn jacobi_trudi(lambda: &Partition, vars: usize, max_degree: u32) -> TruncatedSymPoly {
    let l = lambda.height();
    if l == 0 {
        return TruncatedSymPoly::one(vars, max_degree);
    }
    let mut h_cache: HashMap<i64, TruncatedSymPoly> = HashMap::new();
    let mut h = |m: i64| -> TruncatedSymPoly {
        h_cache
            .entry(m)
            .or_insert_with(|| {
                if m < 0 {
                    TruncatedSymPoly::zero(vars, max_degree)
                } else {
                    TruncatedSymPoly::complete(vars, max_degree, m as u32)
                }
            })
            .clone()
    };
    let entry: Vec<Vec<TruncatedSymPoly>> = (0..l)
        .map(|i| (0..l).map(|j| h(lambda.parts()[i] as i64 - i as i64 + j as i64)).collect())
        .collect();
    // Laplace expansion along rows, memoised on the set of used columns
    let mut memo: HashMap<u32, TruncatedSymPoly> = HashMap::new();
    fn det(
        used: u32,
        l: usize,
        entry: &[Vec<TruncatedSymPoly>],
        memo: &mut HashMap<u32, TruncatedSymPoly>,
        vars: usize,
        max_degree: u32,
    ) -> TruncatedSymPoly {
        let row = used.count_ones() as usize;
        if row == l {
            return TruncatedSymPoly::one(vars, max_degree);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = TruncatedSymPoly::zero(vars, max_degree);
        let mut free_pos = 0;
        for c in 0..l {
            if used & (1 << c) != 0 {
                continue;
            }
            if !entry[row][c].is_zero() {
                let minor = det(used | (1 << c), l, entry, memo, vars, max_degree);
                let term = entry[row][c].mul(&minor);
                acc = if free_pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            free_pos += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    det(0, l, &entry, &mut memo, vars, max_degree)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LittlewoodReport {
    pub vars: usize,
    pub max_degree: u32,
    pub equal: bool,
    /// `(exponent, lhs coefficient, rhs coefficient)` at the first mismatch.
    pub first_difference: Option<(Vec<u32>, String, String)>,
    pub terms_compared: usize,
    pub partitions_used: usize,
}

/// Left side `∏(1 - x_i) ∏_{i<j} (1 - x_i x_j)`, truncated.
pub fn littlewood_product(k: usize, max_degree: u32) -> TruncatedSymPoly {
    let one = TruncatedSymPoly::one(k, max_degree);
    let mut lhs = one.clone();
    for i in 0..k {
        lhs = lhs.mul(&one.sub(&TruncatedSymPoly::variable(k, max_degree, i)));
    }
    for i in 0..k {
        for j in i + 1..k {
            let xij = TruncatedSymPoly::variable(k, max_degree, i).mul(&TruncatedSymPoly::variable(k, max_degree, j));
            lhs = lhs.mul(&one.sub(&xij));
        }
    }
    lhs
}

/// Right side: signed sum of Schur polynomials over self-conjugate partitions.
pub fn littlewood_sum(k: usize, max_degree: u32, method: SchurMethod) -> (TruncatedSymPoly, usize) {
    let mut rhs = TruncatedSymPoly::zero(k, max_degree);
    let mut used = 0;
    for p in 0..=max_degree as usize {
        for lambda in self_conjugate_by_degree(p) {
            if lambda.size() > max_degree as usize || lambda.height() > k {
                continue;
            }
            used += 1;
            let s = schur_poly(&lambda, k, max_degree, method);
            rhs = if p % 2 == 0 { rhs.add(&s) } else { rhs.sub(&s) };
        }
    }
    (rhs, used)
}

pub fn littlewood_verify(k: usize, max_degree: u32) -> LittlewoodReport {
    let lhs = littlewood_product(k, max_degree);
    let (rhs, used) = littlewood_sum(k, max_degree, SchurMethod::Ssyt);
    let diff = lhs.first_difference(&rhs);
    LittlewoodReport {
        vars: k,
        max_degree,
        equal: diff.is_none(),
        first_difference: diff.map(|(e, a, b)| (e, a.to_string(), b.to_string())),
        terms_compared: lhs.terms().len().max(rhs.terms().len()),
        partitions_used: used,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub dim_v: usize,
    pub max_degree: u32,
    /// Numerator coefficients by weight.
    pub numerator: Vec<String>,
    /// Numerator times the PBW series; must be `1, 0, 0, ...`.
    pub product: Vec<String>,
    pub holds: bool,
}

/// `Σ_p (-1)^p Σ_{λ} dim V_λ t^{|λ|}` over self-conjugate `λ` of degree `p`.
pub fn hilbert_numerator(n: usize, max_degree: u32) -> TruncatedSymPoly {
    let mut num = TruncatedSymPoly::zero(1, max_degree);
    for p in 0..=max_degree as usize {
        for lambda in self_conjugate_by_degree(p) {
            if lambda.size() > max_degree as usize {
                continue;
            }
            let d = schur_dim(&lambda, n);
            let c = if p % 2 == 0 { BigInt::from(d) } else { -BigInt::from(d) };
            num.add_term(vec![lambda.size() as u32], c);
        }
    }
    num
}

/// Hilbert series `1 / ((1-t)^n (1-t^2)^{n(n-1)/2})` of the enveloping algebra.
pub fn pbw_series(n: usize, max_degree: u32) -> TruncatedSymPoly {
    let geometric = |step: u32| {
        let mut g = TruncatedSymPoly::zero(1, max_degree);
        let mut d = 0;
        while d <= max_degree {
            g.add_term(vec![d], BigInt::one());
            d += step;
        }
        g
    };
    let mut s = TruncatedSymPoly::one(1, max_degree);
    for _ in 0..n {
        s = s.mul(&geometric(1));
    }
    for _ in 0..n * (n.saturating_sub(1)) / 2 {
        s = s.mul(&geometric(2));
    }
    s
}

pub fn check_against_pbw(n: usize, numerator: &TruncatedSymPoly) -> HilbertReport {
    let max_degree = numerator.max_degree();
    let product = numerator.mul(&pbw_series(n, max_degree));
    let holds = product == TruncatedSymPoly::one(1, max_degree);
    HilbertReport {
        dim_v: n,
        max_degree,
        numerator: numerator.univariate_coeffs().iter().map(|c| c.to_string()).collect(),
        product: product.univariate_coeffs().iter().map(|c| c.to_string()).collect(),
        holds,
    }
}

pub fn ps_hilbert_numerator_verify(n: usize, max_degree: u32) -> HilbertReport {
    check_against_pbw(n, &hilbert_numerator(n, max_degree))
}
