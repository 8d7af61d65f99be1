//! The exterior algebra on `V ⊕ Λ²V`.
//!
//! Generators are `e_i` (weight 1) and `e_{ij}`, `i < j` (weight 2), with
//! labels starting at 1. They are ordered `e_1 < … < e_n < e_{12} < e_{13} <
//! … < e_{n-1,n}` and a monomial is the bitmask of its generators in that
//! order, so a canonical monomial is just a set.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratlinalg::{fmt_rational, parse_rational, Rational};

/// Largest supported `dim V`: `n + n(n-1)/2` generators must fit in 64 bits.
pub const MAX_DIM_V: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    V(u8),
    W(u8, u8),
}

impl Generator {
    pub fn weight(self) -> usize {
        match self {
            Generator::V(_) => 1,
            Generator::W(..) => 2,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::V(i) => write!(f, "e{i}"),
            Generator::W(i, j) => write!(f, "e{{{i},{j}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("generator {0} out of range for dim V = {1}")]
    OutOfRange(String, usize),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("dim V = {0} unsupported (1..={MAX_DIM_V})")]
    UnsupportedDim(usize),
}

/// A canonical monomial: a set of generator positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(b)
            }
        })
    }

    pub fn contains(self, pos: usize) -> bool {
        self.0 >> pos & 1 == 1
    }

    /// `(sign, self ∧ other)`, or `None` when they share a generator.
    pub fn wedge(self, other: Monomial) -> Option<(i8, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for b in other.positions() {
            swaps += (self.0 >> b).count_ones();
        }
        Some((if swaps.is_multiple_of(2) { 1 } else { -1 }, Monomial(self.0 | other.0)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({:#b})", self.0)
    }
}

/// Degree first, then lexicographic on the sorted generator word.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let d = self.0 ^ other.0;
            if d == 0 {
                Ordering::Equal
            } else if self.0 & (d & d.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Per-index multidegree in `Z^n`; its sum is the weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree(pub Vec<u8>);

impl MultiDegree {
    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sorted_desc(&self) -> MultiDegree {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        MultiDegree(v)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A rational linear combination of canonical monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Monomial::UNIT, Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn wedge(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((s, m)) = m1.wedge(*m2) {
                    let c = c1 * c2;
                    out.add_term(m, if s > 0 { c } else { -c });
                }
            }
        }
        out
    }

    /// The set of homological degrees present.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.degree()).collect();
        d.dedup();
        d
    }

    /// The homological degree if homogeneous (`None` for zero or mixed).
    pub fn hom_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Component of homological degree `p`.
    pub fn part(&self, p: usize) -> Element {
        Element { terms: self.terms.iter().filter(|(m, _)| m.degree() == p).map(|(m, c)| (*m, c.clone())).collect() }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{}*{:#b}", fmt_rational(c), m.0)).collect();
        write!(f, "Element[{}]", parts.join(" + "))
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

/// Generator tables for a fixed `dim V`.
#[derive(Debug, Clone)]
pub struct ExteriorAlgebra {
    n: usize,
    gens: Vec<Generator>,
    gen_multideg: Vec<Vec<usize>>,
}

impl ExteriorAlgebra {
    pub fn new(n: usize) -> Result<Self, ExteriorError> {
        if n == 0 || n > MAX_DIM_V {
            return Err(ExteriorError::UnsupportedDim(n));
        }
        let mut gens: Vec<Generator> = (1..=n as u8).map(Generator::V).collect();
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                gens.push(Generator::W(i, j));
            }
        }
        let gen_multideg = gens
            .iter()
            .map(|g| match *g {
                Generator::V(i) => vec![i as usize - 1],
                Generator::W(i, j) => vec![i as usize - 1, j as usize - 1],
            })
            .collect();
        Ok(ExteriorAlgebra { n, gens, gen_multideg })
    }

    pub fn dim_v(&self) -> usize {
        self.n
    }

    /// `dim g = n + n(n-1)/2`, also the top exterior degree.
    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, pos: usize) -> Generator {
        self.gens[pos]
    }

    pub fn is_v_position(&self, pos: usize) -> bool {
        pos < self.n
    }

    /// Bit position of `e_i` (1-based label).
    pub fn v_position(&self, i: usize) -> usize {
        assert!((1..=self.n).contains(&i));
        i - 1
    }

    /// Bit position of `e_{ij}` for `1 <= i < j <= n`.
    pub fn w_position(&self, i: usize, j: usize) -> usize {
        assert!(1 <= i && i < j && j <= self.n);
        let (i0, j0) = (i - 1, j - 1);
        // pairs (a, b) with a < i0 come first: each contributes n-1-a
        let before: usize = (0..i0).map(|a| self.n - 1 - a).sum();
        self.n + before + (j0 - i0 - 1)
    }

    pub fn position(&self, g: Generator) -> Result<(i8, usize), ExteriorError> {
        let in_range = |i: u8| (1..=self.n).contains(&(i as usize));
        match g {
            Generator::V(i) if in_range(i) => Ok((1, self.v_position(i as usize))),
            Generator::W(i, j) if in_range(i) && in_range(j) && i != j => {
                if i < j {
                    Ok((1, self.w_position(i as usize, j as usize)))
                } else {
                    Ok((-1, self.w_position(j as usize, i as usize)))
                }
            }
            _ => Err(ExteriorError::OutOfRange(g.to_string(), self.n)),
        }
    }

    /// Sorts a generator word into a canonical monomial. `None` if the word
    /// has a repeated generator or some `e_{ii}`.
    pub fn normalize(&self, word: &[Generator]) -> Result<Option<(i8, Monomial)>, ExteriorError> {
        let mut sign = 1i8;
        let mut acc = Monomial::UNIT;
        for g in word {
            if let Generator::W(i, j) = g {
                if i == j {
                    return Ok(None);
                }
            }
            let (s, pos) = self.position(*g)?;
            sign *= s;
            match acc.wedge(Monomial(1 << pos)) {
                Some((s2, m)) => {
                    sign *= s2;
                    acc = m;
                }
                None => return Ok(None),
            }
        }
        Ok(Some((sign, acc)))
    }

    pub fn monomial_of(&self, word: &[Generator]) -> Element {
        match self.normalize(word).expect("generators in range") {
            Some((s, m)) => Element::monomial(m, Rational::from_integer(s.into())),
            None => Element::zero(),
        }
    }

    pub fn word(&self, m: Monomial) -> Vec<Generator> {
        m.positions().map(|p| self.gens[p]).collect()
    }

    pub fn weight(&self, m: Monomial) -> usize {
        m.positions().map(|p| self.gens[p].weight()).sum()
    }

    pub fn multidegree(&self, m: Monomial) -> MultiDegree {
        let mut md = vec![0u8; self.n];
        for p in m.positions() {
            for &i in &self.gen_multideg[p] {
                md[i] += 1;
            }
        }
        MultiDegree(md)
    }

    /// All monomials of exterior degree `p`, in canonical order.
    pub fn basis(&self, p: usize) -> Vec<Monomial> {
        let g = self.gens.len();
        let mut out = Vec::new();
        if p > g {
            return out;
        }
        let mut combo: Vec<usize> = (0..p).collect();
        loop {
            out.push(Monomial(combo.iter().fold(0u64, |acc, &b| acc | 1 << b)));
            let mut i = p;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if combo[i] < g - p + i {
                    combo[i] += 1;
                    for k in i + 1..p {
                        combo[k] = combo[k - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// All monomials of multidegree `md` (any exterior degree), sorted.
    pub fn basis_block(&self, md: &MultiDegree) -> Vec<Monomial> {
        assert_eq!(md.0.len(), self.n);
        let mut out = Vec::new();
        let mut rem: Vec<usize> = md.0.iter().map(|&c| c as usize).collect();
        self.block_rec(0, &mut rem, 0, &mut out);
        out.sort();
        out
    }

    fn block_rec(&self, pos: usize, rem: &mut Vec<usize>, acc: u64, out: &mut Vec<Monomial>) {
        if rem.iter().all(|&r| r == 0) {
            out.push(Monomial(acc));
            return;
        }
        if pos == self.gens.len() {
            return;
        }
        let idx = &self.gen_multideg[pos];
        if idx.iter().all(|&i| rem[i] > 0) {
            for &i in idx {
                rem[i] -= 1;
            }
            self.block_rec(pos + 1, rem, acc | 1 << pos, out);
            for &i in idx {
                rem[i] += 1;
            }
        }
        self.block_rec(pos + 1, rem, acc, out);
    }

    /// Renders a monomial as `e1^e2^e{1,2}`, or `1`.
    pub fn render_monomial(&self, m: Monomial) -> String {
        if m == Monomial::UNIT {
            return "1".into();
        }
        let parts: Vec<String> = self.word(m).iter().map(|g| g.to_string()).collect();
        parts.join("^")
    }

    pub fn render(&self, x: &Element) -> String {
        render_terms(x.terms().map(|(m, c)| (self.render_monomial(m), c.clone())))
    }

    /// Word of `m` with the `Λ²V` letters moved in front, as tableaux are
    /// usually written (`e{1,3}^e2`), and the sign of that reordering.
    pub fn tableau_word(&self, m: Monomial) -> (i8, Vec<Generator>) {
        let word = self.word(m);
        let (vs, ws): (Vec<Generator>, Vec<Generator>) = word.into_iter().partition(|g| matches!(g, Generator::V(_)));
        let sign = if vs.len() * ws.len() % 2 == 0 { 1 } else { -1 };
        (sign, ws.into_iter().chain(vs).collect())
    }

    /// Renders `Σ c_m [m]` with each monomial in tableau order.
    pub fn render_tableau(&self, terms: &[(Monomial, Rational)]) -> String {
        render_terms(terms.iter().map(|(m, c)| {
            let (sign, word) = self.tableau_word(*m);
            let label = if word.is_empty() {
                "1".to_string()
            } else {
                word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("^")
            };
            (label, if sign < 0 { -c.clone() } else { c.clone() })
        }))
    }

    pub fn parse_generator(&self, s: &str) -> Result<Generator, ExteriorError> {
        let err = || ExteriorError::Parse(s.to_string());
        let body = s.trim().strip_prefix('e').ok_or_else(err)?;
        let g = if let Some(inner) = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
            let (a, b) = inner.split_once(',').ok_or_else(err)?;
            let a: u8 = a.trim().parse().map_err(|_| err())?;
            let b: u8 = b.trim().parse().map_err(|_| err())?;
            Generator::W(a, b)
        } else {
            Generator::V(body.parse().map_err(|_| err())?)
        };
        self.position(g)?;
        Ok(g)
    }

    /// Parses `e1^e{1,2}` (or `1`) into a signed canonical monomial.
    pub fn parse_monomial(&self, s: &str) -> Result<Element, ExteriorError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Element::one());
        }
        let word: Vec<Generator> = s.split('^').map(|g| self.parse_generator(g)).collect::<Result<_, _>>()?;
        Ok(self.monomial_of(&word))
    }

    /// Parses a sum such as `e1^e2 - 1/3*e{1,2}^e3 + 2`.
    pub fn parse_element(&self, s: &str) -> Result<Element, ExteriorError> {
        let mut out = Element::zero();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in s.chars() {
            match ch {
                '+' | '-' if !cur.trim().is_empty() => {
                    chunks.push((neg, std::mem::take(&mut cur)));
                    neg = ch == '-';
                }
                '-' => neg = !neg,
                '+' => {}
                c => cur.push(c),
            }
        }
        if cur.trim().is_empty() {
            return Err(ExteriorError::Parse(s.to_string()));
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let chunk = chunk.trim();
            let (coef, mono) = match chunk.split_once('*') {
                Some((c, m)) => (parse_rational(c).ok_or_else(|| ExteriorError::Parse(chunk.into()))?, m.trim()),
                None if !chunk.starts_with('e') => {
                    (parse_rational(chunk).ok_or_else(|| ExteriorError::Parse(chunk.into()))?, "1")
                }
                None => (Rational::one(), chunk),
            };
            let coef = if neg { -coef } else { coef };
            out += &self.parse_monomial(mono)?.scale(&coef);
        }
        Ok(out)
    }
}

/// Splits on commas that are not inside braces, so `e1,e{1,2}` gives two items.
fn render_terms(terms: impl Iterator<Item = (String, Rational)>) -> String {
    let mut s = String::new();
    for (i, (mono, c)) in terms.enumerate() {
        let neg = c < Rational::zero();
        let abs = if neg { -c } else { c };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if abs.is_one() {
            s.push_str(&mono);
        } else if mono == "1" {
            s.push_str(&fmt_rational(&abs));
        } else {
            s.push_str(&format!("{}*{}", fmt_rational(&abs), mono));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '{' => {
                depth += 1;
                cur.push(ch);
            }
            '}' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur).trim().to_string()),
            c => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
