//! Exact rational linear algebra.
//!
//! Matrices are stored as sparse triples. All elimination runs fraction-free
//! on integer rows (each row is cleared of denominators first), so nothing
//! here ever rounds.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("right-hand side is not in the image")]
    NotInImage,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_rational(&self.get(r, c))).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && self.entries.iter().all(|(&(r, c), v)| self.entries.get(&(c, r)) == Some(v))
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rows];
        for (&(r, cc), x) in &self.entries {
            if cc == c {
                v[r] = x.clone();
            }
        }
        v
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, &Rational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "mul_vec dimension mismatch");
        let mut y = vec![Rational::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            if !x[c].is_zero() {
                y[r] += v * &x[c];
            }
        }
        y
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "mul dimension mismatch");
        let orows = other.sparse_rows();
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &orows[k] {
                *acc.entry((r, c)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        RationalMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> RationalMatrix {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let entries = self.entries.iter().map(|(k, v)| (*k, v * s)).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows += other.rows;
        for (&(r, c), v) in &other.entries {
            out.entries.insert((r + self.rows, c), v.clone());
        }
        out
    }
}

type IntRow = BTreeMap<usize, BigInt>;

/// Clears denominators of a rational row by multiplying with their lcm.
fn integer_row(row: &[(usize, &Rational)]) -> IntRow {
    let l = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
        .collect()
}

/// Fraction-free (Bareiss) row echelon form. Only columns `< pivot_cols` are
/// eligible as pivots; trailing columns ride along as right-hand sides.
struct Echelon {
    rows: Vec<IntRow>,
    pivots: Vec<usize>,
}

fn bareiss(mut rows: Vec<IntRow>, pivot_cols: usize) -> Echelon {
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        // sparsest eligible row first, ties broken by position
        let Some(pi) = (r..rows.len())
            .filter(|&i| rows[i].contains_key(&c))
            .min_by_key(|&i| (rows[i].len(), i))
        else {
            continue;
        };
        rows.swap(r, pi);
        let pivot_row = rows[r].clone();
        let piv = pivot_row[&c].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let a = row.remove(&c).unwrap_or_else(BigInt::zero);
            let mut next = IntRow::new();
            if a.is_zero() {
                if piv == prev {
                    continue;
                }
                for (&j, v) in row.iter() {
                    next.insert(j, exact_div(&(v * &piv), &prev));
                }
            } else {
                let keys: std::collections::BTreeSet<usize> =
                    row.keys().chain(pivot_row.keys()).copied().filter(|&j| j > c).collect();
                for j in keys {
                    let own = row.get(&j).map_or_else(BigInt::zero, |v| v * &piv);
                    let other = pivot_row.get(&j).map_or_else(BigInt::zero, |v| v * &a);
                    let v = own - other;
                    if !v.is_zero() {
                        next.insert(j, exact_div(&v, &prev));
                    }
                }
            }
            *row = next;
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, rem) = a.div_rem(b);
    debug_assert!(rem.is_zero(), "Bareiss division not exact");
    q
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduced row echelon form of the pivot rows, as rational rows with unit
    /// pivots, restricted to columns `< width`.
    fn reduced(&self, width: usize) -> Vec<BTreeMap<usize, Rational>> {
        let r = self.rank();
        let mut red: Vec<BTreeMap<usize, Rational>> = Vec::with_capacity(r);
        for (k, &pc) in self.pivots.iter().enumerate() {
            let piv = Rational::from_integer(self.rows[k][&pc].clone());
            red.push(
                self.rows[k]
                    .iter()
                    .filter(|(&j, _)| j < width)
                    .map(|(&j, v)| (j, Rational::from_integer(v.clone()) / &piv))
                    .collect(),
            );
        }
        for k in (0..r).rev() {
            let pk = self.pivots[k];
            let row_k = red[k].clone();
            for row in red.iter_mut().take(k) {
                if let Some(f) = row.remove(&pk) {
                    for (&j, v) in &row_k {
                        if j == pk {
                            continue;
                        }
                        let e = row.entry(j).or_insert_with(Rational::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            row.remove(&j);
                        }
                    }
                }
            }
        }
        red
    }
}

fn echelon_of(m: &RationalMatrix) -> Echelon {
    let rows = m.sparse_rows().iter().map(|r| integer_row(r)).collect();
    bareiss(rows, m.cols)
}

pub fn rank(m: &RationalMatrix) -> usize {
    echelon_of(m).rank()
}

/// A basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let ech = echelon_of(m);
    let red = ech.reduced(m.cols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); m.cols];
        x[f] = Rational::one();
        for (k, &pc) in ech.pivots.iter().enumerate() {
            if let Some(v) = red[k].get(&f) {
                x[pc] = -v.clone();
            }
        }
        basis.push(x);
    }
    basis
}

/// Solves `a x = b_i` for every right-hand side, setting free variables to
/// zero. Fails if any system is inconsistent.
pub fn solve_many(a: &RationalMatrix, rhs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    let n = a.cols;
    for b in rhs {
        if b.len() != a.rows {
            return Err(LinAlgError::DimensionMismatch(format!("rhs has {} entries, matrix has {} rows", b.len(), a.rows)));
        }
    }
    let arows = a.sparse_rows();
    let mut rows = Vec::with_capacity(a.rows);
    for (i, arow) in arows.iter().enumerate() {
        let mut full: Vec<(usize, &Rational)> = arow.clone();
        for (k, b) in rhs.iter().enumerate() {
            if !b[i].is_zero() {
                full.push((n + k, &b[i]));
            }
        }
        rows.push(integer_row(&full));
    }
    let ech = bareiss(rows, n);
    let r = ech.rank();
    if ech.rows[r..].iter().any(|row| !row.is_empty()) {
        return Err(LinAlgError::NotInImage);
    }
    let red = ech.reduced(n + rhs.len());
    let mut sols = vec![vec![Rational::zero(); n]; rhs.len()];
    for (k, &pc) in ech.pivots.iter().enumerate() {
        for (j, sol) in sols.iter_mut().enumerate() {
            if let Some(v) = red[k].get(&(n + j)) {
                sol[pc] = v.clone();
            }
        }
    }
    Ok(sols)
}

pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
    Ok(solve_many(a, &[b.to_vec()])?.pop().expect("one solution"))
}

/// For symmetric `s` and `b` in its image, the unique `x` orthogonal to
/// `ker s` with `s x = b`.
pub fn solve_in_image(s: &RationalMatrix, b: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
    Ok(solve_in_image_many(s, &[b.to_vec()])?.pop().expect("one solution"))
}

pub fn solve_in_image_many(s: &RationalMatrix, rhs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    if !s.is_symmetric() {
        return Err(LinAlgError::NotSymmetric);
    }
    let kernel = kernel_basis(s);
    let kt = RationalMatrix::from_columns(s.cols, &kernel).transpose();
    let stacked = s.vstack(&kt);
    let padded: Vec<Vec<Rational>> = rhs
        .iter()
        .map(|b| {
            let mut v = b.clone();
            v.extend(std::iter::repeat_with(Rational::zero).take(kernel.len()));
            v
        })
        .collect();
    solve_many(&stacked, &padded)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Scales a nonzero vector to a primitive integer vector whose first nonzero
/// entry is positive.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_neg { -g } else { g };
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}
