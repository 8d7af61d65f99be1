//! Chevalley–Eilenberg complex of the free two-step nilpotent Lie algebra
//! `g = V ⊕ Λ²V` with bracket `[e_i, e_j] = e_{ij}`.
//!
//! Everything splits into blocks of fixed multidegree. Inside a block the
//! monomial basis is orthonormal, the coboundary `δ` is the transpose of the
//! boundary `∂`, and the harmonic retract is built from the block Laplacian.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num::traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::{Element, ExteriorAlgebra, ExteriorError, Generator, Monomial, MultiDegree};
use crate::partitions::{schur_dim, self_conjugate_by_degree};
use crate::ratlinalg::{
    dot, kernel_basis, primitive, rank, solve_in_image_many, solve_many, LinAlgError, Rational, RationalMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CeError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("element is neither a cycle nor a cocycle")]
    NotClosed,
    #[error("element is not harmonic")]
    NotHarmonic,
}

/// Bases and boundary matrices of one multidegree block.
#[derive(Debug)]
pub struct ComplexBlock {
    pub multidegree: MultiDegree,
    /// `bases[p]` lists the block's monomials of exterior degree `p`.
    pub bases: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    /// `boundary[p] : C_p → C_{p-1}`, for `p` in `0..=top+1`.
    pub boundary: Vec<RationalMatrix>,
    /// `coboundary[p] : C_p → C_{p+1}`.
    pub coboundary: Vec<RationalMatrix>,
}

impl ComplexBlock {
    pub fn dim(&self, p: usize) -> usize {
        self.bases.get(p).map_or(0, |b| b.len())
    }

    /// Top exterior degree; `bases` carries one extra empty degree above it.
    pub fn top(&self) -> usize {
        self.bases.len() - 2
    }

    pub fn coords(&self, p: usize, x: &Element) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim(p)];
        for (m, c) in x.terms() {
            let i = self.index[&m];
            debug_assert_eq!(self.bases[p][i], m);
            v[i] = c.clone();
        }
        v
    }

    pub fn element(&self, p: usize, v: &[Rational]) -> Element {
        let mut x = Element::zero();
        for (i, c) in v.iter().enumerate() {
            x.add_term(self.bases[p][i], c.clone());
        }
        x
    }

    pub fn laplacian(&self, p: usize) -> RationalMatrix {
        let down = self.boundary[p].transpose().mul(&self.boundary[p]);
        let up = self.boundary[p + 1].mul(&self.coboundary[p]);
        down.add(&up)
    }
}

/// Harmonic projector, harmonic basis and homotopy of one block.
#[derive(Debug)]
pub struct RetractBlock {
    /// Primitive integer basis of the harmonic space, per degree.
    pub harmonic: Vec<Vec<Vec<Rational>>>,
    /// Orthogonal projector onto the harmonic space, per degree.
    pub projector: Vec<RationalMatrix>,
    /// `homotopy[p] = G ∂ : C_p → C_{p-1}` with `G` the Laplacian's pseudo-inverse.
    pub homotopy: Vec<RationalMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub dim_v: usize,
    /// Total dimension per exterior degree.
    pub dims: Vec<usize>,
    /// Dimension per `(degree, weight)`.
    pub by_weight: BTreeMap<(usize, usize), usize>,
}

impl HomologyTable {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

pub struct CeComplex {
    alg: ExteriorAlgebra,
    blocks: RwLock<HashMap<MultiDegree, Arc<ComplexBlock>>>,
    retracts: RwLock<HashMap<MultiDegree, Arc<RetractBlock>>>,
}

impl CeComplex {
    pub fn new(n: usize) -> Result<Self, CeError> {
        Ok(CeComplex {
            alg: ExteriorAlgebra::new(n)?,
            blocks: RwLock::new(HashMap::new()),
            retracts: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &ExteriorAlgebra {
        &self.alg
    }

    pub fn dim_v(&self) -> usize {
        self.alg.dim_v()
    }

    /// Top exterior degree `dim g = n(n+1)/2`.
    pub fn top_degree(&self) -> usize {
        self.alg.num_generators()
    }

    /// `∂` of a canonical monomial: for each pair of `V`-letters at positions
    /// `a < b` (1-based) the term `(-1)^{a+b} e_{ab} ∧ (rest)`.
    pub fn boundary_monomial(&self, m: Monomial) -> Element {
        let word = self.alg.word(m);
        let vs: Vec<usize> = word.iter().take_while(|g| matches!(g, Generator::V(_))).map(|g| match g {
            Generator::V(i) => *i as usize,
            _ => unreachable!(),
        }).collect();
        let mut out = Element::zero();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let mut w = vec![Generator::W(vs[a] as u8, vs[b] as u8)];
                w.extend(word.iter().enumerate().filter(|&(k, _)| k != a && k != b).map(|(_, g)| *g));
                let term = self.alg.monomial_of(&w);
                // positions are 1-based: (a+1)+(b+1) has the parity of a+b
                let sign = if (a + b) % 2 == 0 { Rational::one() } else { -Rational::one() };
                out += &term.scale(&sign);
            }
        }
        out
    }

    pub fn boundary(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out += &self.boundary_monomial(m).scale(c);
        }
        out
    }

    pub fn coboundary(&self, x: &Element) -> Element {
        self.apply_blockwise(x, |blk, _, p, v| (p + 1, blk.coboundary[p].mul_vec(v)))
    }

    pub fn block(&self, md: &MultiDegree) -> Arc<ComplexBlock> {
        if let Some(b) = self.blocks.read().expect("lock").get(md) {
            return b.clone();
        }
        let built = Arc::new(self.build_block(md));
        self.blocks.write().expect("lock").entry(md.clone()).or_insert(built).clone()
    }

    fn build_block(&self, md: &MultiDegree) -> ComplexBlock {
        let top = self.top_degree();
        let mut bases = vec![Vec::new(); top + 2];
        for m in self.alg.basis_block(md) {
            bases[m.degree()].push(m);
        }
        let mut index = HashMap::new();
        for basis in &bases {
            for (i, m) in basis.iter().enumerate() {
                index.insert(*m, i);
            }
        }
        let mut boundary = Vec::with_capacity(top + 2);
        boundary.push(RationalMatrix::zeros(0, bases[0].len()));
        for p in 1..=top + 1 {
            let mut d = RationalMatrix::zeros(bases[p - 1].len(), bases[p].len());
            for (j, m) in bases[p].iter().enumerate() {
                for (t, c) in self.boundary_monomial(*m).terms() {
                    d.set(index[&t], j, c.clone());
                }
            }
            boundary.push(d);
        }
        let coboundary = (0..=top + 1)
            .map(|p| if p <= top { boundary[p + 1].transpose() } else { RationalMatrix::zeros(0, bases[p].len()) })
            .collect();
        ComplexBlock { multidegree: md.clone(), bases, index, boundary, coboundary }
    }

    pub fn retract_block(&self, md: &MultiDegree) -> Result<Arc<RetractBlock>, CeError> {
        if let Some(b) = self.retracts.read().expect("lock").get(md) {
            return Ok(b.clone());
        }
        let built = Arc::new(self.build_retract(&self.block(md))?);
        Ok(self.retracts.write().expect("lock").entry(md.clone()).or_insert(built).clone())
    }

    fn build_retract(&self, blk: &ComplexBlock) -> Result<RetractBlock, CeError> {
        let top = blk.top();
        let mut harmonic = Vec::with_capacity(top + 1);
        let mut projector = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let dim = blk.dim(p);
            let stacked = blk.boundary[p].vstack(&blk.coboundary[p]);
            let basis: Vec<Vec<Rational>> = kernel_basis(&stacked).iter().map(|v| primitive(v)).collect();
            projector.push(orthogonal_projector(dim, &basis)?);
            harmonic.push(basis);
        }
        let mut homotopy = Vec::with_capacity(top + 1);
        homotopy.push(RationalMatrix::zeros(0, blk.dim(0)));
        for p in 1..=top {
            let d = &blk.boundary[p];
            let cols: Vec<Vec<Rational>> = (0..d.ncols()).map(|c| d.column(c)).collect();
            let sol = if cols.is_empty() || d.nrows() == 0 {
                Vec::new()
            } else {
                solve_in_image_many(&blk.laplacian(p - 1), &cols)?
            };
            let h = if sol.is_empty() {
                RationalMatrix::zeros(d.nrows(), d.ncols())
            } else {
                RationalMatrix::from_columns(d.nrows(), &sol)
            };
            homotopy.push(h);
        }
        Ok(RetractBlock { harmonic, projector, homotopy })
    }

    /// Splits `x` by block and degree, applies `f` to each coordinate vector
    /// and reassembles.
    fn apply_blockwise(
        &self,
        x: &Element,
        f: impl Fn(&ComplexBlock, &MultiDegree, usize, &[Rational]) -> (usize, Vec<Rational>),
    ) -> Element {
        let mut parts: BTreeMap<(MultiDegree, usize), Element> = BTreeMap::new();
        for (m, c) in x.terms() {
            parts.entry((self.alg.multidegree(m), m.degree())).or_default().add_term(m, c.clone());
        }
        let mut out = Element::zero();
        for ((md, p), part) in parts {
            let blk = self.block(&md);
            let (q, v) = f(&blk, &md, p, &blk.coords(p, &part));
            out += &blk.element(q, &v);
        }
        out
    }

    fn try_apply_blockwise(
        &self,
        x: &Element,
        f: impl Fn(&ComplexBlock, &RetractBlock, usize, &[Rational]) -> (usize, Vec<Rational>),
    ) -> Result<Element, CeError> {
        let mut parts: BTreeMap<(MultiDegree, usize), Element> = BTreeMap::new();
        for (m, c) in x.terms() {
            parts.entry((self.alg.multidegree(m), m.degree())).or_default().add_term(m, c.clone());
        }
        let mut out = Element::zero();
        for ((md, p), part) in parts {
            let blk = self.block(&md);
            let ret = self.retract_block(&md)?;
            let (q, v) = f(&blk, &ret, p, &blk.coords(p, &part));
            out += &blk.element(q, &v);
        }
        Ok(out)
    }

    /// Orthogonal projection onto harmonic forms.
    pub fn project(&self, x: &Element) -> Result<Element, CeError> {
        self.try_apply_blockwise(x, |_, r, p, v| (p, r.projector[p].mul_vec(v)))
    }

    /// The homotopy `h = G ∂`, lowering degree by one.
    pub fn homotopy(&self, x: &Element) -> Result<Element, CeError> {
        self.try_apply_blockwise(x, |_, r, p, v| {
            if p == 0 {
                (0, Vec::new())
            } else {
                (p - 1, r.homotopy[p].mul_vec(v))
            }
        })
    }

    /// Inclusion of harmonic forms; rejects anything else.
    pub fn include(&self, x: &Element) -> Result<Element, CeError> {
        if self.is_harmonic(x) {
            Ok(x.clone())
        } else {
            Err(CeError::NotHarmonic)
        }
    }

    pub fn laplacian_apply(&self, x: &Element) -> Element {
        &self.boundary(&self.coboundary(x)) + &self.coboundary(&self.boundary(x))
    }

    pub fn is_harmonic(&self, x: &Element) -> bool {
        self.boundary(x).is_zero() && self.coboundary(x).is_zero()
    }

    /// Harmonic representative of the class of a cycle or cocycle.
    pub fn class_representative(&self, x: &Element) -> Result<Element, CeError> {
        if self.boundary(x).is_zero() || self.coboundary(x).is_zero() {
            self.project(x)
        } else {
            Err(CeError::NotClosed)
        }
    }

    /// Whether `x - y` is a boundary (for cycles) or coboundary (for cocycles).
    pub fn same_class(&self, x: &Element, y: &Element) -> Result<bool, CeError> {
        Ok(self.class_representative(&(x - y))?.is_zero())
    }

    /// Expands a harmonic form in classes `[m]` of cycle monomials, chosen
    /// greedily in canonical order per block. `None` if in some block the
    /// cycle monomials do not span the homology.
    pub fn monomial_classes(&self, x: &Element) -> Result<Option<Vec<(Monomial, Rational)>>, CeError> {
        let mut parts: BTreeMap<(MultiDegree, usize), Element> = BTreeMap::new();
        for (m, c) in x.terms() {
            parts.entry((self.alg.multidegree(m), m.degree())).or_default().add_term(m, c.clone());
        }
        let mut out = Vec::new();
        for ((md, p), part) in parts {
            let blk = self.block(&md);
            let ret = self.retract_block(&md)?;
            let target = ret.harmonic[p].len();
            let mut chosen: Vec<Monomial> = Vec::new();
            let mut cols: Vec<Vec<Rational>> = Vec::new();
            for (i, &m) in blk.bases[p].iter().enumerate() {
                if chosen.len() == target {
                    break;
                }
                if !self.boundary_monomial(m).is_zero() {
                    continue;
                }
                cols.push(ret.projector[p].column(i));
                if rank(&RationalMatrix::from_columns(blk.dim(p), &cols)) == cols.len() {
                    chosen.push(m);
                } else {
                    cols.pop();
                }
            }
            if chosen.len() < target {
                return Ok(None);
            }
            let a = RationalMatrix::from_columns(blk.dim(p), &cols);
            let coeffs = crate::ratlinalg::solve(&a, &blk.coords(p, &part)).map_err(|_| CeError::NotHarmonic)?;
            out.extend(chosen.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()));
        }
        out.sort();
        Ok(Some(out))
    }

    pub fn harmonic_basis_block(&self, md: &MultiDegree, p: usize) -> Result<Vec<Element>, CeError> {
        let blk = self.block(md);
        if p > blk.top() {
            return Ok(Vec::new());
        }
        let r = self.retract_block(md)?;
        Ok(r.harmonic[p].iter().map(|v| blk.element(p, v)).collect())
    }

    /// Harmonic basis of degree `p`, block by block in multidegree order.
    pub fn harmonic_basis(&self, p: usize) -> Result<Vec<(MultiDegree, Element)>, CeError> {
        let mds = self.multidegrees();
        let per: Vec<Result<Vec<(MultiDegree, Element)>, CeError>> = mds
            .par_iter()
            .map(|md| Ok(self.harmonic_basis_block(md, p)?.into_iter().map(|e| (md.clone(), e)).collect()))
            .collect();
        let mut out = Vec::new();
        for r in per {
            out.extend(r?);
        }
        Ok(out)
    }

    /// Every multidegree with a nonempty block, ascending.
    pub fn multidegrees(&self) -> Vec<MultiDegree> {
        let n = self.dim_v();
        let mut out = Vec::new();
        let mut cur = vec![0u8; n];
        loop {
            let md = MultiDegree(cur.clone());
            if self.realizable(&md) {
                out.push(md);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if (cur[i] as usize) < n {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Non-increasing multidegrees with nonempty block; one per `S_n`-orbit.
    pub fn sorted_multidegrees(&self) -> Vec<MultiDegree> {
        self.multidegrees().into_iter().filter(|md| md.0.windows(2).all(|w| w[0] >= w[1])).collect()
    }

    fn realizable(&self, md: &MultiDegree) -> bool {
        let n = self.dim_v();
        let c: Vec<usize> = md.0.iter().map(|&x| x as usize).collect();
        // each index is covered by at most one V-letter, rest by W-letters
        if c.iter().any(|&x| x > n) {
            return false;
        }
        !self.alg.basis_block(md).is_empty()
    }

    fn block_homology(&self, md: &MultiDegree) -> Vec<usize> {
        let blk = self.block(md);
        let top = blk.top();
        let ranks: Vec<usize> = (0..=top + 1).map(|p| rank(&blk.boundary[p])).collect();
        (0..=top).map(|p| blk.dim(p) - ranks[p] - ranks[p + 1]).collect()
    }

    /// Homology dimensions by degree and weight. Uses the `S_n` symmetry:
    /// only sorted multidegrees are computed, weighted by orbit size.
    pub fn homology_table(&self) -> HomologyTable {
        let reps = self.sorted_multidegrees();
        let per: Vec<(usize, u64, Vec<usize>)> = reps
            .par_iter()
            .map(|md| (md.weight(), orbit_size(md), self.block_homology(md)))
            .collect();
        self.assemble(per)
    }

    /// Same table, computed block by block without the symmetry reduction.
    pub fn homology_table_unreduced(&self) -> HomologyTable {
        let mds = self.multidegrees();
        let per: Vec<(usize, u64, Vec<usize>)> =
            mds.par_iter().map(|md| (md.weight(), 1, self.block_homology(md))).collect();
        self.assemble(per)
    }

    fn assemble(&self, per: Vec<(usize, u64, Vec<usize>)>) -> HomologyTable {
        let top = self.top_degree();
        let mut dims = vec![0usize; top + 1];
        let mut by_weight = BTreeMap::new();
        for (t, mult, h) in per {
            for (p, &d) in h.iter().enumerate() {
                if d > 0 {
                    dims[p] += d * mult as usize;
                    *by_weight.entry((p, t)).or_insert(0) += d * mult as usize;
                }
            }
        }
        HomologyTable { dim_v: self.dim_v(), dims, by_weight }
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        self.homology_table().dims
    }

    /// Checks the retract identities on every block.
    pub fn verify_retract(&self) -> Result<RetractReport, RetractFailure> {
        let mds = self.multidegrees();
        let results: Vec<Result<usize, RetractFailure>> = mds.par_iter().map(|md| self.verify_retract_block(md)).collect();
        let mut identities = 0;
        for r in results {
            identities += r?;
        }
        Ok(RetractReport { dim_v: self.dim_v(), blocks: mds.len(), identities_checked: identities })
    }

    fn verify_retract_block(&self, md: &MultiDegree) -> Result<usize, RetractFailure> {
        let blk = self.block(md);
        let fail = |identity: &str, p: usize, witness: Element| RetractFailure {
            identity: identity.to_string(),
            multidegree: md.to_string(),
            degree: p,
            witness: self.alg.render(&witness),
        };
        let ret = self.retract_block(md).map_err(|e| fail(&format!("construction: {e}"), 0, Element::zero()))?;
        let top = blk.top();
        let mut count = 0;
        // a nonzero column of a matrix that should vanish, as a witness
        let nonzero_col = |m: &RationalMatrix, q: usize| -> Option<Element> {
            m.entries().next().map(|(_, c, _)| blk.element(q, &unit(m.ncols(), c)))
        };
        for p in 0..=top {
            let dim = blk.dim(p);
            let id = RationalMatrix::identity(dim);
            let pp = &ret.projector[p];
            if p >= 1 {
                let dsq = blk.boundary[p].mul(&blk.boundary[p + 1]);
                if let Some(w) = nonzero_col(&dsq, p + 1) {
                    return Err(fail("boundary squared", p + 1, w));
                }
            }
            // Id - ip = δh + hδ
            let mut rhs = RationalMatrix::zeros(dim, dim);
            if p >= 1 {
                rhs = rhs.add(&blk.coboundary[p - 1].mul(&ret.homotopy[p]));
            }
            if p < top {
                rhs = rhs.add(&ret.homotopy[p + 1].mul(&blk.coboundary[p]));
            }
            let defect = id.sub(pp).sub(&rhs);
            if let Some(w) = nonzero_col(&defect, p) {
                return Err(fail("Id - ip = δh + hδ", p, w));
            }
            if !pp.mul(pp).sub(pp).is_zero() || !pp.is_symmetric() {
                return Err(fail("projector idempotent and symmetric", p, Element::zero()));
            }
            for v in &ret.harmonic[p] {
                let x = blk.element(p, v);
                if pp.mul_vec(v) != *v {
                    return Err(fail("pi = Id on harmonic forms", p, x));
                }
                if !blk.coboundary[p].mul_vec(v).iter().all(Zero::is_zero) {
                    return Err(fail("i is a chain map", p, x));
                }
                if p >= 1 && !ret.homotopy[p].mul_vec(v).iter().all(Zero::is_zero) {
                    return Err(fail("hi = 0", p, x));
                }
            }
            if p >= 1 {
                if let Some(w) = nonzero_col(&ret.projector[p - 1].mul(&ret.homotopy[p]), p) {
                    return Err(fail("ph = 0", p, w));
                }
            }
            if p >= 2 {
                if let Some(w) = nonzero_col(&ret.homotopy[p - 1].mul(&ret.homotopy[p]), p) {
                    return Err(fail("hh = 0", p, w));
                }
            }
            // p is a chain map: p δ = 0 since harmonic forms are orthogonal to im δ
            if p < top {
                if let Some(w) = nonzero_col(&ret.projector[p + 1].mul(&blk.coboundary[p]), p) {
                    return Err(fail("p is a chain map", p, w));
                }
            }
            count += 7;
        }
        Ok(count)
    }

    /// Compares every `(degree, weight)` slice with the Schur-module prediction.
    pub fn jw_verify(&self) -> Result<JwReport, JwMismatch> {
        let table = self.homology_table();
        let predicted = jw_prediction(self.dim_v(), self.top_degree());
        let keys: std::collections::BTreeSet<(usize, usize)> =
            table.by_weight.keys().chain(predicted.keys()).copied().collect();
        for (p, t) in keys {
            let c = table.by_weight.get(&(p, t)).copied().unwrap_or(0);
            let e = predicted.get(&(p, t)).copied().unwrap_or(0);
            if c != e {
                return Err(JwMismatch { degree: p, weight: t, computed: c, predicted: e });
            }
        }
        Ok(JwReport { dim_v: self.dim_v(), dims: table.dims.clone(), slices: table.by_weight.len(), table })
    }

    /// Checks `dim H_p = dim H_{d-p}` and that the wedge pairing into the top
    /// degree is nondegenerate on every pair of complementary blocks.
    pub fn duality_verify(&self) -> Result<DualityReport, DualityFailure> {
        let d = self.top_degree();
        let dims = self.homology_dims();
        for p in 0..=d {
            if dims[p] != dims[d - p] {
                return Err(DualityFailure::Dimensions { degree: p, dim: dims[p], dual_dim: dims[d - p] });
            }
        }
        let n = self.dim_v();
        let top_md = MultiDegree(vec![n as u8; n]);
        let top_mono = Monomial((1u64 << d) - 1);
        let mds = self.multidegrees();
        let results: Vec<Result<usize, DualityFailure>> = mds
            .par_iter()
            .map(|md| {
                let comp = MultiDegree(md.0.iter().zip(&top_md.0).map(|(a, b)| b - a).collect());
                let mut pairs = 0;
                for p in 0..=d {
                    let xs = self.harmonic_basis_block(md, p).map_err(|e| DualityFailure::Internal(e.to_string()))?;
                    if xs.is_empty() {
                        continue;
                    }
                    let ys = self
                        .harmonic_basis_block(&comp, d - p)
                        .map_err(|e| DualityFailure::Internal(e.to_string()))?;
                    let gram: Vec<Vec<Rational>> =
                        xs.iter().map(|x| ys.iter().map(|y| x.wedge(y).coeff(top_mono)).collect()).collect();
                    if ys.len() != xs.len() || rank(&RationalMatrix::from_rows(&gram)) != xs.len() {
                        return Err(DualityFailure::Degenerate { multidegree: md.to_string(), degree: p });
                    }
                    pairs += 1;
                }
                Ok(pairs)
            })
            .collect();
        let mut pairs = 0;
        for r in results {
            pairs += r?;
        }
        Ok(DualityReport { dim_v: n, top_degree: d, dims, block_pairs: pairs })
    }

    /// Numerator `Σ_{p,t} (-1)^p dim H_{p,t} t^weight` of the Hilbert series.
    pub fn hilbert_numerator_from_homology(&self, max_degree: u32) -> crate::partitions::TruncatedSymPoly {
        let mut num = crate::partitions::TruncatedSymPoly::zero(1, max_degree);
        for (&(p, t), &d) in &self.homology_table().by_weight {
            let c = num::BigInt::from(d as i64) * if p % 2 == 0 { 1 } else { -1 };
            num.add_term(vec![t as u32], c);
        }
        num
    }
}

/// `(degree, weight) → Σ dim V_λ` over self-conjugate `λ`.
pub fn jw_prediction(n: usize, top: usize) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for p in 0..=top {
        for lambda in self_conjugate_by_degree(p) {
            let d = schur_dim(&lambda, n) as usize;
            if d > 0 {
                *out.entry((p, lambda.size())).or_insert(0) += d;
            }
        }
    }
    out
}

fn orbit_size(md: &MultiDegree) -> u64 {
    let n = md.0.len() as u64;
    let fact = |k: u64| (1..=k).product::<u64>();
    let mut counts: BTreeMap<u8, u64> = BTreeMap::new();
    for &c in &md.0 {
        *counts.entry(c).or_insert(0) += 1;
    }
    counts.values().fold(fact(n), |acc, &k| acc / fact(k))
}

fn unit(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}

/// `K (KᵀK)⁻¹ Kᵀ` for the columns `K` spanning the subspace.
fn orthogonal_projector(dim: usize, basis: &[Vec<Rational>]) -> Result<RationalMatrix, LinAlgError> {
    if basis.is_empty() {
        return Ok(RationalMatrix::zeros(dim, dim));
    }
    let k = basis.len();
    let gram: Vec<Vec<Rational>> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let gram = RationalMatrix::from_rows(&gram);
    // columns of Kᵀ
    let rhs: Vec<Vec<Rational>> = (0..dim).map(|j| (0..k).map(|i| basis[i][j].clone()).collect()).collect();
    let x = solve_many(&gram, &rhs)?;
    let kmat = RationalMatrix::from_columns(dim, basis);
    Ok(kmat.mul(&RationalMatrix::from_columns(k, &x)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractReport {
    pub dim_v: usize,
    pub blocks: usize,
    pub identities_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{identity} fails in block {multidegree}, degree {degree}; witness {witness}")]
pub struct RetractFailure {
    pub identity: String,
    pub multidegree: String,
    pub degree: usize,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JwReport {
    pub dim_v: usize,
    pub dims: Vec<usize>,
    pub slices: usize,
    pub table: HomologyTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("degree {degree}, weight {weight}: computed {computed}, predicted {predicted}")]
pub struct JwMismatch {
    pub degree: usize,
    pub weight: usize,
    pub computed: usize,
    pub predicted: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub dim_v: usize,
    pub top_degree: usize,
    pub dims: Vec<usize>,
    pub block_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityFailure {
    #[error("dim H_{degree} = {dim} but its dual has dimension {dual_dim}")]
    Dimensions { degree: usize, dim: usize, dual_dim: usize },
    #[error("pairing degenerate on block {multidegree} in degree {degree}")]
    Degenerate { multidegree: String, degree: usize },
    #[error("{0}")]
    Internal(String),
}
