//! Weight modules over U, one sign component at a time.
//!
//! A [`WeightModule`] stores a basis of each weight space M^λ together with
//! the matrices of E_i and F_i between weight spaces; K_μ and J_μ act on
//! M^λ by q^{⟨μ,λ⟩} and π^{⟨μ,λ⟩}, with π specialized to the module's sign.
//! Matrices have one row per target basis vector and one column per source
//! basis vector. Truncated Verma modules carry a height cap; F applied at the
//! cap is undefined and reported as [`Error::CapExceeded`].

mod build;
mod character;
mod ops;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use build::{build_simple, build_verma, weight_from_pairings};
pub use character::{character_division, ch_u_minus, weyl_kac_character};
pub use ops::{decompose, decompose_sum, omega_twist, singular_vectors, tensor_module, verify_integrable, Decomposition, Part};

use crate::covering::{CoveringAlgebra, UElt, UMono};
use crate::datum::{Datum, Weight};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar_ring::{RationalFn, Sign};

/// A vector of a weight module, by weight component.
pub type ModVec = BTreeMap<Weight, Vec<RationalFn>>;

#[derive(Clone, Debug)]
pub struct WeightModule {
    datum: Arc<Datum>,
    pub sign: Sign,
    /// Parity of each basis vector of each nonzero weight space.
    spaces: BTreeMap<Weight, Vec<u8>>,
    e: BTreeMap<(usize, Weight), Mat>,
    f: BTreeMap<(usize, Weight), Mat>,
    pub highest: Option<Weight>,
    /// Weights whose F-images lie beyond a truncation.
    frontier: Vec<Weight>,
    cap: Option<usize>,
}

fn add_w(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_w(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl WeightModule {
    pub(crate) fn empty(datum: Arc<Datum>, sign: Sign) -> Self {
        WeightModule {
            datum,
            sign,
            spaces: BTreeMap::new(),
            e: BTreeMap::new(),
            f: BTreeMap::new(),
            highest: None,
            frontier: Vec::new(),
            cap: None,
        }
    }

    pub fn datum(&self) -> &Datum {
        &self.datum
    }

    pub fn datum_arc(&self) -> Arc<Datum> {
        self.datum.clone()
    }

    pub fn is_truncated(&self) -> bool {
        self.cap.is_some()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.spaces.keys()
    }

    pub fn dim_at(&self, lambda: &[i64]) -> usize {
        self.spaces.get(lambda).map_or(0, Vec::len)
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(Vec::len).sum()
    }

    pub fn parities(&self, lambda: &[i64]) -> &[u8] {
        self.spaces.get(lambda).map_or(&[], Vec::as_slice)
    }

    /// Weight multiplicities.
    pub fn character(&self) -> BTreeMap<Weight, i64> {
        self.spaces.iter().map(|(w, p)| (w.clone(), p.len() as i64)).collect()
    }

    pub(crate) fn set_space(&mut self, lambda: Weight, parities: Vec<u8>) {
        if !parities.is_empty() {
            self.spaces.insert(lambda, parities);
        }
    }

    pub(crate) fn set_e(&mut self, i: usize, lambda: Weight, m: Mat) {
        if !m.is_zero() {
            self.e.insert((i, lambda), m);
        }
    }

    pub(crate) fn set_f(&mut self, i: usize, lambda: Weight, m: Mat) {
        if !m.is_zero() {
            self.f.insert((i, lambda), m);
        }
    }

    pub(crate) fn set_truncation(&mut self, cap: usize, frontier: Vec<Weight>) {
        self.cap = Some(cap);
        self.frontier = frontier;
    }

    pub fn is_frontier(&self, lambda: &[i64]) -> bool {
        self.frontier.iter().any(|w| w == lambda)
    }

    /// The matrix of E_i from M^λ to M^{λ+i'}; `None` means zero.
    pub fn e_mat(&self, i: usize, lambda: &[i64]) -> Option<&Mat> {
        self.e.get(&(i, lambda.to_vec()))
    }

    /// The matrix of F_i from M^λ to M^{λ−i'}; `None` means zero.
    pub fn f_mat(&self, i: usize, lambda: &[i64]) -> Option<&Mat> {
        self.f.get(&(i, lambda.to_vec()))
    }

    /// E_i as a dense matrix (zero when absent).
    pub fn e_dense(&self, i: usize, lambda: &[i64]) -> Mat {
        let target = add_w(lambda, self.datum.root_x(i));
        self.e_mat(i, lambda).cloned().unwrap_or_else(|| Mat::zeros(self.dim_at(&target), self.dim_at(lambda)))
    }

    pub fn f_dense(&self, i: usize, lambda: &[i64]) -> Mat {
        let target = sub_w(lambda, self.datum.root_x(i));
        self.f_mat(i, lambda).cloned().unwrap_or_else(|| Mat::zeros(self.dim_at(&target), self.dim_at(lambda)))
    }

    /// q^{⟨μ,λ⟩}.
    pub fn k_scalar(&self, mu: &[i64], lambda: &[i64]) -> RationalFn {
        RationalFn::q_pow(self.datum.pair(mu, lambda))
    }

    /// π^{⟨μ,λ⟩} in this sign component.
    pub fn j_scalar(&self, mu: &[i64], lambda: &[i64]) -> i64 {
        self.sign.pow(self.datum.pair(mu, lambda))
    }

    fn cap_error(&self) -> Error {
        let cap = self.cap.unwrap_or(0);
        Error::CapExceeded { height: cap + 1, cap }
    }

    /// One monomial applied to a vector of weight λ; the result has weight
    /// λ + wt(m), or is `None` when it vanishes.
    fn act_mono(&self, m: &UMono, lambda: &[i64], v: &[RationalFn]) -> Result<Option<(Weight, Vec<RationalFn>)>> {
        let d = &self.datum;
        let mut lam = lambda.to_vec();
        let mut v = v.to_vec();
        for &i in m.e.iter().rev() {
            let Some(mat) = self.e_mat(i as usize, &lam) else { return Ok(None) };
            v = mat.mul_vec(&v);
            lam = add_w(&lam, d.root_x(i as usize));
        }
        let j: Vec<i64> = m.j.iter().map(|&x| x as i64).collect();
        let c = self.k_scalar(&m.k, &lam).scale_int(self.j_scalar(&j, &lam));
        v = v.iter().map(|x| x.mul(&c)).collect();
        for &i in m.f.iter().rev() {
            if self.is_frontier(&lam) && v.iter().any(|x| !x.is_zero()) {
                return Err(self.cap_error());
            }
            let Some(mat) = self.f_mat(i as usize, &lam) else { return Ok(None) };
            v = mat.mul_vec(&v);
            lam = sub_w(&lam, d.root_x(i as usize));
        }
        if v.iter().all(RationalFn::is_zero) {
            return Ok(None);
        }
        Ok(Some((lam, v)))
    }

    /// u · v for u ∈ U.
    pub fn act(&self, u: &UElt, v: &ModVec) -> Result<ModVec> {
        let mut out: ModVec = BTreeMap::new();
        for (lam, comp) in v {
            for (m, c) in u.terms() {
                let c = c.specialize(self.sign);
                if let Some((w, r)) = self.act_mono(m, lam, comp)? {
                    let slot = out.entry(w).or_insert_with(|| vec![RationalFn::zero(); r.len()]);
                    for (s, x) in slot.iter_mut().zip(&r) {
                        *s = s.add(&x.mul(&c));
                    }
                }
            }
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        Ok(out)
    }

    /// The matrix of a homogeneous u from M^λ to M^{λ+wt(u)}.
    pub fn operator(&self, alg: &CoveringAlgebra, u: &UElt, lambda: &[i64]) -> Result<Mat> {
        let mut wt: Option<Weight> = None;
        for (m, _) in u.terms() {
            let w = alg.weight_x(m);
            if wt.as_ref().is_some_and(|x| *x != w) {
                return Err(Error::InvalidArgument("operator needs a homogeneous element".into()));
            }
            wt = Some(w);
        }
        let target = add_w(lambda, &wt.unwrap_or_else(|| self.datum.zero_weight()));
        let (rows, cols) = (self.dim_at(&target), self.dim_at(lambda));
        let mut out = Mat::zeros(rows, cols);
        for c in 0..cols {
            let img = self.act(u, &self.unit(lambda, c))?;
            if let Some(col) = img.get(&target) {
                for (r, x) in col.iter().enumerate() {
                    out.set(r, c, x.clone());
                }
            }
        }
        Ok(out)
    }

    /// The k-th basis vector of M^λ.
    pub fn unit(&self, lambda: &[i64], k: usize) -> ModVec {
        let mut v = vec![RationalFn::zero(); self.dim_at(lambda)];
        v[k] = RationalFn::one();
        BTreeMap::from([(lambda.to_vec(), v)])
    }

    /// Checks E_iF_j − π^{p(i)p(j)}F_jE_i = δ_ij (J̃_iK̃_i − K̃_{−i})/(π_iq_i − q_i^{-1})
    /// on every weight space away from the truncation.
    pub fn verify_ef_relation(&self) -> bool {
        let d = &self.datum;
        let n = d.rank();
        let s = self.sign;
        for lam in self.spaces.keys() {
            if self.is_frontier(lam) {
                continue;
            }
            let dim = self.dim_at(lam);
            for i in 0..n {
                for j in 0..n {
                    let down = sub_w(lam, d.root_x(j));
                    let up = add_w(lam, d.root_x(i));
                    let ef = self.e_dense(i, &down).mul(&self.f_dense(j, lam));
                    let fe = self.f_dense(j, &up).mul(&self.e_dense(i, lam));
                    let sign = s.pow((d.parity(i) * d.parity(j)) as i64);
                    let lhs = if ef.rows == fe.rows && ef.cols == fe.cols {
                        ef.sub(&fe.scale(&RationalFn::from_int(sign)))
                    } else {
                        return false;
                    };
                    let rhs = if i == j {
                        let di = d.d(i);
                        let t = di * d.pair_i(i, lam);
                        let num = RationalFn::q_pow(t).scale_int(s.pow(t)).sub(&RationalFn::q_pow(-t));
                        let den = RationalFn::q_pow(di)
                            .scale_int(s.pow(d.parity(i) as i64))
                            .sub(&RationalFn::q_pow(-di));
                        Mat::scalar(dim, &num.div(&den))
                    } else {
                        Mat::zeros(lhs.rows, lhs.cols)
                    };
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests;
