//! The free superalgebra 'f on generators θ_i, its twisted coproducts,
//! the derivations r_i and _ir, the bilinear form, and the quotient f
//! realized through per-weight bases.
//!
//! Elements of f are never stored as a quotient type. A homogeneous
//! element of weight ν is represented by its coordinates in a chosen
//! basis B_ν of f_ν; it lies in the radical exactly when all coordinates
//! vanish.

mod basis;
mod elt;
mod oracle;

pub use basis::BasisData;
pub use elt::{fmt_word, FreeElt, TensorElt, Twist, Word};
pub use oracle::{GramRank, SerreSpanDim};

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::datum::{Datum, Nu};
use crate::error::{Error, Result};
use crate::scalar_ring::{choose2, qfact, Scalar};

/// Which derivation: `Left` is _ir (acting from the left), `Right` is r_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Default height cap, overridable with `QCOVER_CAP`.
pub fn default_cap() -> usize {
    std::env::var("QCOVER_CAP").ok().and_then(|s| s.parse().ok()).filter(|&c| c >= 1).unwrap_or(6)
}

type FormKey = (Word, Word);

#[derive(Default)]
struct Caches {
    bases: RwLock<HashMap<Nu, Arc<BasisData>>>,
    coords: RwLock<HashMap<Word, Arc<Vec<Scalar>>>>,
    raw_form: RwLock<HashMap<FormKey, Scalar>>,
}

/// Computation context for 'f and f over one datum.
///
/// Caches are filled lazily. A cache entry is computed without holding a
/// lock and published afterwards, so concurrent readers never block on a
/// long build; two threads racing on the same key compute identical data.
pub struct FreeHalf {
    datum: Arc<Datum>,
    cap: usize,
    caches: Caches,
}

impl FreeHalf {
    pub fn new(datum: Arc<Datum>, cap: usize) -> Self {
        FreeHalf { datum, cap, caches: Caches::default() }
    }

    pub fn datum(&self) -> &Datum {
        &self.datum
    }

    pub fn datum_arc(&self) -> Arc<Datum> {
        self.datum.clone()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// (θ_i, θ_i) = (1 − π_i q_i^{-2})^{-1}.
    pub fn theta_norm(&self, i: usize) -> Scalar {
        let g = self.datum.gen(i);
        Scalar::one().sub(&g.pi_q(1, -2)).inv()
    }

    /// Π_i (θ_i, θ_i)^{ν_i}.
    pub fn norm_factor(&self, nu: &Nu) -> Scalar {
        let mut out = Scalar::one();
        for (i, &k) in nu.0.iter().enumerate() {
            if k > 0 {
                out = out.mul(&self.theta_norm(i).pow(k as i64));
            }
        }
        out
    }

    /// π^{p(a)p(b)} q^{a·b} for words a and b.
    fn word_twist(&self, a: &[u8], b: &[u8], twist: Twist) -> Scalar {
        let d = &self.datum;
        let mut dot = 0;
        for &x in a {
            for &y in b {
                dot += d.dot(x as usize, y as usize);
            }
        }
        let par = (d.word_parity(a) * d.word_parity(b)) as i64;
        match twist {
            Twist::Standard => Scalar::pi_q(par, dot),
            Twist::Bar => Scalar::pi_q(par + dot, -dot),
        }
    }

    pub fn deriv(&self, side: Side, i: usize, x: &FreeElt) -> FreeElt {
        let mut out = FreeElt::zero();
        for (w, c) in x.terms() {
            for (rest, f) in self.deriv_word(side, i, w) {
                out.add_term(rest, c.mul(&f));
            }
        }
        out
    }

    /// Derivation applied to a single word, as a list of (word, factor).
    pub fn deriv_word(&self, side: Side, i: usize, w: &[u8]) -> Vec<(Word, Scalar)> {
        let d = &self.datum;
        let pi = d.parity(i) as i64;
        let mut out = Vec::new();
        for k in 0..w.len() {
            if w[k] as usize != i {
                continue;
            }
            let other = match side {
                Side::Left => &w[..k],
                Side::Right => &w[k + 1..],
            };
            let par = d.word_parity(other) as i64 * pi;
            let dot = d.word_dot_i(other, i);
            let mut rest = w[..k].to_vec();
            rest.extend_from_slice(&w[k + 1..]);
            out.push((rest, Scalar::pi_q(par, dot)));
        }
        out
    }

    /// The form without its normalizing factor: (x, y) = Π(θ_i,θ_i)^{ν_i} · raw(x, y).
    /// Entries of raw lie in Z[q, q^{-1}, π].
    pub fn raw_form_words(&self, x: &[u8], y: &[u8]) -> Scalar {
        if x.len() != y.len() || self.datum.word_weight(x) != self.datum.word_weight(y) {
            return Scalar::zero();
        }
        self.raw_form_rec(x, y)
    }

    fn raw_form_rec(&self, x: &[u8], y: &[u8]) -> Scalar {
        if x.is_empty() {
            return Scalar::one();
        }
        if x.len() == 1 {
            return Scalar::one();
        }
        let key = (x.to_vec(), y.to_vec());
        if let Some(v) = self.caches.raw_form.read().unwrap().get(&key) {
            return v.clone();
        }
        let i = x[0] as usize;
        let mut acc = Scalar::zero();
        for (rest, f) in self.deriv_word(Side::Left, i, y) {
            let v = self.raw_form_rec(&x[1..], &rest);
            if !v.is_zero() {
                acc = acc.add(&f.mul(&v));
            }
        }
        self.caches.raw_form.write().unwrap().insert(key, acc.clone());
        acc
    }

    /// The bilinear form (x, y), peeling the first letter of x.
    pub fn bilinear_form(&self, x: &FreeElt, y: &FreeElt) -> Scalar {
        let mut acc = Scalar::zero();
        let yc = y.components(&self.datum);
        for (nu, xs) in x.components(&self.datum) {
            let Some(ys) = yc.get(&nu) else { continue };
            let mut raw = Scalar::zero();
            for (a, c) in xs.terms() {
                for (b, e) in ys.terms() {
                    let v = self.raw_form_rec(a, b);
                    if !v.is_zero() {
                        raw = raw.add(&c.mul(e).mul(&v));
                    }
                }
            }
            acc = acc.add(&raw.mul(&self.norm_factor(&nu)));
        }
        acc
    }

    /// {x, y} = bar((bar x, bar y)).
    pub fn curly_form(&self, x: &FreeElt, y: &FreeElt) -> Result<Scalar> {
        Ok(self.bilinear_form(&self.bar_free(x)?, &self.bar_free(y)?).bar())
    }

    pub fn bar_free(&self, x: &FreeElt) -> Result<FreeElt> {
        self.datum.require_consistent()?;
        Ok(x.map_coeffs(Scalar::bar))
    }

    pub fn sigma(&self, x: &FreeElt) -> FreeElt {
        x.sigma()
    }

    /// θ_i^{(n)}; zero for negative n.
    pub fn divided_power(&self, i: usize, n: i64) -> FreeElt {
        if n < 0 {
            return FreeElt::zero();
        }
        let f = qfact(n as u32, self.datum.gen(i));
        FreeElt::term(vec![i as u8; n as usize], f.inv())
    }

    /// Product in the twisted tensor algebra on `legs` copies of 'f.
    pub fn tensor_mul(&self, a: &TensorElt, b: &TensorElt) -> TensorElt {
        assert_eq!(a.legs, b.legs, "tensor legs differ");
        assert_eq!(a.twist, b.twist, "tensor twists differ");
        let mut out = TensorElt::zero(a.legs, a.twist);
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                let mut c = ca.mul(cb);
                for k in 0..a.legs {
                    for l in 0..k {
                        if !la[k].is_empty() && !lb[l].is_empty() {
                            c = c.mul(&self.word_twist(&la[k], &lb[l], a.twist));
                        }
                    }
                }
                let legs = la
                    .iter()
                    .zip(lb)
                    .map(|(x, y)| {
                        let mut w = x.clone();
                        w.extend_from_slice(y);
                        w
                    })
                    .collect();
                out.add_term(legs, c);
            }
        }
        out
    }

    /// r(w) for a single word.
    pub fn coproduct_word(&self, w: &[u8], twist: Twist) -> TensorElt {
        let mut acc = TensorElt::unit(2, twist);
        for &c in w {
            let mut g = TensorElt::zero(2, twist);
            g.add_term(vec![vec![c], Vec::new()], Scalar::one());
            g.add_term(vec![Vec::new(), vec![c]], Scalar::one());
            acc = self.tensor_mul(&acc, &g);
        }
        acc
    }

    /// r(x) (standard) or r̄(x) = bar(r(bar x)) (bar twist); both are
    /// algebra maps into the correspondingly twisted tensor square.
    pub fn coproduct(&self, x: &FreeElt, twist: Twist) -> TensorElt {
        let mut out = TensorElt::zero(2, twist);
        for (w, c) in x.terms() {
            out = out.add(&self.coproduct_word(w, twist).scale(c));
        }
        out
    }

    /// Apply r to leg `leg` of a tensor, producing one more leg.
    pub fn coproduct_on_leg(&self, t: &TensorElt, leg: usize) -> TensorElt {
        let mut out = TensorElt::zero(t.legs + 1, t.twist);
        for (legs, c) in t.terms() {
            for (pair, e) in self.coproduct_word(&legs[leg], t.twist).terms() {
                let mut nl = legs[..leg].to_vec();
                nl.push(pair[0].clone());
                nl.push(pair[1].clone());
                nl.extend_from_slice(&legs[leg + 1..]);
                out.add_term(nl, c.mul(e));
            }
        }
        out
    }

    /// (x'⊗x'', y'⊗y'') = (x',y')(x'',y'') extended bilinearly.
    pub fn tensor_form(&self, a: &TensorElt, b: &TensorElt) -> Scalar {
        let mut acc = Scalar::zero();
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                let mut v = ca.mul(cb);
                for (x, y) in la.iter().zip(lb) {
                    if v.is_zero() {
                        break;
                    }
                    v = v.mul(&self.bilinear_form(&FreeElt::word(x.clone()), &FreeElt::word(y.clone())));
                }
                acc = acc.add(&v);
            }
        }
        acc
    }

    /// Σ_{n+n'=N} (−1)^{n'} π_i^{n'p(j)+C(n',2)} θ_i^{(n)} θ_j θ_i^{(n')}, N = 1 − ⟨i,j'⟩.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<FreeElt> {
        if i == j || i >= self.rank() || j >= self.rank() {
            return Err(Error::InvalidArgument(format!("serre element needs distinct generators, got {i},{j}")));
        }
        let big_n = 1 - self.datum.a(i, j);
        let pj = self.datum.parity(j) as i64;
        let g = self.datum.gen(i);
        let mut out = FreeElt::zero();
        for np in 0..=big_n {
            let n = big_n - np;
            let sign = if np % 2 == 0 { 1 } else { -1 };
            let c = g.pi(np * pj + choose2(np)).scale_int(sign);
            let t = self.divided_power(i, n).mul(&FreeElt::theta(j)).mul(&self.divided_power(i, np));
            out = out.add(&t.scale(&c));
        }
        Ok(out)
    }

    /// The basis data of f_ν, built on first use.
    pub fn basis(&self, nu: &Nu) -> Result<Arc<BasisData>> {
        if let Some(b) = self.caches.bases.read().unwrap().get(nu) {
            return Ok(b.clone());
        }
        if nu.height() > self.cap {
            return Err(Error::CapExceeded { height: nu.height(), cap: self.cap });
        }
        let built = Arc::new(basis::build(self, nu)?);
        let mut w = self.caches.bases.write().unwrap();
        Ok(w.entry(nu.clone()).or_insert(built).clone())
    }

    pub fn dim(&self, nu: &Nu) -> Result<usize> {
        Ok(self.basis(nu)?.dim())
    }

    /// Coordinates of a word in the basis of its weight space.
    pub fn reduce_word(&self, w: &[u8]) -> Result<Arc<Vec<Scalar>>> {
        if w.is_empty() {
            return Ok(Arc::new(vec![Scalar::one()]));
        }
        if let Some(v) = self.caches.coords.read().unwrap().get(w) {
            return Ok(v.clone());
        }
        let nu = self.datum.word_weight(w);
        let bd = self.basis(&nu)?;
        let tail = self.reduce_word(&w[1..])?;
        let lm = bd.left_mult(w[0] as usize).ok_or_else(|| Error::Internal("missing left multiplication".into()))?;
        let v = Arc::new(crate::linalg::scalar_vec_mat(&tail, lm));
        self.caches.coords.write().unwrap().insert(w.to_vec(), v.clone());
        Ok(v)
    }

    /// Coordinates of each homogeneous component of x.
    pub fn reduce(&self, x: &FreeElt) -> Result<BTreeMap<Nu, Vec<Scalar>>> {
        let mut out = BTreeMap::new();
        for (nu, comp) in x.components(&self.datum) {
            out.insert(nu.clone(), self.reduce_homogeneous(&comp, &nu)?);
        }
        Ok(out)
    }

    /// Coordinates of x in B_ν; every word of x must have weight ν.
    pub fn reduce_homogeneous(&self, x: &FreeElt, nu: &Nu) -> Result<Vec<Scalar>> {
        let dim = self.basis(nu)?.dim();
        let mut acc = vec![Scalar::zero(); dim];
        for (w, c) in x.terms() {
            if &self.datum.word_weight(w) != nu {
                return Err(Error::InvalidArgument(format!("word {} is not of weight {nu}", fmt_word(w))));
            }
            let v = self.reduce_word(w)?;
            for (a, b) in acc.iter_mut().zip(v.iter()) {
                if !b.is_zero() {
                    *a = a.add(&c.mul(b));
                }
            }
        }
        Ok(acc)
    }

    /// Whether x maps to zero in f.
    pub fn is_zero_in_f(&self, x: &FreeElt) -> Result<bool> {
        Ok(self.reduce(x)?.values().all(|v| v.iter().all(Scalar::is_zero)))
    }

    /// Σ c_b b for coordinates in B_ν.
    pub fn lift(&self, nu: &Nu, coords: &[Scalar]) -> Result<FreeElt> {
        let bd = self.basis(nu)?;
        Ok(FreeElt::from_terms(bd.words.iter().cloned().zip(coords.iter().cloned())))
    }

    /// The derivation r_i (or _ir) on f_ν as a matrix from B_ν
    /// coordinates to B_{ν−i} coordinates.
    pub fn deriv_matrix(&self, side: Side, i: usize, nu: &Nu) -> Result<Vec<Vec<Scalar>>> {
        let bd = self.basis(nu)?;
        let Some(lower) = nu.minus_gen(i) else {
            return Ok(vec![Vec::new(); bd.dim()]);
        };
        bd.words.iter().map(|b| self.reduce_homogeneous(&self.deriv(side, i, &FreeElt::word(b.clone())), &lower)).collect()
    }

    /// Whether x ↦ (r_i(x))_i is injective on f_ν in both sign components.
    pub fn derivations_separate(&self, nu: &Nu) -> Result<bool> {
        let dim = self.dim(nu)?;
        if nu.is_zero() {
            return Ok(true);
        }
        let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); dim];
        for i in 0..self.rank() {
            for (r, part) in rows.iter_mut().zip(self.deriv_matrix(Side::Right, i, nu)?) {
                r.extend(part);
            }
        }
        let cols = rows.first().map_or(0, Vec::len);
        Ok(crate::linalg::scalar_rank(&rows, cols) == [dim, dim])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_ring::qint;

    fn ctx(d: Datum) -> FreeHalf {
        FreeHalf::new(Arc::new(d), 6)
    }

    #[test]
    fn generator_norms() {
        let f = ctx(Datum::b02());
        for i in 0..2 {
            for j in 0..2 {
                let v = f.bilinear_form(&FreeElt::theta(i), &FreeElt::theta(j));
                let want = if i == j { f.theta_norm(i) } else { Scalar::zero() };
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn derivations_on_short_words() {
        let f = ctx(Datum::b02());
        let d = f.datum();
        let w = FreeElt::word(vec![0, 1]);
        assert_eq!(f.deriv(Side::Left, 0, &w), FreeElt::theta(1));
        let want = Scalar::pi_q((d.parity(1) * d.parity(0)) as i64, d.dot(1, 0));
        assert_eq!(f.deriv(Side::Right, 0, &w), FreeElt::term(vec![1], want));
        assert!(f.deriv(Side::Left, 1, &FreeElt::one()).is_zero());
    }

    #[test]
    fn rank_one_dimensions() {
        let f = ctx(Datum::b01());
        for n in 0..=5 {
            assert_eq!(f.dim(&Nu(vec![n])).unwrap(), 1);
        }
        let f = ctx(Datum::b02());
        assert_eq!(f.dim(&Nu(vec![1, 1])).unwrap(), 2);
    }

    #[test]
    fn divided_power_edge_cases() {
        let f = ctx(Datum::b01());
        assert_eq!(f.divided_power(0, 0), FreeElt::one());
        assert!(f.divided_power(0, -1).is_zero());
        let two = f.divided_power(0, 2);
        assert_eq!(two.coeff(&[0, 0]), qint(2, f.datum().gen(0)).inv());
    }

    #[test]
    fn serre_relation_holds_in_f() {
        let f = ctx(Datum::b02());
        for (i, j) in [(0, 1), (1, 0)] {
            let s = f.serre_element(i, j).unwrap();
            assert!(!s.is_zero());
            assert!(f.is_zero_in_f(&s).unwrap());
        }
    }

    #[test]
    fn basis_words_reduce_to_unit_vectors() {
        let f = ctx(Datum::b02());
        let nu = Nu(vec![1, 2]);
        let bd = f.basis(&nu).unwrap();
        for (k, b) in bd.words.iter().enumerate() {
            let v = f.reduce_word(b).unwrap();
            for (l, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), k == l);
                assert_eq!(x.is_zero(), k != l);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = FreeHalf::new(Arc::new(Datum::b01()), 2);
        assert!(matches!(f.basis(&Nu(vec![3])), Err(Error::CapExceeded { .. })));
    }
}
