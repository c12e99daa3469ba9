//! The quantum covering group U in the triangular normal form
//! F-word · J_j K_k · E-word.
//!
//! Products are normalized by moving E letters to the right of F letters
//! with the defining commutation relation, one letter at a time; the
//! result of E_v · F_w for basis words v, w is cached. Words in both
//! slots are kept as basis words of f, so elements of the radical vanish
//! automatically.

mod elt;
mod maps;
mod tensor;

pub use elt::{UElt, UMono};
pub use tensor::UTensor;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::datum::{Datum, Nu};
use crate::error::{Error, Result};
use crate::free_half::{FreeElt, FreeHalf, Word};
use crate::scalar_ring::{parse_terms, Scalar};

pub struct CoveringAlgebra {
    free: Arc<FreeHalf>,
    ef: RwLock<HashMap<(Word, Word), Arc<UElt>>>,
}

impl CoveringAlgebra {
    pub fn new(free: Arc<FreeHalf>) -> Self {
        CoveringAlgebra { free, ef: RwLock::new(HashMap::new()) }
    }

    pub fn free(&self) -> &FreeHalf {
        &self.free
    }

    pub fn free_arc(&self) -> Arc<FreeHalf> {
        self.free.clone()
    }

    pub fn datum(&self) -> &Datum {
        self.free.datum()
    }

    fn n(&self) -> usize {
        self.datum().rank()
    }

    fn ry(&self) -> usize {
        self.datum().rank_y()
    }

    // ----- constructors -------------------------------------------------

    pub fn one(&self) -> UElt {
        self.scalar(Scalar::one())
    }

    pub fn scalar(&self, c: Scalar) -> UElt {
        UElt::mono(UMono::one(self.ry()), c)
    }

    pub fn e(&self, i: usize) -> UElt {
        let mut m = UMono::one(self.ry());
        m.e = vec![i as u8];
        UElt::mono(m, Scalar::one())
    }

    pub fn f(&self, i: usize) -> UElt {
        let mut m = UMono::one(self.ry());
        m.f = vec![i as u8];
        UElt::mono(m, Scalar::one())
    }

    /// J_j K_k.
    pub fn cartan(&self, j: &[i64], k: &[i64]) -> UElt {
        let m = UMono { f: Vec::new(), j: j.iter().map(|x| x.rem_euclid(2) as u8).collect(), k: k.to_vec(), e: Vec::new() };
        UElt::mono(m, Scalar::one())
    }

    pub fn k(&self, mu: &[i64]) -> UElt {
        self.cartan(&vec![0; self.ry()], mu)
    }

    pub fn j(&self, mu: &[i64]) -> UElt {
        self.cartan(mu, &vec![0; self.ry()])
    }

    /// K̃_{s·i}.
    pub fn k_tilde(&self, i: usize, s: i64) -> UElt {
        self.k(&self.datum().tilde_y(i, s))
    }

    /// J̃_{s·i}.
    pub fn j_tilde(&self, i: usize, s: i64) -> UElt {
        self.j(&self.datum().tilde_y(i, s))
    }

    /// K̃_ν and J̃_ν for a signed vector ν on I, as a pair of exponents.
    pub fn tilde_exponent(&self, nu: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.ry()];
        for (i, &c) in nu.iter().enumerate() {
            for (o, v) in out.iter_mut().zip(self.datum().tilde_y(i, c)) {
                *o += v;
            }
        }
        out
    }

    /// x⁺: the image of x ∈ f under θ_i ↦ E_i.
    pub fn plus(&self, x: &FreeElt) -> Result<UElt> {
        let mut out = UElt::zero();
        for (nu, coords) in self.free.reduce(x)? {
            let bd = self.free.basis(&nu)?;
            for (w, c) in bd.words.iter().zip(coords) {
                let mut m = UMono::one(self.ry());
                m.e = w.clone();
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// x⁻: the image of x ∈ f under θ_i ↦ F_i.
    pub fn minus(&self, x: &FreeElt) -> Result<UElt> {
        let mut out = UElt::zero();
        for (nu, coords) in self.free.reduce(x)? {
            let bd = self.free.basis(&nu)?;
            for (w, c) in bd.words.iter().zip(coords) {
                let mut m = UMono::one(self.ry());
                m.f = w.clone();
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn e_div(&self, i: usize, n: i64) -> Result<UElt> {
        self.plus(&self.free.divided_power(i, n))
    }

    pub fn f_div(&self, i: usize, n: i64) -> Result<UElt> {
        self.minus(&self.free.divided_power(i, n))
    }

    /// [K̃_i; a over t]_i = Π_{s=1..t} ((π_iq_i)^{a−s+1} J̃_iK̃_i − q_i^{s−a−1} K̃_{−i}) / ((π_iq_i)^s − q_i^{−s}).
    pub fn ktilde_binomial(&self, i: usize, a: i64, t: i64) -> Result<UElt> {
        if t < 0 {
            return Err(Error::InvalidArgument("ktilde_binomial needs t ≥ 0".into()));
        }
        let g = self.datum().gen(i);
        let d = self.datum().tilde_y(i, 1);
        let dm = self.datum().tilde_y(i, -1);
        let mut acc = self.one();
        for s in 1..=t {
            let den = g.pi_q(s, s).sub(&g.q(-s)).inv();
            let factor = self
                .cartan(&d, &d)
                .scale(&g.pi_q(a - s + 1, a - s + 1))
                .sub(&self.k(&dm).scale(&g.q(s - a - 1)))
                .scale(&den);
            acc = self.mul(&acc, &factor)?;
        }
        Ok(acc)
    }

    // ----- normalization ------------------------------------------------

    /// q^{−⟨k,ν'⟩} π^{⟨j,ν'⟩}: the scalar from moving J_jK_k rightwards past
    /// an F-word of weight ν, or leftwards past an E-word of weight ν.
    fn cartan_past(&self, j: &[u8], k: &[i64], word: &[u8]) -> Scalar {
        if word.is_empty() {
            return Scalar::one();
        }
        let d = self.datum();
        let nux = d.nu_x(&d.word_weight(word));
        let jv: Vec<i64> = j.iter().map(|&x| x as i64).collect();
        Scalar::pi_q(d.pair(&jv, &nux), -d.pair(k, &nux))
    }

    fn reduce_word_pairs(&self, w: &[u8]) -> Result<Vec<(Word, Scalar)>> {
        if w.is_empty() {
            return Ok(vec![(Vec::new(), Scalar::one())]);
        }
        let coords = self.free.reduce_word(w)?;
        let bd = self.free.basis(&self.datum().word_weight(w))?;
        Ok(bd.words.iter().cloned().zip(coords.iter().cloned()).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Add c · F_f J_j K_k E_e with arbitrary words, reducing both.
    fn push_reduced(&self, out: &mut UElt, f: &[u8], j: Vec<u8>, k: Vec<i64>, e: &[u8], c: &Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let fs = self.reduce_word_pairs(f)?;
        let es = self.reduce_word_pairs(e)?;
        for (fw, fc) in &fs {
            for (ew, ec) in &es {
                let m = UMono { f: fw.clone(), j: j.clone(), k: k.clone(), e: ew.clone() };
                out.add_term(m, c.mul(fc).mul(ec));
            }
        }
        Ok(())
    }

    /// Bring any element into normal form with basis words.
    pub fn normalize(&self, u: &UElt) -> Result<UElt> {
        let mut out = UElt::zero();
        for (m, c) in u.terms() {
            self.push_reduced(&mut out, &m.f, m.j.clone(), m.k.clone(), &m.e, c)?;
        }
        Ok(out)
    }

    fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn add_j(a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(x, y)| (x + y) % 2).collect()
    }

    /// E_v · F_w for basis words v, w.
    fn mul_ef(&self, e: &[u8], f: &[u8]) -> Result<Arc<UElt>> {
        if e.is_empty() || f.is_empty() {
            let m = UMono { f: f.to_vec(), j: vec![0; self.ry()], k: vec![0; self.ry()], e: e.to_vec() };
            return Ok(Arc::new(UElt::mono(m, Scalar::one())));
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(v) = self.ef.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let d = self.datum();
        let a = e[0] as usize;
        let pa = d.parity(a) as i64;
        let g = d.gen(a);
        let inner = self.mul_ef(&e[1..], f)?;
        let denom = g.pi_q(1, 1).sub(&g.q(-1)).inv();
        let jt = self.datum().tilde_y(a, 1).iter().map(|x| x.rem_euclid(2) as u8).collect::<Vec<_>>();
        let kt = self.datum().tilde_y(a, 1);
        let kt_neg = self.datum().tilde_y(a, -1);
        let zero_j = vec![0u8; self.ry()];
        let mut out = UElt::zero();
        for (m, c) in inner.terms() {
            // E_a F' = π^{p(a)p(F')} F' E_a + Σ_k π^{p(a)p(F'<k)} F'<k H F'>k
            let sign = Scalar::pi_pow(pa * d.word_parity(&m.f) as i64);
            let past = self.cartan_past(&m.j, &m.k, &[a as u8]);
            let mut ew = vec![a as u8];
            ew.extend_from_slice(&m.e);
            self.push_reduced(&mut out, &m.f, m.j.clone(), m.k.clone(), &ew, &c.mul(&sign).mul(&past))?;
            for pos in 0..m.f.len() {
                if m.f[pos] as usize != a {
                    continue;
                }
                let (pre, post) = (&m.f[..pos], &m.f[pos + 1..]);
                let s = Scalar::pi_pow(pa * d.word_parity(pre) as i64).mul(&denom).mul(c);
                let mut fw = pre.to_vec();
                fw.extend_from_slice(post);
                // J̃_aK̃_a term
                let c1 = s.mul(&self.cartan_past(&jt, &kt, post));
                self.push_reduced(&mut out, &fw, Self::add_j(&jt, &m.j), Self::add_vec(&kt, &m.k), &m.e, &c1)?;
                // −K̃_{−a} term
                let c2 = s.mul(&self.cartan_past(&zero_j, &kt_neg, post)).neg();
                self.push_reduced(&mut out, &fw, m.j.clone(), Self::add_vec(&kt_neg, &m.k), &m.e, &c2)?;
            }
        }
        let out = Arc::new(out);
        self.ef.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn mul_mono(&self, a: &UMono, b: &UMono, c: &Scalar, out: &mut UElt) -> Result<()> {
        let mid = self.mul_ef(&a.e, &b.f)?;
        for (m, mc) in mid.terms() {
            let s1 = self.cartan_past(&a.j, &a.k, &m.f);
            let s2 = self.cartan_past(&b.j, &b.k, &m.e);
            let mut fw = a.f.clone();
            fw.extend_from_slice(&m.f);
            let mut ew = m.e.clone();
            ew.extend_from_slice(&b.e);
            let j = Self::add_j(&Self::add_j(&a.j, &m.j), &b.j);
            let k = Self::add_vec(&Self::add_vec(&a.k, &m.k), &b.k);
            self.push_reduced(out, &fw, j, k, &ew, &c.mul(mc).mul(&s1).mul(&s2))?;
        }
        Ok(())
    }

    /// The product in U, in normal form.
    pub fn mul(&self, u: &UElt, v: &UElt) -> Result<UElt> {
        let mut out = UElt::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                self.mul_mono(a, b, &ca.mul(cb), &mut out)?;
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[UElt]) -> Result<UElt> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, u: &UElt, n: u32) -> Result<UElt> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, u)?;
        }
        Ok(acc)
    }

    /// The monomial written as a product of generators F…F · J · K · E…E.
    pub fn letters(&self, m: &UMono) -> Vec<Letter> {
        let mut out: Vec<Letter> = m.f.iter().map(|&c| Letter::F(c as usize)).collect();
        if m.j.iter().any(|&x| x != 0) {
            out.push(Letter::J(m.j.iter().map(|&x| x as i64).collect()));
        }
        if m.k.iter().any(|&x| x != 0) {
            out.push(Letter::K(m.k.clone()));
        }
        out.extend(m.e.iter().map(|&c| Letter::E(c as usize)));
        out
    }

    pub fn letter_elt(&self, l: &Letter) -> UElt {
        match l {
            Letter::E(i) => self.e(*i),
            Letter::F(i) => self.f(*i),
            Letter::K(mu) => self.k(mu),
            Letter::J(mu) => self.j(mu),
        }
    }

    pub fn letter_parity(&self, l: &Letter) -> u8 {
        match l {
            Letter::E(i) | Letter::F(i) => self.datum().parity(*i),
            _ => 0,
        }
    }

    /// Weight of the monomial in X: Σ (|E| − |F|)'.
    pub fn weight_x(&self, m: &UMono) -> Vec<i64> {
        let d = self.datum();
        let mut out = d.nu_x(&d.word_weight(&m.e));
        for (o, v) in out.iter_mut().zip(d.nu_x(&d.word_weight(&m.f))) {
            *o -= v;
        }
        out
    }

    pub fn parse(&self, src: &str) -> Result<UElt> {
        let n = self.n();
        let ry = self.ry();
        let terms = parse_terms(src, |p| {
            for (kw, kind) in [("E", 0), ("F", 1), ("K", 2), ("J", 3)] {
                if let Some(args) = p.call_args(kw)? {
                    return match kind {
                        0 | 1 => {
                            if args.len() != 1 || args[0] < 0 || args[0] as usize >= n {
                                return Err(Error::Parse(format!("{kw}() expects a generator index below {n}")));
                            }
                            let i = args[0] as usize;
                            Ok(Some(if kind == 0 { Letter::E(i) } else { Letter::F(i) }))
                        }
                        _ => {
                            if args.len() != ry {
                                return Err(Error::Parse(format!("{kw}() expects {ry} coordinates")));
                            }
                            Ok(Some(if kind == 2 { Letter::K(args) } else { Letter::J(args) }))
                        }
                    };
                }
            }
            Ok(None)
        })?;
        let mut out = UElt::zero();
        for (c, letters) in terms {
            let factors: Vec<UElt> = letters.iter().map(|l| self.letter_elt(l)).collect();
            out = out.add(&self.mul_all(&factors)?.scale(&c));
        }
        Ok(out)
    }

    /// Components of u by the weight of the E-word and F-word.
    pub fn split_by_words(&self, u: &UElt) -> HashMap<(Nu, Nu), UElt> {
        let d = self.datum();
        let mut out: HashMap<(Nu, Nu), UElt> = HashMap::new();
        for (m, c) in u.terms() {
            out.entry((d.word_weight(&m.f), d.word_weight(&m.e))).or_default().add_term(m.clone(), c.clone());
        }
        out
    }
}

/// A single generator of U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    E(usize),
    F(usize),
    K(Vec<i64>),
    J(Vec<i64>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_ring::GenParams;

    fn alg(d: Datum) -> CoveringAlgebra {
        CoveringAlgebra::new(Arc::new(FreeHalf::new(Arc::new(d), 6)))
    }

    #[test]
    fn rank_one_ef_relation() {
        let u = alg(Datum::b01());
        let g: GenParams = u.datum().gen(0);
        let ef = u.mul(&u.e(0), &u.f(0)).unwrap();
        let fe = u.mul(&u.f(0), &u.e(0)).unwrap();
        let lhs = ef.sub(&fe.scale(&Scalar::pi()));
        let den = g.pi_q(1, 1).sub(&g.q(-1)).inv();
        let rhs = u.cartan(&[1], &[1]).sub(&u.k(&[-1])).scale(&den);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_conjugation() {
        let u = alg(Datum::b02());
        let d = u.datum().clone();
        let mu = vec![1, -2];
        for i in 0..2 {
            let lhs = u.mul_all(&[u.k(&mu), u.e(i), u.k(&[-1, 2])]).unwrap();
            let want = u.e(i).scale(&Scalar::q_pow(d.pair(&mu, d.root_x(i))));
            assert_eq!(lhs, want);
        }
    }

    #[test]
    fn serre_vanishes_in_u() {
        let u = alg(Datum::b02());
        let s = u.free().serre_element(1, 0).unwrap();
        assert!(u.plus(&s).unwrap().is_zero());
        let letters = [u.e(1), u.e(1), u.e(1), u.e(0)];
        let w = u.mul_all(&letters).unwrap();
        assert!(!w.is_zero());
    }

    #[test]
    fn parse_round_trip() {
        let u = alg(Datum::b02());
        let x = u.parse("(q + p) F(0) K(1,0) E(1) - 2 J(1,1) E(0)").unwrap();
        let again = u.parse(&x.to_string()).unwrap();
        assert_eq!(x, again);
        assert!(u.parse("E(7)").is_err());
    }
}
