use std::collections::BTreeMap;
use std::fmt;

use super::{CoveringAlgebra, UElt, UMono};
use crate::error::Result;
use crate::scalar_ring::Scalar;

/// An element of U^{⊗n} with the super sign rule
/// (a₁⊗…⊗aₙ)(b₁⊗…⊗bₙ) = π^{Σ_{k>l} p(a_k)p(b_l)} a₁b₁⊗…⊗aₙbₙ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UTensor {
    pub legs: usize,
    terms: BTreeMap<Vec<UMono>, Scalar>,
}

impl UTensor {
    pub fn zero(legs: usize) -> Self {
        UTensor { legs, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, key: Vec<UMono>, c: Scalar) {
        debug_assert_eq!(key.len(), self.legs);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// a ⊗ b for elements of U.
    pub fn pure(parts: &[&UElt]) -> Self {
        let mut out = UTensor::zero(parts.len());
        let mut acc: Vec<(Vec<UMono>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for p in parts {
            let mut next = Vec::new();
            for (k, c) in &acc {
                for (m, d) in p.terms() {
                    let mut k2 = k.clone();
                    k2.push(m.clone());
                    next.push((k2, c.mul(d)));
                }
            }
            acc = next;
        }
        for (k, c) in acc {
            out.add_term(k, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<UMono>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = UTensor::zero(self.legs);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.mul(c));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = UTensor::zero(self.legs);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), f(x));
        }
        out
    }

    /// Keep the terms selected by `keep`.
    pub fn filter(&self, keep: impl Fn(&[UMono]) -> bool) -> Self {
        let mut out = UTensor::zero(self.legs);
        for (k, x) in &self.terms {
            if keep(k) {
                out.add_term(k.clone(), x.clone());
            }
        }
        out
    }
}

impl fmt::Display for UTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let legs: Vec<String> = k.iter().map(|m| m.to_string()).collect();
                format!("({c}) {}", legs.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl CoveringAlgebra {
    pub fn tensor_one(&self, legs: usize) -> UTensor {
        let one = self.one();
        UTensor::pure(&vec![&one; legs])
    }

    pub fn tensor_mul(&self, a: &UTensor, b: &UTensor) -> Result<UTensor> {
        assert_eq!(a.legs, b.legs, "tensor legs differ");
        let d = self.datum();
        let mut out = UTensor::zero(a.legs);
        for (ka, ca) in a.terms() {
            let pa: Vec<u8> = ka.iter().map(|m| m.parity(d)).collect();
            for (kb, cb) in b.terms() {
                let mut sign = 0i64;
                for k in 0..a.legs {
                    for l in 0..k {
                        sign += (pa[k] * kb[l].parity(d)) as i64;
                    }
                }
                let c = ca.mul(cb).mul(&Scalar::pi_pow(sign));
                let mut acc: Vec<(Vec<UMono>, Scalar)> = vec![(Vec::new(), c)];
                for (x, y) in ka.iter().zip(kb) {
                    let prod = self.mul(&UElt::mono(x.clone(), Scalar::one()), &UElt::mono(y.clone(), Scalar::one()))?;
                    let mut next = Vec::with_capacity(acc.len() * prod.len());
                    for (k, s) in &acc {
                        for (m, t) in prod.terms() {
                            let mut k2 = k.clone();
                            k2.push(m.clone());
                            next.push((k2, s.mul(t)));
                        }
                    }
                    acc = next;
                }
                for (k, s) in acc {
                    out.add_term(k, s);
                }
            }
        }
        Ok(out)
    }

    /// Apply a linear map to one leg.
    pub fn tensor_map_leg(&self, t: &UTensor, leg: usize, f: impl Fn(&UMono) -> Result<UElt>) -> Result<UTensor> {
        let mut out = UTensor::zero(t.legs);
        for (k, c) in t.terms() {
            for (m, s) in f(&k[leg])?.terms() {
                let mut k2 = k.clone();
                k2[leg] = m.clone();
                out.add_term(k2, c.mul(s));
            }
        }
        Ok(out)
    }

    /// Multiply the legs together: m(a ⊗ b) = ab.
    pub fn tensor_collapse(&self, t: &UTensor) -> Result<UElt> {
        let mut out = UElt::zero();
        for (k, c) in t.terms() {
            let factors: Vec<UElt> = k.iter().map(|m| UElt::mono(m.clone(), Scalar::one())).collect();
            out = out.add(&self.mul_all(&factors)?.scale(c));
        }
        Ok(out)
    }
}
