use std::collections::BTreeMap;
use std::fmt;

use crate::datum::{Datum, Nu};
use crate::error::{Error, Result};
use crate::scalar_ring::{parse_terms, Scalar};

/// A word in the generators θ_i, stored as generator indices.
pub type Word = Vec<u8>;

/// A finitely supported combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElt {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn theta(i: usize) -> Self {
        Self::word(vec![i as u8])
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> Self {
        let mut x = Self::zero();
        for (w, c) in it {
            x.add_term(w, c);
        }
        x
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
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
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), f(x))))
    }

    /// Concatenation product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x.mul(y));
            }
        }
        out
    }

    /// Split into homogeneous components by weight.
    pub fn components(&self, datum: &Datum) -> BTreeMap<Nu, FreeElt> {
        let mut out: BTreeMap<Nu, FreeElt> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(datum.word_weight(w)).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    /// The common weight, if the element is nonzero and homogeneous.
    pub fn weight(&self, datum: &Datum) -> Option<Nu> {
        let comps = self.components(datum);
        if comps.len() == 1 {
            comps.into_keys().next()
        } else {
            None
        }
    }

    /// Word reversal, the anti-automorphism σ.
    pub fn sigma(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.iter().rev().copied().collect(), c.clone())))
    }

    pub fn parse(src: &str, n: usize) -> Result<Self> {
        let terms = parse_terms(src, |p| {
            if let Some(args) = p.call_args("th")? {
                if args.len() != 1 || args[0] < 0 || args[0] as usize >= n {
                    return Err(Error::Parse(format!("th() expects a generator index below {n}")));
                }
                return Ok(Some(args[0] as u8));
            }
            Ok(None)
        })?;
        Ok(Self::from_terms(terms.into_iter().map(|(c, w)| (w, c))))
    }
}

pub fn fmt_word(w: &[u8]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|c| format!("th({c})")).collect()
}

fn fmt_coeff_prefix(c: &Scalar) -> Option<String> {
    if c.is_one() {
        None
    } else {
        Some(format!("({c})"))
    }
}

impl fmt::Display for FreeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| match (fmt_coeff_prefix(c), w.is_empty()) {
                (None, _) => fmt_word(w),
                (Some(p), true) => p,
                (Some(p), false) => format!("{p} {}", fmt_word(w)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which multiplication rule a tensor product of 'f uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    Standard,
    Bar,
}

/// An element of a tensor power of 'f with a chosen twisted product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElt {
    pub legs: usize,
    pub twist: Twist,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorElt {
    pub fn zero(legs: usize, twist: Twist) -> Self {
        TensorElt { legs, twist, terms: BTreeMap::new() }
    }

    pub fn unit(legs: usize, twist: Twist) -> Self {
        let mut t = Self::zero(legs, twist);
        t.add_term(vec![Vec::new(); legs], Scalar::one());
        t
    }

    pub fn pure(x: &FreeElt, y: &FreeElt, twist: Twist) -> Self {
        let mut t = Self::zero(2, twist);
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                t.add_term(vec![a.clone(), b.clone()], c.mul(d));
            }
        }
        t
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: Scalar) {
        debug_assert_eq!(legs.len(), self.legs);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&legs) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&legs);
                }
            }
            None => {
                self.terms.insert(legs, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.legs, self.twist);
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x.mul(c));
        }
        out
    }

    /// Same terms read with another product rule.
    pub fn with_twist(&self, twist: Twist) -> Self {
        TensorElt { legs: self.legs, twist, terms: self.terms.clone() }
    }

    /// Unsigned swap of the two legs.
    pub fn swap(&self) -> Self {
        assert_eq!(self.legs, 2);
        let mut out = Self::zero(2, self.twist);
        for (l, c) in &self.terms {
            out.add_term(vec![l[1].clone(), l[0].clone()], c.clone());
        }
        out
    }

    /// Apply a linear map on words to every leg.
    pub fn map_legs(&self, f: impl Fn(&Word) -> Word) -> Self {
        let mut out = Self::zero(self.legs, self.twist);
        for (l, c) in &self.terms {
            out.add_term(l.iter().map(&f).collect(), c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(self.legs, self.twist);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c));
        }
        out
    }
}

impl fmt::Display for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let legs: Vec<String> = l.iter().map(|w| fmt_word(w)).collect();
                format!("({c}) {}", legs.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concatenation() {
        let x = FreeElt::theta(0).add(&FreeElt::theta(1));
        let y = x.mul(&FreeElt::theta(0));
        assert_eq!(y, FreeElt::word(vec![0, 0]).add(&FreeElt::word(vec![1, 0])));
        assert_eq!(FreeElt::one().mul(&y), y);
    }

    #[test]
    fn parse_and_print() {
        let x = FreeElt::parse("(q + p) th(0)th(1) - 2 th(1)", 2).unwrap();
        assert_eq!(x.coeff(&[1]), Scalar::from_int(-2));
        let again = FreeElt::parse(&x.to_string(), 2).unwrap();
        assert_eq!(again, x);
        assert!(FreeElt::parse("th(5)", 2).is_err());
    }
}
