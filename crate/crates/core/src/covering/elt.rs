use std::collections::BTreeMap;
use std::fmt;

use crate::datum::Datum;
use crate::free_half::Word;
use crate::scalar_ring::Scalar;

/// A normal-form monomial F_w · J_j K_k · E_v, with `j` read in Y/2Y.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UMono {
    pub f: Word,
    pub j: Vec<u8>,
    pub k: Vec<i64>,
    pub e: Word,
}

impl UMono {
    pub fn one(rank_y: usize) -> Self {
        UMono { f: Vec::new(), j: vec![0; rank_y], k: vec![0; rank_y], e: Vec::new() }
    }

    pub fn is_cartan(&self) -> bool {
        self.f.is_empty() && self.e.is_empty()
    }

    pub fn parity(&self, d: &Datum) -> u8 {
        (d.word_parity(&self.f) + d.word_parity(&self.e)) % 2
    }

    /// |E-word| − |F-word| as a signed vector on I.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n];
        for &c in &self.e {
            w[c as usize] += 1;
        }
        for &c in &self.f {
            w[c as usize] -= 1;
        }
        w
    }
}

impl fmt::Display for UMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.f.iter().map(|c| format!("F({c})")).collect();
        if self.j.iter().any(|&x| x != 0) {
            let v: Vec<String> = self.j.iter().map(|x| x.to_string()).collect();
            parts.push(format!("J({})", v.join(",")));
        }
        if self.k.iter().any(|&x| x != 0) {
            let v: Vec<String> = self.k.iter().map(|x| x.to_string()).collect();
            parts.push(format!("K({})", v.join(",")));
        }
        parts.extend(self.e.iter().map(|c| format!("E({c})")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A finite combination of monomials. Elements produced by the algebra
/// context have basis words in both word slots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UElt {
    terms: BTreeMap<UMono, Scalar>,
}

impl UElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(m: UMono, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(m, c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (UMono, Scalar)>>(it: I) -> Self {
        let mut x = Self::zero();
        for (m, c) in it {
            x.add_term(m, c);
        }
        x
    }

    pub fn add_term(&mut self, m: UMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &UMono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
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
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(Scalar::neg)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Keep the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&UMono) -> bool) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())))
    }
}

impl fmt::Display for UElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let ms = m.to_string();
                match (c.is_one(), ms == "1") {
                    (true, _) => ms,
                    (false, true) => format!("({c})"),
                    (false, false) => format!("({c}) {ms}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
