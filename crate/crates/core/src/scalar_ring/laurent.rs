use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::zpoly::ZLaurent;

/// A Laurent polynomial in `q` with rational coefficients.
///
/// Stored as a sparse map from exponent to coefficient with zero entries
/// removed, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// Split into an integer Laurent polynomial and a positive common
    /// denominator.
    pub(crate) fn to_integer_parts(&self) -> (ZLaurent, BigInt) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        if self.terms.is_empty() {
            return (ZLaurent::zero(), den);
        }
        let low = *self.terms.keys().next().unwrap();
        let high = *self.terms.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - low) as usize] = c.numer() * (&den / c.denom());
        }
        (ZLaurent::from_parts(low, coeffs), den)
    }

    pub(crate) fn from_integer(z: &ZLaurent) -> Self {
        LaurentPoly::from_terms(z.terms().map(|(e, c)| (e, BigRational::from_integer(c.clone()))))
    }

    pub(crate) fn scale(&self, c: &BigRational) -> Self {
        LaurentPoly::from_terms(self.terms().map(|(e, x)| (e, x * c)))
    }
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, c: &BigRational, e: i64) -> fmt::Result {
    let mag = c.abs();
    let var = match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    if var.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{mag}*{var}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_coeff_term(f, c, *e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn display_orders_exponents_upward() {
        let p = LaurentPoly::from_terms([(1, r(1)), (-1, r(1))]);
        assert_eq!(p.to_string(), "q^-1 + q");
        let p = LaurentPoly::from_terms([(2, r(-3)), (0, r(1))]);
        assert_eq!(p.to_string(), "1 - 3*q^2");
    }

    #[test]
    fn cancellation_prunes_terms() {
        let p = LaurentPoly::from_terms([(1, r(2)), (1, r(-2))]);
        assert!(p.is_zero());
    }
}
