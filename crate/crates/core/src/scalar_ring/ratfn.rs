use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::laurent::LaurentPoly;
use super::zpoly::ZLaurent;

/// An element of Q(q) in canonical form.
///
/// The numerator is an integer Laurent polynomial, the denominator an
/// integer polynomial with nonzero constant term and positive leading
/// coefficient, and the two are coprime in Z[q] (contents included).
/// Canonical form makes derived `Eq`/`Hash` agree with equality in Q(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: ZLaurent,
    den: ZLaurent,
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn { num: ZLaurent::zero(), den: ZLaurent::one() }
    }

    pub fn one() -> Self {
        RationalFn { num: ZLaurent::one(), den: ZLaurent::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RationalFn { num: ZLaurent::constant(BigInt::from(n)), den: ZLaurent::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RationalFn { num: ZLaurent::constant(n), den: ZLaurent::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalize(ZLaurent::constant(r.numer().clone()), ZLaurent::constant(r.denom().clone()))
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        RationalFn { num: ZLaurent::monomial(BigInt::from(c), k), den: ZLaurent::one() }
    }

    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (z, d) = p.to_integer_parts();
        Self::normalize(z, ZLaurent::constant(d))
    }

    pub fn from_fraction(num: &LaurentPoly, den: &LaurentPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_laurent(num).div(&Self::from_laurent(den)))
    }

    /// Bring an arbitrary fraction of integer Laurent polynomials into
    /// canonical form.
    pub(crate) fn normalize(mut num: ZLaurent, mut den: ZLaurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low();
        den.shift_in_place(-shift);
        num.shift_in_place(-shift);
        if !den.is_one() {
            let g = num.gcd_stripped(&den);
            if !g.is_one() {
                num = num.div_stripped(&g);
                den = den.div_stripped(&g);
            }
        }
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalFn { num, den }
    }

    /// Canonicalize when numerator and denominator are already known to be
    /// coprime (only q-power and sign adjustments are needed).
    fn renormalize_coprime(mut num: ZLaurent, mut den: ZLaurent) -> Self {
        let shift = den.low();
        den.shift_in_place(-shift);
        num.shift_in_place(-shift);
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalFn { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a unit of Q[q, q^-1] (a nonzero constant).
    pub fn is_laurent(&self) -> bool {
        self.den.is_constant()
    }

    pub fn numerator(&self) -> LaurentPoly {
        LaurentPoly::from_integer(&self.num)
    }

    pub fn denominator(&self) -> LaurentPoly {
        LaurentPoly::from_integer(&self.den)
    }

    /// The Laurent polynomial this value equals, if any.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if !self.is_laurent() {
            return None;
        }
        let d = BigRational::from_integer(self.den.constant_term());
        Some(LaurentPoly::from_integer(&self.num).scale(&d.recip()))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let n = self.num.add(&other.num);
            if self.den.is_one() {
                return RationalFn { num: n, den: self.den.clone() };
            }
            return Self::normalize(n, self.den.clone());
        }
        if other.den.is_one() {
            let n = self.num.add(&other.num.mul(&self.den));
            return RationalFn { num: n, den: self.den.clone() };
        }
        if self.den.is_one() {
            let n = other.num.add(&self.num.mul(&other.den));
            return RationalFn { num: n, den: other.den.clone() };
        }
        let g = self.den.gcd_stripped(&other.den);
        let a = other.den.div_stripped(&g);
        let b = self.den.div_stripped(&g);
        let n = self.num.mul(&a).add(&other.num.mul(&b));
        let d = self.den.mul(&a);
        if g.is_one() {
            // lcm of coprime denominators; the sum stays coprime to it
            return Self::renormalize_coprime(n, d);
        }
        Self::normalize(n, d)
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFn { num: self.num.mul(&other.num), den: ZLaurent::one() };
        }
        let g1 = if other.den.is_one() { ZLaurent::one() } else { self.num.gcd_stripped(&other.den) };
        let g2 = if self.den.is_one() { ZLaurent::one() } else { other.num.gcd_stripped(&self.den) };
        let n = self.num.div_stripped(&g1).mul(&other.num.div_stripped(&g2));
        let d = self.den.div_stripped(&g2).mul(&other.den.div_stripped(&g1));
        Self::renormalize_coprime(n, d)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        let low = den.low();
        den.shift_in_place(-low);
        num.shift_in_place(-low);
        // content of the new denominator is already coprime to the old one
        Self::renormalize_coprime(num, den)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.mul(&Self::from_int(c))
    }

    /// Substitute `q -> q^{-1}` (or `q -> -q^{-1}` when `negate` is set).
    pub fn reflect(&self, negate: bool) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::renormalize_coprime(self.num.reflect(negate), self.den.reflect(negate))
    }

    /// Evaluate at a rational point; `None` at a pole.
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_i64(q);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_i64(q) / d)
    }

    /// Total degree span of numerator and denominator, a cheap size measure.
    pub fn size_hint(&self) -> usize {
        self.num.coeffs().len() + self.den.coeffs().len()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_laurent() {
            write!(f, "{p}")
        } else {
            write!(f, "({})/({})", self.numerator(), self.denominator())
        }
    }
}

impl Default for RationalFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
}

impl One for RationalFn {
    fn one() -> Self {
        RationalFn::one()
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                <$t>::add(&self, &o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                <$t>::sub(&self, &o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                <$t>::mul(&self, &o)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg(&self)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                <$t>::add(self, o)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                <$t>::sub(self, o)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                <$t>::mul(self, o)
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg(self)
            }
        }
    };
}
pub(crate) use forward_ops;

forward_ops!(RationalFn);

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RationalFn {
        RationalFn::q_pow(1)
    }

    #[test]
    fn canonical_after_cancellation() {
        let one = RationalFn::one();
        let a = q().sub(&one); // q - 1
        let b = q().mul(&q()).sub(&one); // q^2 - 1
        let r = b.div(&a);
        assert_eq!(r, q().add(&one));
        assert!(r.is_laurent());
        let s = a.div(&b);
        assert_eq!(s.denominator().to_string(), "1 + q");
        assert_eq!(s.numerator().to_string(), "1");
    }

    #[test]
    fn q_powers_move_to_numerator() {
        let r = RationalFn::one().div(&q().mul(&q()));
        assert!(r.is_laurent());
        assert_eq!(r.to_string(), "q^-2");
        let half = RationalFn::from_int(1).div(&RationalFn::from_int(-2));
        assert_eq!(half.to_string(), "-1/2");
    }

    #[test]
    fn reflection_and_inverse() {
        let x = q().add(&RationalFn::from_int(2)).div(&q().sub(&RationalFn::one()));
        assert_eq!(x.reflect(false).reflect(false), x);
        assert_eq!(x.reflect(true).reflect(true), x);
        assert_eq!(x.mul(&x.inv()), RationalFn::one());
    }

    #[test]
    fn eval_matches_arithmetic() {
        let x = q().add(&RationalFn::from_int(2)).div(&q().sub(&RationalFn::one()));
        let v = x.eval(&BigRational::from_integer(BigInt::from(3))).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(5), BigInt::from(2)));
    }
}
