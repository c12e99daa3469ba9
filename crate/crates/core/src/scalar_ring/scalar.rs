use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

use super::laurent::LaurentPoly;
use super::ratfn::{forward_ops, RationalFn};

/// One of the two sign components π = +1 or π = −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// π^e in this component.
    pub fn pow(self, e: i64) -> i64 {
        if self == Sign::Minus && e.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// An element of Q(q)^π = Q(q)[π]/(π² − 1), stored as its values at
/// π = +1 and π = −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub plus: RationalFn,
    pub minus: RationalFn,
}

impl Scalar {
    pub fn new(plus: RationalFn, minus: RationalFn) -> Self {
        Scalar { plus, minus }
    }

    pub fn zero() -> Self {
        Scalar::new(RationalFn::zero(), RationalFn::zero())
    }

    pub fn one() -> Self {
        Scalar::new(RationalFn::one(), RationalFn::one())
    }

    pub fn from_int(n: i64) -> Self {
        let r = RationalFn::from_int(n);
        Scalar::new(r.clone(), r)
    }

    pub fn from_ratfn(r: RationalFn) -> Self {
        Scalar::new(r.clone(), r)
    }

    pub fn pi() -> Self {
        Scalar::new(RationalFn::one(), RationalFn::from_int(-1))
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_ratfn(RationalFn::q_pow(k))
    }

    /// π^a q^b.
    pub fn pi_q(a: i64, b: i64) -> Self {
        let s = if a.rem_euclid(2) == 1 { -1 } else { 1 };
        Scalar::new(RationalFn::q_pow(b), RationalFn::monomial(s, b))
    }

    /// ±π^a q^b.
    pub fn signed_pi_q(sign: i64, a: i64, b: i64) -> Self {
        let s = if a.rem_euclid(2) == 1 { -sign } else { sign };
        Scalar::new(RationalFn::monomial(sign, b), RationalFn::monomial(s, b))
    }

    pub fn pi_pow(a: i64) -> Self {
        Self::pi_q(a, 0)
    }

    /// a(q) + b(q)·π.
    pub fn from_parts(a: &RationalFn, b: &RationalFn) -> Self {
        Scalar::new(a.add(b), a.sub(b))
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.plus.is_one() && self.minus.is_one()
    }

    pub fn component(&self, sign: Sign) -> &RationalFn {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn specialize(&self, sign: Sign) -> RationalFn {
        self.component(sign).clone()
    }

    pub fn add(&self, o: &Self) -> Self {
        Scalar::new(self.plus.add(&o.plus), self.minus.add(&o.minus))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Scalar::new(self.plus.sub(&o.plus), self.minus.sub(&o.minus))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Scalar::new(self.plus.mul(&o.plus), self.minus.mul(&o.minus))
    }

    pub fn neg(&self) -> Self {
        Scalar::new(self.plus.neg(), self.minus.neg())
    }

    /// Inverse; `None` unless both components are nonzero.
    pub fn try_inv(&self) -> Option<Self> {
        if self.plus.is_zero() || self.minus.is_zero() {
            return None;
        }
        Some(Scalar::new(self.plus.inv(), self.minus.inv()))
    }

    pub fn inv(&self) -> Self {
        self.try_inv().expect("scalar is not a unit")
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        Scalar::new(self.plus.pow(e), self.minus.pow(e))
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.mul(&Scalar::from_int(c))
    }

    /// The bar involution: q ↦ πq^{-1}, π ↦ π.
    pub fn bar(&self) -> Self {
        Scalar::new(self.plus.reflect(false), self.minus.reflect(true))
    }

    /// The parts a, b of `self = a + bπ`.
    pub fn parts(&self) -> (RationalFn, RationalFn) {
        let half = RationalFn::from_rational(&num_rational::BigRational::new(BigInt::one(), BigInt::from(2)));
        let a = self.plus.add(&self.minus).mul(&half);
        let b = self.plus.sub(&self.minus).mul(&half);
        (a, b)
    }

    /// Membership in A^π = Z[q, q^{-1}][π]/(π²−1), with the witness
    /// `(a, b)` satisfying `self = a + bπ`.
    pub fn is_laurent(&self) -> Option<(LaurentPoly, LaurentPoly)> {
        let (a, b) = self.parts();
        let a = a.as_laurent()?;
        let b = b.as_laurent()?;
        if a.has_integer_coefficients() && b.has_integer_coefficients() {
            Some((a, b))
        } else {
            None
        }
    }

    pub fn in_laurent_subring(&self) -> bool {
        self.is_laurent().is_some()
    }
}

fn fmt_part(x: &RationalFn) -> (String, bool) {
    match x.as_laurent() {
        Some(p) => {
            let single = p.len() == 1;
            (p.to_string(), single)
        }
        None => (format!("({})/({})", x.numerator(), x.denominator()), true),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.parts();
        if b.is_zero() {
            return write!(f, "{}", fmt_part(&a).0);
        }
        let (bs, single) = fmt_part(&b);
        let bterm = if bs == "1" {
            "p".to_string()
        } else if bs == "-1" {
            "-p".to_string()
        } else if single {
            format!("{bs}*p")
        } else {
            format!("({bs})*p")
        };
        if a.is_zero() {
            return write!(f, "{bterm}");
        }
        let (as_, _) = fmt_part(&a);
        match bterm.strip_prefix('-') {
            Some(rest) => write!(f, "{as_} - {rest}"),
            None => write!(f, "{as_} + {bterm}"),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

forward_ops!(Scalar);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_of_q_is_pi_over_q() {
        let b = Scalar::q().bar();
        assert_eq!(b, Scalar::pi().mul(&Scalar::q_pow(-1)));
        assert_eq!(Scalar::one().bar(), Scalar::one());
    }

    #[test]
    fn display_report_form() {
        let s = Scalar::q_pow(-1).add(&Scalar::q().mul(&Scalar::pi()));
        assert_eq!(s.to_string(), "q^-1 + q*p");
        let t = Scalar::q_pow(-1).sub(&Scalar::q().mul(&Scalar::pi()));
        assert_eq!(t.to_string(), "q^-1 - q*p");
        assert_eq!(Scalar::pi().to_string(), "p");
        assert_eq!(Scalar::from_int(3).to_string(), "3");
    }

    #[test]
    fn specialization_of_pi() {
        assert_eq!(Scalar::pi().specialize(Sign::Plus), RationalFn::one());
        assert_eq!(Scalar::pi().specialize(Sign::Minus), RationalFn::from_int(-1));
        let s = Scalar::pi().mul(&Scalar::q()).add(&Scalar::q_pow(-1));
        let expect = RationalFn::q_pow(-1).sub(&RationalFn::q_pow(1));
        assert_eq!(s.specialize(Sign::Minus), expect);
    }

    #[test]
    fn laurent_detection() {
        let one = Scalar::one();
        let x = one.div(&Scalar::q().sub(&one));
        assert!(x.is_laurent().is_none());
        let y = Scalar::pi().mul(&Scalar::q()).sub(&Scalar::q_pow(-1));
        assert!(y.try_inv().unwrap().is_laurent().is_none());
        let idem = one.add(&Scalar::pi()).div(&Scalar::from_int(2));
        assert!(idem.is_laurent().is_none());
    }
}
