//! (q,π)-integers, factorials and binomial coefficients attached to a
//! generator with symmetrizer `d` and parity `p`, so that
//! `q_i = q^d` and `π_i = π^p`.

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// The data of a single generator needed by the scalar combinatorics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenParams {
    pub d: i64,
    pub parity: u8,
}

impl GenParams {
    pub fn new(d: i64, parity: u8) -> Self {
        GenParams { d, parity }
    }

    /// π_i^a q_i^b.
    pub fn pi_q(&self, a: i64, b: i64) -> Scalar {
        Scalar::pi_q(a * self.parity as i64, b * self.d)
    }

    /// q_i^b.
    pub fn q(&self, b: i64) -> Scalar {
        Scalar::q_pow(b * self.d)
    }

    /// π_i^a.
    pub fn pi(&self, a: i64) -> Scalar {
        Scalar::pi_pow(a * self.parity as i64)
    }

    /// π_i q_i − q_i^{-1}.
    pub fn base_denominator(&self) -> Scalar {
        self.pi_q(1, 1).sub(&self.q(-1))
    }

    /// (π_i q_i)^a − q_i^{-a}.
    fn difference(&self, a: i64) -> Scalar {
        self.pi_q(a, a).sub(&self.q(-a))
    }
}

/// [n]_i = ((π_i q_i)^n − q_i^{-n}) / (π_i q_i − q_i^{-1}).
pub fn qint(n: i64, g: GenParams) -> Scalar {
    g.difference(n).div(&g.base_denominator())
}

/// [n]^!_i.
pub fn qfact(n: u32, g: GenParams) -> Scalar {
    let mut acc = Scalar::one();
    for s in 1..=n as i64 {
        acc = acc.mul(&qint(s, g));
    }
    acc
}

/// The (q,π)-binomial coefficient by its product formula. The result is
/// checked to lie in the Laurent subring.
pub fn qbinom(a: i64, t: i64, g: GenParams) -> Result<Scalar> {
    if t < 0 {
        return Err(Error::InvalidArgument(format!("binomial with negative lower index {t}")));
    }
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for s in 0..t {
        num = num.mul(&g.difference(a - s));
        den = den.mul(&g.difference(s + 1));
    }
    let value = num.div(&den);
    if !value.in_laurent_subring() {
        return Err(Error::Internal(format!("binomial ({a} choose {t}) left the Laurent subring")));
    }
    Ok(value)
}

pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    const ODD1: GenParams = GenParams { d: 1, parity: 1 };

    #[test]
    fn small_values() {
        assert!(qint(0, ODD1).is_zero());
        let two = Scalar::pi().mul(&Scalar::q()).add(&Scalar::q_pow(-1));
        assert_eq!(qint(2, ODD1), two);
        assert_eq!(qfact(2, ODD1), two);
        assert_eq!(qbinom(2, 1, ODD1).unwrap(), two);
        assert_eq!(qint(-1, ODD1), Scalar::pi().neg());
        assert!(qfact(0, ODD1).is_one());
    }

    #[test]
    fn vanishing_and_minus_one() {
        for t in 0..6 {
            for a in 0..t {
                assert!(qbinom(a, t, ODD1).unwrap().is_zero());
            }
            let sign = if t % 2 == 0 { 1 } else { -1 };
            let expect = Scalar::pi_pow(choose2(t + 1)).scale_int(sign);
            assert_eq!(qbinom(-1, t, ODD1).unwrap(), expect);
        }
        assert!(qbinom(3, -1, ODD1).is_err());
    }
}
