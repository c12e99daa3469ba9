//! Dense Laurent polynomials with big-integer coefficients.
//!
//! This is the arithmetic kernel under [`RationalFn`](super::RationalFn):
//! numerators and denominators are kept with integer coefficients so that
//! the hot loops never touch rational normalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ZLaurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_parts(0, vec![c])
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::from_parts(exp, vec![c])
    }

    pub fn from_parts(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = ZLaurent { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1 && (self.coeffs.is_empty() || self.low == 0)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        let low = self.low;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (low + k as i64, c))
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn constant_term(&self) -> BigInt {
        if self.low > 0 || self.low + (self.coeffs.len() as i64) <= 0 {
            BigInt::zero()
        } else {
            self.coeffs[(-self.low) as usize].clone()
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ZLaurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn shift_in_place(&mut self, k: i64) {
        if !self.is_zero() {
            self.low += k;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + k] += c;
        }
        Self::from_parts(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        ZLaurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]).shift(other.low);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[a + b] += x * y;
                }
            }
        }
        Self::from_parts(self.low + other.low, coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        ZLaurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZLaurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Substitute `q -> s q^{-1}` with `s = ±1`.
    pub fn reflect(&self, negate_q: bool) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let high = self.high();
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        if negate_q {
            for (k, c) in coeffs.iter_mut().enumerate() {
                // exponent in the original polynomial is high - k
                if (high - k as i64).rem_euclid(2) == 1 {
                    *c = -c.clone();
                }
            }
        }
        ZLaurent { low: -high, coeffs }
    }

    pub fn eval_i64(&self, q: &num_rational::BigRational) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in self.terms() {
            acc += num_rational::BigRational::from_integer(c.clone()) * pow_rat(q, e);
        }
        acc
    }
}

fn pow_rat(q: &num_rational::BigRational, e: i64) -> num_rational::BigRational {
    num_traits::pow::Pow::pow(q, e as i32)
}

/// Polynomial helpers below operate on coefficient vectors with exponent 0
/// at index 0 and no trailing zeros.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for k in 0..=db {
            let t = &lr * &b[k];
            r[dr - db + k] -= t;
        }
        while matches!(r.last(), Some(c) if c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            return v;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// gcd over Z[q] of two nonzero ordinary polynomials, normalized to a
/// positive leading coefficient.
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let ca = content_of(a);
    let cb = content_of(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let mut x = primitive(a.to_vec());
    let mut y = primitive(b.to_vec());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(qt) = poly_div_exact(&x, &y) {
        let _ = qt;
        let mut g = y;
        normalize_sign(&mut g);
        return g.into_iter().map(|t| t * &c).collect();
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(r);
    }
    let mut g = primitive(x);
    normalize_sign(&mut g);
    g.into_iter().map(|t| t * &c).collect()
}

fn normalize_sign(v: &mut [BigInt]) {
    if v.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in v.iter_mut() {
            *c = -c.clone();
        }
    }
}

fn content_of(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact division over Z[q]; `None` if `b` does not divide `a`.
pub(crate) fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (qk, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (m, bc) in b.iter().enumerate() {
            r[k + m] -= &qk * bc;
        }
        quot[k] = qk;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    while matches!(quot.last(), Some(c) if c.is_zero()) {
        quot.pop();
    }
    Some(quot)
}

impl ZLaurent {
    /// gcd of the polynomial parts (q-powers stripped) with positive leading
    /// coefficient; both inputs must be nonzero.
    pub fn gcd_stripped(&self, other: &Self) -> ZLaurent {
        let g = poly_gcd(&self.coeffs, &other.coeffs);
        ZLaurent::from_parts(0, g)
    }

    /// Exact division of stripped polynomial parts, keeping this value's
    /// low exponent.
    pub fn div_stripped(&self, d: &ZLaurent) -> ZLaurent {
        if d.is_one() {
            return self.clone();
        }
        if d.coeffs.len() == 1 {
            return self.div_exact_int(&d.coeffs[0]);
        }
        let qt = poly_div_exact(&self.coeffs, &d.coeffs).expect("inexact polynomial division");
        ZLaurent::from_parts(self.low, qt)
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> ZLaurent {
        ZLaurent::from_parts(low, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn trims_and_multiplies() {
        let a = p(-1, &[0, 1, 2, 0]);
        assert_eq!(a.low(), 0);
        assert_eq!(a.high(), 1);
        let b = p(0, &[1, -1]);
        assert_eq!(a.mul(&b), p(0, &[1, 1, -2]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (q-1)(q+2) and (q-1)(2q+1)
        let a = p(0, &[-2, 1, 1]);
        let b = p(0, &[-1, -1, 2]);
        assert_eq!(a.gcd_stripped(&b), p(0, &[-1, 1]));
        let c = p(0, &[2, 4]);
        let d = p(0, &[6, 0, 6]);
        assert_eq!(c.gcd_stripped(&d), p(0, &[2]));
    }

    #[test]
    fn reflection_is_involutive() {
        let a = p(-2, &[3, 0, -1, 5]);
        assert_eq!(a.reflect(false).reflect(false), a);
        assert_eq!(a.reflect(true).reflect(true), a);
        // q -> -q^{-1} on q gives -q^{-1}
        assert_eq!(p(1, &[1]).reflect(true), p(-1, &[-1]));
    }
}
