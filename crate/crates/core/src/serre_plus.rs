//! Higher Serre elements e_{i,j;n,m}, e′, f, f′ and their identities.

use std::fmt;

use serde::Serialize;

use crate::covering::{CoveringAlgebra, UElt};
use crate::error::{Error, Result};
use crate::free_half::FreeElt;
use crate::scalar_ring::{qbinom, qint, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    E,
    EPrime,
    F,
    FPrime,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::E => "e",
            Kind::EPrime => "e'",
            Kind::F => "f",
            Kind::FPrime => "f'",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HigherSerreSpec {
    pub i: usize,
    pub j: usize,
    pub n: i64,
    pub m: i64,
    pub kind: Kind,
}

impl HigherSerreSpec {
    pub fn new(i: usize, j: usize, n: i64, m: i64, kind: Kind) -> Self {
        HigherSerreSpec { i, j, n, m, kind }
    }
}

/// The summands (coefficient, r, s) of the defining sum.
fn summands(alg: &CoveringAlgebra, s: &HigherSerreSpec) -> Result<Vec<(Scalar, i64, i64)>> {
    let d = alg.datum();
    if s.i == s.j || s.i >= d.rank() || s.j >= d.rank() {
        return Err(Error::InvalidArgument(format!("higher Serre elements need distinct generators, got {},{}", s.i, s.j)));
    }
    if s.n < 0 {
        return Err(Error::InvalidArgument("n must be nonnegative".into()));
    }
    let g = d.gen(s.i);
    let a = d.a(s.i, s.j);
    let mut out = Vec::new();
    for r in 0..=s.m.max(-1) {
        let t = r * (s.n * a + s.m - 1);
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let pi = g.pi(d.p_nm(s.n, r, s.i, s.j));
        let c = match s.kind {
            Kind::E | Kind::EPrime => g.pi_q(-t, -t),
            Kind::F | Kind::FPrime => g.q(t),
        };
        out.push((c.mul(&pi).scale_int(sign), r, s.m - r));
    }
    Ok(out)
}

/// The element of U, zero when m < 0.
pub fn higher_serre(alg: &CoveringAlgebra, s: &HigherSerreSpec) -> Result<UElt> {
    let mut out = UElt::zero();
    for (c, r, rest) in summands(alg, s)? {
        let (i, j, n) = (s.i, s.j, s.n);
        let factors = match s.kind {
            Kind::E => [alg.e_div(i, r)?, alg.e_div(j, n)?, alg.e_div(i, rest)?],
            Kind::EPrime => [alg.e_div(i, rest)?, alg.e_div(j, n)?, alg.e_div(i, r)?],
            Kind::F => [alg.f_div(i, rest)?, alg.f_div(j, n)?, alg.f_div(i, r)?],
            Kind::FPrime => [alg.f_div(i, r)?, alg.f_div(j, n)?, alg.f_div(i, rest)?],
        };
        out = out.add(&alg.mul_all(&factors)?.scale(&c));
    }
    Ok(out)
}

/// The word in 'f underlying e (θ-order r, n, s) or e′ (s, n, r), before
/// reduction modulo the radical.
pub fn higher_serre_free(alg: &CoveringAlgebra, s: &HigherSerreSpec) -> Result<FreeElt> {
    let free = alg.free();
    let mut out = FreeElt::zero();
    for (c, r, rest) in summands(alg, s)? {
        let (first, last) = match s.kind {
            Kind::E | Kind::FPrime => (r, rest),
            Kind::EPrime | Kind::F => (rest, r),
        };
        let t = free.divided_power(s.i, first).mul(&free.divided_power(s.j, s.n)).mul(&free.divided_power(s.i, last));
        out = out.add(&t.scale(&c));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct GridCell {
    pub i: usize,
    pub j: usize,
    pub n: i64,
    pub m: i64,
    /// m > −n⟨i,j′⟩, where vanishing is claimed.
    pub claimed: bool,
    pub vanishes: bool,
}

/// Whether e_{i,j;n,m} is zero in f.
pub fn verify_vanishing(alg: &CoveringAlgebra, i: usize, j: usize, n: i64, m: i64) -> Result<bool> {
    let x = higher_serre_free(alg, &HigherSerreSpec::new(i, j, n, m, Kind::E))?;
    alg.free().is_zero_in_f(&x)
}

pub fn vanishing_grid(alg: &CoveringAlgebra, nmax: i64, mmax: i64) -> Result<Vec<GridCell>> {
    let d = alg.datum();
    let mut out = Vec::new();
    for i in 0..d.rank() {
        for j in 0..d.rank() {
            if i == j {
                continue;
            }
            for n in 0..=nmax {
                for m in 0..=mmax {
                    let claimed = m > -n * d.a(i, j);
                    out.push(GridCell { i, j, n, m, claimed, vanishes: verify_vanishing(alg, i, j, n, m)? });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub i: usize,
    pub j: usize,
    pub params: Vec<i64>,
    pub holds: bool,
    /// Both sides reduce to zero in U.
    pub trivial: bool,
}

fn e_nm(alg: &CoveringAlgebra, i: usize, j: usize, n: i64, m: i64) -> Result<UElt> {
    if m < 0 {
        return Ok(UElt::zero());
    }
    higher_serre(alg, &HigherSerreSpec::new(i, j, n, m, Kind::E))
}

fn check(lemma: &str, i: usize, j: usize, params: Vec<i64>, lhs: UElt, rhs: UElt) -> LemmaCheck {
    LemmaCheck { lemma: lemma.into(), i, j, params, trivial: lhs.is_zero() && rhs.is_zero(), holds: lhs == rhs }
}

/// The commutation lemmas for higher Serre elements over small ranges:
/// the E_i and F_i commutators, their divided-power versions for
/// N, M ≤ `big`, and the F_j commutator at m = 1 − n⟨i,j′⟩.
pub fn verify_hs_lemmas(alg: &CoveringAlgebra, i: usize, j: usize, nmax: i64, mmax: i64, big: i64) -> Result<Vec<LemmaCheck>> {
    let d = alg.datum();
    let gi = d.gen(i);
    let gj = d.gen(j);
    let a = d.a(i, j);
    let pi = d.parity(i) as i64;
    let pj = d.parity(j) as i64;
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=mmax {
            let e = e_nm(alg, i, j, n, m)?;
            // commutator with E_i
            let lhs = alg
                .mul(&e, &alg.e(i))?
                .sub(&alg.mul(&alg.e(i), &e)?.scale(&gi.q(-n * a - 2 * m).mul(&gi.pi(m + n * pj))));
            let rhs = e_nm(alg, i, j, n, m + 1)?.scale(&qint(m + 1, gi));
            out.push(check("E-commutator", i, j, vec![n, m], lhs, rhs));
            // commutator with F_i
            if m >= 1 {
                let lhs = alg.mul(&e, &alg.f(i))?.scale(&gi.pi(m + n * pj)).sub(&alg.mul(&alg.f(i), &e)?);
                let c = qint(-n * a - m + 1, gi).mul(&gi.pi(n * pj + 1));
                let rhs = alg.mul(&alg.k_tilde(i, -1), &e_nm(alg, i, j, n, m - 1)?)?.scale(&c);
                out.push(check("F-commutator", i, j, vec![n, m], lhs, rhs));
            }
            for big_n in 1..=big {
                // E_i^{(N)} e_{n,m}
                let lhs = alg.mul(&alg.e_div(i, big_n)?, &e)?;
                let mut rhs = UElt::zero();
                for k in 0..=big_n {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let c = gi
                        .q(big_n * (n * a + 2 * m) + (big_n - 1) * k)
                        .mul(&gi.pi(big_n * (n * pj + m) + crate::scalar_ring::choose2(k)))
                        .mul(&qbinom(m + k, k, gi)?)
                        .scale_int(sign);
                    let t = alg.mul(&e_nm(alg, i, j, n, m + k)?, &alg.e_div(i, big_n - k)?)?;
                    rhs = rhs.add(&t.scale(&c));
                }
                out.push(check("E-divided", i, j, vec![n, m, big_n], lhs, rhs));
                // F_i^{(M)} e_{n,m}
                let big_m = big_n;
                let lhs = alg.mul(&alg.f_div(i, big_m)?, &e)?;
                let mut rhs = UElt::zero();
                for h in 0..=big_m {
                    if m - h < 0 {
                        continue;
                    }
                    let sign = if h % 2 == 0 { 1 } else { -1 };
                    let c = gi
                        .q(-(big_m - 1) * h)
                        .mul(&gi.pi(big_m * (m + n * pj) + (big_m - m) * h))
                        .mul(&qbinom(-n * a - m + h, h, gi)?)
                        .scale_int(sign);
                    let t = alg.mul_all(&[alg.k_tilde(i, -h), e_nm(alg, i, j, n, m - h)?, alg.f_div(i, big_m - h)?])?;
                    rhs = rhs.add(&t.scale(&c));
                }
                out.push(check("F-divided", i, j, vec![n, m, big_m], lhs, rhs));
            }
        }
        // commutator with F_j at m = 1 − n⟨i,j′⟩
        if n >= 1 {
            let m = 1 - n * a;
            let e = e_nm(alg, i, j, n, m)?;
            let fj = alg.f(j);
            let lhs = alg.mul(&fj, &e)?.sub(&alg.mul(&e, &fj)?.scale(&gj.pi(m * pi + n)));
            let prev = e_nm(alg, i, j, n - 1, m)?;
            let den = gj.pi_q(1, 1).sub(&gj.q(-1)).inv();
            let t = d.tilde_y(j, 1);
            let first = alg.mul(&alg.k_tilde(j, -1), &prev)?.scale(&gj.q(n - 1).mul(&den));
            let second = alg.mul(&alg.cartan(&t, &t), &alg.bar(&prev)?)?.scale(&gj.q(1 - n).mul(&den));
            let rhs = first.sub(&second).scale(&gj.pi(n));
            out.push(check("Fj-commutator", i, j, vec![n, m], lhs, rhs));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct KindRelation {
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub n: i64,
    pub m: i64,
    pub holds: bool,
}

/// e′ = σ(e), f′ = σω²(f), e = ω(bar f′), e′ = ω(bar f).
pub fn verify_kind_relations(alg: &CoveringAlgebra, i: usize, j: usize, nmax: i64, mmax: i64) -> Result<Vec<KindRelation>> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for m in 0..=mmax {
            let get = |k| higher_serre(alg, &HigherSerreSpec::new(i, j, n, m, k));
            let (e, ep, f, fp) = (get(Kind::E)?, get(Kind::EPrime)?, get(Kind::F)?, get(Kind::FPrime)?);
            let w2f = alg.omega(&alg.omega(&f)?)?;
            let rows = [
                ("e' = sigma(e)", ep == alg.sigma(&e)?),
                ("f' = sigma(omega^2(f))", fp == alg.sigma(&w2f)?),
                ("e = omega(bar(f'))", e == alg.omega(&alg.bar(&fp)?)?),
                ("e' = omega(bar(f))", ep == alg.omega(&alg.bar(&f)?)?),
            ];
            for (relation, holds) in rows {
                out.push(KindRelation { relation: relation.into(), i, j, n, m, holds });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::Datum;
    use crate::free_half::FreeHalf;
    use std::sync::Arc;

    fn alg(d: Datum, cap: usize) -> CoveringAlgebra {
        CoveringAlgebra::new(Arc::new(FreeHalf::new(Arc::new(d), cap)))
    }

    #[test]
    fn m_zero_is_a_single_divided_power() {
        let a = alg(Datum::b02(), 4);
        let e = higher_serre(&a, &HigherSerreSpec::new(1, 0, 2, 0, Kind::E)).unwrap();
        assert_eq!(e, a.e_div(0, 2).unwrap());
    }

    #[test]
    fn first_case_is_the_serre_element() {
        let a = alg(Datum::b02(), 4);
        for (i, j) in [(0, 1), (1, 0)] {
            let m = 1 - a.datum().a(i, j);
            let x = higher_serre_free(&a, &HigherSerreSpec::new(i, j, 1, m, Kind::EPrime)).unwrap();
            assert_eq!(x, a.free().serre_element(i, j).unwrap());
        }
    }

    #[test]
    fn boundary_does_not_vanish() {
        let a = alg(Datum::b02(), 6);
        assert!(verify_vanishing(&a, 1, 0, 1, 3).unwrap());
        assert!(!verify_vanishing(&a, 1, 0, 1, 2).unwrap());
    }

    #[test]
    fn lemmas_hold_on_small_range() {
        let a = alg(Datum::b02(), 6);
        for c in verify_hs_lemmas(&a, 1, 0, 1, 2, 2).unwrap() {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn kind_relations_small() {
        let a = alg(Datum::b02(), 6);
        for r in verify_kind_relations(&a, 1, 0, 1, 2).unwrap() {
            assert!(r.holds, "{r:?}");
        }
    }
}
