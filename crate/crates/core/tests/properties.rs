use std::sync::Arc;

use proptest::prelude::*;

use qcover::covering::{CoveringAlgebra, UElt};
use qcover::datum::{Datum, Nu};
use qcover::free_half::{FreeElt, FreeHalf};
use qcover::scalar_ring::{qbinom, GenParams, Scalar, Sign};
use qcover::suites::{run_suite, SuiteName};

const ODD: GenParams = GenParams { d: 1, parity: 1 };
const EVEN2: GenParams = GenParams { d: 2, parity: 0 };

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, 0i64..=1, -3i64..=3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, a, b)| acc.add(&Scalar::pi_q(a, b).scale_int(c)))
    })
}

/// Q(q)^π has zero divisors such as 1+π, so only scalars with both components nonzero are units.
fn unit_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("unit", |s| s.try_inv().is_some())
}

fn b02_free() -> Arc<FreeHalf> {
    Arc::new(FreeHalf::new(Arc::new(Datum::b02()), 5))
}

/// A combination of up to three words of the same weight.
fn same_weight_elt(nu: Vec<u8>) -> impl Strategy<Value = FreeElt> {
    prop::collection::vec((Just(nu).prop_shuffle(), -2i64..=2, -2i64..=2), 1..=3).prop_map(|ts| {
        FreeElt::from_terms(ts.into_iter().map(|(w, c, e)| (w, Scalar::q_pow(e).scale_int(c))))
    })
}

fn word_of_height(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 1..=max)
}

fn u_letters() -> impl Strategy<Value = Vec<(u8, usize)>> {
    prop::collection::vec((0u8..3, 0usize..2), 0..=2)
}

fn u_elt(alg: &CoveringAlgebra, letters: &[(u8, usize)]) -> UElt {
    let mut out = alg.one();
    for &(kind, i) in letters {
        let g = match kind {
            0 => alg.e(i),
            1 => alg.f(i),
            _ => alg.k_tilde(i, 1),
        };
        out = alg.mul(&out, &g).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(), b in unit_scalar()) {
        prop_assert_eq!(a.mul(&b).div(&b), a);
    }

    #[test]
    fn units_are_exactly_the_componentwise_nonzero(a in scalar()) {
        let unit = !a.component(Sign::Plus).is_zero() && !a.component(Sign::Minus).is_zero();
        prop_assert_eq!(a.try_inv().is_some(), unit);
        if let Some(inv) = a.try_inv() {
            prop_assert_eq!(a.mul(&inv), Scalar::one());
        }
    }

    #[test]
    fn bar_is_an_involutive_homomorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
    }

    #[test]
    fn binomial_pascal_and_negation(a in -6i64..=6, t in 1i64..=5, odd in any::<bool>()) {
        let g = if odd { ODD } else { EVEN2 };
        // Pascal at a'' = 1: only t'' ∈ {0, 1} contribute
        let lhs = qbinom(a, t, g).unwrap();
        let rhs = g.q(-t).mul(&qbinom(a - 1, t, g).unwrap())
            .add(&g.pi_q(a + t - 2, a - t).mul(&qbinom(a - 1, t - 1, g).unwrap()));
        prop_assert_eq!(&lhs, &rhs);
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let neg = g.pi(t * a + t * (t - 1) / 2).mul(&qbinom(a + t - 1, t, g).unwrap()).scale_int(sign);
        prop_assert_eq!(qbinom(-a, t, g).unwrap(), neg);
        prop_assert!(lhs.is_laurent().is_some());
    }

    #[test]
    fn form_is_symmetric_and_sigma_invariant(
        (x, y) in word_of_height(4).prop_flat_map(|w| (same_weight_elt(w.clone()), same_weight_elt(w)))
    ) {
        let free = b02_free();
        prop_assert_eq!(free.bilinear_form(&x, &y), free.bilinear_form(&y, &x));
        prop_assert_eq!(free.bilinear_form(&x.sigma(), &y.sigma()), free.bilinear_form(&x, &y));
    }

    #[test]
    fn sigma_reverses_products(a in word_of_height(3), b in word_of_height(3)) {
        let (x, y) = (FreeElt::word(a), FreeElt::word(b));
        prop_assert_eq!(x.mul(&y).sigma(), y.sigma().mul(&x.sigma()));
    }

    #[test]
    fn pi_parity_matches_half_norm(k0 in 0u32..5, k1 in 0u32..5) {
        let d = Datum::b02();
        let nu = Nu(vec![k0, k1]);
        prop_assert_eq!((d.nu_parity(&nu) as i64) % 2, (d.nu_dot(&nu, &nu) / 2).rem_euclid(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn u_is_associative(a in u_letters(), b in u_letters(), c in u_letters()) {
        let alg = CoveringAlgebra::new(b02_free());
        let (x, y, z) = (u_elt(&alg, &a), u_elt(&alg, &b), u_elt(&alg, &c));
        let left = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
        let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn antipodes_are_mutually_inverse(a in u_letters()) {
        let alg = CoveringAlgebra::new(b02_free());
        let x = u_elt(&alg, &a);
        prop_assert_eq!(alg.antipode(&alg.antipode_prime(&x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(alg.antipode_prime(&alg.antipode(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn omega_has_order_four_and_bar_order_two(a in u_letters()) {
        let alg = CoveringAlgebra::new(b02_free());
        let x = u_elt(&alg, &a);
        let mut y = x.clone();
        for _ in 0..4 {
            y = alg.omega(&y).unwrap();
        }
        prop_assert_eq!(&y, &x);
        prop_assert_eq!(alg.bar(&alg.bar(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn reports_are_deterministic() {
    let d = Arc::new(Datum::b02());
    for suite in [SuiteName::Form, SuiteName::UAlgebra] {
        let strip = |v: Vec<qcover::suites::Record>| {
            v.into_iter().map(|r| (r.anchor, r.params, r.pass, r.detail)).collect::<Vec<_>>()
        };
        let a = strip(run_suite(d.clone(), suite, 4, 11));
        let b = strip(run_suite(d.clone(), suite, 4, 11));
        assert_eq!(a, b);
    }
}
