use std::sync::Arc;

use super::*;
use crate::datum::Nu;
use crate::free_half::FreeHalf;

fn alg(d: Datum, cap: usize) -> CoveringAlgebra {
    CoveringAlgebra::new(Arc::new(FreeHalf::new(Arc::new(d), cap)))
}

#[test]
fn rank_one_simple_dims() {
    let a = alg(Datum::b01(), 7);
    for s in Sign::both() {
        for n in 0..=5i64 {
            let v = build_simple(&a, &[n], s).unwrap();
            assert_eq!(v.dim(), (n + 1) as usize);
            let ws: Vec<i64> = v.weights().map(|w| w[0]).collect();
            let want: Vec<i64> = (0..=n).map(|k| -n + 2 * k).collect();
            assert_eq!(ws, want);
            assert!(v.verify_ef_relation());
            assert!(verify_integrable(&v));
        }
    }
}

#[test]
fn verma_relation_and_truncation() {
    let a = alg(Datum::b01(), 6);
    for s in Sign::both() {
        let m = build_verma(&a, &[3], 5, s).unwrap();
        assert_eq!(m.dim(), 6);
        assert!(m.verify_ef_relation());
        assert!(!verify_integrable(&m));
    }
    let b = alg(Datum::b02(), 4);
    let m = build_verma(&b, &[1, 2], 3, Sign::Minus).unwrap();
    assert!(m.verify_ef_relation());
}

#[test]
fn clebsch_gordan_rank_one() {
    let a = alg(Datum::b01(), 6);
    for s in Sign::both() {
        let v1 = build_simple(&a, &[1], s).unwrap();
        let v2 = build_simple(&a, &[2], s).unwrap();
        let t = tensor_module(&v1, &v1).unwrap();
        assert!(t.verify_ef_relation());
        let dec = decompose(&t).unwrap();
        assert!(dec.bookkeeping_ok());
        assert_eq!(dec.highest_weights(), vec![vec![0], vec![2]]);
        let dec = decompose(&tensor_module(&v2, &v1).unwrap()).unwrap();
        assert_eq!(dec.highest_weights(), vec![vec![1], vec![3]]);
    }
}

#[test]
fn omega_twist_matches_omega() {
    let a = alg(Datum::b02(), 6);
    let v = build_simple(&a, &[0, 1], Sign::Minus).unwrap();
    let w = omega_twist(&v).unwrap();
    assert!(w.verify_ef_relation());
    let u = a.parse("E(1) F(0) + (q) F(1) K(1,0) E(0) E(1)").unwrap();
    let wu = a.omega(&u).unwrap();
    let neg = |x: &Weight| x.iter().map(|c| -c).collect::<Weight>();
    for lam in v.weights() {
        for k in 0..v.dim_at(lam) {
            let lhs = w.act(&u, &w.unit(&neg(lam), k)).unwrap();
            let rhs = v.act(&wu, &v.unit(lam, k)).unwrap();
            let rhs: ModVec = rhs.into_iter().map(|(l, c)| (neg(&l), c)).collect();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn characters_match_simple_modules() {
    let a = alg(Datum::b01(), 8);
    for n in 0..=6 {
        let ch = weyl_kac_character(a.datum(), &[n]).unwrap();
        for s in Sign::both() {
            assert_eq!(build_simple(&a, &[n], s).unwrap().character(), ch);
        }
    }
    let b = alg(Datum::b02(), 7);
    for lam in [[1, 0], [0, 1], [0, 2]] {
        let ch = weyl_kac_character(b.datum(), &lam).unwrap();
        for s in Sign::both() {
            assert_eq!(build_simple(&b, &lam, s).unwrap().character(), ch, "λ = {lam:?}");
        }
    }
}

#[test]
fn u_minus_character_matches_dims() {
    let a = alg(Datum::b02(), 5);
    let pred = ch_u_minus(a.datum(), 5).unwrap();
    for (nu, c) in pred {
        assert_eq!(a.free().dim(&nu).unwrap() as i64, c, "ν = {nu}");
    }
    let r1 = ch_u_minus(&Datum::b01(), 4).unwrap();
    assert!((0..=4).all(|k| r1[&Nu(vec![k])] == 1));
}
