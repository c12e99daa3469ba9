//! Quasi-R-matrix and Casimir suites.

use std::sync::Arc;

use serde_json::json;

use super::{Ctx, Recorder};
use crate::datum::Nu;
use crate::repcat::{weight_from_pairings, WeightModule};
use crate::rmatrix::{CasimirForm, Generator, RMatrix};
use crate::scalar_ring::Sign;

fn rmatrix(ctx: &Ctx, cap: usize) -> RMatrix {
    RMatrix::new(Arc::new(ctx.algebra(cap)))
}

fn generators(ctx: &Ctx) -> Vec<Generator> {
    let d = &ctx.datum;
    let mut out = Vec::new();
    for i in 0..d.rank() {
        out.push(Generator::E(i));
        out.push(Generator::F(i));
    }
    for k in 0..d.rank_y() {
        let mut mu = vec![0; d.rank_y()];
        mu[k] = 1;
        out.push(Generator::K(mu.clone()));
        out.push(Generator::J(mu));
    }
    out
}

pub(super) fn theta_suite(ctx: &Ctx, rec: &mut Recorder) {
    if !ctx.datum.is_consistent() {
        rec.not_applicable("Theta intertwines Delta and Delta-bar", "bar needs a consistent datum");
        return;
    }
    let theta_cap = ctx.cap.saturating_sub(1).max(1);
    let r = rmatrix(ctx, theta_cap + 1);
    let theta = match r.compute_theta(theta_cap) {
        Ok(t) => t,
        Err(e) => {
            rec.push("Theta from dual bases", json!({"cap": theta_cap}), false, 0, Some(e.to_string()));
            return;
        }
    };
    let n = ctx.datum.rank();
    rec.check("Theta_0 = 1 (x) 1", json!({"cap": theta_cap}), || {
        Ok(theta.components.get(&Nu::zero(n)) == Some(&r.algebra().tensor_one(2)))
    });
    for g in generators(ctx) {
        rec.check_detail("Theta intertwines Delta and Delta-bar up to the boundary", json!({"generator": g.to_string(), "cap": theta_cap}), || {
            let rep = r.verify_intertwiner(&theta, &g)?;
            let detail = (!rep.matches_boundary).then(|| format!("offending weights: {}", rep.offending.join(", ")));
            Ok((rep.matches_boundary, detail))
        });
    }
    rec.check("Theta Theta-bar = Theta-bar Theta = 1", json!({"cap": theta_cap}), || r.theta_inverse_check(&theta));
    if theta_cap >= 2 {
        let nu = theta.components.keys().find(|nu| nu.height() == 2).cloned();
        if let Some(nu) = nu {
            rec.check("control: perturbed Theta breaks the E-intertwining", json!({"nu": nu.0}), || {
                let bad = r.perturbed(&theta, &nu);
                Ok(!r.verify_intertwiner(&bad, &Generator::E(0))?.matches_boundary)
            });
        }
    }
    if n == 1 {
        let nmax = 5;
        let r1 = rmatrix(ctx, nmax + 1);
        match r1.rank_one_coefficients(nmax) {
            Ok(rows) => {
                for row in rows {
                    rec.push(
                        "rank-one coefficient: dual-basis value equals solved value",
                        json!({"n": row.n, "coefficient": row.from_basis}),
                        row.agree,
                        0,
                        None,
                    );
                    rec.push(
                        "rank-one coefficient: closed form with exponent C(n,2)",
                        json!({"n": row.n}),
                        row.matches_c_n_2,
                        0,
                        None,
                    );
                    if row.n >= 2 {
                        rec.push(
                            "control: rank-one closed form with exponent C(n+1,2) disagrees",
                            json!({"n": row.n}),
                            !row.matches_c_n1_2,
                            0,
                            Some("Theta coefficients carry exponent C(n,2), not C(n+1,2)".into()),
                        );
                    }
                }
            }
            Err(e) => rec.push("rank-one coefficient", json!({"nmax": nmax}), false, 0, Some(e.to_string())),
        }
    }
}

/// Weights of the simple modules checked by the Casimir suite.
fn casimir_weights(ctx: &Ctx) -> Vec<Vec<i64>> {
    let d = &ctx.datum;
    let n = d.rank();
    let pairings: Vec<Vec<i64>> = if n == 1 {
        (0..=4).map(|k| vec![k]).collect()
    } else {
        (0..n)
            .map(|k| {
                let mut v = vec![0; n];
                v[k] = 1;
                v
            })
            .collect()
    };
    pairings.iter().filter_map(|p| weight_from_pairings(d, p).ok()).collect()
}

/// Whether some weight of the module sits at ν below the top with e(ν) odd;
/// only then can the form without π^{e(ν)} differ on the π = −1 side.
fn has_odd_e(m: &WeightModule, top: &[i64]) -> bool {
    let d = m.datum();
    m.weights().any(|w| {
        let diff: Vec<i64> = top.iter().zip(w).map(|(a, b)| a - b).collect();
        match d.root_coordinates(&diff) {
            Some(k) if k.iter().all(|&c| c >= 0) => {
                let nu = Nu(k.iter().map(|&c| c as u32).collect());
                d.sign_stats(&nu).e % 2 == 1
            }
            _ => false,
        }
    })
}

pub(super) fn casimir_suite(ctx: &Ctx, rec: &mut Recorder) {
    let d = ctx.datum.clone();
    if !d.is_finite_type() {
        rec.not_applicable("Casimir acts by (pi q^2)^G(lambda)", "simple modules need a finite type datum");
        return;
    }
    if !d.is_consistent() {
        rec.not_applicable("Casimir acts by (pi q^2)^G(lambda)", "bar needs a consistent datum");
        return;
    }
    for lam in casimir_weights(ctx) {
        for sign in Sign::both() {
            let (m, alg) = match super::modules::simple_module(ctx, &lam, sign) {
                Ok(x) => x,
                Err(e) => {
                    rec.push("Casimir acts by (pi q^2)^G(lambda)", json!({"lambda": lam, "sign": sign.symbol()}), false, 0, Some(e.to_string()));
                    continue;
                }
            };
            let cap = alg.free().cap();
            // Ω_{≤p} is compared against Ω_{≤p+1}, which needs Θ one step deeper
            let depth = m.weights().filter_map(|w| depth_below(&d, &lam, w)).max().unwrap_or(0);
            let r = rmatrix(ctx, cap.max(depth + 2));
            let mut anchors = vec![lam.clone()];
            if d.rank() == 1 {
                anchors.push(vec![lam[0] + 2]);
            }
            for anchor in anchors {
                let params = json!({"lambda": lam, "sign": sign.symbol(), "anchor": anchor, "dim": m.dim()});
                let start = std::time::Instant::now();
                match r.casimir_check(&m, &anchor, CasimirForm::WithE) {
                    Ok(rep) => {
                        let ms = start.elapsed().as_millis() as u64;
                        let detail = Some(format!("G exponent {}", rep.expected_exponent));
                        rec.push("Casimir acts by (pi q^2)^G(lambda)", params.clone(), rep.stable && rep.scalar_ok && rep.commutes, ms, detail);
                        rec.push("Casimir commutation with E_i and F_i", params.clone(), rep.relations_ok, 0, None);
                    }
                    Err(e) => rec.push("Casimir acts by (pi q^2)^G(lambda)", params.clone(), false, 0, Some(e.to_string())),
                }
                let predicted_fail = sign == Sign::Minus && has_odd_e(&m, &lam);
                rec.check_detail("control: Casimir without pi^e(nu) fails exactly on odd e(nu) in the minus component", params, || {
                    let rep = r.casimir_check(&m, &anchor, CasimirForm::WithoutE)?;
                    let holds = rep.scalar_ok && rep.relations_ok;
                    Ok((holds != predicted_fail, Some(format!("holds={holds}, predicted failure={predicted_fail}"))))
                });
            }
        }
    }
}

fn depth_below(d: &crate::datum::Datum, top: &[i64], w: &[i64]) -> Option<usize> {
    let diff: Vec<i64> = top.iter().zip(w).map(|(a, b)| a - b).collect();
    d.root_coordinates(&diff).map(|k| k.iter().sum::<i64>() as usize)
}
