//! Bilinear form, derivation and Serre-relation suites on 'f and f.

use serde_json::json;

use super::random::Rng;
use super::{Ctx, Recorder};
use crate::datum::Nu;
use crate::free_half::{FreeElt, FreeHalf, Side, TensorElt, Twist};
use crate::linalg::scalar_rank;
use crate::repcat::ch_u_minus;
use crate::scalar_ring::{choose2, qbinom, qfact, Scalar};

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Random pairs (x, y) of homogeneous elements of a common weight.
fn same_weight_pairs(rng: &mut Rng, free: &FreeHalf, count: usize, max_h: usize) -> Vec<(FreeElt, FreeElt)> {
    let n = free.rank();
    (0..count)
        .map(|_| {
            let h = rng.range(1, max_h as i64) as usize;
            let nu = rng.weight(n, h);
            (rng.elt_of(&nu), rng.elt_of(&nu))
        })
        .collect()
}

pub(super) fn form_suite(ctx: &Ctx, rec: &mut Recorder) {
    let free = ctx.free(ctx.cap.max(4));
    let d = free.datum();
    let n = d.rank();
    let mut rng = Rng::new(ctx.seed, 4);

    for i in 0..n {
        let g = d.gen(i);
        for j in 0..n {
            rec.check("(theta_i, theta_j) = delta_ij (1 - pi_i q_i^-2)^-1", json!({"i": i, "j": j}), || {
                let v = free.bilinear_form(&FreeElt::theta(i), &FreeElt::theta(j));
                let want = if i == j { Scalar::one().sub(&g.pi_q(1, -2)).inv() } else { Scalar::zero() };
                Ok(v == want)
            });
        }
        for k in 0..=4i64 {
            rec.check("divided power norm", json!({"i": i, "n": k}), || {
                let x = free.divided_power(i, k);
                let want = g
                    .pi_q(k, choose2(k + 1))
                    .mul(&g.pi_q(1, 1).sub(&g.q(-1)).pow(-k))
                    .mul(&qfact(k as u32, g).inv());
                Ok(free.bilinear_form(&x, &x) == want)
            });
            rec.check("r and r-bar of divided powers", json!({"i": i, "n": k}), || {
                let mut std = TensorElt::zero(2, Twist::Standard);
                let mut bar = TensorElt::zero(2, Twist::Bar);
                for t in 0..=k {
                    let (a, b) = (free.divided_power(i, t), free.divided_power(i, k - t));
                    std = std.add(&TensorElt::pure(&a, &b, Twist::Standard).scale(&g.q(t * (k - t))));
                    bar = bar.add(&TensorElt::pure(&a, &b, Twist::Bar).scale(&g.pi_q(-t * (k - t), -t * (k - t))));
                }
                let x = free.divided_power(i, k);
                let bar_ok = !d.is_consistent() || free.coproduct(&x, Twist::Bar) == bar;
                Ok(free.coproduct(&x, Twist::Standard) == std && bar_ok)
            });
        }
    }

    let pairs = same_weight_pairs(&mut rng, &free, 100, 4);
    rec.check("form symmetry", json!({"samples": pairs.len(), "max_height": 4}), || {
        Ok(pairs.iter().all(|(x, y)| free.bilinear_form(x, y) == free.bilinear_form(y, x)))
    });
    rec.check("form sigma-invariance", json!({"samples": pairs.len(), "max_height": 4}), || {
        Ok(pairs.iter().all(|(x, y)| free.bilinear_form(&x.sigma(), &y.sigma()) == free.bilinear_form(x, y)))
    });
    rec.check("form vanishes across weights", json!({"samples": 30}), || {
        for _ in 0..30 {
            let x = rng.homogeneous(d, 1, 3);
            let y = rng.homogeneous(d, 1, 3);
            if x.weight(d) != y.weight(d) && !free.bilinear_form(&x, &y).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    });

    for k in 0..40 {
        let x = rng.homogeneous(d, 1, 4);
        let nu = x.weight(d).expect("homogeneous");
        let i = rng.index(n);
        let params = json!({"sample": k, "i": i, "x": x.to_string()});
        if let Some(lower) = nu.minus_gen(i) {
            let y = rng.elt_of(&lower);
            rec.check("adjunction for left and right derivations", params.clone(), || {
                let th = FreeElt::theta(i);
                let norm = free.theta_norm(i);
                let left = free.bilinear_form(&th.mul(&y), &x) == norm.mul(&free.bilinear_form(&y, &free.deriv(Side::Left, i, &x)));
                let right =
                    free.bilinear_form(&y.mul(&th), &x) == norm.mul(&free.bilinear_form(&y, &free.deriv(Side::Right, i, &x)));
                Ok(left && right)
            });
        }
        rec.check("r_i sigma = sigma _ir", params.clone(), || {
            Ok(free.deriv(Side::Right, i, &x.sigma()) == free.deriv(Side::Left, i, &x).sigma())
        });
        rec.check("r(x) = r_i(x) (x) theta_i + theta_i (x) _ir(x) + other bidegrees", params.clone(), || {
            let r = free.coproduct(&x, Twist::Standard);
            let gen = Nu::unit(n, i);
            let Some(rest) = nu.checked_sub(&gen) else {
                return Ok(free.deriv(Side::Right, i, &x).is_zero() && free.deriv(Side::Left, i, &x).is_zero());
            };
            let bidegree = |left: &Nu, right: &Nu| r_filter(&r, |a, b| d.word_weight(a) == *left && d.word_weight(b) == *right);
            let th = FreeElt::theta(i);
            let right = TensorElt::pure(&free.deriv(Side::Right, i, &x), &th, Twist::Standard);
            let left = TensorElt::pure(&th, &free.deriv(Side::Left, i, &x), Twist::Standard);
            Ok(bidegree(&rest, &gen) == right && bidegree(&gen, &rest) == left)
        });
        if d.is_consistent() {
            rec.check("r_i through bar and _ir", params.clone(), || {
                let px = d.nu_parity(&nu) as i64;
                let pi_ = d.parity(i) as i64;
                let c = Scalar::pi_pow(px * pi_ - pi_ * pi_).mul(&Scalar::q_pow(d.nu_dot_i(&nu, i) - d.dot(i, i)));
                let rhs = free.bar_free(&free.deriv(Side::Left, i, &free.bar_free(&x)?))?.scale(&c);
                Ok(free.deriv(Side::Right, i, &x) == rhs)
            });
        }
        rec.check("r(sigma x) = (sigma (x) sigma) swap r(x)", params, || {
            let lhs = free.coproduct(&x.sigma(), Twist::Standard);
            let rhs = free.coproduct(&x, Twist::Standard).swap().map_legs(|w| w.iter().rev().copied().collect());
            Ok(lhs == rhs)
        });
    }

    rec.check("coassociativity of r", json!({"samples": 15, "max_height": 4}), || {
        for _ in 0..15 {
            let x = rng.homogeneous(d, 1, 4);
            let r = free.coproduct(&x, Twist::Standard);
            if free.coproduct_on_leg(&r, 0) != free.coproduct_on_leg(&r, 1) {
                return Ok(false);
            }
        }
        Ok(true)
    });

    if d.is_consistent() {
        for i in 0..n {
            let g = d.gen(i);
            rec.check("{theta_i, theta_i} = (1 - pi_i q_i^2)^-1", json!({"i": i}), || {
                let th = FreeElt::theta(i);
                Ok(free.curly_form(&th, &th)? == Scalar::one().sub(&g.pi_q(1, 2)).inv())
            });
        }
        let pairs = same_weight_pairs(&mut rng, &free, 100, 4);
        rec.check_detail("{x,y} through (x, sigma(y))", json!({"samples": pairs.len(), "max_height": 4}), || {
            for (x, y) in &pairs {
                let nu = x.weight(d).expect("homogeneous");
                let half: i64 = (0..n).map(|i| nu.get(i) as i64 * d.d(i)).sum();
                // the π exponent takes p(x) as the integer Σ ν_i p(i), not its class mod 2
                let p: i64 = (0..n).map(|i| nu.get(i) as i64 * d.parity(i) as i64).sum();
                let c = Scalar::pi_pow(p * (p + 1) / 2)
                    .mul(&Scalar::q_pow(-d.nu_dot(&nu, &nu) / 2 - half))
                    .scale_int(sign(nu.height() as i64));
                if free.curly_form(x, y)? != free.bilinear_form(x, &y.sigma()).mul(&c) {
                    return Ok((false, Some(format!("x = {x}; y = {y}"))));
                }
            }
            Ok((true, None))
        });
        let top = ctx.cap.min(5);
        for h in 1..=top {
            for nu in Nu::all_of_height(n, h) {
                rec.check("bar preserves the radical", json!({"nu": nu.0}), || bar_descends(&free, &nu));
            }
        }
    } else {
        rec.not_applicable("{x,y} through (x, sigma(y))", "datum is not consistent");
        rec.not_applicable("bar preserves the radical", "datum is not consistent");
    }

    let sep = ctx.free(ctx.cap);
    for h in 1..=ctx.cap {
        for nu in Nu::all_of_height(n, h) {
            rec.check("right derivations separate f_nu", json!({"nu": nu.0}), || sep.derivations_separate(&nu));
        }
    }
}

fn r_filter(t: &TensorElt, keep: impl Fn(&[u8], &[u8]) -> bool) -> TensorElt {
    let mut out = TensorElt::zero(2, t.twist);
    for (legs, c) in t.terms() {
        if keep(&legs[0], &legs[1]) {
            out.add_term(legs.clone(), c.clone());
        }
    }
    out
}

/// The radical of the form on weight ν is stable under bar: the reduction
/// matrix and its bar have the same kernel rank when stacked.
fn bar_descends(free: &FreeHalf, nu: &Nu) -> crate::Result<bool> {
    let words = nu.words();
    let dim = free.dim(nu)?;
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(words.len()); dim];
    for w in &words {
        let c = free.reduce_word(w)?;
        for (r, v) in rows.iter_mut().zip(c.iter()) {
            r.push(v.clone());
        }
    }
    let mut stacked = rows.clone();
    stacked.extend(rows.iter().map(|r| r.iter().map(Scalar::bar).collect::<Vec<_>>()));
    Ok(scalar_rank(&stacked, words.len()) == scalar_rank(&rows, words.len()))
}

pub(super) fn serre_suite(ctx: &Ctx, rec: &mut Recorder) {
    let d = ctx.datum.clone();
    let n = d.rank();
    let max_n = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| (2 - d.a(i, j)) as usize)
        .max()
        .unwrap_or(1);
    let free = ctx.free(ctx.cap.max(max_n));
    if n < 2 {
        rec.not_applicable("quantum Serre relation", "needs at least two generators");
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let big_n = 1 - d.a(i, j);
            let g = d.gen(i);
            let s = match free.serre_element(i, j) {
                Ok(s) => s,
                Err(e) => {
                    rec.push("quantum Serre relation", json!({"i": i, "j": j}), false, 0, Some(e.to_string()));
                    continue;
                }
            };
            rec.check_detail("quantum Serre relation", json!({"i": i, "j": j, "N": big_n}), || {
                let coords = free.reduce(&s)?;
                let zero = coords.values().all(|c| c.iter().all(Scalar::is_zero));
                Ok((zero, Some(format!("reduced coordinates: {}", fmt_coords(&coords)))))
            });
            for k in 0..n {
                rec.check("Serre certificate: r_k vanishes in 'f", json!({"i": i, "j": j, "k": k}), || {
                    Ok(free.deriv(Side::Right, k, &s).is_zero())
                });
            }
            rec.check("Serre certificate: alternating sum behind r_j", json!({"i": i, "j": j}), || {
                let mut acc = Scalar::zero();
                for t in 0..=big_n {
                    let c = g.pi(choose2(t)).mul(&g.q(t * (1 - big_n))).scale_int(sign(t));
                    acc = acc.add(&c.mul(&qbinom(big_n, t, g)?));
                }
                Ok(acc.is_zero())
            });
            rec.check("Serre certificate: derivations separate the Serre weight", json!({"i": i, "j": j}), || {
                free.derivations_separate(&s.weight(&d).expect("homogeneous"))
            });
            rec.check("control: perturbed Serre element is nonzero in f", json!({"i": i, "j": j}), || {
                let t = free.divided_power(i, big_n).mul(&FreeElt::theta(j));
                Ok(!free.is_zero_in_f(&s.add(&t))?)
            });
        }
    }
    let ch = if d.is_finite_type() { ch_u_minus(&d, ctx.cap).ok() } else { None };
    if ch.is_none() {
        rec.not_applicable("dim f_nu equals ch U- prediction", "datum is not of finite type");
    }
    let oracle = ctx.free(ctx.cap);
    for h in 1..=ctx.cap {
        for nu in Nu::all_of_height(n, h) {
            rec.check_detail("dim f_nu: Gram rank equals Serre presentation", json!({"nu": nu.0}), || {
                let dim = oracle.dim(&nu)?;
                let gram = oracle.gram_all_words(&nu);
                let serre = oracle.serre_presented_dim(&nu)?;
                let ok = gram.rank == [dim, dim] && serre.dim == [dim, dim];
                Ok((ok, Some(format!("dim {dim}, gram rank {:?}, serre span {:?}", gram.rank, serre.dim))))
            });
            if let Some(ch) = &ch {
                rec.check("dim f_nu equals ch U- prediction", json!({"nu": nu.0}), || {
                    Ok(ch.get(&nu).copied().unwrap_or(0) == oracle.dim(&nu)? as i64)
                });
            }
        }
    }
}

fn fmt_coords(c: &std::collections::BTreeMap<Nu, Vec<Scalar>>) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|(nu, v)| {
            let vs: Vec<String> = v.iter().map(|s| s.to_string()).collect();
            format!("{nu}: [{}]", vs.join(", "))
        })
        .collect();
    parts.join("; ")
}
