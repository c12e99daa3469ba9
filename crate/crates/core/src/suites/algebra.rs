//! Datum, (q,π)-binomial and U-algebra suites.

use serde_json::json;

use super::random::Rng;
use super::{Ctx, Recorder};
use crate::covering::{CoveringAlgebra, UElt};
use crate::datum::{int_det, Datum, Nu};
use crate::free_half::{FreeElt, Side, TensorElt, Twist};
use crate::scalar_ring::{choose2, qbinom, qfact, qint, GenParams, Scalar};

pub(super) fn datum_suite(ctx: &Ctx, rec: &mut Recorder) {
    let d = &*ctx.datum;
    let n = d.rank();
    rec.check_detail("super Cartan datum conditions", json!({"datum": d.name()}), || {
        d.cartan.validate()?;
        Ok((true, Some(format!("consistent={}, finite_type={}", d.is_consistent(), d.is_finite_type()))))
    });
    rec.check("root datum pairing is perfect", json!({"rank_y": d.rank_y()}), || {
        let det = int_det(&d.root.pairing);
        Ok(det == 1.into() || det == (-1).into())
    });
    for i in 0..n {
        for j in 0..n {
            rec.check("<i,j'> = 2 i.j / i.i", json!({"i": i, "j": j}), || {
                Ok(d.pair_i(i, d.root_x(j)) == 2 * d.dot(i, j) / d.dot(i, i))
            });
        }
    }
    for i in 0..n {
        rec.check("s_i is an involution on X", json!({"i": i}), || {
            let mut lam = d.zero_weight();
            for (k, v) in lam.iter_mut().enumerate() {
                *v = k as i64 * 3 - 2;
            }
            let back = d.root.reflect_x(i, &d.root.reflect_x(i, &lam));
            let mut mu = vec![0; d.rank_y()];
            mu[0] = 1;
            let back_y = d.root.reflect_y(i, &d.root.reflect_y(i, &mu));
            Ok(back == lam && back_y == mu)
        });
    }
    if d.is_finite_type() {
        match d.weyl() {
            Ok(w) => {
                let order = w.order();
                rec.push("Weyl group enumeration", json!({"order": order}), true, 0, None);
                for i in 0..n {
                    for j in i + 1..n {
                        rec.check("braid relation", json!({"i": i, "j": j, "m": d.m(i, j)}), || {
                            let Some(m) = d.m(i, j) else { return Ok(false) };
                            let lhs: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
                            let rhs: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
                            Ok(w.word_matrix(&lhs) == w.word_matrix(&rhs))
                        });
                    }
                }
            }
            Err(e) => rec.push("Weyl group enumeration", json!({}), false, 0, Some(e.to_string())),
        }
    } else {
        rec.not_applicable("Weyl group enumeration", "datum is not of finite type");
    }
    let mut rng = Rng::new(ctx.seed, 1);
    if d.is_consistent() {
        rec.check("pi^p(nu) = pi^(nu.nu/2)", json!({"samples": 50, "max_height": 8}), || {
            Ok((0..50).all(|_| {
                let h = rng.range(0, 8) as usize;
                let nu = rng.weight(n, h);
                (d.nu_parity(&nu) as i64 - d.nu_dot(&nu, &nu) / 2).rem_euclid(2) == 0
            }))
        });
    } else {
        rec.not_applicable("pi^p(nu) = pi^(nu.nu/2)", "datum is not consistent");
    }
    rec.check("e(nu) from any decomposition", json!({"samples": 30}), || {
        Ok((0..30).all(|_| {
            let h = rng.range(0, 6) as usize;
            let nu = rng.weight(n, h);
            let w = rng.word_of(&nu);
            let mut e = 0;
            for a in 0..w.len() {
                for b in a + 1..w.len() {
                    e += (d.parity(w[a] as usize) * d.parity(w[b] as usize)) as i64;
                }
            }
            e == d.sign_stats(&nu).e
        }))
    });
    for i in 0..n {
        for j in i + 1..n {
            rec.check("c(i+j) = i.j", json!({"i": i, "j": j}), || {
                let nu = Nu::unit(n, i).add(&Nu::unit(n, j));
                Ok(d.sign_stats(&nu).c == d.dot(i, j))
            });
        }
    }
}

/// Polynomials in an auxiliary variable z, lowest degree first.
fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (x, s) in a.iter().enumerate() {
        for (y, t) in b.iter().enumerate() {
            out[x + y] = out[x + y].add(&s.mul(t));
        }
    }
    out
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(super) fn binom_suite(ctx: &Ctx, rec: &mut Recorder) {
    let d = &*ctx.datum;
    for i in 0..d.rank() {
        let g = d.gen(i);
        binom_for(g, i, rec);
        let free = ctx.free(ctx.cap.max(5));
        for a in 0..=5i64 {
            rec.check("quantum binomial formula for xy = pi_i q_i^2 yx", json!({"i": i, "a": a}), || {
                quantum_binomial(&free, g, i, a)
            });
        }
    }
    let mut rng = Rng::new(ctx.seed, 2);
    rec.check("bar is an involutive ring homomorphism", json!({"samples": 200}), || {
        let mut ok = true;
        for _ in 0..100 {
            let (x, y) = (rng.ratio(), rng.ratio());
            ok &= x.bar().bar() == x && y.bar().bar() == y;
            ok &= x.mul(&y).bar() == x.bar().mul(&y.bar());
            ok &= x.add(&y).bar() == x.bar().add(&y.bar());
        }
        Ok(ok)
    });
    rec.check("bar(q) = pi q^-1", json!({}), || Ok(Scalar::q().bar() == Scalar::pi_q(1, -1)));
}

fn binom_for(g: GenParams, i: usize, rec: &mut Recorder) {
    for a in -5..=6i64 {
        for t in 0..=6i64 {
            rec.check("qbinom negation", json!({"i": i, "a": a, "t": t}), || {
                let rhs = qbinom(t - a - 1, t, g)?.mul(&g.pi(t * a - choose2(t))).scale_int(sign(t));
                Ok(qbinom(a, t, g)? == rhs)
            });
        }
        rec.check("qbinom lies in A^pi", json!({"i": i, "a": a, "t": "0..=6"}), || {
            for t in 0..=6 {
                if !qbinom(a, t, g)?.in_laurent_subring() {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    }
    for t in 0..=6i64 {
        for a in 0..t {
            rec.check("qbinom vanishing for 0 <= a < t", json!({"i": i, "a": a, "t": t}), || Ok(qbinom(a, t, g)?.is_zero()));
        }
        rec.check("qbinom at a = -1", json!({"i": i, "t": t}), || {
            Ok(qbinom(-1, t, g)? == g.pi(choose2(t + 1)).scale_int(sign(t)))
        });
    }
    for a in 0..=6i64 {
        rec.check("qbinom generating function", json!({"i": i, "a": a}), || {
            let mut lhs = vec![Scalar::one()];
            for j in 0..a {
                lhs = poly_mul(&lhs, &[Scalar::one(), g.pi_q(j, 2 * j)]);
            }
            for t in 0..=a {
                let c = g.pi(choose2(t)).mul(&g.q(t * (a - 1))).mul(&qbinom(a, t, g)?);
                if lhs[t as usize] != c {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        for t in 0..=a {
            rec.check("qbinom factorial form", json!({"i": i, "a": a, "t": t}), || {
                let f = |k: i64| qfact(k as u32, g);
                Ok(qbinom(a, t, g)?.mul(&f(t)).mul(&f(a - t)) == f(a))
            });
        }
    }
    for a1 in -5..=5i64 {
        for a2 in -5..=5i64 {
            rec.check("qbinom Pascal identity", json!({"i": i, "a1": a1, "a2": a2, "t": "0..=5"}), || {
                for t in 0..=5i64 {
                    let mut rhs = Scalar::zero();
                    for t1 in 0..=t {
                        let t2 = t - t1;
                        let c = g.pi(t1 * t2 + a1 * t2).mul(&g.q(a1 * t2 - a2 * t1));
                        rhs = rhs.add(&c.mul(&qbinom(a1, t1, g)?).mul(&qbinom(a2, t2, g)?));
                    }
                    if qbinom(a1 + a2, t, g)? != rhs {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
        }
    }
    for a in 1..=6i64 {
        rec.check("qbinom alternating sum", json!({"i": i, "a": a}), || {
            let mut acc = Scalar::zero();
            for t in 0..=a {
                let c = g.pi(choose2(t)).mul(&g.q(t * (a - 1))).scale_int(sign(t));
                acc = acc.add(&c.mul(&qbinom(a, t, g)?));
            }
            Ok(acc.is_zero())
        });
    }
    rec.check("[n]_i from the binomial", json!({"i": i, "n": "-3..=5"}), || {
        for n in -3..=5 {
            if qint(n, g) != qbinom(n, 1, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
}

/// (x+y)^a = Σ q_i^{t(a−t)} [a,t]_i y^t x^{a−t} for x = 1⊗θ_i, y = θ_i⊗1.
fn quantum_binomial(free: &crate::free_half::FreeHalf, g: GenParams, i: usize, a: i64) -> crate::Result<bool> {
    let th = FreeElt::theta(i);
    let one = FreeElt::one();
    let x = TensorElt::pure(&one, &th, Twist::Standard);
    let y = TensorElt::pure(&th, &one, Twist::Standard);
    let xy = free.tensor_mul(&x, &y);
    if xy != free.tensor_mul(&y, &x).scale(&g.pi_q(1, 2)) {
        return Ok(false);
    }
    let pow = |z: &TensorElt, k: i64| {
        let mut acc = TensorElt::unit(2, Twist::Standard);
        for _ in 0..k {
            acc = free.tensor_mul(&acc, z);
        }
        acc
    };
    let lhs = pow(&x.add(&y), a);
    let mut rhs = TensorElt::zero(2, Twist::Standard);
    for t in 0..=a {
        let c = g.q(t * (a - t)).mul(&qbinom(a, t, g)?);
        rhs = rhs.add(&free.tensor_mul(&pow(&y, t), &pow(&x, a - t)).scale(&c));
    }
    Ok(lhs == rhs)
}

fn jk_tilde(alg: &CoveringAlgebra, i: usize, s: i64) -> UElt {
    let t = alg.datum().tilde_y(i, s);
    alg.cartan(&t, &t)
}

fn neg(nu: &Nu) -> Vec<i64> {
    nu.0.iter().map(|&c| -(c as i64)).collect()
}

fn pos(nu: &Nu) -> Vec<i64> {
    nu.0.iter().map(|&c| c as i64).collect()
}

pub(super) fn u_algebra_suite(ctx: &Ctx, rec: &mut Recorder) {
    let alg = ctx.algebra(ctx.cap.max(6));
    let d = alg.datum();
    let n = d.rank();
    let mut rng = Rng::new(ctx.seed, 3);

    for i in 0..n {
        for j in 0..n {
            rec.check("E_iF_j - pi^p(i)p(j) F_jE_i", json!({"i": i, "j": j}), || {
                let lhs = alg
                    .mul(&alg.e(i), &alg.f(j))?
                    .sub(&alg.mul(&alg.f(j), &alg.e(i))?.scale(&Scalar::pi_pow((d.parity(i) * d.parity(j)) as i64)));
                let rhs = if i == j {
                    let g = d.gen(i);
                    jk_tilde(&alg, i, 1).sub(&alg.k_tilde(i, -1)).scale(&g.pi_q(1, 1).sub(&g.q(-1)).inv())
                } else {
                    UElt::zero()
                };
                Ok(lhs == rhs)
            });
        }
        rec.check("K_mu E_i K_-mu = q^<mu,i'> E_i", json!({"i": i}), || {
            let mut ok = true;
            for k in 0..d.rank_y() {
                let mut mu = vec![0; d.rank_y()];
                mu[k] = 1;
                let minus: Vec<i64> = mu.iter().map(|c| -c).collect();
                let lhs = alg.mul_all(&[alg.k(&mu), alg.e(i), alg.k(&minus)])?;
                ok &= lhs == alg.e(i).scale(&Scalar::q_pow(d.pair(&mu, d.root_x(i))));
            }
            Ok(ok)
        });
    }

    rec.check("associativity", json!({"samples": 100, "letters": 2}), || {
        for _ in 0..100 {
            let (u, v, w) = (rng.u_elt(&alg, 2), rng.u_elt(&alg, 2), rng.u_elt(&alg, 2));
            if alg.mul(&alg.mul(&u, &v)?, &w)? != alg.mul(&u, &alg.mul(&v, &w)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    });

    for k in 0..12 {
        let x = rng.homogeneous(d, 1, 3);
        let nu = x.weight(d).expect("homogeneous");
        let px = d.nu_parity(&nu) as i64;
        for i in 0..n {
            let g = d.gen(i);
            let pi_ = d.parity(i) as i64;
            let den = g.pi_q(1, 1).sub(&g.q(-1)).inv();
            let free = alg.free();
            rec.check("x+F_i - pi_i^p(x) F_ix+", json!({"sample": k, "i": i, "x": x.to_string()}), || {
                let xp = alg.plus(&x)?;
                let lhs = alg.mul(&xp, &alg.f(i))?.sub(&alg.mul(&alg.f(i), &xp)?.scale(&g.pi(px)));
                let ri = alg.plus(&free.deriv(Side::Right, i, &x))?;
                let ir = alg.plus(&free.deriv(Side::Left, i, &x))?;
                let rhs = alg
                    .mul(&ri, &jk_tilde(&alg, i, 1))?
                    .sub(&alg.mul(&alg.k_tilde(i, -1), &ir)?.scale(&g.pi(px - pi_)))
                    .scale(&den);
                Ok(lhs == rhs)
            });
            rec.check("E_ix- - pi_i^p(x) x-E_i", json!({"sample": k, "i": i, "x": x.to_string()}), || {
                let xm = alg.minus(&x)?;
                let lhs = alg.mul(&alg.e(i), &xm)?.sub(&alg.mul(&xm, &alg.e(i))?.scale(&g.pi(px)));
                let ri = alg.minus(&free.deriv(Side::Right, i, &x))?;
                let ir = alg.minus(&free.deriv(Side::Left, i, &x))?;
                let rhs = alg
                    .mul(&jk_tilde(&alg, i, 1), &ir)?
                    .sub(&alg.mul(&ri, &alg.k_tilde(i, -1))?.scale(&g.pi(px - pi_)))
                    .scale(&den);
                Ok(lhs == rhs)
            });
        }
    }

    for i in 0..n {
        let g = d.gen(i);
        for big_n in 0..=3i64 {
            for big_m in 0..=3i64 {
                rec.check("E_i^(N)F_i^(M) expansion", json!({"i": i, "N": big_n, "M": big_m}), || {
                    let lhs = alg.mul(&alg.e_div(i, big_n)?, &alg.f_div(i, big_m)?)?;
                    let mut rhs = UElt::zero();
                    for t in 0..=big_n.min(big_m) {
                        let term = alg.mul_all(&[
                            alg.f_div(i, big_m - t)?,
                            alg.ktilde_binomial(i, 2 * t - big_m - big_n, t)?,
                            alg.e_div(i, big_n - t)?,
                        ])?;
                        rhs = rhs.add(&term.scale(&g.pi(big_m * big_n - choose2(t + 1))));
                    }
                    Ok(lhs == rhs)
                });
                rec.check("F_i^(N)E_i^(M) expansion", json!({"i": i, "N": big_n, "M": big_m}), || {
                    let lhs = alg.mul(&alg.f_div(i, big_n)?, &alg.e_div(i, big_m)?)?;
                    let mut rhs = UElt::zero();
                    for t in 0..=big_n.min(big_m) {
                        let term = alg.mul_all(&[
                            alg.e_div(i, big_m - t)?,
                            alg.ktilde_binomial(i, big_m + big_n - (t + 1), t)?,
                            alg.f_div(i, big_n - t)?,
                        ])?;
                        let c = g.pi((big_m - t) * (big_n - t) - t * t).scale_int(sign(t));
                        rhs = rhs.add(&term.scale(&c));
                    }
                    Ok(lhs == rhs)
                });
                for j in (0..n).filter(|&j| j != i) {
                    rec.check("E_i^(N)F_j^(M) for i != j", json!({"i": i, "j": j, "N": big_n, "M": big_m}), || {
                        let lhs = alg.mul(&alg.e_div(i, big_n)?, &alg.f_div(j, big_m)?)?;
                        let c = Scalar::pi_pow(big_m * big_n * (d.parity(i) * d.parity(j)) as i64);
                        let rhs = alg.mul(&alg.f_div(j, big_m)?, &alg.e_div(i, big_n)?)?.scale(&c);
                        Ok(lhs == rhs)
                    });
                }
            }
        }
    }

    antipode_checks(&alg, &mut rng, rec);

    rec.check("omega has order 4", json!({"samples": 20}), || {
        for _ in 0..20 {
            let u = rng.u_elt(&alg, 3);
            let mut v = u.clone();
            for _ in 0..4 {
                v = alg.omega(&v)?;
            }
            if v != u {
                return Ok(false);
            }
        }
        Ok(true)
    });
    if d.is_consistent() {
        rec.check("bar is an involution on U", json!({"samples": 20}), || {
            for _ in 0..20 {
                let u = rng.u_elt(&alg, 3);
                if alg.bar(&alg.bar(&u)?)? != u {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    } else {
        rec.not_applicable("bar is an involution on U", "datum is not consistent");
    }
    rec.check("sigma(x-) = pi_|x| J~_|x| sigma(x)-", json!({"samples": 12}), || {
        for _ in 0..12 {
            let x = rng.homogeneous(d, 1, 3);
            let nu = x.weight(d).expect("homogeneous");
            let lhs = alg.sigma(&alg.minus(&x)?)?;
            let t = alg.tilde_exponent(&pos(&nu));
            let rhs = alg
                .mul(&alg.j(&t), &alg.minus(&x.sigma())?)?
                .scale(&Scalar::pi_pow(d.nu_parity(&nu) as i64));
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    });

    let mut gens: Vec<(String, UElt)> = Vec::new();
    for i in 0..n {
        gens.push((format!("E({i})"), alg.e(i)));
        gens.push((format!("F({i})"), alg.f(i)));
    }
    for k in 0..d.rank_y() {
        let mut mu = vec![0; d.rank_y()];
        mu[k] = 1;
        gens.push((format!("K{mu:?}"), alg.k(&mu)));
        gens.push((format!("J{mu:?}"), alg.j(&mu)));
    }
    for (name, g) in &gens {
        rec.check("counit and antipode: m(S x 1)D = m(1 x S)D = e", json!({"generator": name}), || {
            let unit = alg.scalar(alg.counit(g));
            let l = alg.hopf_combination(g, |x| alg.antipode(x), |x| Ok(x.clone()))?;
            let r = alg.hopf_combination(g, |x| Ok(x.clone()), |x| alg.antipode(x))?;
            Ok(l == unit && r == unit)
        });
        rec.check("coassociativity", json!({"generator": name}), || {
            let dg = alg.coproduct(g, false)?;
            Ok(alg.coproduct_on_leg(&dg, 0)? == alg.coproduct_on_leg(&dg, 1)?)
        });
    }
    rec.check("coproduct is multiplicative", json!({"samples": 10}), || {
        for _ in 0..10 {
            let (u, v) = (rng.u_elt(&alg, 2), rng.u_elt(&alg, 2));
            let lhs = alg.coproduct(&alg.mul(&u, &v)?, false)?;
            let rhs = alg.tensor_mul(&alg.coproduct(&u, false)?, &alg.coproduct(&v, false)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    });
}

fn antipode_checks(alg: &CoveringAlgebra, rng: &mut Rng, rec: &mut Recorder) {
    let d: &Datum = alg.datum();
    rec.check("SS' = S'S = 1", json!({"samples": 20}), || {
        for _ in 0..20 {
            let u = rng.u_elt(alg, 3);
            if alg.antipode(&alg.antipode_prime(&u)?)? != u || alg.antipode_prime(&alg.antipode(&u)?)? != u {
                return Ok(false);
            }
        }
        Ok(true)
    });
    for k in 0..12 {
        let x = rng.homogeneous(d, 1, 3);
        let nu = x.weight(d).expect("homogeneous");
        let st = d.sign_stats(&nu);
        let ht = nu.height() as i64;
        let base = Scalar::pi_pow(st.e).scale_int(sign(ht));
        let jk_minus = {
            let t = alg.tilde_exponent(&neg(&nu));
            alg.cartan(&t, &t)
        };
        let k_plus = alg.k(&alg.tilde_exponent(&pos(&nu)));
        let params = json!({"sample": k, "x": x.to_string()});
        rec.check("S and S' on x+ and x-", params.clone(), || {
            let (xp, xm) = (alg.plus(&x)?, alg.minus(&x)?);
            let (sxp, sxm) = (alg.plus(&x.sigma())?, alg.minus(&x.sigma())?);
            let s_plus = alg.mul(&jk_minus, &sxp)?.scale(&base.mul(&Scalar::pi_q(st.c, st.c)));
            let s_minus = alg.mul(&sxm, &k_plus)?.scale(&base.mul(&Scalar::q_pow(-st.c)));
            let sp_plus = alg.mul(&sxp, &jk_minus)?.scale(&base.mul(&Scalar::pi_q(-st.c, -st.c)));
            let sp_minus = alg.mul(&k_plus, &sxm)?.scale(&base.mul(&Scalar::q_pow(st.c)));
            Ok(alg.antipode(&xp)? == s_plus
                && alg.antipode(&xm)? == s_minus
                && alg.antipode_prime(&xp)? == sp_plus
                && alg.antipode_prime(&xm)? == sp_minus)
        });
        rec.check("S versus S' through f(nu)", params, || {
            let (xp, xm) = (alg.plus(&x)?, alg.minus(&x)?);
            Ok(alg.antipode(&xp)? == alg.antipode_prime(&xp)?.scale(&Scalar::pi_q(-st.f, -st.f))
                && alg.antipode(&xm)? == alg.antipode_prime(&xm)?.scale(&Scalar::q_pow(st.f)))
        });
    }
    for i in 0..d.rank() {
        let g = d.gen(i);
        for n in 0..=3i64 {
            rec.check("antipodes of divided powers", json!({"i": i, "n": n}), || {
                let c = choose2(n);
                let jk = jk_tilde(alg, i, -n);
                let kn = alg.k_tilde(i, n);
                let (e, f) = (alg.e_div(i, n)?, alg.f_div(i, n)?);
                let s = sign(n);
                Ok(alg.antipode(&e)? == alg.mul(&jk, &e)?.scale(&g.pi_q(c, 2 * c).scale_int(s))
                    && alg.antipode_prime(&e)? == alg.mul(&e, &jk)?.scale(&g.pi_q(-c, -2 * c).scale_int(s))
                    && alg.antipode(&f)? == alg.mul(&f, &kn)?.scale(&g.pi_q(-c, -2 * c).scale_int(s))
                    && alg.antipode_prime(&f)? == alg.mul(&kn, &f)?.scale(&g.pi_q(c, 2 * c).scale_int(s)))
            });
        }
    }
}
