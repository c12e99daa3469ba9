use std::collections::BTreeMap;

use crate::datum::{weyl_apply, Datum, Nu, Weight};
use crate::error::{Error, Result};

/// e^{λ−ν'} ↦ coefficient, recorded by ν.
type Series = BTreeMap<Nu, i64>;

fn below(d: &Datum, top: &[i64], w: &[i64]) -> Result<Nu> {
    let diff: Vec<i64> = top.iter().zip(w).map(|(a, b)| a - b).collect();
    let k = d
        .root_coordinates(&diff)
        .ok_or_else(|| Error::Internal("weight outside the root lattice coset".into()))?;
    if k.iter().any(|&c| c < 0) {
        return Err(Error::Internal("term above the leading weight".into()));
    }
    Ok(Nu(k.into_iter().map(|c| c as u32).collect()))
}

/// Σ_w (−1)^{ℓ(w)} e^{w(μ+ρ)−ρ}, recorded below μ.
fn alternating_sum(d: &Datum, mu: &[i64]) -> Result<Series> {
    let weyl = d.weyl()?;
    let rho = d.rho()?;
    let shifted: Weight = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut out = Series::new();
    for (w, &len) in weyl.elements.iter().zip(&weyl.lengths) {
        let img: Weight = weyl_apply(w, &shifted).iter().zip(&rho).map(|(a, b)| a - b).collect();
        let nu = below(d, mu, &img)?;
        *out.entry(nu).or_default() += if len % 2 == 0 { 1 } else { -1 };
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

fn le(a: &Nu, b: &Nu) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

/// Quotient of two series with unit leading term in the denominator,
/// computed up to height `max_height`.
pub fn character_division(num: &Series, den: &Series, rank: usize, max_height: usize) -> Series {
    let mut out = Series::new();
    for h in 0..=max_height {
        for nu in Nu::all_of_height(rank, h) {
            let mut c = num.get(&nu).copied().unwrap_or(0);
            for (mu, dm) in den {
                if mu.is_zero() || !le(mu, &nu) {
                    continue;
                }
                let rest = nu.checked_sub(mu).expect("mu ≤ nu");
                c -= dm * out.get(&rest).copied().unwrap_or(0);
            }
            if c != 0 {
                out.insert(nu, c);
            }
        }
    }
    out
}

fn product(a: &Series, b: &Series) -> Series {
    let mut out = Series::new();
    for (x, cx) in a {
        for (y, cy) in b {
            *out.entry(x.add(y)).or_default() += cx * cy;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Multiplicities of the Weyl–Kac character formula for V(λ).
pub fn weyl_kac_character(d: &Datum, lambda: &[i64]) -> Result<BTreeMap<Weight, i64>> {
    if (0..d.rank()).any(|i| d.pair_i(i, lambda) < 0) {
        return Err(Error::InvalidArgument("λ is not dominant".into()));
    }
    let num = alternating_sum(d, lambda)?;
    let den = alternating_sum(d, &d.zero_weight())?;
    let depth = num.keys().map(Nu::height).max().unwrap_or(0);
    let quo = character_division(&num, &den, d.rank(), depth);
    if product(&quo, &den) != num {
        return Err(Error::Internal("character division leaves a remainder".into()));
    }
    Ok(quo
        .into_iter()
        .map(|(nu, c)| (lambda.iter().zip(d.nu_x(&nu)).map(|(a, b)| a - b).collect(), c))
        .collect())
}

/// dim f_ν predicted by 1 / Σ_w (−1)^{ℓ(w)} e^{wρ−ρ}, for ht ν ≤ cap.
pub fn ch_u_minus(d: &Datum, cap: usize) -> Result<BTreeMap<Nu, i64>> {
    let den = alternating_sum(d, &d.zero_weight())?;
    let one = Series::from([(Nu::zero(d.rank()), 1)]);
    let mut out = character_division(&one, &den, d.rank(), cap);
    for h in 0..=cap {
        for nu in Nu::all_of_height(d.rank(), h) {
            out.entry(nu).or_insert(0);
        }
    }
    Ok(out)
}
