use std::collections::BTreeMap;

use super::{sub_w, WeightModule};
use crate::covering::CoveringAlgebra;
use crate::datum::{Datum, Nu, Weight};
use crate::error::{Error, Result};
use crate::free_half::Side;
use crate::linalg::{Mat, Span};
use crate::scalar_ring::{RationalFn, Scalar, Sign};

/// The weight λ with ⟨i,λ⟩ = `pairings[i]`, zero in any extra coordinates.
/// Requires the canonical pairing of the default root datum.
pub fn weight_from_pairings(d: &Datum, pairings: &[i64]) -> Result<Weight> {
    if pairings.len() != d.rank() {
        return Err(Error::InvalidArgument(format!("expected {} pairings, got {}", d.rank(), pairings.len())));
    }
    let mut lam = d.zero_weight();
    lam[..pairings.len()].copy_from_slice(pairings);
    if (0..d.rank()).all(|i| d.pair_i(i, &lam) == pairings[i]) {
        Ok(lam)
    } else {
        Err(Error::InvalidArgument("the root datum pairing is not canonical; pass a weight instead".into()))
    }
}

/// Columns of E_i: f_ν → f_{ν−i} on the Verma module of highest weight λ,
/// as rows indexed by the source basis word.
fn verma_e(alg: &CoveringAlgebra, lambda: &[i64], i: usize, nu: &Nu) -> Result<Vec<Vec<Scalar>>> {
    let d = alg.datum();
    let free = alg.free();
    let left = free.deriv_matrix(Side::Left, i, nu)?;
    let right = free.deriv_matrix(Side::Right, i, nu)?;
    let di = d.d(i);
    let pi = d.parity(i) as i64;
    // ⟨i, λ − ν' + i'⟩
    let shifted = d.pair_i(i, lambda) - d.pair_i(i, &d.nu_x(nu)) + 2;
    let a = Scalar::pi_q(di * shifted, di * shifted);
    let b = Scalar::pi_q(pi * (d.nu_parity(nu) as i64 - pi), -di * d.pair_i(i, lambda));
    let den = Scalar::pi_q(pi, di).sub(&Scalar::q_pow(-di)).inv();
    Ok(left
        .iter()
        .zip(&right)
        .map(|(l, r)| l.iter().zip(r).map(|(x, y)| a.mul(x).sub(&b.mul(y)).mul(&den)).collect())
        .collect())
}

/// Rows indexed by b ∈ B_ν giving θ_i·b in B_{ν+i}.
fn verma_f(alg: &CoveringAlgebra, i: usize, nu: &Nu) -> Result<Vec<Vec<Scalar>>> {
    let up = nu.plus_gen(i, 1);
    let bd = alg.free().basis(&up)?;
    bd.left_mult(i).cloned().ok_or_else(|| Error::Internal("missing left multiplication".into()))
}

/// Transpose of the sign component of a row-per-source table.
fn to_mat(rows: &[Vec<Scalar>], target_dim: usize, sign: Sign) -> Mat {
    let mut m = Mat::zeros(target_dim, rows.len());
    for (c, row) in rows.iter().enumerate() {
        for (r, x) in row.iter().enumerate() {
            m.set(r, c, x.specialize(sign));
        }
    }
    m
}

/// The Verma module M(λ) truncated to heights ≤ `cap`.
pub fn build_verma(alg: &CoveringAlgebra, lambda: &[i64], cap: usize, sign: Sign) -> Result<WeightModule> {
    let d = alg.datum();
    let free = alg.free();
    if cap + 1 > free.cap() {
        return Err(Error::CapExceeded { height: cap + 1, cap: free.cap() });
    }
    let n = d.rank();
    let weight = |nu: &Nu| sub_w(lambda, &d.nu_x(nu));
    let mut m = WeightModule::empty(free.datum_arc(), sign);
    let mut frontier = Vec::new();
    for h in 0..=cap {
        for nu in Nu::all_of_height(n, h) {
            let dim = free.dim(&nu)?;
            if dim == 0 {
                continue;
            }
            let w = weight(&nu);
            m.set_space(w.clone(), vec![d.nu_parity(&nu); dim]);
            for i in 0..n {
                if let Some(lower) = nu.minus_gen(i) {
                    let rows = verma_e(alg, lambda, i, &nu)?;
                    m.set_e(i, w.clone(), to_mat(&rows, free.dim(&lower)?, sign));
                }
                if h < cap {
                    let rows = verma_f(alg, i, &nu)?;
                    m.set_f(i, w.clone(), to_mat(&rows, free.dim(&nu.plus_gen(i, 1))?, sign));
                }
            }
            if h == cap {
                frontier.push(w);
            }
        }
    }
    m.highest = Some(lambda.to_vec());
    m.set_truncation(cap, frontier);
    Ok(m)
}

/// The simple module V(λ) in the given sign component, realized as the
/// quotient of M(λ) by the left ideal generated by θ_i^{⟨i,λ⟩+1}.
///
/// Layers are built by height until one vanishes entirely; the free half
/// must allow one height beyond the top layer.
pub fn build_simple(alg: &CoveringAlgebra, lambda: &[i64], sign: Sign) -> Result<WeightModule> {
    let d = alg.datum();
    let free = alg.free();
    let n = d.rank();
    let bounds: Vec<i64> = (0..n).map(|i| d.pair_i(i, lambda)).collect();
    if let Some(i) = bounds.iter().position(|&b| b < 0) {
        return Err(Error::InvalidArgument(format!("λ is not dominant: ⟨{i},λ⟩ = {}", bounds[i])));
    }
    // T_ν and the quotient positions, per layer
    let mut layers: BTreeMap<Nu, Span> = BTreeMap::new();
    let mut h = 0;
    loop {
        if h > free.cap() {
            return Err(Error::CapExceeded { height: h, cap: free.cap() });
        }
        let mut any = false;
        for nu in Nu::all_of_height(n, h) {
            let dim = free.dim(&nu)?;
            let mut span = Span::new(dim);
            for i in 0..n {
                let k = (bounds[i] + 1) as u32;
                let Some(rest) = nu.checked_sub(&Nu::zero(n).plus_gen(i, k)) else { continue };
                let tail = vec![i as u8; k as usize];
                for b in free.basis(&rest)?.words.iter() {
                    let mut w = b.clone();
                    w.extend_from_slice(&tail);
                    let v: Vec<RationalFn> = free.reduce_word(&w)?.iter().map(|x| x.specialize(sign)).collect();
                    span.insert(&v);
                }
            }
            if span.len() < dim {
                any = true;
            }
            layers.insert(nu, span);
        }
        if !any {
            break;
        }
        h += 1;
    }
    let top = h;
    let weight = |nu: &Nu| sub_w(lambda, &d.nu_x(nu));
    let mut m = WeightModule::empty(free.datum_arc(), sign);
    for (nu, span) in &layers {
        let free_pos = span.free_positions();
        if free_pos.is_empty() {
            continue;
        }
        let w = weight(nu);
        m.set_space(w.clone(), vec![d.nu_parity(nu); free_pos.len()]);
        for i in 0..n {
            if let Some(lower) = nu.minus_gen(i) {
                let rows = verma_e(alg, lambda, i, nu)?;
                let target = &layers[&lower];
                m.set_e(i, w.clone(), induced(&rows, &free_pos, target, sign));
            }
            if nu.height() < top {
                let up = nu.plus_gen(i, 1);
                let rows = verma_f(alg, i, nu)?;
                m.set_f(i, w.clone(), induced(&rows, &free_pos, &layers[&up], sign));
            }
        }
    }
    m.highest = Some(lambda.to_vec());
    Ok(m)
}

/// The map induced on quotients by a Verma matrix given as rows per source.
fn induced(rows: &[Vec<Scalar>], source: &[usize], target: &Span, sign: Sign) -> Mat {
    let tdim = target.ambient_dim() - target.len();
    let mut m = Mat::zeros(tdim, source.len());
    for (c, &p) in source.iter().enumerate() {
        let v: Vec<RationalFn> = rows[p].iter().map(|x| x.specialize(sign)).collect();
        for (r, x) in target.quotient_coords(&v).into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m
}
