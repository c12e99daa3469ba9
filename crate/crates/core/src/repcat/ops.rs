use std::collections::BTreeMap;

use serde::Serialize;

use super::{add_w, sub_w, WeightModule};
use crate::datum::Weight;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Span};
use crate::scalar_ring::RationalFn;

fn require_finite(m: &WeightModule, what: &str) -> Result<()> {
    if m.is_truncated() {
        Err(Error::InvalidArgument(format!("{what} needs a finite-dimensional module, not a truncation")))
    } else {
        Ok(())
    }
}

/// M ⊗ N with E_i and F_i acting through Δ and the super sign rule.
/// The basis of a weight space lists the pairs (λ′, λ″) in increasing
/// order, and within a pair the vectors m_a ⊗ n_b with b varying fastest.
pub fn tensor_module(m: &WeightModule, n: &WeightModule) -> Result<WeightModule> {
    require_finite(m, "tensor_module")?;
    require_finite(n, "tensor_module")?;
    if m.sign != n.sign {
        return Err(Error::InvalidArgument("tensor factors lie in different sign components".into()));
    }
    let d = m.datum_arc();
    let sign = m.sign;
    // blocks[λ] = list of (λ′, λ″, offset)
    let mut blocks: BTreeMap<Weight, Vec<(Weight, Weight, usize)>> = BTreeMap::new();
    let mut parities: BTreeMap<Weight, Vec<u8>> = BTreeMap::new();
    for (l1, p1) in &m.spaces {
        for (l2, p2) in &n.spaces {
            let l = add_w(l1, l2);
            let par = parities.entry(l.clone()).or_default();
            blocks.entry(l).or_default().push((l1.clone(), l2.clone(), par.len()));
            for a in p1 {
                for b in p2 {
                    par.push((a + b) % 2);
                }
            }
        }
    }
    let offset = |l1: &Weight, l2: &Weight| -> Option<usize> {
        blocks.get(&add_w(l1, l2))?.iter().find(|(a, b, _)| a == l1 && b == l2).map(|x| x.2)
    };
    let mut out = WeightModule::empty(d.clone(), sign);
    for (l, p) in &parities {
        out.set_space(l.clone(), p.clone());
    }
    for (l, blist) in &blocks {
        let src_dim = parities[l].len();
        for i in 0..d.rank() {
            let ri = d.root_x(i);
            let di = d.d(i);
            let pi = d.parity(i) as i64;
            let up = add_w(l, ri);
            let down = sub_w(l, ri);
            let mut e = Mat::zeros(parities.get(&up).map_or(0, Vec::len), src_dim);
            let mut f = Mat::zeros(parities.get(&down).map_or(0, Vec::len), src_dim);
            for (l1, l2, off) in blist {
                let (d1, d2) = (m.dim_at(l1), n.dim_at(l2));
                let pm = m.parities(l1);
                // E_i ⊗ 1
                if let (Some(em), Some(t)) = (m.e_mat(i, l1), offset(&add_w(l1, ri), l2)) {
                    for a in 0..d1 {
                        for a2 in 0..em.rows {
                            let c = em.get(a2, a);
                            if c.is_zero() {
                                continue;
                            }
                            for b in 0..d2 {
                                add_at(&mut e, t + a2 * d2 + b, off + a * d2 + b, c);
                            }
                        }
                    }
                }
                // π^{p(i)p(m)} J̃_iK̃_i m ⊗ E_i n
                if let (Some(en), Some(t)) = (n.e_mat(i, l2), offset(l1, &add_w(l2, ri))) {
                    let k = di * d.pair_i(i, l1);
                    let jk = RationalFn::q_pow(k).scale_int(sign.pow(k));
                    for a in 0..d1 {
                        let c0 = jk.scale_int(sign.pow(pi * pm[a] as i64));
                        for b in 0..d2 {
                            for b2 in 0..en.rows {
                                let c = en.get(b2, b);
                                if !c.is_zero() {
                                    add_at(&mut e, t + a * en.rows + b2, off + a * d2 + b, &c.mul(&c0));
                                }
                            }
                        }
                    }
                }
                // F_i m ⊗ K̃_{−i} n
                if let (Some(fm), Some(t)) = (m.f_mat(i, l1), offset(&sub_w(l1, ri), l2)) {
                    let kt = RationalFn::q_pow(-di * d.pair_i(i, l2));
                    for a in 0..d1 {
                        for a2 in 0..fm.rows {
                            let c = fm.get(a2, a);
                            if c.is_zero() {
                                continue;
                            }
                            let c = c.mul(&kt);
                            for b in 0..d2 {
                                add_at(&mut f, t + a2 * d2 + b, off + a * d2 + b, &c);
                            }
                        }
                    }
                }
                // π^{p(i)p(m)} m ⊗ F_i n
                if let (Some(fn_), Some(t)) = (n.f_mat(i, l2), offset(l1, &sub_w(l2, ri))) {
                    for a in 0..d1 {
                        let s = sign.pow(pi * pm[a] as i64);
                        for b in 0..d2 {
                            for b2 in 0..fn_.rows {
                                let c = fn_.get(b2, b);
                                if !c.is_zero() {
                                    add_at(&mut f, t + a * fn_.rows + b2, off + a * d2 + b, &c.scale_int(s));
                                }
                            }
                        }
                    }
                }
            }
            out.set_e(i, l.clone(), e);
            out.set_f(i, l.clone(), f);
        }
    }
    if let (Some(a), Some(b)) = (&m.highest, &n.highest) {
        out.highest = Some(add_w(a, b));
    }
    Ok(out)
}

fn add_at(m: &mut Mat, r: usize, c: usize, x: &RationalFn) {
    let v = m.get(r, c).add(x);
    m.set(r, c, v);
}

/// ^ωM: the same space with u acting as ω(u), so ^ωM^{−λ} = M^λ.
pub fn omega_twist(m: &WeightModule) -> Result<WeightModule> {
    require_finite(m, "omega_twist")?;
    let d = m.datum_arc();
    let neg = |w: &Weight| w.iter().map(|x| -x).collect::<Weight>();
    let mut out = WeightModule::empty(d.clone(), m.sign);
    for (l, p) in &m.spaces {
        out.set_space(neg(l), p.clone());
        for i in 0..d.rank() {
            // E_i acts as π_i J̃_i F_i
            if let Some(fm) = m.f_mat(i, l) {
                let below = sub_w(l, d.root_x(i));
                let k = d.d(i) * d.pair_i(i, &below) + d.parity(i) as i64;
                out.set_e(i, neg(l), fm.scale(&RationalFn::from_int(m.sign.pow(k))));
            }
            if let Some(em) = m.e_mat(i, l) {
                out.set_f(i, neg(l), em.clone());
            }
        }
    }
    Ok(out)
}

/// A basis of {v ∈ M^λ : E_i v = 0 for all i}.
pub fn singular_vectors(m: &WeightModule, lambda: &[i64]) -> Vec<Vec<RationalFn>> {
    let dim = m.dim_at(lambda);
    if dim == 0 {
        return Vec::new();
    }
    let mut stacked = Mat::zeros(0, dim);
    for i in 0..m.datum().rank() {
        stacked = stacked.vstack(&m.e_dense(i, lambda));
    }
    stacked.nullspace()
}

/// Whether every E_i and F_i acts nilpotently. On a truncation, an F-string
/// that is still nonzero at the cap counts as non-nilpotent.
pub fn verify_integrable(m: &WeightModule) -> bool {
    let d = m.datum();
    for l in m.spaces.keys() {
        for i in 0..d.rank() {
            for raise in [true, false] {
                let mut lam = l.clone();
                let mut acc = Mat::identity(m.dim_at(l));
                loop {
                    if acc.is_zero() {
                        break;
                    }
                    if !raise && m.is_frontier(&lam) {
                        return false;
                    }
                    let step = if raise { m.e_mat(i, &lam) } else { m.f_mat(i, &lam) };
                    let Some(step) = step else { break };
                    acc = step.mul(&acc);
                    lam = if raise { add_w(&lam, d.root_x(i)) } else { sub_w(&lam, d.root_x(i)) };
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Part {
    pub highest: Weight,
    pub sign: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
    pub dim: usize,
    /// The generated submodules together span M.
    pub complete: bool,
    /// Their sum is direct.
    pub direct: bool,
}

impl Decomposition {
    pub fn bookkeeping_ok(&self) -> bool {
        self.complete && self.direct && self.parts.iter().map(|p| p.dim).sum::<usize>() == self.dim
    }

    pub fn highest_weights(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.parts.iter().map(|p| p.highest.clone()).collect();
        v.sort();
        v
    }
}

/// Spans, per weight, of the U⁻-orbit of the given vectors at weight λ.
fn generate(m: &WeightModule, lambda: &[i64], seeds: &[Vec<RationalFn>]) -> BTreeMap<Weight, Span> {
    let d = m.datum();
    let mut spans: BTreeMap<Weight, Span> = BTreeMap::new();
    let mut frontier: Vec<(Weight, Vec<RationalFn>)> = Vec::new();
    let mut top = Span::new(m.dim_at(lambda));
    for v in seeds {
        if top.insert(v) {
            frontier.push((lambda.to_vec(), v.clone()));
        }
    }
    spans.insert(lambda.to_vec(), top);
    while let Some((lam, v)) = frontier.pop() {
        for i in 0..d.rank() {
            let Some(fm) = m.f_mat(i, &lam) else { continue };
            let w = fm.mul_vec(&v);
            let low = sub_w(&lam, d.root_x(i));
            let span = spans.entry(low.clone()).or_insert_with(|| Span::new(m.dim_at(&low)));
            if span.insert(&w) {
                frontier.push((low, w));
            }
        }
    }
    spans
}

/// Splits a finite-dimensional integrable module into simple summands by
/// the singular vectors of each weight.
pub fn decompose(m: &WeightModule) -> Result<Decomposition> {
    require_finite(m, "decompose")?;
    let mut parts = Vec::new();
    let mut union: BTreeMap<Weight, Span> = BTreeMap::new();
    let mut direct = true;
    for lam in m.spaces.keys().rev() {
        for v in singular_vectors(m, lam) {
            let spans = generate(m, lam, std::slice::from_ref(&v));
            let dim: usize = spans.values().map(Span::len).sum();
            for (w, s) in spans {
                let u = union.entry(w.clone()).or_insert_with(|| Span::new(m.dim_at(&w)));
                for row in s.rows() {
                    if !u.insert(row) {
                        direct = false;
                    }
                }
            }
            parts.push(Part { highest: lam.clone(), sign: m.sign.symbol().to_string(), dim });
        }
    }
    let total: usize = union.values().map(Span::len).sum();
    Ok(Decomposition { parts, dim: m.dim(), complete: total == m.dim(), direct })
}

/// Decomposition of the formal sum of modules in different components.
pub fn decompose_sum(mods: &[&WeightModule]) -> Result<Vec<Part>> {
    let mut out = Vec::new();
    for m in mods {
        out.extend(decompose(m)?.parts);
    }
    Ok(out)
}
