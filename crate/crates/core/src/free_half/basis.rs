use super::{FreeHalf, Word};
use crate::datum::Nu;
use crate::error::{Error, Result};
use crate::linalg::{scalar_inverse, scalar_vec_mat, Span};
use crate::scalar_ring::{Scalar, Sign};

/// A basis of f_ν together with the data needed to compute coordinates.
#[derive(Clone, Debug)]
pub struct BasisData {
    pub nu: Nu,
    /// The chosen basis words B_ν in increasing lexicographic order.
    pub words: Vec<Word>,
    /// Gram matrix of the form on B_ν.
    pub gram: Vec<Vec<Scalar>>,
    /// Inverse Gram matrix; row b gives b* in terms of B_ν.
    pub dual: Vec<Vec<Scalar>>,
    /// Number of words of weight ν in 'f.
    pub total_words: usize,
    /// For each generator i, the coordinates of θ_i·b (b ∈ B_{ν−i}) in B_ν.
    left: Vec<Option<Vec<Vec<Scalar>>>>,
}

impl BasisData {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.total_words - self.words.len()
    }

    pub fn left_mult(&self, i: usize) -> Option<&Vec<Vec<Scalar>>> {
        self.left.get(i).and_then(Option::as_ref)
    }

    /// The dual basis element b* as a combination of basis words.
    pub fn dual_element(&self, k: usize) -> Vec<(Word, Scalar)> {
        self.words.iter().cloned().zip(self.dual[k].iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn multinomial(nu: &Nu) -> usize {
    let mut total = 0usize;
    let mut acc = 1u128;
    for &k in &nu.0 {
        for s in 1..=k as u128 {
            total += 1;
            acc = acc * total as u128 / s;
        }
    }
    acc as usize
}

/// f_ν is spanned by θ_i·B_{ν−i}, so the candidates are those words; the
/// lexicographically greedy choice among them agrees with the greedy
/// choice among all words of weight ν.
pub(super) fn build(ctx: &FreeHalf, nu: &Nu) -> Result<BasisData> {
    let n = ctx.rank();
    if nu.is_zero() {
        return Ok(BasisData {
            nu: nu.clone(),
            words: vec![Vec::new()],
            gram: vec![vec![Scalar::one()]],
            dual: vec![vec![Scalar::one()]],
            total_words: 1,
            left: vec![None; n],
        });
    }
    let mut cands: Vec<Word> = Vec::new();
    for i in 0..n {
        if let Some(lower) = nu.minus_gen(i) {
            for b in &ctx.basis(&lower)?.words {
                let mut w = vec![i as u8];
                w.extend_from_slice(b);
                cands.push(w);
            }
        }
    }
    cands.sort();
    cands.dedup();
    let m = cands.len();
    let raw: Vec<Vec<Scalar>> =
        cands.iter().map(|a| cands.iter().map(|b| ctx.raw_form_words(a, b)).collect()).collect();

    let mut spans = [Span::new(m), Span::new(m)];
    let mut chosen = Vec::new();
    for (k, row) in raw.iter().enumerate() {
        let comps: Vec<Vec<_>> = Sign::both().iter().map(|&s| row.iter().map(|x| x.component(s).clone()).collect()).collect();
        if spans.iter().zip(&comps).all(|(sp, v)| !sp.contains(v)) {
            for (sp, v) in spans.iter_mut().zip(&comps) {
                sp.insert(v);
            }
            chosen.push(k);
        }
    }
    for row in &raw {
        for (sp, s) in spans.iter().zip(Sign::both()) {
            let v: Vec<_> = row.iter().map(|x| x.component(s).clone()).collect();
            if !sp.contains(&v) {
                return Err(Error::Internal(format!(
                    "weight {nu}: no common basis for both sign components (π = {} has larger rank)",
                    s.symbol()
                )));
            }
        }
    }

    let words: Vec<Word> = chosen.iter().map(|&k| cands[k].clone()).collect();
    let raw_b: Vec<Vec<Scalar>> = chosen.iter().map(|&a| chosen.iter().map(|&b| raw[a][b].clone()).collect()).collect();
    let raw_inv = scalar_inverse(&raw_b).ok_or_else(|| Error::Internal(format!("weight {nu}: singular Gram block")))?;

    let mut left = vec![None; n];
    for (i, slot) in left.iter_mut().enumerate() {
        let Some(lower) = nu.minus_gen(i) else { continue };
        let lower_words = &ctx.basis(&lower)?.words;
        let rows = lower_words
            .iter()
            .map(|b| {
                let mut w = vec![i as u8];
                w.extend_from_slice(b);
                let k = cands.binary_search(&w).expect("candidate present");
                let r: Vec<Scalar> = chosen.iter().map(|&c| raw[k][c].clone()).collect();
                scalar_vec_mat(&r, &raw_inv)
            })
            .collect();
        *slot = Some(rows);
    }

    let c = ctx.norm_factor(nu);
    let ci = c.inv();
    Ok(BasisData {
        nu: nu.clone(),
        words,
        gram: raw_b.iter().map(|r| r.iter().map(|x| x.mul(&c)).collect()).collect(),
        dual: raw_inv.iter().map(|r| r.iter().map(|x| x.mul(&ci)).collect()).collect(),
        total_words: multinomial(nu),
        left,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_counts() {
        assert_eq!(multinomial(&Nu(vec![2, 2])), 6);
        assert_eq!(multinomial(&Nu(vec![3, 1])), 4);
        assert_eq!(multinomial(&Nu(vec![0, 0])), 1);
    }
}
