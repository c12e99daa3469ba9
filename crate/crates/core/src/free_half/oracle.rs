//! Independent dimension computations for f_ν: the rank of the full Gram
//! matrix over all words, and the dimension of the algebra presented by
//! generators and quantum Serre relations.

use std::collections::HashMap;

use serde::Serialize;

use super::{FreeElt, FreeHalf, Word};
use crate::datum::Nu;
use crate::error::Result;
use crate::linalg::{scalar_rank, Span};
use crate::scalar_ring::{Scalar, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramRank {
    pub nu: Vec<u32>,
    pub words: usize,
    /// Rank at π = +1 and π = −1.
    pub rank: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreSpanDim {
    pub nu: Vec<u32>,
    pub words: usize,
    pub ideal_rank: [usize; 2],
    pub dim: [usize; 2],
}

impl FreeHalf {
    /// Rank of the form on all words of weight ν, without any basis cache.
    pub fn gram_all_words(&self, nu: &Nu) -> GramRank {
        let words = nu.words();
        let rows: Vec<Vec<Scalar>> =
            words.iter().map(|a| words.iter().map(|b| self.raw_form_words(a, b)).collect()).collect();
        GramRank { nu: nu.0.clone(), words: words.len(), rank: scalar_rank(&rows, words.len()) }
    }

    /// Dimension of the weight-ν part of the free algebra modulo the
    /// two-sided ideal generated by all quantum Serre elements.
    pub fn serre_presented_dim(&self, nu: &Nu) -> Result<SerreSpanDim> {
        let d = self.datum();
        let n = self.rank();
        let words = nu.words();
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let mut relations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    relations.push(self.serre_element(i, j)?);
                }
            }
        }
        let mut spans = [Span::new(words.len()), Span::new(words.len())];
        for s in &relations {
            let Some(sw) = s.weight(d) else { continue };
            let Some(rest) = nu.checked_sub(&sw) else { continue };
            for left_w in sub_weights(&rest) {
                let right_w = rest.checked_sub(&left_w).expect("sub-weight");
                for u in left_w.words() {
                    for v in right_w.words() {
                        let elt = FreeElt::word(u.clone()).mul(s).mul(&FreeElt::word(v));
                        for (sp, sign) in spans.iter_mut().zip(Sign::both()) {
                            if sp.len() == words.len() {
                                continue;
                            }
                            let mut vec = vec![crate::scalar_ring::RationalFn::zero(); words.len()];
                            for (w, c) in elt.terms() {
                                vec[index[w]] = c.component(sign).clone();
                            }
                            sp.insert(&vec);
                        }
                    }
                }
            }
        }
        let ideal_rank = [spans[0].len(), spans[1].len()];
        Ok(SerreSpanDim {
            nu: nu.0.clone(),
            words: words.len(),
            ideal_rank,
            dim: ideal_rank.map(|r| words.len() - r),
        })
    }
}

/// All μ with 0 ≤ μ ≤ ν componentwise.
fn sub_weights(nu: &Nu) -> Vec<Nu> {
    let mut out = vec![Vec::new()];
    for &k in &nu.0 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=k).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Nu).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::Datum;
    use std::sync::Arc;

    #[test]
    fn sub_weight_count() {
        assert_eq!(sub_weights(&Nu(vec![2, 1])).len(), 6);
    }

    #[test]
    fn oracles_agree_at_low_height() {
        let f = FreeHalf::new(Arc::new(Datum::b02()), 6);
        for nu in [Nu(vec![1, 1]), Nu(vec![1, 2]), Nu(vec![2, 1]), Nu(vec![1, 3])] {
            let dim = f.dim(&nu).unwrap();
            assert_eq!(f.gram_all_words(&nu).rank, [dim, dim], "{nu}");
            assert_eq!(f.serre_presented_dim(&nu).unwrap().dim, [dim, dim], "{nu}");
        }
    }
}
