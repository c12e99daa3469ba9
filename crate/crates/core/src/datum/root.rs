use serde::{Deserialize, Serialize};

use super::cartan::{int_det, int_rank, SuperCartanDatum};
use crate::error::{Error, Result};

/// A root datum (Y, X, ⟨,⟩, I → Y, I → X) realized in coordinates:
/// `Y = Z^rank`, `X = Z^rank` and ⟨μ, λ⟩ = μᵀ P λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub rank: usize,
    pub pairing: Vec<Vec<i64>>,
    pub embed_y: Vec<Vec<i64>>,
    pub embed_x: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn pair(&self, mu: &[i64], lambda: &[i64]) -> i64 {
        let mut acc = 0;
        for a in 0..self.rank {
            if mu[a] == 0 {
                continue;
            }
            for b in 0..self.rank {
                acc += mu[a] * self.pairing[a][b] * lambda[b];
            }
        }
        acc
    }

    /// ⟨i, λ⟩.
    pub fn pair_i(&self, i: usize, lambda: &[i64]) -> i64 {
        self.pair(&self.embed_y[i], lambda)
    }

    /// Checks unimodularity, the Cartan compatibility ⟨i,j'⟩ = 2 i·j / i·i and
    /// independence of the simple coroots and roots.
    pub fn validate(&self, cartan: &SuperCartanDatum) -> Result<()> {
        let n = cartan.rank();
        let bad = |c: &str, msg: String| Error::Datum {
            condition: format!("root datum {c}"),
            location: "pairing".into(),
            message: msg,
        };
        if self.pairing.len() != self.rank || self.pairing.iter().any(|r| r.len() != self.rank) {
            return Err(bad("a", "pairing matrix is not square of size rankY".into()));
        }
        let det = int_det(&self.pairing);
        if det != 1.into() && det != (-1).into() {
            return Err(bad("a", format!("pairing determinant {det} is not ±1")));
        }
        if self.embed_y.len() != n || self.embed_x.len() != n {
            return Err(bad("b", "embeddings must list one vector per generator".into()));
        }
        if self.embed_y.iter().chain(self.embed_x.iter()).any(|v| v.len() != self.rank) {
            return Err(bad("b", "embedding vectors must have length rankY".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let got = self.pair(&self.embed_y[i], &self.embed_x[j]);
                if got != cartan.cartan(i, j) {
                    return Err(bad("c", format!("<{i},{j}'> = {got}, expected {}", cartan.cartan(i, j))));
                }
            }
        }
        if int_rank(&self.embed_y) != n || int_rank(&self.embed_x) != n {
            return Err(bad("b", "images of I are not linearly independent".into()));
        }
        Ok(())
    }

    /// Y = Z[I] ⊕ Z^c with the canonical pairing; the simple roots are the
    /// Cartan columns extended by unit vectors in the extra coordinates.
    pub fn default_for(cartan: &SuperCartanDatum) -> Self {
        let n = cartan.rank();
        let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cartan.cartan(i, j)).collect()).collect();
        // greedy choice of independent columns; the rest receive unit vectors
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        let mut extra: Vec<usize> = Vec::new();
        for j in 0..n {
            let col: Vec<i64> = (0..n).map(|i| a[i][j]).collect();
            let mut trial = chosen.clone();
            trial.push(col);
            if int_rank(&trial) == trial.len() {
                chosen = trial;
            } else {
                extra.push(j);
            }
        }
        let c = extra.len();
        let rank = n + c;
        let pairing = (0..rank).map(|r| (0..rank).map(|s| i64::from(r == s)).collect()).collect();
        let embed_y = (0..n).map(|i| (0..rank).map(|r| i64::from(r == i)).collect()).collect();
        let embed_x = (0..n)
            .map(|j| {
                let mut v: Vec<i64> = (0..n).map(|i| a[i][j]).collect();
                v.extend(extra.iter().map(|&e| i64::from(e == j)));
                v
            })
            .collect();
        RootDatum { rank, pairing, embed_y, embed_x }
    }

    /// s_i(λ) = λ − ⟨i,λ⟩ i'.
    pub fn reflect_x(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let c = self.pair_i(i, lambda);
        lambda.iter().zip(&self.embed_x[i]).map(|(l, r)| l - c * r).collect()
    }

    /// s_i(μ) = μ − ⟨μ,i'⟩ i.
    pub fn reflect_y(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let c = self.pair(mu, &self.embed_x[i]);
        mu.iter().zip(&self.embed_y[i]).map(|(m, r)| m - c * r).collect()
    }
}
