use std::collections::{HashMap, VecDeque};

use super::root::RootDatum;
use crate::error::{Error, Result};

type IntMat = Vec<Vec<i64>>;

/// The Weyl group of a finite type datum as integer matrices acting on X.
#[derive(Clone, Debug)]
pub struct WeylGroupData {
    pub elements: Vec<IntMat>,
    pub lengths: Vec<usize>,
    pub generators: Vec<IntMat>,
}

const ORDER_LIMIT: usize = 200_000;

fn identity(r: usize) -> IntMat {
    (0..r).map(|a| (0..r).map(|b| i64::from(a == b)).collect()).collect()
}

fn matmul(a: &IntMat, b: &IntMat) -> IntMat {
    let r = a.len();
    let mut out = vec![vec![0; r]; r];
    for i in 0..r {
        for k in 0..r {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..r {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn apply(m: &IntMat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Matrix of s_i on X in the given coordinates.
pub fn reflection_matrix(rd: &RootDatum, i: usize) -> IntMat {
    let r = rd.rank;
    let mut cols = Vec::with_capacity(r);
    for k in 0..r {
        let e: Vec<i64> = (0..r).map(|a| i64::from(a == k)).collect();
        cols.push(rd.reflect_x(i, &e));
    }
    (0..r).map(|a| (0..r).map(|k| cols[k][a]).collect()).collect()
}

impl WeylGroupData {
    /// Breadth-first closure under left multiplication by simple
    /// reflections, recording minimal word lengths.
    pub fn enumerate(rd: &RootDatum, n: usize, finite_type: bool) -> Result<Self> {
        if !finite_type {
            return Err(Error::NotFiniteType);
        }
        let generators: Vec<IntMat> = (0..n).map(|i| reflection_matrix(rd, i)).collect();
        let id = identity(rd.rank);
        let mut seen: HashMap<IntMat, usize> = HashMap::new();
        let mut elements = vec![id.clone()];
        let mut lengths = vec![0];
        seen.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in &generators {
                let w = matmul(g, &elements[k]);
                if !seen.contains_key(&w) {
                    if elements.len() >= ORDER_LIMIT {
                        return Err(Error::NotFiniteType);
                    }
                    seen.insert(w.clone(), elements.len());
                    elements.push(w);
                    lengths.push(lengths[k] + 1);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(WeylGroupData { elements, lengths, generators })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &IntMat) -> bool {
        self.elements.iter().any(|e| e == m)
    }

    /// Product of generator matrices along a word (rightmost acts first).
    pub fn word_matrix(&self, word: &[usize]) -> IntMat {
        let r = self.generators.first().map(|g| g.len()).unwrap_or(0);
        word.iter().fold(identity(r), |acc, &i| matmul(&acc, &self.generators[i]))
    }

    pub fn identity(&self) -> IntMat {
        identity(self.generators.first().map(|g| g.len()).unwrap_or(0))
    }
}

/// m_ij from the product ⟨i,j'⟩⟨j,i'⟩; `None` stands for ∞.
pub fn m_ij(product: i64) -> Option<u32> {
    match product {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}
