use serde::{Deserialize, Serialize};
use std::fmt;

/// An element ν of N[I], stored as multiplicities per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Nu(pub Vec<u32>);

impl Nu {
    pub fn zero(n: usize) -> Self {
        Nu(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Nu(v)
    }

    pub fn of_word(n: usize, word: &[u8]) -> Self {
        let mut v = vec![0; n];
        for &c in word {
            v[c as usize] += 1;
        }
        Nu(v)
    }

    pub fn height(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Nu) -> Nu {
        Nu(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, o: &Nu) -> Option<Nu> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Nu)
    }

    pub fn minus_gen(&self, i: usize) -> Option<Nu> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(Nu(v))
    }

    pub fn plus_gen(&self, i: usize, k: u32) -> Nu {
        let mut v = self.0.clone();
        v[i] += k;
        Nu(v)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// All ν with the given number of generators and height exactly `h`.
    pub fn all_of_height(n: usize, h: usize) -> Vec<Nu> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(k: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Nu>) {
            let n = cur.len();
            if k == n - 1 {
                cur[k] = left as u32;
                out.push(Nu(cur.clone()));
                return;
            }
            for x in 0..=left {
                cur[k] = x as u32;
                rec(k + 1, left - x, cur, out);
            }
        }
        if n > 0 {
            rec(0, h, &mut cur, &mut out);
        }
        out
    }

    /// Every word with this weight, in lexicographic order.
    pub fn words(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut counts = self.0.clone();
        let mut cur = Vec::with_capacity(self.height());
        fn rec(counts: &mut Vec<u32>, cur: &mut Vec<u8>, total: usize, out: &mut Vec<Vec<u8>>) {
            if cur.len() == total {
                out.push(cur.clone());
                return;
            }
            for i in 0..counts.len() {
                if counts[i] > 0 {
                    counts[i] -= 1;
                    cur.push(i as u8);
                    rec(counts, cur, total, out);
                    cur.pop();
                    counts[i] += 1;
                }
            }
        }
        let total = self.height();
        rec(&mut counts, &mut cur, total, &mut out);
        out
    }
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_lexicographic_and_counted() {
        let nu = Nu(vec![2, 1]);
        let w = nu.words();
        assert_eq!(w, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(Nu(vec![3, 3]).words().len(), 20);
        assert_eq!(Nu::all_of_height(2, 3).len(), 4);
    }
}
