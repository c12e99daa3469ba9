use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A super Cartan datum: generators with parities and a symmetric integer
/// matrix of dot products `i·j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperCartanDatum {
    pub name: String,
    pub parity: Vec<u8>,
    pub dot: Vec<Vec<i64>>,
    /// When set, at least one generator must be odd.
    #[serde(default = "default_true", rename = "super")]
    pub is_super: bool,
}

fn default_true() -> bool {
    true
}

/// Outcome of a successful validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub finite_type: bool,
    pub consistent: bool,
    /// Whether every dot product is even (implied by consistency).
    pub even_products: bool,
}

fn fail(condition: &str, i: usize, j: Option<usize>, message: String) -> Error {
    let location = match j {
        Some(j) => format!("(i={i}, j={j})"),
        None => format!("(i={i})"),
    };
    Error::Datum { condition: condition.to_string(), location, message }
}

impl SuperCartanDatum {
    pub fn new(name: &str, parity: Vec<u8>, dot: Vec<Vec<i64>>) -> Self {
        SuperCartanDatum { name: name.to_string(), parity, dot, is_super: true }
    }

    pub fn rank(&self) -> usize {
        self.parity.len()
    }

    pub fn d(&self, i: usize) -> i64 {
        self.dot[i][i] / 2
    }

    /// ⟨i, j'⟩ = 2 (i·j)/(i·i).
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.dot[i][j] / self.dot[i][i]
    }

    pub fn is_consistent(&self) -> bool {
        (0..self.rank()).all(|i| self.d(i).rem_euclid(2) == self.parity[i] as i64)
    }

    /// Checks the structural preconditions and conditions (a)–(d); reports
    /// consistency (e), the derived evenness (f) and finite type.
    pub fn validate(&self) -> Result<DatumReport> {
        let n = self.rank();
        if n == 0 {
            return Err(Error::InvalidArgument("datum has no generators".into()));
        }
        if self.dot.len() != n || self.dot.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("dot matrix shape does not match parity list".into()));
        }
        if let Some(i) = self.parity.iter().position(|&p| p > 1) {
            return Err(Error::InvalidArgument(format!("parity of generator {i} must be 0 or 1")));
        }
        for i in 0..n {
            for j in 0..n {
                if self.dot[i][j] != self.dot[j][i] {
                    return Err(Error::InvalidArgument(format!("dot matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        for i in 0..n {
            let ii = self.dot[i][i];
            if ii <= 0 || ii % 2 != 0 {
                return Err(fail("a", i, None, format!("i·i = {ii} is not a positive even integer")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let num = 2 * self.dot[i][j];
                let ii = self.dot[i][i];
                if num % ii != 0 || num / ii > 0 {
                    return Err(fail("b", i, Some(j), format!("2(i·j)/(i·i) = {num}/{ii} is not in -N")));
                }
            }
        }
        if self.is_super && self.parity.iter().all(|&p| p == 0) {
            return Err(fail("c", 0, None, "no odd generator in a super datum".into()));
        }
        for i in 0..n {
            if self.parity[i] == 1 {
                for j in 0..n {
                    let a = self.cartan(i, j);
                    if a % 2 != 0 {
                        return Err(fail("d", i, Some(j), format!("odd generator with <i,j'> = {a}")));
                    }
                }
            }
        }
        let consistent = self.is_consistent();
        let even_products = self.dot.iter().flatten().all(|x| x % 2 == 0);
        if consistent && !even_products {
            return Err(Error::Internal("consistent datum with an odd dot product".into()));
        }
        Ok(DatumReport { finite_type: self.is_positive_definite(), consistent, even_products })
    }

    /// Sylvester's criterion on leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.rank();
        (1..=n).all(|k| {
            let m: Vec<Vec<i64>> = (0..k).map(|i| self.dot[i][..k].to_vec()).collect();
            int_det(&m) > num_bigint::BigInt::from(0)
        })
    }
}

/// Exact determinant by fraction-free elimination.
pub fn int_det(m: &[Vec<i64>]) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of an integer matrix over Q.
pub fn int_rank(m: &[Vec<i64>]) -> usize {
    use num_rational::BigRational;
    use num_traits::Zero;
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let t = &f * &a[rank][k];
                    a[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_rank() {
        assert_eq!(int_det(&[vec![4, -2], vec![-2, 2]]), 4.into());
        assert_eq!(int_det(&[vec![2, -2], vec![-2, 2]]), 0.into());
        assert_eq!(int_rank(&[vec![2, -2], vec![-2, 2]]), 1);
        assert_eq!(int_det(&[vec![0, 1], vec![1, 0]]), (-1).into());
    }

    #[test]
    fn odd_generator_with_odd_cartan_entry_fails_d() {
        let d = SuperCartanDatum::new("bad", vec![1, 0], vec![vec![2, -1], vec![-1, 2]]);
        match d.validate() {
            Err(Error::Datum { condition, .. }) => assert_eq!(condition, "d"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn known_data_validate() {
        let b01 = SuperCartanDatum::new("B(0,1)", vec![1], vec![vec![2]]);
        let r = b01.validate().unwrap();
        assert!(r.finite_type && r.consistent);
        let b02 = SuperCartanDatum::new("B(0,2)", vec![0, 1], vec![vec![4, -2], vec![-2, 2]]);
        let r = b02.validate().unwrap();
        assert!(r.finite_type && r.consistent);
        let aff = SuperCartanDatum::new("aff", vec![1, 1], vec![vec![2, -2], vec![-2, 2]]);
        let r = aff.validate().unwrap();
        assert!(!r.finite_type && r.consistent);
    }
}
