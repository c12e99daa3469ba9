//! Dense exact linear algebra over Q(q).

use crate::scalar_ring::{RationalFn, Scalar, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RationalFn>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![RationalFn::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RationalFn::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &RationalFn) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFn>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &RationalFn {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalFn) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[RationalFn] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<RationalFn> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RationalFn]) -> Vec<RationalFn> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| {
                let mut acc = RationalFn::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &RationalFn) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..m.cols {
            if row == m.rows {
                break;
            }
            // pick the smallest nonzero candidate to curb expression swell
            let Some(p) = (row..m.rows).filter(|&r| !m.get(r, c).is_zero()).min_by_key(|&r| m.get(r, c).size_hint())
            else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, c).inv();
            for k in c..m.cols {
                let v = m.get(row, k).mul(&inv);
                m.set(row, k, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let t = m.get(row, k);
                    if t.is_zero() {
                        continue;
                    }
                    let v = m.get(r, k).sub(&f.mul(t));
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, RationalFn::one());
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<RationalFn>> {
        let (red, piv) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![RationalFn::zero(); self.cols];
            v[free] = RationalFn::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = red.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Stack rows of `self` above rows of `o`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }
}

/// A growing set of linearly independent vectors kept in reduced form,
/// supporting membership tests and projections.
#[derive(Clone, Debug, Default)]
pub struct Span {
    dim: usize,
    rows: Vec<Vec<RationalFn>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// The stored rows, in insertion order.
    pub fn rows(&self) -> &[Vec<RationalFn>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, v: &[RationalFn]) -> Vec<RationalFn> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[RationalFn]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: &[RationalFn]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].inv();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        // keep earlier rows reduced with respect to the new pivot
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` modulo the span, read off on the non-pivot
    /// positions in increasing order.
    pub fn quotient_coords(&self, v: &[RationalFn]) -> Vec<RationalFn> {
        let r = self.reduce(v);
        (0..self.dim).filter(|c| !self.pivots.contains(c)).map(|c| r[c].clone()).collect()
    }

    /// Positions not used as pivots, i.e. a basis of the quotient.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Matrices over Q(q)^π are handled one sign component at a time.
pub fn component_mat(rows: &[Vec<Scalar>], cols: usize, sign: Sign) -> Mat {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|x| x.component(sign).clone()).collect()).collect(), cols)
}

pub fn join_components(plus: &Mat, minus: &Mat) -> Vec<Vec<Scalar>> {
    assert_eq!((plus.rows, plus.cols), (minus.rows, minus.cols));
    (0..plus.rows)
        .map(|r| (0..plus.cols).map(|c| Scalar::new(plus.get(r, c).clone(), minus.get(r, c).clone())).collect())
        .collect()
}

pub fn scalar_inverse(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = rows.len();
    let p = component_mat(rows, n, Sign::Plus).inverse()?;
    let m = component_mat(rows, n, Sign::Minus).inverse()?;
    Some(join_components(&p, &m))
}

/// Ranks of the π = +1 and π = −1 components.
pub fn scalar_rank(rows: &[Vec<Scalar>], cols: usize) -> [usize; 2] {
    Sign::both().map(|s| component_mat(rows, cols, s).rank())
}

/// Row vector times matrix.
pub fn scalar_vec_mat(v: &[Scalar], m: &[Vec<Scalar>]) -> Vec<Scalar> {
    assert_eq!(v.len(), m.len(), "dimension mismatch in product");
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Scalar::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o = o.add(&x.mul(y));
            }
        }
    }
    out
}

pub fn scalar_mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    a.iter().map(|r| scalar_vec_mat(r, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> RationalFn {
        RationalFn::q_pow(k)
    }

    #[test]
    fn inverse_and_rank() {
        let one = RationalFn::one();
        let m = Mat::from_rows(vec![vec![q(1), one.clone()], vec![one.clone(), q(-1)]], 2);
        assert_eq!(m.rank(), 1);
        assert!(m.inverse().is_none());
        let m = Mat::from_rows(vec![vec![q(1), one.clone()], vec![one.clone(), q(1)]], 2);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn span_projection() {
        let one = RationalFn::one();
        let z = RationalFn::zero();
        let mut s = Span::new(3);
        assert!(s.insert(&[one.clone(), q(1), z.clone()]));
        assert!(!s.insert(&[q(2), q(3), z.clone()]));
        assert!(s.insert(&[z.clone(), one.clone(), one.clone()]));
        assert_eq!(s.len(), 2);
        assert_eq!(s.free_positions(), vec![2]);
        let c = s.quotient_coords(&[z.clone(), z.clone(), one.clone()]);
        assert_eq!(c, vec![one]);
    }
}
