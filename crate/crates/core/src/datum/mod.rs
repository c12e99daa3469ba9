//! Super Cartan data, root data, weight bookkeeping and Weyl groups.

mod cartan;
mod nu;
mod root;
mod weyl;

pub use cartan::{int_det, int_rank, DatumReport, SuperCartanDatum};
pub use nu::Nu;
pub use root::RootDatum;
pub use weyl::{apply as weyl_apply, m_ij, reflection_matrix, WeylGroupData};

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar_ring::{choose2, GenParams, Scalar};

/// A weight λ ∈ X in root-datum coordinates.
pub type Weight = Vec<i64>;
/// An element μ ∈ Y in root-datum coordinates.
pub type Coweight = Vec<i64>;

/// A validated super Cartan datum together with its root datum.
#[derive(Clone, Debug)]
pub struct Datum {
    pub cartan: SuperCartanDatum,
    pub root: RootDatum,
    pub report: DatumReport,
}

/// The sign statistics attached to ν.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignStats {
    pub c: i64,
    pub e: i64,
    pub f: i64,
    pub pi_nu: Scalar,
    pub q_nu: Scalar,
}

#[derive(Deserialize)]
struct RootDatumFile {
    #[serde(rename = "pairingYX")]
    pairing_yx: Vec<Vec<i64>>,
    #[serde(rename = "embedY", default)]
    embed_y: Option<Vec<Vec<i64>>>,
    #[serde(rename = "embedX", default)]
    embed_x: Option<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
struct DatumFile {
    #[serde(flatten)]
    cartan: SuperCartanDatum,
    #[serde(default)]
    root_datum: Option<RootDatumFile>,
}

#[derive(Serialize)]
pub struct DatumSummary<'a> {
    pub name: &'a str,
    pub rank: usize,
    pub rank_y: usize,
    pub finite_type: bool,
    pub consistent: bool,
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl Datum {
    /// Validate and attach the default root datum.
    pub fn new(cartan: SuperCartanDatum) -> Result<Self> {
        let report = cartan.validate()?;
        let root = RootDatum::default_for(&cartan);
        root.validate(&cartan)?;
        Ok(Datum { cartan, root, report })
    }

    pub fn with_root(cartan: SuperCartanDatum, root: RootDatum) -> Result<Self> {
        let report = cartan.validate()?;
        root.validate(&cartan)?;
        Ok(Datum { cartan, root, report })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DatumFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match file.root_datum {
            None => Datum::new(file.cartan),
            Some(rd) => match (rd.embed_y, rd.embed_x) {
                (Some(ey), Some(ex)) => {
                    let root = RootDatum { rank: rd.pairing_yx.len(), pairing: rd.pairing_yx, embed_y: ey, embed_x: ex };
                    Datum::with_root(file.cartan, root)
                }
                (None, None) => {
                    // the matrix lists ⟨i, j'⟩ and must agree with the dot products
                    let d = Datum::new(file.cartan)?;
                    let n = d.rank();
                    let ok = rd.pairing_yx.len() == n
                        && (0..n).all(|i| rd.pairing_yx[i].len() == n && (0..n).all(|j| rd.pairing_yx[i][j] == d.a(i, j)));
                    if !ok {
                        return Err(Error::Datum {
                            condition: "root datum c".into(),
                            location: "pairingYX".into(),
                            message: "given <i,j'> matrix disagrees with 2(i.j)/(i.i)".into(),
                        });
                    }
                    Ok(d)
                }
                _ => Err(Error::Parse("root_datum needs both embedY and embedX or neither".into())),
            },
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Datum::from_json(&text)
    }

    /// B(0,1): one odd generator with i·i = 2.
    pub fn b01() -> Self {
        Datum::new(SuperCartanDatum::new("B(0,1)", vec![1], vec![vec![2]])).expect("valid")
    }

    /// B(0,2): an even long generator and an odd short one.
    pub fn b02() -> Self {
        Datum::new(SuperCartanDatum::new("B(0,2)", vec![0, 1], vec![vec![4, -2], vec![-2, 2]])).expect("valid")
    }

    /// The rank-two affine datum with two odd generators.
    pub fn affine_odd2() -> Self {
        Datum::new(SuperCartanDatum::new("A(odd,affine,2)", vec![1, 1], vec![vec![2, -2], vec![-2, 2]]))
            .expect("valid")
    }

    pub fn summary(&self) -> DatumSummary<'_> {
        let n = self.rank();
        DatumSummary {
            name: &self.cartan.name,
            rank: n,
            rank_y: self.root.rank,
            finite_type: self.report.finite_type,
            consistent: self.report.consistent,
            cartan_matrix: (0..n).map(|i| (0..n).map(|j| self.a(i, j)).collect()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn rank_y(&self) -> usize {
        self.root.rank
    }

    pub fn name(&self) -> &str {
        &self.cartan.name
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.cartan.parity[i]
    }

    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.cartan.dot[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.cartan.d(i)
    }

    /// ⟨i, j'⟩.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan.cartan(i, j)
    }

    pub fn gen(&self, i: usize) -> GenParams {
        GenParams::new(self.d(i), self.parity(i))
    }

    pub fn is_consistent(&self) -> bool {
        self.report.consistent
    }

    pub fn is_finite_type(&self) -> bool {
        self.report.finite_type
    }

    pub fn require_consistent(&self) -> Result<()> {
        if self.is_consistent() {
            Ok(())
        } else {
            Err(Error::Inconsistent)
        }
    }

    pub fn pair(&self, mu: &[i64], lambda: &[i64]) -> i64 {
        self.root.pair(mu, lambda)
    }

    /// ⟨i, λ⟩.
    pub fn pair_i(&self, i: usize, lambda: &[i64]) -> i64 {
        self.root.pair_i(i, lambda)
    }

    /// The simple coroot i ∈ Y.
    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.root.embed_y[i]
    }

    /// The simple root i' ∈ X.
    pub fn root_x(&self, i: usize) -> &[i64] {
        &self.root.embed_x[i]
    }

    pub fn zero_weight(&self) -> Weight {
        vec![0; self.rank_y()]
    }

    /// Σ ν_i i' ∈ X.
    pub fn nu_x(&self, nu: &Nu) -> Weight {
        let mut out = self.zero_weight();
        for (i, &k) in nu.0.iter().enumerate() {
            for (o, r) in out.iter_mut().zip(self.root_x(i)) {
                *o += k as i64 * r;
            }
        }
        out
    }

    /// Σ ν_i d_i i ∈ Y, the exponent of K̃_ν.
    pub fn nu_tilde_y(&self, nu: &Nu) -> Coweight {
        let mut out = self.zero_weight();
        for (i, &k) in nu.0.iter().enumerate() {
            for (o, r) in out.iter_mut().zip(self.coroot(i)) {
                *o += k as i64 * self.d(i) * r;
            }
        }
        out
    }

    /// d_i · i ∈ Y scaled by `k`: the exponent of K̃_i^k.
    pub fn tilde_y(&self, i: usize, k: i64) -> Coweight {
        self.coroot(i).iter().map(|r| r * self.d(i) * k).collect()
    }

    /// ν·ν' for ν, ν' ∈ N[I] (also used with signed vectors).
    pub fn nu_dot(&self, a: &Nu, b: &Nu) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            for j in 0..n {
                acc += a.0[i] as i64 * b.0[j] as i64 * self.dot(i, j);
            }
        }
        acc
    }

    /// ν · i.
    pub fn nu_dot_i(&self, a: &Nu, i: usize) -> i64 {
        (0..self.rank()).map(|j| a.0[j] as i64 * self.dot(j, i)).sum()
    }

    pub fn nu_parity(&self, nu: &Nu) -> u8 {
        let s: u64 = nu.0.iter().zip(&self.cartan.parity).map(|(&k, &p)| k as u64 * p as u64).sum();
        (s % 2) as u8
    }

    pub fn word_weight(&self, w: &[u8]) -> Nu {
        Nu::of_word(self.rank(), w)
    }

    pub fn word_parity(&self, w: &[u8]) -> u8 {
        (w.iter().map(|&c| self.parity(c as usize) as u32).sum::<u32>() % 2) as u8
    }

    /// |w| · i for a word w.
    pub fn word_dot_i(&self, w: &[u8], i: usize) -> i64 {
        w.iter().map(|&c| self.dot(c as usize, i)).sum()
    }

    /// c(ν), e(ν), f(ν), π_ν, q_ν.
    pub fn sign_stats(&self, nu: &Nu) -> SignStats {
        let n = self.rank();
        let half_sum: i64 = (0..n).map(|i| nu.0[i] as i64 * self.d(i)).sum();
        let c = self.nu_dot(nu, nu) / 2 - half_sum;
        let mut e = 0;
        for i in 0..n {
            let vi = nu.0[i] as i64;
            let pi = self.parity(i) as i64;
            e += choose2(vi) * pi;
            for j in i + 1..n {
                e += vi * nu.0[j] as i64 * pi * self.parity(j) as i64;
            }
        }
        let f = (0..n).map(|i| nu.0[i] as i64 * self.dot(i, i)).sum();
        let pi_nu = Scalar::pi_pow(self.nu_parity(nu) as i64);
        let q_nu = Scalar::q_pow(half_sum);
        SignStats { c, e, f, pi_nu, q_nu }
    }

    /// p(n, m; i, j) = mn p(i)p(j) + C(m,2) p(i).
    pub fn p_nm(&self, n: i64, m: i64, i: usize, j: usize) -> i64 {
        let (pi, pj) = (self.parity(i) as i64, self.parity(j) as i64);
        m * n * pi * pj + choose2(m) * pi
    }

    pub fn weyl(&self) -> Result<WeylGroupData> {
        WeylGroupData::enumerate(&self.root, self.rank(), self.is_finite_type())
    }

    /// m_ij; `None` encodes ∞.
    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        m_ij(self.a(i, j) * self.a(j, i))
    }

    /// The element ρ ∈ X with ⟨i,ρ⟩ = 1 for all i, when it exists in the
    /// standard coordinates.
    pub fn rho(&self) -> Result<Weight> {
        // for the canonical pairing on the default root datum this is the
        // all-ones vector on the I-block
        let n = self.rank();
        let mut rho = self.zero_weight();
        for k in 0..n {
            rho[k] = 1;
        }
        if (0..n).all(|i| self.pair_i(i, &rho) == 1) {
            Ok(rho)
        } else {
            Err(Error::InvalidArgument("rho not available in these root datum coordinates".into()))
        }
    }

    /// Coordinates k with λ − λ₀ = Σ k_i i', if λ lies in the coset
    /// λ₀ + Z[I]' (requires the simple roots to be independent, which the
    /// root datum axioms guarantee).
    pub fn root_coordinates(&self, diff: &[i64]) -> Option<Vec<i64>> {
        use num_rational::BigRational;
        use num_traits::{Signed, Zero};
        let n = self.rank();
        let r = self.rank_y();
        // augmented r × (n+1) system: columns are the simple roots
        let mut m: Vec<Vec<BigRational>> = (0..r)
            .map(|a| {
                let mut row: Vec<BigRational> =
                    (0..n).map(|i| BigRational::from_integer(self.root_x(i)[a].into())).collect();
                row.push(BigRational::from_integer(diff[a].into()));
                row
            })
            .collect();
        let mut piv = Vec::new();
        let mut row = 0;
        for c in 0..n {
            let Some(p) = (row..r).find(|&x| !m[x][c].is_zero()) else { continue };
            m.swap(row, p);
            let lead = m[row][c].clone();
            for v in m[row].iter_mut() {
                *v = &*v / &lead;
            }
            for x in 0..r {
                if x != row && !m[x][c].is_zero() {
                    let f = m[x][c].clone();
                    for k in 0..=n {
                        let t = &f * &m[row][k];
                        m[x][k] -= t;
                    }
                }
            }
            piv.push(c);
            row += 1;
        }
        if (row..r).any(|x| !m[x][n].is_zero()) {
            return None;
        }
        let mut k = vec![0i64; n];
        for (rw, &c) in piv.iter().enumerate() {
            let v = &m[rw][n];
            if !v.is_integer() {
                return None;
            }
            let t = v.to_integer();
            k[c] = if t.is_negative() { -i64::try_from(-t).ok()? } else { i64::try_from(t).ok()? };
        }
        Some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_root_data() {
        let b01 = Datum::b01();
        assert_eq!(b01.rank_y(), 1);
        assert_eq!(b01.root_x(0), &[2]);
        let b02 = Datum::b02();
        assert_eq!(b02.a(0, 1), -1);
        assert_eq!(b02.a(1, 0), -2);
        let aff = Datum::affine_odd2();
        assert_eq!(aff.rank_y(), 3);
        assert_eq!(int_det(&aff.root.pairing), 1.into());
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(Datum::b01().weyl().unwrap().order(), 2);
        let w = Datum::b02().weyl().unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(Datum::b02().m(0, 1), Some(4));
        assert!(Datum::affine_odd2().weyl().is_err());
    }

    #[test]
    fn sign_statistics() {
        let d = Datum::b02();
        let s = d.sign_stats(&Nu(vec![1, 1]));
        assert_eq!(s.c, d.dot(0, 1));
        let s = d.sign_stats(&Nu(vec![0, 4]));
        assert_eq!(s.e, 6);
        assert_eq!(d.sign_stats(&Nu(vec![1, 0])).f, 4);
    }

    #[test]
    fn json_round_trip() {
        let d = Datum::from_json(r#"{"name":"B(0,2)","parity":[0,1],"dot":[[4,-2],[-2,2]]}"#).unwrap();
        assert!(d.is_finite_type());
        let bad = Datum::from_json(r#"{"name":"x","parity":[1,0],"dot":[[2,-1],[-1,2]]}"#);
        assert!(matches!(bad, Err(Error::Datum { ref condition, .. }) if condition == "d"));
        let with_pairing =
            Datum::from_json(r#"{"name":"b","parity":[0,1],"dot":[[4,-2],[-2,2]],"root_datum":{"pairingYX":[[2,-1],[-2,2]]}}"#);
        assert!(with_pairing.is_ok());
    }
}
