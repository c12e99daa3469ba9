//! The quasi-R-matrix Θ truncated at a height cap, its intertwining
//! property, the truncated Casimir element Ω_{≤p}, and the function G.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::covering::{CoveringAlgebra, UElt, UMono, UTensor};
use crate::datum::{Nu, Weight};
use crate::error::{Error, Result};
use crate::free_half::FreeElt;
use crate::linalg::Mat;
use crate::repcat::{ModVec, WeightModule};
use crate::scalar_ring::{choose2, qfact, RationalFn, Scalar};

/// Θ_ν for all ν of height at most `cap`.
#[derive(Clone, Debug)]
pub struct ThetaTrunc {
    pub cap: usize,
    pub components: BTreeMap<Nu, UTensor>,
}

impl ThetaTrunc {
    pub fn total(&self) -> UTensor {
        let mut out = UTensor::zero(2);
        for t in self.components.values() {
            out = out.add(t);
        }
        out
    }

    pub fn of_height(&self, h: usize) -> UTensor {
        let mut out = UTensor::zero(2);
        for (nu, t) in &self.components {
            if nu.height() == h {
                out = out.add(t);
            }
        }
        out
    }
}

/// The generators whose intertwining is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    E(usize),
    F(usize),
    K(Vec<i64>),
    J(Vec<i64>),
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = |x: &Vec<i64>| x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Generator::E(i) => write!(f, "E({i})"),
            Generator::F(i) => write!(f, "F({i})"),
            Generator::K(mu) => write!(f, "K({})", v(mu)),
            Generator::J(mu) => write!(f, "J({})", v(mu)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub generator: String,
    pub cap: usize,
    /// The residual equals the boundary terms at the top height exactly.
    pub matches_boundary: bool,
    /// Weights (of the F-leg) where residual and boundary differ.
    pub offending: Vec<String>,
    pub residual_terms: usize,
}

/// Which prefactor the truncated Casimir element uses. `WithoutE` drops
/// the π^{e(ν)} carried by Θ_ν; it agrees with `WithE` when π = 1 and
/// in the π = −1 component up to height one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CasimirForm {
    WithE,
    WithoutE,
}

/// Rank-one Θ coefficients a_n with Θ_n = a_n F^{(n)} ⊗ E^{(n)}.
#[derive(Clone, Debug, Serialize)]
pub struct RankOneTheta {
    pub n: usize,
    pub from_basis: String,
    pub from_residuals: String,
    pub agree: bool,
    pub matches_c_n_2: bool,
    pub matches_c_n1_2: bool,
}

pub struct RMatrix {
    alg: Arc<CoveringAlgebra>,
}

impl RMatrix {
    pub fn new(alg: Arc<CoveringAlgebra>) -> Self {
        RMatrix { alg }
    }

    pub fn algebra(&self) -> &CoveringAlgebra {
        &self.alg
    }

    /// (−1)^{ht ν} π^{e(ν)} π_ν q_ν.
    pub fn theta_prefactor(&self, nu: &Nu) -> Scalar {
        let d = self.alg.datum();
        let s = d.sign_stats(nu);
        let sign = if nu.height() % 2 == 0 { 1 } else { -1 };
        Scalar::pi_pow(s.e).mul(&s.pi_nu).mul(&s.q_nu).scale_int(sign)
    }

    pub fn theta_component(&self, nu: &Nu) -> Result<UTensor> {
        let free = self.alg.free();
        let bd = free.basis(nu)?;
        let pre = self.theta_prefactor(nu);
        let mut out = UTensor::zero(2);
        let ry = self.alg.datum().rank_y();
        for (k, b) in bd.words.iter().enumerate() {
            let mut fm = UMono::one(ry);
            fm.f = b.clone();
            for (b2, c) in bd.words.iter().zip(&bd.dual[k]) {
                if c.is_zero() {
                    continue;
                }
                let mut em = UMono::one(ry);
                em.e = b2.clone();
                out.add_term(vec![fm.clone(), em], c.mul(&pre));
            }
        }
        Ok(out)
    }

    pub fn compute_theta(&self, cap: usize) -> Result<ThetaTrunc> {
        let n = self.alg.datum().rank();
        let mut components = BTreeMap::new();
        for h in 0..=cap {
            for nu in Nu::all_of_height(n, h) {
                components.insert(nu.clone(), self.theta_component(&nu)?);
            }
        }
        Ok(ThetaTrunc { cap, components })
    }

    fn gen_elt(&self, g: &Generator) -> UElt {
        match g {
            Generator::E(i) => self.alg.e(*i),
            Generator::F(i) => self.alg.f(*i),
            Generator::K(mu) => self.alg.k(mu),
            Generator::J(mu) => self.alg.j(mu),
        }
    }

    /// Σ_{ht ν = cap} of the displayed boundary terms for E_i and F_i;
    /// zero for K_μ and J_μ.
    pub fn boundary(&self, theta: &ThetaTrunc, g: &Generator) -> Result<UTensor> {
        let a = &self.alg;
        let top = theta.of_height(theta.cap);
        match g {
            Generator::E(i) => {
                let t = a.datum().tilde_y(*i, 1);
                let jk = a.cartan(&t, &t);
                let left = UTensor::pure(&[&jk, &a.e(*i)]);
                let right = UTensor::pure(&[&a.k_tilde(*i, -1), &a.e(*i)]);
                Ok(a.tensor_mul(&left, &top)?.sub(&a.tensor_mul(&top, &right)?))
            }
            Generator::F(i) => {
                let t = a.datum().tilde_y(*i, 1);
                let jk = a.cartan(&t, &t);
                let left = UTensor::pure(&[&a.f(*i), &a.k_tilde(*i, -1)]);
                let right = UTensor::pure(&[&a.f(*i), &jk]);
                Ok(a.tensor_mul(&left, &top)?.sub(&a.tensor_mul(&top, &right)?))
            }
            _ => Ok(UTensor::zero(2)),
        }
    }

    /// Δ(u)Θ_{≤cap} − Θ_{≤cap}Δ̄(u).
    pub fn residual(&self, theta: &ThetaTrunc, g: &Generator) -> Result<UTensor> {
        let a = &self.alg;
        let u = self.gen_elt(g);
        let total = theta.total();
        let lhs = a.tensor_mul(&a.coproduct(&u, false)?, &total)?;
        let rhs = a.tensor_mul(&total, &a.coproduct(&u, true)?)?;
        Ok(lhs.sub(&rhs))
    }

    pub fn verify_intertwiner(&self, theta: &ThetaTrunc, g: &Generator) -> Result<ResidualReport> {
        let res = self.residual(theta, g)?;
        let diff = res.sub(&self.boundary(theta, g)?);
        let d = self.alg.datum();
        let mut offending: Vec<String> = Vec::new();
        for (k, _) in diff.terms() {
            let nu = d.word_weight(&k[0].f).to_string();
            if !offending.contains(&nu) {
                offending.push(nu);
            }
        }
        Ok(ResidualReport {
            generator: g.to_string(),
            cap: theta.cap,
            matches_boundary: diff.is_zero(),
            offending,
            residual_terms: res.len(),
        })
    }

    /// Components of ΘΘ̄ (and Θ̄Θ) of height 1..cap vanish and the height-0
    /// component is 1⊗1.
    pub fn theta_inverse_check(&self, theta: &ThetaTrunc) -> Result<bool> {
        let a = &self.alg;
        let d = a.datum();
        let bars: BTreeMap<&Nu, UTensor> =
            theta.components.iter().map(|(nu, t)| Ok((nu, a.tensor_bar(t)?))).collect::<Result<_>>()?;
        for flip in [false, true] {
            let mut prod = UTensor::zero(2);
            for (n1, t1) in &theta.components {
                for (n2, t2) in &bars {
                    if n1.height() + n2.height() > theta.cap {
                        continue;
                    }
                    let p = if flip { a.tensor_mul(t2, t1)? } else { a.tensor_mul(t1, t2)? };
                    prod = prod.add(&p);
                }
            }
            let one = a.tensor_one(2);
            let rest = prod.sub(&one);
            if rest.terms().any(|(k, _)| d.word_weight(&k[0].f).height() <= theta.cap) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Θ with a single coefficient of Θ_ν doubled, for negative controls.
    pub fn perturbed(&self, theta: &ThetaTrunc, nu: &Nu) -> ThetaTrunc {
        let mut out = theta.clone();
        if let Some(t) = out.components.get_mut(nu) {
            let first = t.terms().next().map(|(k, c)| (k.clone(), c.clone()));
            if let Some((k, c)) = first {
                t.add_term(k, c);
            }
        }
        out
    }

    /// Rank one only: a_n read off from Θ_n, and independently solved from
    /// the E-residual equation at each height starting from Θ_0 = 1⊗1.
    pub fn rank_one_coefficients(&self, nmax: usize) -> Result<Vec<RankOneTheta>> {
        let a = &self.alg;
        let d = a.datum();
        if d.rank() != 1 {
            return Err(Error::InvalidArgument("rank-one coefficients need a rank-one datum".into()));
        }
        let g = d.gen(0);
        let ry = d.rank_y();
        let e = a.e(0);
        let one = a.one();
        let t = d.tilde_y(0, 1);
        let jk = a.cartan(&t, &t);
        let kinv = a.k_tilde(0, -1);
        let mut prev = a.tensor_one(2);
        let mut out = Vec::new();
        let base = g.pi_q(1, 1).sub(&g.q(-1));
        for n in 1..=nmax {
            let fact = qfact(n as u32, g);
            // T_n = F^{(n)} ⊗ E^{(n)}
            let mut fm = UMono::one(ry);
            fm.f = vec![0; n];
            let mut em = UMono::one(ry);
            em.e = vec![0; n];
            let mut tn = UTensor::zero(2);
            tn.add_term(vec![fm.clone(), em.clone()], fact.mul(&fact).inv());
            let e1 = UTensor::pure(&[&e, &one]);
            let x = a.tensor_mul(&e1, &tn)?.sub(&a.tensor_mul(&tn, &e1)?);
            let y = a
                .tensor_mul(&prev, &UTensor::pure(&[&kinv, &e]))?
                .sub(&a.tensor_mul(&UTensor::pure(&[&jk, &e]), &prev)?);
            let (k0, x0) = x.terms().next().ok_or_else(|| Error::Internal("degenerate residual".into()))?;
            let y0 = y.terms().find(|(k, _)| *k == k0).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero);
            let solved = y0.div(x0);
            if x.scale(&solved) != y {
                return Err(Error::Internal(format!("no consistent Θ_{n} from the residual equation")));
            }
            let theta_n = self.theta_component(&Nu(vec![n as u32]))?;
            let from_basis = theta_n
                .terms()
                .find(|(k, _)| k[0] == fm && k[1] == em)
                .map(|(_, c)| c.mul(&fact).mul(&fact))
                .unwrap_or_else(Scalar::zero);
            let ni = n as i64;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let closed = |ex: i64| Scalar::pi_q(-ex, -ex).mul(&fact).mul(&base.pow(ni)).scale_int(sign);
            out.push(RankOneTheta {
                n,
                from_basis: from_basis.to_string(),
                from_residuals: solved.to_string(),
                agree: from_basis == solved,
                matches_c_n_2: from_basis == closed(choose2(ni)),
                matches_c_n1_2: from_basis == closed(choose2(ni + 1)),
            });
            prev = tn.scale(&solved);
        }
        Ok(out)
    }

    /// Ω_{≤p} = Σ_{ht ν ≤ p} Σ_b (−1)^{ht ν} π^{e(ν)} π_ν q_ν S(b⁻) b*⁺,
    /// the image of Θ_{≤p} under m∘(S⊗1).
    pub fn casimir(&self, p: usize) -> Result<UElt> {
        self.casimir_form(p, CasimirForm::WithE)
    }

    pub fn casimir_form(&self, p: usize, form: CasimirForm) -> Result<UElt> {
        let a = &self.alg;
        let d = a.datum();
        let free = a.free();
        let mut out = UElt::zero();
        for h in 0..=p {
            for nu in Nu::all_of_height(d.rank(), h) {
                let bd = free.basis(&nu)?;
                let s = d.sign_stats(&nu);
                let sign = if h % 2 == 0 { 1 } else { -1 };
                let e = if form == CasimirForm::WithE { s.e } else { 0 };
                let pre = Scalar::pi_pow(e).mul(&s.pi_nu).mul(&s.q_nu).scale_int(sign);
                for (k, b) in bd.words.iter().enumerate() {
                    let sb = a.antipode(&a.minus(&FreeElt::word(b.clone()))?)?;
                    let dual = FreeElt::from_terms(bd.dual_element(k));
                    let term = a.mul(&sb, &a.plus(&dual)?)?;
                    out = out.add(&term.scale(&pre));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirReport {
    pub highest: Weight,
    pub form: CasimirForm,
    pub sign: String,
    pub anchor: Weight,
    pub p: usize,
    /// Ω_{≤p} and Ω_{≤p+1} agree on every weight space.
    pub stable: bool,
    /// ΩΞ is the scalar (πq²)^{G(λ)} on every weight space.
    pub scalar_ok: bool,
    pub expected_exponent: i64,
    /// ΩΞ commutes with every E_i and F_i.
    pub commutes: bool,
    /// The E- and F-commutation relations of Ω hold as matrix identities.
    pub relations_ok: bool,
}

impl RMatrix {
    /// ΩΞ applied to a vector, with Ω truncated at p and checked against p+1.
    pub fn casimir_apply(&self, m: &WeightModule, g: &GFunction, v: &ModVec, p: usize) -> Result<ModVec> {
        self.casimir_apply_form(m, g, v, p, CasimirForm::WithE)
    }

    pub fn casimir_apply_form(
        &self,
        m: &WeightModule,
        g: &GFunction,
        v: &ModVec,
        p: usize,
        form: CasimirForm,
    ) -> Result<ModVec> {
        let sign = m.sign;
        let mut xi = ModVec::new();
        for (lam, c) in v {
            let e = g.eval(lam)?;
            let f = RationalFn::q_pow(2 * e).scale_int(sign.pow(e));
            xi.insert(lam.clone(), c.iter().map(|x| x.mul(&f)).collect());
        }
        let a = m.act(&self.casimir_form(p, form)?, &xi)?;
        let b = m.act(&self.casimir_form(p + 1, form)?, &xi)?;
        if a != b {
            return Err(Error::Internal(format!("Ω is not stable at height {p}")));
        }
        Ok(a)
    }

    /// Checks the Casimir action on a finite-dimensional module with a
    /// highest weight, truncating Ω at the depth of the module.
    pub fn casimir_check(&self, m: &WeightModule, anchor: &[i64], form: CasimirForm) -> Result<CasimirReport> {
        let a = &self.alg;
        let d = a.datum();
        let top = m.highest.clone().ok_or_else(|| Error::InvalidArgument("module has no highest weight".into()))?;
        let g = GFunction::new(Arc::new(d.clone()), anchor.to_vec());
        let depth_of = |w: &Weight| -> Result<usize> {
            let diff: Vec<i64> = top.iter().zip(w).map(|(x, y)| x - y).collect();
            let k = d.root_coordinates(&diff).ok_or_else(|| Error::Internal("weight off the coset".into()))?;
            Ok(k.iter().sum::<i64>() as usize)
        };
        let weights: Vec<Weight> = m.weights().cloned().collect();
        let p = weights.iter().map(depth_of).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0);
        let om = self.casimir_form(p, form)?;
        let om1 = self.casimir_form(p + 1, form)?;
        let sign = m.sign;
        let mut ops: BTreeMap<Weight, Mat> = BTreeMap::new();
        let mut stable = true;
        for w in &weights {
            let o = m.operator(a, &om, w)?;
            stable &= o == m.operator(a, &om1, w)?;
            ops.insert(w.clone(), o);
        }
        let pq2 = |e: i64| RationalFn::q_pow(2 * e).scale_int(sign.pow(e));
        let expected = g.eval(&top)?;
        let mut scalar_ok = true;
        let mut omxi: BTreeMap<Weight, Mat> = BTreeMap::new();
        for w in &weights {
            let x = ops[w].scale(&pq2(g.eval(w)?));
            scalar_ok &= x == Mat::scalar(m.dim_at(w), &pq2(expected));
            omxi.insert(w.clone(), x);
        }
        let mut commutes = true;
        let mut relations_ok = true;
        let zero = |r: usize, c: usize| Mat::zeros(r, c);
        for w in &weights {
            for i in 0..d.rank() {
                let di = d.d(i);
                let pi = d.parity(i) as i64;
                let up: Weight = w.iter().zip(d.root_x(i)).map(|(x, y)| x + y).collect();
                let down: Weight = w.iter().zip(d.root_x(i)).map(|(x, y)| x - y).collect();
                let e = m.e_dense(i, w);
                let f = m.f_dense(i, w);
                let get = |map: &BTreeMap<Weight, Mat>, k: &Weight, n: usize| map.get(k).cloned().unwrap_or_else(|| zero(n, n));
                let (o_w, o_up, o_down) =
                    (get(&ops, w, m.dim_at(w)), get(&ops, &up, e.rows), get(&ops, &down, f.rows));
                let (x_w, x_up, x_down) =
                    (get(&omxi, w, m.dim_at(w)), get(&omxi, &up, e.rows), get(&omxi, &down, f.rows));
                commutes &= x_up.mul(&e) == e.mul(&x_w) && x_down.mul(&f) == f.mul(&x_w);
                // Ω E_i m = (π_i q_i²)^{−⟨i,μ+i'⟩} E_i Ω m
                let t = d.pair_i(i, &up);
                let c = RationalFn::q_pow(-2 * di * t).scale_int(sign.pow(-pi * t));
                relations_ok &= o_up.mul(&e) == e.mul(&o_w).scale(&c);
                // Ω F_i = F_i K̃_i Ω J̃_i K̃_i
                let s = di * d.pair_i(i, w);
                let c = RationalFn::q_pow(2 * s).scale_int(sign.pow(s));
                relations_ok &= o_down.mul(&f) == f.mul(&o_w).scale(&c);
                // J̃_{−i}K̃_{−i} E_i Ω = K̃_i Ω E_i
                let u = di * d.pair_i(i, &up);
                let lhs = e.mul(&o_w).scale(&RationalFn::q_pow(-u).scale_int(sign.pow(u)));
                relations_ok &= lhs == o_up.mul(&e).scale(&RationalFn::q_pow(u));
            }
        }
        Ok(CasimirReport {
            highest: top,
            form,
            sign: sign.symbol().to_string(),
            anchor: anchor.to_vec(),
            p,
            stable,
            scalar_ok,
            expected_exponent: expected,
            commutes,
            relations_ok,
        })
    }
}

/// A function G on a coset λ₀ + Z[I]' with G(λ₀) = 0 and
/// G(λ) − G(λ − i') = d_i ⟨i, λ⟩.
#[derive(Clone, Debug)]
pub struct GFunction {
    datum: Arc<crate::datum::Datum>,
    pub anchor: Weight,
}

impl GFunction {
    pub fn new(datum: Arc<crate::datum::Datum>, anchor: Weight) -> Self {
        GFunction { datum, anchor }
    }

    /// Walk from the anchor by the given steps (i, ±1) and return the end
    /// point with the accumulated value.
    pub fn walk(&self, steps: &[(usize, i64)]) -> (Weight, i64) {
        let d = &self.datum;
        let mut lam = self.anchor.clone();
        let mut g = 0i64;
        for &(i, s) in steps {
            if s > 0 {
                for (l, r) in lam.iter_mut().zip(d.root_x(i)) {
                    *l += r;
                }
                g += d.d(i) * d.pair_i(i, &lam);
            } else {
                g -= d.d(i) * d.pair_i(i, &lam);
                for (l, r) in lam.iter_mut().zip(d.root_x(i)) {
                    *l -= r;
                }
            }
        }
        (lam, g)
    }

    /// The canonical path from the anchor to λ.
    pub fn path_to(&self, lambda: &[i64]) -> Result<Vec<(usize, i64)>> {
        let diff: Vec<i64> = lambda.iter().zip(&self.anchor).map(|(a, b)| a - b).collect();
        let k = self
            .datum
            .root_coordinates(&diff)
            .ok_or_else(|| Error::InvalidArgument("weight is not in the coset of the anchor".into()))?;
        let mut steps = Vec::new();
        for (i, &c) in k.iter().enumerate() {
            for _ in 0..c.abs() {
                steps.push((i, c.signum()));
            }
        }
        Ok(steps)
    }

    pub fn eval(&self, lambda: &[i64]) -> Result<i64> {
        Ok(self.walk(&self.path_to(lambda)?).1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::Datum;
    use crate::free_half::FreeHalf;

    fn rm(d: Datum, cap: usize) -> RMatrix {
        let f = Arc::new(FreeHalf::new(Arc::new(d), cap));
        RMatrix::new(Arc::new(CoveringAlgebra::new(f)))
    }

    #[test]
    fn theta_low_components() {
        let r = rm(Datum::b01(), 4);
        let th = r.compute_theta(2).unwrap();
        assert_eq!(th.components[&Nu(vec![0])], r.algebra().tensor_one(2));
        let g = r.algebra().datum().gen(0);
        let want = g.pi_q(1, 1).sub(&g.q(-1)).neg();
        let t1 = &th.components[&Nu(vec![1])];
        assert_eq!(t1.len(), 1);
        assert_eq!(t1.terms().next().unwrap().1, &want);
    }

    #[test]
    fn rank_one_residuals() {
        let r = rm(Datum::b01(), 4);
        let th = r.compute_theta(3).unwrap();
        for g in [Generator::E(0), Generator::F(0), Generator::K(vec![1]), Generator::J(vec![1])] {
            let rep = r.verify_intertwiner(&th, &g).unwrap();
            assert!(rep.matches_boundary, "{g}: {:?}", rep.offending);
        }
        assert!(r.theta_inverse_check(&th).unwrap());
        let bad = r.perturbed(&th, &Nu(vec![2]));
        assert!(!r.verify_intertwiner(&bad, &Generator::E(0)).unwrap().matches_boundary);
    }

    #[test]
    fn rank_two_residuals_and_inverse() {
        let r = rm(Datum::b02(), 4);
        let th = r.compute_theta(3).unwrap();
        for g in [
            Generator::E(0),
            Generator::E(1),
            Generator::F(0),
            Generator::F(1),
            Generator::K(vec![1, 0]),
            Generator::J(vec![0, 1]),
        ] {
            let rep = r.verify_intertwiner(&th, &g).unwrap();
            assert!(rep.matches_boundary, "{g}: {:?}", rep.offending);
        }
        assert!(r.theta_inverse_check(&th).unwrap());
    }

    #[test]
    fn rank_one_coefficients_agree() {
        let r = rm(Datum::b01(), 5);
        for row in r.rank_one_coefficients(4).unwrap() {
            assert!(row.agree, "n = {}", row.n);
            assert!(row.matches_c_n_2);
            assert!(!row.matches_c_n1_2 || row.n == 0);
        }
    }

    #[test]
    fn casimir_low_terms() {
        let r = rm(Datum::b01(), 4);
        let om = r.casimir(0).unwrap();
        assert_eq!(om, r.algebra().one());
        let om1 = r.casimir(1).unwrap();
        assert_eq!(om1.len(), 2);
    }

    #[test]
    fn casimir_on_rank_one_simples() {
        let r = rm(Datum::b01(), 7);
        for s in crate::scalar_ring::Sign::both() {
            for n in 0..=3i64 {
                let v = crate::repcat::build_simple(r.algebra(), &[n], s).unwrap();
                for anchor in [vec![n], vec![n + 2]] {
                    let rep = r.casimir_check(&v, &anchor, CasimirForm::WithE).unwrap();
                    assert!(rep.stable && rep.scalar_ok && rep.commutes && rep.relations_ok, "{rep:?}");
                    let rep = r.casimir_check(&v, &anchor, CasimirForm::WithoutE).unwrap();
                    let agrees = s == crate::scalar_ring::Sign::Plus || n <= 1;
                    assert_eq!(rep.scalar_ok && rep.relations_ok, agrees, "{rep:?}");
                }
            }
        }
    }

    #[test]
    fn g_telescopes_in_rank_one() {
        let d = Arc::new(Datum::b01());
        let g = GFunction::new(d, vec![3]);
        assert_eq!(g.eval(&[3]).unwrap(), 0);
        // G(λ − 2k) = G(λ) − Σ_{j=1..k} (λ − 2(j − 1))
        for k in 1..4i64 {
            let want: i64 = -(1..=k).map(|j| 3 - 2 * (j - 1)).sum::<i64>();
            assert_eq!(g.eval(&[3 - 2 * k]).unwrap(), want);
        }
        assert!(g.eval(&[2]).is_err());
    }
}
