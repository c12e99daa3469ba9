use super::{CoveringAlgebra, Letter, UElt, UMono, UTensor};
use crate::error::Result;
use crate::scalar_ring::Scalar;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    Hom,
    Anti,
    /// S(xy) = π^{p(x)p(y)} S(y)S(x).
    SuperAnti,
}

impl CoveringAlgebra {
    fn apply_letters(&self, u: &UElt, order: Order, image: impl Fn(&Letter) -> UElt) -> Result<UElt> {
        let mut out = UElt::zero();
        for (m, c) in u.terms() {
            let letters = self.letters(m);
            let mut sign = 0i64;
            if order == Order::SuperAnti {
                let ps: Vec<i64> = letters.iter().map(|l| self.letter_parity(l) as i64).collect();
                for a in 0..ps.len() {
                    for b in a + 1..ps.len() {
                        sign += ps[a] * ps[b];
                    }
                }
            }
            let mut imgs: Vec<UElt> = letters.iter().map(&image).collect();
            if order != Order::Hom {
                imgs.reverse();
            }
            let prod = self.mul_all(&imgs)?;
            out = out.add(&prod.scale(&c.mul(&Scalar::pi_pow(sign))));
        }
        Ok(out)
    }

    fn neg_vec(v: &[i64]) -> Vec<i64> {
        v.iter().map(|x| -x).collect()
    }

    /// ω: E_i ↦ π_i J̃_i F_i, F_i ↦ E_i, K_μ ↦ K_{−μ}, J_μ ↦ J_μ.
    pub fn omega(&self, u: &UElt) -> Result<UElt> {
        let d = self.datum();
        self.apply_letters(u, Order::Hom, |l| match l {
            Letter::E(i) => self
                .mul(&self.j_tilde(*i, 1), &self.f(*i))
                .expect("height one")
                .scale(&Scalar::pi_pow(d.parity(*i) as i64)),
            Letter::F(i) => self.e(*i),
            Letter::K(mu) => self.k(&Self::neg_vec(mu)),
            Letter::J(mu) => self.j(mu),
        })
    }

    /// σ, an anti-automorphism: E_i ↦ E_i, F_i ↦ π_i J̃_i F_i, K_μ ↦ K_{−μ}, J_μ ↦ J_μ.
    pub fn sigma(&self, u: &UElt) -> Result<UElt> {
        let d = self.datum();
        self.apply_letters(u, Order::Anti, |l| match l {
            Letter::E(i) => self.e(*i),
            Letter::F(i) => self
                .mul(&self.j_tilde(*i, 1), &self.f(*i))
                .expect("height one")
                .scale(&Scalar::pi_pow(d.parity(*i) as i64)),
            Letter::K(mu) => self.k(&Self::neg_vec(mu)),
            Letter::J(mu) => self.j(mu),
        })
    }

    /// The antipode S.
    pub fn antipode(&self, u: &UElt) -> Result<UElt> {
        self.apply_letters(u, Order::SuperAnti, |l| match l {
            Letter::E(i) => {
                let m = self.datum().tilde_y(*i, -1);
                self.mul(&self.cartan(&m, &m), &self.e(*i)).expect("height one").neg()
            }
            Letter::F(i) => self.mul(&self.f(*i), &self.k_tilde(*i, 1)).expect("height one").neg(),
            Letter::K(mu) => self.k(&Self::neg_vec(mu)),
            Letter::J(mu) => self.j(mu),
        })
    }

    /// The skew-antipode S′.
    pub fn antipode_prime(&self, u: &UElt) -> Result<UElt> {
        self.apply_letters(u, Order::SuperAnti, |l| match l {
            Letter::E(i) => {
                let m = self.datum().tilde_y(*i, -1);
                self.mul(&self.e(*i), &self.cartan(&m, &m)).expect("height one").neg()
            }
            Letter::F(i) => self.mul(&self.k_tilde(*i, 1), &self.f(*i)).expect("height one").neg(),
            Letter::K(mu) => self.k(&Self::neg_vec(mu)),
            Letter::J(mu) => self.j(mu),
        })
    }

    /// The bar involution: coefficients barred, K_μ ↦ J_μ K_{−μ}, other
    /// generators fixed. Normal-form monomials map to normal-form monomials.
    pub fn bar(&self, u: &UElt) -> Result<UElt> {
        self.datum().require_consistent()?;
        Ok(UElt::from_terms(u.terms().map(|(m, c)| (self.bar_mono(m), c.bar()))))
    }

    fn bar_mono(&self, m: &UMono) -> UMono {
        let j = m.j.iter().zip(&m.k).map(|(a, b)| ((*a as i64 + b).rem_euclid(2)) as u8).collect();
        UMono { f: m.f.clone(), j, k: Self::neg_vec(&m.k), e: m.e.clone() }
    }

    /// The counit.
    pub fn counit(&self, u: &UElt) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in u.terms() {
            if m.is_cartan() {
                acc = acc.add(c);
            }
        }
        acc
    }

    fn coproduct_letter(&self, l: &Letter) -> UTensor {
        let one = self.one();
        match l {
            Letter::E(i) => {
                let t = self.datum().tilde_y(*i, 1);
                let jk = self.cartan(&t, &t);
                let e = self.e(*i);
                UTensor::pure(&[&e, &one]).add(&UTensor::pure(&[&jk, &e]))
            }
            Letter::F(i) => {
                let f = self.f(*i);
                let km = self.k_tilde(*i, -1);
                UTensor::pure(&[&f, &km]).add(&UTensor::pure(&[&one, &f]))
            }
            Letter::K(mu) => {
                let k = self.k(mu);
                UTensor::pure(&[&k, &k])
            }
            Letter::J(mu) => {
                let j = self.j(mu);
                UTensor::pure(&[&j, &j])
            }
        }
    }

    /// Δ(u), or Δ̄(u) = (bar ⊗ bar)Δ(bar u) when `bar` is set.
    pub fn coproduct(&self, u: &UElt, bar: bool) -> Result<UTensor> {
        if bar {
            let b = self.bar(u)?;
            let t = self.coproduct(&b, false)?;
            return self.tensor_bar(&t);
        }
        let mut out = UTensor::zero(2);
        for (m, c) in u.terms() {
            let mut acc = self.tensor_one(2);
            for l in self.letters(m) {
                acc = self.tensor_mul(&acc, &self.coproduct_letter(&l))?;
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// bar applied on every leg (coefficients barred once).
    pub fn tensor_bar(&self, t: &UTensor) -> Result<UTensor> {
        self.datum().require_consistent()?;
        let mut out = UTensor::zero(t.legs);
        for (k, c) in t.terms() {
            out.add_term(k.iter().map(|m| self.bar_mono(m)).collect(), c.bar());
        }
        Ok(out)
    }

    /// Δ applied to one leg of a tensor, producing one more leg.
    pub fn coproduct_on_leg(&self, t: &UTensor, leg: usize) -> Result<UTensor> {
        let mut out = UTensor::zero(t.legs + 1);
        for (k, c) in t.terms() {
            let d = self.coproduct(&UElt::mono(k[leg].clone(), Scalar::one()), false)?;
            for (pair, s) in d.terms() {
                let mut nk = k[..leg].to_vec();
                nk.extend(pair.iter().cloned());
                nk.extend_from_slice(&k[leg + 1..]);
                out.add_term(nk, c.mul(s));
            }
        }
        Ok(out)
    }

    /// m ∘ (A ⊗ B) ∘ Δ for linear maps A, B on U.
    pub fn hopf_combination(
        &self,
        u: &UElt,
        left: impl Fn(&UElt) -> Result<UElt>,
        right: impl Fn(&UElt) -> Result<UElt>,
    ) -> Result<UElt> {
        let t = self.coproduct(u, false)?;
        let t = self.tensor_map_leg(&t, 0, |m| left(&UElt::mono(m.clone(), Scalar::one())))?;
        let t = self.tensor_map_leg(&t, 1, |m| right(&UElt::mono(m.clone(), Scalar::one())))?;
        self.tensor_collapse(&t)
    }
}

#[cfg(test)]
mod tests {
    use crate::covering::CoveringAlgebra;
    use crate::datum::Datum;
    use crate::free_half::FreeHalf;
    use crate::scalar_ring::Scalar;
    use std::sync::Arc;

    fn alg(d: Datum) -> CoveringAlgebra {
        CoveringAlgebra::new(Arc::new(FreeHalf::new(Arc::new(d), 6)))
    }

    #[test]
    fn coproduct_of_generators() {
        let u = alg(Datum::b02());
        let k = u.k(&[1, 0]);
        let dk = u.coproduct(&k, false).unwrap();
        assert_eq!(dk, super::UTensor::pure(&[&k, &k]));
        let x = u.mul(&u.e(1), &u.f(0)).unwrap();
        assert_eq!(u.counit(&x), Scalar::zero());
        assert_eq!(u.counit(&u.cartan(&[1, 1], &[2, -1])), Scalar::one());
    }

    #[test]
    fn omega_has_order_four() {
        let u = alg(Datum::b02());
        let x = u.parse("(q) E(1) F(0) K(1,2) + J(0,1) E(0)").unwrap();
        let mut y = x.clone();
        for _ in 0..4 {
            y = u.omega(&y).unwrap();
        }
        assert_eq!(x, y);
        assert_ne!(u.omega(&u.omega(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn antipodes_invert_each_other() {
        let u = alg(Datum::b02());
        let x = u.parse("E(1) F(1) F(0) K(0,1) + (q^2 - p) E(0) E(1)").unwrap();
        let y = u.antipode(&u.antipode_prime(&x).unwrap()).unwrap();
        assert_eq!(x, y);
        let y = u.antipode_prime(&u.antipode(&x).unwrap()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn hopf_counit_law_on_generators() {
        let u = alg(Datum::b02());
        for g in [u.e(0), u.e(1), u.f(0), u.f(1), u.k(&[1, -1]), u.j(&[1, 0])] {
            let lhs = u.hopf_combination(&g, |x| u.antipode(x), |x| Ok(x.clone())).unwrap();
            assert_eq!(lhs, u.scalar(u.counit(&g)));
            let rhs = u.hopf_combination(&g, |x| Ok(x.clone()), |x| u.antipode(x)).unwrap();
            assert_eq!(rhs, u.scalar(u.counit(&g)));
        }
    }
}
