//! Seeded generators for randomized checks.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covering::{CoveringAlgebra, UElt};
use crate::datum::{Datum, Nu};
use crate::free_half::{FreeElt, Word};
use crate::scalar_ring::Scalar;

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(stream);
        Rng(r)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    /// A nonzero Laurent polynomial in q with a π part.
    pub fn scalar(&mut self) -> Scalar {
        let mut s = Scalar::zero();
        while s.is_zero() {
            for _ in 0..self.range(1, 3) {
                let c = self.range(-3, 3);
                s = s.add(&Scalar::pi_q(self.range(0, 1), self.range(-3, 3)).scale_int(c));
            }
        }
        s
    }

    /// A nonzero rational function: a ratio of two random Laurent scalars
    /// whose denominator is invertible in both components.
    pub fn ratio(&mut self) -> Scalar {
        let num = self.scalar();
        loop {
            let den = self.scalar();
            if let Some(inv) = den.try_inv() {
                return num.mul(&inv);
            }
        }
    }

    pub fn weight(&mut self, rank: usize, height: usize) -> Nu {
        let mut nu = vec![0u32; rank];
        for _ in 0..height {
            nu[self.index(rank)] += 1;
        }
        Nu(nu)
    }

    pub fn word_of(&mut self, nu: &Nu) -> Word {
        let mut w: Word = Vec::new();
        for (i, &k) in nu.0.iter().enumerate() {
            w.extend(std::iter::repeat(i as u8).take(k as usize));
        }
        w.shuffle(&mut self.0);
        w
    }

    /// A homogeneous element of weight ν with up to three terms.
    pub fn elt_of(&mut self, nu: &Nu) -> FreeElt {
        let mut x = FreeElt::zero();
        while x.is_zero() {
            for _ in 0..self.range(1, 3) {
                let w = self.word_of(nu);
                let c = self.scalar();
                x = x.add(&FreeElt::term(w, c));
            }
        }
        x
    }

    /// A homogeneous element of random weight with height in `lo..=hi`.
    pub fn homogeneous(&mut self, d: &Datum, lo: usize, hi: usize) -> FreeElt {
        let h = self.range(lo as i64, hi as i64) as usize;
        let nu = self.weight(d.rank(), h);
        self.elt_of(&nu)
    }

    /// A random element of U: a sum of up to two scaled products of at
    /// most `letters` generators.
    pub fn u_elt(&mut self, alg: &CoveringAlgebra, letters: usize) -> UElt {
        let d = alg.datum();
        let mut out = UElt::zero();
        for _ in 0..self.range(1, 2) {
            let mut factors = Vec::new();
            for _ in 0..self.range(1, letters as i64) {
                let i = self.index(d.rank());
                let g = match self.index(4) {
                    0 => alg.e(i),
                    1 => alg.f(i),
                    2 => {
                        let mu: Vec<i64> = (0..d.rank_y()).map(|_| self.range(-1, 1)).collect();
                        alg.k(&mu)
                    }
                    _ => {
                        let mu: Vec<i64> = (0..d.rank_y()).map(|_| self.range(0, 1)).collect();
                        alg.j(&mu)
                    }
                };
                factors.push(g);
            }
            let c = self.scalar();
            out = out.add(&alg.mul_all(&factors).expect("short products stay under the cap").scale(&c));
        }
        out
    }
}
