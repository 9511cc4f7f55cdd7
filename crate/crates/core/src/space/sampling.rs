use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::group::GroupElement;
use super::lie::GeneratorSet;
use crate::exact::rational::frac;
use crate::exact::Rational;

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 1729;

/// Reproducible source of small rational points and group elements.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `a/b` with `|a| <= num_bound`, `1 <= b <= den_bound`.
    pub fn rational(&mut self, num_bound: i64, den_bound: i64) -> Rational {
        let a = self.rng.gen_range(-num_bound..=num_bound);
        let b = self.rng.gen_range(1..=den_bound);
        frac(a, b)
    }

    pub fn positive_rational(&mut self, num_bound: i64, den_bound: i64) -> Rational {
        let a = self.rng.gen_range(1..=num_bound);
        let b = self.rng.gen_range(1..=den_bound);
        frac(a, b)
    }

    pub fn point(&mut self, dim: usize) -> Vec<Rational> {
        (0..dim).map(|_| self.rational(5, 3)).collect()
    }

    /// Rejection sampling until `accept` holds.
    pub fn point_where(
        &mut self,
        dim: usize,
        accept: impl Fn(&[Rational]) -> bool,
    ) -> Vec<Rational> {
        loop {
            let p = self.point(dim);
            if accept(&p) {
                return p;
            }
        }
    }

    pub fn group_element(&mut self, gens: &GeneratorSet) -> GroupElement {
        let p = self.positive_rational(3, 3);
        let q = self.positive_rational(3, 3);
        let t: Vec<Rational> = (1..gens.r()).map(|_| self.rational(2, 2)).collect();
        GroupElement::new(gens, &p, &q, &t).expect("positive parameters")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        assert_eq!(a.point(6), b.point(6));
    }
}
