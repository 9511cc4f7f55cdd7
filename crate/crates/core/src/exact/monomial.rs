use std::cmp::Ordering;

/// Exponent vector aligned with a [`VarContext`](super::VarContext).
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the first variable, then the second, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = exp;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Lower the exponent at `index` by one.
    pub fn lowered(&self, index: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Monomial { exps }
    }

    /// Re-lay the exponents into a larger context; `map[i]` is the target
    /// position of variable `i`.
    pub fn remap(&self, map: &[usize], target_len: usize) -> Monomial {
        let mut exps = vec![0; target_len];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] = e;
        }
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = |v: &[u32]| Monomial::from_exponents(v.to_vec());
        // degree dominates
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
        // then lex with the first variable heaviest
        assert!(m(&[1, 0, 1]) > m(&[0, 2, 0]));
        assert!(m(&[3, 0, 0, 0, 1]) > m(&[2, 1, 0, 1, 0]));
    }

    #[test]
    fn divisibility() {
        let a = Monomial::from_exponents(vec![1, 2, 0]);
        let b = Monomial::from_exponents(vec![2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).exponents(), &[1, 0, 1]);
    }
}
