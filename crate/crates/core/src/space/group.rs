use num_traits::{Signed, Zero};

use super::lie::{GeneratorSet, LieElement};
use super::qmatrix::QMatrix;
use crate::exact::rational::{frac, pow_i64, rational_power};
use crate::exact::{ExactError, Rational, Result};

/// `exp(Σ t_k T_k) · a` with `a` diagonal and its character data `(a_1, a_2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    matrix: QMatrix,
    a1: Rational,
    a2: Rational,
}

impl GroupElement {
    /// `a_1 = q^{2r}`, `a_2 = p^r`.
    pub fn new(gens: &GeneratorSet, p: &Rational, q: &Rational, t: &[Rational]) -> Result<Self> {
        let r = gens.r();
        if !p.is_positive() || !q.is_positive() {
            return Err(ExactError::Size("p and q must be positive".into()));
        }
        if t.len() != r - 1 {
            return Err(ExactError::Size(format!(
                "expected {} unipotent parameters, got {}",
                r - 1,
                t.len()
            )));
        }
        let diag: Vec<Rational> = (0..r)
            .map(|i| pow_i64(q, r as i64 - 2 * i as i64) * pow_i64(p, i as i64))
            .collect();
        let a = QMatrix::diagonal(&diag);
        let n = LieElement {
            h1: Rational::zero(),
            h2: Rational::zero(),
            t: t.to_vec(),
        }
        .to_matrix(gens);
        Ok(GroupElement {
            matrix: &nilpotent_exp(&n) * &a,
            a1: pow_i64(q, 2 * r as i64),
            a2: pow_i64(p, r as i64),
        })
    }

    /// Diagonal element with `a_i = a_1^{1/2 - (i-1)/r} a_2^{(i-1)/r}`,
    /// provided every entry is rational.
    pub fn diagonal(gens: &GeneratorSet, a1: &Rational, a2: &Rational) -> Result<Self> {
        let r = gens.r() as i64;
        if !a1.is_positive() || !a2.is_positive() {
            return Err(ExactError::Size("a1 and a2 must be positive".into()));
        }
        let mut diag = Vec::with_capacity(r as usize);
        for i in 0..r {
            let e1 = reduced(r - 2 * i, 2 * r);
            let e2 = reduced(i, r);
            let (Some(f1), Some(f2)) = (
                rational_power(a1, e1.0, e1.1),
                rational_power(a2, e2.0, e2.1),
            ) else {
                return Err(ExactError::Unsupported(format!(
                    "diagonal entry {} of ({a1}, {a2}) is irrational",
                    i + 1
                )));
            };
            diag.push(f1 * f2);
        }
        Ok(GroupElement {
            matrix: QMatrix::diagonal(&diag),
            a1: a1.clone(),
            a2: a2.clone(),
        })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn a1(&self) -> &Rational {
        &self.a1
    }

    pub fn a2(&self) -> &Rational {
        &self.a2
    }

    /// `ν_s(g) = a_1^{s_1} a_2^{s_2}`, when rational.
    pub fn character(&self, s1: &Rational, s2: &Rational) -> Option<Rational> {
        Some(char_power(&self.a1, s1)? * char_power(&self.a2, s2)?)
    }

    /// Column `ℓ` holds the coordinates of `g·Y_ℓ·gᵗ`.
    pub fn rho(&self, gens: &GeneratorSet) -> QMatrix {
        let n = gens.r() + 1;
        let gt = self.matrix.transpose();
        let mut out = QMatrix::zeros(n, n);
        for l in 1..=n {
            let img = &(&self.matrix * gens.y(l)) * &gt;
            let coords = gens
                .coordinates(&img)
                .expect("group action preserves the sub-Hankel pattern");
            for (m, c) in coords.into_iter().enumerate() {
                out.set(m, l - 1, c);
            }
        }
        out
    }

    /// Contragredient `(ρ(g)^{-1})ᵗ`.
    pub fn rho_dual(&self, gens: &GeneratorSet) -> QMatrix {
        self.rho(gens)
            .inverse()
            .expect("rho(g) is invertible")
            .transpose()
    }

    /// Matrix of `Ad(g)` on `g' = span(T_{r-1}, …, T_1, H_2)`, in that order.
    pub fn adjoint_on_g_prime(&self, gens: &GeneratorSet) -> QMatrix {
        let r = gens.r();
        let basis = g_prime_basis(r);
        let inv = self
            .matrix
            .inverse()
            .expect("group elements are invertible");
        let mut out = QMatrix::zeros(r, r);
        for (j, b) in basis.iter().enumerate() {
            let img = &(&self.matrix * &b.to_matrix(gens)) * &inv;
            let e = LieElement::from_matrix(&img, gens).expect("Ad preserves the Lie algebra");
            for (i, c) in g_prime_coordinates(&e).into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        out
    }
}

/// `(T_{r-1}, …, T_1, H_2)`.
pub(crate) fn g_prime_basis(r: usize) -> Vec<LieElement> {
    let mut out: Vec<LieElement> = (1..r).rev().map(|k| LieElement::t(r, k)).collect();
    out.push(LieElement::h2(r));
    out
}

/// Coordinates in [`g_prime_basis`]; the `H_1` part is dropped.
pub(crate) fn g_prime_coordinates(e: &LieElement) -> Vec<Rational> {
    let mut out: Vec<Rational> = e.t.iter().rev().cloned().collect();
    out.push(e.h2.clone());
    out
}

fn reduced(num: i64, den: i64) -> (i64, u32) {
    let g = num_integer::gcd(num, den).max(1);
    (num / g, (den / g) as u32)
}

fn char_power(a: &Rational, s: &Rational) -> Option<Rational> {
    let num: i64 = s.numer().try_into().ok()?;
    let den: u32 = s.denom().try_into().ok()?;
    rational_power(a, num, den)
}

/// `Σ_j N^j / j!` for strictly upper-triangular `N`.
pub fn nilpotent_exp(n: &QMatrix) -> QMatrix {
    let size = n.rows();
    let mut acc = QMatrix::identity(size);
    let mut term = QMatrix::identity(size);
    for j in 1..size.max(1) {
        term = (&term * n).scale(&frac(1, j as i64));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn exp_t1_r3() {
        let g = GeneratorSet::new(3);
        let e = nilpotent_exp(g.t(1));
        let expected = QMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) | (1, 1) | (2, 2) => int(1),
            (0, 1) => int(2),
            (0, 2) | (1, 2) => int(1),
            _ => int(0),
        });
        assert_eq!(e, expected);
    }

    #[test]
    fn trivial_parameters_give_identity() {
        let g = GeneratorSet::new(4);
        let e = GroupElement::new(&g, &int(1), &int(1), &[int(0), int(0), int(0)]).unwrap();
        assert_eq!(e.matrix(), &QMatrix::identity(4));
    }

    #[test]
    fn diagonal_r2() {
        let g = GeneratorSet::new(2);
        let e = GroupElement::diagonal(&g, &int(4), &int(9)).unwrap();
        assert_eq!(e.matrix(), &QMatrix::diagonal(&[int(2), int(3)]));
        let d = e.matrix().determinant();
        assert_eq!(&d * &d, int(36));
        assert_eq!(e.character(&int(1), &int(1)), Some(int(36)));
        assert!(GroupElement::diagonal(&g, &int(2), &int(9)).is_err());
    }

    #[test]
    fn parametrised_matches_diagonal() {
        let g = GeneratorSet::new(3);
        let (p, q) = (frac(2, 3), frac(3, 2));
        let e = GroupElement::new(&g, &p, &q, &[int(0), int(0)]).unwrap();
        let d = GroupElement::diagonal(&g, e.a1(), e.a2()).unwrap();
        assert_eq!(e, d);
    }
}
