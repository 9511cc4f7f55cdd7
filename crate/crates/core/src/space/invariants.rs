use std::fmt;

use num_traits::Zero;

use super::group::{g_prime_basis, g_prime_coordinates};
use super::lie::LieElement;
use super::qmatrix::QMatrix;
use super::sampling::Sampler;
use super::SubHankelSpace;
use crate::exact::rational::{factorial, frac, int, two_adic_factorial};
use crate::exact::{Poly, Rational};
use crate::report::IdentityReport;

/// Which coordinate space a polynomial lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Y,
    Z,
}

/// The character `ν_s(a) = a_1^{s_1} a_2^{s_2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterWeight {
    pub s1: Rational,
    pub s2: Rational,
}

impl CharacterWeight {
    pub fn new(s1: Rational, s2: Rational) -> Self {
        CharacterWeight { s1, s2 }
    }

    pub fn ints(s1: i64, s2: i64) -> Self {
        Self::new(int(s1), int(s2))
    }
}

impl fmt::Display for CharacterWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s1, self.s2)
    }
}

/// `P_1 = det`, `P_2 = y_{r+1}`, `Q_1` from `R(z)`, `Q_2 = z_1`.
#[derive(Clone, Debug)]
pub struct InvariantSet {
    pub r: usize,
    pub p1: Poly,
    pub p2: Poly,
    pub q1: Poly,
    pub q2: Poly,
    /// `(-1)^{r+1} 2^{ℓ_2(r)} / r!`
    pub q1_norm: Rational,
}

impl InvariantSet {
    pub fn p1_weight(&self) -> CharacterWeight {
        CharacterWeight::ints(1, self.r as i64 - 1)
    }

    pub fn p2_weight(&self) -> CharacterWeight {
        CharacterWeight::ints(0, 1)
    }

    pub fn q1_weight(&self) -> CharacterWeight {
        CharacterWeight::ints(1 - self.r as i64, -1)
    }

    /// Under the contragredient action `z_1` picks up `a_1^{-1}`.
    pub fn q2_weight(&self) -> CharacterWeight {
        CharacterWeight::ints(-1, 0)
    }

    /// `(name, polynomial, weight, side)` for all four invariants.
    pub fn entries(&self) -> Vec<(&'static str, &Poly, CharacterWeight, Side)> {
        vec![
            ("P1", &self.p1, self.p1_weight(), Side::Y),
            ("P2", &self.p2, self.p2_weight(), Side::Y),
            ("Q1", &self.q1, self.q1_weight(), Side::Z),
            ("Q2", &self.q2, self.q2_weight(), Side::Z),
        ]
    }
}

impl SubHankelSpace {
    pub fn invariants(&self) -> InvariantSet {
        let r = self.r();
        let p1 = self
            .subhankel_matrix()
            .determinant()
            .expect("square matrix");
        let sign = if (r + 1) % 2 == 0 { 1 } else { -1 };
        let q1_norm = int(sign)
            * Rational::from_integer(num_bigint::BigInt::from(1u8) << two_adic_factorial(r as u32))
            / Rational::from_integer(factorial(r as u32));
        let q1 = self
            .r_matrix()
            .determinant()
            .expect("square matrix")
            .scale(&q1_norm);
        InvariantSet {
            r,
            p1,
            p2: Poly::var_at(self.y_context(), r),
            q1,
            q2: Poly::var_at(self.z_context(), 0),
            q1_norm,
        }
    }

    /// `⟨∇P, dρ(X)·coords⟩ = dν(X)·P` for every generator `X`.
    pub fn verify_infinitesimal_invariance(
        &self,
        p: &Poly,
        weight: &CharacterWeight,
        side: Side,
    ) -> IdentityReport {
        let mut report = IdentityReport::new();
        let ctx = self.context(side);
        let p = match p.to_context(ctx) {
            Ok(p) => p,
            Err(e) => {
                report.check(false, || e.to_string());
                return report;
            }
        };
        let vars = match side {
            Side::Y => self.y_vars(),
            Side::Z => self.z_vars(),
        };
        let grad = p.gradient();
        for (name, x) in self.generators().generators() {
            let image = match side {
                Side::Y => self.drho(&x, &vars),
                Side::Z => self.drho_dual(&x, &vars),
            };
            let mut lhs = Poly::zero(ctx);
            for (g, v) in grad.iter().zip(&image) {
                if !g.is_zero() && !v.is_zero() {
                    lhs += &(g * v);
                }
            }
            let rhs = p.scale(&x.character(&weight.s1, &weight.s2));
            report.check(lhs == rhs, || {
                format!("generator {name}: weight {weight} does not match")
            });
        }
        report
    }

    /// Trace forms of `det ρ*|_W` and `det Ad|_{g'}` on every generator.
    pub fn verify_determinant_characters(&self) -> IdentityReport {
        let r = self.r() as i64;
        let mut report = IdentityReport::new();
        let gens = self.generators();
        for (name, x) in gens.generators() {
            let dual = self.dual_action_matrix(&x);
            let w_trace = dual.block(1, self.dim(), 1, self.dim()).trace();
            let w_expected = -(frac(r - 1, 2) * &x.h1) - frac(r + 1, 2) * &x.h2;
            report.check(w_trace == w_expected, || {
                format!("trace d rho*({name})|_W = {w_trace}, expected {w_expected}")
            });

            let ad = ad_on_g_prime(&x, self);
            let ad_trace = ad.trace();
            let ad_expected = frac(r - 1, 2) * &x.h1 - frac(r - 1, 2) * &x.h2;
            report.check(ad_trace == ad_expected, || {
                format!("trace ad({name})|_g' = {ad_trace}, expected {ad_expected}")
            });
        }
        report
    }

    /// Group-level determinant characters at sampled elements.
    pub fn verify_determinant_characters_group(&self, samples: usize, seed: u64) -> IdentityReport {
        let r = self.r() as i64;
        let gens = self.generators();
        let mut sampler = Sampler::new(seed);
        let mut report = IdentityReport::new();
        let w_weight = (frac(-(r - 1), 2), frac(-(r + 1), 2));
        let ad_weight = (frac(r - 1, 2), frac(-(r - 1), 2));
        for i in 0..samples {
            let g = sampler.group_element(gens);
            let dual = g.rho_dual(gens);
            let w_det = dual.block(1, self.dim(), 1, self.dim()).determinant();
            let w_expected = g.character(&w_weight.0, &w_weight.1);
            report.check(Some(&w_det) == w_expected.as_ref(), || {
                format!("sample {i}: det rho*(g)|_W = {w_det}")
            });
            let ad_det = g.adjoint_on_g_prime(gens).determinant();
            let ad_expected = g.character(&ad_weight.0, &ad_weight.1);
            report.check(Some(&ad_det) == ad_expected.as_ref(), || {
                format!("sample {i}: det Ad(g)|_g' = {ad_det}")
            });
        }
        report
    }

    /// `P(ρ(g)x) = ν(g) P(x)` at seeded elements `g` and points `x` off the
    /// singular set.
    pub fn verify_group_invariance(
        &self,
        p: &Poly,
        weight: &CharacterWeight,
        side: Side,
        samples: usize,
        seed: u64,
    ) -> IdentityReport {
        let mut report = IdentityReport::new();
        let p = match p.to_context(self.context(side)) {
            Ok(p) => p,
            Err(e) => {
                report.check(false, || e.to_string());
                return report;
            }
        };
        let inv = self.invariants();
        let guard: [&Poly; 2] = match side {
            Side::Y => [&inv.p1, &inv.p2],
            Side::Z => [&inv.q1, &inv.q2],
        };
        let gens = self.generators();
        let mut sampler = Sampler::new(seed);
        for i in 0..samples {
            let g = sampler.group_element(gens);
            let x = sampler.point_where(self.dim(), |pt| Self::nonzero_at(&guard, pt));
            let moved = self.act(&g, side, &x);
            let lhs = p.eval_slice(&moved);
            let Some(nu) = g.character(&weight.s1, &weight.s2) else {
                report.check(false, || {
                    format!("sample {i}: character value is irrational")
                });
                continue;
            };
            let rhs = nu * p.eval_slice(&x);
            report.check(lhs == rhs, || {
                format!("sample {i}: P(g.x) = {lhs}, nu{weight}(g) P(x) = {rhs}")
            });
        }
        report
    }
}

/// Matrix of `ad X` on `g'` in the basis `(T_{r-1}, …, T_1, H_2)`.
fn ad_on_g_prime(x: &LieElement, space: &SubHankelSpace) -> QMatrix {
    let gens = space.generators();
    let r = space.r();
    let xm = x.to_matrix(gens);
    let mut out = QMatrix::zeros(r, r);
    for (j, b) in g_prime_basis(r).iter().enumerate() {
        let img = xm.commutator(&b.to_matrix(gens));
        let e = LieElement::from_matrix(&img, gens).expect("bracket stays in the algebra");
        debug_assert!(e.h1.is_zero());
        for (i, c) in g_prime_coordinates(&e).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    #[test]
    fn r4_invariants_match_known_expansions() {
        let s = SubHankelSpace::new(4).unwrap();
        let inv = s.invariants();
        let q1 = parse_poly(
            "64*z1^3*z5 - 32*z1^2*z2*z4 - 16*z1^2*z3^2 + 24*z1*z2^2*z3 - 5*z2^4",
            s.z_context(),
        )
        .unwrap();
        let p1 = parse_poly(
            "-y1*y5^3 + 2*y2*y5^2*y4 + y3^2*y5^2 - 3*y3*y4^2*y5 + y4^4",
            s.y_context(),
        )
        .unwrap();
        assert_eq!(inv.q1, q1);
        assert_eq!(inv.p1, p1);
        assert_eq!(inv.q1_norm, frac(-1, 3));
    }

    #[test]
    fn r2_q1() {
        let s = SubHankelSpace::new(2).unwrap();
        let inv = s.invariants();
        assert_eq!(inv.q1, parse_poly("z2^2 - 4*z1*z3", s.z_context()).unwrap());
        assert_eq!(inv.q1_norm, int(-1));
    }

    #[test]
    fn homogeneity_and_degrees() {
        for r in 2..=6 {
            let inv = SubHankelSpace::new(r).unwrap().invariants();
            for p in [&inv.p1, &inv.q1] {
                assert!(p.is_homogeneous());
                assert_eq!(p.total_degree(), Some(r as u32));
            }
        }
    }

    #[test]
    fn infinitesimal_invariance_small_r() {
        for r in 2..=4 {
            let s = SubHankelSpace::new(r).unwrap();
            let inv = s.invariants();
            for (name, p, w, side) in inv.entries() {
                let rep = s.verify_infinitesimal_invariance(p, &w, side);
                assert!(rep.passed(), "r={r} {name}: {:?}", rep.failures);
            }
        }
    }

    #[test]
    fn q2_literal_weight_is_rejected() {
        let s = SubHankelSpace::new(3).unwrap();
        let inv = s.invariants();
        let rep = s.verify_infinitesimal_invariance(&inv.q2, &CharacterWeight::ints(1, 0), Side::Z);
        assert!(!rep.passed());
    }

    #[test]
    fn determinant_characters() {
        for r in 2..=5 {
            let s = SubHankelSpace::new(r).unwrap();
            let rep = s.verify_determinant_characters();
            assert!(rep.passed(), "r={r}: {:?}", rep.failures);
            let rep = s.verify_determinant_characters_group(5, 11);
            assert!(rep.passed(), "r={r}: {:?}", rep.failures);
        }
        let s = SubHankelSpace::new(2).unwrap();
        let h2 = s.dual_action_matrix(&LieElement::h2(2));
        assert_eq!(h2.block(1, 3, 1, 3).trace(), frac(-3, 2));
    }

    #[test]
    fn group_invariance_small_r() {
        for r in 2..=3 {
            let s = SubHankelSpace::new(r).unwrap();
            let inv = s.invariants();
            for (name, p, w, side) in inv.entries() {
                let rep = s.verify_group_invariance(p, &w, side, 10, 3);
                assert!(rep.passed(), "r={r} {name}: {:?}", rep.failures);
            }
        }
    }

    #[test]
    fn diagonal_scales_p1() {
        let s = SubHankelSpace::new(2).unwrap();
        let g = super::super::GroupElement::diagonal(s.generators(), &int(4), &int(9)).unwrap();
        let inv = s.invariants();
        let y = vec![int(1), int(2), int(7)];
        let moved = s.act(&g, Side::Y, &y);
        assert_eq!(inv.p1.eval_slice(&moved), int(36) * inv.p1.eval_slice(&y));
    }
}
