//! The sub-Hankel prehomogeneous vector space of size `r`.
//!
//! Coordinates `y_1, …, y_{r+1}` describe the symmetric matrix whose
//! `(i, j)` entry (1-indexed) is `y_{i+j-1}` for `i + j <= r + 2` and `0`
//! below that anti-diagonal. Dual coordinates are `z_1, …, z_{r+1}`.

mod group;
mod invariants;
mod lie;
mod qmatrix;
mod sampling;

pub use group::{nilpotent_exp, GroupElement};
pub use invariants::{CharacterWeight, InvariantSet, Side};
pub use lie::{verify_structure_constants, GeneratorSet, LieElement};
pub use qmatrix::QMatrix;
pub use sampling::{Sampler, DEFAULT_SEED};

use num_traits::Zero;

use crate::exact::{ExactError, Poly, PolyMatrix, Rational, Result, VarContext};
use crate::report::IdentityReport;

#[derive(Clone, Debug)]
pub struct SubHankelSpace {
    r: usize,
    y_ctx: VarContext,
    z_ctx: VarContext,
    gens: GeneratorSet,
}

impl SubHankelSpace {
    pub fn new(r: usize) -> Result<Self> {
        if r < 2 {
            return Err(ExactError::Size(format!("r must be at least 2, got {r}")));
        }
        Ok(SubHankelSpace {
            r,
            y_ctx: VarContext::indexed("y", r + 1),
            z_ctx: VarContext::indexed("z", r + 1),
            gens: GeneratorSet::new(r),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.r + 1
    }

    pub fn y_context(&self) -> &VarContext {
        &self.y_ctx
    }

    pub fn z_context(&self) -> &VarContext {
        &self.z_ctx
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn y_vars(&self) -> Vec<Poly> {
        (0..self.dim())
            .map(|i| Poly::var_at(&self.y_ctx, i))
            .collect()
    }

    pub fn z_vars(&self) -> Vec<Poly> {
        (0..self.dim())
            .map(|i| Poly::var_at(&self.z_ctx, i))
            .collect()
    }

    pub fn context(&self, side: Side) -> &VarContext {
        match side {
            Side::Y => &self.y_ctx,
            Side::Z => &self.z_ctx,
        }
    }

    /// `Σ_ℓ y_ℓ Y_ℓ`.
    pub fn subhankel_matrix(&self) -> PolyMatrix {
        let r = self.r;
        PolyMatrix::from_fn(r, r, |i, j| {
            if i + j <= r {
                Poly::var_at(&self.y_ctx, i + j)
            } else {
                Poly::zero(&self.y_ctx)
            }
        })
    }

    /// Coordinate matrix of `dρ(X)`.
    pub fn action_matrix(&self, x: &LieElement) -> QMatrix {
        self.gens
            .action_matrix(&x.to_matrix(&self.gens))
            .expect("the Lie algebra preserves the sub-Hankel pattern")
    }

    /// Coordinate matrix of `dρ*(X) = -dρ(X)ᵗ`.
    pub fn dual_action_matrix(&self, x: &LieElement) -> QMatrix {
        -&self.action_matrix(x).transpose()
    }

    pub fn drho(&self, x: &LieElement, y: &[Poly]) -> Vec<Poly> {
        self.action_matrix(x).apply_poly(y)
    }

    pub fn drho_dual(&self, x: &LieElement, z: &[Poly]) -> Vec<Poly> {
        self.dual_action_matrix(x).apply_poly(z)
    }

    pub fn verify_structure_constants(&self) -> IdentityReport {
        verify_structure_constants(&self.gens)
    }

    /// Checks that `X·Y_ℓ + Y_ℓ·Xᵗ` stays sub-Hankel for every generator.
    pub fn verify_pattern_preservation(&self) -> IdentityReport {
        let mut report = IdentityReport::new();
        for (name, x) in self.gens.generators() {
            let ok = self.gens.action_matrix(&x.to_matrix(&self.gens)).is_some();
            report.check(ok, || {
                format!("d rho({name}) leaves the sub-Hankel pattern")
            });
        }
        report
    }

    /// `R(z)`: columns for `(T_{r-1}, …, T_1, r H_2)`, rows for
    /// `(-Y*_2, …, -Y*_{r+1})`.
    pub fn r_matrix(&self) -> PolyMatrix {
        let r = self.r;
        let z = self.z_vars();
        let mut columns: Vec<LieElement> = (1..r).rev().map(|k| LieElement::t(r, k)).collect();
        let mut rh2 = LieElement::h2(r);
        rh2.h2 = Rational::from_integer((r as i64).into());
        columns.push(rh2);
        let images: Vec<Vec<Poly>> = columns.iter().map(|x| self.drho_dual(x, &z)).collect();
        PolyMatrix::from_fn(r, r, |i, j| -&images[j][i + 1])
    }

    /// Applies `ρ(g)` (or `ρ*(g)`) to a rational point.
    pub fn act(&self, g: &GroupElement, side: Side, point: &[Rational]) -> Vec<Rational> {
        match side {
            Side::Y => g.rho(&self.gens).apply(point),
            Side::Z => g.rho_dual(&self.gens).apply(point),
        }
    }

    pub(crate) fn nonzero_at(polys: &[&Poly], point: &[Rational]) -> bool {
        polys.iter().all(|p| !p.eval_slice(point).is_zero())
    }
}

/// The generic `r × r` sub-Hankel matrix in `y_1, …, y_{r+1}`.
pub fn build_subhankel_matrix(r: usize) -> Result<PolyMatrix> {
    Ok(SubHankelSpace::new(r)?.subhankel_matrix())
}

pub fn invariants(r: usize) -> Result<InvariantSet> {
    Ok(SubHankelSpace::new(r)?.invariants())
}
