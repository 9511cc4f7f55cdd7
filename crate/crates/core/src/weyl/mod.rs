//! Differential operators acting on formal powers `∏ B_i^{a_i s + b_i}`.
//!
//! Numerators are polynomials in the base variables plus one extra
//! variable `s`; exponents are tracked separately as [`LinExpS`].

mod conjectures;
mod element;
mod factor;
mod operator;
mod polar;

pub use conjectures::{
    conjecture_a_check, conjecture_a_operator, conjecture_a_predicted, conjecture_b_check,
    conjecture_b_predicted, euler_check, k_power_product, ml_of_p1, BFunctionReport,
};
pub use element::FormalElement;
pub use factor::{factor_linear, FactoredPoly};
pub use operator::{apply_operator, extract_b, BFunctionProblem, DiffOperator};
pub use polar::{
    dual_context, dual_name, ml_pointwise_constant, ml_polarization, polarize, polarize_times,
    PointwiseProduct, PowerExpr,
};

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::exact::rational::int;
use crate::exact::{Poly, Rational, VarContext};

/// Name of the formal exponent variable.
pub const S: &str = "s";

/// `a·s + b` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinExpS {
    pub a: Rational,
    pub b: Rational,
}

impl LinExpS {
    pub fn new(a: Rational, b: Rational) -> Self {
        LinExpS { a, b }
    }

    pub fn constant(b: Rational) -> Self {
        LinExpS {
            a: Rational::zero(),
            b,
        }
    }

    /// `e·(s + 1)`
    pub fn shifted_power(e: i64) -> Self {
        LinExpS::new(int(e), int(e))
    }

    /// `e·s`
    pub fn power(e: i64) -> Self {
        LinExpS::new(int(e), Rational::zero())
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero()
    }

    pub fn sub_int(&self, k: i64) -> Self {
        LinExpS::new(self.a.clone(), &self.b - int(k))
    }

    pub fn to_poly(&self, ctx: &VarContext) -> Poly {
        let s = Poly::var(ctx, S).expect("context carries s");
        &s.scale(&self.a) + &Poly::constant(ctx, self.b.clone())
    }
}

impl Add for &LinExpS {
    type Output = LinExpS;
    fn add(self, rhs: &LinExpS) -> LinExpS {
        LinExpS::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &LinExpS {
    type Output = LinExpS;
    fn sub(self, rhs: &LinExpS) -> LinExpS {
        LinExpS::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl fmt::Display for LinExpS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = VarContext::new([S]).expect("valid name");
        write!(f, "{}", self.to_poly(&ctx))
    }
}

/// `∏ B_i^{E_i}` over a base context, with the numerator context `base ∪ {s}`.
#[derive(Clone, Debug)]
pub struct PowerProduct {
    base_ctx: VarContext,
    s_ctx: VarContext,
    bases: Arc<[Poly]>,
    /// Bases lifted to `s_ctx`.
    lifted: Arc<[Poly]>,
    exponents: Vec<LinExpS>,
}

impl PowerProduct {
    /// Panics if a base is constant, repeated, or outside `base_ctx`.
    pub fn new(base_ctx: &VarContext, factors: Vec<(Poly, LinExpS)>) -> Self {
        let s_ctx = base_ctx.union(&VarContext::new([S]).expect("valid name"));
        assert!(
            !base_ctx.names().iter().any(|n| n == S),
            "the base context may not use `{S}`"
        );
        let mut bases = Vec::with_capacity(factors.len());
        let mut exponents = Vec::with_capacity(factors.len());
        for (b, e) in factors {
            let b = b
                .to_context(base_ctx)
                .expect("base lives in the base context");
            assert!(!b.is_constant(), "constant base");
            assert!(!bases.contains(&b), "repeated base");
            bases.push(b);
            exponents.push(e);
        }
        let lifted: Vec<Poly> = bases
            .iter()
            .map(|b| b.to_context(&s_ctx).expect("widening"))
            .collect();
        PowerProduct {
            base_ctx: base_ctx.clone(),
            s_ctx,
            bases: bases.into(),
            lifted: lifted.into(),
            exponents,
        }
    }

    pub fn base_context(&self) -> &VarContext {
        &self.base_ctx
    }

    pub fn s_context(&self) -> &VarContext {
        &self.s_ctx
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[Poly] {
        &self.bases
    }

    pub fn exponents(&self) -> &[LinExpS] {
        &self.exponents
    }

    pub(crate) fn lifted(&self) -> &[Poly] {
        &self.lifted
    }

    /// Same bases, new exponents.
    pub fn with_exponents(&self, exponents: Vec<LinExpS>) -> Self {
        assert_eq!(exponents.len(), self.bases.len());
        PowerProduct {
            exponents,
            ..self.clone()
        }
    }

    pub fn same_bases(&self, other: &PowerProduct) -> bool {
        Arc::ptr_eq(&self.bases, &other.bases) || self.bases == other.bases
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .bases
            .iter()
            .zip(&self.exponents)
            .map(|(b, e)| format!("({b})^({e})"))
            .collect();
        f.write_str(&parts.join(" * "))
    }
}
