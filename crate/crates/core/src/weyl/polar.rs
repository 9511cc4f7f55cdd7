use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rational::{int, pow_i64};
use crate::exact::{Poly, Rational, Result, VarContext};
use crate::space::Sampler;

/// `y…` becomes `z…`, `x…` becomes `w…`; anything else gets a `z_` prefix.
pub fn dual_name(name: &str) -> String {
    if let Some(rest) = name.strip_prefix('y') {
        format!("z{rest}")
    } else if let Some(rest) = name.strip_prefix('x') {
        format!("w{rest}")
    } else {
        format!("z_{name}")
    }
}

pub fn dual_context(ctx: &VarContext) -> VarContext {
    VarContext::new(ctx.names().iter().map(|n| dual_name(n))).expect("dual names stay distinct")
}

/// Appends a fresh block `v_{level}` for every variable `v`.
fn polarization_block(ctx: &VarContext, level: usize) -> VarContext {
    let names: Vec<String> = ctx.names().iter().map(|n| format!("{n}_{level}")).collect();
    ctx.union(&VarContext::new(&names).expect("valid names"))
}

/// `F(x; u) = Σ ∂f/∂x_i · u_i + f(x)`, with `u_i` named `x_i_{level}`.
pub fn polarize(f: &Poly, level: usize) -> Poly {
    let base = f.context().clone();
    let ctx = polarization_block(&base, level);
    let mut out = f.to_context(&ctx).expect("widening");
    for (i, name) in base.names().iter().enumerate() {
        let d = f.derivative_at(i);
        if d.is_zero() {
            continue;
        }
        let u = Poly::var(&ctx, &format!("{name}_{level}")).expect("new block");
        out += &(&d.to_context(&ctx).expect("widening") * &u);
    }
    out
}

/// `k` successive polarizations (levels `1..=k`).
pub fn polarize_times(f: &Poly, k: usize) -> Poly {
    (1..=k).fold(f.clone(), |acc, level| polarize(&acc, level))
}

/// `c · ∏ B_i^{e_i}` with integer exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerExpr {
    pub ctx: VarContext,
    pub coeff: Rational,
    pub factors: Vec<(Poly, i64)>,
}

impl PowerExpr {
    pub fn new(ctx: &VarContext, coeff: Rational, factors: Vec<(Poly, i64)>) -> Self {
        let factors = factors
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(b, e)| (b.to_context(ctx).expect("factor in context"), e))
            .collect();
        PowerExpr {
            ctx: ctx.clone(),
            coeff,
            factors,
        }
    }

    /// `None` where a base with a negative exponent vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let mut v = self.coeff.clone();
        for (b, e) in &self.factors {
            let x = b.eval_slice(point);
            if x.is_zero() && *e < 0 {
                return None;
            }
            v *= pow_i64(&x, *e);
        }
        Some(v)
    }

    /// Total degree as a homogeneous rational function.
    pub fn degree(&self) -> i64 {
        self.factors
            .iter()
            .map(|(b, e)| b.total_degree().unwrap_or(0) as i64 * e)
            .sum()
    }
}

impl fmt::Display for PowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (b, e) in &self.factors {
            write!(f, " * ({b})^{e}")?;
        }
        Ok(())
    }
}

/// Multiplicative Legendre transform of the polarization `F` of `f`, from
/// `f_* = c ∏ B_j^{e_j}`:
///
/// `F_*(X, U) = (d-1)^{1-d} (f_*'(U)·X - f_*(U))^{d-1} f_*(U)^{2-d}`
/// `         = (d-1)^{1-d} c · G^{d-1} · ∏ B_j(U)^{e_j+1-d}`
///
/// with `G = Σ_j e_j (∇B_j(U)·X) ∏_{k≠j} B_k(U) - ∏_k B_k(U)`. `X` is the
/// dual block of `f_*`; `U` is its copy with suffix `_{level}`.
pub fn ml_polarization(f_star: &PowerExpr, d: u32, level: usize) -> PowerExpr {
    let x_ctx = f_star.ctx.clone();
    let out_ctx = polarization_block(&x_ctx, level);
    let u_names: Vec<String> = x_ctx
        .names()
        .iter()
        .map(|n| format!("{n}_{level}"))
        .collect();
    let u_ctx = VarContext::new(&u_names).expect("valid names");
    let at_u: Vec<Poly> = f_star
        .factors
        .iter()
        .map(|(b, _)| b.renamed(&u_ctx).to_context(&out_ctx).expect("widening"))
        .collect();
    let x_vars: Vec<Poly> = (0..x_ctx.len())
        .map(|i| Poly::var_at(&out_ctx, i))
        .collect();

    let product_except = |skip: Option<usize>| {
        at_u.iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .fold(Poly::one(&out_ctx), |acc, (_, b)| &acc * b)
    };
    let mut g = -&product_except(None);
    for (j, (b, (_, e))) in at_u.iter().zip(&f_star.factors).enumerate() {
        let mut dir = Poly::zero(&out_ctx);
        for (i, name) in u_names.iter().enumerate() {
            let db = b.derivative(name).expect("u variable");
            if !db.is_zero() {
                dir += &(&db * &x_vars[i]);
            }
        }
        g += &(&dir * &product_except(Some(j))).scale(&int(*e));
    }

    let dm1 = d as i64 - 1;
    let mut coeff = if dm1 == 0 {
        f_star.coeff.clone()
    } else {
        pow_i64(&int(dm1), -dm1) * &f_star.coeff
    };
    let mut factors: Vec<(Poly, i64)> = at_u
        .into_iter()
        .zip(&f_star.factors)
        .map(|(b, (_, e))| (b, e + 1 - d as i64))
        .collect();
    if dm1 > 0 {
        // move base factors and the content of G into the other slots
        for (b, e) in factors.iter_mut() {
            while let Ok(q) = g.exact_divide(b) {
                g = q;
                *e += dm1;
            }
        }
        let (content, primitive) = primitive_part(&g);
        coeff *= pow_i64(&content, dm1);
        if !primitive.is_constant() {
            factors.insert(0, (primitive, dm1));
        }
    }
    PowerExpr::new(&out_ctx, coeff, factors)
}

/// `p = content · primitive`, primitive with coprime integer coefficients
/// and positive leading coefficient.
fn primitive_part(p: &Poly) -> (Rational, Poly) {
    if p.is_zero() {
        return (Rational::zero(), p.clone());
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut content = Rational::new(num_gcd, den_lcm);
    if p.leading_term()
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false)
    {
        content = -content;
    }
    (content.clone(), p.scale(&content.recip()))
}

/// Outcome of sampling `f_*(∇ log f(x)) · f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseProduct {
    pub constant: Option<Rational>,
    pub samples: usize,
    pub witness: Option<String>,
}

impl PointwiseProduct {
    pub fn is_constant(&self) -> bool {
        self.witness.is_none() && self.constant.is_some()
    }
}

/// Samples `f_*(∇f/f) · f` at points where both sides are defined; the
/// product is `1` exactly when `f_*` is the transform of `f`.
pub fn ml_pointwise_constant(
    f: &Poly,
    f_star: &PowerExpr,
    samples: usize,
    seed: u64,
) -> Result<PointwiseProduct> {
    let n = f.context().len();
    if f_star.ctx.len() != n {
        return Err(crate::exact::ExactError::Context(format!(
            "transform has {} variables, polynomial has {n}",
            f_star.ctx.len()
        )));
    }
    let grad = f.gradient();
    let mut sampler = Sampler::new(seed);
    let mut out = PointwiseProduct {
        constant: None,
        samples,
        witness: None,
    };
    let mut taken = 0;
    let mut attempts = 0;
    while taken < samples {
        attempts += 1;
        if attempts > 100 * samples.max(1) {
            out.witness = Some("no admissible sample points found".into());
            return Ok(out);
        }
        let x = sampler.point(n);
        let fx = f.eval_slice(&x);
        if fx.is_zero() {
            continue;
        }
        let z: Vec<Rational> = grad.iter().map(|g| g.eval_slice(&x) / &fx).collect();
        let Some(v) = f_star.eval(&z) else { continue };
        if v.is_zero() {
            continue;
        }
        taken += 1;
        let product = v * fx;
        match &out.constant {
            None => out.constant = Some(product),
            Some(c) if *c != product => {
                out.witness = Some(format!("product {c} differs from {product}"));
                return Ok(out);
            }
            _ => {}
        }
    }
    Ok(out)
}
