use num_traits::One;

use super::operator::{s_context, s_plus};
use super::{
    apply_operator, dual_context, extract_b, ml_pointwise_constant, ml_polarization,
    polarize_times, BFunctionProblem, DiffOperator, FormalElement, LinExpS, PowerExpr,
    PowerProduct,
};
use crate::exact::rational::{frac, int, pow_i64, two_adic_factorial};
use crate::exact::{ExactError, Poly, Rational, Result};
use crate::legendre::{verify_ml_closed_form, Direction};
use crate::report::Status;
use crate::space::SubHankelSpace;

#[derive(Clone, Debug)]
pub struct BFunctionReport {
    pub r: usize,
    pub k: usize,
    pub status: Status,
    pub b: Option<Poly>,
    pub predicted: Poly,
    pub diagnostic: Option<String>,
}

impl BFunctionReport {
    fn compare(r: usize, k: usize, b: Poly, predicted: Poly) -> Self {
        let status = if b == predicted {
            Status::Pass
        } else if b == -&predicted {
            Status::PassUpToSign
        } else {
            Status::Fail
        };
        BFunctionReport {
            r,
            k,
            status,
            b: Some(b),
            predicted,
            diagnostic: None,
        }
    }
}

/// `(-1)^{r-1} / (2^{ℓ_2(r)+r-1} (r-1)^{r-1}) · Q_1`
pub fn conjecture_a_operator(space: &SubHankelSpace) -> Poly {
    let r = space.r() as i64;
    let sign = if (r - 1) % 2 == 0 { 1 } else { -1 };
    let denom =
        pow_i64(&int(2), two_adic_factorial(r as u32) as i64 + r - 1) * pow_i64(&int(r - 1), r - 1);
    space.invariants().q1.scale(&(int(sign) / denom))
}

/// `K = P_1^{r-1} P_2^{2r-r²}`; the `P_2` factor is dropped at `r = 2`.
pub fn k_power_product(space: &SubHankelSpace) -> PowerProduct {
    let r = space.r() as i64;
    let inv = space.invariants();
    let mut factors = vec![(inv.p1, LinExpS::constant(int(r - 1)))];
    if 2 * r - r * r != 0 {
        factors.push((inv.p2, LinExpS::constant(int(2 * r - r * r))));
    }
    PowerProduct::new(space.y_context(), factors)
}

/// `∏_{k=1}^{r-1} (s + k/(r-1)) · (s + (r+1)/2)`
pub fn conjecture_a_predicted(r: usize) -> Poly {
    conjecture_b_predicted(r, 0)
}

/// `∏_{i=1}^{r-1} (s + i/(r-1)) · (s + (r+1) 2^{k-1})`
pub fn conjecture_b_predicted(r: usize, k: usize) -> Poly {
    let r = r as i64;
    let mut p = Poly::one(&s_context());
    for i in 1..r {
        p = &p * &s_plus(&frac(i, r - 1));
    }
    let last = int(r + 1) * pow_i64(&int(2), k as i64 - 1);
    &p * &s_plus(&last)
}

pub fn conjecture_a_check(r: usize) -> Result<BFunctionReport> {
    let space = SubHankelSpace::new(r)?;
    let problem = BFunctionProblem {
        operator: conjecture_a_operator(&space),
        base: k_power_product(&space),
        predicted: conjecture_a_predicted(r),
    };
    Ok(match problem.solve() {
        Ok(b) => BFunctionReport::compare(r, 0, b, problem.predicted),
        Err(e) => BFunctionReport {
            r,
            k: 0,
            status: Status::Fail,
            b: None,
            predicted: problem.predicted,
            diagnostic: Some(e.to_string()),
        },
    })
}

/// `Σ y_ℓ ∂_ℓ (K^{s+1}) = r (s+1) K^{s+1}`; returns the measured factor.
pub fn euler_check(r: usize) -> Result<(bool, Poly)> {
    let space = SubHankelSpace::new(r)?;
    let k = k_power_product(&space);
    let problem = BFunctionProblem {
        operator: Poly::one(space.z_context()),
        base: k,
        predicted: Poly::one(&s_context()),
    };
    let (shifted, _) = problem.powers();
    let op = DiffOperator::euler(space.y_context());
    let result = apply_operator(&op, &FormalElement::unit(&shifted));
    let factor = extract_b(&result, &shifted)?;
    let expected = s_plus(&int(1)).scale(&int(r as i64));
    Ok((factor == expected, factor))
}

/// `ML(P_1) = c · Q_1^{r-1} Q_2^{2r-r²}` with the measured constant `c`.
pub fn ml_of_p1(space: &SubHankelSpace) -> Result<PowerExpr> {
    let r = space.r() as i64;
    let report = verify_ml_closed_form(space, Direction::PToQ);
    let c = report.constant.ok_or_else(|| {
        ExactError::Unsupported(format!(
            "closed form of ML(P1) not proportional: {}",
            report.witness.unwrap_or_default()
        ))
    })?;
    let inv = space.invariants();
    Ok(PowerExpr::new(
        space.z_context(),
        c,
        vec![(inv.q1, r - 1), (inv.q2, 2 * r - r * r)],
    ))
}

/// `F_k(∂) H_k^{s+1} = b(s) H_k^s` with `F_k` the `k`-fold polarization
/// of `P_1` and `H_k` its transform. Writing `H_k = λ·Φ` with `Φ` a product
/// of polynomial powers, `b = λ·b_Φ`.
pub fn conjecture_b_check(r: usize, k: usize) -> Result<BFunctionReport> {
    if k == 0 {
        return conjecture_a_check(r);
    }
    let space = SubHankelSpace::new(r)?;
    let predicted = conjecture_b_predicted(r, k);
    let unsupported = |msg: String| BFunctionReport {
        r,
        k,
        status: Status::Unsupported,
        b: None,
        predicted: predicted.clone(),
        diagnostic: Some(msg),
    };
    let f_k = polarize_times(&space.invariants().p1, k);
    let mut h = ml_of_p1(&space)?;
    for level in 1..=k {
        h = ml_polarization(&h, r as u32, level);
    }
    let check = ml_pointwise_constant(&f_k, &h, 5, 1)?;
    if check.constant != Some(Rational::one()) || !check.is_constant() {
        return Ok(unsupported(format!(
            "H_{k} is not the transform of F_{k}: {:?}",
            check
        )));
    }
    let z_ctx = dual_context(f_k.context());
    if !h.ctx.same(&z_ctx) {
        return Ok(unsupported(
            "transform context does not match the dual block".into(),
        ));
    }
    let base = PowerProduct::new(
        &z_ctx,
        h.factors
            .iter()
            .map(|(b, e)| (b.clone(), LinExpS::constant(int(*e))))
            .collect(),
    );
    let problem = BFunctionProblem {
        operator: f_k,
        base,
        predicted: predicted.clone(),
    };
    match problem.solve() {
        Ok(b_phi) => Ok(BFunctionReport::compare(
            r,
            k,
            b_phi.scale(&h.coeff),
            predicted,
        )),
        Err(ExactError::NotBIdentity(msg)) => Ok(unsupported(format!(
            "operator image is not b(s)·H^s over the bases {}: {msg}",
            h.factors
                .iter()
                .map(|(b, e)| format!("({b})^{e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ))),
        Err(e) => Err(e),
    }
}
