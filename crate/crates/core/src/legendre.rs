//! Multiplicative Legendre transform of the relative invariants.

use std::fmt;

use num_traits::Zero;

use crate::exact::rational::{int, pow_i64, two_adic_factorial};
use crate::exact::{ExactError, Poly, Rational, Result};
use crate::report::Status;
use crate::space::{InvariantSet, Sampler, SubHankelSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    PToQ,
    QToP,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::PToQ => "P-to-Q",
            Direction::QToP => "Q-to-P",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer character parameters `(s_1, s_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightPair {
    pub s1: i64,
    pub s2: i64,
}

impl WeightPair {
    pub fn new(s1: i64, s2: i64) -> Self {
        WeightPair { s1, s2 }
    }

    pub fn is_degenerate(self) -> bool {
        self.s1 == 0 || self.s2 == 0
    }
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s1, self.s2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MLReport {
    pub r: usize,
    pub status: Status,
    /// Measured `c` in `ML(φ) = c·ψ`.
    pub constant: Option<Rational>,
    pub expected: Option<Rational>,
    pub samples: usize,
    pub witness: Option<String>,
}

/// `1 / (2^{ℓ_2(r)+r-1} (r-1))^{r-1}`
pub fn expected_ml_constant(r: usize) -> Rational {
    let base = pow_i64(
        &int(2),
        (two_adic_factorial(r as u32) + r as u32 - 1) as i64,
    ) * int(r as i64 - 1);
    pow_i64(&base, 1 - r as i64)
}

fn classify(measured: &Rational, expected: &Rational) -> Status {
    if measured == expected {
        Status::Pass
    } else if measured == &-expected.clone() {
        Status::PassUpToSign
    } else {
        Status::Fail
    }
}

/// `∇ log φ_us` at a point: `s_1 ∇P_1/P_1 + (s_2 - (r-1)s_1) ∇P_2/P_2`.
pub fn inv_map(
    space: &SubHankelSpace,
    inv: &InvariantSet,
    us: WeightPair,
    y: &[Rational],
) -> Result<Vec<Rational>> {
    let r = space.r() as i64;
    let p1 = inv.p1.eval_slice(y);
    let p2 = inv.p2.eval_slice(y);
    if p1.is_zero() || p2.is_zero() {
        return Err(ExactError::SingularPoint(format!(
            "P1 P2 vanishes at ({})",
            join(y)
        )));
    }
    let c1 = int(us.s1) / p1;
    let c2 = int(us.s2 - (r - 1) * us.s1) / p2;
    Ok((0..space.dim())
        .map(|l| {
            &c1 * inv.p1.derivative_at(l).eval_slice(y)
                + &c2 * inv.p2.derivative_at(l).eval_slice(y)
        })
        .collect())
}

/// `φ_us = P_1^{s_1} P_2^{s_2-(r-1)s_1}` at a non-singular point.
pub fn phi(inv: &InvariantSet, us: WeightPair, y: &[Rational]) -> Rational {
    let r = inv.r as i64;
    pow_i64(&inv.p1.eval_slice(y), us.s1) * pow_i64(&inv.p2.eval_slice(y), us.s2 - (r - 1) * us.s1)
}

/// `ψ_us = Q_2^{s_1-(r-1)s_2} Q_1^{s_2}` at a non-singular point.
pub fn psi(inv: &InvariantSet, us: WeightPair, z: &[Rational]) -> Rational {
    let r = inv.r as i64;
    pow_i64(&inv.q2.eval_slice(z), us.s1 - (r - 1) * us.s2) * pow_i64(&inv.q1.eval_slice(z), us.s2)
}

/// Cross-multiplied closed form.
///
/// P-to-Q: `Q_1(∇P_1)^{r-1} = λ P_1^{r-1} (∂P_1/∂y_1)^{r²-2r}`, and `c = 1/λ`.
/// Q-to-P: `P_1(∇Q_1)^{r-1} = λ Q_1^{r-1} (∂Q_1/∂z_{r+1})^{r²-2r}`.
pub fn verify_ml_closed_form(space: &SubHankelSpace, direction: Direction) -> MLReport {
    let r = space.r();
    let inv = space.invariants();
    let (source, target, pivot) = match direction {
        Direction::PToQ => (&inv.p1, &inv.q1, 0),
        Direction::QToP => (&inv.q1, &inv.p1, r),
    };
    let grad = source.gradient();
    let target_ctx = target.context();
    let values: Vec<Poly> = (0..target_ctx.len()).map(|i| grad[i].clone()).collect();
    let composed = target.compose(&values);
    let e = (r * r - 2 * r) as u32;
    let lhs = composed.pow(r as u32 - 1);
    let rhs = &source.pow(r as u32 - 1) * &grad[pivot].pow(e);
    let degree = (r * (r - 1) * (r - 1)) as u32;
    let expected = expected_ml_constant(r);
    let mut report = MLReport {
        r,
        status: Status::Fail,
        constant: None,
        expected: Some(expected.clone()),
        samples: 0,
        witness: None,
    };
    for (side, p) in [("lhs", &lhs), ("rhs", &rhs)] {
        if !p.is_homogeneous() || p.total_degree() != Some(degree) {
            report.witness = Some(format!("{side} is not homogeneous of degree {degree}"));
            return report;
        }
    }
    match lhs.constant_ratio(&rhs) {
        Some(lambda) if !lambda.is_zero() => {
            let c = lambda.recip();
            report.status = classify(&c, &expected);
            report.constant = Some(c);
        }
        _ => report.witness = Some(non_proportional_witness(&lhs, &rhs)),
    }
    report
}

fn non_proportional_witness(lhs: &Poly, rhs: &Poly) -> String {
    let (Some((_, a)), Some((_, b))) = (lhs.leading_term(), rhs.leading_term()) else {
        return "one side is zero".into();
    };
    let diff = lhs - &rhs.scale(&(a / b));
    match diff.leading_term() {
        Some((m, _)) => {
            let mono = Poly::monomial(diff.context(), m.clone(), int(1));
            format!("monomial {mono} breaks proportionality")
        }
        None => "sides are proportional".into(),
    }
}

/// `c = 1 / (ψ(Inv(y)) φ(y))` must not depend on the sample point.
pub fn verify_ml_pointwise(
    space: &SubHankelSpace,
    us: WeightPair,
    samples: usize,
    seed: u64,
) -> Result<MLReport> {
    if us.is_degenerate() {
        return Err(ExactError::DegenerateWeight(format!(
            "us = {us}: the gradient map is a bijection only when s1 s2 != 0"
        )));
    }
    let r = space.r();
    let inv = space.invariants();
    let mut sampler = Sampler::new(seed);
    let guard = [&inv.p1, &inv.p2];
    let mut first: Option<(Vec<Rational>, Rational)> = None;
    let mut report = MLReport {
        r,
        status: Status::Pass,
        constant: None,
        expected: (us == WeightPair::new(1, r as i64 - 1)).then(|| expected_ml_constant(r)),
        samples,
        witness: None,
    };
    let mut taken = 0;
    while taken < samples {
        let y = sampler.point_where(space.dim(), |p| SubHankelSpace::nonzero_at(&guard, p));
        let z = inv_map(space, &inv, us, &y)?;
        if inv.q1.eval_slice(&z).is_zero() || inv.q2.eval_slice(&z).is_zero() {
            continue;
        }
        taken += 1;
        let c = (psi(&inv, us, &z) * phi(&inv, us, &y)).recip();
        match &first {
            None => first = Some((y, c)),
            Some((y0, c0)) if *c0 != c => {
                report.status = Status::Fail;
                report.witness = Some(format!(
                    "c = {c0} at ({}) but c = {c} at ({})",
                    join(y0),
                    join(&y)
                ));
                return Ok(report);
            }
            _ => {}
        }
    }
    let c = first.map(|(_, c)| c);
    if let (Some(c), Some(expected)) = (&c, &report.expected) {
        report.status = classify(c, expected);
    }
    report.constant = c;
    Ok(report)
}

fn join(v: &[Rational]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
