use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{FormalElement, LinExpS, PowerProduct, S};
use crate::exact::{ExactError, Monomial, Poly, Result, VarContext};

/// `Σ c_α ∂^α` with polynomial coefficients.
#[derive(Clone, Debug)]
pub struct DiffOperator {
    nvars: usize,
    terms: Vec<(Poly, Vec<u32>)>,
}

impl DiffOperator {
    pub fn new(nvars: usize, terms: Vec<(Poly, Vec<u32>)>) -> Self {
        assert!(terms.iter().all(|(_, a)| a.len() == nvars));
        DiffOperator { nvars, terms }
    }

    /// Reads variable `i` of `op` as `∂/∂x_i`, by position.
    pub fn from_symbol(op: &Poly) -> Self {
        let nvars = op.context().len();
        let ctx = VarContext::empty();
        let terms = op
            .terms()
            .map(|(m, c)| (Poly::constant(&ctx, c.clone()), m.exponents().to_vec()))
            .collect();
        DiffOperator { nvars, terms }
    }

    /// `Σ x_i ∂_i` over `ctx`.
    pub fn euler(ctx: &VarContext) -> Self {
        let n = ctx.len();
        let terms = (0..n)
            .map(|i| {
                (
                    Poly::var_at(ctx, i),
                    Monomial::var(n, i, 1).exponents().to_vec(),
                )
            })
            .collect();
        DiffOperator { nvars: n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Poly, Vec<u32>)] {
        &self.terms
    }

    pub fn add(&self, other: &DiffOperator) -> DiffOperator {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        DiffOperator {
            nvars: self.nvars,
            terms,
        }
    }
}

/// Applies `op` to `element`; partial derivatives are shared between terms.
pub fn apply_operator(op: &DiffOperator, element: &FormalElement) -> FormalElement {
    assert_eq!(op.nvars, element.attached().base_context().len());
    let mut memo: HashMap<Vec<u32>, FormalElement> = HashMap::new();
    let mut total = FormalElement::zero(element.attached());
    for (c, alpha) in &op.terms {
        if c.is_zero() {
            continue;
        }
        let d = derive(element, alpha, &mut memo);
        let term = match c.as_constant() {
            Some(k) if k.is_one() => d,
            _ => d.mul_poly(c),
        };
        total = total.add(&term);
    }
    total
}

fn derive(
    base: &FormalElement,
    alpha: &[u32],
    memo: &mut HashMap<Vec<u32>, FormalElement>,
) -> FormalElement {
    let Some(j) = alpha.iter().rposition(|&a| a > 0) else {
        return base.clone();
    };
    if let Some(hit) = memo.get(alpha) {
        return hit.clone();
    }
    let mut prev = alpha.to_vec();
    prev[j] -= 1;
    let out = derive(base, &prev, memo).differentiate(j);
    memo.insert(alpha.to_vec(), out.clone());
    out
}

/// `result = b(s) · target` with `b` free of the base variables.
pub fn extract_b(result: &FormalElement, target: &PowerProduct) -> Result<Poly> {
    let attached = result.attached();
    if !attached.same_bases(target) {
        return Err(ExactError::NotBIdentity("different bases".into()));
    }
    let s_ctx = attached.s_context();
    let lifted = attached.lifted();
    let mut up = result.numerator().clone();
    let mut down = Poly::one(s_ctx);
    for (i, (e, t)) in attached
        .exponents()
        .iter()
        .zip(target.exponents())
        .enumerate()
    {
        let delta: LinExpS = e - t;
        if !delta.is_constant() || !delta.b.is_integer() {
            return Err(ExactError::NotBIdentity(format!(
                "exponent of base {i} differs from the target by {delta}"
            )));
        }
        let shift = delta.b.to_integer();
        let shift: i64 = (&shift).try_into().map_err(|_| {
            ExactError::NotBIdentity(format!("exponent shift of base {i} is too large"))
        })?;
        let net = shift - result.denominator()[i] as i64;
        if net > 0 {
            up = &up * &lifted[i].pow(net as u32);
        } else if net < 0 {
            down = &down * &lifted[i].pow((-net) as u32);
        }
    }
    let b = up.exact_divide(&down).map_err(|e| match e {
        ExactError::NotDivisible { witness } => ExactError::NotBIdentity(format!(
            "numerator is not a multiple of the base powers (remainder term {witness})"
        )),
        other => other,
    })?;
    let s_only = VarContext::new([S]).expect("valid name");
    b.to_context(&s_only).map_err(|_| {
        let stray = b
            .used_variables()
            .into_iter()
            .find(|v| v != S)
            .unwrap_or_default();
        ExactError::NotBIdentity(format!("quotient depends on {stray}: {b}"))
    })
}

/// Operator symbol, base `K`, and the predicted `b(s)`.
#[derive(Clone, Debug)]
pub struct BFunctionProblem {
    pub operator: Poly,
    /// `K = ∏ B_i^{e_i}`, exponents given as constants.
    pub base: PowerProduct,
    pub predicted: Poly,
}

impl BFunctionProblem {
    /// `K^{s+1}` and `K^s`.
    pub fn powers(&self) -> (PowerProduct, PowerProduct) {
        let lift = |shift: bool| {
            self.base
                .exponents()
                .iter()
                .map(|e| {
                    assert!(e.is_constant(), "base exponents must be constants");
                    LinExpS::new(e.b.clone(), if shift { e.b.clone() } else { Zero::zero() })
                })
                .collect::<Vec<_>>()
        };
        (
            self.base.with_exponents(lift(true)),
            self.base.with_exponents(lift(false)),
        )
    }

    /// Runs the operator on `K^{s+1}` and reads off `b(s)`.
    pub fn solve(&self) -> Result<Poly> {
        let (shifted, target) = self.powers();
        let op = DiffOperator::from_symbol(&self.operator);
        let result = apply_operator(&op, &FormalElement::unit(&shifted));
        extract_b(&result, &target)
    }
}

/// `s + c`
pub(crate) fn s_plus(c: &crate::exact::Rational) -> Poly {
    let ctx = s_context();
    &Poly::var(&ctx, S).expect("s in context") + &Poly::constant(&ctx, c.clone())
}

pub(crate) fn s_context() -> VarContext {
    VarContext::new([S]).expect("valid name")
}

#[cfg(test)]
pub(crate) fn s_scalar(c: i64) -> Poly {
    Poly::constant(&s_context(), crate::exact::rational::int(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;
    use crate::exact::rational::int;

    fn r2_problem() -> BFunctionProblem {
        let y = VarContext::indexed("y", 3);
        let z = VarContext::indexed("z", 3);
        let p1 = parse_poly("y1*y3 - y2^2", &y).unwrap();
        BFunctionProblem {
            operator: parse_poly("z1*z3 - 1/4*z2^2", &z).unwrap(),
            base: PowerProduct::new(&y, vec![(p1, LinExpS::constant(int(1)))]),
            predicted: parse_poly("s^2 + 5/2*s + 3/2", &s_context()).unwrap(),
        }
    }

    #[test]
    fn symmetric_2x2_b_function() {
        let p = r2_problem();
        assert_eq!(p.solve().unwrap(), p.predicted);
    }

    #[test]
    fn identity_operator() {
        let p = r2_problem();
        let (shifted, _) = p.powers();
        let one = parse_poly("1", &VarContext::indexed("z", 3)).unwrap();
        let e = FormalElement::unit(&shifted);
        let out = apply_operator(&DiffOperator::from_symbol(&one), &e);
        assert!(out.equals(&e));
        assert_eq!(extract_b(&out, &shifted).unwrap(), s_scalar(1));
    }

    #[test]
    fn stray_factor_is_not_a_b_identity() {
        let p = r2_problem();
        let (shifted, target) = p.powers();
        let y1 = Poly::var_at(shifted.s_context(), 0);
        let e = FormalElement::new(y1, vec![0], &shifted).unwrap();
        assert!(matches!(
            extract_b(&e, &target),
            Err(ExactError::NotBIdentity(_))
        ));
    }

    #[test]
    fn linear_in_the_operator() {
        let p = r2_problem();
        let (shifted, _) = p.powers();
        let z = p.operator.context().clone();
        let a = DiffOperator::from_symbol(&parse_poly("z1*z3", &z).unwrap());
        let b = DiffOperator::from_symbol(&parse_poly("2*z2^2 + z1", &z).unwrap());
        let e = FormalElement::unit(&shifted);
        let sum = apply_operator(&a.add(&b), &e);
        let parts = apply_operator(&a, &e).add(&apply_operator(&b, &e));
        assert!(sum.equals(&parts));
    }
}
