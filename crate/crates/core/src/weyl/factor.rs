use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::operator::s_plus;
use crate::exact::rational::lcm_of_denominators;
use crate::exact::{Poly, Rational};

/// `lead · ∏ (s - root_i) · rest`, `rest` monic without rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub lead: Rational,
    /// Sorted descending, so factors print as `s + 1/3`, `s + 2/3`, ….
    pub roots: Vec<Rational>,
    pub rest: Poly,
}

/// Splits off every rational root of a univariate polynomial in `s`.
pub fn factor_linear(p: &Poly) -> FactoredPoly {
    assert!(p.context().len() <= 1, "univariate polynomial expected");
    let Some((_, lead)) = p.leading_term() else {
        return FactoredPoly {
            lead: Rational::zero(),
            roots: Vec::new(),
            rest: Poly::one(p.context()),
        };
    };
    let lead = lead.clone();
    let mut rest = p.scale(&lead.recip());
    let mut roots = Vec::new();
    'outer: while rest.total_degree().unwrap_or(0) > 0 {
        for cand in candidates(&rest) {
            if rest.eval_slice(std::slice::from_ref(&cand)).is_zero() {
                let lin = s_plus(&-cand.clone())
                    .to_context(rest.context())
                    .expect("same variable");
                rest = rest.exact_divide(&lin).expect("root implies divisibility");
                roots.push(cand);
                continue 'outer;
            }
        }
        break;
    }
    roots.sort_by(|a, b| b.cmp(a));
    FactoredPoly { lead, roots, rest }
}

/// `±p/q` with `p | a_0`, `q | a_n` after clearing denominators.
fn candidates(p: &Poly) -> Vec<Rational> {
    let scale = Rational::from_integer(lcm_of_denominators(p.terms().map(|(_, c)| c)));
    let q = p.scale(&scale);
    let deg = q.total_degree().unwrap_or(0);
    let coeff = |d: u32| -> BigInt {
        q.terms()
            .find(|(m, _)| m.degree() == d)
            .map(|(_, c)| c.to_integer())
            .unwrap_or_default()
    };
    let a0 = coeff(0);
    if a0.is_zero() {
        return vec![Rational::zero()];
    }
    let (Some(nums), Some(dens)) = (divisors(&a0), divisors(&coeff(deg))) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for n in &nums {
        for d in &dens {
            for sign in [1i64, -1] {
                let c = Rational::new(BigInt::from(*n) * sign, BigInt::from(*d));
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.lead.is_one() || (self.roots.is_empty() && self.rest.is_constant()) {
            parts.push(if self.lead == -Rational::one() && !self.roots.is_empty() {
                "-1".to_string()
            } else {
                self.lead.to_string()
            });
        }
        for r in &self.roots {
            let neg = -r.clone();
            parts.push(if r.is_zero() {
                "s".to_string()
            } else if neg.is_positive() {
                format!("(s + {neg})")
            } else {
                format!("(s - {r})")
            });
        }
        if !self.rest.is_constant() {
            parts.push(format!("({})", self.rest));
        }
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly_infer;
    use crate::exact::rational::frac;

    #[test]
    fn conjecture_shape() {
        // (s+1/3)(s+2/3)(s+1)(s+5/2)
        let p = parse_poly_infer("s^4 + 9/2*s^3 + 56/9*s^2 + 59/18*s + 5/9").unwrap();
        let f = factor_linear(&p);
        assert_eq!(
            f.roots,
            vec![frac(-1, 3), frac(-2, 3), frac(-1, 1), frac(-5, 2)]
        );
        assert_eq!(f.to_string(), "(s + 1/3)*(s + 2/3)*(s + 1)*(s + 5/2)");
    }

    #[test]
    fn sign_and_irreducible_rest() {
        let p = parse_poly_infer("-s^3 - s^2 - 2*s - 2").unwrap();
        let f = factor_linear(&p);
        assert_eq!(f.lead, frac(-1, 1));
        assert_eq!(f.to_string(), "-1*(s + 1)*(s^2 + 2)");
    }
}
