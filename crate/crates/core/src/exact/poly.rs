//! Sparse multivariate polynomials over the rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::context::VarContext;
use super::error::{ExactError, Result};
use super::monomial::Monomial;
use super::rational::Rational;

/// A polynomial with exact rational coefficients over a [`VarContext`].
///
/// Terms live in a map keyed by graded-lex monomials and never hold a zero
/// coefficient, so two equal polynomials over the same context have
/// identical term lists.
#[derive(Clone)]
pub struct Poly {
    ctx: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ctx: &VarContext) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn var(ctx: &VarContext, name: &str) -> Result<Self> {
        Ok(Self::var_at(ctx, ctx.require(name)?))
    }

    pub fn var_at(ctx: &VarContext, index: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), index, 1), Rational::one())
    }

    pub fn monomial(ctx: &VarContext, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ctx.len());
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(
        ctx: &VarContext,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ctx.len());
            accumulate(&mut p.terms, m, c);
        }
        p
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(index))
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn uses_variable(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(index) > 0)
    }

    /// Names of the variables that occur with a positive exponent.
    pub fn used_variables(&self) -> Vec<String> {
        (0..self.ctx.len())
            .filter(|&i| self.uses_variable(i))
            .map(|i| self.ctx.name(i).to_string())
            .collect()
    }

    /// Re-express over `target`. Fails if a variable in use is missing there.
    pub fn to_context(&self, target: &VarContext) -> Result<Poly> {
        if self.ctx.same(target) {
            return Ok(self.clone());
        }
        let mut map = vec![usize::MAX; self.ctx.len()];
        for i in 0..self.ctx.len() {
            match target.index_of(self.ctx.name(i)) {
                Some(j) => map[i] = j,
                None if self.uses_variable(i) => {
                    return Err(ExactError::Context(format!(
                        "variable `{}` is not in the target context",
                        self.ctx.name(i)
                    )))
                }
                None => {}
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exps[map[i]] = e;
                }
            }
            (Monomial::from_exponents(exps), c.clone())
        });
        Ok(Poly {
            ctx: target.clone(),
            terms: terms.collect(),
        })
    }

    fn widen(&self, target: &VarContext) -> Poly {
        self.to_context(target)
            .expect("union context contains every variable")
    }

    /// Both operands over a shared context (name-union when they differ).
    pub fn aligned(&self, other: &Poly) -> (Poly, Poly) {
        let u = self.ctx.union(&other.ctx);
        (self.widen(&u), other.widen(&u))
    }

    fn zip_with(&self, other: &Poly, op: impl FnOnce(&Poly, &Poly) -> Poly) -> Poly {
        if self.ctx.same(&other.ctx) {
            op(self, other)
        } else {
            let (a, b) = self.aligned(other);
            op(&a, &b)
        }
    }

    fn add_same(&self, other: &Poly, sign: bool) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if sign { c.clone() } else { -c };
            accumulate(&mut terms, m.clone(), c);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    fn mul_same(&self, other: &Poly) -> Poly {
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        }
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: &str) -> Result<Poly> {
        Ok(self.derivative_at(self.ctx.require(var)?))
    }

    pub fn derivative_at(&self, index: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(index);
            (e > 0).then(|| (m.lowered(index), c * Rational::from_integer(e.into())))
        });
        // lowering one exponent is injective, so no collisions
        Poly {
            ctx: self.ctx.clone(),
            terms: terms.collect(),
        }
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.ctx.len()).map(|i| self.derivative_at(i)).collect()
    }

    /// Exact quotient `self / divisor`, or [`ExactError::NotDivisible`].
    ///
    /// Multivariate division by leading terms: when `divisor` divides `self`
    /// the leading monomial of the remainder is always divisible by the
    /// divisor's leading monomial, so the first failure proves there is no
    /// polynomial quotient.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly> {
        if divisor.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if !self.ctx.same(&divisor.ctx) {
            let (a, b) = self.aligned(divisor);
            return a.exact_divide(&b);
        }
        let (lead_m, lead_c) = divisor.leading_term().unwrap();
        let lead_inv = lead_c.recip();
        let mut rem = self.terms.clone();
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            if !lead_m.divides(m) {
                return Err(ExactError::NotDivisible {
                    witness: render_monomial(&self.ctx, m),
                });
            }
            let qm = lead_m.quotient_of(m);
            let qc = c * &lead_inv;
            let m = m.clone();
            rem.remove(&m);
            // the leading product cancels exactly; skip it
            for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                accumulate(&mut rem, dm.mul(&qm), -(dc * &qc));
            }
            quotient.insert(qm, qc);
        }
        Ok(Poly {
            ctx: self.ctx.clone(),
            terms: quotient,
        })
    }

    /// Simultaneous substitution `var -> poly` for every binding.
    pub fn substitute(&self, bindings: &[(&str, Poly)]) -> Result<Poly> {
        let mut ctx = self.ctx.clone();
        for (_, p) in bindings {
            ctx = ctx.union(p.context());
        }
        let mut slot: Vec<Option<Poly>> = vec![None; self.ctx.len()];
        for (name, p) in bindings {
            let i = self.ctx.require(name)?;
            slot[i] = Some(p.widen(&ctx));
        }
        let map = self.ctx.embedding_into(&ctx)?;
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut result = Poly::zero(&ctx);
        for (m, c) in &self.terms {
            let mut free = vec![0u32; ctx.len()];
            let mut factor = Poly::one(&ctx);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &slot[i] {
                    None => free[map[i]] += e,
                    Some(p) => {
                        let pw = cache.entry((i, e)).or_insert_with(|| p.pow(e));
                        factor = &factor * &*pw;
                    }
                }
            }
            result += &factor.mul_monomial(&Monomial::from_exponents(free), c);
        }
        Ok(result)
    }

    /// Substitute polynomials for variables by position (same context).
    pub fn compose(&self, values: &[Poly]) -> Poly {
        assert_eq!(values.len(), self.ctx.len());
        let target = values
            .first()
            .map(|p| p.ctx.clone())
            .unwrap_or_else(VarContext::empty);
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut result = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut factor = Poly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let pw = cache.entry((i, e)).or_insert_with(|| values[i].pow(e));
                    factor = &factor * &*pw;
                }
            }
            result += &factor;
        }
        result
    }

    /// Evaluate at a point given by name. Every variable in use must be bound.
    pub fn evaluate(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.ctx.len());
        for i in 0..self.ctx.len() {
            match point.get(self.ctx.name(i)) {
                Some(v) => values.push(v.clone()),
                None if self.uses_variable(i) => {
                    return Err(ExactError::Context(format!(
                        "variable `{}` is unbound",
                        self.ctx.name(i)
                    )))
                }
                None => values.push(Rational::zero()),
            }
        }
        Ok(self.eval_slice(&values))
    }

    /// Evaluate with values given in context order.
    pub fn eval_slice(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.ctx.len());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::Pow::pow(&values[i], e);
                }
            }
            total += t;
        }
        total
    }

    /// Rename variables, keeping positions; `names` must be a valid context.
    pub fn renamed(&self, ctx: &VarContext) -> Poly {
        assert_eq!(ctx.len(), self.ctx.len());
        Poly {
            ctx: ctx.clone(),
            terms: self.terms.clone(),
        }
    }

    /// `Some(c)` when `self = c * other` for a rational constant `c`.
    pub fn constant_ratio(&self, other: &Poly) -> Option<Rational> {
        if other.is_zero() {
            return None;
        }
        let (a, b) = self.aligned(other);
        if a.terms.len() != b.terms.len() {
            return None;
        }
        let (bm, bc) = b.leading_term().unwrap();
        let ratio = a.coefficient(bm) / bc;
        if ratio.is_zero() {
            return None;
        }
        (a == b.scale(&ratio)).then_some(ratio)
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn render_monomial(ctx: &VarContext, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ctx.name(i).to_string()
            } else {
                format!("{}^{}", ctx.name(i), e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        if self.ctx.same(&other.ctx) {
            self.terms == other.terms
        } else {
            let (a, b) = self.aligned(other);
            a.terms == b.terms
        }
    }
}

impl Eq for Poly {}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", render_monomial(&self.ctx, m))?;
            } else {
                write!(f, "{abs}*{}", render_monomial(&self.ctx, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if !self.ctx.same(&rhs.ctx) {
            *self = &*self + rhs;
            return;
        }
        for (m, c) in &rhs.terms {
            accumulate(&mut self.terms, m.clone(), c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.zip_with(rhs, $body)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_same(b, true));
forward_binop!(Sub, sub, |a, b| a.add_same(b, false));
forward_binop!(Mul, mul, |a, b| a.mul_same(b));

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    fn ctx() -> VarContext {
        VarContext::indexed("y", 3)
    }

    fn y(i: usize) -> Poly {
        Poly::var_at(&ctx(), i - 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = (y(1) + y(2)) * (y(1) - y(2));
        assert_eq!(p, y(1).pow(2) - y(2).pow(2));
        assert_eq!(p.to_string(), "y1^2 - y2^2");
    }

    #[test]
    fn square_of_two_by_two_hankel_determinant() {
        let p1 = y(1) * y(3) - y(2).pow(2);
        let expected =
            y(1).pow(2) * y(3).pow(2) - (y(1) * y(2).pow(2) * y(3)).scale(&int(2)) + y(2).pow(4);
        assert_eq!(p1.pow(2), expected);
    }

    #[test]
    fn derivative_examples() {
        let p1 = y(1) * y(3) - y(2).pow(2);
        assert_eq!(p1.derivative("y2").unwrap(), y(2).scale(&int(-2)));
        assert!(Poly::constant(&ctx(), int(7))
            .derivative("y1")
            .unwrap()
            .is_zero());
        assert!(matches!(p1.derivative("q"), Err(ExactError::Context(_))));
    }

    #[test]
    fn exact_divide_examples() {
        let p = y(1).pow(2) - y(2).pow(2);
        assert_eq!(p.exact_divide(&(y(1) - y(2))).unwrap(), y(1) + y(2));
        let q = y(1) + Poly::one(&ctx());
        assert!(matches!(
            q.exact_divide(&y(2)),
            Err(ExactError::NotDivisible { .. })
        ));
        assert_eq!(
            q.exact_divide(&Poly::zero(&ctx())),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn substitute_and_evaluate() {
        let sq = y(1).pow(2);
        let shifted = sq.substitute(&[("y1", y(1) + y(2))]).unwrap();
        assert_eq!(
            shifted,
            y(1).pow(2) + (y(1) * y(2)).scale(&int(2)) + y(2).pow(2)
        );
        // simultaneous, not sequential
        let swap = (y(1) - y(2))
            .substitute(&[("y1", y(2)), ("y2", y(1))])
            .unwrap();
        assert_eq!(swap, y(2) - y(1));

        let p1 = y(1) * y(3) - y(2).pow(2);
        let point: HashMap<String, Rational> = [("y1", int(1)), ("y2", int(0)), ("y3", int(1))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(p1.evaluate(&point).unwrap(), int(1));

        let partial: HashMap<String, Rational> = [("y1".to_string(), int(1))].into_iter().collect();
        assert!(matches!(p1.evaluate(&partial), Err(ExactError::Context(_))));
    }

    #[test]
    fn contexts_merge_by_name() {
        let s = Poly::var(&VarContext::new(["s"]).unwrap(), "s").unwrap();
        let p = &y(1) * &s + s.scale(&frac(3, 2));
        assert_eq!(p.context().names(), &["y1", "y2", "y3", "s"]);
        assert_eq!(p.to_string(), "y1*s + 3/2*s");
        // equality across contexts is by value
        let q = Poly::var(&VarContext::new(["y2", "y1"]).unwrap(), "y1").unwrap();
        assert_eq!(q, y(1));
    }

    #[test]
    fn display_signs_and_constants() {
        let p = y(1).scale(&int(-1)) + Poly::constant(&ctx(), frac(-3, 2));
        assert_eq!(p.to_string(), "-y1 - 3/2");
        assert_eq!(Poly::zero(&ctx()).to_string(), "0");
    }

    #[test]
    fn constant_ratio_detection() {
        let p = y(1) * y(3) - y(2).pow(2);
        assert_eq!(p.scale(&frac(-1, 4)).constant_ratio(&p), Some(frac(-1, 4)));
        assert_eq!(y(1).constant_ratio(&y(2)), None);
    }
}
