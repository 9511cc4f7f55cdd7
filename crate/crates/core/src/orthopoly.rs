//! Two-term recurrent polynomial families and their (sub-)Hankel determinants.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::exact::rational::{int, pow_i64};
use crate::exact::{parse_poly, Poly, PolyMatrix, Rational, VarContext};
use crate::report::Status;

/// A sequence `a_n = p·a_{n-1} + q·a_{n-2}` with given `a_0`, `a_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    GFib,
    GLuc,
    NGLuc,
    ChebT,
    ChebU,
    ChebV,
    /// Fibonacci polynomials with `F_0 = F_1 = 1`.
    FibOnes,
    /// Fibonacci polynomials with `F_0 = 0`, `F_1 = 1`.
    Fib,
    Luc,
    /// `(x^n - y^n)/(x - y)`
    QuotForm,
    /// `x^n + y^n`
    SumForm,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::GFib,
        Family::GLuc,
        Family::NGLuc,
        Family::ChebT,
        Family::ChebU,
        Family::ChebV,
        Family::FibOnes,
        Family::Fib,
        Family::Luc,
        Family::QuotForm,
        Family::SumForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::GFib => "gfib",
            Family::GLuc => "gluc",
            Family::NGLuc => "ngluc",
            Family::ChebT => "chebt",
            Family::ChebU => "chebu",
            Family::ChebV => "chebv",
            Family::FibOnes => "fib",
            Family::Fib => "fib-std",
            Family::Luc => "luc",
            Family::QuotForm => "quot",
            Family::SumForm => "sum",
        }
    }

    pub fn context(self) -> VarContext {
        let names: &[&str] = match self {
            Family::GFib | Family::GLuc | Family::NGLuc => &["s", "t"],
            Family::QuotForm | Family::SumForm => &["x", "y"],
            _ => &["x"],
        };
        VarContext::new(names).expect("valid names")
    }

    /// `(a_0, a_1, p, q)` as text over [`context`](Self::context).
    fn recurrence(self) -> [&'static str; 4] {
        match self {
            Family::GFib => ["0", "1", "s", "t"],
            Family::GLuc => ["2", "s", "s", "t"],
            Family::NGLuc => ["1", "s", "s", "2*t"],
            Family::ChebT => ["1", "x", "2*x", "-1"],
            Family::ChebU => ["1", "2*x", "2*x", "-1"],
            Family::ChebV => ["1", "2*x - 1", "2*x", "-1"],
            Family::FibOnes => ["1", "1", "x", "1"],
            Family::Fib => ["0", "1", "x", "1"],
            Family::Luc => ["2", "x", "x", "1"],
            Family::QuotForm => ["0", "1", "x + y", "-x*y"],
            Family::SumForm => ["2", "x + y", "x + y", "-x*y"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                format!("unknown family `{s}` (known: {})", known.join(", "))
            })
    }
}

/// Memoized terms of one family.
#[derive(Clone, Debug)]
pub struct PolySequence {
    family: Family,
    ctx: VarContext,
    p: Poly,
    q: Poly,
    terms: Vec<Poly>,
}

impl PolySequence {
    pub fn new(family: Family) -> Self {
        let ctx = family.context();
        let [a0, a1, p, q] = family
            .recurrence()
            .map(|t| parse_poly(t, &ctx).expect("static text"));
        PolySequence {
            family,
            ctx,
            p,
            q,
            terms: vec![a0, a1],
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    /// `p`, `q` of the recurrence.
    pub fn coefficients(&self) -> (&Poly, &Poly) {
        (&self.p, &self.q)
    }

    pub fn term(&mut self, n: usize) -> Poly {
        while self.terms.len() <= n {
            let k = self.terms.len();
            let next = &(&self.p * &self.terms[k - 1]) + &(&self.q * &self.terms[k - 2]);
            self.terms.push(next);
        }
        self.terms[n].clone()
    }

    /// `det(a_{n+i+j})_{0<=i,j<r}`
    pub fn hankel_det(&mut self, r: usize, n: usize) -> Poly {
        self.det(r, n, false)
    }

    /// Same with entries `i + j > r` (0-indexed) set to zero.
    pub fn subhankel_det(&mut self, r: usize, n: usize) -> Poly {
        self.det(r, n, true)
    }

    fn det(&mut self, r: usize, n: usize, sub: bool) -> Poly {
        let entries: Vec<Poly> = (0..2 * r - 1).map(|k| self.term(n + k)).collect();
        let zero = Poly::zero(&self.ctx);
        PolyMatrix::from_fn(r, r, |i, j| {
            if sub && i + j > r {
                zero.clone()
            } else {
                entries[i + j].clone()
            }
        })
        .determinant()
        .expect("square matrix")
    }
}

/// A closed form for the sub-Hankel determinant, one per stated identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    GFib,
    GLuc,
    NGLuc,
    ChebT,
    ChebU,
    ChebV,
    /// Fibonacci with the stated initial values `F_0 = F_1 = 1`.
    FibOnes,
    /// Fibonacci with `F_n = GFib_n(x, 1)`.
    Fib,
    Luc,
    QuotForm,
    /// `(x^N y^N)^{r-2}` as printed.
    SumFormProduct,
    /// `(x^N + y^N)^{r-2}`.
    SumFormSum,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::GFib,
        Identity::GLuc,
        Identity::NGLuc,
        Identity::ChebT,
        Identity::ChebU,
        Identity::ChebV,
        Identity::FibOnes,
        Identity::Fib,
        Identity::Luc,
        Identity::QuotForm,
        Identity::SumFormProduct,
        Identity::SumFormSum,
    ];

    /// Identities obtained by specializing the generalized Fibonacci and Lucas ones.
    pub const SPECIALIZED: [Identity; 9] = [
        Identity::ChebT,
        Identity::ChebU,
        Identity::ChebV,
        Identity::FibOnes,
        Identity::Fib,
        Identity::Luc,
        Identity::QuotForm,
        Identity::SumFormProduct,
        Identity::SumFormSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::SumFormProduct => "sum",
            Identity::SumFormSum => "sum-plus",
            other => other.family().name(),
        }
    }

    pub fn family(self) -> Family {
        match self {
            Identity::GFib => Family::GFib,
            Identity::GLuc => Family::GLuc,
            Identity::NGLuc => Family::NGLuc,
            Identity::ChebT => Family::ChebT,
            Identity::ChebU => Family::ChebU,
            Identity::ChebV => Family::ChebV,
            Identity::FibOnes => Family::FibOnes,
            Identity::Fib => Family::Fib,
            Identity::Luc => Family::Luc,
            Identity::QuotForm => Family::QuotForm,
            Identity::SumFormProduct | Identity::SumFormSum => Family::SumForm,
        }
    }

    /// Predicted value of the sub-Hankel determinant.
    pub fn rhs(self, seq: &mut PolySequence, r: usize, n: usize) -> Poly {
        let ctx = seq.context().clone();
        let lit = |t: &str| parse_poly(t, &ctx).expect("static text");
        let big = n + r + 1;
        let top = seq.term(big).pow(r as u32 - 2);
        let tri = r * (r + 1) / 2;
        let sign = |e: usize| Poly::constant(&ctx, int(if e % 2 == 0 { 1 } else { -1 }));
        let xy_n = || lit("x*y").pow(n as u32);
        match self {
            Identity::GFib => &(&sign(tri) * &lit("-t").pow(n as u32)) * &top,
            Identity::GLuc => &(&sign(tri + 1) * &lit("s^2 + 4*t")) * &top,
            Identity::NGLuc => {
                let c = &(&sign(n + 1 + tri) * &lit("t").pow(n as u32 + 1))
                    * &Poly::constant(&ctx, pow_i64(&int(2), n as i64));
                &(&c * &lit("s - t + 2")) * &top
            }
            Identity::ChebT => &lit("1 - x^2") * &top,
            Identity::ChebU => top,
            Identity::ChebV => &lit("-2*x + 2") * &top,
            Identity::FibOnes | Identity::Fib => &sign(n + tri + 1) * &top,
            Identity::Luc => &(&sign(n + tri + 1) * &lit("x^2 + 4")) * &top,
            Identity::QuotForm => &(&sign(tri) * &xy_n()) * &top,
            Identity::SumFormProduct | Identity::SumFormSum => {
                let (x, y) = (lit("x").pow(big as u32), lit("y").pow(big as u32));
                let inner = if self == Identity::SumFormProduct {
                    &x * &y
                } else {
                    &x + &y
                };
                let head = &(&sign(tri + 1) * &xy_n()) * &lit("x - y").pow(2);
                &head * &inner.pow(r as u32 - 2)
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Identity::ALL.iter().map(|f| f.name()).collect();
                format!("unknown family `{s}` (known: {})", known.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SHStatus {
    Equal,
    ConstantRatio,
    Mismatch,
}

impl SHStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SHStatus::Equal => "equal",
            SHStatus::ConstantRatio => "constant-ratio",
            SHStatus::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SHIdentityReport {
    pub identity: Identity,
    pub r: usize,
    pub n: usize,
    pub lhs: Poly,
    pub rhs: Poly,
    pub status: SHStatus,
    /// `lhs / rhs` when it is a rational constant.
    pub ratio: Option<Rational>,
    /// `lhs / rhs` when it is a non-constant polynomial.
    pub quotient: Option<Poly>,
    pub witness: Option<String>,
    /// Hankel determinant vanishing, checked for `r >= 3`.
    pub hankel_vanishes: Option<bool>,
}

impl SHIdentityReport {
    pub fn status(&self) -> Status {
        match self.status {
            SHStatus::Equal => Status::Pass,
            SHStatus::ConstantRatio => Status::ConstantRatio,
            SHStatus::Mismatch => Status::Fail,
        }
    }
}

pub fn verify_identity(identity: Identity, r: usize, n: usize) -> SHIdentityReport {
    let mut seq = PolySequence::new(identity.family());
    verify_with(&mut seq, identity, r, n)
}

/// As [`verify_identity`], reusing the sequence cache.
pub fn verify_with(
    seq: &mut PolySequence,
    identity: Identity,
    r: usize,
    n: usize,
) -> SHIdentityReport {
    assert_eq!(seq.family(), identity.family());
    assert!(r >= 2, "r must be at least 2");
    let lhs = seq.subhankel_det(r, n);
    let rhs = identity.rhs(seq, r, n);
    let hankel_vanishes = (r >= 3).then(|| seq.hankel_det(r, n).is_zero());
    let mut report = SHIdentityReport {
        identity,
        r,
        n,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        status: SHStatus::Mismatch,
        ratio: None,
        quotient: None,
        witness: None,
        hankel_vanishes,
    };
    if lhs == rhs {
        report.status = SHStatus::Equal;
        report.ratio = Some(Rational::one());
        return report;
    }
    if rhs.is_zero() {
        report.witness = Some("predicted value is zero".into());
        return report;
    }
    if let Some(c) = lhs.constant_ratio(&rhs) {
        report.status = SHStatus::ConstantRatio;
        report.ratio = Some(c);
        return report;
    }
    if let Ok(q) = lhs.exact_divide(&rhs) {
        report.quotient = Some(q);
    }
    let (lead, _) = lhs
        .leading_term()
        .or_else(|| rhs.leading_term())
        .expect("one side is nonzero");
    let mono = Poly::monomial(lhs.context(), lead.clone(), Rational::one());
    report.witness = Some(format!(
        "coefficient of {mono}: {} vs {}",
        lhs.coefficient(lead),
        rhs.coefficient(lead)
    ));
    report
}

/// Checks over `r` and `n` for one identity; the sequence cache is shared.
pub fn verify_grid(
    identity: Identity,
    rs: impl IntoIterator<Item = usize>,
    ns: impl IntoIterator<Item = usize> + Clone,
) -> Vec<SHIdentityReport> {
    let mut seq = PolySequence::new(identity.family());
    let mut out = Vec::new();
    for r in rs {
        for n in ns.clone() {
            out.push(verify_with(&mut seq, identity, r, n));
        }
    }
    out
}

/// `Some(c)` when every report has the same rational ratio `c`.
pub fn common_ratio(reports: &[SHIdentityReport]) -> Option<Rational> {
    let first = reports.first()?.ratio.clone()?;
    reports
        .iter()
        .all(|rep| rep.ratio.as_ref() == Some(&first))
        .then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: Family, t: &str) -> Poly {
        parse_poly(t, &f.context()).unwrap()
    }

    #[test]
    fn first_terms() {
        assert_eq!(
            PolySequence::new(Family::ChebT).term(3),
            poly(Family::ChebT, "4*x^3 - 3*x")
        );
        assert_eq!(
            PolySequence::new(Family::GLuc).term(2),
            poly(Family::GLuc, "s^2 + 2*t")
        );
        assert_eq!(
            PolySequence::new(Family::GFib).term(4),
            poly(Family::GFib, "s^3 + 2*s*t")
        );
    }

    #[test]
    fn small_determinants() {
        let mut g = PolySequence::new(Family::GFib);
        assert_eq!(g.subhankel_det(3, 0), g.term(4));
        assert_eq!(g.subhankel_det(2, 1), poly(Family::GFib, "t"));
        for r in 3..=5 {
            for n in 0..=3 {
                assert!(g.hankel_det(r, n).is_zero());
            }
        }
    }

    #[test]
    fn eq_gfib_is_exact() {
        for r in 2..=3 {
            for n in 0..=4 {
                let rep = verify_identity(Identity::GFib, r, n);
                assert_eq!(rep.status, SHStatus::Equal, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn chebyshev_t_at_r2_has_ratio_minus_one() {
        let rep = verify_identity(Identity::ChebT, 2, 0);
        assert_eq!(rep.status, SHStatus::ConstantRatio);
        assert_eq!(rep.ratio, Some(int(-1)));
        assert_eq!(
            verify_identity(Identity::ChebT, 3, 0).status,
            SHStatus::Equal
        );
    }

    #[test]
    fn gluc_ratio_depends_on_n() {
        let rep = verify_identity(Identity::GLuc, 3, 2);
        assert_eq!(rep.status, SHStatus::Mismatch);
        assert_eq!(rep.quotient, Some(poly(Family::GLuc, "t^2")));
    }

    #[test]
    fn ngluc_misses_by_a_factor() {
        for n in 0..=2 {
            let rep = verify_identity(Identity::NGLuc, 3, n);
            assert_eq!(rep.status, SHStatus::Mismatch);
            let scaled = &rep.lhs * &poly(Family::NGLuc, "s - t + 2");
            assert_eq!(scaled, rep.rhs.scale(&int(2)), "n={n}");
        }
    }

    #[test]
    fn recurrences_hold_to_forty() {
        for f in Family::ALL {
            let mut seq = PolySequence::new(f);
            let (p, q) = {
                let (p, q) = seq.coefficients();
                (p.clone(), q.clone())
            };
            for n in 2..=40 {
                let expect = &(&p * &seq.term(n - 1)) + &(&q * &seq.term(n - 2));
                assert_eq!(seq.term(n), expect, "{f} n={n}");
            }
        }
    }

    #[test]
    fn specializations() {
        let x_ctx = Family::ChebT.context();
        let spec = |p: Poly, s: &str, t: &str, ctx: &VarContext| {
            let s = parse_poly(s, ctx).unwrap();
            let t = parse_poly(t, ctx).unwrap();
            p.substitute(&[("s", s), ("t", t)])
                .unwrap()
                .to_context(ctx)
                .unwrap()
        };
        let mut gfib = PolySequence::new(Family::GFib);
        let mut gluc = PolySequence::new(Family::GLuc);
        let mut cheb_t = PolySequence::new(Family::ChebT);
        let mut cheb_u = PolySequence::new(Family::ChebU);
        let mut fib = PolySequence::new(Family::Fib);
        let mut luc = PolySequence::new(Family::Luc);
        let mut quot = PolySequence::new(Family::QuotForm);
        let mut sum = PolySequence::new(Family::SumForm);
        let xy = Family::QuotForm.context();
        for n in 0..=12 {
            assert_eq!(
                cheb_t.term(n).scale(&int(2)),
                spec(gluc.term(n), "2*x", "-1", &x_ctx)
            );
            assert_eq!(cheb_u.term(n), spec(gfib.term(n + 1), "2*x", "-1", &x_ctx));
            assert_eq!(fib.term(n), spec(gfib.term(n), "x", "1", &x_ctx));
            assert_eq!(luc.term(n), spec(gluc.term(n), "x", "1", &x_ctx));
            assert_eq!(quot.term(n), spec(gfib.term(n), "x + y", "-x*y", &xy));
            assert_eq!(sum.term(n), spec(gluc.term(n), "x + y", "-x*y", &xy));
            let x = parse_poly("x", &xy).unwrap();
            let y = parse_poly("y", &xy).unwrap();
            let closed = (&x.pow(n as u32) - &y.pow(n as u32))
                .exact_divide(&(&x - &y))
                .unwrap();
            assert_eq!(quot.term(n), closed);
            assert_eq!(sum.term(n), &x.pow(n as u32) + &y.pow(n as u32));
        }
    }

    #[test]
    fn specialized_ratios_are_n_independent() {
        for id in [
            Identity::ChebT,
            Identity::ChebU,
            Identity::ChebV,
            Identity::Fib,
            Identity::Luc,
            Identity::QuotForm,
            Identity::SumFormSum,
        ] {
            for r in 2..=5 {
                let reps = verify_grid(id, [r], 0..=3);
                let c = common_ratio(&reps);
                assert!(
                    c.is_some(),
                    "{id} r={r}: {:?}",
                    reps.iter().map(|x| x.ratio.clone()).collect::<Vec<_>>()
                );
            }
        }
    }
}
