//! Text grammar for polynomials.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ('/' integer)? | ident ('^' integer)?
//! ident  := [a-z][a-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. `Display` on [`Poly`] emits this grammar.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::context::VarContext;
use super::error::{ExactError, Result};
use super::monomial::Monomial;
use super::poly::Poly;
use super::rational::Rational;

/// Parse `text` over a fixed context; unknown names are a context error.
pub fn parse_poly(text: &str, ctx: &VarContext) -> Result<Poly> {
    let terms = Parser::new(text).parse()?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let mut exps = vec![0u32; ctx.len()];
        for (name, e, _) in &term.vars {
            exps[ctx.require(name)?] += e;
        }
        out.push((Monomial::from_exponents(exps), term.coeff));
    }
    Ok(Poly::from_terms(ctx, out))
}

/// Parse `text`, building the context from the variables that occur,
/// ordered by (alphabetic prefix, numeric suffix, remainder).
pub fn parse_poly_infer(text: &str) -> Result<Poly> {
    let terms = Parser::new(text).parse()?;
    let mut names: Vec<String> = Vec::new();
    for term in &terms {
        for (name, _, _) in &term.vars {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
    }
    names.sort_by_key(|n| natural_key(n));
    let ctx = VarContext::new(&names)?;
    parse_poly(text, &ctx)
}

fn natural_key(name: &str) -> (String, u64, String) {
    let prefix: String = name
        .chars()
        .take_while(|c| c.is_ascii_lowercase())
        .collect();
    let rest = &name[prefix.len()..];
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let tail = rest[digits.len()..].to_string();
    (prefix, digits.parse().unwrap_or(0), tail)
}

struct Term {
    coeff: Rational,
    vars: Vec<(String, u32, usize)>,
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.char_indices().collect(),
            pos: 0,
        }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ExactError {
        let byte = self
            .chars
            .get(at)
            .map(|&(b, _)| b)
            .unwrap_or(self.src.len());
        let before = &self.src[..byte];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ExactError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn parse(mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            None => return Err(self.error(self.pos, "empty expression")),
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(self.error(self.pos, format!("unexpected `{c}`"))),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        let mut term = Term {
            coeff: Rational::one(),
            vars: Vec::new(),
        };
        loop {
            self.factor(&mut term)?;
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(term);
            }
        }
    }

    fn factor(&mut self, term: &mut Term) -> Result<()> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error(at, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                term.coeff *= value;
                Ok(())
            }
            Some(c) if c.is_ascii_lowercase() => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.get(self.pos) {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let mut exp = 1u32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let at = self.pos;
                    exp = self
                        .integer()?
                        .try_into()
                        .map_err(|_| self.error(at, "exponent out of range"))?;
                }
                term.vars.push((name, exp, start));
                Ok(())
            }
            Some(c) => Err(self.error(
                self.pos,
                format!("expected a number or variable, found `{c}`"),
            )),
            None => Err(self.error(self.pos, "unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                digits.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.error(start, "expected an integer"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn parses_two_by_two_determinant() {
        let ctx = VarContext::indexed("y", 3);
        let p = parse_poly("y1*y3 - y2^2", &ctx).unwrap();
        let y = |i| Poly::var_at(&ctx, i);
        assert_eq!(p, y(0) * y(2) - y(1).pow(2));
    }

    #[test]
    fn rational_coefficient() {
        let ctx = VarContext::new(["s"]).unwrap();
        let p = parse_poly("3/2*s + 1", &ctx).unwrap();
        let s = Poly::var(&ctx, "s").unwrap();
        assert_eq!(p, s.scale(&frac(3, 2)) + Poly::one(&ctx));
    }

    #[test]
    fn stray_operator_is_located() {
        let ctx = VarContext::indexed("y", 2);
        match parse_poly("y1 +* y2", &ctx) {
            Err(ExactError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly("y1\n  + y2 y1", &ctx) {
            Err(ExactError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_is_context_error() {
        let ctx = VarContext::indexed("y", 2);
        assert!(matches!(
            parse_poly("y3", &ctx),
            Err(ExactError::Context(_))
        ));
    }

    #[test]
    fn inferred_context_uses_natural_order() {
        let p = parse_poly_infer("y10*y2 + y1").unwrap();
        assert_eq!(p.context().names(), &["y1", "y2", "y10"]);
    }

    #[test]
    fn repeated_factors_and_cancellation() {
        let ctx = VarContext::indexed("x", 1);
        let p = parse_poly("2*x1*x1 - x1^2 - x1^2", &ctx).unwrap();
        assert!(p.is_zero());
        assert_eq!(parse_poly("-0", &ctx).unwrap(), Poly::zero(&ctx));
    }
}
