//! Helpers on top of [`BigRational`].
//!
//! Every coefficient in the crate is a reduced fraction with a positive
//! denominator; `num-rational` maintains that normal form after each
//! operation, so structural equality is value equality.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// `base^e` for a signed integer exponent. Panics on `0^negative`.
pub fn pow_i64(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        Pow::pow(base, e as u64)
    } else {
        assert!(!base.is_zero(), "zero raised to a negative power");
        Pow::pow(&base.recip(), e.unsigned_abs())
    }
}

/// Exact `n`-th root of a rational, when it exists.
pub fn nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && n % 2 == 0 {
        return None;
    }
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let r = v.abs().nth_root(n);
        if Pow::pow(&r, n) == v.abs() {
            Some(if v.sign() == Sign::Minus { -r } else { r })
        } else {
            None
        }
    };
    let num = root_int(q.numer())?;
    let den = root_int(q.denom())?;
    Some(Rational::new(num, den))
}

/// `q^(num/den)` when the result is rational.
pub fn rational_power(q: &Rational, num: i64, den: u32) -> Option<Rational> {
    let root = nth_root(q, den)?;
    if root.is_zero() && num < 0 {
        return None;
    }
    Some(pow_i64(&root, num))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// 2-adic valuation of `r!`, i.e. `sum_{k>=1} floor(r / 2^k)`.
pub fn two_adic_factorial(r: u32) -> u32 {
    let mut total = 0;
    let mut p = 2u64;
    while p <= r as u64 {
        total += (r as u64 / p) as u32;
        p *= 2;
    }
    total
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn lcm_of_denominators<'a>(coeffs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    coeffs
        .into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_adic_values() {
        assert_eq!(two_adic_factorial(2), 1);
        assert_eq!(two_adic_factorial(3), 1);
        assert_eq!(two_adic_factorial(4), 3);
        assert_eq!(two_adic_factorial(6), 4);
        assert_eq!(two_adic_factorial(8), 7);
        for r in 1..20u32 {
            let f = factorial(r);
            let mut v = 0;
            let mut m = f.clone();
            while (&m % 2u32).is_zero() {
                m /= 2u32;
                v += 1;
            }
            assert_eq!(two_adic_factorial(r), v, "r = {r}");
        }
    }

    #[test]
    fn roots_and_powers() {
        assert_eq!(nth_root(&frac(8, 27), 3), Some(frac(2, 3)));
        assert_eq!(nth_root(&frac(-8, 27), 3), Some(frac(-2, 3)));
        assert_eq!(nth_root(&int(2), 2), None);
        assert_eq!(nth_root(&int(-4), 2), None);
        assert_eq!(rational_power(&int(4), 3, 2), Some(int(8)));
        assert_eq!(rational_power(&int(4), -1, 2), Some(frac(1, 2)));
        assert_eq!(pow_i64(&frac(2, 3), -2), frac(9, 4));
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rational("3/6"), Some(frac(1, 2)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
