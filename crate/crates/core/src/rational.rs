//! Exact rational scalars and the handful of integer helpers the rest of the
//! crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Representative of `q + ℤ` in the half-open interval `(0, 1]`.
pub fn class_rep(q: &Rational) -> Rational {
    let f = q - q.floor();
    if f.is_zero() {
        Rational::one()
    } else {
        f
    }
}

/// `true` iff `a - b` is an integer.
pub fn congruent(a: &Rational, b: &Rational) -> bool {
    is_integer(&(a - b))
}

/// Parses `a` or `a/b` (b > 0). Leading `-` allowed on the numerator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().ok()?;
    let den: BigInt = d.parse().ok()?;
    if !den.is_positive() || d.starts_with('+') || d.starts_with('-') {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Exact binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Exact `base^exp` for a possibly negative exponent.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// `Some(r)` when `q = r^k` for a rational `r >= 0`. Only nonnegative `q` are
/// considered; callers handle signs.
pub fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().nth_root(k);
    let d = q.denom().nth_root(k);
    if num_traits::pow(n.clone(), k as usize) == *q.numer()
        && num_traits::pow(d.clone(), k as usize) == *q.denom()
    {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_rep_lands_in_half_open_unit_interval() {
        assert_eq!(class_rep(&int(0)), int(1));
        assert_eq!(class_rep(&int(-3)), int(1));
        assert_eq!(class_rep(&rat(-1, 3)), rat(2, 3));
        assert_eq!(class_rep(&rat(7, 2)), rat(1, 2));
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4"), Some(int(4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(30, 15), 155117520);
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_root(&int(27), 3), Some(int(3)));
        assert_eq!(exact_root(&rat(16, 81), 4), Some(rat(2, 3)));
        assert_eq!(exact_root(&int(432), 6), None);
    }
}
