//! Exact rational arithmetic helpers.
//!
//! Every quantity that crosses a module boundary is a [`Rational`]
//! (arbitrary-precision, always reduced, positive denominator). There is no
//! floating point anywhere in a verification path.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render as `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// Exact integer square root: `Some(r)` iff `n = r*r` with `r >= 0`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trip() {
        for (n, d, s) in [(1, 2, "1/2"), (-1, 3, "-1/3"), (4, 1, "4"), (6, 4, "3/2")] {
            let r = ratio(n, d);
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(s).unwrap(), r);
        }
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(225)), Some(BigInt::from(15)));
        assert_eq!(exact_sqrt(&BigInt::from(226)), None);
        assert_eq!(exact_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
    }
}
