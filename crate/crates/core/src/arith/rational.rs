use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Number of bits of `|n|`, with `bitlength(0) = 0`.
pub fn bitlength(n: &BigInt) -> u64 {
    n.bits()
}

/// Height of a rational: `max(bitlength(|num|), bitlength(den))` of the
/// reduced fraction. `h(0) = 0`, `h(1) = 1`.
pub fn rat_bitsize(q: &Rational) -> u64 {
    if q.is_zero() {
        return 0;
    }
    bitlength(q.numer()).max(bitlength(q.denom()))
}

/// Parses `"a"` or `"a/b"` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = |msg: &str| Error::Malformed(format!("rational {s:?}: {msg}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    if den.is_negative() {
        return Ok(Rational::new(-num, -den));
    }
    Ok(Rational::new(num, den))
}
