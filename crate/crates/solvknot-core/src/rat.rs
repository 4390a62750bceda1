//! Exact rational scalars.
//!
//! Everything downstream works over `Rat` (arbitrary-precision rationals);
//! no floating point is used anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d` (normalized).
pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical display form `p/q` with positive denominator, `p` for integers.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q`. Denominator must be nonzero.
pub fn rat_parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// True if `r` is an integer.
pub fn is_int(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Extract an i64 from an integer rational (panics on overflow/non-integer).
pub fn to_i64(r: &Rat) -> i64 {
    assert!(is_int(r), "expected integer rational, got {}", r);
    let n = r.numer();
    i64::try_from(n.clone()).expect("rational out of i64 range")
}

/// Floor of a rational as a BigInt.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().numer().clone()
}

/// Reduce into the half-open unit interval `[0,1)`.
pub fn frac_part(r: &Rat) -> Rat {
    r - Rat::from_integer(rat_floor(r))
}

/// |r| as a rational.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3", "-4", "1/2", "-7/3", "0"] {
            let r = rat_parse(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
        // normalization
        assert_eq!(rat_str(&rat_parse("2/4").unwrap()), "1/2");
        assert_eq!(rat_str(&rat_parse("3/-6").unwrap()), "-1/2");
        assert!(rat_parse("1/0").is_none());
    }

    #[test]
    fn frac_part_lands_in_unit_interval() {
        assert_eq!(frac_part(&ratio(-1, 4)), ratio(3, 4));
        assert_eq!(frac_part(&ratio(9, 4)), ratio(1, 4));
        assert_eq!(frac_part(&rat(-3)), rat(0));
    }
}
