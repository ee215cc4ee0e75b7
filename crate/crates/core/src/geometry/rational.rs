//! Exact rationals parsed from and printed as decimal literals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not an exact decimal or fraction literal: `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `-12`, `0.125`, `+3.`, `.5` or `p/q` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_owned());
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Shortest exact decimal when the denominator divides a power of ten,
/// `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    let mut den = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    if places == 0 {
        return r.numer().to_string();
    }
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{whole}.{frac}")
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A rational `r` with `r*r <= sq` (and `r*r < sq` when `strict`), close to
/// `sqrt(sq)` and with a short decimal expansion. `sq` must be positive.
pub fn sqrt_lower_bound(sq: &Rational, strict: bool) -> Rational {
    debug_assert!(sq.is_positive());
    let ok = |r: &Rational| {
        let r2 = r * r;
        if strict {
            &r2 < sq
        } else {
            &r2 <= sq
        }
    };
    let approx = to_f64(sq).sqrt();
    if approx.is_finite() && approx > 0.0 {
        let places = (6 - approx.log10().floor() as i64).clamp(0, 300) as usize;
        let scale = num_traits::pow(BigInt::from(10), places);
        let scaled = (approx * 10f64.powi(places as i32)).floor();
        if let Some(n) = num_traits::FromPrimitive::from_f64(scaled) {
            let mut cand = Rational::new(n, scale);
            for _ in 0..8 {
                if cand.is_positive() && ok(&cand) {
                    return cand;
                }
                cand *= ratio(9, 10);
            }
        }
    }
    // sqrt(q) >= min(q, 1) for every q > 0
    let floor = if sq < &Rational::one() {
        sq.clone()
    } else {
        Rational::one()
    };
    if strict {
        floor / int(2)
    } else {
        floor
    }
}

/// `2^j` for the integer `j` with `2^j <= r < 2^(j+1)`; `r` must be positive.
pub fn pow2_floor(r: &Rational) -> Rational {
    debug_assert!(r.is_positive());
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let two = int(2);
    let mut p = if shift >= 0 {
        Rational::from_integer(num_traits::pow(BigInt::from(2), shift as usize))
    } else {
        Rational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(2), (-shift) as usize),
        )
    };
    while &p > r {
        p /= &two;
    }
    while &(&p * &two) <= r {
        p *= &two;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2_floor(&ratio(3, 1)), int(2));
        assert_eq!(pow2_floor(&int(4)), int(4));
        assert_eq!(pow2_floor(&ratio(1, 3)), ratio(1, 4));
        assert_eq!(pow2_floor(&ratio(1, 8)), ratio(1, 8));
        assert_eq!(pow2_floor(&ratio(255, 256)), ratio(1, 2));
    }

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("2/6").unwrap(), ratio(1, 3));
        for bad in ["", "-", "1e3", "1.2.3", "abc", "1/0", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&ratio(1, 10)), "0.1");
        assert_eq!(format_rational(&ratio(-5, 4)), "-1.25");
        assert_eq!(format_rational(&ratio(-1, 20)), "-0.05");
        assert_eq!(format_rational(&int(-7)), "-7");
        assert_eq!(format_rational(&ratio(1, 3)), "1/3");
        assert_eq!(format_rational(&ratio(-2, 3)), "-2/3");
    }

    #[test]
    fn sqrt_bounds() {
        for (n, d) in [(2, 1), (4, 1), (1, 1000000), (16, 5), (10i64.pow(12), 1)] {
            let q = ratio(n, d);
            let r = sqrt_lower_bound(&q, false);
            assert!(&r * &r <= q);
            assert!((to_f64(&r) - to_f64(&q).sqrt()).abs() < 1e-4 * to_f64(&q).sqrt());
            let s = sqrt_lower_bound(&q, true);
            assert!(&s * &s < q);
        }
        assert_eq!(sqrt_lower_bound(&int(4), false), int(2));
    }

    proptest::proptest! {
        #[test]
        fn format_parse_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..5000) {
            let r = ratio(n, d);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
