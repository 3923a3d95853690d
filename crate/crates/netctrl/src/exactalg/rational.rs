//! The rational scalar type and its parsing helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactError;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (the backing type maintains that invariant on construction).
pub type Rat = BigRational;

/// The rational `v/1`.
pub fn rint(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// The rational `p/q`.
///
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"7"`, `"-3/4"` or `"0.25"` into an exact rational.
///
/// Decimal strings are converted exactly (`"0.1"` becomes `1/10`, not a
/// float). Whitespace around the number is ignored.
pub fn parse_rat(text: &str) -> Result<Rat, ExactError> {
    let bad = |reason: &str| ExactError::BadRational {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad("empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| bad("numerator is not an integer"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| bad("denominator is not an integer"))?;
        if d.is_zero() {
            return Err(bad("denominator is zero"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad("integer part is invalid"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("fractional part must be digits"));
        }
        let digits: BigInt = frac.parse().expect("digit-checked");
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let mut value = Rat::from_integer(w.clone());
        let frac_part = Rat::new(digits, scale);
        if negative || w < BigInt::zero() {
            value -= frac_part;
        } else {
            value += frac_part;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| bad("not an integer"))?;
    Ok(Rat::from_integer(n))
}

/// Canonical display form: `"p/q"` in lowest terms, or `"p"` when integral.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
