//! Exact rational values. All index comparisons are exact; decimals exist
//! only for display.

use num::bigint::BigInt;
use num::{BigRational, Signed, Zero};
use serde::Serialize;

/// Exact value of the connective eccentricity index.
pub type Cei = BigRational;

/// `a / b` as an exact rational.
pub fn ratio(a: usize, b: usize) -> Cei {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Serialized form of a rational: numerator and denominator as decimal
/// strings (report values stay exact regardless of magnitude).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl RationalRepr {
    pub fn of(x: &Cei) -> Self {
        RationalRepr {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
    }
}

/// Renders `x` as `p/q`.
pub fn fraction_string(x: &Cei) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Renders a positive rational to 12 significant digits, round half up.
pub fn decimal_12(x: &Cei) -> String {
    const SIG: u32 = 12;
    if x.is_zero() {
        return "0.00000000000".to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let x = x.abs();
    let int_part = x.numer() / x.denom();
    let int_digits = if int_part.is_zero() {
        1
    } else {
        int_part.to_string().len() as u32
    };
    let frac_digits = SIG.saturating_sub(int_digits);
    // round(p * 10^f / q) half up, in integers
    let pow = BigInt::from(10u32).pow(frac_digits);
    let scaled = (x.numer() * &pow * 2u32 + x.denom()) / (x.denom() * 2u32);
    let digits = scaled.to_string();
    if frac_digits == 0 {
        return format!("{sign}{digits}");
    }
    let f = frac_digits as usize;
    let (head, tail) = if digits.len() > f {
        (digits[..digits.len() - f].to_string(), digits[digits.len() - f..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", digits, width = f))
    };
    format!("{sign}{head}.{tail}")
}
