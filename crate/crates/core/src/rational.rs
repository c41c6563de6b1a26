//! Exact rational scalars and the polynomial extension of binomial coefficients.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// `C(a, b) = a(a-1)...(a-b+1)/b!`, valid for every integer `a` including negatives.
pub fn binomial(a: i128, b: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..b as i128 {
        num *= a - j;
        den *= j + 1;
    }
    num / den
}

/// Combinatorial binomial: zero whenever `a < b` or `a < 0`.
pub fn choose(a: i128, b: i128) -> i128 {
    if b < 0 || a < b || a < 0 {
        return 0;
    }
    binomial(a, b as u32)
}

/// Converts to an integer or reports what was being computed.
pub fn to_integer(value: Rational, what: &str) -> Result<i64> {
    if !value.is_integer() {
        return Err(Error::ModelInconsistent(format!(
            "{what} evaluated to non-integer {value}"
        )));
    }
    value
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::ModelInconsistent(format!("{what} overflows i64")))
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}
