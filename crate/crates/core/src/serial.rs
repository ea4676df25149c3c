//! Lossless JSON encodings: rationals as `"num/den"` strings, integers as JSON
//! numbers only when they fit in 53 bits.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::Value;

use crate::error::{Error, Result};

const MAX_SAFE: u64 = (1 << 53) - 1;

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let bad = |e: String| Error::Parse(format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let den: BigInt = b.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if den == BigInt::from(0) {
                return Err(bad("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.trim().parse().map_err(|e| bad(format!("{e}")))?;
            Ok(BigRational::from_integer(num))
        }
    }
}

pub fn int_to_json(x: &BigInt) -> Value {
    match x.abs().to_u64() {
        Some(a) if a <= MAX_SAFE => Value::from(x.to_i64().expect("fits in 53 bits")),
        _ => Value::String(x.to_string()),
    }
}

pub fn natural_to_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(a) if a <= MAX_SAFE => Value::from(a),
        _ => Value::String(x.to_string()),
    }
}

/// Integers go through [`int_to_json`]; anything else becomes `"num/den"`.
pub fn rational_to_json(q: &BigRational) -> Value {
    if q.denom().is_one() {
        int_to_json(q.numer())
    } else {
        Value::String(rational_to_string(q))
    }
}
