//! Exact rationals. Values are always kept in lowest terms with a positive
//! denominator (guaranteed by `num_rational::BigRational`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `n`, `-n` or `p/q`. The result is reduced; a zero denominator is an error.
pub fn parse(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let bad = || format!("invalid rational `{text}`");
    match text.split_once('/') {
        None => BigInt::from_str(text).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Lowest-terms text form: `p` for integers, `p/q` otherwise.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

/// Smallest integer `>= value`.
pub fn ceil_int(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// `base^exp` with `0^0 = 1`.
pub fn pow_int(base: i64, exp: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(base), exp as usize))
}

/// Serde adapters serializing rationals as lowest-terms strings.
pub mod serde_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        use crate::rational::Rational;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&crate::rational::format(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts.iter().map(|t| crate::rational::parse(t).map_err(D::Error::custom)).collect()
        }
    }
}
