//! Exact coefficient fields and integer helpers.
//!
//! Every algorithm in the crate is generic over [`Field`]. Two families are
//! provided: arbitrary-precision rationals ([`Rational`]) and prime fields
//! ([`Fp`]) whose modulus is either a const parameter or set once at runtime.

mod prime;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use prime::{is_prime, ConstModulus, DynamicModulus, Fp, Modulus};

pub type Rational = BigRational;

/// Which field a coefficient lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rationals,
    PrimeField(u32),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "QQ"),
            FieldTag::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "QQ" | "Q" | "rationals" => return Ok(FieldTag::Rationals),
            _ => {}
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{t}` (expected QQ or GF(p))")))?;
        let p: u64 = inner
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus `{inner}`")))?;
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(FieldTag::PrimeField(p as u32))
    }
}

/// An exact field.
///
/// Values are immutable; arithmetic is by value and never rounds. Division by
/// zero panics, use [`Field::inverse`] where a zero divisor is possible.
/// `Ord` is a fixed total order on representatives, used only to sort.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Ord
    + std::hash::Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn tag() -> FieldTag;

    fn inverse(&self) -> Option<Self>;

    /// The image of `num / den`.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self>;

    fn from_i64(v: i64) -> Self;

    /// Whether the canonical text form starts with a minus sign.
    fn is_negative(&self) -> bool;

    fn parse_scalar(text: &str) -> Result<Self> {
        let (num, den) = parse_ratio_parts(text)?;
        Self::from_ratio(&num, &den)
    }
}

impl Field for BigRational {
    fn tag() -> FieldTag {
        FieldTag::Rationals
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Splits `±p` or `±p/q` into numerator and denominator without reducing.
fn parse_ratio_parts(text: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Parse(format!("malformed scalar `{text}`"));
    let (neg, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let digits = |s: &str| -> Result<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    let (num, den) = match body.split_once('/') {
        Some((p, q)) => (digits(p)?, digits(q)?),
        None => (digits(body)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok((if neg { -num } else { num }, den))
}

/// Parses a scalar in the text format `±p` or `±p/q`.
pub fn scalar_parse<F: Field>(text: &str) -> Result<F> {
    F::parse_scalar(text)
}

/// gcd of the absolute values of the entries; 0 for the zero vector.
pub fn gcd_vector(v: &[i64]) -> u64 {
    v.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
}

pub(crate) fn gcd_bigints<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    v.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Scales a rational vector by a positive factor to the primitive integer
/// vector on the same ray. The zero vector maps to itself.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = gcd_bigints(&ints);
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Rational `a/b` from two integers.
pub fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn rational_vector(v: &[i64]) -> Vec<Rational> {
    v.iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect()
}

/// `(a,b/c,...)`.
pub fn format_rational_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
