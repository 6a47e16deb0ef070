use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Field, FieldTag};
use crate::error::{Error, Result};

/// Source of the modulus of a prime field.
pub trait Modulus: Send + Sync + 'static {
    fn modulus() -> u32;
}

/// Compile-time modulus. `P` must be a prime below 2^31.
#[derive(Debug)]
pub struct ConstModulus<const P: u32>;

impl<const P: u32> Modulus for ConstModulus<P> {
    #[inline]
    fn modulus() -> u32 {
        P
    }
}

static DYNAMIC_MODULUS: AtomicU32 = AtomicU32::new(0);

/// Process-wide modulus chosen at runtime (e.g. from a command line flag).
///
/// It is set once; setting it again to a different prime fails so values
/// created under one modulus are never reinterpreted under another.
#[derive(Debug)]
pub struct DynamicModulus;

impl DynamicModulus {
    pub fn set(p: u32) -> Result<()> {
        if !is_prime(p as u64) || p as u64 >= 1 << 31 {
            return Err(Error::BadModulus(p as u64));
        }
        match DYNAMIC_MODULUS.compare_exchange(0, p, Ordering::SeqCst, Ordering::SeqCst) {
            Ok(_) => Ok(()),
            Err(q) if q == p => Ok(()),
            Err(q) => Err(Error::Internal(format!(
                "dynamic modulus already set to {q}, cannot switch to {p}"
            ))),
        }
    }

    pub fn get() -> Option<u32> {
        match DYNAMIC_MODULUS.load(Ordering::SeqCst) {
            0 => None,
            p => Some(p),
        }
    }
}

impl Modulus for DynamicModulus {
    #[inline]
    fn modulus() -> u32 {
        let p = DYNAMIC_MODULUS.load(Ordering::Relaxed);
        assert!(p != 0, "DynamicModulus used before DynamicModulus::set");
        p
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Residue modulo a prime, stored canonically in `[0, p)`.
pub struct Fp<M: Modulus> {
    value: u32,
    _m: PhantomData<M>,
}

impl<M: Modulus> Fp<M> {
    pub fn new(v: u64) -> Self {
        Self::raw((v % M::modulus() as u64) as u32)
    }

    #[inline]
    fn raw(value: u32) -> Self {
        Fp {
            value,
            _m: PhantomData,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus() -> u32 {
        M::modulus()
    }

    fn pow(&self, mut e: u64) -> Self {
        let p = M::modulus() as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Self::raw(acc as u32)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from(M::modulus());
        Self::raw(v.mod_floor(&p).to_u32().expect("residue fits u32"))
    }
}

impl<M: Modulus> Clone for Fp<M> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<M: Modulus> Copy for Fp<M> {}

impl<M: Modulus> PartialEq for Fp<M> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<M: Modulus> Eq for Fp<M> {}

impl<M: Modulus> PartialOrd for Fp<M> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<M: Modulus> Ord for Fp<M> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value.cmp(&other.value)
    }
}

impl<M: Modulus> Hash for Fp<M> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state)
    }
}

impl<M: Modulus> fmt::Debug for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, M::modulus())
    }
}

impl<M: Modulus> fmt::Display for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<M: Modulus> Add for Fp<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.value as u64 + rhs.value as u64;
        let p = M::modulus() as u64;
        Self::raw(if s >= p { s - p } else { s } as u32)
    }
}

impl<M: Modulus> Sub for Fp<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<M: Modulus> Neg for Fp<M> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.value == 0 {
            self
        } else {
            Self::raw(M::modulus() - self.value)
        }
    }
}

impl<M: Modulus> Mul for Fp<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::raw((self.value as u64 * rhs.value as u64 % M::modulus() as u64) as u32)
    }
}

impl<M: Modulus> Div for Fp<M> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<M: Modulus> Zero for Fp<M> {
    fn zero() -> Self {
        Self::raw(0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl<M: Modulus> One for Fp<M> {
    fn one() -> Self {
        Self::raw(1 % M::modulus())
    }
}

impl<M: Modulus> Field for Fp<M> {
    fn tag() -> FieldTag {
        FieldTag::PrimeField(M::modulus())
    }

    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(M::modulus() as u64 - 2))
        }
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let d = Self::from_bigint(den);
        let inv = d
            .inverse()
            .ok_or(Error::NonInvertibleDenominator(M::modulus()))?;
        Ok(Self::from_bigint(num) * inv)
    }

    fn from_i64(v: i64) -> Self {
        Self::raw(v.rem_euclid(M::modulus() as i64) as u32)
    }

    fn is_negative(&self) -> bool {
        false
    }
}
