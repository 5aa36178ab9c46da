//! Arbitrary-precision integers with an inline machine-word fast path.
//!
//! Almost every integer met by the normal-form kernels fits in an `i64`, but
//! nothing bounds intermediate growth in general. [`Int`] stores small values
//! inline and promotes to a heap-allocated [`BigInt`] on overflow, demoting
//! back as soon as a result fits again. The representation is canonical: a
//! value that fits in an `i64` is always stored inline, so derived equality
//! and hashing are sound.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(Box<BigInt>),
}

/// An exact integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Int(Repr);

impl Int {
    pub const ZERO: Int = Int(Repr::Small(0));
    pub const ONE: Int = Int(Repr::Small(1));

    #[inline]
    pub const fn small(v: i64) -> Int {
        Int(Repr::Small(v))
    }

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int(Repr::Small(v)),
            None => Int(Repr::Big(Box::new(b))),
        }
    }

    fn big(&self) -> Cow<'_, BigInt> {
        match &self.0 {
            Repr::Small(v) => Cow::Owned(BigInt::from(*v)),
            Repr::Big(b) => Cow::Borrowed(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        self.big().into_owned()
    }

    #[inline]
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.big().magnitude().cmp(other.big().magnitude()),
        }
    }

    /// Quotient rounded towards negative infinity. Panics on division by zero.
    pub fn div_floor(&self, other: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if !(*a == i64::MIN && *b == -1) {
                return Int::small(a.div_floor(b));
            }
        }
        Int::from_big(self.big().div_floor(&other.big()))
    }

    /// Remainder with the sign of the divisor. Panics on division by zero.
    pub fn mod_floor(&self, other: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if *b == -1 {
                return Int::ZERO;
            }
            return Int::small(a.mod_floor(b));
        }
        Int::from_big(self.big().mod_floor(&other.big()))
    }

    /// Quotient `q` minimising `|self - q*other|`.
    pub fn div_nearest(&self, other: &Int) -> Int {
        let q = self.div_floor(other);
        let r = self - &(&q * other);
        let twice = &r + &r;
        if twice.cmp_abs(other) == Ordering::Greater {
            q + Int::ONE
        } else {
            q
        }
    }

    /// Exact division; debug-asserts that `other` divides `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        debug_assert!(self.mod_floor(other).is_zero());
        self.div_floor(other)
    }

    /// True when `other` divides `self` (every integer divides 0, only 0 is divisible by 0).
    pub fn is_multiple_of(&self, other: &Int) -> bool {
        if other.is_zero() {
            self.is_zero()
        } else {
            self.mod_floor(other).is_zero()
        }
    }

    /// Non-negative greatest common divisor.
    pub fn gcd(&self, other: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            let g = a.unsigned_abs().gcd(&b.unsigned_abs());
            if let Ok(v) = i64::try_from(g) {
                return Int::small(v);
            }
        }
        Int::from_big(self.big().gcd(&other.big()))
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `self -= q * x`, the inner step of every row and column operation.
    #[inline]
    pub fn sub_mul_assign(&mut self, q: &Int, x: &Int) {
        if let (Repr::Small(s), Repr::Small(a), Repr::Small(b)) = (&mut self.0, &q.0, &x.0) {
            if let Some(v) = a.checked_mul(*b).and_then(|prod| s.checked_sub(prod)) {
                *s = v;
                return;
            }
        }
        let prod = q * x;
        *self -= &prod;
    }

    /// `self += q * x`.
    #[inline]
    pub fn add_mul_assign(&mut self, q: &Int, x: &Int) {
        if let (Repr::Small(s), Repr::Small(a), Repr::Small(b)) = (&mut self.0, &q.0, &x.0) {
            if let Some(v) = a.checked_mul(*b).and_then(|prod| s.checked_add(prod)) {
                *s = v;
                return;
            }
        }
        let prod = q * x;
        *self += &prod;
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {$(
        impl From<$t> for Int {
            fn from(v: $t) -> Int {
                match i64::try_from(v) {
                    Ok(s) => Int::small(s),
                    Err(_) => Int::from_big(BigInt::from(v)),
                }
            }
        }
    )*};
}
from_primitive!(i8, i16, i32, i64, u8, u16, u32, u64, usize, isize, i128, u128);

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.big().as_ref().cmp(other.big().as_ref()),
        }
    }
}

impl PartialEq<i64> for Int {
    fn eq(&self, other: &i64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Int::small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Int::from_big(-b.as_ref().clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Int> for &Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: &Int) -> Int {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::small(v);
                    }
                }
                Int::from_big(self.big().as_ref().$method(rhs.big().as_ref()))
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Int> for Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: &Int) -> Int {
                (&self).$method(rhs)
            }
        }
        impl $trait<Int> for &Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: Int) -> Int {
                self.$method(&rhs)
            }
        }
        impl $assign_trait<&Int> for Int {
            #[inline]
            fn $assign_method(&mut self, rhs: &Int) {
                if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        *a = v;
                        return;
                    }
                }
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_trait<Int> for Int {
            #[inline]
            fn $assign_method(&mut self, rhs: Int) {
                self.$assign_method(&rhs);
            }
        }
    };
}

binop!(Add, add, checked_add, AddAssign, add_assign);
binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Zero for Int {
    fn zero() -> Int {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Int {
        Int::ONE
    }
}

impl Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Int> for Int {
    fn sum<I: Iterator<Item = &'a Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Int {
    fn product<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ONE, |acc, x| acc * x)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer literal {0:?}")]
pub struct ParseIntError(pub String);

impl FromStr for Int {
    type Err = ParseIntError;
    fn from_str(s: &str) -> Result<Int, ParseIntError> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::small(v));
        }
        s.parse::<BigInt>()
            .map(Int::from_big)
            .map_err(|_| ParseIntError(s.to_string()))
    }
}

// Integers travel as decimal strings so that no consumer has to cope with
// fixed-width JSON numbers.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Int, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal integer string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_str(IntVisitor)
    }
}

/// Shorthand for building vectors of [`Int`] in tests and examples.
pub fn ints(values: &[i64]) -> Vec<Int> {
    values.iter().map(|&v| Int::small(v)).collect()
}
