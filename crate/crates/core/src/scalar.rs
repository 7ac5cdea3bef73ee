//! Scalar traits.
//!
//! Character arithmetic only needs a commutative ring ([`Ring`]), so integer
//! characters and rational characters share one code path. Linear algebra,
//! cone membership and the simplex solver need an exact ordered field
//! ([`Scalar`]). Floating point types are deliberately not `Scalar`: every
//! verdict produced by this crate has to be bit-exact.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Commutative ring with negation. Implemented for every signed integer and
/// every ratio type.
pub trait Ring: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
}

macro_rules! ring_for_int {
    ($($t:ty)*) => ($(
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
    )*)
}

ring_for_int!(i32 i64 i128);

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl<T> Ring for Ratio<T>
where
    T: Clone + Debug + Integer + Signed + FromPrimitive,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer out of range for scalar"))
    }
}

/// Exact ordered field.
pub trait Scalar: Ring + Ord + Signed + Display + Send + Sync + 'static {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn is_integer(&self) -> bool;

    /// Lossless widening to an arbitrary precision rational.
    fn to_big(&self) -> BigRational;

    /// Narrowing from an arbitrary precision rational; `None` on overflow.
    fn from_big(v: &BigRational) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Debug
        + Display
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Into<BigInt>
        + Send
        + Sync
        + 'static,
    BigInt: TryInto<T>,
{
    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn to_big(&self) -> BigRational {
        BigRational::new(self.numer().clone().into(), self.denom().clone().into())
    }

    fn from_big(v: &BigRational) -> Option<Self> {
        let n: T = v.numer().clone().try_into().ok()?;
        let d: T = v.denom().clone().try_into().ok()?;
        Some(Ratio::new(n, d))
    }
}

/// Converts an integer-like ring element into a scalar.
pub fn lift<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

/// `"num/den"` rendering used by every serialized rational.
pub fn ratio_string<S: Scalar>(v: &S) -> String {
    let b = v.to_big();
    format!("{}/{}", b.numer(), b.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_ratio<S: Scalar>(text: &str) -> Option<S> {
    let text = text.trim();
    let big = match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(text.parse().ok()?),
    };
    S::from_big(&big)
}

/// Least common multiple of the denominators, as a scalar.
pub fn denominator_lcm<S: Scalar>(values: &[S]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.to_big().denom()))
}

/// Scales a rational vector to the primitive integer vector pointing in the
/// same direction. The zero vector is returned unchanged.
pub fn primitive_direction<S: Scalar>(values: &[S]) -> Vec<BigInt> {
    let l = denominator_lcm(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| {
            let b = v.to_big() * BigRational::from_integer(l.clone());
            b.to_integer()
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn ratio_text_round_trip() {
        let q: BigRational = parse_ratio("-6/4").unwrap();
        assert_eq!(ratio_string(&q), "-3/2");
        let z: Rational64 = parse_ratio("7").unwrap();
        assert_eq!(ratio_string(&z), "7/1");
        assert!(parse_ratio::<BigRational>("1/0").is_none());
        assert!(parse_ratio::<BigRational>("x").is_none());
    }

    #[test]
    fn primitive_direction_clears_denominators() {
        let v: Vec<BigRational> = ["1/2", "-3/4", "0"]
            .iter()
            .map(|s| parse_ratio(s).unwrap())
            .collect();
        let p = primitive_direction(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }

    #[test]
    fn narrow_overflow_is_reported() {
        let huge = BigRational::from_integer(BigInt::from(i64::MAX) * 4);
        assert!(Rational64::from_big(&huge).is_none());
    }
}
