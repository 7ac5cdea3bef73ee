use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_ratio, ratio_string, Ring, Scalar};

/// A character (a_1, …, a_n | b) of the diagonal torus of GSp(2n).
///
/// `T` is `i64` for lattice characters and a rational type for points of the
/// rational character space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character<T> {
    a: Vec<T>,
    b: T,
}

impl<T: Ring> Character<T> {
    pub fn new(a: Vec<T>, b: T) -> Self {
        assert!(!a.is_empty(), "character of rank 0");
        Character { a, b }
    }

    pub fn zero(n: usize) -> Self {
        Character::new(vec![T::zero(); n], T::zero())
    }

    /// e_k, with 1-based `k` and b = 0.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut c = Self::zero(n);
        c.a[k - 1] = T::one();
        c
    }

    /// The multiplier direction (0, …, 0 | 1).
    pub fn b_unit(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.b = T::one();
        c
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    /// Coordinates (a_1, …, a_n, b).
    pub fn coords(&self) -> Vec<T> {
        let mut v = self.a.clone();
        v.push(self.b.clone());
        v
    }

    pub fn from_coords(mut v: Vec<T>) -> Self {
        let b = v.pop().expect("empty coordinate vector");
        Character::new(v, b)
    }

    pub fn scale(&self, k: &T) -> Self {
        Character::new(
            self.a.iter().map(|x| x.clone() * k.clone()).collect(),
            self.b.clone() * k.clone(),
        )
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Character<U> {
        Character::new(self.a.iter().map(&f).collect(), f(&self.b))
    }

    pub(crate) fn check_rank(&self, n: usize) -> Result<()> {
        if self.rank() == n {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank(),
                right: n,
            })
        }
    }
}

impl Character<i64> {
    /// Lattice condition: sum(a_i) ≡ b (mod 2).
    pub fn parity_ok(&self) -> bool {
        let s: i64 = self.a.iter().sum();
        (s - self.b).rem_euclid(2) == 0
    }

    pub fn to_scalar<S: Scalar>(&self) -> Character<S> {
        self.map(|x| S::from_i64(*x))
    }
}

impl<S: Scalar> Character<S> {
    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|x| x.is_integer()) && self.b.is_integer()
    }

    /// Integral and satisfying the lattice parity condition.
    pub fn is_lattice(&self) -> bool {
        self.to_i64().is_some_and(|c| c.parity_ok())
    }

    pub fn to_i64(&self) -> Option<Character<i64>> {
        use num_traits::ToPrimitive;
        let conv = |x: &S| -> Option<i64> {
            let b = x.to_big();
            if b.is_integer() {
                b.to_integer().to_i64()
            } else {
                None
            }
        };
        let a = self.a.iter().map(conv).collect::<Option<Vec<_>>>()?;
        Some(Character::new(a, conv(&self.b)?))
    }
}

/// I-dominance: a_1 ≥ a_2 ≥ … ≥ a_n.
pub fn is_i_dominant<S: Ring + PartialOrd>(lam: &Character<S>) -> bool {
    lam.a().windows(2).all(|w| w[0] >= w[1])
}

impl<T: Ring> Add for &Character<T> {
    type Output = Character<T>;
    fn add(self, rhs: Self) -> Character<T> {
        assert_eq!(self.rank(), rhs.rank());
        Character::new(
            self.a
                .iter()
                .zip(&rhs.a)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
            self.b.clone() + rhs.b.clone(),
        )
    }
}

impl<T: Ring> Sub for &Character<T> {
    type Output = Character<T>;
    fn sub(self, rhs: Self) -> Character<T> {
        self + &(-rhs)
    }
}

impl<T: Ring> Neg for &Character<T> {
    type Output = Character<T>;
    fn neg(self) -> Character<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Ring> Mul<&Character<T>> for i64 {
    type Output = Character<T>;
    fn mul(self, rhs: &Character<T>) -> Character<T> {
        rhs.scale(&T::from_i64(self))
    }
}

impl fmt::Display for Character<i64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "{}|{}", a.join(","), self.b)
    }
}

/// Renders `a_1,…,a_n|b`, printing integers bare and other rationals as
/// `num/den`.
pub fn format_character<S: Scalar>(c: &Character<S>) -> String {
    let show = |x: &S| {
        if x.is_integer() {
            x.to_big().to_integer().to_string()
        } else {
            ratio_string(x)
        }
    };
    let a: Vec<String> = c.a.iter().map(show).collect();
    format!("{}|{}", a.join(","), show(&c.b))
}

/// Parses `a_1,…,a_n|b`. Entries may be integers or `num/den`.
pub fn parse_character<S: Scalar>(text: &str) -> Result<Character<S>> {
    let bad = |why: &str| Error::Parse(format!("character {text:?}: {why}"));
    let (a, b) = text.split_once('|').ok_or_else(|| bad("missing '|'"))?;
    let a = a
        .split(',')
        .map(|x| parse_ratio::<S>(x).ok_or_else(|| bad("bad entry")))
        .collect::<Result<Vec<_>>>()?;
    if a.is_empty() {
        return Err(bad("no coefficients"));
    }
    let b = parse_ratio::<S>(b).ok_or_else(|| bad("bad b"))?;
    Ok(Character::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn parity() {
        assert!(Character::new(vec![1i64, 1, -25], 1).parity_ok());
        assert!(!Character::new(vec![1i64, 0], 0).parity_ok());
        assert!(Character::new(vec![-1i64, 0], 1).parity_ok());
    }

    #[test]
    fn dominance() {
        assert!(is_i_dominant(&Character::new(vec![0i64, 0, 0], 0)));
        assert!(is_i_dominant(&Character::new(vec![1i64, 1, -25], 1)));
        assert!(!is_i_dominant(&Character::new(vec![-5i64, 1, 1], 1)));
    }

    #[test]
    fn text_round_trip() {
        let c: Character<Q> = parse_character("1, 1/2,-25|1").unwrap();
        assert_eq!(format_character(&c), "1,1/2,-25|1");
        assert!(!c.is_integral());
        assert!(parse_character::<Q>("1,2").is_err());
        assert!(parse_character::<Q>("|1").is_err());
        let l: Character<Q> = parse_character("1,1,-25|1").unwrap();
        assert!(l.is_lattice());
    }
}
