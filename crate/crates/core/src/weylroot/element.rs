use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Ring;

use super::character::Character;
use super::root::Root;

/// Element of the Weyl group of GSp(2n), stored as its window
/// (w(1), …, w(2n)), a permutation of 1..2n with w(i) + w(2n+1-i) = 2n+1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct WeylElem {
    window: Vec<usize>,
}

impl WeylElem {
    pub fn new(window: Vec<usize>) -> Result<Self> {
        let len = window.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::NotPermutation {
                len,
                reason: "window length must be a positive even number".into(),
            });
        }
        let mut seen = vec![false; len + 1];
        for &v in &window {
            if v == 0 || v > len {
                return Err(Error::NotPermutation {
                    len,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::NotPermutation {
                    len,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        for i in 1..=len / 2 {
            let j = len + 1 - i;
            let sum = window[i - 1] + window[j - 1];
            if sum != len + 1 {
                return Err(Error::MirrorViolation {
                    i,
                    j,
                    sum,
                    expected: len + 1,
                });
            }
        }
        Ok(WeylElem { window })
    }

    pub fn identity(n: usize) -> Self {
        WeylElem {
            window: (1..=2 * n).collect(),
        }
    }

    /// Builds the element from the images of 1..n; the rest is forced by the
    /// mirror condition.
    pub fn from_half(n: usize, half: &[usize]) -> Result<Self> {
        if half.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: half.len(),
            });
        }
        let mut w = vec![0; 2 * n];
        for (i, &v) in half.iter().enumerate() {
            if v == 0 || v > 2 * n {
                return Err(Error::NotPermutation {
                    len: 2 * n,
                    reason: format!("value {v} out of range"),
                });
            }
            w[i] = v;
            w[2 * n - 1 - i] = 2 * n + 1 - v;
        }
        WeylElem::new(w)
    }

    pub fn rank(&self) -> usize {
        self.window.len() / 2
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// w(i), 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    fn check_same_rank(&self, other: &WeylElem) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            })
        }
    }

    /// (self · other)(i) = self(other(i)).
    pub fn compose(&self, other: &WeylElem) -> Result<WeylElem> {
        self.check_same_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &WeylElem) -> WeylElem {
        WeylElem {
            window: other.window.iter().map(|&v| self.window[v - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElem {
        let mut inv = vec![0; self.window.len()];
        for (k, &v) in self.window.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        WeylElem { window: inv }
    }

    /// M(w): inversions among the first n positions.
    pub fn m_count(&self) -> usize {
        let n = self.rank();
        (1..=n)
            .tuple_combinations()
            .filter(|&(i, j)| self.at(i) > self.at(j))
            .count()
    }

    /// N(w): pairs i ≤ j ≤ n with w(i) + w(j) > 2n+1.
    pub fn n_count(&self) -> usize {
        let n = self.rank();
        (1..=n)
            .flat_map(|i| (i..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.at(i) + self.at(j) > 2 * n + 1)
            .count()
    }

    /// Coxeter length M(w) + N(w).
    pub fn length(&self) -> usize {
        self.m_count() + self.n_count()
    }

    /// Signed permutation action: the a_i coefficient moves to slot w(i), or to
    /// slot 2n+1-w(i) with a sign flip when w(i) > n. b is fixed.
    pub fn act<T: Ring>(&self, lam: &Character<T>) -> Result<Character<T>> {
        lam.check_rank(self.rank())?;
        Ok(self.act_unchecked(lam))
    }

    pub(crate) fn act_unchecked<T: Ring>(&self, lam: &Character<T>) -> Character<T> {
        let n = self.rank();
        let mut out = vec![T::zero(); n];
        for (i, x) in lam.a().iter().enumerate() {
            let t = self.window[i];
            if t <= n {
                out[t - 1] = out[t - 1].clone() + x.clone();
            } else {
                let s = 2 * n + 1 - t;
                out[s - 1] = out[s - 1].clone() - x.clone();
            }
        }
        Character::new(out, lam.b().clone())
    }

    /// w·α for a positive root α: the image is ± a positive root.
    /// Returns `(positive, root)`.
    pub fn act_root(&self, alpha: Root) -> (bool, Root) {
        let n = self.rank();
        let v = Character::new(alpha.vector(n), 0i64);
        let img = self.act_unchecked(&v);
        Root::from_vector(img.a()).expect("Weyl group permutes the roots")
    }

    /// Length as the number of positive roots sent to negative roots.
    pub fn inversion_count(&self) -> usize {
        crate::weylroot::positive_roots(self.rank())
            .expect("rank ≥ 1")
            .into_iter()
            .filter(|&a| !self.act_root(a).0)
            .count()
    }

    /// True when the element stabilizes {1..n}, i.e. lies in W_L.
    pub fn in_levi(&self) -> bool {
        let n = self.rank();
        self.window[..n].iter().all(|&v| v <= n)
    }
}

/// Reflection s_α as a window.
pub fn reflection(n: usize, alpha: Root) -> Result<WeylElem> {
    alpha.validate(n)?;
    let mut w: Vec<usize> = (1..=2 * n).collect();
    let m = 2 * n + 1;
    match alpha {
        Root::Diff(i, j) => {
            w.swap(i - 1, j - 1);
            w.swap(m - i - 1, m - j - 1);
        }
        Root::Sum(i, j) => {
            w.swap(i - 1, m - j - 1);
            w.swap(j - 1, m - i - 1);
        }
        Root::Long(i) => w.swap(i - 1, m - i - 1),
    }
    Ok(WeylElem { window: w })
}

/// The canonical elements w_0, w_{0,I}, w_max = w_{0,I} w_0 and the frame
/// element z. Frobenius acts trivially on W here, so z = w_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalElements {
    pub w0: WeylElem,
    pub w0i: WeylElem,
    pub wmax: WeylElem,
    pub z: WeylElem,
}

pub fn longest(n: usize) -> WeylElem {
    WeylElem {
        window: (1..=2 * n).rev().collect(),
    }
}

/// Longest element of W_L: reverses 1..n and mirrors n+1..2n.
pub fn longest_levi(n: usize) -> WeylElem {
    let mut w: Vec<usize> = (1..=n).rev().collect();
    w.extend((n + 1..=2 * n).rev());
    WeylElem { window: w }
}

pub fn wmax(n: usize) -> WeylElem {
    longest_levi(n).mul_unchecked(&longest(n))
}

pub fn canonical_elements(n: usize) -> Result<CanonicalElements> {
    if n == 0 {
        return Err(Error::InvalidRank { got: 0, min: 1 });
    }
    let w0 = longest(n);
    let w0i = longest_levi(n);
    let wmax = w0i.mul_unchecked(&w0);
    // σ is trivial: z = σ(w_{0,I}) w_0 = w_max
    let z = wmax.clone();
    Ok(CanonicalElements { w0, w0i, wmax, z })
}

/// All 2^n · n! elements, in lexicographic window order.
pub fn all_elements(n: usize) -> Vec<WeylElem> {
    let mut out = Vec::with_capacity((1..=n).product::<usize>() << n);
    for perm in (1..=n).permutations(n) {
        for signs in 0..(1usize << n) {
            let half: Vec<usize> = perm
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    if signs >> i & 1 == 1 {
                        2 * n + 1 - v
                    } else {
                        v
                    }
                })
                .collect();
            out.push(WeylElem::from_half(n, &half).expect("signed permutation"));
        }
    }
    out.sort();
    out
}

/// The n! elements of W_L (permutations of 1..n extended by the mirror).
pub fn levi_elements(n: usize) -> Vec<WeylElem> {
    (1..=n)
        .permutations(n)
        .map(|p| WeylElem::from_half(n, &p).expect("permutation"))
        .collect()
}

/// Parses the window notation "w(1) w(2) … w(2n)".
impl FromStr for WeylElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let window = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("window entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        WeylElem::new(window)
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window.iter().join(" "))
    }
}

impl From<WeylElem> for String {
    fn from(w: WeylElem) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for WeylElem {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylroot::positive_roots;

    fn w(s: &str) -> WeylElem {
        s.parse().unwrap()
    }

    #[test]
    fn mirror_violation_names_positions() {
        assert_eq!(
            WeylElem::new(vec![1, 2, 4, 3]).unwrap_err(),
            Error::MirrorViolation {
                i: 1,
                j: 4,
                sum: 4,
                expected: 5
            }
        );
    }

    #[test]
    fn rejects_bad_windows() {
        assert!(matches!(
            WeylElem::new(vec![2, 1, 4, 4]),
            Err(Error::NotPermutation { .. })
        ));
        assert!(matches!(
            WeylElem::new(vec![1, 3, 2]),
            Err(Error::NotPermutation { .. })
        ));
        assert!(matches!(
            "1 3 4 2".parse::<WeylElem>(),
            Err(Error::MirrorViolation {
                i: 1,
                j: 4,
                sum: 3,
                ..
            })
        ));
        assert!("1 x".parse::<WeylElem>().is_err());
    }

    #[test]
    fn compose_examples() {
        let id = WeylElem::identity(2);
        let a = w("4 3 2 1");
        assert_eq!(a.compose(&id).unwrap(), a);
        assert_eq!(a.compose(&w("2 1 4 3")).unwrap(), w("3 4 1 2"));
        let inv = w("3 4 1 2").inverse();
        assert_eq!(inv, w("3 4 1 2"));
        assert!(w("3 4 1 2").compose(&inv).unwrap().is_identity());
        assert!(a.compose(&WeylElem::identity(3)).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(WeylElem::identity(3).length(), 0);
        for n in 1..=6 {
            assert_eq!(longest(n).length(), n * n);
            assert_eq!(longest(n).m_count(), n * (n - 1) / 2);
            assert_eq!(longest(n).n_count(), n * (n + 1) / 2);
        }
        let m = w("3 4 1 2");
        assert_eq!((m.m_count(), m.n_count(), m.length()), (0, 3, 3));
    }

    #[test]
    fn canonical() {
        let c = canonical_elements(1).unwrap();
        assert_eq!(c.w0, w("2 1"));
        assert!(c.w0i.is_identity());
        assert_eq!(c.wmax, w("2 1"));
        let c = canonical_elements(2).unwrap();
        assert_eq!(c.w0i, w("2 1 4 3"));
        assert_eq!(c.wmax, w("3 4 1 2"));
        assert_eq!(c.z, c.wmax);
        for n in 1..=7 {
            let c = canonical_elements(n).unwrap();
            assert_eq!(c.w0.length() - c.w0i.length(), c.wmax.length());
            assert_eq!(c.wmax.length(), n * (n + 1) / 2);
            assert_eq!(c.w0i.length(), n * (n - 1) / 2);
        }
        assert!(canonical_elements(0).is_err());
    }

    #[test]
    fn action_examples() {
        let lam = Character::new(vec![3i64, -1, 2], 5);
        assert_eq!(WeylElem::identity(3).act(&lam).unwrap(), lam);
        assert_eq!(
            longest(3).act(&lam).unwrap(),
            Character::new(vec![-3, 1, -2], 5)
        );
        let e1 = Character::<i64>::unit(2, 1);
        assert_eq!(
            w("3 4 1 2").act(&e1).unwrap(),
            Character::new(vec![0, -1], 0)
        );
        assert!(longest(2).act(&lam).is_err());
    }

    #[test]
    fn reflections() {
        assert_eq!(reflection(2, Root::Diff(1, 2)).unwrap(), w("2 1 4 3"));
        assert_eq!(reflection(2, Root::Long(2)).unwrap(), w("1 3 2 4"));
        assert_eq!(reflection(2, Root::Sum(1, 2)).unwrap(), w("3 4 1 2"));
        assert!(reflection(2, Root::Long(3)).is_err());
        for n in 1..=5 {
            for a in positive_roots(n).unwrap() {
                let s = reflection(n, a).unwrap();
                assert!(s.compose(&s).unwrap().is_identity());
                assert_eq!(s.length() % 2, 1, "{a}");
                assert_eq!(s.act_root(a), (false, a));
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(all_elements(1).len(), 2);
        assert_eq!(all_elements(2).len(), 8);
        assert_eq!(all_elements(3).len(), 48);
        assert_eq!(levi_elements(3).len(), 6);
        assert!(levi_elements(3).iter().all(|x| x.in_levi()));
    }
}
