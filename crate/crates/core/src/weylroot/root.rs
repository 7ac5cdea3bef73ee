use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Ring;

use super::character::Character;

/// Positive root of the type C_n root system, indices 1-based.
///
/// The derived `Ord` is the canonical order: all `Diff` roots
/// lexicographically, then all `Sum` roots, then `Long` roots by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Root {
    /// e_i - e_j, i < j
    Diff(usize, usize),
    /// e_i + e_j, i < j
    Sum(usize, usize),
    /// 2 e_i
    Long(usize),
}

/// The two W_L-orbits on the roots outside the Levi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orbit {
    /// Long roots 2e_i.
    Long,
    /// Sums e_i + e_j.
    Sum,
}

impl Orbit {
    pub const ALL: [Orbit; 2] = [Orbit::Long, Orbit::Sum];

    pub fn roots(self, n: usize) -> Vec<Root> {
        match self {
            Orbit::Long => (1..=n).map(Root::Long).collect(),
            Orbit::Sum => pairs(n).map(|(i, j)| Root::Sum(i, j)).collect(),
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orbit::Long => write!(f, "O1"),
            Orbit::Sum => write!(f, "O2"),
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

impl Root {
    /// Checks the index bounds against rank `n`.
    pub fn validate(self, n: usize) -> Result<Self> {
        let ok = match self {
            Root::Diff(i, j) | Root::Sum(i, j) => 1 <= i && i < j && j <= n,
            Root::Long(i) => 1 <= i && i <= n,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidRoot(format!("{self} for rank {n}")))
        }
    }

    /// e_i + e_j with the two indices put in order. Fails when `i == j`.
    pub fn sum_unordered(i: usize, j: usize) -> Result<Self> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Ok(Root::Sum(i, j)),
            std::cmp::Ordering::Greater => Ok(Root::Sum(j, i)),
            std::cmp::Ordering::Equal => Err(Error::InvalidRoot(format!("e{i}+e{i}"))),
        }
    }

    pub fn is_levi(self) -> bool {
        matches!(self, Root::Diff(..))
    }

    pub fn orbit(self) -> Option<Orbit> {
        match self {
            Root::Diff(..) => None,
            Root::Sum(..) => Some(Orbit::Sum),
            Root::Long(..) => Some(Orbit::Long),
        }
    }

    /// Coordinates of the root itself in the basis e_1..e_n.
    pub fn vector(self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match self {
            Root::Diff(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = -1;
            }
            Root::Sum(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = 1;
            }
            Root::Long(i) => v[i - 1] = 2,
        }
        v
    }

    /// Coordinates of the coroot, i.e. the pairing functional on (a_1..a_n).
    pub fn coroot(self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match self {
            Root::Diff(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = -1;
            }
            Root::Sum(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = 1;
            }
            Root::Long(i) => v[i - 1] = 1,
        }
        v
    }

    /// Recognizes a root vector up to sign. Returns `(positive, root)`.
    pub fn from_vector(v: &[i64]) -> Option<(bool, Root)> {
        let support: Vec<(usize, i64)> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k + 1, c))
            .collect();
        match support.as_slice() {
            [(i, c)] if c.abs() == 2 => Some((*c > 0, Root::Long(*i))),
            [(i, ci), (j, cj)] if ci.abs() == 1 && cj.abs() == 1 => {
                if ci == cj {
                    Some((*ci > 0, Root::Sum(*i, *j)))
                } else {
                    Some((*ci > 0, Root::Diff(*i, *j)))
                }
            }
            _ => None,
        }
    }

    /// ⟨λ, α∨⟩. The b coordinate never contributes.
    pub fn pair<T: Ring>(self, lam: &Character<T>) -> T {
        let a = lam.a();
        match self {
            Root::Diff(i, j) => a[i - 1].clone() - a[j - 1].clone(),
            Root::Sum(i, j) => a[i - 1].clone() + a[j - 1].clone(),
            Root::Long(i) => a[i - 1].clone(),
        }
    }
}

/// All n² positive roots in canonical order.
pub fn positive_roots(n: usize) -> Result<Vec<Root>> {
    if n == 0 {
        return Err(Error::InvalidRank { got: 0, min: 1 });
    }
    let mut out: Vec<Root> = pairs(n).map(|(i, j)| Root::Diff(i, j)).collect();
    out.extend(pairs(n).map(|(i, j)| Root::Sum(i, j)));
    out.extend((1..=n).map(Root::Long));
    Ok(out)
}

/// Positive roots of the Levi subgroup (all `Diff` roots).
pub fn levi_roots(n: usize) -> Vec<Root> {
    pairs(n).map(|(i, j)| Root::Diff(i, j)).collect()
}

/// Positive roots outside the Levi: `Sum` then `Long`.
pub fn unipotent_roots(n: usize) -> Vec<Root> {
    let mut out: Vec<Root> = pairs(n).map(|(i, j)| Root::Sum(i, j)).collect();
    out.extend((1..=n).map(Root::Long));
    out
}

/// Simple roots of the Levi, the set I = {e_i - e_{i+1}}.
pub fn levi_simple_roots(n: usize) -> Vec<Root> {
    (1..n).map(|i| Root::Diff(i, i + 1)).collect()
}

/// All simple roots: I together with 2e_n.
pub fn simple_roots(n: usize) -> Vec<Root> {
    let mut out = levi_simple_roots(n);
    out.push(Root::Long(n));
    out
}

/// ⟨λ, α∨⟩ with a rank check.
pub fn pairing<T: Ring>(lam: &Character<T>, alpha: Root) -> Result<T> {
    alpha.validate(lam.rank())?;
    Ok(alpha.pair(lam))
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Diff(i, j) => write!(f, "e{i}-e{j}"),
            Root::Sum(i, j) => write!(f, "e{i}+e{j}"),
            Root::Long(i) => write!(f, "2e{i}"),
        }
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("root {s:?}"));
        let t = s.trim();
        let index = |x: &str| -> Result<usize> {
            x.trim()
                .strip_prefix('e')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())
        };
        if let Some(rest) = t.strip_prefix("2e") {
            return rest.parse().map(Root::Long).map_err(|_| bad());
        }
        if let Some((l, r)) = t.split_once('-') {
            let (i, j) = (index(l)?, index(r)?);
            return if i < j {
                Ok(Root::Diff(i, j))
            } else {
                Err(bad())
            };
        }
        if let Some((l, r)) = t.split_once('+') {
            let (i, j) = (index(l)?, index(r)?);
            return if i < j {
                Ok(Root::Sum(i, j))
            } else {
                Err(bad())
            };
        }
        Err(bad())
    }
}

impl From<Root> for String {
    fn from(r: Root) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Root {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
