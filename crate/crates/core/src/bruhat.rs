//! Bruhat order on W, lower neighbors and the parametrization of zip strata
//! by the minimal coset representatives ^I W.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::int_matrix;
use crate::weylroot::{
    all_elements, levi_elements, levi_roots, levi_simple_roots, positive_roots, reflection,
    unipotent_roots, Root, WeylElem,
};
use crate::Q;

/// r_w(i, j) = |{1 ≤ k ≤ i : w(k) ≤ j}|.
pub fn rank_matrix(w: &WeylElem, i: usize, j: usize) -> Result<usize> {
    let m = w.window().len();
    if i == 0 || j == 0 || i > m || j > m {
        return Err(Error::IndexOutOfRange(format!(
            "r({i},{j}) with 1 ≤ i,j ≤ {m}"
        )));
    }
    Ok(w.window()[..i].iter().filter(|&&v| v <= j).count())
}

/// All entries of the rank matrix, computed by prefix counting.
fn rank_table(w: &WeylElem) -> Vec<Vec<usize>> {
    let m = w.window().len();
    let mut table = vec![vec![0; m + 1]; m + 1];
    for i in 1..=m {
        let v = w.at(i);
        let (prev, rest) = table.split_at_mut(i);
        for (j, cell) in rest[0].iter_mut().enumerate().skip(1) {
            *cell = prev[i - 1][j] + usize::from(v <= j);
        }
    }
    table
}

/// Bruhat order via the rank-matrix criterion.
pub fn bruhat_leq(w1: &WeylElem, w2: &WeylElem) -> Result<bool> {
    if w1.rank() != w2.rank() {
        return Err(Error::RankMismatch {
            left: w1.rank(),
            right: w2.rank(),
        });
    }
    let (a, b) = (rank_table(w1), rank_table(w2));
    Ok(a.iter()
        .zip(&b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x >= y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairClass {
    E1,
    E2,
    E3,
    Other,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairClass::E1 => "E1",
            PairClass::E2 => "E2",
            PairClass::E3 => "E3",
            PairClass::Other => "Other",
        };
        f.write_str(s)
    }
}

/// A descent (i, j) of the window with no intermediate value in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub i: usize,
    pub j: usize,
    pub class: PairClass,
}

/// All admissible pairs of `w` with their classes, ordered by (i, j).
pub fn admissible_pairs(w: &WeylElem) -> Vec<AdmissiblePair> {
    let m = w.window().len();
    let n = w.rank();
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let (hi, lo) = (w.at(i), w.at(j));
            if hi <= lo {
                continue;
            }
            if (i + 1..j).any(|k| lo < w.at(k) && w.at(k) < hi) {
                continue;
            }
            let class = if j <= n {
                PairClass::E1
            } else if i <= n && j == m + 1 - i {
                PairClass::E3
            } else if i <= n && n < j && hi <= n && lo <= n {
                PairClass::E2
            } else {
                PairClass::Other
            };
            out.push(AdmissiblePair { i, j, class });
        }
    }
    out
}

/// The root attached to an admissible pair in E1 ∪ E2 ∪ E3.
pub fn gamma(p: &AdmissiblePair, w: &WeylElem) -> Result<Root> {
    let m = w.window().len();
    match p.class {
        PairClass::E1 => Ok(Root::Diff(p.i, p.j)),
        PairClass::E2 => Root::sum_unordered(p.i, m + 1 - p.j),
        PairClass::E3 => Ok(Root::Long(p.i)),
        PairClass::Other => Err(Error::OtherClass { i: p.i, j: p.j }),
    }
}

/// The lower-neighbor set E_w of an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborSet {
    pub owner: WeylElem,
    pub roots: BTreeSet<Root>,
}

impl NeighborSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: Root) -> bool {
        self.roots.contains(&r)
    }

    /// The elements w·s_α covered by the owner.
    pub fn covered(&self) -> Vec<WeylElem> {
        let n = self.owner.rank();
        self.roots
            .iter()
            .map(|&a| {
                self.owner
                    .mul_unchecked(&reflection(n, a).expect("valid root"))
            })
            .collect()
    }
}

/// E_w through admissible pairs and γ.
pub fn lower_neighbors(w: &WeylElem) -> NeighborSet {
    let roots = admissible_pairs(w)
        .iter()
        .filter(|p| p.class != PairClass::Other)
        .map(|p| gamma(p, w).expect("classified pair"))
        .collect();
    NeighborSet {
        owner: w.clone(),
        roots,
    }
}

/// E_w by definition: α with w·s_α < w and ℓ(w·s_α) = ℓ(w) - 1.
pub fn lower_neighbors_oracle(w: &WeylElem) -> NeighborSet {
    let n = w.rank();
    let len = w.length();
    let roots = positive_roots(n)
        .expect("rank ≥ 1")
        .into_iter()
        .filter(|&a| {
            let v = w.mul_unchecked(&reflection(n, a).expect("valid root"));
            v.length() + 1 == len && v != *w && bruhat_leq(&v, w).expect("same rank")
        })
        .collect();
    NeighborSet {
        owner: w.clone(),
        roots,
    }
}

/// Linear independence of the coroots of E_w over Q.
pub fn is_separating(w: &WeylElem) -> bool {
    coroots_independent(w.rank(), &lower_neighbors(w).roots)
}

pub(crate) fn coroots_independent<'a>(n: usize, roots: impl IntoIterator<Item = &'a Root>) -> bool {
    let rows: Vec<Vec<i64>> = roots.into_iter().map(|r| r.coroot(n)).collect();
    if rows.is_empty() {
        return true;
    }
    int_matrix::<Q>(&rows).rank() == rows.len()
}

/// w is minimal in W_I·w iff ℓ(s_α w) > ℓ(w) for every α ∈ I.
pub fn is_minimal_representative(w: &WeylElem) -> bool {
    let n = w.rank();
    let len = w.length();
    levi_simple_roots(n).into_iter().all(|a| {
        let s = reflection(n, a).expect("valid root");
        s.mul_unchecked(w).length() > len
    })
}

/// ^I W sorted by (length, window).
pub fn enum_iw(n: usize) -> Result<Vec<WeylElem>> {
    if n == 0 {
        return Err(Error::InvalidRank { got: 0, min: 1 });
    }
    let mut out: Vec<WeylElem> = all_elements(n)
        .into_iter()
        .filter(is_minimal_representative)
        .collect();
    out.sort_by_key(|w| (w.length(), w.clone()));
    Ok(out)
}

fn require_minimal(w: &WeylElem) -> Result<()> {
    if is_minimal_representative(w) {
        Ok(())
    } else {
        Err(Error::NotMinimal(w.to_string()))
    }
}

/// w1 ≼ w2 iff w1 ≤ u·w2·u⁻¹ for some u ∈ W_I (Frobenius trivial).
pub fn preceq(w1: &WeylElem, w2: &WeylElem) -> Result<bool> {
    require_minimal(w1)?;
    require_minimal(w2)?;
    if w1.rank() != w2.rank() {
        return Err(Error::RankMismatch {
            left: w1.rank(),
            right: w2.rank(),
        });
    }
    for u in levi_elements(w1.rank()) {
        let conj = u.mul_unchecked(w2).mul_unchecked(&u.inverse());
        if bruhat_leq(w1, &conj)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// dim P for the Siegel parabolic, from root counts: the torus has rank n+1,
/// L has 2|Φ+_L| roots, and the unipotent radical has |Φ+ ∖ Φ+_L|.
pub fn parabolic_dim(n: usize) -> usize {
    let torus = n + 1;
    let levi = torus + 2 * levi_roots(n).len();
    levi + unipotent_roots(n).len()
}

/// dim G = rank + 2|Φ+|.
pub fn group_dim(n: usize) -> usize {
    n + 1 + 2 * n * n
}

/// Dimension of the E-orbit G_w: ℓ(w) + dim P.
pub fn stratum_dim(w: &WeylElem) -> Result<usize> {
    require_minimal(w)?;
    Ok(w.length() + parabolic_dim(w.rank()))
}
