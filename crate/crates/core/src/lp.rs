//! Exact phase-one simplex.
//!
//! The only question ever asked is Farkas-shaped: is `t` a nonnegative
//! combination of given vectors? Dimensions stay below a few dozen, so a dense
//! tableau with Bland's rule is plenty and never cycles.

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::scalar::Scalar;

/// Outcome of [`nonneg_combination`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combination<S> {
    /// y ≥ 0 with Σ y_k v_k = t.
    Found(Vec<S>),
    /// x with v_k·x ≤ 0 for all k and t·x > 0.
    Separated(Vec<S>),
}

/// Decides whether `target` lies in the cone spanned by `vectors`.
///
/// Phase one minimizes the sum of artificials. At an optimum with positive
/// value, the simplex multipliers π of the final basis satisfy π·v_k ≤ 0 and
/// π·t > 0, which is the separating point.
pub fn nonneg_combination<S: Scalar>(vectors: &[Vec<S>], target: &[S]) -> Result<Combination<S>> {
    let d = target.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != d) {
        return Err(Error::Dimension {
            expected: d,
            got: bad.len(),
        });
    }
    let m = vectors.len();
    let width = m + d + 1;
    let rhs_col = m + d;

    // Rows with negative right-hand side are negated so artificials start
    // feasible; `flip` remembers the sign for unflipping the duals.
    let mut flip = vec![false; d];
    let mut tab: Vec<Vec<S>> = Vec::with_capacity(d);
    for r in 0..d {
        flip[r] = target[r].is_negative();
        let sign = if flip[r] { -S::one() } else { S::one() };
        let mut row = vec![S::zero(); width];
        for (k, v) in vectors.iter().enumerate() {
            row[k] = v[r].clone() * sign.clone();
        }
        row[m + r] = S::one();
        row[rhs_col] = target[r].clone() * sign;
        tab.push(row);
    }
    let mut basis: Vec<usize> = (m..m + d).collect();
    let cost = |j: usize| {
        if j >= m && j < m + d {
            S::one()
        } else {
            S::zero()
        }
    };

    // reduced[j] = c_j - Σ_r c_B(r) tab[r][j]; the rhs entry holds -objective.
    let mut reduced: Vec<S> = (0..width)
        .map(|j| {
            let c = if j == rhs_col { S::zero() } else { cost(j) };
            tab.iter().fold(c, |acc, row| acc - row[j].clone())
        })
        .collect();

    while let Some(enter) = (0..rhs_col).find(|&j| reduced[j].is_negative()) {
        let mut leave: Option<(usize, S)> = None;
        for r in 0..d {
            let a = &tab[r][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = tab[r][rhs_col].clone() / a.clone();
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (pr, _) = leave.expect("phase one objective is bounded");
        pivot(&mut tab, &mut reduced, pr, enter);
        basis[pr] = enter;
    }

    let objective = -reduced[rhs_col].clone();
    if objective.is_zero() {
        let mut y = vec![S::zero(); m];
        for (r, &b) in basis.iter().enumerate() {
            if b < m {
                y[b] = tab[r][rhs_col].clone();
            }
        }
        return Ok(Combination::Found(y));
    }
    // Reduced cost of artificial r is 1 - π_r.
    let x = (0..d)
        .map(|r| {
            let pi = S::one() - reduced[m + r].clone();
            if flip[r] {
                -pi
            } else {
                pi
            }
        })
        .collect();
    Ok(Combination::Separated(x))
}

fn pivot<S: Scalar>(tab: &mut [Vec<S>], reduced: &mut [S], pr: usize, pc: usize) {
    let inv = S::one() / tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v = v.clone() * inv.clone();
    }
    let prow = tab[pr].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            *v = v.clone() - f.clone() * pv.clone();
        }
    }
    let f = reduced[pc].clone();
    if !f.is_zero() {
        for (v, pv) in reduced.iter_mut().zip(&prow) {
            *v = v.clone() - f.clone() * pv.clone();
        }
    }
}

/// Checks a [`Combination`] exactly against its inputs.
pub fn check_combination<S: Scalar>(vectors: &[Vec<S>], target: &[S], c: &Combination<S>) -> bool {
    match c {
        Combination::Found(y) => {
            if y.len() != vectors.len() || y.iter().any(|v| v.is_negative()) {
                return false;
            }
            (0..target.len()).all(|r| {
                let s = vectors
                    .iter()
                    .zip(y)
                    .fold(S::zero(), |acc, (v, yk)| acc + v[r].clone() * yk.clone());
                s == target[r]
            })
        }
        Combination::Separated(x) => {
            x.len() == target.len()
                && dot(target, x).is_positive()
                && vectors.iter().all(|v| !dot(v, x).is_positive())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Q, Q64};
    use proptest::prelude::*;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_integer(x.into())).collect()
    }

    #[test]
    fn simple_combination() {
        let vs = vec![qv(&[1, 0]), qv(&[0, 1])];
        let t = qv(&[1, 1]);
        let c = nonneg_combination(&vs, &t).unwrap();
        assert_eq!(c, Combination::Found(qv(&[1, 1])));
        assert!(check_combination(&vs, &t, &c));
    }

    #[test]
    fn outside_cone_gives_witness() {
        let vs = vec![qv(&[1, 0]), qv(&[0, 1])];
        let t = qv(&[-1, 2]);
        let c = nonneg_combination(&vs, &t).unwrap();
        assert!(matches!(c, Combination::Separated(_)));
        assert!(check_combination(&vs, &t, &c));
    }

    #[test]
    fn empty_system() {
        let t = qv(&[0, 0]);
        assert!(matches!(
            nonneg_combination::<Q>(&[], &t).unwrap(),
            Combination::Found(_)
        ));
        let t = qv(&[0, -3]);
        let c = nonneg_combination::<Q>(&[], &t).unwrap();
        assert!(check_combination(&[], &t, &c));
        assert!(matches!(c, Combination::Separated(_)));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(nonneg_combination(&[qv(&[1])], &qv(&[1, 2])).is_err());
    }

    #[test]
    fn small_ratio_type() {
        let vs: Vec<Vec<Q64>> = vec![
            vec![Q64::from_integer(2), Q64::from_integer(1)],
            vec![Q64::from_integer(-1), Q64::from_integer(3)],
        ];
        let t = vec![Q64::from_integer(1), Q64::from_integer(4)];
        let c = nonneg_combination(&vs, &t).unwrap();
        assert!(check_combination(&vs, &t, &c));
        assert!(matches!(c, Combination::Found(_)));
    }

    proptest! {
        #[test]
        fn certificate_always_checks(
            vs in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 0..6),
            t in prop::collection::vec(-4i64..=4, 3),
        ) {
            let vs: Vec<Vec<Q>> = vs.iter().map(|v| qv(v)).collect();
            let t = qv(&t);
            let c = nonneg_combination(&vs, &t).unwrap();
            prop_assert!(check_combination(&vs, &t, &c));
        }
    }
}
