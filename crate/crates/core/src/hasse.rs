//! Weights of partial Hasse invariants and the descending path from w_0 to
//! w_max along which they are used.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bruhat::{is_separating, lower_neighbors, NeighborSet};
use crate::cones::lmin_member;
use crate::error::{Error, Result};
use crate::linalg::{int_matrix, Matrix};
use crate::scalar::{primitive_direction, Ring, Scalar};
use crate::weylroot::{longest, reflection, wmax, Character, Root, WeylElem};
use crate::Q;

pub(crate) fn check_p(p: i64) -> Result<()> {
    if p < 2 {
        Err(Error::InvalidPrime(p))
    } else {
        Ok(())
    }
}

/// χ ↦ -w·χ + p·w_max·χ on characters (Frobenius trivial, so
/// w_{0,I} w_0 σ⁻¹ = w_max).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseMap {
    w: WeylElem,
    wmax: WeylElem,
    p: i64,
}

impl HasseMap {
    pub fn elem(&self) -> &WeylElem {
        &self.w
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.w.rank()
    }

    pub fn apply<T: Ring>(&self, chi: &Character<T>) -> Result<Character<T>> {
        chi.check_rank(self.rank())?;
        let moved = self.w.act_unchecked(chi);
        let top = self.wmax.act_unchecked(chi);
        Ok(&top.scale(&T::from_i64(self.p)) - &moved)
    }

    /// (n+1)×(n+1) matrix acting on coordinates (a_1..a_n, b).
    pub fn matrix<S: Scalar>(&self) -> Matrix<S> {
        let n = self.rank();
        let cols = (0..=n)
            .map(|k| {
                let e = if k < n {
                    Character::<S>::unit(n, k + 1)
                } else {
                    Character::<S>::b_unit(n)
                };
                self.apply(&e).expect("rank checked").coords()
            })
            .collect();
        Matrix::from_columns(cols)
    }

    pub fn determinant<S: Scalar>(&self) -> S {
        self.matrix::<S>().determinant()
    }

    /// h_w⁻¹(λ) by an exact solve.
    pub fn preimage<S: Scalar>(&self, lam: &Character<S>) -> Result<Character<S>> {
        lam.check_rank(self.rank())?;
        let x = self.matrix::<S>().solve(&lam.coords())?;
        Ok(Character::from_coords(x))
    }
}

pub fn hasse_map(w: &WeylElem, p: i64) -> Result<HasseMap> {
    check_p(p)?;
    Ok(HasseMap {
        w: w.clone(),
        wmax: wmax(w.rank()),
        p,
    })
}

/// Vanishing order of Ha_{w,χ} along each codimension-one stratum w·s_α,
/// α ∈ E_w: the pairing ⟨χ, α∨⟩.
pub fn pha_multiplicities<T: Ring>(w: &WeylElem, chi: &Character<T>) -> Result<BTreeMap<Root, T>> {
    chi.check_rank(w.rank())?;
    Ok(lower_neighbors(w)
        .roots
        .iter()
        .map(|&a| (a, a.pair(chi)))
        .collect())
}

/// Checks the defining conditions of χ_β: positive on β∨, zero on the other
/// coroots of E_w.
pub fn is_valid_chi<T: Ring + PartialOrd>(
    w: &WeylElem,
    beta: Root,
    chi: &Character<T>,
) -> Result<bool> {
    let e = lower_neighbors(w);
    if !e.contains(beta) {
        return Err(Error::NotNeighbor {
            root: beta.to_string(),
            elem: w.to_string(),
        });
    }
    chi.check_rank(w.rank())?;
    Ok(e.roots.iter().all(|&a| {
        let v = a.pair(chi);
        if a == beta {
            v > T::zero()
        } else {
            v.is_zero()
        }
    }))
}

/// Canonical χ_β for a separating w.
///
/// Takes the solution of ⟨χ, α∨⟩ = δ_{αβ} lying in the span of the coroots of
/// E_w, scales it to the primitive integral vector, then sets b to 0 or 1 to
/// satisfy the lattice parity.
pub fn solve_chi(w: &WeylElem, beta: Root) -> Result<Character<i64>> {
    let e: NeighborSet = lower_neighbors(w);
    if !e.contains(beta) {
        return Err(Error::NotNeighbor {
            root: beta.to_string(),
            elem: w.to_string(),
        });
    }
    if !is_separating(w) {
        return Err(Error::NotSeparating(w.to_string()));
    }
    let n = w.rank();
    let roots: Vec<Root> = e.roots.iter().copied().collect();
    let coroots: Matrix<Q> = int_matrix(&roots.iter().map(|r| r.coroot(n)).collect::<Vec<_>>());
    let gram = coroots.mul(&coroots.transpose());
    let rhs: Vec<Q> = roots
        .iter()
        .map(|&r| {
            if r == beta {
                Q::from_i64(1)
            } else {
                Q::from_i64(0)
            }
        })
        .collect();
    let y = gram.solve(&rhs)?;
    let x = coroots.transpose().mul_vec(&y);
    let a: Vec<i64> = primitive_direction(&x)
        .into_iter()
        .map(|v| v.to_i64().expect("small coefficients"))
        .collect();
    let parity = a.iter().sum::<i64>().rem_euclid(2);
    Ok(Character::new(a, parity))
}

/// Λ_d: rows 1..d map to 2n-d+1..2n, the middle block is reversed, and the
/// last d rows map to 1..d.
pub fn lambda_elem(n: usize, d: usize) -> Result<WeylElem> {
    if d == 0 || d > n {
        return Err(Error::IndexOutOfRange(format!("Λ_{d} for rank {n}")));
    }
    let m = 2 * n;
    let mut w = Vec::with_capacity(m);
    w.extend((1..=d).map(|k| m - d + k));
    w.extend((1..=m - 2 * d).map(|k| m - d + 1 - k));
    w.extend(1..=d);
    WeylElem::new(w)
}

/// One step τ_d^(i) → τ_d^(i+1) = τ_d^(i)·s_β of the descending path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub d: usize,
    pub i: usize,
    pub w: WeylElem,
    pub beta: Root,
    pub chi: Character<i64>,
    pub ha: Character<i64>,
}

impl PathStep {
    pub fn next(&self) -> WeylElem {
        self.w
            .mul_unchecked(&reflection(self.w.rank(), self.beta).expect("valid root"))
    }
}

/// The path from Λ_1 = w_0 to Λ_n = w_max, n(n-1)/2 steps. Empty for n = 1.
pub fn descent_path(n: usize, p: i64) -> Result<Vec<PathStep>> {
    if n == 0 {
        return Err(Error::InvalidRank { got: 0, min: 1 });
    }
    check_p(p)?;
    let mut steps = Vec::with_capacity(n * (n - 1) / 2);
    for d in 1..n {
        let mut tau = lambda_elem(n, d)?;
        for i in 0..d {
            let beta = Root::Diff(i + 1, d + 1);
            let chi = solve_chi(&tau, beta)?;
            let ha = hasse_map(&tau, p)?.apply(&chi)?;
            let step = PathStep {
                d,
                i,
                w: tau.clone(),
                beta,
                chi,
                ha,
            };
            tau = step.next();
            steps.push(step);
        }
        debug_assert_eq!(tau, lambda_elem(n, d + 1)?);
    }
    Ok(steps)
}

/// The displayed closed form e_{d-i+1} - p·e_{n-i}, with b = 0.
pub fn ha_closed_form(n: usize, p: i64, d: usize, i: usize) -> Result<Character<i64>> {
    check_p(p)?;
    if d == 0 || d >= n || i >= d {
        return Err(Error::IndexOutOfRange(format!(
            "(d, i) = ({d}, {i}) for rank {n}"
        )));
    }
    let mut a = vec![0i64; n];
    a[d - i] += 1;
    a[n - i - 1] -= p;
    Ok(Character::new(a, 0))
}

/// E_{τ_d^(i)} as listed in closed form. For d ≤ n-2 this is the five-part
/// union; for d = n-1 it is {e_k - e_n : k > i} ∪ {2e_k : k ≤ i} ∪ {2e_n}.
pub fn neighbors_closed_form(n: usize, d: usize, i: usize) -> Vec<Root> {
    let mut out = Vec::new();
    if d + 2 <= n {
        out.extend((1..=i).map(|k| Root::Diff(k, d + 2)));
        out.push(Root::Diff(d + 1, d + 2));
        out.extend((i + 1..=d).map(|k| Root::Diff(k, d + 1)));
        out.extend((d + 2..n).map(|k| Root::Diff(k, k + 1)));
        out.push(Root::Long(n));
    } else {
        out.extend((i + 1..n).map(|k| Root::Diff(k, n)));
        out.extend((1..=i).map(Root::Long));
        out.push(Root::Long(n));
    }
    out.sort();
    out
}

/// The listing {e_k - e_n : i+1 ≤ k ≤ n-1} printed for the last block d = n-1.
/// It omits the long roots; kept only to report the comparison.
pub fn neighbors_printed_last_block(n: usize, i: usize) -> Vec<Root> {
    (i + 1..n).map(|k| Root::Diff(k, n)).collect()
}

/// Index k of a weight of the form e_k - p·e_m (a-part), if it has that form.
fn first_term_index(ha: &Character<i64>, p: i64, m: usize) -> Option<usize> {
    let mut a = ha.a().to_vec();
    a[m - 1] += p;
    let nz: Vec<usize> = a
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(k, _)| k)
        .collect();
    match nz.as_slice() {
        [k] if a[*k] == 1 => Some(k + 1),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub d: usize,
    pub i: usize,
    pub w: WeylElem,
    pub length: usize,
    pub length_drop_ok: bool,
    pub neighbors: Vec<Root>,
    pub neighbors_closed_form: Vec<Root>,
    pub neighbors_match: bool,
    /// Only for d = n-1: whether E_w equals the shortened listing.
    pub printed_listing_matches: Option<bool>,
    pub separating: bool,
    pub chi: Character<i64>,
    pub chi_is_unit: bool,
    pub chi_orthogonal: bool,
    pub ha_pipeline: Character<i64>,
    pub ha_closed_form: Character<i64>,
    pub pipeline_in_lmin: bool,
    pub closed_form_in_lmin: bool,
    pub second_term_agrees: bool,
    pub pipeline_first_index: Option<usize>,
    pub closed_form_first_index: usize,
    pub first_term_agrees: bool,
}

impl StepReport {
    /// Everything except the two informational comparisons (first index and
    /// the shortened d = n-1 listing).
    pub fn pass(&self) -> bool {
        self.length_drop_ok
            && self.neighbors_match
            && self.separating
            && self.chi_is_unit
            && self.chi_orthogonal
            && self.pipeline_in_lmin
            && self.closed_form_in_lmin
            && self.second_term_agrees
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub n: usize,
    pub p: i64,
    pub starts_at_w0: bool,
    pub ends_at_wmax: bool,
    pub steps: Vec<StepReport>,
    pub pass: bool,
}

pub fn verify_path_lemmas(n: usize, p: i64) -> Result<PathReport> {
    let steps = descent_path(n, p)?;
    let top = wmax(n);
    let mut reports = Vec::with_capacity(steps.len());
    for step in &steps {
        let (d, i) = (step.d, step.i);
        let e = lower_neighbors(&step.w);
        let neighbors: Vec<Root> = e.roots.iter().copied().collect();
        let closed = neighbors_closed_form(n, d, i);
        let printed = (d + 1 == n).then(|| neighbors_printed_last_block(n, i) == neighbors);
        let unit = Character::<i64>::unit(n, i + 1);
        let chi_orthogonal = neighbors.iter().all(|&a| {
            let v = a.pair(&step.chi);
            if a == step.beta {
                v == 1
            } else {
                v == 0
            }
        });
        let closed_form = ha_closed_form(n, p, d, i)?;
        // Both weights have the shape e_k - p·e_{n-i}; only k may differ.
        let pipeline_first = first_term_index(&step.ha, p, n - i);
        let second_term_agrees = pipeline_first.is_some();
        let closed_first = d - i + 1;
        reports.push(StepReport {
            d,
            i,
            w: step.w.clone(),
            length: step.w.length(),
            length_drop_ok: step.next().length() + 1 == step.w.length(),
            neighbors_match: neighbors == closed,
            neighbors,
            neighbors_closed_form: closed,
            printed_listing_matches: printed,
            separating: is_separating(&step.w),
            chi: step.chi.clone(),
            chi_is_unit: step.chi.a() == unit.a(),
            chi_orthogonal,
            ha_pipeline: step.ha.clone(),
            pipeline_in_lmin: lmin_member(&step.ha.to_scalar::<Q>(), p)?,
            closed_form_in_lmin: lmin_member(&closed_form.to_scalar::<Q>(), p)?,
            ha_closed_form: closed_form,
            second_term_agrees,
            pipeline_first_index: pipeline_first,
            closed_form_first_index: closed_first,
            first_term_agrees: pipeline_first == Some(closed_first),
        });
    }
    let starts_at_w0 = steps.first().map_or(n == 1, |s| s.w == longest(n));
    let ends_at_wmax = steps.last().map_or(n == 1, |s| s.next() == top);
    let pass = starts_at_w0 && ends_at_wmax && reports.iter().all(StepReport::pass);
    Ok(PathReport {
        n,
        p,
        starts_at_w0,
        ends_at_wmax,
        steps: reports,
        pass,
    })
}
