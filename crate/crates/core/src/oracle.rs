//! Slow reference implementations used to cross-check the fast paths, and
//! seeded samplers for the randomized checks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bruhat::{enum_iw, lower_neighbors};
use crate::cones::orbit_subset_functional;
use crate::error::Result;
use crate::hasse::check_p;
use crate::linalg::dot;
use crate::scalar::Scalar;
use crate::weylroot::{
    levi_elements, positive_roots, reflection, simple_roots, Character, Orbit, WeylElem,
};

/// Membership in the L-minimal cone by checking every subset of every orbit.
pub fn lmin_member_enumerated<S: Scalar>(lam: &Character<S>, p: i64) -> Result<bool> {
    check_p(p)?;
    Ok(Orbit::ALL.iter().all(|&o| orbit_holds(lam, p, o)))
}

/// Every subset inequality of a single orbit holds at λ.
pub fn orbit_inequalities_hold<S: Scalar>(
    lam: &Character<S>,
    p: i64,
    orbit: Orbit,
) -> Result<bool> {
    check_p(p)?;
    Ok(orbit_holds(lam, p, orbit))
}

/// All 2^|O| subset functionals of one orbit, indexed by bitmask.
pub fn orbit_subset_functionals<S: Scalar>(n: usize, p: i64, orbit: Orbit) -> Vec<Vec<S>> {
    let size = orbit.roots(n).len();
    assert!(size < 32, "orbit too large to enumerate");
    (0u32..(1 << size))
        .map(|mask| orbit_subset_functional(n, p, orbit, |k, _| mask >> k & 1 == 1))
        .collect()
}

fn orbit_holds<S: Scalar>(lam: &Character<S>, p: i64, orbit: Orbit) -> bool {
    let x = lam.coords();
    orbit_subset_functionals::<S>(lam.rank(), p, orbit)
        .iter()
        .all(|f| !dot(f, &x).is_positive())
}

/// W generated from the simple reflections by breadth-first search.
pub fn generate_group(n: usize) -> BTreeSet<WeylElem> {
    let gens: Vec<WeylElem> = simple_roots(n)
        .into_iter()
        .map(|a| reflection(n, a).expect("simple root"))
        .collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([WeylElem::identity(n)]);
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for s in &gens {
            let next = w.mul_unchecked(s);
            if !seen.contains(&next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Bruhat order as the reflexive transitive closure of the covers w·s_α → w,
/// α ∈ E_w. Returns, for each element, the set of elements below it.
pub fn bruhat_closure(n: usize) -> BTreeMap<WeylElem, BTreeSet<WeylElem>> {
    let mut elems: Vec<WeylElem> = generate_group(n).into_iter().collect();
    elems.sort_by_key(WeylElem::length);
    let mut below: BTreeMap<WeylElem, BTreeSet<WeylElem>> = BTreeMap::new();
    for w in elems {
        let mut set = BTreeSet::from([w.clone()]);
        for c in lower_neighbors(&w).covered() {
            set.extend(below[&c].iter().cloned());
        }
        below.insert(w, set);
    }
    below
}

/// Covers defined independently of E_w: pairs (w·t, w) with t any reflection
/// and lengths differing by one.
pub fn covers_by_reflections(w: &WeylElem) -> BTreeSet<WeylElem> {
    let n = w.rank();
    let len = w.length();
    positive_roots(n)
        .expect("rank ≥ 1")
        .into_iter()
        .map(|a| w.mul_unchecked(&reflection(n, a).expect("valid root")))
        .filter(|v| v.length() + 1 == len)
        .collect()
}

/// Every w factors uniquely as u·v with u ∈ W_I and v ∈ ^I W, and lengths add.
pub fn check_parabolic_factorization(n: usize) -> Result<bool> {
    let iw = enum_iw(n)?;
    let levi = levi_elements(n);
    let mut hits: BTreeMap<WeylElem, usize> = BTreeMap::new();
    for u in &levi {
        for v in &iw {
            let w = u.mul_unchecked(v);
            if w.length() != u.length() + v.length() {
                return Ok(false);
            }
            *hits.entry(w).or_default() += 1;
        }
    }
    let total = generate_group(n).len();
    Ok(hits.len() == total && hits.values().all(|&c| c == 1))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform element of W: a random permutation of the first half together with
/// random mirror flips.
pub fn random_element<R: Rng>(n: usize, rng: &mut R) -> WeylElem {
    let m = 2 * n;
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(rng);
    let half: Vec<usize> = values
        .into_iter()
        .map(|v| if rng.gen_bool(0.5) { m + 1 - v } else { v })
        .collect();
    WeylElem::from_half(n, &half).expect("mirror pairs are consistent")
}

/// Rational character with entries num/den, num ∈ [-range, range] and
/// den ∈ [1, 6].
pub fn random_character<S: Scalar, R: Rng>(n: usize, range: i64, rng: &mut R) -> Character<S> {
    let mut entry = || S::from_ratio(rng.gen_range(-range..=range), rng.gen_range(1..=6));
    let a = (0..n).map(|_| entry()).collect();
    Character::new(a, entry())
}

/// Random I-dominant rational character: a sorted random vector.
pub fn random_dominant<S: Scalar, R: Rng>(n: usize, range: i64, rng: &mut R) -> Character<S> {
    let c: Character<S> = random_character(n, range, rng);
    let mut a = c.a().to_vec();
    a.sort_by(|x, y| y.cmp(x));
    Character::new(a, c.b().clone())
}

/// Random character biased towards the boundary of the L-minimal cone: a
/// mostly nonpositive vector with one positive entry.
pub fn random_near_lmin<S: Scalar, R: Rng>(n: usize, range: i64, rng: &mut R) -> Character<S> {
    let mut a: Vec<S> = (0..n)
        .map(|_| S::from_ratio(-rng.gen_range(0..=range * 3), rng.gen_range(1..=3)))
        .collect();
    let k = rng.gen_range(0..n);
    a[k] = S::from_ratio(rng.gen_range(0..=range), rng.gen_range(1..=3));
    Character::new(a, S::from_i64(rng.gen_range(-2..=2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::bruhat_leq;
    use crate::cones::lmin_member;
    use crate::weylroot::all_elements;
    use crate::Q;

    #[test]
    fn bfs_matches_window_enumeration() {
        for n in 1..=4 {
            let g: Vec<WeylElem> = generate_group(n).into_iter().collect();
            assert_eq!(g, all_elements(n));
        }
    }

    #[test]
    fn closure_matches_rank_criterion_rank2() {
        let below = bruhat_closure(2);
        for (w, set) in &below {
            for v in all_elements(2) {
                assert_eq!(set.contains(&v), bruhat_leq(&v, w).unwrap());
            }
        }
    }

    #[test]
    fn reflection_covers_match_neighbors() {
        for w in all_elements(3) {
            let via_e: BTreeSet<WeylElem> = lower_neighbors(&w).covered().into_iter().collect();
            assert_eq!(via_e, covers_by_reflections(&w));
        }
    }

    #[test]
    fn factorization() {
        for n in 1..=4 {
            assert!(check_parabolic_factorization(n).unwrap());
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let a: Vec<WeylElem> = (0..5).map(|_| random_element(4, &mut rng(9))).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut r = rng(1);
        for _ in 0..50 {
            let d: Character<Q> = random_dominant(4, 9, &mut r);
            assert!(crate::weylroot::is_i_dominant(&d));
        }
    }

    #[test]
    fn enumeration_agrees_on_samples() {
        let mut r = rng(3);
        for n in 1..=3 {
            for _ in 0..100 {
                let lam: Character<Q> = random_near_lmin(n, 5, &mut r);
                assert_eq!(
                    lmin_member_enumerated(&lam, 3).unwrap(),
                    lmin_member(&lam, 3).unwrap()
                );
            }
        }
    }
}
