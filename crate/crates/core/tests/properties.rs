use proptest::prelude::*;

use zipcone_core::bruhat::{bruhat_leq, lower_neighbors, lower_neighbors_oracle};
use zipcone_core::cones::{farkas_implies, lmin_member, lmin_prefix_cone, Cone};
use zipcone_core::hasse::hasse_map;
use zipcone_core::oracle::{lmin_member_enumerated, random_element, rng};
use zipcone_core::weylroot::{is_i_dominant, positive_roots, Character, WeylElem};
use zipcone_core::{Ring, Q};

fn elem(n: usize, seed: u64) -> WeylElem {
    random_element(n, &mut rng(seed))
}

fn character() -> impl Strategy<Value = (usize, Vec<i64>, i64)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(-30i64..=30, n), -5i64..=5))
}

proptest! {
    #[test]
    fn action_is_a_group_action(n in 1usize..=5, s1: u64, s2: u64, a in prop::collection::vec(-9i64..=9, 5), b in -3i64..=3) {
        let (u, v) = (elem(n, s1), elem(n, s2));
        let chi = Character::new(a[..n].to_vec(), b);
        let uv = u.compose(&v).unwrap();
        prop_assert_eq!(uv.act(&chi).unwrap(), u.act(&v.act(&chi).unwrap()).unwrap());
        prop_assert_eq!(WeylElem::identity(n).act(&chi).unwrap(), chi);
    }

    #[test]
    fn pairing_is_invariant(n in 1usize..=5, s: u64, a in prop::collection::vec(-9i64..=9, 5)) {
        let w = elem(n, s);
        let chi = Character::new(a[..n].to_vec(), 0);
        let moved = w.act(&chi).unwrap();
        for alpha in positive_roots(n).unwrap() {
            let (positive, image) = w.act_root(alpha);
            let v = image.pair(&moved);
            prop_assert_eq!(if positive { v } else { -v }, alpha.pair(&chi));
        }
    }

    #[test]
    fn composition_laws(n in 1usize..=6, s1: u64, s2: u64, s3: u64) {
        let (a, b, c) = (elem(n, s1), elem(n, s2), elem(n, s3));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.inverse(), b.inverse().compose(&a.inverse()).unwrap());
        prop_assert_eq!(a.length(), a.inverse().length());
        prop_assert_eq!(a.length(), a.inversion_count());
    }

    #[test]
    fn neighbors_agree_rank5(s: u64) {
        let w = elem(5, s);
        prop_assert_eq!(lower_neighbors(&w), lower_neighbors_oracle(&w));
    }

    #[test]
    fn covers_lie_below(n in 2usize..=5, s: u64) {
        let w = elem(n, s);
        for v in lower_neighbors(&w).covered() {
            prop_assert!(bruhat_leq(&v, &w).unwrap());
            prop_assert_eq!(v.length() + 1, w.length());
        }
    }

    #[test]
    fn hasse_preimage_round_trip(n in 1usize..=4, s: u64, p in 2i64..=11, a in prop::collection::vec(-9i64..=9, 4), b in -3i64..=3) {
        let w = elem(n, s);
        let h = hasse_map(&w, p).unwrap();
        let chi: Character<Q> = Character::new(a[..n].to_vec(), b).to_scalar();
        prop_assert_eq!(h.preimage(&h.apply(&chi).unwrap()).unwrap(), chi);
    }

    #[test]
    fn worst_subset_matches_enumeration((n, a, b) in character(), p in 2i64..=7) {
        prop_assume!(n <= 4);
        let lam: Character<Q> = Character::new(a, b).to_scalar();
        prop_assert_eq!(lmin_member(&lam, p).unwrap(), lmin_member_enumerated(&lam, p).unwrap());
    }

    #[test]
    fn prefix_cone_is_dominant_lmin((n, mut a, b) in character(), p in 2i64..=7) {
        prop_assume!(n <= 4);
        a.sort_by(|x, y| y.cmp(x));
        let lam: Character<Q> = Character::new(a, b).to_scalar();
        prop_assert!(is_i_dominant(&lam));
        let cone: Cone<Q> = lmin_prefix_cone(n, p).unwrap();
        prop_assert_eq!(cone.contains(&lam), lmin_member(&lam, p).unwrap());
    }

    #[test]
    fn farkas_certificates_verify(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..7), t in prop::collection::vec(-3i64..=3, 4)) {
        let to_q = |v: &Vec<i64>| v.iter().map(|&x| Q::from_i64(x)).collect::<Vec<Q>>();
        let cone = Cone::from_hform(4, rows.iter().map(to_q).collect()).unwrap();
        let cert = farkas_implies(&to_q(&t), &cone).unwrap();
        prop_assert!(cert.verify(&cone.hform));
    }
}
