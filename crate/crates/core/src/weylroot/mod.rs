//! Root datum of GSp(2n): characters, positive roots and their coroot
//! pairings, and the Weyl group as mirror-symmetric permutations of 1..2n.
//!
//! Conventions used throughout the crate:
//!
//! * composition is `(u·v)(i) = u(v(i))`, so right multiplication by a
//!   reflection permutes positions;
//! * `w` acts on characters by moving the coefficient a_i to slot w(i), with a
//!   sign flip when w(i) lies in the mirrored half. In particular w_0 acts as
//!   -1 on (a_1..a_n) and every element fixes b.

mod character;
mod element;
mod root;

pub use character::{format_character, is_i_dominant, parse_character, Character};
pub use element::{
    all_elements, canonical_elements, levi_elements, longest, longest_levi, reflection, wmax,
    CanonicalElements, WeylElem,
};
pub use root::{
    levi_roots, levi_simple_roots, pairing, positive_roots, simple_roots, unipotent_roots, Orbit,
    Root,
};
