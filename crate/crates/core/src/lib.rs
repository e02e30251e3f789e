//! Weyl-group combinatorics for homogeneous right coideal subalgebras of
//! quantized enveloping algebras.
//!
//! The subalgebras are parametrized by triples `(x, u, J)` with
//! `J ⊆ Π ∩ xΠ` and `u⁻¹ ≤_R x`; the triple corresponds to the pair
//! `(u w_J, u w_J x)`. This crate enumerates the triples, maps them to pairs
//! and back, and counts them for every finite Weyl group of moderate order.
//!
//! ```
//! use weyl_coideal::{census, coideal, GroupTable};
//!
//! let t = GroupTable::builtin("B3")?;
//! assert_eq!(census::count_bw(&t)?, 664);
//!
//! for tr in coideal::enumerate_triples(&t).take(3) {
//!     let pair = coideal::triple_to_pair(&t, tr)?;
//!     assert_eq!(coideal::pair_to_triple(&t, pair), Some(tr));
//! }
//! # Ok::<(), weyl_coideal::Error>(())
//! ```

// Cartan-matrix and root-coordinate loops read most clearly with indices.
#![allow(clippy::needless_range_loop)]

pub mod bits;
pub mod census;
pub mod coideal;
pub mod error;
pub mod rootsys;
pub mod verify;
pub mod weylgroup;
pub mod word;

pub use bits::{InvSet, SimpleSet};
pub use error::{Error, Result};
pub use rootsys::{CartanMatrix, Rational, Root, RootSystem, SignedRoot};
pub use weylgroup::{Elem, ElementRecord, GroupTable, WeylElement};
