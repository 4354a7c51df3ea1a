//! Morse stratification data for Yang–Mills theory on closed surfaces.
//!
//! The crate has two halves:
//!
//! * An exact-arithmetic half that enumerates Harder–Narasimhan stratum types
//!   for U(n)-bundles over orientable and nonorientable surfaces, computes
//!   stratum codimensions, and assembles equivariant Poincaré series through
//!   the semistable-stratum recursion ([`hn`], [`morse`], [`series`],
//!   [`flat_table`], [`poincare`]).
//! * A numerical half that models points of the associated surface-group
//!   representation varieties as tuples of unitary (or SO(3)) matrices and
//!   verifies the structural identities between them — the double-cover map Φ
//!   and its section, the deck involution τ, fixed-locus embeddings, witness
//!   points for every stratum, and the quaternionic obstruction class
//!   ([`rep`], [`verify`]).
//!
//! The thin CLI in [`cli`] exposes `strata`, `series`, `verify`, and
//! `witness` subcommands over the same library calls; the `examples/`
//! directory exercises each capability as a runnable program.

pub mod cli;
pub mod flat_table;
pub mod hn;
pub mod linalg;
pub mod morse;
pub mod poincare;
pub mod rep;
pub mod series;
pub mod surface;
pub mod verify;
