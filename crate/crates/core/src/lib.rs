//! Exact computation in Thompson's group V and in the induced action of
//! `((A ∗ B) × C) ⋊ D` on finite windows of `X^D`, where `X` is Cantor
//! space.
//!
//! The crate is layered:
//!
//! * [`words`]: binary words, eventually periodic points, prefix codes and
//!   clopen sets;
//! * [`thompson`]: canonical elements of V, composition, action and the
//!   ping-pong pair;
//! * [`groups`]: free words, the semidirect product and homomorphisms into V;
//! * [`dynamics`]: configurations, moves, witness synthesis and steering;
//! * [`verify`]: the seeded verification suites behind the `vshift` CLI.

pub mod dynamics;
pub mod error;
pub mod groups;
pub mod sample;
pub mod thompson;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
