//! Free-group words, the semidirect product `((A ∗ B) × C) ⋊ D`, and
//! homomorphisms from free groups into V.

mod free;
mod hom;
mod semidirect;

pub use free::{word_reduce, AbWord, Alphabet, CWord, DWord, Family, FreeWord, Generator, Letter};
pub use hom::{reduced_word_count, FreenessReport, Instance, VHom};
pub use semidirect::{Psi, Semidirect, SemidirectElement};
