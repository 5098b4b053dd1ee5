//! Finite posets, pp-morphisms and the finite duality between posets and
//! distributive p-algebras.
//!
//! The crate decides membership and inclusion among quasivarieties generated
//! by finite p-algebras by working entirely on the dual side: a finite
//! p-algebra is represented by its poset of join-irreducibles, subalgebras
//! correspond to surjective pp-morphisms, and quasivariety membership becomes
//! a coverage question about images of pp-morphisms.
//!
//! Everything here is `no_std` (with `alloc`) and free of IO. File formats,
//! verification reports and the command line live in the `paq` crate.
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod duality;
pub mod enumerate;
pub mod error;
pub mod iso;
pub mod morphism;
pub mod poset;
pub mod quasivar;
pub mod set;

pub use duality::{PAlgebra, IbOutcome};
pub use error::{AlgebraViolation, BudgetExceeded, OrderViolation, PosetError, PpFailure, QuasivarError};
pub use morphism::{CoverageReport, PpMorphism};
pub use poset::{MaxSet, Poset, Relation};
pub use quasivar::{MembershipCertificate, ReducedPoset, Verdict};
pub use set::ElemSet;

/// Largest carrier a [`Poset`] may have; element sets are single machine words.
pub const MAX_ELEMENTS: usize = 64;
