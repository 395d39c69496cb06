//! Varieties of ε-interleavings between persistence modules that decompose
//! into finite half-open intervals.
//!
//! For `M = ⊕ M_j` and `N = ⊕ N_i`, an ε-interleaving is a pair of matrices
//! `K` (for `Φ: M -> N·ε`) and `L` (for `Ψ: N -> M·ε`) of scalars with
//! `L·K = Π_M` and `K·L = Π_N` on the entries that can be nonzero. The set of
//! such pairs is an affine variety; this crate
//!
//! * computes hom windows between intervals ([`interval`], [`hom`]),
//! * builds the polynomial presentation of the variety ([`variety`]),
//! * classifies the variety for interval pairs and its whole progression in ε
//!   ([`classify`]),
//! * computes interleaving distances of direct sums through bottleneck
//!   matchings ([`matching`]),
//! * and cross-checks all of the above at the morphism level ([`oracle`],
//!   [`verify`]).
//!
//! All arithmetic is exact ([`Rational`]). The crate is `no_std` and needs
//! only `alloc`.

#![no_std]

extern crate alloc;

pub mod classify;
pub mod error;
pub mod hom;
pub mod interval;
pub mod matching;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod variety;
pub mod verify;

pub use classify::{
    breakpoints, classify, predicted_progression, progression, Progression, Segment, VarietyClass,
};
pub use error::{Error, Result};
pub use hom::{hom_life, single_hom_survives, HomLifeSummary};
pub use interval::{
    hom_nonzero, hom_window, projection_nonzero, shift, width, HomWindow, IntervalModule,
    PersistenceModule,
};
pub use matching::{match_distance, MatchingResult};
pub use oracle::{
    check_interleaving, classify_solutions_1x1, probe_solutions, ProbeOutcome, ScalarAssignment,
};
pub use poly::{canonicalize, Family, Monomial, Polynomial, Variable};
pub use rational::Rational;
pub use variety::{build_variety, StatusHint, VarietyPresentation};
