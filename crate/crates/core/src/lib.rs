//! Quantum hashing of finite abelian group elements through small-bias sets.
//!
//! A multiset `S` of elements of a finite abelian group `G` is ε-biased when
//! every nontrivial character averages to at most ε over `S`. Each message
//! `a ∈ G` is mapped to the state `|ψ_S(a)⟩ = |S|^{-1/2} Σ_{x∈S} χ_a(x)|x⟩`
//! on `⌈log₂|S|⌉` qubits, and distinct messages give states whose overlap is
//! bounded by the bias of `S`.
//!
//! - [`group`]: groups, elements, characters.
//! - [`gf2m`]: GF(2^m) arithmetic for the explicit powering construction.
//! - [`bias`]: constructing and certifying ε-biased sets.
//! - [`qhash`]: hash states, overlaps, collision spectra, balanced codes, size accounting.
//! - [`protocols`]: SWAP test, equality testing, irreversibility accounting.
//! - [`cli`]: the `qhash` command-line front end.

pub mod bias;
pub mod cli;
pub mod error;
pub mod gf2m;
pub mod group;
pub mod protocols;
pub mod qhash;
pub mod rng;

pub use bias::{BiasedSet, Certification, Provenance};
pub use error::{Error, Result};
pub use gf2m::FieldGF2m;
pub use group::{AbelianGroup, GroupElement};
pub use protocols::{IrreversibilityReport, SwapTestResult};
pub use qhash::QuantumHash;
