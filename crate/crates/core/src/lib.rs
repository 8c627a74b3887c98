//! Exact combinatorics of charged symbols, κ-sequences, the bijection τ,
//! alcove orders and Calogero–Moser block partitions for the complex
//! reflection groups G(ℓ,1,n) and G(ℓ,e,n).

pub mod afunction;
pub mod blocks;
pub mod error;
pub mod orders;
pub mod params;
pub mod partition;
pub mod poset;
pub mod rational;
pub mod symbols;
pub mod tau;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{
    dominance_compare, enumerate_multipartitions, partitions, Multipartition, Partition,
    Permutation, RationalSeq, Verdict,
};
pub use rational::Rational;
pub use symbols::{kappa, kappa_compare, min_size, n_value, shifted_symbol, KappaSequence, Symbol};
pub use tau::{act_charge, beta_set, ell_core, j_heart, tau, tau_inverse, Charge, ResidueSet};
