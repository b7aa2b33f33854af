//! Exact-computation toolkit for nearest-neighbor Markov chains on the free
//! group F₂ and for a block-built self quasi-isometry of its Cayley tree.
//!
//! The crate provides:
//!
//! - a rooted-tree model of F₂ with sphere/ball enumeration ([`word`]),
//! - an exact dynamic-programming engine for the induced birth-death chain
//!   of any length-homogeneous chain, in doubles and in exact rationals
//!   ([`radial`], [`rational`]),
//! - the two annulus λ-schedules that drive drift oscillation and CLT
//!   failure ([`profiles`]),
//! - verifiers for bounded jumps, point-probability decay, irreducibility
//!   and transience ([`tameness`]),
//! - the stretch/identity block maps, the global bijection `f`, its inverse,
//!   displacement statistics and the exact sphere-average series ([`qi`]),
//! - drift-series, oscillation and CLT diagnostics ([`diagnostics`]),
//! - deterministic CSV/JSON emission and run manifests ([`output`]).
//!
//! Everything is deterministic; samplers take explicit 64-bit seeds.

pub mod budget;
pub mod cli;
pub mod diagnostics;
pub mod output;
pub mod profiles;
pub mod qi;
pub mod radial;
pub mod rational;
pub mod tameness;
pub mod word;

pub use budget::Budget;
pub use radial::{LambdaProfile, RadialDistribution, RadialEngine};
pub use word::{Letter, WordAddress};
