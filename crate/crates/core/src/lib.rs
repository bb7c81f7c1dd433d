//! Exact weight and character combinatorics for split reductive groups over a
//! product of embeddings: root systems and their Weyl groups, the dot action
//! on weights and locally analytic characters, strong linkage, Verma factor
//! sets and the non-criticality obstruction set of a parabolic pair.
//!
//! All arithmetic is exact. Weights are stored in fundamental-weight
//! coordinates, so coordinate `i` of a weight is its pairing with the `i`-th
//! simple coroot.

pub mod error;
pub mod linkage;
pub mod oracle;
pub mod parabolic;
pub mod rational;
pub mod rootsys;
pub mod weights;

pub use error::{Error, Result};
pub use linkage::{
    FactorSetKind, Linkage, LinkageChain, LinkageResult, LinkageStep, Member, Obstruction, DEFAULT_ORBIT_GUARD,
};
pub use parabolic::{CentralKey, ParabolicSubset};
pub use rational::Rational;
pub use rootsys::{CartanKind, CartanSpec, RootSystem, WeylElement};
pub use weights::{Convention, EmbeddingContext, GlobalRoot, LocAnChar, WeightL};
