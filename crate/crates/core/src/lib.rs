//! Combinatorics of jointly exchangeable arrays indexed by DAGs.
//!
//! The crate is `no_std` and only needs `alloc`. It covers DAG closures and
//! the closed-subgraph lattice ([`dag`]), local isomorphisms and CLICs
//! ([`clic`]), index classes and their canonical keys ([`index`]),
//! hierarchical permutations commuting with a CLIC ([`perm`]) and the
//! class-keyed generative sampler ([`sampler`]).
#![no_std]

extern crate alloc;

pub mod clic;
pub mod dag;
pub mod error;
pub mod index;
pub mod perm;
pub mod sampler;

pub use clic::{Clic, LocalIso};
pub use dag::{Dag, Vertex, VertexSet};
pub use error::{Error, Result};
pub use index::{ClassKey, Classifier, Index};
pub use perm::{GPermutation, ShiftInjection};
pub use sampler::{ArrayBundle, FSpec, SampleSpec};
