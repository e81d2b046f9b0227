use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph contains a directed cycle through `{0}`")]
    CycleDetected(String),
    #[error("vertex `{0}` declared more than once")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graphs with more than {max} vertices are not supported (got {got})")]
    TooManyVertices { got: usize, max: usize },
    #[error("malformed local isomorphism: {0}")]
    MalformedIso(String),
    #[error("{got} non-identity local isomorphisms exceed the enumeration bound {bound}")]
    TooManyIsos { got: usize, bound: usize },
    #[error("vertex set is not downward closed")]
    NotClosed,
    #[error("restriction target is not a subset of the index domain")]
    NotSubset,
    #[error("index is not generic for this CLIC")]
    NotGeneric,
    #[error("wedge domain is not downward closed")]
    WedgeDomainNotClosed,
    #[error("value {value} at `{vertex}` lies outside the permutation box {size}")]
    ValueOutOfBox {
        vertex: String,
        value: u64,
        size: u32,
    },
    #[error("invalid permutation table: {0}")]
    InvalidPermutation(String),
    #[error("no generic index exists in the box")]
    EmptyIndexSet,
    #[error("permuted index falls outside the materialized array")]
    ImageOutsideBox,
    #[error("permutation does not commute with the CLIC")]
    NotKCommuting,
    #[error("the two indices belong to the same class")]
    SameClass,
    #[error("invalid sampling configuration: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = core::result::Result<T, Error>;
