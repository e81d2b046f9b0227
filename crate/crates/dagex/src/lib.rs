//! File formats, the statistical harness and the command-line front end
//! for `dagex-core`.

pub mod cli;
pub mod formats;
pub mod sample;
pub mod stats;
pub mod template;
