//! Quasiperiodicity toolkit: covers, seeds and partial covers of strings.
//!
//! Every algorithm comes with an independent brute-force counterpart in
//! [`oracle`], and [`generators`] produces the structured inputs used by the
//! test-suite and the benchmark harness. Positions in all public results are
//! 1-based.

pub mod bench;
pub mod cli;
pub mod covers;
pub mod error;
pub mod generators;
pub mod jst;
pub mod oracle;
pub mod partial_covers;
pub mod seeds;
pub mod suffix_tree;
pub mod text;
pub mod verify;

pub use error::{QlabError, Result};
pub use text::{GapValue, OccList, Text};
