//! File formats, reports and the command-line pipeline around
//! [`causaltrust_core`].
//!
//! * lexicon configuration (JSON), see [`lexicon_file`]
//! * `.cau` corpora and free text, see [`corpus_file`]
//! * graph persistence (JSON), see [`graph_file`]
//! * verdict reports and console transcripts, see [`report`]
//! * per-edge density CSVs, see [`plots`]
//! * the synthetic experiment driver, see [`simulate`]

pub mod cli;
pub mod corpus_file;
mod error;
pub mod graph_file;
pub mod lexicon_file;
pub mod plots;
pub mod report;
pub mod simulate;

pub use error::{AppError, ExitStatus};
