//! Uncertainty-weighted causal graphs and a fake-information classifier
//! built on grid-approximated entropy and KL divergence.
//!
//! Every edge `cause -> effect` of a [`WeightedCausalGraph`] carries a
//! density over a latent certainty factor `x ∈ [0, 1]`. Frequency adverbs
//! ("usually", "hardly ever", ...) map to prior densities through an
//! [`AdverbLexicon`]; repeated evidence is fused into the edge posterior.
//! New assertions are scored against the learned posteriors by
//! [`classify::causal_verdict`] and whole sources by
//! [`classify::source_verdict`].
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line interface live in the `causaltrust` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classify;
pub mod density;
mod error;
pub mod extract;
pub mod graph;
pub mod lexicon;
pub mod synth;
mod text;

pub use classify::{
    CausalDecision, CausalVerdict, Hyperparameters, LearnMode, LearningReport, SourceDecision,
    SourceVerdict, UnknownEdgePolicy, VerdictStatus,
};
pub use density::{beta_pdf_grid, DensityGrid};
pub use error::{Error, Result};
pub use extract::{Corpus, Diagnostic, InputMode};
pub use graph::{CausalAssertion, CausalEdge, RepeatPolicy, WeightedCausalGraph};
pub use lexicon::{AdverbEntry, AdverbLexicon, AdverbSpec, LexiconConfig};
pub use synth::SynthScenario;
pub use text::canonicalize;
