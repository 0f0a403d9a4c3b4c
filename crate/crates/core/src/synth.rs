//! Seeded synthetic corpora over a small concept alphabet.
//!
//! Each draw picks an ordered pair of distinct concepts and an adverb
//! uniformly at random; only the chain pairs `c[0] -> c[1]`, `c[1] -> c[2]`,
//! ... are retained afterwards.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extract::Corpus;
use crate::graph::CausalAssertion;
use crate::lexicon::AdverbLexicon;
use crate::text::canonicalize;

/// Generator identifier recorded in corpus provenance next to the seed.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quota {
    /// Make exactly this many draws, then filter.
    Draws(usize),
    /// Keep drawing until this many relations survive the filter.
    Retained(usize),
}

impl Quota {
    fn count(self) -> usize {
        match self {
            Quota::Draws(n) | Quota::Retained(n) => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthScenario {
    pub quota: Quota,
    pub adverbs: Vec<String>,
    pub concepts: Vec<String>,
    pub seed: u64,
}

impl SynthScenario {
    /// Scenario over the default concepts `{a, b, c}`.
    pub fn new(quota: Quota, adverbs: &[&str], seed: u64) -> Self {
        Self {
            quota,
            adverbs: adverbs.iter().map(|a| canonicalize(a)).collect(),
            concepts: ["a", "b", "c"].iter().map(|c| c.to_string()).collect(),
            seed,
        }
    }

    pub fn validate(&self, lexicon: &AdverbLexicon) -> Result<()> {
        if self.quota.count() == 0 {
            return Err(Error::InvalidScenario(
                "relation count must be at least 1".into(),
            ));
        }
        if self.adverbs.is_empty() {
            return Err(Error::InvalidScenario("adverb subset is empty".into()));
        }
        if let Some(a) = self.adverbs.iter().find(|a| lexicon.lookup(a).is_none()) {
            return Err(Error::UnknownAdverb(a.clone()));
        }
        if self.concepts.len() < 2 {
            return Err(Error::InvalidScenario("need at least 2 concepts".into()));
        }
        let mut sorted: Vec<String> = self.concepts.iter().map(|c| canonicalize(c)).collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.concepts.len() || sorted.iter().any(String::is_empty) {
            return Err(Error::InvalidScenario(
                "concepts must be distinct and nonempty".into(),
            ));
        }
        Ok(())
    }

    pub fn provenance(&self) -> String {
        format!("{RNG_ALGORITHM} seed={}", self.seed)
    }
}

/// One raw draw before filtering: indices into the concept list and adverb.
fn draw(rng: &mut ChaCha8Rng, concepts: usize, adverbs: usize) -> (usize, usize, usize) {
    let cause = rng.gen_range(0..concepts);
    let mut effect = rng.gen_range(0..concepts - 1);
    if effect >= cause {
        effect += 1;
    }
    let adverb = rng.gen_range(0..adverbs);
    (cause, effect, adverb)
}

fn is_chain_pair(cause: usize, effect: usize) -> bool {
    effect == cause + 1
}

/// Fraction of draws kept by the chain filter, useful for statistics.
pub fn retained_fraction(scenario: &SynthScenario, draws: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let kept = (0..draws)
        .filter(|_| {
            let (c, e, _) = draw(&mut rng, scenario.concepts.len(), scenario.adverbs.len());
            is_chain_pair(c, e)
        })
        .count();
    kept as f64 / draws as f64
}

pub fn generate(
    scenario: &SynthScenario,
    lexicon: &AdverbLexicon,
    source_id: &str,
) -> Result<Corpus> {
    scenario.validate(lexicon)?;
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let n_concepts = scenario.concepts.len();
    let n_adverbs = scenario.adverbs.len();
    let mut assertions = Vec::new();
    let mut draws = 0usize;
    loop {
        match scenario.quota {
            Quota::Draws(n) if draws >= n => break,
            Quota::Retained(n) if assertions.len() >= n => break,
            _ => {}
        }
        draws += 1;
        let (cause, effect, adverb) = draw(&mut rng, n_concepts, n_adverbs);
        if !is_chain_pair(cause, effect) {
            continue;
        }
        let assertion = CausalAssertion::new(
            &scenario.concepts[cause],
            &scenario.adverbs[adverb],
            &scenario.concepts[effect],
        )?
        .with_source(source_id);
        assertions.push(assertion);
    }
    let mut corpus = Corpus::new(source_id, assertions)?;
    corpus.provenance = Some(scenario.provenance());
    Ok(corpus)
}
