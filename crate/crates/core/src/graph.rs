//! Weighted causal graph: concepts joined by edges that carry a prior and a
//! posterior density over the certainty factor.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::density::{DensityGrid, DEFAULT_SMOOTHING};
use crate::error::{Error, Result};
use crate::extract::Corpus;
use crate::lexicon::AdverbLexicon;
use crate::text::canonicalize;

/// Where an assertion came from. Both fields are informational.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub source_id: Option<String>,
    pub sentence: Option<String>,
}

/// `cause --adverb--> effect`, with canonicalized concept and adverb tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalAssertion {
    cause: String,
    adverb: String,
    effect: String,
    pub provenance: Provenance,
}

impl CausalAssertion {
    pub fn new(cause: &str, adverb: &str, effect: &str) -> Result<Self> {
        let cause = canonicalize(cause);
        let adverb = canonicalize(adverb);
        let effect = canonicalize(effect);
        if cause.is_empty() {
            return Err(Error::EmptyField("cause"));
        }
        if effect.is_empty() {
            return Err(Error::EmptyField("effect"));
        }
        if adverb.is_empty() {
            return Err(Error::EmptyField("adverb"));
        }
        if cause == effect {
            return Err(Error::SelfLoop(cause));
        }
        Ok(Self {
            cause,
            adverb,
            effect,
            provenance: Provenance::default(),
        })
    }

    pub fn with_source(mut self, source_id: &str) -> Self {
        self.provenance.source_id = Some(source_id.into());
        self
    }

    pub fn with_sentence(mut self, sentence: &str) -> Self {
        self.provenance.sentence = Some(sentence.into());
        self
    }

    pub fn cause(&self) -> &str {
        &self.cause
    }

    pub fn adverb(&self) -> &str {
        &self.adverb
    }

    pub fn effect(&self) -> &str {
        &self.effect
    }

    pub fn key(&self) -> EdgeKey {
        EdgeKey {
            cause: self.cause.clone(),
            effect: self.effect.clone(),
        }
    }

    /// Same relation and adverb, ignoring provenance.
    pub fn same_claim(&self, other: &Self) -> bool {
        self.cause == other.cause && self.adverb == other.adverb && self.effect == other.effect
    }
}

/// Ordered pair `(cause, effect)`; `A -> B` and `B -> A` are distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub cause: String,
    pub effect: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalEdge {
    cause: String,
    effect: String,
    prior: DensityGrid,
    posterior: DensityGrid,
    observations: Vec<String>,
}

impl CausalEdge {
    pub fn cause(&self) -> &str {
        &self.cause
    }

    pub fn effect(&self) -> &str {
        &self.effect
    }

    /// Prior of the first observed adverb.
    pub fn prior(&self) -> &DensityGrid {
        &self.prior
    }

    pub fn posterior(&self) -> &DensityGrid {
        &self.posterior
    }

    /// Adverbs fused into this edge, in arrival order.
    pub fn observations(&self) -> &[String] {
        &self.observations
    }

    pub fn observation_count(&self) -> usize {
        self.observations.len()
    }
}

/// Logarithmic opinion pool of two densities: normalized pointwise product.
///
/// When the product has no usable mass (disjoint supports or underflow) the
/// product is smoothed with `eps` instead, which yields the uniform density.
pub fn fuse_with(posterior: &DensityGrid, evidence: &DensityGrid, eps: f64) -> Result<DensityGrid> {
    let product = posterior.product(evidence)?;
    match product.normalize() {
        Ok(fused) => Ok(fused),
        Err(Error::DegenerateDensity) => product.smooth(eps),
        Err(e) => Err(e),
    }
}

pub fn fuse(posterior: &DensityGrid, evidence: &DensityGrid) -> Result<DensityGrid> {
    fuse_with(posterior, evidence, DEFAULT_SMOOTHING)
}

/// How repeated identical claims from a single source are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepeatPolicy {
    /// Each distinct `(cause, adverb, effect)` is fused once per source.
    #[default]
    OncePerSource,
    /// Every occurrence is fused.
    EveryOccurrence,
}

/// Outcome of feeding one assertion of a corpus into the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IngestOutcome {
    Fused,
    /// Already fused earlier from the same source under [`RepeatPolicy::OncePerSource`].
    Repeated,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IngestSummary {
    pub outcomes: Vec<IngestOutcome>,
}

impl IngestSummary {
    pub fn fused(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| **o == IngestOutcome::Fused)
            .count()
    }

    pub fn repeated(&self) -> usize {
        self.outcomes.len() - self.fused()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCausalGraph {
    resolution: usize,
    concepts: BTreeSet<String>,
    edges: BTreeMap<EdgeKey, CausalEdge>,
}

impl WeightedCausalGraph {
    pub fn new(resolution: usize) -> Self {
        Self {
            resolution,
            concepts: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn concepts(&self) -> impl Iterator<Item = &str> {
        self.concepts.iter().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = &CausalEdge> {
        self.edges.values()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn observation_count(&self) -> usize {
        self.edges.values().map(CausalEdge::observation_count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.concepts.is_empty()
    }

    /// Lookup after canonicalizing both concepts.
    pub fn get_edge(&self, cause: &str, effect: &str) -> Option<&CausalEdge> {
        self.edges.get(&EdgeKey {
            cause: canonicalize(cause),
            effect: canonicalize(effect),
        })
    }

    /// Creates the edge with the adverb's prior on first sight, otherwise
    /// fuses the adverb's prior into the current posterior.
    pub fn add_assertion(
        &mut self,
        assertion: &CausalAssertion,
        lexicon: &AdverbLexicon,
    ) -> Result<&CausalEdge> {
        if lexicon.resolution() != self.resolution {
            return Err(Error::ResolutionMismatch {
                left: self.resolution,
                right: lexicon.resolution(),
            });
        }
        let evidence = lexicon.prior(assertion.adverb())?;
        let key = assertion.key();
        if let Some(edge) = self.edges.get_mut(&key) {
            edge.posterior = fuse(&edge.posterior, evidence)?;
            edge.observations.push(assertion.adverb().into());
        } else {
            self.concepts.insert(key.cause.clone());
            self.concepts.insert(key.effect.clone());
            let edge = CausalEdge {
                cause: key.cause.clone(),
                effect: key.effect.clone(),
                prior: evidence.clone(),
                posterior: evidence.clone(),
                observations: alloc::vec![assertion.adverb().into()],
            };
            self.edges.insert(key.clone(), edge);
        }
        Ok(&self.edges[&key])
    }

    /// Feeds a whole corpus, honouring the repeat policy within the corpus.
    /// Stops at the first assertion whose adverb is not in the lexicon.
    pub fn ingest(
        &mut self,
        corpus: &Corpus,
        lexicon: &AdverbLexicon,
        policy: RepeatPolicy,
    ) -> Result<IngestSummary> {
        let mut seen: Vec<&CausalAssertion> = Vec::new();
        let mut summary = IngestSummary::default();
        for assertion in corpus.assertions() {
            if policy == RepeatPolicy::OncePerSource {
                if seen.iter().any(|s| s.same_claim(assertion)) {
                    summary.outcomes.push(IngestOutcome::Repeated);
                    continue;
                }
                seen.push(assertion);
            }
            self.add_assertion(assertion, lexicon)?;
            summary.outcomes.push(IngestOutcome::Fused);
        }
        Ok(summary)
    }

    /// Rebuilds an edge's posterior from its observation list.
    pub fn replay(edge: &CausalEdge, lexicon: &AdverbLexicon) -> Result<DensityGrid> {
        let mut adverbs = edge.observations.iter();
        let first = adverbs
            .next()
            .ok_or_else(|| Error::InconsistentGraph("edge without observations".into()))?;
        let mut posterior = lexicon.prior(first)?.clone();
        for adverb in adverbs {
            posterior = fuse(&posterior, lexicon.prior(adverb)?)?;
        }
        Ok(posterior)
    }

    pub fn insert_concept(&mut self, concept: &str) -> Result<()> {
        let concept = canonicalize(concept);
        if concept.is_empty() {
            return Err(Error::EmptyField("concept"));
        }
        self.concepts.insert(concept);
        Ok(())
    }

    /// Inserts a fully formed edge, checking the edge invariants against
    /// the lexicon. Used when restoring a persisted graph.
    pub fn restore_edge(
        &mut self,
        cause: &str,
        effect: &str,
        prior: DensityGrid,
        posterior: DensityGrid,
        observations: Vec<String>,
        lexicon: &AdverbLexicon,
    ) -> Result<()> {
        let probe = CausalAssertion::new(cause, "x", effect)?;
        let key = probe.key();
        let fail = |what: &str| {
            Err(Error::InconsistentGraph(alloc::format!(
                "edge {} -> {}: {what}",
                key.cause,
                key.effect
            )))
        };
        if self.edges.contains_key(&key) {
            return fail("duplicate edge");
        }
        if prior.resolution() != self.resolution || posterior.resolution() != self.resolution {
            return fail("grid resolution differs from graph");
        }
        if !posterior.is_normalized() {
            return fail("posterior is not normalized");
        }
        let Some(first) = observations.first() else {
            return fail("no observations");
        };
        let expected = lexicon.prior(first)?;
        if prior.sup_distance(expected)? > 1e-9 {
            return fail("prior differs from the lexicon prior of its first adverb");
        }
        for adverb in &observations {
            lexicon.prior(adverb)?;
        }
        if !self.concepts.contains(&key.cause) || !self.concepts.contains(&key.effect) {
            return fail("endpoint missing from the concept set");
        }
        let edge = CausalEdge {
            cause: key.cause.clone(),
            effect: key.effect.clone(),
            prior,
            posterior,
            observations: observations.into_iter().map(|a| canonicalize(&a)).collect(),
        };
        let replayed = Self::replay(&edge, lexicon)?;
        let peak = replayed.heights().iter().fold(1.0_f64, |m, &v| m.max(v));
        if replayed.sup_distance(&edge.posterior)? > 1e-9 * peak {
            return fail("posterior differs from the fold of its observations");
        }
        self.edges.insert(key, edge);
        Ok(())
    }
}
