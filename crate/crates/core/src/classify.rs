//! Fake-information classifier.
//!
//! An incoming assertion `cause --adverb--> effect` is compared with the
//! learned edge `cause -> effect`. Scoring only happens when the edge has
//! gained knowledge, i.e. its posterior entropy is below its prior entropy.
//! The fake probability combines the squashed divergence between the edge
//! posterior `s` and the adverb prior `l` with the normalized posterior
//! entropy:
//!
//! ```text
//! p_f = ((1 - w) · (1 - exp(-KL(s || l))) + w · h_n(s))^σ
//! ```
//!
//! A source is scored by the mean fake probability `α` of its scored
//! assertions and rejected when `α > γ`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::density::{self, DensityGrid, DEFAULT_RESOLUTION, DEFAULT_SMOOTHING};
use crate::error::{Error, Result};
use crate::extract::Corpus;
use crate::graph::{CausalAssertion, RepeatPolicy, WeightedCausalGraph};
use crate::lexicon::AdverbLexicon;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnknownEdgePolicy {
    /// Assertions about unseen edges get no score and do not count towards `α`.
    Exclude,
    /// Assertions about unseen edges are scored with a fixed probability.
    ScoreConstant(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LearnMode {
    /// Learn every assertion of a trustworthy source, nothing otherwise.
    #[default]
    SourceLevel,
    /// Learn exactly the assertions classified as not fake.
    PerCausal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperparameters {
    /// Weight of the entropy term.
    pub w: f64,
    /// Exponent applied to the combined score.
    pub sigma: f64,
    /// Causal threshold: fake iff `p_f > beta`.
    pub beta: f64,
    /// Source threshold: not trustworthy iff `α > gamma`.
    pub gamma: f64,
    pub resolution: usize,
    pub eps_smooth: f64,
    /// Minimum entropy decrease for the knowledge gate.
    pub tau_h: f64,
    pub unknown_edge_policy: UnknownEdgePolicy,
    pub learn_mode: LearnMode,
    /// Optional floor on Ω (per-causal) or ε (source-level) before learning.
    pub min_confidence: Option<f64>,
    pub repeat_policy: RepeatPolicy,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Self {
            w: 0.2,
            sigma: 3.0,
            beta: 0.30,
            gamma: 0.35,
            resolution: DEFAULT_RESOLUTION,
            eps_smooth: DEFAULT_SMOOTHING,
            tau_h: 1e-9,
            unknown_edge_policy: UnknownEdgePolicy::Exclude,
            learn_mode: LearnMode::SourceLevel,
            min_confidence: None,
            repeat_policy: RepeatPolicy::OncePerSource,
        }
    }
}

fn invalid(name: &'static str, reason: &str) -> Error {
    Error::InvalidHyperparameter {
        name,
        reason: reason.to_string(),
    }
}

fn unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(invalid(name, "must lie in [0, 1]"))
    }
}

impl Hyperparameters {
    pub fn validate(&self) -> Result<()> {
        unit("w", self.w)?;
        unit("beta", self.beta)?;
        unit("gamma", self.gamma)?;
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(invalid("sigma", "must be positive"));
        }
        if self.resolution < 2 {
            return Err(invalid("grid", "must be at least 2"));
        }
        if !(self.eps_smooth > 0.0 && self.eps_smooth < 1.0) {
            return Err(invalid("eps_smooth", "must lie in (0, 1)"));
        }
        if !(self.tau_h >= 0.0 && self.tau_h.is_finite()) {
            return Err(invalid("tau_h", "must be nonnegative"));
        }
        if let UnknownEdgePolicy::ScoreConstant(p) = self.unknown_edge_policy {
            unit("unknown_edge_policy", p)?;
        }
        if let Some(c) = self.min_confidence {
            unit("min_confidence", c)?;
        }
        Ok(())
    }
}

/// Knowledge gate: true iff the posterior is sharper than the prior by more
/// than `tau_h` nats.
pub fn gate(prior: &DensityGrid, posterior: &DensityGrid, tau_h: f64) -> bool {
    posterior.entropy() < prior.entropy() - tau_h
}

/// The terms that make up a fake probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FakeScore {
    pub kl: f64,
    pub kl_normalized: f64,
    pub entropy: f64,
    pub entropy_normalized: f64,
    pub p_f: f64,
}

/// `((1 - w) · kl_n + w · h_n)^σ` for terms already in `[0, 1]`.
pub fn combine_terms(kl_normalized: f64, entropy_normalized: f64, w: f64, sigma: f64) -> f64 {
    let combined = (1.0 - w) * kl_normalized + w * entropy_normalized;
    libm::pow(combined.clamp(0.0, 1.0), sigma)
}

pub fn score_components(
    posterior: &DensityGrid,
    claim: &DensityGrid,
    hp: &Hyperparameters,
    lexicon: &AdverbLexicon,
) -> Result<FakeScore> {
    let kl = density::kl_smoothed(posterior, claim, hp.eps_smooth)?;
    // Grid KL can dip a hair below zero for identical inputs.
    let kl_normalized = density::squash_kl(kl.max(0.0))?;
    let entropy = posterior.entropy();
    let entropy_normalized = lexicon.normalized_entropy(entropy);
    let p_f = combine_terms(kl_normalized, entropy_normalized, hp.w, hp.sigma);
    Ok(FakeScore {
        kl,
        kl_normalized,
        entropy,
        entropy_normalized,
        p_f,
    })
}

/// Fake probability of a claim density `claim` against a learned posterior.
pub fn fake_probability(
    posterior: &DensityGrid,
    claim: &DensityGrid,
    hp: &Hyperparameters,
    lexicon: &AdverbLexicon,
) -> Result<f64> {
    score_components(posterior, claim, hp, lexicon).map(|s| s.p_f)
}

/// `|score - threshold| / max(1 - score, score)`; shared by Ω and ε.
pub fn confidence(score: f64, threshold: f64) -> f64 {
    (score - threshold).abs() / (1.0 - score).max(score)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalDecision {
    Fake,
    NotFake,
}

impl CausalDecision {
    pub fn from_score(p_f: f64, beta: f64) -> Self {
        if p_f > beta {
            Self::Fake
        } else {
            Self::NotFake
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fake => "fake",
            Self::NotFake => "not-fake",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceDecision {
    Trustworthy,
    NotTrustworthy,
}

impl SourceDecision {
    pub fn from_alpha(alpha: f64, gamma: f64) -> Self {
        if alpha > gamma {
            Self::NotTrustworthy
        } else {
            Self::Trustworthy
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Trustworthy => "trustworthy",
            Self::NotTrustworthy => "not-trustworthy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Scored,
    InsufficientKnowledge,
    UnknownEdge,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Scored => "scored",
            Self::InsufficientKnowledge => "insufficient-knowledge",
            Self::UnknownEdge => "unknown-edge",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalVerdict {
    pub assertion: CausalAssertion,
    pub status: VerdictStatus,
    /// Present iff the verdict carries a score.
    pub p_f: Option<f64>,
    pub decision: Option<CausalDecision>,
    pub omega: Option<f64>,
    pub gate: bool,
    pub components: Option<FakeScore>,
}

impl CausalVerdict {
    fn unscored(assertion: &CausalAssertion, status: VerdictStatus, gate: bool) -> Self {
        Self {
            assertion: assertion.clone(),
            status,
            p_f: None,
            decision: None,
            omega: None,
            gate,
            components: None,
        }
    }

    fn with_score(mut self, p_f: f64, beta: f64) -> Self {
        self.p_f = Some(p_f);
        self.decision = Some(CausalDecision::from_score(p_f, beta));
        self.omega = Some(confidence(p_f, beta));
        self
    }

    /// Whether the verdict counts towards the source's trust degree.
    pub fn is_scored(&self) -> bool {
        self.p_f.is_some()
    }
}

pub fn causal_verdict(
    graph: &WeightedCausalGraph,
    assertion: &CausalAssertion,
    hp: &Hyperparameters,
    lexicon: &AdverbLexicon,
) -> Result<CausalVerdict> {
    let claim = lexicon.prior(assertion.adverb())?;
    let Some(edge) = graph.get_edge(assertion.cause(), assertion.effect()) else {
        let verdict = CausalVerdict::unscored(assertion, VerdictStatus::UnknownEdge, false);
        return Ok(match hp.unknown_edge_policy {
            UnknownEdgePolicy::Exclude => verdict,
            UnknownEdgePolicy::ScoreConstant(p) => verdict.with_score(p, hp.beta),
        });
    };
    if !gate(edge.prior(), edge.posterior(), hp.tau_h) {
        return Ok(CausalVerdict::unscored(
            assertion,
            VerdictStatus::InsufficientKnowledge,
            false,
        ));
    }
    let score = score_components(edge.posterior(), claim, hp, lexicon)?;
    let mut verdict = CausalVerdict::unscored(assertion, VerdictStatus::Scored, true)
        .with_score(score.p_f, hp.beta);
    verdict.components = Some(score);
    Ok(verdict)
}

/// Mean of the fake probabilities, `α = Σ p_i / N`.
pub fn trust_degree(scores: &[f64]) -> Result<f64> {
    if scores.is_empty() {
        return Err(Error::NoScorableCausals);
    }
    Ok(scores.iter().sum::<f64>() / scores.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceVerdict {
    pub source_id: String,
    pub causals: Vec<CausalVerdict>,
    pub scored: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub decision: SourceDecision,
    pub epsilon: f64,
}

impl SourceVerdict {
    pub fn from_causals(source_id: &str, causals: Vec<CausalVerdict>, gamma: f64) -> Result<Self> {
        let scores: Vec<f64> = causals.iter().filter_map(|v| v.p_f).collect();
        let alpha = trust_degree(&scores)?;
        Ok(Self {
            source_id: source_id.into(),
            scored: scores.len(),
            alpha,
            gamma,
            decision: SourceDecision::from_alpha(alpha, gamma),
            epsilon: confidence(alpha, gamma),
            causals,
        })
    }
}

pub fn source_verdict(
    graph: &WeightedCausalGraph,
    corpus: &Corpus,
    hp: &Hyperparameters,
    lexicon: &AdverbLexicon,
) -> Result<SourceVerdict> {
    let causals = corpus
        .assertions()
        .iter()
        .map(|a| causal_verdict(graph, a, hp, lexicon))
        .collect::<Result<Vec<_>>>()?;
    SourceVerdict::from_causals(corpus.source_id(), causals, hp.gamma)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LearnOutcome {
    Fused,
    /// Accepted, but the same claim was already fused from this source.
    Repeated,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearningReport {
    pub mode: LearnMode,
    pub entries: Vec<(CausalAssertion, LearnOutcome)>,
}

impl LearningReport {
    pub fn accepted(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, o)| !matches!(o, LearnOutcome::Skipped(_)))
            .count()
    }

    pub fn fused(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, o)| *o == LearnOutcome::Fused)
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.len() - self.accepted()
    }
}

/// Updates the graph from a classified corpus according to `hp.learn_mode`.
///
/// `verdict` must have been computed over `corpus`, one causal verdict per
/// assertion in the same order.
pub fn apply_learning_policy(
    graph: &mut WeightedCausalGraph,
    verdict: &SourceVerdict,
    corpus: &Corpus,
    hp: &Hyperparameters,
    lexicon: &AdverbLexicon,
) -> Result<LearningReport> {
    debug_assert_eq!(verdict.causals.len(), corpus.len());
    let reasons: Vec<Option<String>> = match hp.learn_mode {
        LearnMode::SourceLevel => {
            let reason = if verdict.decision == SourceDecision::NotTrustworthy {
                Some("source is not trustworthy".to_string())
            } else if hp.min_confidence.is_some_and(|c| verdict.epsilon < c) {
                Some("source confidence below the learning floor".to_string())
            } else {
                None
            };
            corpus.assertions().iter().map(|_| reason.clone()).collect()
        }
        LearnMode::PerCausal => verdict
            .causals
            .iter()
            .map(|v| match (v.decision, v.omega) {
                (Some(CausalDecision::NotFake), Some(omega)) => {
                    if hp.min_confidence.is_some_and(|c| omega < c) {
                        Some("causal confidence below the learning floor".to_string())
                    } else {
                        None
                    }
                }
                (Some(CausalDecision::Fake), _) => Some("classified as fake".to_string()),
                _ => Some(alloc::format!("no score ({})", v.status.as_str())),
            })
            .collect(),
    };

    let mut fused_claims: Vec<&CausalAssertion> = Vec::new();
    let mut entries = Vec::with_capacity(corpus.len());
    for (assertion, reason) in corpus.assertions().iter().zip(reasons) {
        let outcome = match reason {
            Some(reason) => LearnOutcome::Skipped(reason),
            None if hp.repeat_policy == RepeatPolicy::OncePerSource
                && fused_claims.iter().any(|c| c.same_claim(assertion)) =>
            {
                LearnOutcome::Repeated
            }
            None => {
                graph.add_assertion(assertion, lexicon)?;
                fused_claims.push(assertion);
                LearnOutcome::Fused
            }
        };
        entries.push((assertion.clone(), outcome));
    }
    Ok(LearningReport {
        mode: hp.learn_mode,
        entries,
    })
}
