//! Synthetic train/classify experiments.
//!
//! A training corpus is drawn over `{a, b, c}` with one adverb subset, the
//! graph is trained on it, and a test corpus drawn with a second subset is
//! classified against the trained graph.

use std::fs;
use std::path::Path;

use causaltrust_core::classify::{self, apply_learning_policy, LearningReport};
use causaltrust_core::synth::{self, Quota};
use causaltrust_core::{
    AdverbLexicon, Corpus, Hyperparameters, SourceVerdict, SynthScenario, WeightedCausalGraph,
};

use crate::corpus_file::save_corpus;
use crate::graph_file::save_graph;
use crate::report::{learning_summary, transcript, VerdictReport};
use crate::AppError;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRAIN_DRAWS: usize = 200;
pub const DEFAULT_TEST_COUNT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Train on usually/normally, test on infrequently/seldom.
    Divergent,
    /// Train on usually/normally, test on frequently/regularly.
    Similar,
}

impl Preset {
    pub fn train_adverbs(self) -> &'static [&'static str] {
        &["usually", "normally"]
    }

    pub fn test_adverbs(self) -> &'static [&'static str] {
        match self {
            Preset::Divergent => &["infrequently", "seldom"],
            Preset::Similar => &["frequently", "regularly"],
        }
    }

    pub fn plan(self, seed: u64) -> SimulationPlan {
        SimulationPlan::new(
            self.train_adverbs(),
            self.test_adverbs(),
            DEFAULT_TRAIN_DRAWS,
            DEFAULT_TEST_COUNT,
            seed,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationPlan {
    pub train: SynthScenario,
    pub test: SynthScenario,
}

impl SimulationPlan {
    /// The test corpus uses `seed + 1` so both corpora are independent
    /// streams fixed by one seed.
    pub fn new(
        train_adverbs: &[&str],
        test_adverbs: &[&str],
        train_draws: usize,
        test_count: usize,
        seed: u64,
    ) -> Self {
        Self {
            train: SynthScenario::new(Quota::Draws(train_draws), train_adverbs, seed),
            test: SynthScenario::new(
                Quota::Retained(test_count),
                test_adverbs,
                seed.wrapping_add(1),
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulationOutcome {
    pub train: Corpus,
    pub test: Corpus,
    /// Graph after training, before any learning from the test corpus.
    pub trained: WeightedCausalGraph,
    pub verdict: SourceVerdict,
    pub learning: Option<(WeightedCausalGraph, LearningReport)>,
}

impl SimulationOutcome {
    pub fn report(&self) -> VerdictReport {
        VerdictReport::from_verdict(&self.verdict)
    }

    pub fn transcript(&self) -> String {
        let mut out = transcript(&self.verdict);
        if let Some((_, report)) = &self.learning {
            out.push_str(&learning_summary(report));
        }
        out
    }
}

pub fn run(
    plan: &SimulationPlan,
    hp: &Hyperparameters,
    lexicon: &AdverbLexicon,
    learn: bool,
) -> Result<SimulationOutcome, AppError> {
    hp.validate()?;
    let train = synth::generate(&plan.train, lexicon, "train")?;
    let test = synth::generate(&plan.test, lexicon, "test")?;
    let mut trained = WeightedCausalGraph::new(lexicon.resolution());
    trained.ingest(&train, lexicon, hp.repeat_policy)?;
    let verdict = match classify::source_verdict(&trained, &test, hp, lexicon) {
        Err(causaltrust_core::Error::NoScorableCausals) => {
            return Err(AppError::NoScorableCausals(test.source_id().to_owned()))
        }
        other => other?,
    };
    let learning = if learn {
        let mut updated = trained.clone();
        let report = apply_learning_policy(&mut updated, &verdict, &test, hp, lexicon)?;
        Some((updated, report))
    } else {
        None
    };
    Ok(SimulationOutcome {
        train,
        test,
        trained,
        verdict,
        learning,
    })
}

/// Writes `train.cau`, `test.cau`, `graph.json`, `report.json` and
/// `transcript.txt` (plus `graph_learned.json` when learning ran).
pub fn write_artifacts(outcome: &SimulationOutcome, dir: &Path) -> Result<(), AppError> {
    fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    save_corpus(&outcome.train, &dir.join("train.cau"))?;
    save_corpus(&outcome.test, &dir.join("test.cau"))?;
    save_graph(&outcome.trained, &dir.join("graph.json"))?;
    if let Some((learned, _)) = &outcome.learning {
        save_graph(learned, &dir.join("graph_learned.json"))?;
    }
    let report_path = dir.join("report.json");
    fs::write(&report_path, outcome.report().to_json())
        .map_err(|e| AppError::io(&report_path, e))?;
    let transcript_path = dir.join("transcript.txt");
    fs::write(&transcript_path, outcome.transcript())
        .map_err(|e| AppError::io(&transcript_path, e))?;
    Ok(())
}
