//! Verdict reports (JSON) and console transcripts.

use std::fmt::Write as _;

use causaltrust_core::classify::{LearnOutcome, LearningReport};
use causaltrust_core::{SourceDecision, SourceVerdict};
use serde::{Deserialize, Serialize};

/// Sentence used when a source is rejected.
pub const REJECT_SENTENCE: &str = "we must not learn causal relations from this source";
/// Sentence used when a source is accepted.
pub const ACCEPT_SENTENCE: &str = "it is a trust worthy source";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub source_id: String,
    pub gamma: f64,
    pub alpha: f64,
    pub source_decision: String,
    pub epsilon: f64,
    pub causals: Vec<CausalReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalReport {
    pub cause: String,
    pub adverb: String,
    pub effect: String,
    pub status: String,
    pub p_f: Option<f64>,
    pub decision: Option<String>,
    pub omega: Option<f64>,
}

impl VerdictReport {
    pub fn from_verdict(verdict: &SourceVerdict) -> Self {
        Self {
            source_id: verdict.source_id.clone(),
            gamma: verdict.gamma,
            alpha: verdict.alpha,
            source_decision: verdict.decision.as_str().to_owned(),
            epsilon: verdict.epsilon,
            causals: verdict
                .causals
                .iter()
                .map(|v| CausalReport {
                    cause: v.assertion.cause().to_owned(),
                    adverb: v.assertion.adverb().to_owned(),
                    effect: v.assertion.effect().to_owned(),
                    status: v.status.as_str().to_owned(),
                    p_f: v.p_f,
                    decision: v.decision.map(|d| d.as_str().to_owned()),
                    omega: v.omega,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

pub fn percent(value: f64) -> String {
    format!("{:.6}%", value * 100.0)
}

/// The source-level sentence block.
pub fn source_summary(verdict: &SourceVerdict) -> String {
    let outcome = match verdict.decision {
        SourceDecision::NotTrustworthy => REJECT_SENTENCE,
        SourceDecision::Trustworthy => ACCEPT_SENTENCE,
    };
    format!(
        "The probability of the source being non trust worthy is : {}. \
         According to the given threshold, {outcome}. \
         The confidence degree of the decision based in the threshold and the probability of the source is {}.",
        percent(verdict.alpha),
        percent(verdict.epsilon),
    )
}

/// One line per causal relation followed by the source summary.
pub fn transcript(verdict: &SourceVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Source `{}`: {} causal relations, {} scored",
        verdict.source_id,
        verdict.causals.len(),
        verdict.scored
    );
    for (i, v) in verdict.causals.iter().enumerate() {
        let a = &v.assertion;
        let _ = write!(
            out,
            "[{}] {} -> {} ({}): ",
            i + 1,
            a.cause(),
            a.effect(),
            a.adverb()
        );
        match (v.p_f, v.decision, v.omega) {
            (Some(p), Some(d), Some(omega)) => {
                let _ = writeln!(
                    out,
                    "probability of being fake {}, decision {}, confidence {}",
                    percent(p),
                    d.as_str(),
                    percent(omega)
                );
            }
            _ => {
                let _ = writeln!(out, "not scored ({})", v.status.as_str());
            }
        }
    }
    out.push_str(&source_summary(verdict));
    out.push('\n');
    out
}

pub fn learning_summary(report: &LearningReport) -> String {
    let mut out = format!(
        "Learning: {} fused, {} repeated, {} skipped\n",
        report.fused(),
        report.accepted() - report.fused(),
        report.skipped()
    );
    for (assertion, outcome) in &report.entries {
        if let LearnOutcome::Skipped(reason) = outcome {
            let _ = writeln!(
                out,
                "  skipped {} -> {} ({}): {reason}",
                assertion.cause(),
                assertion.effect(),
                assertion.adverb()
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use causaltrust_core::classify::{CausalVerdict, VerdictStatus};
    use causaltrust_core::CausalAssertion;

    fn verdict(ps: &[f64], gamma: f64) -> SourceVerdict {
        let causals = ps
            .iter()
            .map(|&p| CausalVerdict {
                assertion: CausalAssertion::new("a", "often", "b").unwrap(),
                status: VerdictStatus::Scored,
                p_f: Some(p),
                decision: Some(causaltrust_core::CausalDecision::from_score(p, 0.3)),
                omega: Some(causaltrust_core::classify::confidence(p, 0.3)),
                gate: true,
                components: None,
            })
            .collect();
        SourceVerdict::from_causals("tweets", causals, gamma).unwrap()
    }

    #[test]
    fn summary_sentences() {
        let rejected = source_summary(&verdict(&[0.4939, 0.6566, 0.5594, 0.7146, 0.6858], 0.40));
        assert!(rejected
            .starts_with("The probability of the source being non trust worthy is : 62.206"));
        assert!(rejected.contains(REJECT_SENTENCE));

        let accepted = source_summary(&verdict(&[0.1876, 0.2669, 0.5412, 0.1877, 0.4670], 0.35));
        assert!(accepted.contains("33.008000%"));
        assert!(accepted.contains(ACCEPT_SENTENCE));
    }

    #[test]
    fn report_json_shape() {
        let report = VerdictReport::from_verdict(&verdict(&[0.5], 0.35));
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in [
            "source_id",
            "gamma",
            "alpha",
            "source_decision",
            "epsilon",
            "causals",
        ] {
            assert!(value.get(key).is_some(), "{key}");
        }
        let causal = &value["causals"][0];
        for key in [
            "cause", "adverb", "effect", "status", "p_f", "decision", "omega",
        ] {
            assert!(causal.get(key).is_some(), "{key}");
        }
        assert_eq!(value["source_decision"], "not-trustworthy");
    }
}
