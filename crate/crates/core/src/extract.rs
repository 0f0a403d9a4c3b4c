//! Turning text into [`CausalAssertion`]s.
//!
//! Two input modes are supported. The structured mode reads one
//! `cause | adverb | effect` triple per line, `#` starts a comment line.
//! The free-text mode splits text into sentences and clauses and matches
//! `<X> <adverb> causes <Y>` or `<X> causes <Y>`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::CausalAssertion;
use crate::lexicon::AdverbLexicon;

/// Adverb assumed for an unhedged `X causes Y`.
pub const DEFAULT_BARE_ADVERB: &str = "always";

/// Assertions retrieved from one source, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    source_id: String,
    assertions: Vec<CausalAssertion>,
    /// Free-form origin note, e.g. the generator and seed of a synthetic corpus.
    pub provenance: Option<String>,
}

impl Corpus {
    pub fn new(source_id: &str, assertions: Vec<CausalAssertion>) -> Result<Self> {
        if source_id.trim().is_empty() {
            return Err(Error::EmptyField("source id"));
        }
        Ok(Self {
            source_id: source_id.to_string(),
            assertions,
            provenance: None,
        })
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn assertions(&self) -> &[CausalAssertion] {
        &self.assertions
    }

    pub fn len(&self) -> usize {
        self.assertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assertions.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputMode {
    #[default]
    Structured,
    FreeText,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractOptions {
    pub mode: InputMode,
    pub default_adverb: String,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            mode: InputMode::Structured,
            default_adverb: DEFAULT_BARE_ADVERB.to_string(),
        }
    }
}

/// A skipped input line. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub reason: String,
}

pub fn parse_structured_line(line: &str, lexicon: &AdverbLexicon) -> Result<CausalAssertion> {
    let fields: Vec<&str> = line.split('|').collect();
    if fields.len() != 3 {
        return Err(Error::FieldCount(fields.len()));
    }
    let assertion = CausalAssertion::new(fields[0], fields[1], fields[2])?;
    if lexicon.lookup(assertion.adverb()).is_none() {
        return Err(Error::UnknownAdverb(assertion.adverb().into()));
    }
    Ok(assertion)
}

pub fn format_structured_line(assertion: &CausalAssertion) -> String {
    format!(
        "{} | {} | {}",
        assertion.cause(),
        assertion.adverb(),
        assertion.effect()
    )
}

/// Result of scanning one sentence in free-text mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SentenceScan {
    Matched(Vec<CausalAssertion>),
    /// A negated causal claim such as "does not cause"; not modeled.
    Negated,
    NoMatch,
}

const NEGATORS: [&str; 2] = ["not", "cannot"];

fn is_negator(token: &str) -> bool {
    NEGATORS.contains(&token) || token.ends_with("n't") || token.ends_with("n’t")
}

fn clean_token(raw: &str) -> String {
    raw.trim_matches(|c: char| !(c.is_alphanumeric() || c == '\'' || c == '’' || c == '-'))
        .chars()
        .flat_map(char::to_lowercase)
        .collect()
}

fn scan_clause(
    clause: &str,
    adverbs: &[&str],
    default_adverb: &str,
) -> core::result::Result<Option<CausalAssertion>, ()> {
    let tokens: Vec<String> = clause
        .split_whitespace()
        .map(clean_token)
        .filter(|t| !t.is_empty())
        .collect();
    let Some(verb) = tokens.iter().position(|t| t == "causes" || t == "cause") else {
        return Ok(None);
    };
    // "does not cause", "doesn't always cause"
    if tokens[verb.saturating_sub(2)..verb]
        .iter()
        .any(|t| is_negator(t))
    {
        return Err(());
    }
    if tokens[verb] != "causes" {
        return Ok(None);
    }
    let before = &tokens[..verb];
    let mut adverb = None;
    let mut cause_len = before.len();
    for name in adverbs {
        let words: Vec<&str> = name.split(' ').collect();
        if words.len() < before.len() && before.ends_with_words(&words) {
            adverb = Some(*name);
            cause_len = before.len() - words.len();
            break;
        }
    }
    let adverb = adverb.unwrap_or(default_adverb);
    let cause = before[..cause_len].join(" ");
    let effect = tokens[verb + 1..].join(" ");
    Ok(CausalAssertion::new(&cause, adverb, &effect).ok())
}

trait EndsWithWords {
    fn ends_with_words(&self, words: &[&str]) -> bool;
}

impl EndsWithWords for [String] {
    fn ends_with_words(&self, words: &[&str]) -> bool {
        self.len() >= words.len()
            && self[self.len() - words.len()..]
                .iter()
                .zip(words)
                .all(|(t, w)| t == w)
    }
}

fn adverbs_longest_first(lexicon: &AdverbLexicon) -> Vec<&str> {
    let mut names: Vec<&str> = lexicon.entries().iter().map(|e| e.name()).collect();
    names.sort_by(|a, b| {
        let words = |s: &str| s.split(' ').count();
        words(b).cmp(&words(a)).then_with(|| b.len().cmp(&a.len()))
    });
    names
}

/// Scans a sentence clause by clause (split on `,`, `;` and `:`).
pub fn scan_sentence(
    sentence: &str,
    lexicon: &AdverbLexicon,
    default_adverb: &str,
) -> SentenceScan {
    let adverbs = adverbs_longest_first(lexicon);
    let mut found = Vec::new();
    let mut negated = false;
    for clause in sentence.split([',', ';', ':']) {
        match scan_clause(clause, &adverbs, default_adverb) {
            Ok(Some(a)) => found.push(a.with_sentence(sentence.trim())),
            Ok(None) => {}
            Err(()) => negated = true,
        }
    }
    if !found.is_empty() {
        SentenceScan::Matched(found)
    } else if negated {
        SentenceScan::Negated
    } else {
        SentenceScan::NoMatch
    }
}

/// Pattern-based extraction from a single sentence. Returns an empty list
/// when nothing matches or the claim is negated.
pub fn extract_from_sentence(
    sentence: &str,
    lexicon: &AdverbLexicon,
    default_adverb: &str,
) -> Vec<CausalAssertion> {
    match scan_sentence(sentence, lexicon, default_adverb) {
        SentenceScan::Matched(found) => found,
        _ => Vec::new(),
    }
}

/// Splits on `.`, `!`, `?` and line breaks, dropping empty pieces.
pub fn split_sentences(text: &str) -> impl Iterator<Item = &str> {
    text.split(['.', '!', '?', '\n', '\r'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
}

/// Parses a whole document. Every skipped line or sentence produces one
/// [`Diagnostic`].
pub fn parse_corpus(
    source_id: &str,
    text: &str,
    lexicon: &AdverbLexicon,
    options: &ExtractOptions,
) -> Result<(Corpus, Vec<Diagnostic>)> {
    let mut assertions = Vec::new();
    let mut diagnostics = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match options.mode {
            InputMode::Structured => match parse_structured_line(trimmed, lexicon) {
                Ok(a) => assertions.push(a.with_source(source_id)),
                Err(e) => diagnostics.push(Diagnostic {
                    line: line_no,
                    reason: e.to_string(),
                }),
            },
            InputMode::FreeText => {
                for sentence in split_sentences(trimmed) {
                    match scan_sentence(sentence, lexicon, &options.default_adverb) {
                        SentenceScan::Matched(found) => {
                            assertions.extend(found.into_iter().map(|a| a.with_source(source_id)))
                        }
                        SentenceScan::Negated => diagnostics.push(Diagnostic {
                            line: line_no,
                            reason: format!("negated causal claim skipped: \"{sentence}\""),
                        }),
                        SentenceScan::NoMatch => {}
                    }
                }
            }
        }
    }
    Ok((Corpus::new(source_id, assertions)?, diagnostics))
}
