//! Adverb lexicon: frequency adverbs mapped to Beta prior densities over
//! the certainty factor.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::density::{beta_pdf_grid, normalize_entropy, DensityGrid};
use crate::error::{Error, Result};
use crate::text::canonicalize;

/// Shipped adverb table, `(name, a, b)`, strictly increasing in Beta mean.
pub const DEFAULT_ADVERBS: [(&str, f64, f64); 12] = [
    ("never", 1.2, 40.0),
    ("hardly ever", 2.0, 23.0),
    ("seldom", 3.0, 17.0),
    ("infrequently", 4.0, 16.0),
    ("sometimes", 8.0, 12.0),
    ("often", 13.0, 7.0),
    ("frequently", 14.0, 6.0),
    ("regularly", 14.5, 6.0),
    ("normally", 15.0, 5.0),
    ("usually", 16.0, 4.0),
    ("constantly", 18.0, 2.0),
    ("always", 40.0, 1.2),
];

fn beta_family() -> String {
    "beta".to_string()
}

/// One row of a lexicon configuration document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdverbSpec {
    pub name: String,
    #[serde(default = "beta_family")]
    pub family: String,
    pub a: f64,
    pub b: f64,
}

impl AdverbSpec {
    pub fn beta(name: &str, a: f64, b: f64) -> Self {
        Self {
            name: name.to_string(),
            family: beta_family(),
            a,
            b,
        }
    }
}

/// `{"adverbs": [{"name": ..., "a": ..., "b": ...}, ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconConfig {
    pub adverbs: Vec<AdverbSpec>,
}

impl Default for LexiconConfig {
    fn default() -> Self {
        Self {
            adverbs: DEFAULT_ADVERBS
                .iter()
                .map(|&(name, a, b)| AdverbSpec::beta(name, a, b))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdverbEntry {
    name: String,
    shape_a: f64,
    shape_b: f64,
    prior: DensityGrid,
    entropy: f64,
}

impl AdverbEntry {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Prior family; only `"beta"` is supported.
    pub fn family(&self) -> &'static str {
        "beta"
    }

    pub fn shape(&self) -> (f64, f64) {
        (self.shape_a, self.shape_b)
    }

    /// Beta mean `a / (a + b)`.
    pub fn mean(&self) -> f64 {
        self.shape_a / (self.shape_a + self.shape_b)
    }

    pub fn prior(&self) -> &DensityGrid {
        &self.prior
    }

    pub fn entropy(&self) -> f64 {
        self.entropy
    }

    pub fn word_count(&self) -> usize {
        self.name.split(' ').count()
    }
}

/// Immutable after construction; priors and entropies are cached at a
/// single grid resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct AdverbLexicon {
    entries: Vec<AdverbEntry>,
    resolution: usize,
    h_min: f64,
    h_max: f64,
}

impl AdverbLexicon {
    pub fn from_config(config: &LexiconConfig, resolution: usize) -> Result<Self> {
        if config.adverbs.len() < 2 {
            return Err(Error::LexiconTooSmall(config.adverbs.len()));
        }
        let mut entries: Vec<AdverbEntry> = Vec::with_capacity(config.adverbs.len());
        for spec in &config.adverbs {
            let name = canonicalize(&spec.name);
            if name.is_empty() {
                return Err(Error::EmptyField("adverb name"));
            }
            if !spec.family.eq_ignore_ascii_case("beta") {
                return Err(Error::UnsupportedFamily(spec.family.clone()));
            }
            if entries.iter().any(|e| e.name == name) {
                return Err(Error::DuplicateAdverb(name));
            }
            let prior = beta_pdf_grid(spec.a, spec.b, resolution)?;
            let entropy = prior.entropy();
            entries.push(AdverbEntry {
                name,
                shape_a: spec.a,
                shape_b: spec.b,
                prior,
                entropy,
            });
        }
        let h_min = entries
            .iter()
            .map(|e| e.entropy)
            .fold(f64::INFINITY, f64::min);
        let h_max = entries
            .iter()
            .map(|e| e.entropy)
            .fold(f64::NEG_INFINITY, f64::max);
        if h_max.is_nan() || h_min.is_nan() || h_max <= h_min {
            return Err(Error::DegenerateEntropyRange);
        }
        Ok(Self {
            entries,
            resolution,
            h_min,
            h_max,
        })
    }

    /// The shipped table at the given resolution.
    pub fn with_defaults(resolution: usize) -> Result<Self> {
        Self::from_config(&LexiconConfig::default(), resolution)
    }

    /// Case-insensitive exact match after whitespace canonicalization.
    pub fn lookup(&self, adverb: &str) -> Option<&AdverbEntry> {
        let key = canonicalize(adverb);
        self.entries.iter().find(|e| e.name == key)
    }

    pub fn prior(&self, adverb: &str) -> Result<&DensityGrid> {
        self.lookup(adverb)
            .map(AdverbEntry::prior)
            .ok_or_else(|| Error::UnknownAdverb(canonicalize(adverb)))
    }

    pub fn entries(&self) -> &[AdverbEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// `(h_min, h_max)` over the cached prior entropies.
    pub fn entropy_range(&self) -> (f64, f64) {
        (self.h_min, self.h_max)
    }

    pub fn normalized_entropy(&self, h: f64) -> f64 {
        // h_min < h_max is a construction invariant.
        normalize_entropy(h, self.h_min, self.h_max).unwrap_or(0.0)
    }

    pub fn to_config(&self) -> LexiconConfig {
        LexiconConfig {
            adverbs: self
                .entries
                .iter()
                .map(|e| AdverbSpec::beta(&e.name, e.shape_a, e.shape_b))
                .collect(),
        }
    }
}
