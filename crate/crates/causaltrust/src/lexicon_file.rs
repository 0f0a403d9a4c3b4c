//! Lexicon configuration files: `{"adverbs": [{"name", "a", "b"}, ...]}`.

use std::fs;
use std::path::{Path, PathBuf};

use causaltrust_core::{AdverbLexicon, LexiconConfig};

use crate::AppError;

/// Environment variable consulted when no `--lexicon` flag is given.
pub const LEXICON_ENV: &str = "CAUSALTRUST_LEXICON";

pub fn parse_lexicon_config(json: &str) -> serde_json::Result<LexiconConfig> {
    serde_json::from_str(json)
}

pub fn read_lexicon_config(path: &Path) -> Result<LexiconConfig, AppError> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    parse_lexicon_config(&text).map_err(|e| AppError::data(path.display().to_string(), e))
}

pub fn render_lexicon_config(config: &LexiconConfig) -> String {
    let mut out = serde_json::to_string_pretty(config).expect("lexicon config serializes");
    out.push('\n');
    out
}

/// Lexicon from the flag, else from [`LEXICON_ENV`], else the built-in table.
pub fn resolve_lexicon(flag: Option<&Path>, resolution: usize) -> Result<AdverbLexicon, AppError> {
    let path = flag.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(LEXICON_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    });
    let config = match path {
        Some(path) => read_lexicon_config(&path)?,
        None => LexiconConfig::default(),
    };
    AdverbLexicon::from_config(&config, resolution).map_err(AppError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_default_family() {
        let cfg = parse_lexicon_config(
            r#"{"adverbs": [{"name": "always", "a": 40, "b": 1.2}, {"name": "never", "a": 1.2, "b": 40}]}"#,
        )
        .unwrap();
        assert_eq!(cfg.adverbs[0].family, "beta");
        let lex = AdverbLexicon::from_config(&cfg, 100).unwrap();
        assert_eq!(lex.len(), 2);
    }

    #[test]
    fn duplicate_is_rejected() {
        let cfg = parse_lexicon_config(
            r#"{"adverbs": [{"name": "always", "a": 40, "b": 1.2}, {"name": "always", "a": 1.2, "b": 40}]}"#,
        )
        .unwrap();
        assert!(AdverbLexicon::from_config(&cfg, 100).is_err());
    }

    #[test]
    fn default_config_round_trips() {
        let cfg = LexiconConfig::default();
        assert_eq!(
            parse_lexicon_config(&render_lexicon_config(&cfg)).unwrap(),
            cfg
        );
    }
}
