//! `.cau` corpus files and free-text inputs.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use causaltrust_core::extract::{format_structured_line, parse_corpus, ExtractOptions};
use causaltrust_core::{AdverbLexicon, Corpus, Diagnostic};

use crate::AppError;

/// Source id of a corpus file: its file stem.
pub fn source_id_for(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "corpus".to_owned())
}

pub fn read_corpus(
    path: &Path,
    lexicon: &AdverbLexicon,
    options: &ExtractOptions,
) -> Result<(Corpus, Vec<Diagnostic>), AppError> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    Ok(parse_corpus(&source_id_for(path), &text, lexicon, options)?)
}

/// Writes the structured form: a comment header followed by one
/// `cause | adverb | effect` line per assertion.
pub fn write_corpus<W: Write>(corpus: &Corpus, mut writer: W) -> io::Result<()> {
    writeln!(writer, "# source: {}", corpus.source_id())?;
    if let Some(provenance) = &corpus.provenance {
        writeln!(writer, "# generator: {provenance}")?;
    }
    for assertion in corpus.assertions() {
        writeln!(writer, "{}", format_structured_line(assertion))?;
    }
    Ok(())
}

pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<(), AppError> {
    let mut buf = Vec::new();
    write_corpus(corpus, &mut buf).expect("writing to memory");
    fs::write(path, buf).map_err(|e| AppError::io(path, e))
}
