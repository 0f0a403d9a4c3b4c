//! Graph persistence.
//!
//! ```json
//! {"schema_version": 1, "M": 1000, "concepts": [...],
//!  "edges": [{"cause", "effect", "prior_values", "posterior_values", "observations"}]}
//! ```
//!
//! Floats are written in shortest round-trip form, so a reload reproduces
//! every grid value bit for bit.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use causaltrust_core::{AdverbLexicon, DensityGrid, WeightedCausalGraph};
use serde::{Deserialize, Serialize};

use crate::AppError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub schema_version: u32,
    #[serde(rename = "M")]
    pub resolution: usize,
    pub concepts: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub cause: String,
    pub effect: String,
    pub prior_values: Vec<f64>,
    pub posterior_values: Vec<f64>,
    pub observations: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum GraphFileError {
    #[error("malformed graph document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {found} (expected {SCHEMA_VERSION})")]
    SchemaVersion { found: u32 },
    #[error("graph resolution {found} does not match the requested resolution {expected}")]
    Resolution { found: usize, expected: usize },
    #[error(transparent)]
    Invalid(#[from] causaltrust_core::Error),
}

pub fn to_document(graph: &WeightedCausalGraph) -> GraphDocument {
    GraphDocument {
        schema_version: SCHEMA_VERSION,
        resolution: graph.resolution(),
        concepts: graph.concepts().map(str::to_owned).collect(),
        edges: graph
            .edges()
            .map(|e| EdgeDocument {
                cause: e.cause().to_owned(),
                effect: e.effect().to_owned(),
                prior_values: e.prior().heights().to_vec(),
                posterior_values: e.posterior().heights().to_vec(),
                observations: e.observations().to_vec(),
            })
            .collect(),
    }
}

/// Rebuilds a graph, validating every invariant against `lexicon`. Nothing
/// is returned unless the whole document is valid.
pub fn from_document(
    doc: GraphDocument,
    lexicon: &AdverbLexicon,
) -> Result<WeightedCausalGraph, GraphFileError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(GraphFileError::SchemaVersion {
            found: doc.schema_version,
        });
    }
    if doc.resolution != lexicon.resolution() {
        return Err(GraphFileError::Resolution {
            found: doc.resolution,
            expected: lexicon.resolution(),
        });
    }
    let mut graph = WeightedCausalGraph::new(doc.resolution);
    for concept in &doc.concepts {
        graph.insert_concept(concept)?;
    }
    for edge in doc.edges {
        graph.restore_edge(
            &edge.cause,
            &edge.effect,
            DensityGrid::from_heights(edge.prior_values)?,
            DensityGrid::from_heights(edge.posterior_values)?,
            edge.observations,
            lexicon,
        )?;
    }
    Ok(graph)
}

pub fn write_graph<W: Write>(graph: &WeightedCausalGraph, mut writer: W) -> io::Result<()> {
    serde_json::to_writer(&mut writer, &to_document(graph))?;
    writer.write_all(b"\n")
}

pub fn parse_graph(
    json: &str,
    lexicon: &AdverbLexicon,
) -> Result<WeightedCausalGraph, GraphFileError> {
    let doc: GraphDocument = serde_json::from_str(json)?;
    from_document(doc, lexicon)
}

/// Writes to a sibling temporary file and renames it into place.
pub fn save_graph(graph: &WeightedCausalGraph, path: &Path) -> Result<(), AppError> {
    let tmp = path.with_extension("json.tmp");
    let result = fs::File::create(&tmp)
        .map(io::BufWriter::new)
        .and_then(|mut w| {
            write_graph(graph, &mut w)?;
            w.flush()
        })
        .and_then(|()| fs::rename(&tmp, path));
    result.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        AppError::io(path, e)
    })
}

pub fn load_graph(path: &Path, lexicon: &AdverbLexicon) -> Result<WeightedCausalGraph, AppError> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    parse_graph(&text, lexicon).map_err(|e| AppError::data(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use causaltrust_core::CausalAssertion;

    fn lexicon() -> AdverbLexicon {
        AdverbLexicon::with_defaults(200).unwrap()
    }

    fn sample(lex: &AdverbLexicon) -> WeightedCausalGraph {
        let mut g = WeightedCausalGraph::new(200);
        for (c, a, e) in [
            ("smoking", "usually", "lung cancer"),
            ("smoking", "constantly", "lung cancer"),
            ("lung cancer", "often", "death"),
        ] {
            g.add_assertion(&CausalAssertion::new(c, a, e).unwrap(), lex)
                .unwrap();
        }
        g
    }

    fn render(g: &WeightedCausalGraph) -> String {
        let mut buf = Vec::new();
        write_graph(g, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_round_trip() {
        let lex = lexicon();
        let g = WeightedCausalGraph::new(200);
        assert_eq!(parse_graph(&render(&g), &lex).unwrap(), g);
    }

    #[test]
    fn two_edge_round_trip_is_exact() {
        let lex = lexicon();
        let g = sample(&lex);
        let back = parse_graph(&render(&g), &lex).unwrap();
        assert_eq!(back, g);
        assert_eq!(render(&back), render(&g));
    }

    #[test]
    fn truncated_document_fails() {
        let lex = lexicon();
        let text = render(&sample(&lex));
        let cut = &text[..text.len() / 2];
        assert!(matches!(
            parse_graph(cut, &lex),
            Err(GraphFileError::Json(_))
        ));
    }

    #[test]
    fn schema_and_resolution_mismatch() {
        let lex = lexicon();
        let mut doc = to_document(&sample(&lex));
        doc.schema_version = 9;
        assert!(matches!(
            from_document(doc, &lex),
            Err(GraphFileError::SchemaVersion { found: 9 })
        ));
        let doc = to_document(&sample(&lex));
        let other = AdverbLexicon::with_defaults(100).unwrap();
        assert!(matches!(
            from_document(doc, &other),
            Err(GraphFileError::Resolution {
                found: 200,
                expected: 100
            })
        ));
    }

    #[test]
    fn tampered_prior_is_rejected() {
        let lex = lexicon();
        let mut doc = to_document(&sample(&lex));
        doc.edges[0].observations[0] = "seldom".into();
        assert!(matches!(
            from_document(doc, &lex),
            Err(GraphFileError::Invalid(_))
        ));
    }

    #[test]
    fn tampered_posterior_is_rejected() {
        let lex = lexicon();
        let mut doc = to_document(&sample(&lex));
        let edge = doc
            .edges
            .iter_mut()
            .find(|e| e.observations.len() > 1)
            .expect("sample has a fused edge");
        edge.observations.swap(0, 1);
        edge.prior_values = lex.prior(&edge.observations[0]).unwrap().heights().to_vec();
        edge.observations.push("never".into());
        assert!(matches!(
            from_document(doc, &lex),
            Err(GraphFileError::Invalid(_))
        ));
    }

    #[test]
    fn save_and_load_file() {
        let lex = lexicon();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("graph.json");
        let g = sample(&lex);
        save_graph(&g, &path).unwrap();
        assert_eq!(load_graph(&path, &lex).unwrap(), g);
        assert!(!path.with_extension("json.tmp").exists());
    }
}
