//! CSV export of edge densities for plotting.

use std::fs;
use std::path::{Path, PathBuf};

use causaltrust_core::{CausalEdge, WeightedCausalGraph};

use crate::AppError;

pub const INDEX_FILE: &str = "index.csv";

/// `x,prior_density,posterior_density` at the grid midpoints.
pub fn edge_csv(edge: &CausalEdge) -> String {
    let mut out = String::from("x,prior_density,posterior_density\n");
    let prior = edge.prior();
    for (i, x) in prior.midpoints().enumerate() {
        out.push_str(&format!(
            "{x},{},{}\n",
            prior.heights()[i],
            edge.posterior().heights()[i]
        ));
    }
    out
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

/// Writes one CSV per edge plus an index; returns the written paths.
pub fn export_plots(graph: &WeightedCausalGraph, dir: &Path) -> Result<Vec<PathBuf>, AppError> {
    fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    let mut index =
        String::from("file,cause,effect,observations,prior_entropy,posterior_entropy\n");
    let mut written = Vec::new();
    for (i, edge) in graph.edges().enumerate() {
        let name = format!("edge_{i:03}.csv");
        let path = dir.join(&name);
        fs::write(&path, edge_csv(edge)).map_err(|e| AppError::io(&path, e))?;
        index.push_str(&format!(
            "{name},{},{},{},{},{}\n",
            quote(edge.cause()),
            quote(edge.effect()),
            edge.observation_count(),
            edge.prior().entropy(),
            edge.posterior().entropy()
        ));
        written.push(path);
    }
    let index_path = dir.join(INDEX_FILE);
    fs::write(&index_path, index).map_err(|e| AppError::io(&index_path, e))?;
    written.push(index_path);
    Ok(written)
}
