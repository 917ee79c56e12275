//! Bundled micro-graphs (at most six nodes) with exact influence tables.

use std::path::PathBuf;

use crate::error::Result;
use crate::graph::{DynamicGraph, Model};
use crate::oracle::InfluenceTable;
use crate::stream;

pub const MICRO_GRAPHS: [&str; 5] = ["path", "star", "cycle", "triangle_chord", "two_component"];

pub fn micro_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join("micro")
}

pub fn graph_path(name: &str, model: Model) -> PathBuf {
    micro_dir().join(format!("{name}.{model}.tsv"))
}

pub fn exact_path(name: &str, model: Model) -> PathBuf {
    micro_dir().join(format!("{name}.{model}.exact.tsv"))
}

pub fn load_graph(name: &str, model: Model) -> Result<DynamicGraph> {
    stream::parse_graph(graph_path(name, model), model)
}

pub fn load_exact(name: &str, model: Model) -> Result<InfluenceTable> {
    InfluenceTable::read_tsv(exact_path(name, model))
}

/// Every `(name, model)` pair in the corpus.
pub fn all() -> impl Iterator<Item = (&'static str, Model)> {
    MICRO_GRAPHS
        .into_iter()
        .flat_map(|name| [(name, Model::Lt), (name, Model::Ic)])
}
