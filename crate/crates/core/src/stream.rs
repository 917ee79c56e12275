//! Update streams: the 5-tuple record, TSV readers/writers, and the workload
//! generator that turns a static graph into a base graph plus update stream
//! whose replay ends at the original graph.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, Model, NodeId, Sign};

/// One element `(u, v, +/-, delta, t)` of the update stream; `u == v` targets
/// the LT self-weight of `u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightUpdate {
    pub t: u64,
    pub u: NodeId,
    pub v: NodeId,
    pub sign: Sign,
    pub delta: f64,
}

impl WeightUpdate {
    pub fn new(t: u64, u: NodeId, v: NodeId, sign: Sign, delta: f64) -> Self {
        WeightUpdate { t, u, v, sign, delta }
    }

    pub fn to_tsv(&self) -> String {
        format!("{}\t{}\t{}\t{}\t{}", self.t, self.u, self.v, self.sign.symbol(), self.delta)
    }
}

fn parse_err(path: &Path, line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        reason: reason.into(),
    }
}

fn parse_field<T: std::str::FromStr>(path: &Path, line: usize, what: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(path, line, format!("bad {what} `{s}`")))
}

fn parse_update_line(path: &Path, line: usize, text: &str) -> Result<WeightUpdate> {
    let fields: Vec<&str> = text.split('\t').collect();
    if fields.len() != 5 {
        return Err(parse_err(path, line, format!("expected 5 tab-separated fields, got {}", fields.len())));
    }
    let t = parse_field(path, line, "timestamp", fields[0])?;
    let u = parse_field(path, line, "source node", fields[1])?;
    let v = parse_field(path, line, "target node", fields[2])?;
    let sign = match fields[3].trim() {
        "+" => Sign::Increase,
        "-" => Sign::Decrease,
        other => return Err(parse_err(path, line, format!("bad sign `{other}`"))),
    };
    let delta: f64 = parse_field(path, line, "delta", fields[4])?;
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(parse_err(path, line, format!("delta must be positive, got {delta}")));
    }
    Ok(WeightUpdate { t, u, v, sign, delta })
}

/// Streaming reader over a stream TSV; yields records lazily and rejects
/// timestamp regressions.
pub struct StreamReader<R> {
    lines: std::io::Lines<R>,
    path: PathBuf,
    line: usize,
    prev_t: u64,
}

impl<R: BufRead> Iterator for StreamReader<R> {
    type Item = Result<WeightUpdate>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let text = match self.lines.next()? {
                Ok(text) => text,
                Err(e) => return Some(Err(e.into())),
            };
            self.line += 1;
            let trimmed = text.trim_end_matches('\r');
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let upd = match parse_update_line(&self.path, self.line, trimmed) {
                Ok(upd) => upd,
                Err(e) => return Some(Err(e)),
            };
            if upd.t < self.prev_t {
                return Some(Err(Error::TimestampRegression {
                    path: self.path.clone(),
                    line: self.line,
                    t: upd.t,
                    prev: self.prev_t,
                }));
            }
            self.prev_t = upd.t;
            return Some(Ok(upd));
        }
    }
}

pub fn parse_stream(path: impl AsRef<Path>) -> Result<StreamReader<BufReader<File>>> {
    let path = path.as_ref();
    let file = File::open(path)?;
    Ok(StreamReader {
        lines: BufReader::new(file).lines(),
        path: path.to_path_buf(),
        line: 0,
        prev_t: 0,
    })
}

pub fn read_stream(path: impl AsRef<Path>) -> Result<Vec<WeightUpdate>> {
    parse_stream(path)?.collect()
}

pub fn write_stream<W: Write>(mut out: W, updates: &[WeightUpdate]) -> Result<()> {
    for upd in updates {
        writeln!(out, "{}", upd.to_tsv())?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_stream_file(path: impl AsRef<Path>, updates: &[WeightUpdate]) -> Result<()> {
    write_stream(BufWriter::new(File::create(path)?), updates)
}

/// Reads a graph TSV (`u <TAB> v <TAB> weight`, `u == v` for LT self-weights).
/// A `# nodes N` comment fixes the node count; otherwise it is max id + 1.
pub fn parse_graph(path: impl AsRef<Path>, model: Model) -> Result<DynamicGraph> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);
    let mut declared = 0usize;
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let text = line.trim_end_matches('\r');
        if text.trim().is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("nodes") {
                let n = words.next().unwrap_or("");
                declared = parse_field(path, line_no, "node count", n)?;
            }
            continue;
        }
        let fields: Vec<&str> = text.split('\t').collect();
        if fields.len() != 3 {
            return Err(parse_err(path, line_no, format!("expected 3 tab-separated fields, got {}", fields.len())));
        }
        let u: NodeId = parse_field(path, line_no, "source node", fields[0])?;
        let v: NodeId = parse_field(path, line_no, "target node", fields[1])?;
        let w: f64 = parse_field(path, line_no, "weight", fields[2])?;
        if !(w >= 0.0) || !w.is_finite() {
            return Err(parse_err(path, line_no, format!("weight must be non-negative, got {w}")));
        }
        edges.push((line_no, u, v, w));
    }
    let max_id = edges.iter().map(|e| e.1.max(e.2) as usize + 1).max().unwrap_or(0);
    let n = declared.max(max_id);
    let mut g = DynamicGraph::new(n, model);
    for (line_no, u, v, w) in edges {
        if w == 0.0 {
            continue;
        }
        g.apply_update(&WeightUpdate::new(0, u, v, Sign::Increase, w))
            .map_err(|e| parse_err(path, line_no, e.to_string()))?;
    }
    Ok(g)
}

/// Writes the graph with a `# nodes` header, edges sorted by `(u, v)`.
pub fn write_graph<W: Write>(mut out: W, g: &DynamicGraph) -> Result<()> {
    writeln!(out, "# nodes {}", g.n())?;
    writeln!(out, "# model {}", g.model())?;
    let mut edges: Vec<_> = g.edges().collect();
    edges.sort_by_key(|a| (a.0, a.1));
    for (u, v, w) in edges {
        writeln!(out, "{u}\t{v}\t{w}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_graph_file(path: impl AsRef<Path>, g: &DynamicGraph) -> Result<()> {
    write_graph(BufWriter::new(File::create(path)?), g)
}

/// Dense ids for external string node names.
#[derive(Clone, Debug, Default)]
pub struct NodeDictionary {
    ids: HashMap<String, NodeId>,
    names: Vec<String>,
}

impl NodeDictionary {
    pub fn intern(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len() as NodeId;
        self.ids.insert(name.to_owned(), id);
        self.names.push(name.to_owned());
        id
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: NodeId) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// `id <TAB> external_name` per line.
    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        for (id, name) in self.names.iter().enumerate() {
            writeln!(out, "{id}\t{name}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut dict = NodeDictionary::default();
        for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, name) = line
                .split_once('\t')
                .ok_or_else(|| parse_err(path, i + 1, "expected `id <TAB> name`"))?;
            let id: NodeId = parse_field(path, i + 1, "id", id)?;
            if id as usize != dict.len() {
                return Err(parse_err(path, i + 1, format!("ids must be dense and ordered, got {id}")));
            }
            dict.intern(name);
        }
        Ok(dict)
    }
}

/// Reads an edge list whose node columns are arbitrary names, assigning
/// dense ids in order of first appearance.
pub fn parse_named_edges(path: impl AsRef<Path>) -> Result<(NodeDictionary, Vec<(NodeId, NodeId, f64)>)> {
    let path = path.as_ref();
    let mut dict = NodeDictionary::default();
    let mut edges = Vec::new();
    for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_err(path, i + 1, "expected `u <TAB> v [<TAB> weight]`"));
        }
        let w = match fields.get(2) {
            Some(s) => parse_field(path, i + 1, "weight", s)?,
            None => 1.0,
        };
        let u = dict.intern(fields[0].trim());
        let v = dict.intern(fields[1].trim());
        edges.push((u, v, w));
    }
    Ok((dict, edges))
}

/// Edge partition fractions and generator settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorkloadSpec {
    /// Share of edges present in the base graph and never updated.
    pub base_only: f64,
    /// Share of edges present in the base graph that get a decrease followed
    /// by an increase of the same random amount.
    pub churn: f64,
    /// Share of edges absent from the base graph and inserted by the stream.
    pub arrival: f64,
    pub model: Model,
    pub seed: u64,
    pub instances: usize,
}

impl WorkloadSpec {
    pub fn standard(model: Model, seed: u64) -> Self {
        WorkloadSpec {
            base_only: 0.85,
            churn: 0.05,
            arrival: 0.10,
            model,
            seed,
            instances: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.base_only, self.churn, self.arrival];
        if parts.iter().any(|f| !(0.0..=1.0).contains(f)) {
            return Err(Error::InvalidConfig(format!("partition fractions must lie in [0, 1], got {parts:?}")));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::FractionMismatch(sum));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgePartition {
    pub base_only: Vec<(NodeId, NodeId)>,
    pub churn: Vec<(NodeId, NodeId)>,
    pub arrival: Vec<(NodeId, NodeId)>,
}

#[derive(Clone, Debug)]
pub struct Workload {
    pub base: DynamicGraph,
    pub stream: Vec<WeightUpdate>,
    pub partition: EdgePartition,
}

/// Splits the edges of `target` into base-only, churn and arrival groups and
/// builds the base graph and a shuffled update stream whose replay ends at
/// `target`. Each churn edge's decrease precedes its increase. Self-weights
/// go straight into the base graph.
pub fn generate_workload<R: Rng + ?Sized>(target: &DynamicGraph, spec: &WorkloadSpec, rng: &mut R) -> Result<Workload> {
    spec.validate()?;
    if spec.model != target.model() {
        return Err(Error::InvalidConfig(format!(
            "workload model {} differs from graph model {}",
            spec.model,
            target.model()
        )));
    }
    let mut edges: Vec<(NodeId, NodeId, f64)> = target.edges().filter(|e| e.0 != e.1).collect();
    edges.sort_by_key(|a| (a.0, a.1));
    edges.shuffle(rng);

    let m = edges.len();
    let n_churn = ((m as f64) * spec.churn).round() as usize;
    let n_arrival = (((m as f64) * spec.arrival).round() as usize).min(m - n_churn);

    let mut partition = EdgePartition::default();
    let mut base_edges: Vec<(NodeId, NodeId, f64)> = target.edges().filter(|e| e.0 == e.1).collect();
    let mut updates: Vec<(WeightUpdate, Option<usize>)> = Vec::new();
    for (i, &(u, v, w)) in edges.iter().enumerate() {
        if i < n_churn {
            partition.churn.push((u, v));
            base_edges.push((u, v, w));
            let amount = (1.0 - rng.random::<f64>()) * w;
            updates.push((WeightUpdate::new(0, u, v, Sign::Decrease, amount), Some(i)));
            updates.push((WeightUpdate::new(0, u, v, Sign::Increase, amount), Some(i)));
        } else if i < n_churn + n_arrival {
            partition.arrival.push((u, v));
            updates.push((WeightUpdate::new(0, u, v, Sign::Increase, w), None));
        } else {
            partition.base_only.push((u, v));
            base_edges.push((u, v, w));
        }
    }

    updates.shuffle(rng);
    // a churn edge's increase may have been shuffled ahead of its decrease
    let mut first_seen: HashMap<usize, usize> = HashMap::new();
    for pos in 0..updates.len() {
        let Some(edge) = updates[pos].1 else { continue };
        match first_seen.get(&edge) {
            None => {
                first_seen.insert(edge, pos);
            }
            Some(&first) => {
                if updates[first].0.sign == Sign::Increase {
                    updates.swap(first, pos);
                }
            }
        }
    }
    let stream = updates
        .into_iter()
        .enumerate()
        .map(|(i, (mut upd, _))| {
            upd.t = i as u64 + 1;
            upd
        })
        .collect();

    let base = DynamicGraph::from_edges(target.n(), target.model(), base_edges)?;
    Ok(Workload { base, stream, partition })
}

/// Replays `stream` on a copy of `base`.
pub fn replay(base: &DynamicGraph, stream: &[WeightUpdate]) -> Result<DynamicGraph> {
    let mut g = base.clone();
    for upd in stream {
        g.apply_update(upd)?;
    }
    Ok(g)
}
