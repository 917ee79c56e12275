//! Ground-truth influence: exact live-edge enumeration for tiny graphs,
//! forward Monte-Carlo diffusion, and static polling with fresh RR sets.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::collection::Collection;
use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, Model, NodeId};

/// Upper bound on enumerated live-edge configurations.
pub const ENUMERATION_LIMIT: f64 = 1e7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    Mc,
    Poll,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "EXACT",
            Method::Mc => "MC",
            Method::Poll => "POLL",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "EXACT" => Ok(Method::Exact),
            "MC" => Ok(Method::Mc),
            "POLL" => Ok(Method::Poll),
            other => Err(format!("unknown oracle method `{other}`")),
        }
    }
}

/// Per-node influence with standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceTable {
    pub method: Method,
    pub influence: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl InfluenceTable {
    pub fn n(&self) -> usize {
        self.influence.len()
    }

    pub fn get(&self, u: NodeId) -> f64 {
        self.influence[u as usize]
    }

    pub fn max(&self) -> f64 {
        self.influence.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// k-th largest influence (1-based).
    pub fn kth_largest(&self, k: usize) -> f64 {
        let mut sorted = self.influence.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        sorted[k - 1]
    }

    pub fn nodes_at_least(&self, threshold: f64) -> Vec<NodeId> {
        (0..self.n() as NodeId).filter(|&u| self.get(u) >= threshold).collect()
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, (i, se)) in self.influence.iter().zip(&self.stderr).enumerate() {
            writeln!(out, "{u}\t{i}\t{se}\t{}", self.method)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_tsv_file(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_tsv(BufWriter::new(File::create(path)?))
    }

    pub fn read_tsv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bad = |line: usize, reason: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            reason,
        };
        let mut rows: Vec<(usize, f64, f64, Method)> = Vec::new();
        for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(bad(i + 1, format!("expected 4 fields, got {}", f.len())));
            }
            let node = f[0].trim().parse().map_err(|_| bad(i + 1, format!("bad node `{}`", f[0])))?;
            let inf = f[1].trim().parse().map_err(|_| bad(i + 1, format!("bad influence `{}`", f[1])))?;
            let se = f[2].trim().parse().map_err(|_| bad(i + 1, format!("bad stderr `{}`", f[2])))?;
            let method = f[3].parse().map_err(|e: String| bad(i + 1, e))?;
            rows.push((node, inf, se, method));
        }
        let n = rows.iter().map(|r| r.0 + 1).max().unwrap_or(0);
        let method = rows.first().map(|r| r.3).unwrap_or(Method::Exact);
        let mut table = InfluenceTable {
            method,
            influence: vec![f64::NAN; n],
            stderr: vec![f64::NAN; n],
        };
        for (node, inf, se, _) in rows {
            table.influence[node] = inf;
            table.stderr[node] = se;
        }
        if let Some(missing) = table.influence.iter().position(|x| x.is_nan()) {
            return Err(bad(0, format!("no entry for node {missing}")));
        }
        Ok(table)
    }
}

/// Exact influence of every node by enumerating live-edge configurations:
/// per-node predecessor choices under LT, independent edge coins under IC.
pub fn exact_influence(g: &DynamicGraph) -> Result<InfluenceTable> {
    let influence = match g.model() {
        Model::Lt => exact_lt(g)?,
        Model::Ic => exact_ic(g)?,
    };
    Ok(InfluenceTable {
        method: Method::Exact,
        stderr: vec![0.0; influence.len()],
        influence,
    })
}

fn exact_lt(g: &DynamicGraph) -> Result<Vec<f64>> {
    let n = g.n();
    // per node: (choice, probability); None = picks itself
    let mut choices: Vec<Vec<(Option<NodeId>, f64)>> = Vec::with_capacity(n);
    for v in 0..n as NodeId {
        let total = g.total_weight(v);
        let mut opts = Vec::new();
        if total <= 0.0 {
            opts.push((None, 1.0));
        } else {
            if g.self_weight(v) > 0.0 {
                opts.push((None, g.self_weight(v) / total));
            }
            for &(u, w) in g.in_edges(v) {
                opts.push((Some(u), w / total));
            }
            if opts.is_empty() {
                opts.push((None, 1.0));
            }
        }
        choices.push(opts);
    }
    let configs: f64 = choices.iter().map(|c| c.len() as f64).product();
    if configs > ENUMERATION_LIMIT {
        return Err(Error::TooLargeToEnumerate {
            configs,
            limit: ENUMERATION_LIMIT,
        });
    }

    let mut influence = vec![0.0; n];
    let mut pick = vec![0usize; n];
    let mut mark = vec![usize::MAX; n];
    let mut stamp = 0usize;
    loop {
        let prob: f64 = (0..n).map(|v| choices[v][pick[v]].1).product();
        if prob > 0.0 {
            // every node on v's backward chain reaches v
            for v in 0..n {
                stamp += 1;
                let mut at = v;
                loop {
                    if mark[at] == stamp {
                        break;
                    }
                    mark[at] = stamp;
                    influence[at] += prob;
                    match choices[at][pick[at]].0 {
                        Some(u) => at = u as usize,
                        None => break,
                    }
                }
            }
        }
        // odometer step
        let mut i = 0;
        while i < n {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(influence)
}

fn exact_ic(g: &DynamicGraph) -> Result<Vec<f64>> {
    let n = g.n();
    let mut certain: Vec<(NodeId, NodeId)> = Vec::new();
    let mut uncertain: Vec<(NodeId, NodeId, f64)> = Vec::new();
    for (u, v, w) in g.edges() {
        if w >= 1.0 {
            certain.push((u, v));
        } else {
            uncertain.push((u, v, w));
        }
    }
    let configs = 2f64.powi(uncertain.len() as i32);
    if configs > ENUMERATION_LIMIT {
        return Err(Error::TooLargeToEnumerate {
            configs,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut influence = vec![0.0; n];
    let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut seen = vec![usize::MAX; n];
    let mut stamp = 0usize;
    let mut stack = Vec::new();
    for mask in 0u64..(1u64 << uncertain.len()) {
        let mut prob = 1.0;
        for list in &mut out {
            list.clear();
        }
        for &(u, v) in &certain {
            out[u as usize].push(v);
        }
        for (bit, &(u, v, w)) in uncertain.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                prob *= w;
                out[u as usize].push(v);
            } else {
                prob *= 1.0 - w;
            }
        }
        if prob == 0.0 {
            continue;
        }
        for u in 0..n {
            stamp += 1;
            seen[u] = stamp;
            stack.push(u);
            let mut reach = 0usize;
            while let Some(x) = stack.pop() {
                reach += 1;
                for &y in &out[x] {
                    if seen[y as usize] != stamp {
                        seen[y as usize] = stamp;
                        stack.push(y as usize);
                    }
                }
            }
            influence[u] += prob * reach as f64;
        }
    }
    Ok(influence)
}

/// Out-adjacency snapshot used by forward simulation. Edge values are the
/// activation weights: `w_uv / W_v` under LT, `w_uv` under IC.
#[derive(Clone, Debug)]
pub struct ForwardGraph {
    model: Model,
    out: Vec<Vec<(NodeId, f64)>>,
}

impl ForwardGraph {
    pub fn new(g: &DynamicGraph) -> Self {
        let mut out = vec![Vec::new(); g.n()];
        for (u, v, w) in g.edges() {
            if u == v {
                continue;
            }
            let p = match g.model() {
                Model::Lt => g.lt_probability(u, v),
                Model::Ic => w,
            };
            out[u as usize].push((v, p));
        }
        for list in &mut out {
            list.sort_by_key(|e| e.0);
        }
        ForwardGraph { model: g.model(), out }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// One diffusion from `{seed}`; returns the number of activated nodes.
    pub fn simulate<R: Rng + ?Sized>(&self, seed: NodeId, rng: &mut R, scratch: &mut Scratch) -> usize {
        scratch.reset(self.n());
        let active = &mut scratch.active;
        let touched = &mut scratch.touched;
        let frontier = &mut scratch.frontier;
        active[seed as usize] = true;
        touched.push(seed);
        frontier.push(seed);
        let mut count = 1;
        match self.model {
            Model::Ic => {
                while let Some(x) = frontier.pop() {
                    for &(y, p) in &self.out[x as usize] {
                        if !active[y as usize] && rng.random::<f64>() < p {
                            active[y as usize] = true;
                            touched.push(y);
                            frontier.push(y);
                            count += 1;
                        }
                    }
                }
            }
            Model::Lt => {
                let mass = &mut scratch.mass;
                let threshold = &mut scratch.threshold;
                while let Some(x) = frontier.pop() {
                    for &(y, p) in &self.out[x as usize] {
                        let yi = y as usize;
                        if active[yi] {
                            continue;
                        }
                        if threshold[yi].is_nan() {
                            threshold[yi] = rng.random::<f64>();
                            touched.push(y);
                        }
                        mass[yi] += p;
                        if mass[yi] >= threshold[yi] {
                            active[yi] = true;
                            frontier.push(y);
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }
}

/// Reusable per-thread buffers for [`ForwardGraph::simulate`].
#[derive(Default)]
pub struct Scratch {
    active: Vec<bool>,
    mass: Vec<f64>,
    threshold: Vec<f64>,
    touched: Vec<NodeId>,
    frontier: Vec<NodeId>,
}

impl Scratch {
    fn reset(&mut self, n: usize) {
        if self.active.len() != n {
            self.active = vec![false; n];
            self.mass = vec![0.0; n];
            self.threshold = vec![f64::NAN; n];
            self.touched.clear();
        }
        for &u in &self.touched {
            let ui = u as usize;
            self.active[ui] = false;
            self.mass[ui] = 0.0;
            self.threshold[ui] = f64::NAN;
        }
        self.touched.clear();
        self.frontier.clear();
    }
}

/// Forward Monte-Carlo estimate of `I_u`: sample mean and standard error of
/// the activated count over `trials` diffusions.
pub fn mc_influence<R: Rng + ?Sized>(g: &DynamicGraph, u: NodeId, trials: usize, rng: &mut R) -> (f64, f64) {
    mc_with(&ForwardGraph::new(g), u, trials, rng)
}

fn mc_with<R: Rng + ?Sized>(fg: &ForwardGraph, u: NodeId, trials: usize, rng: &mut R) -> (f64, f64) {
    assert!(trials >= 1, "at least one trial");
    let mut scratch = Scratch::default();
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let c = fg.simulate(u, rng, &mut scratch) as f64;
        sum += c;
        sum_sq += c * c;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = if trials > 1 {
        ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0)
    } else {
        0.0
    };
    (mean, (var / t).sqrt())
}

/// Monte-Carlo estimates for `nodes`, in parallel; node `u` uses its own
/// ChaCha stream `u` under `seed`, so results do not depend on thread count.
pub fn mc_influence_nodes(g: &DynamicGraph, nodes: &[NodeId], trials: usize, seed: u64) -> Vec<(f64, f64)> {
    let fg = ForwardGraph::new(g);
    nodes
        .par_iter()
        .map(|&u| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u as u64);
            mc_with(&fg, u, trials, &mut rng)
        })
        .collect()
}

pub fn mc_influence_all(g: &DynamicGraph, trials: usize, seed: u64) -> InfluenceTable {
    let nodes: Vec<NodeId> = (0..g.n() as NodeId).collect();
    let results = mc_influence_nodes(g, &nodes, trials, seed);
    InfluenceTable {
        method: Method::Mc,
        influence: results.iter().map(|r| r.0).collect(),
        stderr: results.iter().map(|r| r.1).collect(),
    }
}

/// Influence estimates `n * F_R(u)` from `m` freshly polled RR sets.
pub fn static_poll_estimate<R: Rng + ?Sized>(g: &DynamicGraph, m: usize, rng: &mut R) -> InfluenceTable {
    assert!(m >= 1, "at least one RR set");
    let mut coll = Collection::new(g.model(), g.n());
    coll.fill_to(g, m, rng);
    poll_table(&coll)
}

/// Influence table read off an existing collection.
pub fn poll_table(coll: &Collection) -> InfluenceTable {
    let idx = coll.index();
    let n = idx.n() as f64;
    let m = coll.len() as f64;
    let (influence, stderr) = (0..idx.n() as NodeId)
        .map(|u| {
            let f = idx.degree(u) as f64 / m;
            (n * f, n * (f * (1.0 - f) / m).sqrt())
        })
        .unzip();
    InfluenceTable {
        method: Method::Poll,
        influence,
        stderr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_nodes_have_unit_influence() {
        for model in [Model::Lt, Model::Ic] {
            let g = DynamicGraph::new(3, model);
            let t = exact_influence(&g).unwrap();
            assert_eq!(t.influence, vec![1.0; 3]);
            assert_eq!(t.stderr, vec![0.0; 3]);
        }
    }

    #[test]
    fn ic_chain_exact() {
        let g = DynamicGraph::from_edges(3, Model::Ic, [(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        let t = exact_influence(&g).unwrap();
        assert!((t.get(0) - 1.75).abs() < 1e-12);
        assert!((t.get(1) - 1.5).abs() < 1e-12);
        assert!((t.get(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lt_single_edge_exact() {
        let g = DynamicGraph::from_edges(2, Model::Lt, [(0, 1, 1.0), (1, 1, 1.0)]).unwrap();
        let t = exact_influence(&g).unwrap();
        assert!((t.get(0) - 1.5).abs() < 1e-12);
        assert!((t.get(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn enumeration_limit() {
        let edges: Vec<_> = (0..30).map(|i| (i, i + 1, 0.5)).collect();
        let g = DynamicGraph::from_edges(31, Model::Ic, edges).unwrap();
        assert!(matches!(exact_influence(&g), Err(Error::TooLargeToEnumerate { .. })));
    }

    #[test]
    fn deterministic_cycle_mc_is_exact() {
        let edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5, 1.0)).collect();
        let g = DynamicGraph::from_edges(5, Model::Ic, edges).unwrap();
        let (est, se) = mc_influence(&g, 2, 100, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!((est, se), (5.0, 0.0));
    }

    #[test]
    fn table_tsv_round_trip() {
        let t = InfluenceTable {
            method: Method::Mc,
            influence: vec![1.5, 2.25],
            stderr: vec![0.01, 0.5],
        };
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.tsv");
        t.write_tsv_file(&p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "0\t1.5\t0.01\tMC\n1\t2.25\t0.5\tMC\n");
        assert_eq!(InfluenceTable::read_tsv(&p).unwrap(), t);
    }

    #[test]
    fn poll_counting_identity() {
        let g = DynamicGraph::from_edges(4, Model::Ic, [(0, 1, 0.5), (1, 2, 0.5), (3, 2, 0.9)]).unwrap();
        let mut coll = Collection::new(Model::Ic, 4);
        coll.fill_to(&g, 500, &mut ChaCha8Rng::seed_from_u64(3));
        let degrees: u64 = (0..4).map(|u| coll.index().degree(u) as u64).sum();
        assert_eq!(degrees as usize, coll.footprint() - 4);
        let t = poll_table(&coll);
        assert!(t.influence.iter().all(|&x| (0.0..=4.0).contains(&x)));
    }
}
