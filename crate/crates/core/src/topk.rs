//! Adaptive top-k tracking.
//!
//! The sizing collection `R` is grown and shrunk so that `x = |R|ε²/(48L)`
//! (with `L = ln(2n/δ)`) stays just above `F_R* + ε`, making `xn` a tight
//! upper bound on the largest influence. A second, independent collection
//! `R1` of the same size is used only for selection.

use rand_chacha::ChaCha8Rng;

use crate::collection::{Collection, MaintenanceStats};
use crate::error::{Error, Result};
use crate::graph::DynamicGraph;
use crate::report::{select_at_least, Mode, TrackerReport};
use crate::stream::WeightUpdate;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TopKConfig {
    pub k: usize,
    pub epsilon: f64,
    pub delta: f64,
    /// Run grow/shrink/resize once every this many updates (1 = every update).
    pub sizing_batch: usize,
}

impl TopKConfig {
    pub fn new(k: usize, epsilon: f64, delta: f64) -> Self {
        TopKConfig {
            k,
            epsilon,
            delta,
            sizing_batch: 1,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.k == 0 || self.k > n {
            return bad(format!("k must lie in 1..={n}, got {}", self.k));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must lie in (0,1), got {}", self.epsilon));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta must lie in (0,1), got {}", self.delta));
        }
        if self.sizing_batch == 0 {
            return bad("sizing batch must be at least 1".into());
        }
        Ok(())
    }

    /// Whether ε exceeds the recommended `1/(2n)`, the trivial lower bound
    /// `I_max >= 1` over `2n`.
    pub fn epsilon_above_recommendation(&self, n: usize) -> bool {
        self.epsilon > 1.0 / (2.0 * n as f64)
    }
}

/// `ln(2n/δ)`.
pub fn log_term(n: usize, delta: f64) -> f64 {
    (2.0 * n as f64 / delta).ln()
}

/// Smallest admissible `|R|`, the size at which `x` reaches `4ε`.
pub fn floor_size(n: usize, epsilon: f64, delta: f64) -> usize {
    (192.0 / epsilon * log_term(n, delta)).ceil() as usize
}

/// `x = size · ε² / (48 L)`.
pub fn x_for_size(size: usize, epsilon: f64, log_term: f64) -> f64 {
    size as f64 * epsilon * epsilon / (48.0 * log_term)
}

/// Refined selection cutoff `θ = F^k − ε/4 − ε1/2` with
/// `ε1 = ε · sqrt((F^k − ε/4) / (4x))`, clamped to `ε1 <= ε/2`.
/// Returns `(θ, ε1)`.
pub fn refined_filter_threshold(f_k: f64, x: f64, epsilon: f64) -> Result<(f64, f64)> {
    let floor = epsilon / 4.0;
    if f_k < floor {
        return Err(Error::DegenerateQuantile { fraction: f_k, floor });
    }
    let eps1 = (epsilon * ((f_k - floor) / (4.0 * x)).sqrt()).min(epsilon / 2.0);
    Ok((f_k - floor - eps1 / 2.0, eps1))
}

/// θ with the coarse fallback `max(F^k − ε/2, 0)` when `F^k < ε/4`.
pub fn filter_threshold(f_k: f64, x: f64, epsilon: f64) -> f64 {
    match refined_filter_threshold(f_k, x, epsilon) {
        Ok((theta, _)) => theta,
        Err(_) => (f_k - epsilon / 2.0).max(0.0),
    }
}

#[derive(Clone, Debug)]
pub struct TopKTracker {
    graph: DynamicGraph,
    r: Collection,
    r1: Collection,
    config: TopKConfig,
    log_term: f64,
    floor: usize,
    rng_r: ChaCha8Rng,
    rng_r1: ChaCha8Rng,
    t: u64,
    pending: usize,
    totals: MaintenanceStats,
}

impl TopKTracker {
    pub fn new(graph: DynamicGraph, config: TopKConfig, seed: u64) -> Result<Self> {
        config.validate(graph.n())?;
        let n = graph.n();
        let mut tr = TopKTracker {
            r: Collection::new(graph.model(), n),
            r1: Collection::new(graph.model(), n),
            log_term: log_term(n, config.delta),
            floor: floor_size(n, config.epsilon, config.delta),
            rng_r: crate::rng_stream(seed, 0),
            rng_r1: crate::rng_stream(seed, 1),
            graph,
            config,
            t: 0,
            pending: 0,
            totals: MaintenanceStats::default(),
        };
        tr.resize();
        Ok(tr)
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn config(&self) -> TopKConfig {
        self.config
    }

    /// Sizing collection `R`.
    pub fn sizing(&self) -> &Collection {
        &self.r
    }

    /// Selection collection `R1`.
    pub fn selection(&self) -> &Collection {
        &self.r1
    }

    pub fn floor(&self) -> usize {
        self.floor
    }

    pub fn x(&self) -> f64 {
        x_for_size(self.r.len(), self.config.epsilon, self.log_term)
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn totals(&self) -> MaintenanceStats {
        self.totals
    }

    fn max_fraction(&self) -> f64 {
        self.r.index().max_fraction().unwrap_or(0.0)
    }

    /// Adds fresh sets to `R` until `F_R* < x − ε`, starting from the floor.
    pub fn grow(&mut self) {
        self.r.fill_to(&self.graph, self.floor, &mut self.rng_r);
        while self.max_fraction() >= self.x() - self.config.epsilon {
            self.r.add_fresh(&self.graph, &mut self.rng_r);
        }
    }

    /// Drops the last set of `R` while it is redundant: the collection stays
    /// above the floor and `F_R* < x − ε` still holds without it.
    pub fn shrink(&mut self) {
        let eps = self.config.epsilon;
        while self.r.len() > self.floor {
            let len = self.r.len();
            if self.max_fraction() >= self.x() - eps {
                return;
            }
            let ranking = self.r.index().ranking();
            let top = ranking.max_degree();
            let last = self.r.last_members().expect("nonempty collection");
            let top_in_last = last.iter().filter(|&&u| ranking.degree(u) == top).count();
            let top_after = if top_in_last == ranking.max_degree_count() {
                top.saturating_sub(1)
            } else {
                top
            };
            let f_after = top_after as f64 / (len - 1) as f64;
            if f_after >= x_for_size(len - 1, eps, self.log_term) - eps {
                return;
            }
            self.r.drop_last();
        }
    }

    /// Grow, shrink, then match `|R1|` to `|R|`.
    pub fn resize(&mut self) {
        self.grow();
        self.shrink();
        let target = self.r.len();
        self.r1.fill_to(&self.graph, target, &mut self.rng_r1);
        self.r1.truncate_to(target);
        self.pending = 0;
    }

    /// Applies `upd`, repairs both collections and, per the sizing batch,
    /// re-runs the sizing loop.
    pub fn process_update(&mut self, upd: &WeightUpdate) -> Result<MaintenanceStats> {
        let d = self.graph.apply_update(upd)?;
        self.t = upd.t;
        let g = &self.graph;
        let (r, r1) = (&mut self.r, &mut self.r1);
        let (rng_r, rng_r1) = (&mut self.rng_r, &mut self.rng_r1);
        // R and R1 share only the graph, and each owns its RNG stream
        let (mut stats, stats1) = rayon::join(|| r.apply(g, &d, rng_r), || r1.apply(g, &d, rng_r1));
        stats += stats1;
        self.totals += stats;
        self.pending += 1;
        if self.pending >= self.config.sizing_batch {
            self.resize();
        }
        Ok(stats)
    }

    /// Current cutoff θ on `F_R1`.
    pub fn theta(&self) -> f64 {
        let f_k = self.r1.index().kth_fraction(self.config.k).unwrap_or(0.0);
        filter_threshold(f_k, self.x(), self.config.epsilon)
    }

    /// Every node with `F_R1(u) >= θ`. Pending sizing work is flushed first.
    pub fn report(&mut self) -> Result<TrackerReport> {
        if self.pending > 0 {
            self.resize();
        }
        let m = self.r1.len();
        if m != self.r.len() {
            return Err(Error::SampleSizeMismatch {
                expected: self.r.len(),
                actual: m,
            });
        }
        let theta = self.theta();
        Ok(TrackerReport {
            t: self.t,
            mode: Mode::Topk,
            k: Some(self.config.k),
            nodes: select_at_least(self.r1.index(), m, theta),
            m,
            threshold: None,
            x: Some(self.x()),
            theta: Some(theta),
            epsilon: self.config.epsilon,
            delta: self.config.delta,
        })
    }

    /// Discards both collections and re-runs the sizing loop from scratch on
    /// the current graph.
    pub fn rebuild(&mut self) {
        self.r = Collection::new(self.graph.model(), self.graph.n());
        self.r1 = Collection::new(self.graph.model(), self.graph.n());
        self.resize();
    }

    #[cfg(test)]
    fn inflate(&mut self, target: usize) {
        self.r.fill_to(&self.graph, target, &mut self.rng_r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Model;

    #[test]
    fn refined_threshold_numeric() {
        let (theta, eps1) = refined_filter_threshold(0.006, 0.008, 0.0005).unwrap();
        let expected_eps1 = 0.0005 * (0.005875f64 / 0.032).sqrt();
        assert!((eps1 - expected_eps1).abs() < 1e-15);
        assert!((eps1 - 2.142e-4).abs() < 1e-7);
        assert!((theta - (0.006 - 0.000125 - expected_eps1 / 2.0)).abs() < 1e-15);
        assert!((theta - 0.0057679).abs() < 1e-7);
    }

    #[test]
    fn refined_threshold_boundaries() {
        let (theta, eps1) = refined_filter_threshold(0.25, 0.1, 1.0).unwrap();
        assert_eq!((theta, eps1), (0.0, 0.0));
        let x = 0.3;
        let (_, eps1) = refined_filter_threshold(x, x, 0.1).unwrap();
        assert!(eps1 < 0.05);
        assert!(matches!(
            refined_filter_threshold(0.01, 0.1, 0.1),
            Err(Error::DegenerateQuantile { .. })
        ));
        assert_eq!(filter_threshold(0.01, 0.1, 0.1), 0.0);
        assert!((filter_threshold(0.01, 0.1, 0.01) - (0.01 - 0.0025 - 0.005 * (0.0075f64 / 0.4).sqrt())).abs() < 1e-15);
    }

    #[test]
    fn isolated_nodes_stop_at_floor() {
        let g = DynamicGraph::new(50, Model::Ic);
        let tr = TopKTracker::new(g, TopKConfig::new(3, 0.2, 0.1), 4).unwrap();
        assert_eq!(tr.sizing().len(), floor_size(50, 0.2, 0.1));
        assert_eq!(tr.sizing().len(), (192.0 / 0.2 * (1000.0f64).ln()).ceil() as usize);
        assert_eq!(tr.selection().len(), tr.sizing().len());
        assert!(tr.x() >= 4.0 * 0.2 - 1e-12);
    }

    #[test]
    fn shrink_returns_near_grow_fixed_point() {
        let edges: Vec<_> = (1..20).map(|v| (0, v, 1.0)).collect();
        let g = DynamicGraph::from_edges(20, Model::Ic, edges).unwrap();
        let mut tr = TopKTracker::new(g, TopKConfig::new(1, 0.3, 0.1), 11).unwrap();
        let fixed = tr.sizing().len();
        assert!(fixed > tr.floor());
        tr.inflate(2 * fixed);
        tr.shrink();
        // every set contains the hub, so F_R* = 1 and the fixed point is exact
        assert_eq!(tr.sizing().len(), fixed);
        assert_eq!(tr.max_fraction(), 1.0);
    }

    #[test]
    fn invalid_configs() {
        let g = DynamicGraph::new(5, Model::Lt);
        assert!(TopKTracker::new(g.clone(), TopKConfig::new(0, 0.1, 0.1), 0).is_err());
        assert!(TopKTracker::new(g.clone(), TopKConfig::new(6, 0.1, 0.1), 0).is_err());
        assert!(TopKTracker::new(g, TopKConfig::new(2, 1.5, 0.1), 0).is_err());
    }
}
