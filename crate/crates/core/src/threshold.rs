//! Threshold tracking: a fixed-size RR collection, maintained under updates,
//! reporting every node whose estimate clears `T - εn/2`.

use rand_chacha::ChaCha8Rng;

use crate::collection::{Collection, MaintenanceStats};
use crate::error::{Error, Result};
use crate::graph::DynamicGraph;
use crate::report::{select_at_least, Mode, TrackerReport};
use crate::stream::WeightUpdate;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdConfig {
    /// Absolute influence threshold `T`.
    pub threshold: f64,
    pub epsilon: f64,
    pub delta: f64,
}

impl ThresholdConfig {
    pub fn new(threshold: f64, epsilon: f64, delta: f64) -> Self {
        ThresholdConfig {
            threshold,
            epsilon,
            delta,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let n = n as f64;
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must lie in (0,1), got {}", self.epsilon));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta must lie in (0,1), got {}", self.delta));
        }
        if !(self.threshold <= n) {
            return bad(format!("threshold {} exceeds n = {n}", self.threshold));
        }
        if !(self.epsilon * n < self.threshold) {
            return bad(format!(
                "epsilon * n = {} must be below the threshold {}",
                self.epsilon * n,
                self.threshold
            ));
        }
        Ok(())
    }
}

/// `M = ceil(12 T / (n ε²) · ln(2n/δ))`.
pub fn required_sample_size(n: usize, threshold: f64, epsilon: f64, delta: f64) -> Result<usize> {
    ThresholdConfig::new(threshold, epsilon, delta).validate(n)?;
    let n = n as f64;
    let m = 12.0 * threshold / (n * epsilon * epsilon) * (2.0 * n / delta).ln();
    Ok(m.ceil() as usize)
}

#[derive(Clone, Debug)]
pub struct ThresholdTracker {
    graph: DynamicGraph,
    coll: Collection,
    config: ThresholdConfig,
    m: usize,
    t: u64,
    rng: ChaCha8Rng,
    totals: MaintenanceStats,
}

impl ThresholdTracker {
    /// Builds the initial collection of `M` sets on `graph`.
    pub fn new(graph: DynamicGraph, config: ThresholdConfig, seed: u64) -> Result<Self> {
        let m = required_sample_size(graph.n(), config.threshold, config.epsilon, config.delta)?;
        Self::with_sample_size(graph, config, m, seed)
    }

    /// Like [`ThresholdTracker::new`] with an explicit collection size, for
    /// experiments that hold `M` fixed. The configuration is still validated.
    pub fn with_sample_size(graph: DynamicGraph, config: ThresholdConfig, m: usize, seed: u64) -> Result<Self> {
        config.validate(graph.n())?;
        if m == 0 {
            return Err(Error::InvalidConfig("sample size must be positive".into()));
        }
        let mut rng = crate::rng_stream(seed, 0);
        let mut coll = Collection::new(graph.model(), graph.n());
        coll.fill_to(&graph, m, &mut rng);
        Ok(ThresholdTracker {
            graph,
            coll,
            config,
            m,
            t: 0,
            rng,
            totals: MaintenanceStats::default(),
        })
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn collection(&self) -> &Collection {
        &self.coll
    }

    pub fn config(&self) -> ThresholdConfig {
        self.config
    }

    pub fn sample_size(&self) -> usize {
        self.m
    }

    /// Timestamp of the last processed update (0 before any).
    pub fn t(&self) -> u64 {
        self.t
    }

    /// Maintenance work summed over every processed update.
    pub fn totals(&self) -> MaintenanceStats {
        self.totals
    }

    /// Applies `upd` to the graph and repairs the affected RR sets.
    pub fn process_update(&mut self, upd: &WeightUpdate) -> Result<MaintenanceStats> {
        let d = self.graph.apply_update(upd)?;
        self.t = upd.t;
        let stats = self.coll.apply(&self.graph, &d, &mut self.rng);
        self.totals += stats;
        Ok(stats)
    }

    /// `n · F_R(u)` for every node.
    pub fn estimates(&self) -> Vec<f64> {
        let idx = self.coll.index();
        let scale = self.graph.n() as f64 / self.coll.len() as f64;
        (0..self.graph.n() as u32).map(|u| idx.degree(u) as f64 * scale).collect()
    }

    pub fn report(&self) -> Result<TrackerReport> {
        if self.coll.len() != self.m {
            return Err(Error::SampleSizeMismatch {
                expected: self.m,
                actual: self.coll.len(),
            });
        }
        let n = self.graph.n() as f64;
        let cutoff = self.config.threshold - self.config.epsilon * n / 2.0;
        Ok(TrackerReport {
            t: self.t,
            mode: Mode::Threshold,
            k: None,
            nodes: select_at_least(self.coll.index(), self.m, cutoff / n),
            m: self.m,
            threshold: Some(self.config.threshold),
            x: None,
            theta: None,
            epsilon: self.config.epsilon,
            delta: self.config.delta,
        })
    }

    /// Discards the collection and polls `M` fresh sets on the current graph.
    pub fn rebuild(&mut self) {
        self.coll = Collection::new(self.graph.model(), self.graph.n());
        self.coll.fill_to(&self.graph, self.m, &mut self.rng);
    }
}
