//! Mutable weighted digraph driven by the edge-weight update stream.
//!
//! Only in-adjacency is stored: every consumer walks edges backwards from a
//! polled node. Under LT each node also carries a self-weight and the total
//! weight `W_v = w_v + sum_u w_uv`, so the probability that `v` picks `u` as
//! its previous node is `w_uv / W_v`. Under IC an edge weight is the
//! propagation probability itself.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stream::WeightUpdate;

pub type NodeId = u32;

/// Number of applied updates between full recomputations of LT total weights.
pub const TOTAL_WEIGHT_REFRESH_INTERVAL: u64 = 1 << 20;

const REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Lt,
    Ic,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Lt => "lt",
            Model::Ic => "ic",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "lt" => Ok(Model::Lt),
            "ic" => Ok(Model::Ic),
            other => Err(format!("unknown diffusion model `{other}` (expected lt or ic)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Increase,
    Decrease,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Increase => '+',
            Sign::Decrease => '-',
        }
    }
}

/// The previous node picked by a node in the LT live-edge process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pred {
    Node(NodeId),
    /// The node picked its own self-weight, i.e. no incoming live edge.
    Itself,
}

/// Before/after record of one applied update, consumed by RR-set maintenance.
///
/// `delta` is the change actually applied, which differs from the requested
/// amount only when a decrease snaps a float residue to exactly zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpdateDelta {
    pub u: NodeId,
    pub v: NodeId,
    pub sign: Sign,
    pub delta: f64,
    pub weight_before: f64,
    pub weight_after: f64,
    /// LT total weight of `v`; under IC these mirror the edge weight sum and
    /// are not used.
    pub total_before: f64,
    pub total_after: f64,
}

impl UpdateDelta {
    pub fn is_self_weight(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Clone, Debug)]
pub struct DynamicGraph {
    model: Model,
    in_adj: Vec<Vec<(NodeId, f64)>>,
    // (u, v) -> position of u inside in_adj[v]
    edge_pos: FxHashMap<(NodeId, NodeId), u32>,
    self_weight: Vec<f64>,
    total_weight: Vec<f64>,
    applied: u64,
}

impl DynamicGraph {
    pub fn new(n: usize, model: Model) -> Self {
        DynamicGraph {
            model,
            in_adj: vec![Vec::new(); n],
            edge_pos: FxHashMap::default(),
            self_weight: vec![0.0; n],
            total_weight: vec![0.0; n],
            applied: 0,
        }
    }

    /// Builds a graph from `(u, v, weight)` triples. Under LT a triple with
    /// `u == v` sets the self-weight of `u`. Repeated edges accumulate.
    pub fn from_edges<I>(n: usize, model: Model, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut g = DynamicGraph::new(n, model);
        for (u, v, w) in edges {
            if w == 0.0 {
                continue;
            }
            g.apply_update(&WeightUpdate::new(0, u, v, Sign::Increase, w))?;
        }
        g.applied = 0;
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.in_adj.len()
    }

    #[inline]
    pub fn model(&self) -> Model {
        self.model
    }

    pub fn edge_count(&self) -> usize {
        self.edge_pos.len()
    }

    fn check(&self, node: NodeId) -> Result<()> {
        if (node as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownNode {
                node,
                n: self.n(),
            })
        }
    }

    /// Current in-edges of `v` with nonzero weight.
    pub fn in_neighbors(&self, v: NodeId) -> Result<&[(NodeId, f64)]> {
        self.check(v)?;
        Ok(&self.in_adj[v as usize])
    }

    /// Unchecked variant for hot paths where `v` is known to be valid.
    #[inline]
    pub(crate) fn in_edges(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.in_adj[v as usize]
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> f64 {
        if u == v {
            return self.self_weight.get(v as usize).copied().unwrap_or(0.0);
        }
        match self.edge_pos.get(&(u, v)) {
            Some(&pos) => self.in_adj[v as usize][pos as usize].1,
            None => 0.0,
        }
    }

    pub fn self_weight(&self, v: NodeId) -> f64 {
        self.self_weight[v as usize]
    }

    pub fn total_weight(&self, v: NodeId) -> f64 {
        self.total_weight[v as usize]
    }

    /// All edges as `(u, v, weight)`, plus LT self-weights as `(v, v, w_v)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        let selfs = self
            .self_weight
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(v, w)| (v as NodeId, v as NodeId, *w));
        let edges = self
            .in_adj
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().map(move |&(u, w)| (u, v as NodeId, w)));
        selfs.chain(edges)
    }

    /// Live LT influence probability `w_uv / W_v` (0 when `W_v = 0`).
    pub fn lt_probability(&self, u: NodeId, v: NodeId) -> f64 {
        let total = self.total_weight[v as usize];
        if total <= 0.0 {
            0.0
        } else {
            self.weight(u, v) / total
        }
    }

    pub fn apply_update(&mut self, upd: &WeightUpdate) -> Result<UpdateDelta> {
        let (u, v) = (upd.u, upd.v);
        self.check(u)?;
        self.check(v)?;
        if !(upd.delta > 0.0) || !upd.delta.is_finite() {
            return Err(Error::NonPositiveDelta(upd.delta));
        }
        if u == v && self.model == Model::Ic {
            return Err(Error::SelfWeightInIc(u));
        }

        let before = self.weight(u, v);
        let after = match upd.sign {
            Sign::Increase => {
                let w = before + upd.delta;
                if self.model == Model::Ic && w > 1.0 {
                    if w > 1.0 + REL_TOL {
                        return Err(Error::ProbabilityOverflow {
                            u,
                            v,
                            current: before,
                            delta: upd.delta,
                        });
                    }
                    1.0
                } else {
                    w
                }
            }
            Sign::Decrease => {
                let w = before - upd.delta;
                let tol = REL_TOL * before.max(upd.delta).max(1e-300);
                if w < -tol {
                    return Err(Error::NegativeResultingWeight {
                        u,
                        v,
                        current: before,
                        delta: upd.delta,
                    });
                }
                if w <= tol {
                    0.0
                } else {
                    w
                }
            }
        };

        self.set_weight(u, v, after);
        let delta = (after - before).abs();
        let vi = v as usize;
        let total_before = self.total_weight[vi];
        let total_after = match upd.sign {
            Sign::Increase => total_before + delta,
            Sign::Decrease => (total_before - delta).max(0.0),
        };
        // drift must not leave weight on a node with nothing pointing at it
        let total_after = if self.self_weight[vi] == 0.0 && self.in_adj[vi].is_empty() {
            0.0
        } else {
            total_after
        };
        self.total_weight[vi] = total_after;

        self.applied += 1;
        if self.applied.is_multiple_of(TOTAL_WEIGHT_REFRESH_INTERVAL) {
            self.recompute_totals();
        }

        Ok(UpdateDelta {
            u,
            v,
            sign: upd.sign,
            delta,
            weight_before: before,
            weight_after: after,
            total_before,
            total_after: self.total_weight[vi],
        })
    }

    fn set_weight(&mut self, u: NodeId, v: NodeId, w: f64) {
        if u == v {
            self.self_weight[v as usize] = w;
            return;
        }
        let list = &mut self.in_adj[v as usize];
        match self.edge_pos.get(&(u, v)).copied() {
            Some(pos) if w > 0.0 => list[pos as usize].1 = w,
            Some(pos) => {
                list.swap_remove(pos as usize);
                self.edge_pos.remove(&(u, v));
                if let Some(&(moved, _)) = list.get(pos as usize) {
                    self.edge_pos.insert((moved, v), pos);
                }
            }
            None if w > 0.0 => {
                self.edge_pos.insert((u, v), list.len() as u32);
                list.push((u, w));
            }
            None => {}
        }
    }

    /// Recomputes every LT total weight from scratch to shed float drift.
    pub fn recompute_totals(&mut self) {
        for v in 0..self.n() {
            self.total_weight[v] = self.recomputed_total(v as NodeId);
        }
    }

    pub fn recomputed_total(&self, v: NodeId) -> f64 {
        self.self_weight[v as usize] + self.in_adj[v as usize].iter().map(|e| e.1).sum::<f64>()
    }

    /// Draws the previous node of `v` in the LT live-edge process: in-neighbor
    /// `u` with probability `w_uv / W_v`, [`Pred::Itself`] with probability
    /// `w_v / W_v` or when `W_v = 0`.
    pub fn sample_previous_lt<R: Rng + ?Sized>(&self, v: NodeId, rng: &mut R) -> Pred {
        let vi = v as usize;
        let total = self.total_weight[vi];
        let list = &self.in_adj[vi];
        if total <= 0.0 || list.is_empty() {
            return Pred::Itself;
        }
        let mut r = rng.random::<f64>() * total;
        r -= self.self_weight[vi];
        if r < 0.0 {
            return Pred::Itself;
        }
        for &(u, w) in list {
            if r < w {
                return Pred::Node(u);
            }
            r -= w;
        }
        // rounding residue past the last edge
        Pred::Node(list[list.len() - 1].0)
    }

    /// Checks the model-specific weight invariants; returns a description of
    /// the first violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for v in 0..self.n() {
            for (pos, &(u, w)) in self.in_adj[v].iter().enumerate() {
                if !(w > 0.0) {
                    return Err(format!("edge ({u},{v}) stored with weight {w}"));
                }
                if self.edge_pos.get(&(u, v as NodeId)) != Some(&(pos as u32)) {
                    return Err(format!("edge ({u},{v}) position index out of sync"));
                }
                if self.model == Model::Ic && w > 1.0 {
                    return Err(format!("IC edge ({u},{v}) has probability {w} > 1"));
                }
            }
            if self.model == Model::Lt {
                let fresh = self.recomputed_total(v as NodeId);
                let kept = self.total_weight[v];
                if (fresh - kept).abs() > REL_TOL * fresh.abs().max(1.0) {
                    return Err(format!("total weight of {v} drifted: kept {kept}, actual {fresh}"));
                }
            }
        }
        let stored: usize = self.in_adj.iter().map(Vec::len).sum();
        if stored != self.edge_pos.len() {
            return Err("edge position index size mismatch".into());
        }
        Ok(())
    }

    /// Field-by-field comparison within relative tolerance `tol`.
    pub fn approx_eq(&self, other: &DynamicGraph, tol: f64) -> bool {
        if self.n() != other.n() || self.model != other.model || self.edge_count() != other.edge_count() {
            return false;
        }
        let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
        self.edges().all(|(u, v, w)| close(w, other.weight(u, v)))
            && other.edges().all(|(u, v, w)| close(w, self.weight(u, v)))
            && (0..self.n()).all(|v| close(self.total_weight[v], other.total_weight[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn up(u: NodeId, v: NodeId, sign: Sign, d: f64) -> WeightUpdate {
        WeightUpdate::new(0, u, v, sign, d)
    }

    #[test]
    fn lt_increase_updates_edge_and_total() {
        let mut g = DynamicGraph::from_edges(2, Model::Lt, [(0, 1, 1.0), (1, 1, 1.0)]).unwrap();
        assert_eq!(g.total_weight(1), 2.0);
        let d = g.apply_update(&up(0, 1, Sign::Increase, 1.0)).unwrap();
        assert_eq!(g.weight(0, 1), 2.0);
        assert_eq!(g.total_weight(1), 3.0);
        assert_eq!((d.weight_before, d.total_before, d.weight_after, d.total_after), (1.0, 2.0, 2.0, 3.0));
    }

    #[test]
    fn ic_increase_and_overflow() {
        let mut g = DynamicGraph::from_edges(2, Model::Ic, [(0, 1, 0.2)]).unwrap();
        g.apply_update(&up(0, 1, Sign::Increase, 0.2)).unwrap();
        assert!((g.weight(0, 1) - 0.4).abs() < 1e-15);

        let mut g = DynamicGraph::from_edges(2, Model::Ic, [(0, 1, 0.9)]).unwrap();
        let err = g.apply_update(&up(0, 1, Sign::Increase, 0.2)).unwrap_err();
        assert!(matches!(err, Error::ProbabilityOverflow { .. }));
        assert_eq!(g.weight(0, 1), 0.9);
    }

    #[test]
    fn update_errors() {
        let mut g = DynamicGraph::new(3, Model::Ic);
        assert!(matches!(
            g.apply_update(&up(0, 7, Sign::Increase, 0.1)),
            Err(Error::UnknownNode { node: 7, .. })
        ));
        assert!(matches!(g.apply_update(&up(1, 1, Sign::Increase, 0.1)), Err(Error::SelfWeightInIc(1))));
        assert!(matches!(
            g.apply_update(&up(0, 1, Sign::Decrease, 0.1)),
            Err(Error::NegativeResultingWeight { .. })
        ));
        assert!(matches!(g.apply_update(&up(0, 1, Sign::Increase, 0.0)), Err(Error::NonPositiveDelta(_))));
        assert!(matches!(g.in_neighbors(3), Err(Error::UnknownNode { .. })));
    }

    #[test]
    fn in_neighbors_track_insert_and_removal() {
        let mut g = DynamicGraph::new(2, Model::Lt);
        assert!(g.in_neighbors(1).unwrap().is_empty());
        g.apply_update(&up(0, 1, Sign::Increase, 1.0)).unwrap();
        assert_eq!(g.in_neighbors(1).unwrap(), &[(0, 1.0)]);
        g.apply_update(&up(0, 1, Sign::Decrease, 1.0)).unwrap();
        assert!(g.in_neighbors(1).unwrap().is_empty());
        assert_eq!(g.edge_count(), 0);
        g.validate().unwrap();
    }

    #[test]
    fn swap_remove_keeps_positions_consistent() {
        let mut g = DynamicGraph::from_edges(4, Model::Ic, [(0, 3, 0.1), (1, 3, 0.2), (2, 3, 0.3)]).unwrap();
        g.apply_update(&up(0, 3, Sign::Decrease, 0.1)).unwrap();
        g.validate().unwrap();
        assert_eq!(g.weight(2, 3), 0.3);
        assert_eq!(g.weight(1, 3), 0.2);
        g.apply_update(&up(2, 3, Sign::Decrease, 0.15)).unwrap();
        assert!((g.weight(2, 3) - 0.15).abs() < 1e-12);
        g.validate().unwrap();
    }

    #[test]
    fn sampling_degenerate_and_isolated() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = DynamicGraph::from_edges(2, Model::Lt, [(1, 1, 2.0)]).unwrap();
        for _ in 0..100 {
            assert_eq!(g.sample_previous_lt(1, &mut rng), Pred::Itself);
            assert_eq!(g.sample_previous_lt(0, &mut rng), Pred::Itself);
        }
    }

    #[test]
    fn sampling_frequencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = DynamicGraph::from_edges(3, Model::Lt, [(0, 2, 3.0), (1, 2, 1.0)]).unwrap();
        let draws = 100_000;
        let hits = (0..draws)
            .filter(|_| g.sample_previous_lt(2, &mut rng) == Pred::Node(0))
            .count();
        assert!((hits as f64 / draws as f64 - 0.75).abs() < 0.01);

        let g = DynamicGraph::from_edges(2, Model::Lt, [(0, 1, 1.0), (1, 1, 1.0)]).unwrap();
        let hits = (0..draws)
            .filter(|_| g.sample_previous_lt(1, &mut rng) == Pred::Node(0))
            .count();
        assert!((hits as f64 / draws as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn self_weight_updates_adjust_total() {
        let mut g = DynamicGraph::from_edges(2, Model::Lt, [(0, 1, 1.0)]).unwrap();
        g.apply_update(&up(1, 1, Sign::Increase, 3.0)).unwrap();
        assert_eq!(g.self_weight(1), 3.0);
        assert_eq!(g.total_weight(1), 4.0);
        g.apply_update(&up(1, 1, Sign::Decrease, 3.0)).unwrap();
        assert_eq!(g.total_weight(1), 1.0);
        assert!((g.lt_probability(0, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn model_parses() {
        assert_eq!("LT".parse::<Model>().unwrap(), Model::Lt);
        assert_eq!("ic".parse::<Model>().unwrap(), Model::Ic);
        assert!("ct".parse::<Model>().is_err());
    }
}
