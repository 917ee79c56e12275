//! LT-model RR sets and their maintenance under weight updates.
//!
//! Under LT every node picks at most one incoming live edge, so an RR set is
//! a simple path `v1 <- v2 <- ... <- vl` walked backwards from the polled node
//! `v1`. The walk stops when `vl` picks itself or a node already on the path;
//! that last choice is kept so decreases can tell whether `vl` depends on the
//! updated edge.
//!
//! After an update on `(u, v)` each affected path is rerouted from `v` with
//! the probability that keeps `v`'s choice distributed as `w_uv / W_v`:
//! `delta / W_v` after an increase (new choice: `u`), and `delta / w_uv_before`
//! for paths whose `v` picked `u` after a decrease (new choice: a fresh draw).

use rand::Rng;
use rustc_hash::FxHashMap;

use crate::collection::MaintenanceStats;
use crate::graph::{DynamicGraph, NodeId, Pred, Sign, UpdateDelta};
use crate::rr_index::{RRCollection, RrSet};

/// Paths up to this length are searched linearly; longer ones keep a
/// position map.
const INDEXED_FROM: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtSet {
    path: Vec<NodeId>,
    /// Empty while the path is short, complete otherwise.
    pos: FxHashMap<NodeId, u32>,
    prev_of_last: Pred,
}

impl LtSet {
    /// Polls a uniformly random node and walks its live-edge path backwards.
    pub fn generate<R: Rng + ?Sized>(g: &DynamicGraph, rng: &mut R) -> Self {
        assert!(g.n() > 0, "cannot poll an empty graph");
        let start = rng.random_range(0..g.n() as NodeId);
        Self::generate_from(g, start, rng)
    }

    pub fn generate_from<R: Rng + ?Sized>(g: &DynamicGraph, start: NodeId, rng: &mut R) -> Self {
        let mut set = LtSet {
            path: vec![start],
            pos: FxHashMap::default(),
            prev_of_last: Pred::Itself,
        };
        let first = g.sample_previous_lt(start, rng);
        set.extend(g, first, rng, &mut Vec::new());
        set
    }

    pub fn path(&self) -> &[NodeId] {
        &self.path
    }

    pub fn start(&self) -> NodeId {
        self.path[0]
    }

    pub fn prev_of_last(&self) -> Pred {
        self.prev_of_last
    }

    /// The previous node picked by member `v`, `None` if `v` is not on the path.
    pub fn predecessor_of(&self, v: NodeId) -> Option<Pred> {
        let i = self.position(v)?;
        Some(match self.path.get(i + 1) {
            Some(&next) => Pred::Node(next),
            None => self.prev_of_last,
        })
    }

    fn position(&self, u: NodeId) -> Option<usize> {
        if self.pos.is_empty() {
            self.path.iter().position(|&x| x == u)
        } else {
            self.pos.get(&u).map(|&i| i as usize)
        }
    }

    fn push(&mut self, u: NodeId) {
        if !self.pos.is_empty() {
            self.pos.insert(u, self.path.len() as u32);
        }
        self.path.push(u);
        if self.pos.is_empty() && self.path.len() > INDEXED_FROM {
            self.pos = self.path.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        }
    }

    /// Continues the reverse walk from the current last node, whose choice is
    /// `choice`.
    fn extend<R: Rng + ?Sized>(&mut self, g: &DynamicGraph, mut choice: Pred, rng: &mut R, added: &mut Vec<NodeId>) {
        loop {
            match choice {
                Pred::Itself => break,
                Pred::Node(u) if self.position(u).is_some() => break,
                Pred::Node(u) => {
                    self.push(u);
                    added.push(u);
                    choice = g.sample_previous_lt(u, rng);
                }
            }
        }
        self.prev_of_last = choice;
    }

    /// Replaces `v`'s choice with `choice`: drops the sub-path after `v` and
    /// walks on from there.
    fn reroute<R: Rng + ?Sized>(
        &mut self,
        g: &DynamicGraph,
        v: NodeId,
        choice: Pred,
        rng: &mut R,
        removed: &mut Vec<NodeId>,
        added: &mut Vec<NodeId>,
    ) {
        let i = self.position(v).expect("rerouted node is on the path");
        let indexed = !self.pos.is_empty();
        for u in self.path.drain(i + 1..) {
            if indexed {
                self.pos.remove(&u);
            }
            removed.push(u);
        }
        if indexed && self.path.len() <= INDEXED_FROM {
            self.pos = FxHashMap::default();
        }
        self.extend(g, choice, rng, added);
    }

    /// Checks path simplicity, the position map, and that every recorded
    /// choice is still a live option in `g`.
    pub fn validate(&self, g: &DynamicGraph) -> Result<(), String> {
        if self.path.is_empty() {
            return Err("empty path".into());
        }
        let distinct: rustc_hash::FxHashSet<NodeId> = self.path.iter().copied().collect();
        if distinct.len() != self.path.len() {
            return Err("path repeats a node".into());
        }
        if self.path.len() > INDEXED_FROM {
            if self.pos.len() != self.path.len() {
                return Err("position map incomplete".into());
            }
            for (i, &u) in self.path.iter().enumerate() {
                if self.pos.get(&u) != Some(&(i as u32)) {
                    return Err(format!("position of {u} out of sync"));
                }
            }
        } else if !self.pos.is_empty() {
            return Err("short path keeps a position map".into());
        }
        for (i, &v) in self.path.iter().enumerate() {
            let choice = self.predecessor_of(v).expect("member");
            match choice {
                Pred::Node(u) => {
                    if g.weight(u, v) <= 0.0 {
                        return Err(format!("path uses missing edge ({u},{v}) at index {i}"));
                    }
                }
                Pred::Itself => {
                    if g.self_weight(v) <= 0.0 && g.total_weight(v) > 0.0 {
                        return Err(format!("node {v} picked itself without self-weight"));
                    }
                }
            }
        }
        if let Pred::Node(u) = self.prev_of_last {
            if self.position(u).is_none() {
                return Err(format!("prev_of_last {u} is off the path"));
            }
        }
        Ok(())
    }
}

impl RrSet for LtSet {
    fn members(&self) -> Vec<NodeId> {
        self.path.clone()
    }

    fn len(&self) -> usize {
        self.path.len()
    }

    fn contains(&self, u: NodeId) -> bool {
        self.position(u).is_some()
    }
}

/// Maintenance after `d` (an increase) has been applied to `g`.
pub fn handle_increase<R: Rng + ?Sized>(
    coll: &mut RRCollection<LtSet>,
    g: &DynamicGraph,
    d: &UpdateDelta,
    rng: &mut R,
) -> MaintenanceStats {
    debug_assert_eq!(d.sign, Sign::Increase);
    let mut stats = MaintenanceStats::default();
    let ids: Vec<_> = coll.index.sets_containing(d.v).collect();
    stats.retrieved = ids.len();
    stats.candidates = ids.len();
    if d.total_after <= 0.0 {
        return stats;
    }
    let p = d.delta / d.total_after;
    let choice = if d.is_self_weight() { Pred::Itself } else { Pred::Node(d.u) };
    let (mut removed, mut added) = (Vec::new(), Vec::new());
    for id in ids {
        if rng.random::<f64>() >= p {
            continue;
        }
        let set = coll.sets.get_mut(&id).expect("indexed set exists");
        removed.clear();
        added.clear();
        set.reroute(g, d.v, choice, rng, &mut removed, &mut added);
        stats.record(&removed, &added);
        coll.index
            .diff_membership(id, &removed, &added)
            .expect("indexed set is registered");
    }
    stats
}

/// Maintenance after `d` (a decrease) has been applied to `g`.
pub fn handle_decrease<R: Rng + ?Sized>(
    coll: &mut RRCollection<LtSet>,
    g: &DynamicGraph,
    d: &UpdateDelta,
    rng: &mut R,
) -> MaintenanceStats {
    debug_assert_eq!(d.sign, Sign::Decrease);
    let mut stats = MaintenanceStats::default();
    let ids: Vec<_> = coll.index.sets_containing(d.v).collect();
    stats.retrieved = ids.len();
    if d.weight_before <= 0.0 {
        return stats;
    }
    let p = d.delta / d.weight_before;
    let dropped = if d.is_self_weight() { Pred::Itself } else { Pred::Node(d.u) };
    let (mut removed, mut added) = (Vec::new(), Vec::new());
    for id in ids {
        let set = coll.sets.get_mut(&id).expect("indexed set exists");
        if set.predecessor_of(d.v) != Some(dropped) {
            continue;
        }
        stats.candidates += 1;
        if rng.random::<f64>() >= p {
            continue;
        }
        removed.clear();
        added.clear();
        let choice = g.sample_previous_lt(d.v, rng);
        set.reroute(g, d.v, choice, rng, &mut removed, &mut added);
        stats.record(&removed, &added);
        coll.index
            .diff_membership(id, &removed, &added)
            .expect("indexed set is registered");
    }
    stats
}
