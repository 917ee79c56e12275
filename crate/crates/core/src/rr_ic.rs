//! IC-model RR sets and their maintenance under probability updates.
//!
//! An IC RR set is the component reversely reachable from the polled node
//! over live edges. Every live edge pointing into a member is stored with its
//! label: `Bfs` if it discovered its source during the reverse breadth-first
//! expansion, `Cross` otherwise. The `Bfs` edges form a tree rooted at the
//! start node, so dropping a `Cross` edge never disconnects anything.
//! Probabilities stay in the graph; sets only record which edges are live.

use std::collections::VecDeque;

use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::collection::MaintenanceStats;
use crate::graph::{DynamicGraph, NodeId, Sign, UpdateDelta};
use crate::rr_index::{RRCollection, RrSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Bfs,
    Cross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiveEdge {
    pub src: NodeId,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcSet {
    start: NodeId,
    /// member -> live edges pointing into it
    live_in: FxHashMap<NodeId, Vec<LiveEdge>>,
}

impl IcSet {
    pub fn generate<R: Rng + ?Sized>(g: &DynamicGraph, rng: &mut R) -> Self {
        assert!(g.n() > 0, "cannot poll an empty graph");
        let start = rng.random_range(0..g.n() as NodeId);
        Self::generate_from(g, start, rng)
    }

    pub fn generate_from<R: Rng + ?Sized>(g: &DynamicGraph, start: NodeId, rng: &mut R) -> Self {
        let mut set = IcSet {
            start,
            live_in: FxHashMap::default(),
        };
        set.live_in.insert(start, Vec::new());
        set.expand(g, start, rng, &mut Vec::new());
        set
    }

    pub fn start(&self) -> NodeId {
        self.start
    }

    pub fn live_in_edges(&self, v: NodeId) -> Option<&[LiveEdge]> {
        self.live_in.get(&v).map(Vec::as_slice)
    }

    pub fn is_live(&self, u: NodeId, v: NodeId) -> bool {
        self.live_in
            .get(&v)
            .is_some_and(|edges| edges.iter().any(|e| e.src == u))
    }

    pub fn live_edge_count(&self) -> usize {
        self.live_in.values().map(Vec::len).sum()
    }

    /// Reverse BFS from the member `from`, flipping a coin for each in-edge
    /// of every newly processed node.
    fn expand<R: Rng + ?Sized>(&mut self, g: &DynamicGraph, from: NodeId, rng: &mut R, added: &mut Vec<NodeId>) {
        let mut frontier = VecDeque::from([from]);
        while let Some(x) = frontier.pop_front() {
            for &(y, w) in g.in_edges(x) {
                if rng.random::<f64>() >= w {
                    continue;
                }
                let label = if let std::collections::hash_map::Entry::Vacant(e) = self.live_in.entry(y) {
                    e.insert(Vec::new());
                    frontier.push_back(y);
                    added.push(y);
                    EdgeLabel::Bfs
                } else {
                    EdgeLabel::Cross
                };
                self.live_in
                    .get_mut(&x)
                    .expect("processed node is a member")
                    .push(LiveEdge { src: y, label });
            }
        }
    }

    /// Keeps only what is reachable from the start over the remaining live
    /// edges and relabels edges by a fresh BFS.
    fn retraverse(&mut self, removed: &mut Vec<NodeId>) {
        let mut seen = FxHashSet::default();
        seen.insert(self.start);
        let mut frontier = VecDeque::from([self.start]);
        while let Some(x) = frontier.pop_front() {
            let edges = self.live_in.get_mut(&x).expect("reached node is a member");
            for e in edges.iter_mut() {
                if seen.insert(e.src) {
                    e.label = EdgeLabel::Bfs;
                    frontier.push_back(e.src);
                } else {
                    e.label = EdgeLabel::Cross;
                }
            }
        }
        self.live_in.retain(|u, _| {
            let keep = seen.contains(u);
            if !keep {
                removed.push(*u);
            }
            keep
        });
    }

    /// Checks that members are exactly what the live edges reach from the
    /// start, that `Bfs` edges form a tree rooted there, and that every live
    /// edge still has positive probability in `g`.
    pub fn validate(&self, g: &DynamicGraph) -> Result<(), String> {
        if !self.live_in.contains_key(&self.start) {
            return Err("start is not a member".into());
        }
        let mut tree_parent: FxHashMap<NodeId, NodeId> = FxHashMap::default();
        for (&v, edges) in &self.live_in {
            let mut srcs = FxHashSet::default();
            for e in edges {
                if !srcs.insert(e.src) {
                    return Err(format!("live edge ({},{v}) recorded twice", e.src));
                }
                if !self.live_in.contains_key(&e.src) {
                    return Err(format!("live edge ({},{v}) leaves the member set", e.src));
                }
                if g.weight(e.src, v) <= 0.0 {
                    return Err(format!("live edge ({},{v}) has zero probability", e.src));
                }
                if e.label == EdgeLabel::Bfs && tree_parent.insert(e.src, v).is_some() {
                    return Err(format!("node {} discovered by two BFS edges", e.src));
                }
            }
        }
        if tree_parent.contains_key(&self.start) {
            return Err("start node has a BFS parent".into());
        }
        if tree_parent.len() + 1 != self.live_in.len() {
            return Err("some member lacks a BFS edge".into());
        }
        for &u in self.live_in.keys() {
            let mut at = u;
            for _ in 0..self.live_in.len() {
                if at == self.start {
                    break;
                }
                at = tree_parent[&at];
            }
            if at != self.start {
                return Err(format!("BFS edges from {u} do not lead to the start"));
            }
        }
        let mut seen = FxHashSet::default();
        seen.insert(self.start);
        let mut frontier = vec![self.start];
        while let Some(x) = frontier.pop() {
            for e in &self.live_in[&x] {
                if seen.insert(e.src) {
                    frontier.push(e.src);
                }
            }
        }
        if seen.len() != self.live_in.len() {
            return Err("a member is unreachable from the start".into());
        }
        Ok(())
    }
}

impl RrSet for IcSet {
    fn members(&self) -> Vec<NodeId> {
        self.live_in.keys().copied().collect()
    }

    fn len(&self) -> usize {
        self.live_in.len()
    }

    fn contains(&self, u: NodeId) -> bool {
        self.live_in.contains_key(&u)
    }
}

/// Maintenance after `d` (an increase) has been applied to `g`.
pub fn handle_increase<R: Rng + ?Sized>(
    coll: &mut RRCollection<IcSet>,
    g: &DynamicGraph,
    d: &UpdateDelta,
    rng: &mut R,
) -> MaintenanceStats {
    debug_assert_eq!(d.sign, Sign::Increase);
    let mut stats = MaintenanceStats::default();
    let ids: Vec<_> = coll.index.sets_containing(d.v).collect();
    stats.retrieved = ids.len();
    let dead_mass = 1.0 - d.weight_before;
    let p = if dead_mass <= 0.0 { 1.0 } else { d.delta / dead_mass };
    let mut added = Vec::new();
    for id in ids {
        let set = coll.sets.get_mut(&id).expect("indexed set exists");
        if set.is_live(d.u, d.v) {
            continue;
        }
        stats.candidates += 1;
        if rng.random::<f64>() >= p {
            continue;
        }
        added.clear();
        let label = if let std::collections::hash_map::Entry::Vacant(e) = set.live_in.entry(d.u) {
            e.insert(Vec::new());
            added.push(d.u);
            EdgeLabel::Bfs
        } else {
            EdgeLabel::Cross
        };
        set.live_in
            .get_mut(&d.v)
            .expect("retrieved set contains v")
            .push(LiveEdge { src: d.u, label });
        if label == EdgeLabel::Bfs {
            set.expand(g, d.u, rng, &mut added);
        }
        stats.record(&[], &added);
        coll.index
            .diff_membership(id, &[], &added)
            .expect("indexed set is registered");
    }
    stats
}

/// Maintenance after `d` (a decrease) has been applied to `g`.
pub fn handle_decrease<R: Rng + ?Sized>(
    coll: &mut RRCollection<IcSet>,
    _g: &DynamicGraph,
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
    let mut removed = Vec::new();
    for id in ids {
        let set = coll.sets.get_mut(&id).expect("indexed set exists");
        let edges = set.live_in.get_mut(&d.v).expect("retrieved set contains v");
        let Some(at) = edges.iter().position(|e| e.src == d.u) else {
            continue;
        };
        stats.candidates += 1;
        if rng.random::<f64>() >= p {
            continue;
        }
        let edge = edges.swap_remove(at);
        removed.clear();
        if edge.label == EdgeLabel::Bfs {
            set.retraverse(&mut removed);
            stats.traversals += 1;
        }
        stats.record(&removed, &[]);
        if !removed.is_empty() {
            coll.index
                .diff_membership(id, &removed, &[])
                .expect("indexed set is registered");
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Model;
    use crate::stream::WeightUpdate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize, edges: &[(NodeId, NodeId, f64)]) -> DynamicGraph {
        DynamicGraph::from_edges(n, Model::Ic, edges.iter().copied()).unwrap()
    }

    fn collection_from(g: &DynamicGraph, starts: &[NodeId], rng: &mut ChaCha8Rng) -> RRCollection<IcSet> {
        let mut coll = RRCollection::new(g.n());
        for &s in starts {
            coll.push(IcSet::generate_from(g, s, rng));
        }
        coll
    }

    #[test]
    fn no_in_edges_gives_singleton() {
        let g = graph(2, &[(1, 0, 0.5)]);
        let set = IcSet::generate_from(&g, 1, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(set.members(), vec![1]);
        assert_eq!(set.live_edge_count(), 0);
    }

    #[test]
    fn chain_reach_probability() {
        // a -> b -> c at 0.5 each, start c: a joins with probability 1/4
        let g = graph(3, &[(0, 1, 0.5), (1, 2, 0.5)]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let trials = 100_000;
        let hits = (0..trials)
            .filter(|_| IcSet::generate_from(&g, 2, &mut rng).contains(0))
            .count();
        assert!((hits as f64 / trials as f64 - 0.25).abs() < 0.01);
    }

    #[test]
    fn deterministic_triangle_labels() {
        // a -> c, b -> c, a -> b, all certain. Start c.
        let (a, b, c) = (0, 1, 2);
        let g = graph(3, &[(a, c, 1.0), (b, c, 1.0), (a, b, 1.0)]);
        let set = IcSet::generate_from(&g, c, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(set.len(), 3);
        assert_eq!(set.live_edge_count(), 3);
        let labels: Vec<_> = [(a, c), (b, c), (a, b)]
            .iter()
            .map(|&(u, v)| set.live_in_edges(v).unwrap().iter().find(|e| e.src == u).unwrap().label)
            .collect();
        // c is processed first, discovering a and b; a -> b is then a cross edge
        assert_eq!(labels, vec![EdgeLabel::Bfs, EdgeLabel::Bfs, EdgeLabel::Cross]);
        set.validate(&g).unwrap();
    }

    #[test]
    fn increase_with_certain_edge_extends_every_set() {
        let mut g = graph(3, &[(0, 1, 1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut coll = collection_from(&g, &[2, 2, 2], &mut rng);
        let d = g.apply_update(&WeightUpdate::new(1, 1, 2, Sign::Increase, 1.0)).unwrap();
        let stats = handle_increase(&mut coll, &g, &d, &mut rng);
        assert_eq!(stats.rerouted, 3);
        for (_, set) in coll.iter() {
            let mut m = set.members();
            m.sort();
            assert_eq!(m, vec![0, 1, 2]);
            set.validate(&g).unwrap();
        }
        coll.validate_index().unwrap();
    }

    #[test]
    fn increase_add_probability_matches_marginal() {
        // w_before = 0.2, +0.2: add with probability 0.25, marginal after = 0.4
        let mut g = graph(2, &[(0, 1, 0.2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut coll = collection_from(&g, &[1; 10_000], &mut rng);
        let live_before = coll.iter().filter(|(_, s)| s.is_live(0, 1)).count();
        let d = g.apply_update(&WeightUpdate::new(1, 0, 1, Sign::Increase, 0.2)).unwrap();
        let stats = handle_increase(&mut coll, &g, &d, &mut rng);
        assert_eq!(stats.candidates, 10_000 - live_before);
        let rate = stats.rerouted as f64 / stats.candidates as f64;
        assert!((rate - 0.25).abs() < 0.02, "{rate}");
        let live = coll.iter().filter(|(_, s)| s.is_live(0, 1)).count();
        assert!((live as f64 / 1e4 - 0.4).abs() < 0.02);
    }

    #[test]
    fn removing_cross_edge_skips_traversal() {
        let (a, b, c) = (0, 1, 2);
        let mut g = graph(3, &[(a, c, 1.0), (b, c, 1.0), (a, b, 1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut coll = collection_from(&g, &[c], &mut rng);
        let d = g.apply_update(&WeightUpdate::new(1, a, b, Sign::Decrease, 1.0)).unwrap();
        let stats = handle_decrease(&mut coll, &g, &d, &mut rng);
        assert_eq!((stats.rerouted, stats.traversals), (1, 0));
        assert_eq!(coll.get(0).unwrap().len(), 3);
        coll.get(0).unwrap().validate(&g).unwrap();
    }

    #[test]
    fn removing_bfs_edge_of_chain_drops_upstream() {
        let (a, b, c) = (0, 1, 2);
        let mut g = graph(3, &[(a, b, 1.0), (b, c, 1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut coll = collection_from(&g, &[c], &mut rng);
        assert_eq!(coll.get(0).unwrap().len(), 3);
        let d = g.apply_update(&WeightUpdate::new(1, b, c, Sign::Decrease, 1.0)).unwrap();
        let stats = handle_decrease(&mut coll, &g, &d, &mut rng);
        assert_eq!((stats.rerouted, stats.traversals, stats.nodes_removed), (1, 1, 2));
        assert_eq!(coll.get(0).unwrap().members(), vec![c]);
        assert_eq!(coll.index().degree(a), 0);
        coll.validate_index().unwrap();
    }

    #[test]
    fn bfs_edge_removal_relabels_surviving_path() {
        // c <- a (BFS), c <- b (BFS), b <- a (CROSS); removing (a, c) keeps a via b.
        let (a, b, c) = (0, 1, 2);
        let mut g = graph(3, &[(a, c, 1.0), (b, c, 1.0), (a, b, 1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut coll = collection_from(&g, &[c], &mut rng);
        let d = g.apply_update(&WeightUpdate::new(1, a, c, Sign::Decrease, 1.0)).unwrap();
        let stats = handle_decrease(&mut coll, &g, &d, &mut rng);
        assert_eq!(stats.traversals, 1);
        let set = coll.get(0).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set.live_in_edges(b).unwrap(), &[LiveEdge { src: a, label: EdgeLabel::Bfs }]);
        set.validate(&g).unwrap();
    }
}
