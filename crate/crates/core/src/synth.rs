//! Synthetic graphs for tests, examples and benchmarks.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;
use rustc_hash::FxHashSet;

use crate::error::Result;
use crate::graph::{DynamicGraph, Model, NodeId};

/// Directed graph with skewed out-degrees: sources drawn with probability
/// proportional to `rank^-0.75`, targets uniformly, no self-loops or
/// duplicates. Node ids are shuffled so hubs are not the smallest ids.
pub fn power_law_topology<R: Rng + ?Sized>(n: usize, avg_degree: f64, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    assert!(n >= 2);
    let m = ((n as f64) * avg_degree).round() as usize;
    let m = m.min(n * (n - 1));
    let weights: Vec<f64> = (1..=n).map(|r| (r as f64).powf(-0.75)).collect();
    let sources = WeightedIndex::new(&weights).expect("positive weights");
    let mut ids: Vec<NodeId> = (0..n as NodeId).collect();
    ids.shuffle(rng);
    let mut seen = FxHashSet::default();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = ids[sources.sample(rng)];
        let v = rng.random_range(0..n as NodeId);
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    edges.sort_unstable();
    edges
}

/// Uniform random directed graph with `m` distinct edges.
pub fn uniform_topology<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    assert!(n >= 2 && m <= n * (n - 1));
    let mut seen = FxHashSet::default();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n as NodeId);
        let v = rng.random_range(0..n as NodeId);
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    edges.sort_unstable();
    edges
}

/// Weights in the style of the standard experimental setup: LT edges get
/// weight 1 (plus `lt_self_weight` on every node), IC edges get
/// `1 / in-degree(v)`.
pub fn assign_weights(n: usize, topology: &[(NodeId, NodeId)], model: Model, lt_self_weight: f64) -> Result<DynamicGraph> {
    match model {
        Model::Lt => {
            let selfs = (0..n as NodeId)
                .filter(|_| lt_self_weight > 0.0)
                .map(|v| (v, v, lt_self_weight));
            let edges = topology.iter().map(|&(u, v)| (u, v, 1.0));
            DynamicGraph::from_edges(n, model, selfs.chain(edges))
        }
        Model::Ic => {
            let mut indeg = vec![0usize; n];
            for &(_, v) in topology {
                indeg[v as usize] += 1;
            }
            let edges = topology.iter().map(|&(u, v)| (u, v, 1.0 / indeg[v as usize] as f64));
            DynamicGraph::from_edges(n, model, edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn topology_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let edges = power_law_topology(500, 4.0, &mut rng);
        assert_eq!(edges.len(), 2000);
        assert!(edges.iter().all(|&(u, v)| u != v));
        let mut out = vec![0usize; 500];
        for &(u, _) in &edges {
            out[u as usize] += 1;
        }
        let max = *out.iter().max().unwrap();
        assert!(max > 40, "expected a hub, max out-degree {max}");
    }

    #[test]
    fn ic_weights_are_inverse_in_degree() {
        let g = assign_weights(3, &[(0, 2), (1, 2), (0, 1)], Model::Ic, 0.0).unwrap();
        assert_eq!(g.weight(0, 2), 0.5);
        assert_eq!(g.weight(0, 1), 1.0);
        let g = assign_weights(3, &[(0, 2)], Model::Lt, 2.0).unwrap();
        assert_eq!(g.total_weight(2), 3.0);
        assert_eq!(uniform_topology(4, 12, &mut ChaCha8Rng::seed_from_u64(1)).len(), 12);
    }
}
