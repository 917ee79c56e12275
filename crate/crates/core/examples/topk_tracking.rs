//! Adaptive top-k tracking. The sizing collection follows the largest
//! influence as a hub gains and then loses its out-edges.

use rivulet::{DynamicGraph, Model, Sign, TopKConfig, TopKTracker, WeightUpdate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 60;
    // node 0 points at 1..=30 with probability 0.5; node 31 at 32..=40
    let mut edges: Vec<(u32, u32, f64)> = (1..=30).map(|v| (0, v, 0.5)).collect();
    edges.extend((32..=40).map(|v| (31, v, 0.5)));
    let g = DynamicGraph::from_edges(n, Model::Ic, edges)?;

    let mut tracker = TopKTracker::new(g, TopKConfig::new(2, 0.05, 0.05), 3)?;
    let r = tracker.report()?;
    println!(
        "start: |R| = {}, xn = {:.1}, report {:?}",
        r.m,
        r.x.unwrap_or(0.0) * n as f64,
        r.nodes.iter().map(|e| (e.id, (e.est * 10.0).round() / 10.0)).collect::<Vec<_>>()
    );

    // strip most of the hub's out-edges; the collection shrinks with I_max
    for (t, v) in (1..=24).enumerate() {
        tracker.process_update(&WeightUpdate::new(t as u64 + 1, 0, v, Sign::Decrease, 0.5))?;
        if v % 8 == 0 {
            let r = tracker.report()?;
            println!(
                "t={:>2}: |R| = {:>6}, xn = {:>5.1}, theta*n = {:>5.2}, top {:?}",
                r.t,
                r.m,
                r.x.unwrap_or(0.0) * n as f64,
                r.theta.unwrap_or(0.0) * n as f64,
                r.nodes.iter().take(3).map(|e| e.id).collect::<Vec<_>>()
            );
        }
    }
    assert_eq!(tracker.sizing().len(), tracker.selection().len());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
