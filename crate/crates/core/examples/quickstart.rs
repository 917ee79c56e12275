//! Track influential nodes of a small random graph while edges arrive.
//!
//! Builds a 300-node IC graph, starts a threshold tracker on 85% of its
//! edges, streams the remaining updates in and prints the final report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rivulet::stream::{generate_workload, WorkloadSpec};
use rivulet::{synth, Model, ThresholdConfig, ThresholdTracker};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let topology = synth::power_law_topology(300, 4.0, &mut rng);
    let target = synth::assign_weights(300, &topology, Model::Ic, 0.0)?;
    let workload = generate_workload(&target, &WorkloadSpec::standard(Model::Ic, 7), &mut rng)?;

    // report every node whose influence is at least 3% of the graph
    let config = ThresholdConfig::new(9.0, 0.01, 0.05);
    let mut tracker = ThresholdTracker::new(workload.base, config, 7)?;
    println!("{} RR sets, {} updates to replay", tracker.sample_size(), workload.stream.len());

    for upd in &workload.stream {
        tracker.process_update(upd)?;
    }
    let report = tracker.report()?;
    println!("t={} reported {} nodes", report.t, report.nodes.len());
    for e in report.nodes.iter().take(5) {
        println!("  node {:>3}  estimated influence {:.2}", e.id, e.est);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
