//! Threshold tracking on a generated workload, checked against Monte-Carlo
//! ground truth on the final snapshot.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rivulet::stream::{generate_workload, WorkloadSpec};
use rivulet::{oracle, synth, Model, ThresholdConfig, ThresholdTracker};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 400;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let topology = synth::power_law_topology(n, 3.0, &mut rng);
    let target = synth::assign_weights(n, &topology, Model::Lt, 1.0)?;
    let workload = generate_workload(&target, &WorkloadSpec::standard(Model::Lt, 11), &mut rng)?;

    let config = ThresholdConfig::new(6.0, 0.005, 0.05);
    let mut tracker = ThresholdTracker::new(workload.base, config, 11)?;
    let mut reports = 0;
    for (i, upd) in workload.stream.iter().enumerate() {
        tracker.process_update(upd)?;
        if (i + 1) % 100 == 0 {
            let r = tracker.report()?;
            println!("t={:>4}: {} nodes above {:.1}", r.t, r.nodes.len(), config.threshold - config.epsilon * n as f64 / 2.0);
            reports += 1;
        }
    }
    assert!(reports > 0);
    let report = tracker.report()?;

    // the tracker's graph is now the target graph
    let table = oracle::mc_influence_all(tracker.graph(), 20_000, 5);
    let verdict = report.verify(&table);
    println!(
        "final: {} reported, {} truly >= T, recall {:.3}, worst false positive {:.3} (bound {:.1})",
        verdict.reported, verdict.truth_size, verdict.recall, verdict.max_fp_error, verdict.error_bound
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
