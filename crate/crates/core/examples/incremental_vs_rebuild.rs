//! Compares maintaining RR sets update by update with re-polling the whole
//! collection on the final graph.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rivulet::cli::{bench, TrackMode, TrackerArgs};
use rivulet::stream::{generate_workload, WorkloadSpec};
use rivulet::{synth, Model};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5_000;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let topology = synth::power_law_topology(n, 4.0, &mut rng);
    let target = synth::assign_weights(n, &topology, Model::Ic, 0.0)?;
    let w = generate_workload(&target, &WorkloadSpec::standard(Model::Ic, 2), &mut rng)?;

    let args = TrackerArgs {
        graph: "in-memory".into(),
        stream: "in-memory".into(),
        mode: TrackMode::Threshold,
        model: Model::Ic,
        t_frac: Some(0.004),
        t_abs: None,
        k: None,
        epsilon: 0.002,
        delta: 0.05,
        seed: 2,
        sizing_batch: 1,
        threads: 1,
    };
    let (s, _) = bench(&args, w.base, &w.stream, 2).map_err(|e| e.message)?;
    println!("{} RR sets, {} updates", s.final_sets, s.updates);
    println!("initial build      {:>9.4} s", s.build_seconds);
    println!("whole stream       {:>9.4} s", s.incremental_seconds);
    println!("mean per update    {:>9.6} s ({:.1} sets retrieved)", s.mean_update_seconds, s.mean_retrieved);
    println!("rebuild at the end {:>9.4} s", s.rebuild_seconds);
    println!("rebuild / update   {:>9.0}x", s.rebuild_seconds / s.mean_update_seconds.max(1e-12));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
