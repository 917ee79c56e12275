//! Turns a static graph into a base graph plus an update stream whose replay
//! lands exactly on the original graph, and writes both as TSV files.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rivulet::stream::{self, generate_workload, WorkloadSpec};
use rivulet::{synth, Model, Sign};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let topology = synth::uniform_topology(100, 500, &mut rng);
    let target = synth::assign_weights(100, &topology, Model::Ic, 0.0)?;

    for seed in 0..3 {
        let spec = WorkloadSpec::standard(Model::Ic, seed);
        let w = generate_workload(&target, &spec, &mut ChaCha8Rng::seed_from_u64(seed))?;
        let decreases = w.stream.iter().filter(|u| u.sign == Sign::Decrease).count();
        let replayed = stream::replay(&w.base, &w.stream)?;
        println!(
            "seed {seed}: base {} edges, stream {} updates ({} decreases), replay matches target: {}",
            w.base.edge_count(),
            w.stream.len(),
            decreases,
            replayed.approx_eq(&target, 1e-9)
        );
    }

    let dir = std::env::temp_dir().join("rivulet-workload-example");
    std::fs::create_dir_all(&dir)?;
    let w = generate_workload(&target, &WorkloadSpec::standard(Model::Ic, 0), &mut ChaCha8Rng::seed_from_u64(0))?;
    stream::write_graph_file(dir.join("base.tsv"), &w.base)?;
    stream::write_stream_file(dir.join("stream.tsv"), &w.stream)?;
    let back = stream::read_stream(dir.join("stream.tsv"))?;
    assert_eq!(back, w.stream);
    println!("wrote {}", dir.display());
    for upd in back.iter().take(3) {
        println!("  {}", upd.to_tsv());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
