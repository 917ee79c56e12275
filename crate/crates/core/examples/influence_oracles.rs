//! Three ways to get influence: exact live-edge enumeration, forward
//! Monte-Carlo diffusion, and polling fresh RR sets.

use rivulet::{corpus, oracle, rng_stream, Model};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for model in [Model::Lt, Model::Ic] {
        let g = corpus::load_graph("triangle_chord", model)?;
        let exact = oracle::exact_influence(&g)?;
        let mc = oracle::mc_influence_all(&g, 100_000, 1);
        let poll = oracle::static_poll_estimate(&g, 100_000, &mut rng_stream(1, 0));
        println!("{model}: node  exact   mc (se)           poll (se)");
        for u in 0..g.n() as u32 {
            let i = u as usize;
            println!(
                "      {u}  {:.4}  {:.4} ({:.4})  {:.4} ({:.4})",
                exact.influence[i], mc.influence[i], mc.stderr[i], poll.influence[i], poll.stderr[i]
            );
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
