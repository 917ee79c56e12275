//! Recomputes the exact influence table of every bundled micro-graph.
//!
//! ```text
//! cargo run --example micro_corpus            # print and compare
//! cargo run --example micro_corpus -- --write # refresh the *.exact.tsv files
//! ```

use rivulet::{corpus, oracle};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let write = std::env::args().any(|a| a == "--write");
    for (name, model) in corpus::all() {
        let g = corpus::load_graph(name, model)?;
        let table = oracle::exact_influence(&g)?;
        let shown: Vec<String> = table.influence.iter().map(|x| format!("{x:.4}")).collect();
        println!("{name:>15} {model}: [{}]", shown.join(", "));
        if write {
            table.write_tsv_file(corpus::exact_path(name, model))?;
        } else {
            let bundled = corpus::load_exact(name, model)?;
            for (u, (a, b)) in table.influence.iter().zip(&bundled.influence).enumerate() {
                if (a - b).abs() > 1e-12 {
                    return Err(format!("{name} {model}: node {u} is {a}, bundled table says {b}").into());
                }
            }
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
