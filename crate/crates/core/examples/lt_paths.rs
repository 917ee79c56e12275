//! LT RR sets are reverse paths. Shows how a path is rerouted when the
//! weight of one of its edges moves, and that a maintained collection keeps
//! the same marginals as freshly polled paths.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rivulet::rr_lt::{self, LtSet};
use rivulet::{DynamicGraph, Model, Pred, RRCollection, Sign, WeightUpdate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // 3 -> 2 -> 1 -> 0 with self-weights, plus a shortcut 3 -> 0
    let mut g = DynamicGraph::from_edges(
        4,
        Model::Lt,
        [(1, 0, 2.0), (2, 1, 1.0), (3, 2, 1.0), (3, 0, 0.5), (0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0)],
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut coll = RRCollection::new(4);
    for _ in 0..20_000 {
        coll.push(LtSet::generate_from(&g, 0, &mut rng));
    }
    let show = |coll: &RRCollection<LtSet>, label: &str| {
        let via = |u| coll.iter().filter(|(_, s)| s.predecessor_of(0) == Some(Pred::Node(u))).count();
        println!(
            "{label:<22} 0 picks 1: {:.3}  0 picks 3: {:.3}  contains 3: {:.3}",
            via(1) as f64 / coll.len() as f64,
            via(3) as f64 / coll.len() as f64,
            coll.index().degree(3) as f64 / coll.len() as f64,
        );
    };
    show(&coll, "initial");
    if let Some((_, s)) = coll.iter().next() {
        println!("first path {:?}, last node picked {:?}", s.path(), s.prev_of_last());
    }

    // raise the shortcut from 0.5 to 2.0: p(3 -> 0) goes from 0.5/3.5 to 2/5
    let d = g.apply_update(&WeightUpdate::new(1, 3, 0, Sign::Increase, 1.5))?;
    let stats = rr_lt::handle_increase(&mut coll, &g, &d, &mut rng);
    println!("increase rerouted {} of {} candidate paths", stats.rerouted, stats.candidates);
    show(&coll, "after increase");

    let mut fresh = RRCollection::new(4);
    for _ in 0..20_000 {
        fresh.push(LtSet::generate_from(&g, 0, &mut rng));
    }
    show(&fresh, "fresh on new graph");

    // remove 1 -> 0 entirely; every path through it must reroute
    let d = g.apply_update(&WeightUpdate::new(2, 1, 0, Sign::Decrease, 2.0))?;
    let stats = rr_lt::handle_decrease(&mut coll, &g, &d, &mut rng);
    println!("deletion rerouted {} paths", stats.rerouted);
    show(&coll, "after deletion");
    for (_, s) in coll.iter() {
        s.validate(&g)?;
        assert_ne!(s.predecessor_of(0), Some(Pred::Node(1)));
    }
    coll.validate_index()?;
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
