//! IC RR sets are reverse-reachable components whose live edges are labelled
//! BFS (discovered a node) or cross. Removing a cross edge never changes
//! membership; removing a BFS edge forces a re-traversal.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rivulet::rr_ic::{self, EdgeLabel, IcSet};
use rivulet::{DynamicGraph, Model, RRCollection, RrSet, Sign, WeightUpdate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // triangle into node 0: 1 -> 0, 2 -> 0, 2 -> 1, all certain
    let mut g = DynamicGraph::from_edges(3, Model::Ic, [(1, 0, 1.0), (2, 0, 1.0), (2, 1, 1.0)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut coll = RRCollection::new(3);
    coll.push(IcSet::generate_from(&g, 0, &mut rng));
    let describe = |coll: &RRCollection<IcSet>| {
        let (_, s) = coll.iter().next().expect("one set");
        let mut labels = Vec::new();
        for v in s.members() {
            for e in s.live_in_edges(v).unwrap_or(&[]) {
                labels.push(format!("{}->{} {:?}", e.src, v, e.label));
            }
        }
        labels.sort();
        println!("members {:?}, live edges [{}]", s.members(), labels.join(", "));
    };
    describe(&coll);

    let (_, s) = coll.iter().next().expect("one set");
    let cross = s
        .members()
        .into_iter()
        .flat_map(|v| s.live_in_edges(v).unwrap_or(&[]).iter().map(move |e| (e.src, v, e.label)))
        .find(|e| e.2 == EdgeLabel::Cross)
        .expect("the triangle has one cross edge");
    let d = g.apply_update(&WeightUpdate::new(1, cross.0, cross.1, Sign::Decrease, 1.0))?;
    let stats = rr_ic::handle_decrease(&mut coll, &g, &d, &mut rng);
    println!("removed cross edge {}->{}: {} traversals", cross.0, cross.1, stats.traversals);
    describe(&coll);

    let d = g.apply_update(&WeightUpdate::new(2, 1, 0, Sign::Decrease, 1.0))?;
    let stats = rr_ic::handle_decrease(&mut coll, &g, &d, &mut rng);
    println!("removed 1->0: {} traversals, {} nodes dropped", stats.traversals, stats.nodes_removed);
    describe(&coll);
    for (_, s) in coll.iter() {
        s.validate(&g)?;
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
