//! The degree-bucket list ranks nodes by how many RR sets contain them and
//! moves a node between neighbouring buckets in constant time.

use rivulet::ranking::DegreeBucketList;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut list = DegreeBucketList::new(6);
    for (u, times) in [(0, 3), (1, 1), (2, 3), (3, 2), (4, 1)] {
        for _ in 0..times {
            list.increment(u);
        }
    }
    print!("{}", list.dump_jsonl());
    println!("top 3: {:?}", list.top(3));
    println!("3rd largest degree: {}", list.kth_degree(3));

    let before = list.mutation_count();
    list.increment(3);
    println!("moving node 3 up took {} pointer writes", list.mutation_count() - before);
    list.decrement(1);
    print!("{}", list.dump_jsonl());
    list.validate()?;
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
