//! Every example must run to completion.

#[allow(dead_code)]
#[path = "../examples/quickstart.rs"]
mod quickstart;

#[test]
fn quickstart_runs() {
    quickstart::run_example().expect("quickstart example should run");
}

#[allow(dead_code)]
#[path = "../examples/lt_paths.rs"]
mod lt_paths;

#[test]
fn lt_paths_runs() {
    lt_paths::run_example().expect("lt_paths example should run");
}

#[allow(dead_code)]
#[path = "../examples/ic_components.rs"]
mod ic_components;

#[test]
fn ic_components_runs() {
    ic_components::run_example().expect("ic_components example should run");
}

#[allow(dead_code)]
#[path = "../examples/degree_ranking.rs"]
mod degree_ranking;

#[test]
fn degree_ranking_runs() {
    degree_ranking::run_example().expect("degree_ranking example should run");
}

#[allow(dead_code)]
#[path = "../examples/threshold_tracking.rs"]
mod threshold_tracking;

#[test]
fn threshold_tracking_runs() {
    threshold_tracking::run_example().expect("threshold_tracking example should run");
}

#[allow(dead_code)]
#[path = "../examples/topk_tracking.rs"]
mod topk_tracking;

#[test]
fn topk_tracking_runs() {
    topk_tracking::run_example().expect("topk_tracking example should run");
}

#[allow(dead_code)]
#[path = "../examples/influence_oracles.rs"]
mod influence_oracles;

#[test]
fn influence_oracles_runs() {
    influence_oracles::run_example().expect("influence_oracles example should run");
}

#[allow(dead_code)]
#[path = "../examples/workload_generation.rs"]
mod workload_generation;

#[test]
fn workload_generation_runs() {
    workload_generation::run_example().expect("workload_generation example should run");
}

#[allow(dead_code)]
#[path = "../examples/incremental_vs_rebuild.rs"]
mod incremental_vs_rebuild;

#[test]
fn incremental_vs_rebuild_runs() {
    incremental_vs_rebuild::run_example().expect("incremental_vs_rebuild example should run");
}

#[allow(dead_code)]
#[path = "../examples/micro_corpus.rs"]
mod micro_corpus;

#[test]
fn micro_corpus_runs() {
    micro_corpus::run_example().expect("micro_corpus example should run");
}
