//! End-to-end runs of the `rivulet` binary.

use std::path::Path;
use std::process::{Command, Output};

use rivulet::report::TrackerReport;
use rivulet::{corpus, Model};

fn rivulet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rivulet"))
        .args(args)
        .env_remove("RIVULET_SEED")
        .output()
        .expect("binary runs")
}

fn write_target(dir: &Path) -> String {
    let mut rng = rivulet::rng_stream(3, 0);
    let topo = rivulet::synth::power_law_topology(120, 3.0, &mut rng);
    let g = rivulet::synth::assign_weights(120, &topo, Model::Lt, 1.0).unwrap();
    let path = dir.join("target.tsv");
    rivulet::stream::write_graph_file(&path, &g).unwrap();
    path.display().to_string()
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn generate_is_deterministic_and_validates_fractions() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_target(dir.path());
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = rivulet(&["generate", "--graph", &graph, "--model", "lt", "--seed", "1", "--out-dir", &s(out)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["base.tsv", "stream.tsv"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
    }
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "generate");
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let o = rivulet(&["generate", "--graph", &graph, "--model", "lt", "--out-dir", &s(&a), "--e2", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--e2"));
}

#[test]
fn track_emits_reports_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_target(dir.path());
    let w = dir.path().join("w");
    assert!(rivulet(&["generate", "--graph", &graph, "--model", "lt", "--seed", "2", "--out-dir", &s(&w)])
        .status
        .success());
    let base = s(&w.join("base.tsv"));
    let stream = s(&w.join("stream.tsv"));
    let common = [
        "track", "--graph", &base, "--stream", &stream, "--mode", "threshold", "--model", "lt", "--T-frac", "0.05",
        "--epsilon", "0.02", "--delta", "0.1", "--seed", "4",
    ];

    let every = s(&dir.path().join("every.jsonl"));
    let mut args = common.to_vec();
    args.extend(["--report-every", "10", "--out", &every]);
    let o = rivulet(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let reports = TrackerReport::read_jsonl(&every).unwrap();
    let updates = std::fs::read_to_string(&stream).unwrap().lines().count();
    assert_eq!(reports.len(), updates / 10 + 1);
    assert!(reports.windows(2).all(|w| w[0].t <= w[1].t));
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(format!("{every}.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["update_timing"]["updates"], updates);
    assert!(manifest["peak_rr_footprint"].as_u64().unwrap() > 0);

    // --report-every 0: only the final report, identical across runs
    let mut outs = Vec::new();
    for name in ["f1.jsonl", "f2.jsonl"] {
        let out = s(&dir.path().join(name));
        let mut args = common.to_vec();
        args.extend(["--out", &out]);
        assert!(rivulet(&args).status.success());
        outs.push(std::fs::read_to_string(&out).unwrap());
    }
    assert_eq!(outs[0].lines().count(), 1);
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0].trim(), reports.last().unwrap().to_json_line());

    // the seed override changes the sample
    let out = s(&dir.path().join("env.jsonl"));
    let mut args = common.to_vec();
    args.extend(["--out", &out]);
    let o = Command::new(env!("CARGO_BIN_EXE_rivulet")).args(&args).env("RIVULET_SEED", "77").output().unwrap();
    assert!(o.status.success());
    assert_ne!(std::fs::read_to_string(&out).unwrap(), outs[0]);
}

#[test]
fn config_and_data_errors_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_target(dir.path());
    let stream = dir.path().join("stream.tsv");
    std::fs::write(&stream, "1\t0\t1\t+\t1\n").unwrap();
    let stream = s(&stream);
    let base = ["track", "--graph", &graph, "--stream", &stream, "--model", "lt", "--epsilon", "0.02", "--delta", "0.1"];

    let mut no_k = base.to_vec();
    no_k.extend(["--mode", "topk"]);
    assert_eq!(rivulet(&no_k).status.code(), Some(2));

    let mut vacuous = base.to_vec();
    vacuous.extend(["--mode", "threshold", "--T-abs", "1.0"]);
    assert_eq!(rivulet(&vacuous).status.code(), Some(2));

    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "1\t0\t1\t+\t1\n1\t2\t3\t*\t1\n").unwrap();
    let bad = s(&bad);
    let args = [
        "track", "--graph", &graph, "--stream", &bad, "--model", "lt", "--mode", "threshold", "--T-frac", "0.05",
        "--epsilon", "0.02", "--delta", "0.1",
    ];
    let o = rivulet(&args);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));

    let missing = ["oracle", "--graph", "/nonexistent.tsv", "--model", "ic", "--method", "exact"];
    assert_eq!(rivulet(&missing).status.code(), Some(3));
}

#[test]
fn verify_and_oracle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = s(&corpus::graph_path("star", Model::Ic));
    let table = s(&dir.path().join("exact.tsv"));
    let o = rivulet(&["oracle", "--graph", &graph, "--model", "ic", "--method", "exact", "--out", &table]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(&table).unwrap(),
        std::fs::read_to_string(corpus::exact_path("star", Model::Ic)).unwrap()
    );

    let empty = dir.path().join("empty.tsv");
    std::fs::write(&empty, "").unwrap();
    let report = s(&dir.path().join("r.jsonl"));
    let o = rivulet(&[
        "track", "--graph", &graph, "--stream", &s(&empty), "--mode", "topk", "--k", "1", "--model", "ic",
        "--epsilon", "0.1", "--delta", "0.1", "--out", &report,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = rivulet(&["verify", "--report", &report, "--oracle", &table, "--compare", &report]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["recall"], 1.0);
    assert_eq!(v["jaccard"], 1.0);

    // a report that names only a leaf misses the hub
    let leaf = dir.path().join("leaf.jsonl");
    std::fs::write(
        &leaf,
        r#"{"t":0,"mode":"topk","k":1,"nodes":[{"id":3,"est":1.0}],"M":10,"epsilon":0.1,"delta":0.1}"#,
    )
    .unwrap();
    let o = rivulet(&["verify", "--report", &s(&leaf), "--oracle", &table, "--compare", &report]);
    assert_eq!(o.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["jaccard"], 0.0);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let graph = s(&corpus::graph_path("cycle", Model::Lt));
    let empty = dir.path().join("empty.tsv");
    std::fs::write(&empty, "").unwrap();
    let out = s(&dir.path().join("bench.csv"));
    let o = rivulet(&[
        "bench", "--graph", &graph, "--stream", &s(&empty), "--mode", "threshold", "--model", "lt", "--T-abs", "3",
        "--epsilon", "0.3", "--delta", "0.1", "--out", &out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("metric,value\n"));
    let value = |k: &str| -> f64 {
        csv.lines()
            .find_map(|l| l.strip_prefix(&format!("{k},")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert_eq!(value("updates"), 0.0);
    assert!(value("incremental_seconds") < 1e-3);
    assert!(value("rebuild_seconds") > 0.0);
}
