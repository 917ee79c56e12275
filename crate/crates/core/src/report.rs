//! Tracker reports (one JSON object per line) and their verification against
//! an influence table.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::oracle::InfluenceTable;
use crate::rr_index::RRIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Threshold,
    Topk,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeEstimate {
    pub id: NodeId,
    pub est: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackerReport {
    pub t: u64,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Estimate descending, ties by ascending id.
    pub nodes: Vec<NodeEstimate>,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    pub epsilon: f64,
    pub delta: f64,
}

impl TrackerReport {
    pub fn ids(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.nodes.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Every report in a JSONL file, in order.
    pub fn read_jsonl(path: impl AsRef<Path>) -> Result<Vec<TrackerReport>> {
        let path = path.as_ref();
        let mut out = Vec::new();
        for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                reason: e.to_string(),
            })?);
        }
        Ok(out)
    }

    /// The last report in a JSONL file.
    pub fn read_last(path: impl AsRef<Path>) -> Result<TrackerReport> {
        let path = path.as_ref();
        Self::read_jsonl(path)?.pop().ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            reason: "no reports".into(),
        })
    }

    /// The bar an influential node must clear: `T` in threshold mode, the
    /// k-th largest influence of `table` in top-k mode.
    pub fn truth_bar(&self, table: &InfluenceTable) -> f64 {
        match self.mode {
            Mode::Threshold => self.threshold.expect("threshold report carries T"),
            Mode::Topk => table.kth_largest(self.k.expect("top-k report carries k")),
        }
    }

    /// Recall and false-positive error of this report against `table`.
    pub fn verify(&self, table: &InfluenceTable) -> Verdict {
        let n = table.n() as f64;
        let bar = self.truth_bar(table);
        let truth = table.nodes_at_least(bar);
        let reported = self.ids();
        let hits = truth.iter().filter(|u| reported.binary_search(u).is_ok()).count();
        let recall = if truth.is_empty() {
            1.0
        } else {
            hits as f64 / truth.len() as f64
        };
        let max_fp_error = reported
            .iter()
            .map(|&u| (bar - table.get(u)).max(0.0))
            .fold(0.0, f64::max);
        let bound = self.epsilon * n;
        Verdict {
            recall,
            max_fp_error,
            error_bound: bound,
            truth_size: truth.len(),
            reported: reported.len(),
            pass: recall >= 1.0 && max_fp_error <= bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub recall: f64,
    /// Largest `bar - I_u` over reported nodes below the bar.
    pub max_fp_error: f64,
    /// `epsilon * n`.
    pub error_bound: f64,
    pub truth_size: usize,
    pub reported: usize,
    pub pass: bool,
}

/// Jaccard similarity of the reported node sets; 1 when both are empty.
pub fn jaccard(a: &TrackerReport, b: &TrackerReport) -> f64 {
    let (a, b) = (a.ids(), b.ids());
    let inter = a.iter().filter(|u| b.binary_search(u).is_ok()).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

/// Nodes with `F_R(u) >= min_fraction` and their estimates `n * F_R(u)`,
/// in report order. A non-positive cutoff selects every node.
pub(crate) fn select_at_least(index: &RRIndex, m: usize, min_fraction: f64) -> Vec<NodeEstimate> {
    let n = index.n() as f64;
    let mf = m as f64;
    let est = |d: u32| n * d as f64 / mf;
    let mut out = Vec::new();
    for (degree, nodes) in index.ranking().buckets() {
        if (degree as f64) / mf < min_fraction {
            return out;
        }
        let start = out.len();
        out.extend(nodes.map(|id| NodeEstimate { id, est: est(degree) }));
        out[start..].sort_unstable_by_key(|e| e.id);
    }
    if min_fraction <= 0.0 {
        out.extend(
            (0..index.n() as NodeId)
                .filter(|&u| index.degree(u) == 0)
                .map(|id| NodeEstimate { id, est: 0.0 }),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Method;

    fn report(mode: Mode, ids: &[NodeId]) -> TrackerReport {
        TrackerReport {
            t: 3,
            mode,
            k: (mode == Mode::Topk).then_some(2),
            nodes: ids.iter().map(|&id| NodeEstimate { id, est: 1.0 }).collect(),
            m: 10,
            threshold: (mode == Mode::Threshold).then_some(2.0),
            x: None,
            theta: None,
            epsilon: 0.1,
            delta: 0.1,
        }
    }

    #[test]
    fn json_field_order() {
        let r = report(Mode::Threshold, &[1]);
        assert_eq!(
            r.to_json_line(),
            r#"{"t":3,"mode":"threshold","nodes":[{"id":1,"est":1.0}],"M":10,"T":2.0,"epsilon":0.1,"delta":0.1}"#
        );
        let back: TrackerReport = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn jaccard_extremes() {
        let a = report(Mode::Topk, &[1, 2]);
        assert_eq!(jaccard(&a, &a), 1.0);
        assert_eq!(jaccard(&a, &report(Mode::Topk, &[3])), 0.0);
        assert_eq!(jaccard(&a, &report(Mode::Topk, &[2, 3])), 1.0 / 3.0);
    }

    #[test]
    fn verdict_counts_misses_and_false_positives() {
        let table = InfluenceTable {
            method: Method::Exact,
            influence: vec![3.0, 2.5, 1.2, 1.0, 1.9, 1.0, 1.0, 1.0, 1.0, 1.0],
            stderr: vec![0.0; 10],
        };
        let v = report(Mode::Threshold, &[0, 4]).verify(&table);
        assert_eq!(v.recall, 0.5);
        assert!((v.max_fp_error - 0.1).abs() < 1e-12);
        assert!(!v.pass);
        let v = report(Mode::Threshold, &[0, 1, 2]).verify(&table);
        assert_eq!(v.recall, 1.0);
        assert!((v.max_fp_error - 0.8).abs() < 1e-12);
        assert!(v.pass);
        let v = report(Mode::Topk, &[1, 0]).verify(&table);
        assert!(v.pass && v.max_fp_error == 0.0);
    }
}
