use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;
use crate::rr_index::SetId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node {node} (graph has {n} nodes)")]
    UnknownNode { node: NodeId, n: usize },

    #[error("decrease of {delta} on ({u},{v}) would leave weight {current} - {delta} below zero")]
    NegativeResultingWeight {
        u: NodeId,
        v: NodeId,
        current: f64,
        delta: f64,
    },

    #[error("increase of {delta} on ({u},{v}) would push probability {current} above 1")]
    ProbabilityOverflow {
        u: NodeId,
        v: NodeId,
        current: f64,
        delta: f64,
    },

    #[error("self-weight update on node {0} is not defined under the IC model")]
    SelfWeightInIc(NodeId),

    #[error("update amount must be positive and finite, got {0}")]
    NonPositiveDelta(f64),

    #[error("unknown RR set id {0}")]
    UnknownSetId(SetId),

    #[error("RR set id {0} is already registered")]
    DuplicateSetId(SetId),

    #[error("RR collection is empty")]
    EmptyCollection,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("collection holds {actual} RR sets but {expected} are required")]
    SampleSizeMismatch { expected: usize, actual: usize },

    #[error("k-th fraction {fraction} is below epsilon/4 = {floor}")]
    DegenerateQuantile { fraction: f64, floor: f64 },

    #[error("{configs} live-edge configurations exceed the enumeration limit {limit}")]
    TooLargeToEnumerate { configs: f64, limit: f64 },

    #[error("workload fractions sum to {0}, expected 1")]
    FractionMismatch(f64),

    #[error("{}:{line}: {reason}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{}:{line}: timestamp {t} precedes previous timestamp {prev}", path.display())]
    TimestampRegression {
        path: PathBuf,
        line: usize,
        t: u64,
        prev: u64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
