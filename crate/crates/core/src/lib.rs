//! Tracking influential nodes in a graph whose edge weights change over time.
//!
//! A collection of reverse-reachable (RR) sets is kept consistent with the
//! current graph under every weight update, and an inverted index plus a
//! degree-bucket ranking turn it into influence estimates on demand.

pub mod cli;
pub mod collection;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod ranking;
pub mod report;
pub mod rr_ic;
pub mod rr_index;
pub mod rr_lt;
pub mod stream;
pub mod synth;
pub mod threshold;
pub mod topk;

pub use collection::{Collection, MaintenanceStats};
pub use error::{Error, Result};
pub use graph::{DynamicGraph, Model, NodeId, Pred, Sign, UpdateDelta};
pub use rr_index::{RRCollection, RRIndex, RrSet, SetId};
pub use report::{Mode, NodeEstimate, TrackerReport};
pub use stream::WeightUpdate;
pub use threshold::{ThresholdConfig, ThresholdTracker};
pub use topk::{TopKConfig, TopKTracker};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent ChaCha8 stream `stream` under `seed`.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
