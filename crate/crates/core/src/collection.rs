//! Model-dispatching wrapper over LT and IC RR collections.

use std::ops::AddAssign;

use rand::Rng;
use serde::Serialize;

use crate::graph::{DynamicGraph, Model, Sign, UpdateDelta};
use crate::rr_ic::{self, IcSet};
use crate::rr_index::{RRCollection, RRIndex, SetId};
use crate::rr_lt::{self, LtSet};

/// Work done by one maintenance pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MaintenanceStats {
    /// Sets pulled from the inverted index.
    pub retrieved: usize,
    /// Retrieved sets eligible for a change (the coin was flipped).
    pub candidates: usize,
    /// Sets actually modified.
    pub rerouted: usize,
    /// IC full re-traversals after a BFS-edge removal.
    pub traversals: usize,
    pub nodes_added: usize,
    pub nodes_removed: usize,
}

impl MaintenanceStats {
    pub(crate) fn record(&mut self, removed: &[u32], added: &[u32]) {
        self.rerouted += 1;
        self.nodes_removed += removed.len();
        self.nodes_added += added.len();
    }
}

impl AddAssign for MaintenanceStats {
    fn add_assign(&mut self, o: Self) {
        self.retrieved += o.retrieved;
        self.candidates += o.candidates;
        self.rerouted += o.rerouted;
        self.traversals += o.traversals;
        self.nodes_added += o.nodes_added;
        self.nodes_removed += o.nodes_removed;
    }
}

#[derive(Clone, Debug)]
pub enum Collection {
    Lt(RRCollection<LtSet>),
    Ic(RRCollection<IcSet>),
}

macro_rules! each {
    ($self:expr, $c:ident => $body:expr) => {
        match $self {
            Collection::Lt($c) => $body,
            Collection::Ic($c) => $body,
        }
    };
}

impl Collection {
    pub fn new(model: Model, n: usize) -> Self {
        match model {
            Model::Lt => Collection::Lt(RRCollection::new(n)),
            Model::Ic => Collection::Ic(RRCollection::new(n)),
        }
    }

    pub fn model(&self) -> Model {
        match self {
            Collection::Lt(_) => Model::Lt,
            Collection::Ic(_) => Model::Ic,
        }
    }

    pub fn len(&self) -> usize {
        each!(self, c => c.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self) -> &RRIndex {
        each!(self, c => c.index())
    }

    pub fn footprint(&self) -> usize {
        each!(self, c => c.footprint())
    }

    /// Polls one fresh RR set on `g` and appends it.
    pub fn add_fresh<R: Rng + ?Sized>(&mut self, g: &DynamicGraph, rng: &mut R) -> SetId {
        match self {
            Collection::Lt(c) => c.push(LtSet::generate(g, rng)),
            Collection::Ic(c) => c.push(IcSet::generate(g, rng)),
        }
    }

    pub fn fill_to<R: Rng + ?Sized>(&mut self, g: &DynamicGraph, target: usize, rng: &mut R) {
        while self.len() < target {
            self.add_fresh(g, rng);
        }
    }

    /// Drops the highest-id set; returns whether one existed.
    pub fn drop_last(&mut self) -> bool {
        each!(self, c => c.pop_last().is_some())
    }

    pub fn truncate_to(&mut self, target: usize) {
        while self.len() > target {
            self.drop_last();
        }
    }

    /// Members of the highest-id set.
    pub fn last_members(&self) -> Option<Vec<u32>> {
        use crate::rr_index::RrSet;
        each!(self, c => c.last_id().map(|id| c.get(id).expect("last set").members()))
    }

    /// Repairs every affected set after `d` has been applied to `g`.
    pub fn apply<R: Rng + ?Sized>(&mut self, g: &DynamicGraph, d: &UpdateDelta, rng: &mut R) -> MaintenanceStats {
        match (self, d.sign) {
            (Collection::Lt(c), Sign::Increase) => rr_lt::handle_increase(c, g, d, rng),
            (Collection::Lt(c), Sign::Decrease) => rr_lt::handle_decrease(c, g, d, rng),
            (Collection::Ic(c), Sign::Increase) => rr_ic::handle_increase(c, g, d, rng),
            (Collection::Ic(c), Sign::Decrease) => rr_ic::handle_decrease(c, g, d, rng),
        }
    }

    /// Full audit: every set's own invariants against `g` plus index rebuild.
    pub fn validate(&self, g: &DynamicGraph) -> Result<(), String> {
        match self {
            Collection::Lt(c) => {
                for (id, s) in c.iter() {
                    s.validate(g).map_err(|e| format!("LT set {id}: {e}"))?;
                }
                c.validate_index()
            }
            Collection::Ic(c) => {
                for (id, s) in c.iter() {
                    s.validate(g).map_err(|e| format!("IC set {id}: {e}"))?;
                }
                c.validate_index()
            }
        }
    }
}
