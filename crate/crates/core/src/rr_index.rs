//! RR set collection: insertion-ordered sets, inverted index and degree ranking.

use indexmap::IndexMap;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::ranking::DegreeBucketList;

pub type SetId = u64;

/// Inverted index `node -> ids of RR sets containing it`, kept in lock step
/// with the degree ranking.
#[derive(Clone, Debug)]
pub struct RRIndex {
    inverted: Vec<FxHashSet<SetId>>,
    registered: FxHashSet<SetId>,
    ranking: DegreeBucketList,
    memberships: usize,
}

impl RRIndex {
    pub fn new(n: usize) -> Self {
        RRIndex {
            inverted: vec![FxHashSet::default(); n],
            registered: FxHashSet::default(),
            ranking: DegreeBucketList::new(n),
            memberships: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.inverted.len()
    }

    pub fn set_count(&self) -> usize {
        self.registered.len()
    }

    /// Σ D(u), which equals the summed size of all registered sets.
    pub fn memberships(&self) -> usize {
        self.memberships
    }

    pub fn register(&mut self, set_id: SetId, members: &[NodeId]) -> Result<()> {
        if !self.registered.insert(set_id) {
            return Err(Error::DuplicateSetId(set_id));
        }
        for &u in members {
            self.add(set_id, u);
        }
        Ok(())
    }

    pub fn unregister(&mut self, set_id: SetId, members: &[NodeId]) -> Result<()> {
        if !self.registered.remove(&set_id) {
            return Err(Error::UnknownSetId(set_id));
        }
        for &u in members {
            self.remove(set_id, u);
        }
        Ok(())
    }

    pub fn diff_membership(&mut self, set_id: SetId, removed: &[NodeId], added: &[NodeId]) -> Result<()> {
        if !self.registered.contains(&set_id) {
            return Err(Error::UnknownSetId(set_id));
        }
        for &u in removed {
            self.remove(set_id, u);
        }
        for &u in added {
            self.add(set_id, u);
        }
        Ok(())
    }

    fn add(&mut self, set_id: SetId, u: NodeId) {
        let fresh = self.inverted[u as usize].insert(set_id);
        debug_assert!(fresh, "node {u} already indexed for set {set_id}");
        self.ranking.increment(u);
        self.memberships += 1;
    }

    fn remove(&mut self, set_id: SetId, u: NodeId) {
        let present = self.inverted[u as usize].remove(&set_id);
        debug_assert!(present, "node {u} not indexed for set {set_id}");
        self.ranking.decrement(u);
        self.memberships -= 1;
    }

    /// Ids of the sets containing `u`, in arbitrary order.
    pub fn sets_containing(&self, u: NodeId) -> impl ExactSizeIterator<Item = SetId> + '_ {
        self.inverted[u as usize].iter().copied()
    }

    pub fn contains(&self, u: NodeId, set_id: SetId) -> bool {
        self.inverted[u as usize].contains(&set_id)
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> u32 {
        self.ranking.degree(u)
    }

    pub fn ranking(&self) -> &DegreeBucketList {
        &self.ranking
    }

    fn require_nonempty(&self) -> Result<f64> {
        match self.registered.len() {
            0 => Err(Error::EmptyCollection),
            m => Ok(m as f64),
        }
    }

    /// `F_R(u) = D(u) / M`.
    pub fn fraction(&self, u: NodeId) -> Result<f64> {
        Ok(self.degree(u) as f64 / self.require_nonempty()?)
    }

    /// The `k` highest `F_R` nodes, ties by ascending id.
    pub fn top_fraction(&self, k: usize) -> Result<Vec<(NodeId, f64)>> {
        let m = self.require_nonempty()?;
        Ok(self
            .ranking
            .top(k)
            .into_iter()
            .map(|(u, d)| (u, d as f64 / m))
            .collect())
    }

    /// `F_R*`, the largest fraction.
    pub fn max_fraction(&self) -> Result<f64> {
        Ok(self.ranking.max_degree() as f64 / self.require_nonempty()?)
    }

    /// `F_R^k`, the k-th largest fraction (1-based).
    pub fn kth_fraction(&self, k: usize) -> Result<f64> {
        Ok(self.ranking.kth_degree(k) as f64 / self.require_nonempty()?)
    }
}

/// Operations every RR set flavour exposes to the collection.
pub trait RrSet {
    fn members(&self) -> Vec<NodeId>;
    fn len(&self) -> usize;
    fn contains(&self, u: NodeId) -> bool;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Ordered multiset of RR sets with ids increasing in insertion order.
#[derive(Clone, Debug)]
pub struct RRCollection<S> {
    pub(crate) sets: IndexMap<SetId, S>,
    pub(crate) index: RRIndex,
    next_id: SetId,
}

impl<S: RrSet> RRCollection<S> {
    pub fn new(n: usize) -> Self {
        RRCollection {
            sets: IndexMap::new(),
            index: RRIndex::new(n),
            next_id: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.index.n()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index(&self) -> &RRIndex {
        &self.index
    }

    pub fn get(&self, id: SetId) -> Option<&S> {
        self.sets.get(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (SetId, &S)> + '_ {
        self.sets.iter().map(|(&id, s)| (id, s))
    }

    pub fn push(&mut self, set: S) -> SetId {
        let id = self.next_id;
        self.next_id += 1;
        self.index
            .register(id, &set.members())
            .expect("fresh set ids are unique");
        self.sets.insert(id, set);
        id
    }

    /// Re-inserts a set under the id it had, which must exceed every id
    /// currently present (used to undo [`RRCollection::pop_last`]).
    pub fn restore(&mut self, id: SetId, set: S) -> Result<()> {
        if self.sets.contains_key(&id) {
            return Err(Error::DuplicateSetId(id));
        }
        if self.last_id().is_some_and(|last| last > id) {
            return Err(Error::InvalidConfig(format!(
                "restored set id {id} would break insertion order"
            )));
        }
        self.index.register(id, &set.members())?;
        self.sets.insert(id, set);
        self.next_id = self.next_id.max(id + 1);
        Ok(())
    }

    pub fn last_id(&self) -> Option<SetId> {
        self.sets.last().map(|(&id, _)| id)
    }

    /// Removes the set with the highest id.
    pub fn pop_last(&mut self) -> Option<(SetId, S)> {
        let (id, set) = self.sets.pop()?;
        self.index
            .unregister(id, &set.members())
            .expect("present sets are registered");
        Some((id, set))
    }

    pub fn unregister(&mut self, id: SetId) -> Result<S> {
        let set = self.sets.shift_remove(&id).ok_or(Error::UnknownSetId(id))?;
        self.index.unregister(id, &set.members())?;
        Ok(set)
    }

    /// Σ |RR set| + n, the structural space estimate.
    pub fn footprint(&self) -> usize {
        self.index.memberships + self.n()
    }

    /// Rebuilds the inverted index and ranking from the stored sets and
    /// compares them with the maintained ones.
    pub fn validate_index(&self) -> std::result::Result<(), String> {
        let mut fresh = RRIndex::new(self.n());
        for (&id, set) in &self.sets {
            let members = set.members();
            let distinct: FxHashSet<NodeId> = members.iter().copied().collect();
            if distinct.len() != members.len() {
                return Err(format!("set {id} lists a member twice"));
            }
            if members.iter().any(|&u| !set.contains(u)) {
                return Err(format!("set {id} membership lookup disagrees with its member list"));
            }
            fresh.register(id, &members).map_err(|e| e.to_string())?;
        }
        if fresh.memberships != self.index.memberships {
            return Err("membership count differs".into());
        }
        if fresh.registered != self.index.registered {
            return Err("registered set ids differ".into());
        }
        for u in 0..self.n() {
            if fresh.inverted[u] != self.index.inverted[u] {
                return Err(format!("inverted index entry for node {u} differs"));
            }
        }
        self.index.ranking.validate()?;
        if fresh.ranking.dump() != self.index.ranking.dump() {
            return Err("ranking differs from rebuilt ranking".into());
        }
        Ok(())
    }
}
