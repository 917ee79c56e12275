//! Degree-bucket doubly linked list.
//!
//! Nodes with the same RR-degree share a bucket; buckets are chained from the
//! highest degree down. A unit degree change moves a node to the neighbouring
//! bucket (creating it if absent) and drops its old bucket when it empties, so
//! every relocation is a constant number of pointer writes. Degree-0 nodes
//! live in an implicit tail outside the list.

use serde::Serialize;

use crate::graph::NodeId;

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Bucket {
    degree: u32,
    len: u32,
    first: u32,
    /// Neighbour bucket with a larger degree.
    higher: u32,
    /// Neighbour bucket with a smaller degree.
    lower: u32,
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    prev: u32,
    next: u32,
    bucket: u32,
}

const DETACHED: Cell = Cell {
    prev: NIL,
    next: NIL,
    bucket: NIL,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BucketDump {
    pub degree: u32,
    pub nodes: Vec<NodeId>,
}

#[derive(Clone, Debug)]
pub struct DegreeBucketList {
    degree: Vec<u32>,
    cells: Vec<Cell>,
    buckets: Vec<Bucket>,
    free: Vec<u32>,
    head: u32,
    tail: u32,
    live_buckets: usize,
    mutations: u64,
}

impl DegreeBucketList {
    pub fn new(n: usize) -> Self {
        DegreeBucketList {
            degree: vec![0; n],
            cells: vec![DETACHED; n],
            buckets: Vec::new(),
            free: Vec::new(),
            head: NIL,
            tail: NIL,
            live_buckets: 0,
            mutations: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.degree.len()
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> u32 {
        self.degree[u as usize]
    }

    /// Largest degree, 0 when every node has degree 0.
    #[inline]
    pub fn max_degree(&self) -> u32 {
        if self.head == NIL {
            0
        } else {
            self.buckets[self.head as usize].degree
        }
    }

    /// How many nodes share the largest degree (0 when all degrees are 0).
    pub fn max_degree_count(&self) -> usize {
        if self.head == NIL {
            0
        } else {
            self.buckets[self.head as usize].len as usize
        }
    }

    /// Number of head nodes, i.e. distinct nonzero degrees.
    pub fn bucket_count(&self) -> usize {
        self.live_buckets
    }

    /// Total structural writes performed so far (cell and bucket links).
    pub fn mutation_count(&self) -> u64 {
        self.mutations
    }

    pub fn increment(&mut self, u: NodeId) {
        let ui = u as usize;
        let d = self.degree[ui];
        let cur = self.cells[ui].bucket;
        let target = if cur == NIL {
            if self.tail != NIL && self.buckets[self.tail as usize].degree == 1 {
                self.tail
            } else {
                self.new_bucket(1, self.tail, NIL)
            }
        } else {
            let up = self.buckets[cur as usize].higher;
            if up != NIL && self.buckets[up as usize].degree == d + 1 {
                up
            } else {
                self.new_bucket(d + 1, up, cur)
            }
        };
        if cur != NIL {
            self.unlink(u);
        }
        self.link(u, target);
        self.degree[ui] = d + 1;
    }

    /// Decrements the degree of `u`. Panics when it is already 0.
    pub fn decrement(&mut self, u: NodeId) {
        let ui = u as usize;
        let d = self.degree[ui];
        assert!(d > 0, "decrement of node {u} with degree 0");
        let cur = self.cells[ui].bucket;
        if d == 1 {
            self.unlink(u);
        } else {
            let down = self.buckets[cur as usize].lower;
            let target = if down != NIL && self.buckets[down as usize].degree == d - 1 {
                down
            } else {
                self.new_bucket(d - 1, cur, down)
            };
            self.unlink(u);
            self.link(u, target);
        }
        self.degree[ui] = d - 1;
    }

    fn new_bucket(&mut self, degree: u32, higher: u32, lower: u32) -> u32 {
        let bucket = Bucket {
            degree,
            len: 0,
            first: NIL,
            higher,
            lower,
        };
        let id = match self.free.pop() {
            Some(id) => {
                self.buckets[id as usize] = bucket;
                id
            }
            None => {
                self.buckets.push(bucket);
                (self.buckets.len() - 1) as u32
            }
        };
        if higher == NIL {
            self.head = id;
        } else {
            self.buckets[higher as usize].lower = id;
        }
        if lower == NIL {
            self.tail = id;
        } else {
            self.buckets[lower as usize].higher = id;
        }
        self.live_buckets += 1;
        self.mutations += 3;
        id
    }

    fn drop_bucket(&mut self, id: u32) {
        let Bucket { higher, lower, .. } = self.buckets[id as usize];
        if higher == NIL {
            self.head = lower;
        } else {
            self.buckets[higher as usize].lower = lower;
        }
        if lower == NIL {
            self.tail = higher;
        } else {
            self.buckets[lower as usize].higher = higher;
        }
        self.free.push(id);
        self.live_buckets -= 1;
        self.mutations += 3;
    }

    fn link(&mut self, u: NodeId, bucket: u32) {
        let b = &mut self.buckets[bucket as usize];
        let old_first = b.first;
        b.first = u;
        b.len += 1;
        if old_first != NIL {
            self.cells[old_first as usize].prev = u;
        }
        self.cells[u as usize] = Cell {
            prev: NIL,
            next: old_first,
            bucket,
        };
        self.mutations += 3;
    }

    fn unlink(&mut self, u: NodeId) {
        let Cell { prev, next, bucket } = self.cells[u as usize];
        if prev == NIL {
            self.buckets[bucket as usize].first = next;
        } else {
            self.cells[prev as usize].next = next;
        }
        if next != NIL {
            self.cells[next as usize].prev = prev;
        }
        self.cells[u as usize] = DETACHED;
        let b = &mut self.buckets[bucket as usize];
        b.len -= 1;
        self.mutations += 3;
        if b.len == 0 {
            self.drop_bucket(bucket);
        }
    }

    /// Buckets from the highest degree down as `(degree, nodes in list order)`.
    pub fn buckets(&self) -> impl Iterator<Item = (u32, BucketNodes<'_>)> + '_ {
        let mut id = self.head;
        std::iter::from_fn(move || {
            if id == NIL {
                return None;
            }
            let b = &self.buckets[id as usize];
            id = b.lower;
            Some((
                b.degree,
                BucketNodes {
                    cells: &self.cells,
                    at: b.first,
                },
            ))
        })
    }

    /// The `k` highest-degree nodes, ties broken by ascending id; degree-0
    /// nodes fill in (ascending id) when fewer than `k` nodes have positive
    /// degree.
    pub fn top(&self, k: usize) -> Vec<(NodeId, u32)> {
        let k = k.min(self.n());
        let mut out = Vec::with_capacity(k);
        for (degree, nodes) in self.buckets() {
            if out.len() >= k {
                return out;
            }
            let mut ids: Vec<NodeId> = nodes.collect();
            ids.sort_unstable();
            let take = (k - out.len()).min(ids.len());
            out.extend(ids[..take].iter().map(|&u| (u, degree)));
        }
        if out.len() < k {
            let missing = k - out.len();
            out.extend(
                (0..self.n() as NodeId)
                    .filter(|&u| self.degree[u as usize] == 0)
                    .take(missing)
                    .map(|u| (u, 0)),
            );
        }
        out
    }

    /// Degree of the k-th ranked node (1-based), 0 past the nonzero nodes.
    pub fn kth_degree(&self, k: usize) -> u32 {
        assert!(k >= 1, "k is 1-based");
        let mut seen = 0usize;
        let mut id = self.head;
        while id != NIL {
            let b = &self.buckets[id as usize];
            seen += b.len as usize;
            if seen >= k {
                return b.degree;
            }
            id = b.lower;
        }
        0
    }

    /// All nodes with degree at least `min_degree` (which must be >= 1), in
    /// rank order.
    pub fn at_least(&self, min_degree: u32) -> Vec<(NodeId, u32)> {
        let mut out = Vec::new();
        for (degree, nodes) in self.buckets() {
            if degree < min_degree {
                break;
            }
            let start = out.len();
            out.extend(nodes.map(|u| (u, degree)));
            out[start..].sort_unstable_by_key(|e| e.0);
        }
        out
    }

    /// One entry per bucket, nodes sorted by id.
    pub fn dump(&self) -> Vec<BucketDump> {
        self.buckets()
            .map(|(degree, nodes)| {
                let mut nodes: Vec<NodeId> = nodes.collect();
                nodes.sort_unstable();
                BucketDump { degree, nodes }
            })
            .collect()
    }

    /// The dump as JSON lines, one bucket per line.
    pub fn dump_jsonl(&self) -> String {
        let mut out = String::new();
        for b in self.dump() {
            out.push_str(&serde_json::to_string(&b).expect("bucket dump serializes"));
            out.push('\n');
        }
        out
    }

    /// Full structural audit against the recorded degrees.
    pub fn validate(&self) -> Result<(), String> {
        let mut seen = vec![false; self.n()];
        let mut count = 0usize;
        let mut prev_degree = u32::MAX;
        let mut prev_bucket = NIL;
        let mut id = self.head;
        while id != NIL {
            let b = &self.buckets[id as usize];
            if b.higher != prev_bucket {
                return Err(format!("bucket {id} has broken back link"));
            }
            if b.degree >= prev_degree || b.degree == 0 {
                return Err(format!("bucket degrees not strictly decreasing at {}", b.degree));
            }
            if b.len == 0 || b.first == NIL {
                return Err(format!("empty bucket for degree {}", b.degree));
            }
            let mut len = 0;
            let mut prev = NIL;
            let mut at = b.first;
            while at != NIL {
                let c = self.cells[at as usize];
                if c.bucket != id || c.prev != prev {
                    return Err(format!("node {at} has inconsistent cell links"));
                }
                if self.degree[at as usize] != b.degree {
                    return Err(format!(
                        "node {at} with degree {} sits in bucket {}",
                        self.degree[at as usize], b.degree
                    ));
                }
                if std::mem::replace(&mut seen[at as usize], true) {
                    return Err(format!("node {at} appears twice"));
                }
                len += 1;
                prev = at;
                at = c.next;
            }
            if len != b.len {
                return Err(format!("bucket {} records len {} but holds {len}", b.degree, b.len));
            }
            count += 1;
            prev_degree = b.degree;
            prev_bucket = id;
            id = b.lower;
        }
        if prev_bucket != self.tail {
            return Err("tail pointer is stale".into());
        }
        if count != self.live_buckets {
            return Err("bucket count mismatch".into());
        }
        for (u, &d) in self.degree.iter().enumerate() {
            if d > 0 && !seen[u] {
                return Err(format!("node {u} with degree {d} missing from the list"));
            }
            if d == 0 && self.cells[u].bucket != NIL {
                return Err(format!("degree-0 node {u} still linked"));
            }
        }
        Ok(())
    }
}

pub struct BucketNodes<'a> {
    cells: &'a [Cell],
    at: u32,
}

impl Iterator for BucketNodes<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        if self.at == NIL {
            return None;
        }
        let u = self.at;
        self.at = self.cells[u as usize].next;
        Some(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_degrees(degrees: &[u32]) -> DegreeBucketList {
        let mut list = DegreeBucketList::new(degrees.len());
        for (u, &d) in degrees.iter().enumerate() {
            for _ in 0..d {
                list.increment(u as NodeId);
            }
        }
        list
    }

    #[test]
    fn merge_into_existing_bucket() {
        let mut list = from_degrees(&[3, 3, 1]);
        list.increment(2);
        list.increment(2);
        list.validate().unwrap();
        assert_eq!(list.bucket_count(), 1);
        assert_eq!(list.top(3), vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(list.dump(), vec![BucketDump { degree: 3, nodes: vec![0, 1, 2] }]);
    }

    #[test]
    fn top_pads_with_zero_degree_nodes_by_id() {
        let list = from_degrees(&[0, 2, 0, 0]);
        assert_eq!(list.top(3), vec![(1, 2), (0, 0), (2, 0)]);
        let empty = DegreeBucketList::new(3);
        assert_eq!(empty.top(2), vec![(0, 0), (1, 0)]);
        assert_eq!(empty.max_degree(), 0);
        assert_eq!(empty.kth_degree(1), 0);
    }

    #[test]
    fn kth_degree_walks_buckets() {
        let list = from_degrees(&[5, 2, 2, 7]);
        assert_eq!(list.kth_degree(1), 7);
        assert_eq!(list.kth_degree(2), 5);
        assert_eq!(list.kth_degree(3), 2);
        assert_eq!(list.kth_degree(4), 2);
        assert_eq!(list.kth_degree(5), 0);
    }

    #[test]
    fn decrement_to_zero_detaches() {
        let mut list = from_degrees(&[1, 1]);
        list.decrement(0);
        list.validate().unwrap();
        assert_eq!(list.degree(0), 0);
        assert_eq!(list.max_degree(), 1);
        list.decrement(1);
        list.validate().unwrap();
        assert_eq!(list.bucket_count(), 0);
    }

    #[test]
    fn dump_jsonl_format() {
        let list = from_degrees(&[2, 1, 2]);
        assert_eq!(list.dump_jsonl(), "{\"degree\":2,\"nodes\":[0,2]}\n{\"degree\":1,\"nodes\":[1]}\n");
    }

    #[test]
    fn relocation_cost_is_constant() {
        let mut list = DegreeBucketList::new(10_000);
        let mut worst = 0;
        for step in 0..200_000u64 {
            let u = (step.wrapping_mul(2_654_435_761) % 10_000) as NodeId;
            let before = list.mutation_count();
            if step % 3 == 2 && list.degree(u) > 0 {
                list.decrement(u);
            } else {
                list.increment(u);
            }
            worst = worst.max(list.mutation_count() - before);
        }
        assert!(worst <= 20, "worst relocation took {worst} writes");
    }

    proptest! {
        #[test]
        fn matches_sorted_degrees(ops in proptest::collection::vec((0u32..12, any::<bool>()), 0..400)) {
            let mut list = DegreeBucketList::new(12);
            let mut degrees = [0u32; 12];
            for (u, inc) in ops {
                if inc || degrees[u as usize] == 0 {
                    list.increment(u);
                    degrees[u as usize] += 1;
                } else {
                    list.decrement(u);
                    degrees[u as usize] -= 1;
                }
            }
            prop_assert!(list.validate().is_ok());
            let mut expected: Vec<(NodeId, u32)> = (0..12).map(|u| (u, degrees[u as usize])).collect();
            expected.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            prop_assert_eq!(list.top(12), expected.clone());
            let distinct: std::collections::BTreeSet<u32> = degrees.iter().copied().filter(|&d| d > 0).collect();
            prop_assert_eq!(list.bucket_count(), distinct.len());
            for k in 1..=12 {
                prop_assert_eq!(list.kth_degree(k), expected[k - 1].1);
            }
        }
    }
}
