//! Undirected simple graphs on at most 64 nodes, stored as adjacency bitmasks.

use std::fmt;

/// Maximum number of nodes representable by [`EdgeSet`].
pub const MAX_NODES: usize = 64;

/// An unordered node pair stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(usize, usize);

impl Edge {
    /// Builds the pair, ordering endpoints. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop {a}-{a}");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn ends(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0 + 1, self.1 + 1)
    }
}

/// Symmetric adjacency over nodes `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    adj: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(nodes: usize) -> EdgeSet {
        assert!(nodes <= MAX_NODES, "at most {MAX_NODES} nodes are supported");
        EdgeSet { adj: vec![0; nodes] }
    }

    pub fn complete(nodes: usize) -> EdgeSet {
        let mut set = EdgeSet::empty(nodes);
        let all = low_bits(nodes);
        for (v, row) in set.adj.iter_mut().enumerate() {
            *row = all & !(1 << v);
        }
        set
    }

    pub fn from_edges(nodes: usize, edges: impl IntoIterator<Item = Edge>) -> EdgeSet {
        let mut set = EdgeSet::empty(nodes);
        for e in edges {
            set.insert(e);
        }
        set
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.adj[e.0] >> e.1 & 1 == 1
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        a != b && self.adj[a] >> b & 1 == 1
    }

    /// Returns true if the edge was absent.
    pub fn insert(&mut self, e: Edge) -> bool {
        let fresh = !self.contains(e);
        self.adj[e.0] |= 1 << e.1;
        self.adj[e.1] |= 1 << e.0;
        fresh
    }

    /// Returns true if the edge was present.
    pub fn remove(&mut self, e: Edge) -> bool {
        let present = self.contains(e);
        self.adj[e.0] &= !(1 << e.1);
        self.adj[e.1] &= !(1 << e.0);
        present
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn len(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.iter().all(|&r| r == 0)
    }

    /// Edges in lexicographic order of `(lo, hi)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, &row)| {
            bits(row & !low_bits(a + 1)).map(move |b| Edge(a, b))
        })
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet { adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a | b).collect() }
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet { adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a & b).collect() }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet { adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a & !b).collect() }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edges().map(|e| e.to_string())).finish()
    }
}

/// Mask with the lowest `n` bits set.
pub fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of set bits in ascending order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
