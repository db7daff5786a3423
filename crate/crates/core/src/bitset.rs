use std::fmt;

/// Maximum number of edges addressable by an [`EdgeSet`].
pub const MAX_EDGES: usize = 64;

/// A set of edge indices `0..64`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        EdgeSet(bits)
    }

    /// All edges `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_EDGES);
        if n == MAX_EDGES {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_EDGES && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1 << e);
    }

    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    pub fn without(mut self, e: usize) -> Self {
        self.remove(e);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// Removes edge `e` and shifts every higher index down by one, mirroring
    /// what happens to edge indices when an edge is removed from a graph.
    pub fn drop_index(self, e: usize) -> Self {
        let low = self.0 & ((1u64 << e) - 1);
        let high = if e + 1 >= MAX_EDGES {
            0
        } else {
            self.0 >> (e + 1)
        };
        EdgeSet(low | (high << e))
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = EdgeSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
