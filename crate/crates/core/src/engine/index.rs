//! Small index structures: a sampleable vertex set, degree buckets and a
//! Fenwick tree for order-statistic membership tests.

use rand::Rng;

use super::types::VertexId;

const ABSENT: u32 = u32::MAX;

/// Set of vertices with O(1) insert, remove and uniform sampling.
#[derive(Debug, Clone)]
pub struct IndexedSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

impl IndexedSet {
    pub fn new(n: usize) -> Self {
        IndexedSet {
            items: Vec::new(),
            pos: vec![ABSENT; n + 1],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = IndexedSet::new(n);
        for v in 1..=n as u32 {
            s.insert(VertexId::new(v));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos[v.idx()] != ABSENT
    }

    pub fn insert(&mut self, v: VertexId) {
        if self.contains(v) {
            return;
        }
        self.pos[v.idx()] = self.items.len() as u32;
        self.items.push(v.get());
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let p = self.pos[v.idx()];
        if p == ABSENT {
            return false;
        }
        let last = *self.items.last().expect("non-empty");
        self.items.swap_remove(p as usize);
        if last != v.get() {
            self.pos[last as usize] = p;
        }
        self.pos[v.idx()] = ABSENT;
        true
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<VertexId> {
        if self.items.is_empty() {
            return None;
        }
        let i = rng.gen_range(0..self.items.len());
        Some(VertexId::new(self.items[i]))
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.items.iter().map(|&v| VertexId::new(v))
    }
}

/// Vertices bucketed by a non-negative integer degree, with uniform sampling
/// inside a bucket and a lazily advanced minimum.
///
/// Degrees only grow and vertices only leave, so the minimum never decreases.
#[derive(Debug, Clone)]
pub struct DegreeBuckets {
    buckets: Vec<Vec<u32>>,
    degree: Vec<u32>,
    pos: Vec<u32>,
    min: usize,
    len: usize,
}

impl DegreeBuckets {
    /// All of `1..=n` at degree 0.
    pub fn full(n: usize) -> Self {
        let mut b = DegreeBuckets {
            buckets: vec![Vec::with_capacity(n)],
            degree: vec![0; n + 1],
            pos: vec![ABSENT; n + 1],
            min: 0,
            len: 0,
        };
        for v in 1..=n as u32 {
            b.pos[v as usize] = b.buckets[0].len() as u32;
            b.buckets[0].push(v);
            b.len += 1;
        }
        b
    }

    /// The listed vertices at degree 0.
    pub fn from_vertices(n: usize, vs: impl IntoIterator<Item = VertexId>) -> Self {
        let mut b = DegreeBuckets {
            buckets: vec![Vec::new()],
            degree: vec![0; n + 1],
            pos: vec![ABSENT; n + 1],
            min: 0,
            len: 0,
        };
        for v in vs {
            b.pos[v.idx()] = b.buckets[0].len() as u32;
            b.buckets[0].push(v.get());
            b.len += 1;
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos[v.idx()] != ABSENT
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.degree[v.idx()]
    }

    pub fn bucket_len(&self, d: usize) -> usize {
        self.buckets.get(d).map_or(0, Vec::len)
    }

    pub fn bucket(&self, d: usize) -> impl Iterator<Item = VertexId> + '_ {
        self.buckets
            .get(d)
            .into_iter()
            .flatten()
            .map(|&v| VertexId::new(v))
    }

    /// Smallest degree with a non-empty bucket.
    pub fn min_degree(&mut self) -> Option<usize> {
        if self.len == 0 {
            return None;
        }
        while self.buckets[self.min].is_empty() {
            self.min += 1;
        }
        Some(self.min)
    }

    pub fn max_degree(&self) -> usize {
        self.buckets.len().saturating_sub(1)
    }

    pub fn sample_min<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<VertexId> {
        let d = self.min_degree()?;
        let b = &self.buckets[d];
        Some(VertexId::new(b[rng.gen_range(0..b.len())]))
    }

    pub fn remove(&mut self, v: VertexId) {
        let p = self.pos[v.idx()];
        if p == ABSENT {
            return;
        }
        let d = self.degree[v.idx()] as usize;
        let bucket = &mut self.buckets[d];
        let last = *bucket.last().expect("non-empty");
        bucket.swap_remove(p as usize);
        if last != v.get() {
            self.pos[last as usize] = p;
        }
        self.pos[v.idx()] = ABSENT;
        self.len -= 1;
    }

    pub fn increment(&mut self, v: VertexId) {
        debug_assert!(self.contains(v));
        self.remove(v);
        let d = self.degree[v.idx()] as usize + 1;
        self.degree[v.idx()] = d as u32;
        if self.buckets.len() <= d {
            self.buckets.resize_with(d + 1, Vec::new);
        }
        self.pos[v.idx()] = self.buckets[d].len() as u32;
        self.buckets[d].push(v.get());
        self.len += 1;
    }
}

/// Fenwick tree over vertex ids counting a 0/1 indicator.
#[derive(Debug, Clone)]
pub struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    pub fn add(&mut self, v: VertexId, delta: i64) {
        let mut i = v.idx();
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over ids `1..=v`.
    pub fn prefix(&self, v: usize) -> i64 {
        let mut i = v.min(self.tree.len() - 1);
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn indexed_set_remove_keeps_positions() {
        let mut s = IndexedSet::full(5);
        assert!(s.remove(VertexId::new(2)));
        assert!(!s.remove(VertexId::new(2)));
        assert!(s.remove(VertexId::new(5)));
        let mut got: Vec<u32> = s.iter().map(VertexId::get).collect();
        got.sort();
        assert_eq!(got, vec![1, 3, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let v = s.sample(&mut rng).unwrap();
            assert!(s.contains(v));
        }
    }

    #[test]
    fn buckets_track_minimum() {
        let mut b = DegreeBuckets::full(4);
        assert_eq!(b.min_degree(), Some(0));
        for v in 1..=4 {
            b.increment(VertexId::new(v));
        }
        assert_eq!(b.min_degree(), Some(1));
        b.increment(VertexId::new(2));
        b.remove(VertexId::new(1));
        assert_eq!(b.bucket_len(1), 2);
        assert_eq!(b.bucket_len(2), 1);
        b.remove(VertexId::new(3));
        b.remove(VertexId::new(4));
        assert_eq!(b.min_degree(), Some(2));
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn fenwick_prefix_sums() {
        let mut f = Fenwick::new(10);
        for v in [2u32, 3, 7, 10] {
            f.add(VertexId::new(v), 1);
        }
        assert_eq!(f.prefix(1), 0);
        assert_eq!(f.prefix(3), 2);
        assert_eq!(f.prefix(9), 3);
        assert_eq!(f.prefix(10), 4);
        f.add(VertexId::new(3), -1);
        assert_eq!(f.prefix(10), 3);
    }
}
