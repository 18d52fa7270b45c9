//! Degree-greedy bookkeeping over unsaturated vertices: blue degree buckets and
//! type counts `C_{k1,k2}`.

use super::index::DegreeBuckets;
use super::types::VertexId;

#[derive(Debug, Clone)]
pub struct GreedyBook {
    /// Blue arcs from blue vertices.
    k1: Vec<u32>,
    /// Blue arcs from magenta vertices.
    k2: Vec<u32>,
    buckets: DegreeBuckets,
    /// `types[k1 + k2][k1]` = `C_{k1,k2}`.
    types: Vec<Vec<usize>>,
}

impl GreedyBook {
    pub fn new(n: usize) -> Self {
        GreedyBook {
            k1: vec![0; n + 1],
            k2: vec![0; n + 1],
            buckets: DegreeBuckets::full(n),
            types: vec![vec![n]],
        }
    }

    pub fn type_of(&self, c: VertexId) -> (u32, u32) {
        (self.k1[c.idx()], self.k2[c.idx()])
    }

    pub fn blue_degree(&self, c: VertexId) -> u32 {
        self.k1[c.idx()] + self.k2[c.idx()]
    }

    pub fn contains(&self, c: VertexId) -> bool {
        self.buckets.contains(c)
    }

    /// `C_{k1,k2}(t)`.
    pub fn type_count(&self, k1: u32, k2: u32) -> usize {
        let d = (k1 + k2) as usize;
        self.types
            .get(d)
            .and_then(|row| row.get(k1 as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `D_j(t)`: unsaturated vertices of blue degree `j`.
    pub fn degree_count(&self, j: usize) -> usize {
        self.buckets.bucket_len(j)
    }

    pub fn max_degree(&self) -> usize {
        self.buckets.max_degree()
    }

    pub fn min_degree(&mut self) -> Option<usize> {
        self.buckets.min_degree()
    }

    pub fn buckets_mut(&mut self) -> &mut DegreeBuckets {
        &mut self.buckets
    }

    pub fn bucket(&self, d: usize) -> impl Iterator<Item = VertexId> + '_ {
        self.buckets.bucket(d)
    }

    /// Non-zero `(k1, k2, C_{k1,k2})` triples ordered by degree then `k1`.
    pub fn type_counts(&self) -> Vec<(u32, u32, usize)> {
        let mut out = Vec::new();
        for (d, row) in self.types.iter().enumerate() {
            for (k1, &c) in row.iter().enumerate() {
                if c > 0 {
                    out.push((k1 as u32, (d - k1) as u32, c));
                }
            }
        }
        out
    }

    fn slot(&mut self, k1: u32, k2: u32) -> &mut usize {
        let d = (k1 + k2) as usize;
        if self.types.len() <= d {
            self.types.resize_with(d + 1, Vec::new);
        }
        let row = &mut self.types[d];
        if row.len() <= d {
            row.resize(d + 1, 0);
        }
        &mut row[k1 as usize]
    }

    fn retype(&mut self, c: VertexId, k1: u32, k2: u32) {
        let (o1, o2) = self.type_of(c);
        *self.slot(o1, o2) -= 1;
        *self.slot(k1, k2) += 1;
        self.k1[c.idx()] = k1;
        self.k2[c.idx()] = k2;
    }

    /// `c` gained a blue arc from a blue (`from_magenta = false`) or magenta
    /// vertex.
    pub(crate) fn add_blue(&mut self, c: VertexId, from_magenta: bool) {
        let (k1, k2) = self.type_of(c);
        if from_magenta {
            self.retype(c, k1, k2 + 1);
        } else {
            self.retype(c, k1 + 1, k2);
        }
        self.buckets.increment(c);
    }

    /// The blue-arc holder of `c` switched between blue and magenta.
    pub(crate) fn shift(&mut self, c: VertexId, to_magenta: bool) {
        if !self.contains(c) {
            return;
        }
        let (k1, k2) = self.type_of(c);
        if to_magenta {
            self.retype(c, k1 - 1, k2 + 1);
        } else {
            self.retype(c, k1 + 1, k2 - 1);
        }
    }

    pub(crate) fn remove(&mut self, c: VertexId) {
        if !self.contains(c) {
            return;
        }
        let (k1, k2) = self.type_of(c);
        *self.slot(k1, k2) -= 1;
        self.buckets.remove(c);
    }
}
