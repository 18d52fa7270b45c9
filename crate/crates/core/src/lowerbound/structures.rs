use serde::{Deserialize, Serialize};

use crate::engine::{Arc, VertexId};

/// The squares and circles of the first `t` steps, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryLog {
    pub n: usize,
    pub t: u64,
    /// `(step, square, circle)` in step order.
    pub arcs: Vec<(u64, VertexId, VertexId)>,
    /// Steps at which each vertex received a square, ascending. Index 0 is
    /// unused.
    pub square_steps: Vec<Vec<u64>>,
    pub circle_steps: Vec<Vec<u64>>,
}

impl HistoryLog {
    /// The prefix of `arcs` up to step `t`.
    pub fn from_arcs(n: usize, arcs: &[Arc], t: u64) -> Self {
        let mut log = HistoryLog {
            n,
            t,
            arcs: Vec::new(),
            square_steps: vec![Vec::new(); n + 1],
            circle_steps: vec![Vec::new(); n + 1],
        };
        for a in arcs.iter().take_while(|a| a.step <= t) {
            log.push(a.step, a.square, a.circle);
        }
        log
    }

    /// Builds from `(square, circle)` pairs numbered from step 1.
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut log = HistoryLog {
            n,
            t: pairs.len() as u64,
            arcs: Vec::with_capacity(pairs.len()),
            square_steps: vec![Vec::new(); n + 1],
            circle_steps: vec![Vec::new(); n + 1],
        };
        for (i, &(u, v)) in pairs.iter().enumerate() {
            log.push(i as u64 + 1, VertexId::new(u), VertexId::new(v));
        }
        log
    }

    fn push(&mut self, step: u64, square: VertexId, circle: VertexId) {
        self.arcs.push((step, square, circle));
        self.square_steps[square.get() as usize].push(step);
        self.circle_steps[circle.get() as usize].push(step);
    }

    /// `Z_x`, the number of squares on `x`.
    pub fn squares_on(&self, x: VertexId) -> usize {
        self.square_steps[x.get() as usize].len()
    }

    /// Whether `y` has at least two squares and none at or before step `i`.
    fn doubly_hit_after(&self, y: VertexId, i: u64) -> bool {
        let s = &self.square_steps[y.get() as usize];
        s.len() >= 2 && s[0] > i
    }

    /// Circles of the squares on `x`, with their steps.
    fn circles_of(&self, x: VertexId) -> impl Iterator<Item = (u64, VertexId)> + '_ {
        self.square_steps[x.get() as usize]
            .iter()
            .map(move |&i| (i, self.arcs[(i - self.arcs[0].0) as usize].2))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCounts {
    pub z: u64,
    pub w1: u64,
    pub w2: u64,
    pub t1: u64,
    pub t2: u64,
}

impl StructureCounts {
    /// Double-counting correction `T1 + T2`.
    pub fn w(&self) -> u64 {
        self.t1 + self.t2
    }

    pub fn usable(&self) -> i64 {
        usable_squares_bound(self)
    }
}

/// `Z - W1 - W2 + T1 + T2`.
pub fn usable_squares_bound(c: &StructureCounts) -> i64 {
    c.z as i64 - c.w1 as i64 - c.w2 as i64 + c.t1 as i64 + c.t2 as i64
}

/// Counts the wasting structures of a history in `O(n + t)`.
///
/// A pair `(x, y)` is in `W1` when `x` has exactly one square, `y` is its
/// circle, and the first two squares on `y` both come after that step. `W2`
/// is the same with `x` carrying exactly two squares; either of its circles
/// can play `y`. `T1` (resp. `T2`) counts pairs of a `W1` (resp. `W2`) pair
/// `(x1, y1)` and a `W2` pair starting at `y1`.
pub fn count_structures(h: &HistoryLog) -> StructureCounts {
    let n = h.n;
    let mut c = StructureCounts::default();
    // Number of W2 pairs with first coordinate x.
    let mut w2_from = vec![0u64; n + 1];
    for x in 1..=n {
        let xv = VertexId::new(x as u32);
        let z = h.squares_on(xv);
        c.z += z.min(2) as u64;
        if z == 2 {
            let mut ys: Vec<VertexId> = h
                .circles_of(xv)
                .filter(|&(i, y)| h.doubly_hit_after(y, i))
                .map(|(_, y)| y)
                .collect();
            ys.dedup();
            w2_from[x] = ys.len() as u64;
            c.w2 += w2_from[x];
        }
    }
    for x in 1..=n {
        let xv = VertexId::new(x as u32);
        match h.squares_on(xv) {
            1 => {
                let (i, y) = h.circles_of(xv).next().expect("one square");
                if h.doubly_hit_after(y, i) {
                    c.w1 += 1;
                    c.t1 += w2_from[y.get() as usize];
                }
            }
            2 => {
                let mut last = None;
                for (i, y) in h.circles_of(xv) {
                    if last != Some(y) && h.doubly_hit_after(y, i) {
                        c.t2 += w2_from[y.get() as usize];
                        last = Some(y);
                    }
                }
            }
            _ => {}
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_history() {
        let h = HistoryLog::from_pairs(5, &[]);
        assert_eq!(count_structures(&h), StructureCounts::default());
        assert_eq!(usable_squares_bound(&StructureCounts::default()), 0);
    }

    #[test]
    fn single_w1_pair() {
        // x = 1 gets a square at step 1 with circle 2; 2 gets squares at 2, 3.
        let h = HistoryLog::from_pairs(5, &[(1, 2), (2, 3), (2, 4)]);
        let c = count_structures(&h);
        assert_eq!((c.z, c.w1, c.w2, c.t1, c.t2), (3, 1, 0, 0, 0));
        assert_eq!(c.usable(), c.z as i64 - 1);
    }

    #[test]
    fn chain_gives_t1() {
        // 1 -> 2 (W1); 2 has exactly two squares whose circle 3 is hit twice later.
        let h = HistoryLog::from_pairs(6, &[(1, 2), (2, 3), (2, 4), (3, 5), (3, 6)]);
        let c = count_structures(&h);
        assert_eq!((c.w1, c.w2, c.t1, c.t2), (1, 1, 1, 0));
    }
}
