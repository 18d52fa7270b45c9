//! The growing path `P_t` as an intrusive doubly linked list over vertex ids.
//!
//! Every link is stored per vertex, so neighbour and two-hop queries are O(1).
//! Each path edge remembers which arc of the process realises it, which lets
//! augmentations release the arc they cut.

use super::types::VertexId;

const NIL: u32 = 0;
const NO_ARC: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct PathState {
    on_path: Vec<bool>,
    left: Vec<u32>,
    right: Vec<u32>,
    /// Arc realising the edge `v -- right[v]`.
    right_arc: Vec<usize>,
    head: u32,
    tail: u32,
    len: usize,
}

/// Orientation of a walk along the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl PathState {
    pub fn new(n: usize) -> Self {
        PathState {
            on_path: vec![false; n + 1],
            left: vec![NIL; n + 1],
            right: vec![NIL; n + 1],
            right_arc: vec![NO_ARC; n + 1],
            head: NIL,
            tail: NIL,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.on_path[v.idx()]
    }

    pub fn head(&self) -> Option<VertexId> {
        wrap(self.head)
    }

    pub fn tail(&self) -> Option<VertexId> {
        wrap(self.tail)
    }

    pub fn left(&self, v: VertexId) -> Option<VertexId> {
        wrap(self.left[v.idx()])
    }

    pub fn right(&self, v: VertexId) -> Option<VertexId> {
        wrap(self.right[v.idx()])
    }

    pub fn step(&self, v: VertexId, side: Side) -> Option<VertexId> {
        match side {
            Side::Left => self.left(v),
            Side::Right => self.right(v),
        }
    }

    /// Index of the arc realising the edge between `v` and its right neighbour.
    pub fn right_arc(&self, v: VertexId) -> Option<usize> {
        let a = self.right_arc[v.idx()];
        (a != NO_ARC).then_some(a)
    }

    /// Vertices within path distance `radius` of `v`, `v` included.
    pub fn ball(&self, v: VertexId, radius: usize, out: &mut Vec<VertexId>) {
        out.push(v);
        for side in [Side::Left, Side::Right] {
            let mut cur = v;
            for _ in 0..radius {
                match self.step(cur, side) {
                    Some(next) => {
                        out.push(next);
                        cur = next;
                    }
                    None => break,
                }
            }
        }
    }

    pub(crate) fn start(&mut self, v: VertexId) {
        debug_assert!(self.is_empty());
        self.on_path[v.idx()] = true;
        self.head = v.get();
        self.tail = v.get();
        self.len = 1;
    }

    /// Attach `v` before the current head through arc `arc`.
    pub(crate) fn push_head(&mut self, v: VertexId, arc: usize) {
        debug_assert!(!self.on_path[v.idx()] && !self.is_empty());
        let old = self.head as usize;
        self.on_path[v.idx()] = true;
        self.right[v.idx()] = old as u32;
        self.right_arc[v.idx()] = arc;
        self.left[old] = v.get();
        self.head = v.get();
        self.len += 1;
    }

    /// Replace the path edge `u -- x` by `u -- r -- x`. Returns the arc that used
    /// to realise `u -- x`.
    pub(crate) fn insert_between(
        &mut self,
        u: VertexId,
        x: VertexId,
        r: VertexId,
        arc_ur: usize,
        arc_xr: usize,
    ) -> usize {
        debug_assert!(!self.on_path[r.idx()]);
        let (a, b, arc_ar, arc_rb) = if self.right[u.idx()] == x.get() {
            (u, x, arc_ur, arc_xr)
        } else {
            debug_assert_eq!(self.left[u.idx()], x.get(), "u and x must be adjacent");
            (x, u, arc_xr, arc_ur)
        };
        let cut = self.right_arc[a.idx()];
        self.right[a.idx()] = r.get();
        self.right_arc[a.idx()] = arc_ar;
        self.left[r.idx()] = a.get();
        self.right[r.idx()] = b.get();
        self.right_arc[r.idx()] = arc_rb;
        self.left[b.idx()] = r.get();
        self.on_path[r.idx()] = true;
        self.len += 1;
        cut
    }

    /// Walks from the head; O(length).
    pub fn iter(&self) -> PathIter<'_> {
        PathIter {
            path: self,
            cur: self.head,
        }
    }

    /// Path distance by walking; only for audits and tests.
    pub fn distance(&self, a: VertexId, b: VertexId) -> Option<usize> {
        if !self.contains(a) || !self.contains(b) {
            return None;
        }
        let pos: Vec<VertexId> = self.iter().collect();
        let ia = pos.iter().position(|&v| v == a)?;
        let ib = pos.iter().position(|&v| v == b)?;
        Some(ia.abs_diff(ib))
    }
}

pub struct PathIter<'a> {
    path: &'a PathState,
    cur: u32,
}

impl Iterator for PathIter<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        let v = wrap(self.cur)?;
        self.cur = self.path.right[v.idx()];
        Some(v)
    }
}

fn wrap(raw: u32) -> Option<VertexId> {
    (raw != NIL).then(|| VertexId::new(raw))
}
