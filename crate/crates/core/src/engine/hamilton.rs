//! Independent Hamiltonicity check over the used arcs of a run.
//!
//! Works only from the arc list, never from the engine's path links, so it can
//! serve as a check on them.

use super::types::{Arc, VertexId};

/// Returns a Hamiltonian cycle of the graph formed by the used arcs, as a
/// vertex sequence starting at vertex 1, or `None` if there is none.
///
/// Backtracking search; on the degree-2 graphs produced by a finished run it
/// is a single linear walk.
pub fn is_hamiltonian_cycle(arcs: &[Arc], n: usize) -> Option<Vec<VertexId>> {
    if n < 3 {
        return None;
    }
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for a in arcs.iter().filter(|a| a.used) {
        let (u, v) = (a.square.get(), a.circle.get());
        if u == v || u as usize > n || v as usize > n {
            continue;
        }
        if !adj[u as usize].contains(&v) {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
    }
    if adj[1..].iter().any(|nb| nb.len() < 2) {
        return None;
    }
    for nb in adj.iter_mut() {
        nb.sort_unstable();
    }

    let mut visited = vec![false; n + 1];
    let mut order: Vec<u32> = vec![1];
    // Next neighbour index to try for each vertex on the stack.
    let mut cursor: Vec<usize> = vec![0];
    visited[1] = true;
    while let Some(&v) = order.last() {
        if order.len() == n {
            if adj[v as usize].contains(&1) {
                return Some(order.into_iter().map(VertexId::new).collect());
            }
            visited[v as usize] = false;
            order.pop();
            cursor.pop();
            continue;
        }
        let top = cursor.len() - 1;
        let nb = &adj[v as usize];
        let mut next = None;
        while cursor[top] < nb.len() {
            let w = nb[cursor[top]];
            cursor[top] += 1;
            if !visited[w as usize] {
                next = Some(w);
                break;
            }
        }
        match next {
            Some(w) => {
                visited[w as usize] = true;
                order.push(w);
                cursor.push(0);
            }
            None => {
                visited[v as usize] = false;
                order.pop();
                cursor.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn used(pairs: &[(u32, u32)]) -> Vec<Arc> {
        pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| Arc {
                step: i as u64 + 1,
                square: VertexId::new(u),
                circle: VertexId::new(v),
                used: true,
            })
            .collect()
    }

    #[test]
    fn triangle() {
        let c = is_hamiltonian_cycle(&used(&[(1, 2), (2, 3), (3, 1)]), 3).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn two_triangles_are_not_hamiltonian() {
        let arcs = used(&[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]);
        assert!(is_hamiltonian_cycle(&arcs, 6).is_none());
    }

    #[test]
    fn unused_arcs_are_ignored() {
        let mut arcs = used(&[(1, 2), (2, 3), (3, 4), (4, 1)]);
        arcs[3].used = false;
        assert!(is_hamiltonian_cycle(&arcs, 4).is_none());
    }

    #[test]
    fn needs_backtracking() {
        // 1-2, 1-3, 1-4, 2-3, 3-4, 2-4: K4, any order works; add a pendant-free
        // detour that makes the smallest-first walk fail once.
        let arcs = used(&[(1, 2), (2, 5), (5, 3), (3, 4), (4, 1), (2, 3)]);
        let c = is_hamiltonian_cycle(&arcs, 5).unwrap();
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn long_cycle() {
        let n = 200_000u32;
        let mut pairs: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        pairs.push((n, 1));
        assert!(is_hamiltonian_cycle(&used(&pairs), n as usize).is_some());
    }
}
