//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's own formulas; each oracle is written
//! straight from the definitions so that agreement means something.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use gauss_quad::GaussLegendre;
use rand::Rng;

use semiham::engine::{Arc, VertexId};

// ---------------------------------------------------------------------------
// Expected one-step changes, scaled by n.

/// `(x', l1', l2')` of the fully randomized strategy, term by term from the
/// one-step expectations with the lower-order terms dropped.
pub fn randomized_drift(x: f64, l1: f64, l2: f64) -> [f64; 3] {
    let l = l1 + l2;
    let u = 1.0 - x;
    let dx = 1.0 - x + 2.0 * l;
    let dl1 = (x - 5.0 * l)
        + 2.0 * l1 * (2.0 * l2 / u - l1 / u - 1.0)
        + 2.0 * l2 * (1.0 + 2.0 * l2 / u - l1 / u)
        - l1
        + (1.0 - x) * (2.0 * l2 / u - l1 / u);
    let dl2 = l1
        - (1.0 - x) * (2.0 * l2 / u)
        - 2.0 * l1 * (2.0 * l2 / u)
        - 2.0 * l2 * (1.0 + 2.0 * l2 / u);
    [dx, dl1, dl2]
}

/// Degree-greedy phase `q` state in named form.
pub struct GreedyPoint {
    pub q: usize,
    pub x: f64,
    pub r: f64,
    pub c: HashMap<(usize, usize), f64>,
}

impl GreedyPoint {
    pub fn c(&self, k1: isize, k2: isize) -> f64 {
        if k1 < 0 || k2 < 0 {
            return 0.0;
        }
        self.c
            .get(&(k1 as usize, k2 as usize))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn b_of(&self, k1: isize, k2: isize) -> f64 {
        k1.max(0) as f64 * self.c(k1, k2)
    }

    pub fn m_of(&self, k1: isize, k2: isize) -> f64 {
        k2.max(0) as f64 * self.c(k1, k2)
    }

    /// State vector: `[x, r, c_{k1, q-1-k1} for k1 in 0..q, c_{k1, q-k1} for k1 in 0..=q]`.
    pub fn to_vec(&self) -> Vec<f64> {
        let q = self.q;
        let mut v = vec![self.x, self.r];
        for k1 in 0..q {
            v.push(self.c[&(k1, q - 1 - k1)]);
        }
        for k1 in 0..=q {
            v.push(self.c[&(k1, q - k1)]);
        }
        v
    }

    pub fn random<R: Rng>(rng: &mut R, q: usize) -> Self {
        let mut c = HashMap::new();
        for k1 in 0..q {
            c.insert((k1, q - 1 - k1), rng.gen_range(0.0..0.5));
        }
        for k1 in 0..=q {
            c.insert((k1, q - k1), rng.gen_range(0.0..0.5));
        }
        // Keep the minimum-degree mass well above any floor.
        c.insert((0, q - 1), rng.gen_range(0.05..0.5));
        GreedyPoint {
            q,
            x: rng.gen_range(0.0..0.98),
            r: rng.gen_range(0.0..0.5),
            c,
        }
    }
}

/// Sums of the table rows (landing in `U`, next to blue/magenta, next to red,
/// on a permissible vertex, on red, on blue), per coordinate, in the order of
/// [`GreedyPoint::to_vec`].
pub fn greedy_drift(p: &GreedyPoint) -> Vec<f64> {
    let q = p.q as isize;
    let n = 1.0;
    let x = p.x;
    let r = p.r;
    let u = n - x;
    let pairs: Vec<(isize, isize)> = p.c.keys().map(|&(a, b)| (a as isize, b as isize)).collect();
    let b: f64 = pairs.iter().map(|&(j, h)| p.b_of(j, h)).sum();
    let m: f64 = pairs.iter().map(|&(j, h)| p.m_of(j, h)).sum();
    let l = b + r + m;
    let d: f64 = (0..q).map(|k1| p.c(k1, q - 1 - k1)).sum();
    let q_mass = x - 5.0 * l;

    let dx = 1.0 - x / n + 2.0 * l / n;

    let flow: f64 = pairs
        .iter()
        .map(|&(j, h)| 2.0 * (p.b_of(j, h) + p.m_of(j, h)) * h as f64 / n)
        .sum();
    let dr = (m / n - r / n)
        + (-2.0 * (b + m) / n * r / u + flow)
        + (-2.0 * r / n * (1.0 + r / u) + 2.0 * r / n * m / u)
        + (-r / n);

    let shared = |k1: isize, k2: isize| -> f64 {
        let ind1 = if k1 > 0 { 1.0 } else { 0.0 };
        let ind2 = if k2 > 0 { 1.0 } else { 0.0 };
        let row_u = p.m_of(k1 - 1, k2 + 1) / n * ind1 - p.c(k1, k2) / n - p.m_of(k1, k2) / n;
        let row_bm = 2.0 * (b + m) / n * (p.m_of(k1 - 1, k2 + 1) / u * ind1 - p.m_of(k1, k2) / u)
            - 2.0 * (p.b_of(k1, k2) + p.m_of(k1, k2)) / n;
        let row_r = 2.0 * r / n
            * (p.m_of(k1 - 1, k2 + 1) / u * ind1 - p.m_of(k1, k2) / u - p.c(k1, k2) / u);
        let row_b = -p.b_of(k1, k2) / n + p.b_of(k1 + 1, k2 - 1) / n * ind2;
        row_u + row_bm + row_r + row_b
    };

    let mut out = vec![dx, dr];
    for k1 in 0..q {
        let k2 = q - 1 - k1;
        let row_q = -q_mass / n * p.c(k1, k2) / d;
        let row_red = -r / n * p.c(k1, k2) / d;
        out.push(shared(k1, k2) + row_q + row_red);
    }
    for k1 in 0..=q {
        let k2 = q - k1;
        let row_q = q_mass / n * p.c(k1 - 1, k2) / d;
        let row_red = r / n * p.c(k1, k2 - 1) / d;
        out.push(shared(k1, k2) + row_q + row_red);
    }
    out
}

// ---------------------------------------------------------------------------
// Hamiltonicity by enumeration.

/// Whether the used arcs contain a Hamiltonian cycle, by trying every cyclic
/// order that starts at vertex 1.
pub fn brute_force_hamiltonian(arcs: &[Arc], n: usize) -> bool {
    if n < 3 {
        return false;
    }
    let edges: HashSet<(u32, u32)> = arcs
        .iter()
        .filter(|a| a.used)
        .map(|a| {
            let (u, v) = (a.square.get(), a.circle.get());
            (u.min(v), u.max(v))
        })
        .collect();
    let has = |a: u32, b: u32| edges.contains(&(a.min(b), a.max(b)));
    let mut rest: Vec<u32> = (2..=n as u32).collect();
    permutations(&mut rest, 0, &mut |perm| {
        let mut prev = 1;
        for &v in perm {
            if !has(prev, v) {
                return false;
            }
            prev = v;
        }
        has(prev, 1)
    })
}

fn permutations(items: &mut [u32], k: usize, visit: &mut impl FnMut(&[u32]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permutations(items, k + 1, visit) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// Checks that `cycle` visits every vertex once and each consecutive pair,
/// including the wrap-around, is a used arc.
pub fn is_valid_cycle(arcs: &[Arc], n: usize, cycle: &[VertexId]) -> bool {
    if cycle.len() != n {
        return false;
    }
    let distinct: HashSet<u32> = cycle.iter().map(|v| v.get()).collect();
    if distinct.len() != n || distinct.iter().any(|&v| v == 0 || v as usize > n) {
        return false;
    }
    let edges: HashSet<(u32, u32)> = arcs
        .iter()
        .filter(|a| a.used)
        .map(|a| {
            let (u, v) = (a.square.get(), a.circle.get());
            (u.min(v), u.max(v))
        })
        .collect();
    (0..n).all(|i| {
        let a = cycle[i].get();
        let b = cycle[(i + 1) % n].get();
        edges.contains(&(a.min(b), a.max(b)))
    })
}

// ---------------------------------------------------------------------------
// Wasting structures by direct enumeration.

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NaiveCounts {
    pub z: u64,
    pub w1: u64,
    pub w2: u64,
    pub t1: u64,
    pub t2: u64,
}

/// Counts from a list of `(square, circle)` pairs numbered from step 1, with
/// a double loop over vertex pairs and a scan of the history for each.
pub fn naive_structures(n: usize, history: &[(u32, u32)]) -> NaiveCounts {
    let steps_on = |v: u32| -> Vec<usize> {
        history
            .iter()
            .enumerate()
            .filter(|(_, &(sq, _))| sq == v)
            .map(|(i, _)| i + 1)
            .collect()
    };
    let z_of = |v: u32| steps_on(v).len();
    // y is hit at least twice, every hit strictly after step i.
    let late_double = |y: u32, i: usize| {
        let s = steps_on(y);
        s.len() >= 2 && s.iter().all(|&j| j > i)
    };
    // Some square on x at step i has circle y with y hit twice after i.
    let linked = |x: u32, y: u32| {
        steps_on(x)
            .into_iter()
            .any(|i| history[i - 1].1 == y && late_double(y, i))
    };

    let mut w1 = Vec::new();
    let mut w2 = Vec::new();
    for x in 1..=n as u32 {
        for y in 1..=n as u32 {
            let zx = z_of(x);
            if zx == 1 && linked(x, y) {
                w1.push((x, y));
            }
            if zx == 2 && linked(x, y) {
                w2.push((x, y));
            }
        }
    }
    let mut t1 = 0;
    for &(_, y1) in &w1 {
        for &(a, _) in &w2 {
            if a == y1 {
                t1 += 1;
            }
        }
    }
    let mut t2 = 0;
    for &(_, y1) in &w2 {
        for &(a, _) in &w2 {
            if a == y1 {
                t2 += 1;
            }
        }
    }
    let z = (1..=n as u32).map(|v| z_of(v).min(2) as u64).sum();
    NaiveCounts {
        z,
        w1: w1.len() as u64,
        w2: w2.len() as u64,
        t1,
        t2,
    }
}

pub fn random_history<R: Rng>(rng: &mut R, n: usize, t: usize) -> Vec<(u32, u32)> {
    (0..t)
        .map(|_| (rng.gen_range(1..=n as u32), rng.gen_range(1..=n as u32)))
        .collect()
}

// ---------------------------------------------------------------------------
// Limiting structure densities by numerical integration.

pub struct Quadrature {
    rule: GaussLegendre,
}

impl Quadrature {
    pub fn new(degree: usize) -> Self {
        Quadrature {
            rule: GaussLegendre::new(degree.try_into().expect("positive degree")),
        }
    }

    fn int(&self, a: f64, b: f64, f: impl FnMut(f64) -> f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        self.rule.integrate(a, b, f)
    }

    /// `G(a) = int_a^s dy1 int_{y1}^s e^{-y2} dy2`.
    fn tail(&self, a: f64, s: f64) -> f64 {
        self.int(a, s, |y1| self.int(y1, s, |y2| (-y2).exp()))
    }

    /// Poisson mass of `min(Z_x, 2)` with mean `s`.
    pub fn z(&self, s: f64) -> f64 {
        let p0 = (-s).exp();
        let p1 = s * p0;
        p1 + 2.0 * (1.0 - p0 - p1)
    }

    pub fn w1(&self, s: f64) -> f64 {
        (-s).exp() * self.int(0.0, s, |x| self.tail(x, s))
    }

    pub fn w2(&self, s: f64) -> f64 {
        (-s).exp()
            * self.int(0.0, s, |x1| {
                self.int(x1, s, |x2| self.tail(x1, s) + self.tail(x2, s))
            })
    }

    pub fn t1(&self, s: f64) -> f64 {
        (-2.0 * s).exp()
            * self.int(0.0, s, |x| {
                self.int(x, s, |y1| {
                    self.int(y1, s, |y2| self.tail(y1, s) + self.tail(y2, s))
                })
            })
    }

    pub fn t2(&self, s: f64) -> f64 {
        let inner = |y1_from: f64| {
            self.int(y1_from, s, |y1| {
                self.int(y1, s, |y2| self.tail(y1, s) + self.tail(y2, s))
            })
        };
        (-2.0 * s).exp()
            * self.int(0.0, s, |x1| {
                let first = inner(x1);
                self.int(x1, s, |x2| first + inner(x2))
            })
    }
}
