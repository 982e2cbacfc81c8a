//! Reference implementations written straight from the definitions: explicit
//! subgraph rebuilds, hash sets and flood fill, no bit masks, no early exit.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use hrcolor::{Graph, Multicoloring};
use proptest::prelude::*;

pub struct Plain {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<BTreeSet<usize>>,
    pub k: usize,
}

impl Plain {
    pub fn from_lib(g: &Graph, kappa: &Multicoloring) -> Self {
        Plain {
            n: g.num_vertices(),
            edges: g.edges(),
            colors: kappa
                .assignment()
                .iter()
                .map(|s| s.to_one_based().into_iter().collect())
                .collect(),
            k: kappa.palette_size(),
        }
    }

    fn neighbors(&self) -> HashMap<usize, HashSet<usize>> {
        let mut adj: HashMap<usize, HashSet<usize>> = (0..self.n).map(|v| (v, HashSet::new())).collect();
        for &(u, v) in &self.edges {
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        adj
    }

    fn palette(&self) -> BTreeSet<usize> {
        (1..=self.k).collect()
    }

    fn union_of(&self, vs: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        vs.into_iter().flat_map(|v| self.colors[v].iter().copied()).collect()
    }

    /// Components of the graph rebuilt on `keep`, by depth-first flood fill.
    pub fn components_of(&self, keep: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let full = self.neighbors();
        let sub: HashMap<usize, Vec<usize>> = keep
            .iter()
            .map(|&v| (v, full[&v].iter().copied().filter(|u| keep.contains(u)).collect()))
            .collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &s in keep {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for &y in &sub[&x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn hr_violated_by(&self, attack: &[usize]) -> bool {
        self.union_of(attack.iter().copied()) == self.palette()
    }

    pub fn resistance_fails_for(&self, attack: &[usize]) -> bool {
        let adj = self.neighbors();
        let mut removed: BTreeSet<usize> = attack.iter().copied().collect();
        for v in attack {
            removed.extend(adj[v].iter().copied());
        }
        let keep: BTreeSet<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        let palette = self.palette();
        !self
            .components_of(&keep)
            .iter()
            .any(|c| self.union_of(c.iter().copied()) == palette)
    }

    /// First (HR, resistance) failing attack sets in lexicographic order.
    pub fn check(&self, a: usize) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
        let mut hr = None;
        let mut res = None;
        for attack in combinations(self.n, a) {
            if hr.is_none() && self.hr_violated_by(&attack) {
                hr = Some(attack.clone());
            }
            if res.is_none() && self.resistance_fails_for(&attack) {
                res = Some(attack);
            }
        }
        (hr, res)
    }

    pub fn highly_resistant(&self, a: usize) -> bool {
        let (hr, res) = self.check(a);
        hr.is_none() && res.is_none()
    }
}

/// All `a`-subsets of `0..n` in lexicographic order, by recursion.
pub fn combinations(n: usize, a: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < left {
                break;
            }
            cur.push(v);
            go(v + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, a, &mut Vec::new(), &mut out);
    out
}

/// Every labeled graph on `n` vertices.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

/// Whether any of the `(2^k)^n` raw colorings is highly a-resistant.
pub fn raw_exists(g: &Graph, a: usize, k: usize) -> bool {
    let n = g.num_vertices();
    let per_vertex = 1usize << k;
    (0..per_vertex.pow(n as u32)).any(|mut code| {
        let colors = (0..n)
            .map(|_| {
                let bits = code % per_vertex;
                code /= per_vertex;
                (0..k).filter(|c| bits >> c & 1 == 1).map(|c| c + 1).collect()
            })
            .collect();
        Plain { n, edges: g.edges(), colors, k }.highly_resistant(a)
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn build(n: usize, edge_bits: &[bool], k: usize, color_bits: &[u64]) -> (Graph, Multicoloring) {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs.zip(edge_bits).filter(|(_, &b)| b).map(|(e, _)| e);
    let g = Graph::new(n, edges).unwrap();
    let lists = color_bits
        .iter()
        .map(|&bits| (0..k).filter(|c| bits >> c & 1 == 1).map(|c| c + 1).collect::<Vec<_>>());
    let kappa = Multicoloring::from_one_based(k, lists).unwrap();
    (g, kappa)
}

/// Random graph with `min_n..=max_n` vertices and a random k-multicoloring.
pub fn instance(
    min_n: usize,
    max_n: usize,
    max_k: usize,
) -> impl Strategy<Value = (Graph, Multicoloring)> {
    (min_n..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec(any::<bool>(), n * (n.saturating_sub(1)) / 2),
            prop::collection::vec(0..1u64 << k, n),
        )
            .prop_map(move |(e, c)| build(n, &e, k, &c))
    })
}

/// Deterministic Fisher-Yates driven by a small LCG.
pub fn permutation(n: usize, mut seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (seed >> 33) as usize % (i + 1);
        p.swap(i, j);
    }
    p
}
