//! Simple undirected graphs, closed neighborhoods and surviving components.

use std::collections::BTreeSet;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::vertex_set::{fill_words, words_for, BitIter, VertexSet};

/// A simple undirected graph on vertices `0..n`.
///
/// Closed neighborhoods are precomputed as bit masks since every check
/// removes `M(A)` for many attack sets `A`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    closed: Vec<u64>,
    stride: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_adjacency(adjacency))
    }

    fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let n = adjacency.len();
        let stride = words_for(n);
        let mut closed = vec![0u64; n * stride];
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            let row = &mut closed[u * stride..(u + 1) * stride];
            row[u / 64] |= 1 << (u % 64);
            for &v in nbrs.iter() {
                row[v / 64] |= 1 << (v % 64);
            }
        }
        Graph {
            adjacency,
            closed,
            stride,
        }
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph edges are valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbors of `u`. Panics if `u` is out of range.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_vertices() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Number of 64-bit words per vertex mask.
    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    /// Mask words of `M(u)`.
    pub(crate) fn closed_words(&self, u: usize) -> &[u64] {
        &self.closed[u * self.stride..(u + 1) * self.stride]
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.num_vertices(),
            })
        }
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.capacity() == self.num_vertices() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "vertex set has capacity {} but the graph has {} vertices",
                set.capacity(),
                self.num_vertices()
            )))
        }
    }

    /// `M(u) = N(u) ∪ {u}`.
    pub fn closed_neighborhood(&self, u: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        Ok(VertexSet::from_words(
            self.num_vertices(),
            self.closed_words(u).to_vec(),
        ))
    }

    /// `M(A)`, the union of closed neighborhoods over `A`.
    pub fn closed_neighborhood_set(&self, set: &VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        let mut words = vec![0u64; self.stride];
        for u in set {
            for (w, c) in words.iter_mut().zip(self.closed_words(u)) {
                *w |= c;
            }
        }
        Ok(VertexSet::from_words(self.num_vertices(), words))
    }

    /// Connected components of the subgraph induced on the vertices not in
    /// `removed`, ordered by their smallest vertex.
    pub fn surviving_components(&self, removed: &VertexSet) -> Result<ComponentList> {
        self.check_set(removed)?;
        let n = self.num_vertices();
        let alive = removed.complement();
        let mut unvisited = alive.words().to_vec();
        let mut components = Vec::new();
        let mut frontier = vec![0u64; self.stride];
        let mut next = vec![0u64; self.stride];
        while let Some(start) = first_bit(&unvisited) {
            let mut comp = vec![0u64; self.stride];
            frontier.iter_mut().for_each(|w| *w = 0);
            frontier[start / 64] |= 1 << (start % 64);
            comp[start / 64] |= 1 << (start % 64);
            unvisited[start / 64] &= !(1 << (start % 64));
            while frontier.iter().any(|&w| w != 0) {
                next.iter_mut().for_each(|w| *w = 0);
                for v in BitIter::new(&frontier) {
                    for (x, c) in next.iter_mut().zip(self.closed_words(v)) {
                        *x |= c;
                    }
                }
                for ((x, u), c) in next.iter_mut().zip(unvisited.iter_mut()).zip(comp.iter_mut()) {
                    *x &= *u;
                    *u &= !*x;
                    *c |= *x;
                }
                std::mem::swap(&mut frontier, &mut next);
            }
            components.push(VertexSet::from_words(n, comp));
        }
        Ok(ComponentList(components))
    }

    /// All connected components of the graph.
    pub fn components(&self) -> ComponentList {
        self.surviving_components(&VertexSet::new(self.num_vertices()))
            .expect("capacity matches")
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when the graph is a single cycle through all of its vertices.
    pub fn is_cycle(&self) -> bool {
        self.num_vertices() >= 3
            && self.adjacency.iter().all(|nbrs| nbrs.len() == 2)
            && self.is_connected()
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.num_vertices()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.num_vertices();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|nbrs| nbrs.iter().map(|v| v + shift).collect()),
        );
        Self::from_adjacency(adjacency)
    }

    /// Appends one vertex of degree zero.
    pub fn add_isolated_vertex(&self) -> Graph {
        let mut adjacency = self.adjacency.clone();
        adjacency.push(Vec::new());
        Self::from_adjacency(adjacency)
    }

    /// Subgraph induced on `keep`; vertex `i` of the result is the `i`-th
    /// smallest member of `keep`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph> {
        self.check_set(keep)?;
        let order: Vec<usize> = keep.to_vec();
        let mut index = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = order
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&&u| keep.contains(u))
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        Ok(Self::from_adjacency(adjacency))
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.num_vertices())?;
        Graph::new(
            self.num_vertices(),
            self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])),
        )
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.num_vertices())
            .field("edges", &self.edges())
            .finish()
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::invalid(format!(
            "permutation has length {} but {n} is required",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::invalid(format!("not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Connected components, pairwise disjoint, ascending by smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentList(Vec<VertexSet>);

impl ComponentList {
    pub fn into_vec(self) -> Vec<VertexSet> {
        self.0
    }
}

impl Deref for ComponentList {
    type Target = [VertexSet];

    fn deref(&self) -> &[VertexSet] {
        &self.0
    }
}

pub(crate) fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Words of the mask `0..n`.
pub(crate) fn full_words(n: usize) -> Vec<u64> {
    let mut w = vec![0; words_for(n)];
    fill_words(n, &mut w);
    w
}
