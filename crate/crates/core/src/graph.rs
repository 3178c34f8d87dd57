//! Exact graph predicates used for win detection and audits.
//!
//! Graphs are dense bitset adjacency matrices. Every board in this crate is a
//! subgraph of `K_n` with `n` in the low thousands at most, so a row of
//! `ceil(n / 64)` words per vertex is both compact and fast to intersect.

use std::collections::VecDeque;
use std::fmt;
use std::io::{self, BufRead, Write};

use num_rational::Ratio;
use thiserror::Error;

use crate::board::Vertex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0}-{1} of the subgraph is missing from the supergraph")]
    NotSubgraph(Vertex, Vertex),
    #[error("graphs have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("malformed edge list line {line}: {text:?}")]
    Parse { line: usize, text: String },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("edges", &self.edge_list())
            .finish()
    }
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SimpleGraph {
            n,
            words,
            rows: vec![0; n * words],
            edges: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for v in 1..n {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    fn row(&self, v: Vertex) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Adds `uv`; returns false if it was already present. Panics on loops or
    /// out-of-range vertices.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n && v < self.n, "edge {u}-{v} out of range");
        if self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        self.edges += 1;
        true
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u == v || !self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
        self.edges -= 1;
        true
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        bits(self.row(v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().collect()
    }

    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Writes `u v` per line, 0-indexed.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    /// Reads the format produced by [`SimpleGraph::write_edge_list`]. Blank
    /// lines and lines starting with `#` are skipped.
    pub fn read_edge_list<R: BufRead>(n: usize, input: R) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::new(n);
        for (i, line) in input.lines().enumerate() {
            let line = line.map_err(|_| GraphError::Parse {
                line: i + 1,
                text: String::new(),
            })?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let bad = || GraphError::Parse {
                line: i + 1,
                text: line.clone(),
            };
            let mut it = t.split_whitespace().map(|s| s.parse::<usize>());
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => (u, v),
                _ => return Err(bad()),
            };
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u.max(v), n));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

/// True iff `g` is connected and every vertex is reached. Graphs on zero or
/// one vertex are trivially connected.
pub fn is_connected_spanning(g: &SimpleGraph) -> bool {
    if g.n <= 1 {
        return true;
    }
    let mut seen = vec![false; g.n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == g.n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hamiltonicity {
    Yes,
    No,
    /// The node-expansion budget ran out before the search finished.
    Unknown,
}

impl Hamiltonicity {
    pub fn is_yes(self) -> bool {
        self == Hamiltonicity::Yes
    }
}

pub const DEFAULT_HAMILTON_BUDGET: u64 = 100_000_000;

/// Exact Hamilton cycle search.
///
/// Anchors the cycle at a vertex of minimum degree and extends the path by
/// the neighbor with the fewest unvisited neighbors first (ties by index). Before the search the graph must have minimum degree 2, be
/// connected and have no cut vertex. At every node the search prunes when an
/// unvisited vertex has fewer than two usable neighbors or the unvisited part
/// cannot connect the path end back to vertex 0, and it follows forced moves.
pub fn has_hamilton_cycle(g: &SimpleGraph, budget: u64) -> Hamiltonicity {
    let n = g.n;
    if n < 3 {
        return Hamiltonicity::No;
    }
    if (0..n).any(|v| g.degree(v) < 2) || !is_connected_spanning(g) || has_cut_vertex(g) {
        return Hamiltonicity::No;
    }
    // relabel so the anchor is vertex 0
    let anchor = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 3");
    let relabel = |v: Vertex| match v {
        0 => anchor,
        v if v == anchor => 0,
        v => v,
    };
    let relabeled;
    let g = if anchor == 0 {
        g
    } else {
        relabeled = SimpleGraph::from_edges(n, g.edges().map(|(u, v)| (relabel(u), relabel(v))));
        &relabeled
    };
    let mut search = HamSearch {
        g,
        unvisited: vec![u64::MAX; g.words],
        budget,
        expanded: 0,
        scratch: vec![0; g.words],
        frontier: vec![0; g.words],
    };
    // clear padding bits past n and the anchor
    for v in n..g.words * 64 {
        search.unvisited[v / 64] &= !(1 << (v % 64));
    }
    search.unvisited[0] &= !1;
    match search.extend(0, n - 1) {
        Some(true) => Hamiltonicity::Yes,
        Some(false) => Hamiltonicity::No,
        None => Hamiltonicity::Unknown,
    }
}

struct HamSearch<'a> {
    g: &'a SimpleGraph,
    unvisited: Vec<u64>,
    budget: u64,
    expanded: u64,
    scratch: Vec<u64>,
    frontier: Vec<u64>,
}

impl HamSearch<'_> {
    #[inline]
    fn is_unvisited(&self, v: Vertex) -> bool {
        self.unvisited[v / 64] >> (v % 64) & 1 == 1
    }

    fn unvisited_degree(&self, v: Vertex) -> usize {
        self.g
            .row(v)
            .iter()
            .zip(&self.unvisited)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn set_unvisited(&mut self, v: Vertex, on: bool) {
        if on {
            self.unvisited[v / 64] |= 1 << (v % 64);
        } else {
            self.unvisited[v / 64] &= !(1 << (v % 64));
        }
    }

    /// Returns `Some(found)` or `None` when out of budget.
    fn extend(&mut self, end: Vertex, remaining: usize) -> Option<bool> {
        self.expanded += 1;
        if self.expanded > self.budget {
            return None;
        }
        if remaining == 0 {
            return Some(self.g.has_edge(end, 0));
        }
        let candidates = match self.prune(end, remaining) {
            Prune::Dead => return Some(false),
            Prune::Forced(v) => vec![v],
            Prune::Open => {
                let mut c: Vec<(usize, Vertex)> = bits(self.g.row(end))
                    .filter(|&v| self.is_unvisited(v))
                    .map(|v| (self.unvisited_degree(v), v))
                    .collect();
                c.sort_unstable();
                c.into_iter().map(|(_, v)| v).collect()
            }
        };
        for v in candidates {
            self.set_unvisited(v, false);
            let r = self.extend(v, remaining - 1);
            self.set_unvisited(v, true);
            match r {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }

    fn prune(&mut self, end: Vertex, remaining: usize) -> Prune {
        let g = self.g;
        let mut forced_next = None;
        let mut forced_last = 0usize;
        for i in 0..g.words {
            let mut w = self.unvisited[i];
            while w != 0 {
                let u = i * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                let row = g.row(u);
                let mut avail: usize = row
                    .iter()
                    .zip(&self.unvisited)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum();
                let to_end = g.has_edge(u, end);
                let to_anchor = end != 0 && g.has_edge(u, 0);
                avail += to_end as usize + to_anchor as usize;
                if avail < 2 {
                    return Prune::Dead;
                }
                // from the anchor itself a degree-2 neighbour may come first or last
                if avail == 2 && remaining > 1 && end != 0 {
                    if to_end {
                        if forced_next.is_some_and(|f| f != u) {
                            return Prune::Dead;
                        }
                        forced_next = Some(u);
                    }
                    if to_anchor {
                        forced_last += 1;
                        if forced_last > 1 {
                            return Prune::Dead;
                        }
                    }
                }
            }
        }
        // the unvisited vertices must form one piece reachable from `end`
        self.scratch.copy_from_slice(&self.unvisited);
        self.frontier.iter_mut().for_each(|w| *w = 0);
        for (i, w) in g.row(end).iter().enumerate() {
            self.frontier[i] = w & self.scratch[i];
            self.scratch[i] &= !self.frontier[i];
        }
        let mut reaches_anchor = false;
        loop {
            let mut next = None;
            for i in 0..g.words {
                if self.frontier[i] != 0 {
                    let b = self.frontier[i].trailing_zeros() as usize;
                    self.frontier[i] &= self.frontier[i] - 1;
                    next = Some(i * 64 + b);
                    break;
                }
            }
            let Some(u) = next else { break };
            if g.has_edge(u, 0) {
                reaches_anchor = true;
            }
            for (i, w) in g.row(u).iter().enumerate() {
                let add = w & self.scratch[i];
                self.frontier[i] |= add;
                self.scratch[i] &= !add;
            }
        }
        if self.scratch.iter().any(|&w| w != 0) || !reaches_anchor {
            return Prune::Dead;
        }
        match forced_next {
            Some(v) => Prune::Forced(v),
            None => Prune::Open,
        }
    }
}

enum Prune {
    Dead,
    Forced(Vertex),
    Open,
}

fn has_cut_vertex(g: &SimpleGraph) -> bool {
    // iterative Tarjan lowlink from vertex 0; assumes g connected
    let n = g.n;
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut root_children = 0;
    let mut time = 0;
    let mut stack: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    stack.push((0, g.neighbors(0).collect()));
    while let Some((u, pending)) = stack.last_mut() {
        let u = *u;
        if let Some(v) = pending.pop() {
            if disc[v] == usize::MAX {
                parent[v] = u;
                disc[v] = time;
                low[v] = time;
                time += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((v, g.neighbors(v).collect()));
            } else if v != parent[u] {
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if p != 0 && low[u] >= disc[p] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub degrees: Vec<(Vertex, usize)>,
}

/// Degrees of the vertices in `subset`; min and max are 0 for an empty subset.
pub fn degree_stats(g: &SimpleGraph, subset: &[Vertex]) -> DegreeStats {
    let degrees: Vec<(Vertex, usize)> = subset.iter().map(|&v| (v, g.degree(v))).collect();
    DegreeStats {
        min: degrees.iter().map(|d| d.1).min().unwrap_or(0),
        max: degrees.iter().map(|d| d.1).max().unwrap_or(0),
        degrees,
    }
}

/// `min_v d_sub(v) / d_super(v)` over vertices with positive degree in
/// `sup`. Returns 1 when `sup` has no edges.
pub fn min_degree_ratio(sub: &SimpleGraph, sup: &SimpleGraph) -> Result<Ratio<usize>, GraphError> {
    if sub.n != sup.n {
        return Err(GraphError::OrderMismatch(sub.n, sup.n));
    }
    if let Some((u, v)) = sub.edges().find(|&(u, v)| !sup.has_edge(u, v)) {
        return Err(GraphError::NotSubgraph(u, v));
    }
    let mut best = Ratio::from_integer(1);
    for v in 0..sup.n {
        let d = sup.degree(v);
        if d > 0 {
            best = best.min(Ratio::new(sub.degree(v), d));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::from_edges(10, edges)
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected_spanning(&SimpleGraph::path(7)));
        assert!(is_connected_spanning(&SimpleGraph::new(1)));
        let mut g = SimpleGraph::path(5);
        g.remove_edge(3, 4);
        assert!(!is_connected_spanning(&g));
        let triangles = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!is_connected_spanning(&triangles));
    }

    #[test]
    fn hamilton_examples() {
        assert_eq!(has_hamilton_cycle(&SimpleGraph::cycle(5), 1000), Hamiltonicity::Yes);
        let star = SimpleGraph::from_edges(5, (1..5).map(|v| (0, v)));
        assert_eq!(has_hamilton_cycle(&star, 1000), Hamiltonicity::No);
        assert_eq!(
            has_hamilton_cycle(&petersen(), DEFAULT_HAMILTON_BUDGET),
            Hamiltonicity::No
        );
        assert_eq!(has_hamilton_cycle(&SimpleGraph::complete(40), 1000), Hamiltonicity::Yes);
        // K_{3,4} is bipartite with unequal sides
        let k34 = SimpleGraph::from_edges(7, (0..3).flat_map(|u| (3..7).map(move |v| (u, v))));
        assert_eq!(has_hamilton_cycle(&k34, 1_000_000), Hamiltonicity::No);
    }

    #[test]
    fn petersen_minus_vertex_is_hamiltonian() {
        // the Petersen graph is hypohamiltonian
        let p = petersen();
        for drop in 0..10 {
            let map = |v: usize| if v > drop { v - 1 } else { v };
            let g = SimpleGraph::from_edges(
                9,
                p.edges()
                    .filter(|&(u, v)| u != drop && v != drop)
                    .map(|(u, v)| (map(u), map(v))),
            );
            assert!(has_hamilton_cycle(&g, 1_000_000).is_yes());
        }
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        assert_eq!(has_hamilton_cycle(&petersen(), 1), Hamiltonicity::Unknown);
    }

    #[test]
    fn cut_vertex_detection() {
        // two triangles sharing vertex 2
        let bowtie = SimpleGraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert!(has_cut_vertex(&bowtie));
        assert!(!has_cut_vertex(&SimpleGraph::cycle(6)));
        assert_eq!(has_hamilton_cycle(&bowtie, 1000), Hamiltonicity::No);
    }

    #[test]
    fn degree_stats_examples() {
        let k4 = SimpleGraph::complete(4);
        let s = degree_stats(&k4, &[0, 1, 2, 3]);
        assert_eq!((s.min, s.max), (3, 3));
        let empty = degree_stats(&SimpleGraph::new(4), &[0, 1, 2, 3]);
        assert_eq!((empty.min, empty.max), (0, 0));
        let p = degree_stats(&SimpleGraph::path(3), &[1]);
        assert_eq!((p.min, p.max), (2, 2));
    }

    #[test]
    fn min_degree_ratio_examples() {
        let c4 = SimpleGraph::cycle(4);
        assert_eq!(min_degree_ratio(&c4, &c4), Ok(Ratio::from_integer(1)));
        assert_eq!(min_degree_ratio(&SimpleGraph::new(4), &c4), Ok(Ratio::from_integer(0)));
        let one = SimpleGraph::from_edges(4, [(0, 1)]);
        assert_eq!(min_degree_ratio(&one, &c4), Ok(Ratio::from_integer(0)));
        // restricted to the endpoints, the ratio is 1/2
        let r = Ratio::new(one.degree(0), c4.degree(0));
        assert_eq!(r, Ratio::new(1, 2));
        let not_sub = SimpleGraph::from_edges(4, [(0, 2)]);
        assert_eq!(min_degree_ratio(&not_sub, &c4), Err(GraphError::NotSubgraph(0, 2)));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = petersen();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let back = SimpleGraph::read_edge_list(10, &buf[..]).unwrap();
        assert_eq!(g, back);
        assert!(SimpleGraph::read_edge_list(3, &b"0 7\n"[..]).is_err());
        assert!(SimpleGraph::read_edge_list(3, &b"0 x\n"[..]).is_err());
    }

    #[test]
    fn multiword_rows() {
        let mut g = SimpleGraph::cycle(150);
        assert!(has_hamilton_cycle(&g, 10_000).is_yes());
        g.remove_edge(70, 71);
        assert_eq!(has_hamilton_cycle(&g, 10_000), Hamiltonicity::No);
        assert_eq!(g.degree(70), 1);
        assert_eq!(g.neighbors(149).collect::<Vec<_>>(), vec![0, 148]);
    }
}
