//! Undirected simple graphs on at most 24 vertices, with the exact
//! combinatorics the norm layer consumes: maximal cliques and stable sets,
//! clique and chromatic numbers, and exhaustive perfectness checking.
//!
//! Everything is deterministic. Clique and stable-set enumerations are
//! returned in ascending bitset order, and `is_perfect` reports the first
//! violating vertex set in ascending mask order.

use serde::{Deserialize, Serialize};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Largest vertex count for which `is_perfect` runs the exhaustive scan.
pub const PERFECTNESS_LIMIT: usize = 12;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

/// On-disk form: `{"n": 3, "edges": [[0,1],[1,2]]}`, vertices 0-based.
#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let mut adj = vec![0u32; n];
        for &(i, j) in edges {
            if i >= n {
                return Err(Error::VertexOutOfRange { index: i, n });
            }
            if j >= n {
                return Err(Error::VertexOutOfRange { index: j, n });
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Graph { n, adj })
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges)
    }

    /// Cycle `0 − 1 − … − (n−1) − 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i] & (1 << j) != 0
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask(self.adj[v])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).mask();
        let adj = (0..self.n)
            .map(|i| full & !self.adj[i] & !(1 << i))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph on `s`, relabeled to `0..s.len()`, together with the
    /// map from new indices back to the original vertices.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let old: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        if old.len() != s.len() {
            return Err(Error::VertexOutOfRange {
                index: s.iter().max().unwrap(),
                n: self.n,
            });
        }
        let mut edges = Vec::new();
        for (a, &i) in old.iter().enumerate() {
            for (b, &j) in old.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    edges.push((a, b));
                }
            }
        }
        Ok((Graph::new(old.len(), &edges)?, old))
    }

    /// All inclusion-maximal cliques, each exactly once, in ascending bitset
    /// order. Bron–Kerbosch with max-degree pivoting on word-sized bitsets.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        bron_kerbosch(
            &self.adj,
            0,
            VertexSet::full(self.n).mask(),
            0,
            &mut out,
        );
        out.sort_unstable();
        out.into_iter().map(VertexSet::from_mask).collect()
    }

    /// Maximal stable sets = maximal cliques of the complement, same order.
    pub fn maximal_stable_sets(&self) -> Vec<VertexSet> {
        self.complement().maximal_cliques()
    }

    /// Largest cardinality over the maximal cliques.
    pub fn clique_number(&self) -> usize {
        self.maximal_cliques()
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(0)
    }

    /// Exact chromatic number by branch and bound: greedy upper bound, clique
    /// lower bound, colors tried in index order so ties always resolve the
    /// same way.
    pub fn chromatic_number(&self) -> usize {
        chromatic_within(&self.adj, VertexSet::full(self.n).mask())
    }

    /// Exhaustive perfectness check: every nonempty induced subgraph must
    /// have equal clique and chromatic numbers. Clique and chromatic numbers
    /// of all 2^n subsets are computed by dynamic programming over masks, and
    /// subsets are scanned in ascending mask order so the reported witness is
    /// canonical. Limited to n <= 12.
    pub fn is_perfect(&self) -> Result<PerfectnessReport> {
        if self.n > PERFECTNESS_LIMIT {
            return Err(Error::PerfectnessLimit {
                n: self.n,
                limit: PERFECTNESS_LIMIT,
            });
        }
        let omega = clique_numbers_all_masks(&self.adj);
        let chi = chromatic_numbers_all_masks(&self.adj);
        for mask in 1..(1u32 << self.n) {
            if omega[mask as usize] != chi[mask as usize] {
                return Ok(PerfectnessReport {
                    perfect: false,
                    witness: Some(VertexSet::from_mask(mask)),
                });
            }
        }
        Ok(PerfectnessReport {
            perfect: true,
            witness: None,
        })
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        Graph::new(json.n, &json.edges)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectnessReport {
    pub perfect: bool,
    /// Vertex set whose induced subgraph has clique number < chromatic
    /// number, when one exists.
    pub witness: Option<VertexSet>,
}

fn bron_kerbosch(adj: &[u32], r: u32, p: u32, x: u32, out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot = vertex of p ∪ x with the most candidates among its neighbors
    let mut pivot = usize::MAX;
    let mut best = -1i32;
    let mut scan = p | x;
    while scan != 0 {
        let u = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let c = (p & adj[u]).count_ones() as i32;
        if c > best {
            best = c;
            pivot = u;
        }
    }
    let mut cand = p & !adj[pivot];
    let mut p = p;
    let mut x = x;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u32 << v;
        cand &= cand - 1;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Clique numbers of every induced subgraph at once:
/// `ω(S) = max(ω(S∖v), 1 + ω(S ∩ N(v)))` for the lowest vertex `v` of `S`.
fn clique_numbers_all_masks(adj: &[u32]) -> Vec<u8> {
    let n = adj.len();
    let mut omega = vec![0u8; 1 << n];
    for mask in 1..(1u32 << n) {
        let v = mask.trailing_zeros() as usize;
        let without = mask & (mask - 1);
        let with = 1 + omega[(mask & adj[v]) as usize];
        omega[mask as usize] = omega[without as usize].max(with);
    }
    omega
}

/// Chromatic numbers of every induced subgraph: the color class of the
/// lowest vertex is some independent set containing it, so
/// `χ(S) = 1 + min over independent T ∋ v, T ⊆ S of χ(S∖T)`.
fn chromatic_numbers_all_masks(adj: &[u32]) -> Vec<u8> {
    let n = adj.len();
    let mut chi = vec![0u8; 1 << n];
    for mask in 1..(1u32 << n) {
        let v = mask.trailing_zeros() as usize;
        let candidates = mask & !adj[v] & (mask - 1); // rest of S, nonadjacent to v
        let mut best = u8::MAX;
        // enumerate subsets of `candidates`, keep the independent ones
        let mut sub = candidates;
        loop {
            let class_rest = sub;
            let mut independent = true;
            let mut t = class_rest;
            while t != 0 {
                let u = t.trailing_zeros() as usize;
                t &= t - 1;
                if adj[u] & class_rest != 0 {
                    independent = false;
                    break;
                }
            }
            if independent {
                let rest = mask & !(class_rest | (1 << v));
                best = best.min(1 + chi[rest as usize]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & candidates;
        }
        chi[mask as usize] = best;
    }
    chi
}

/// Exact chromatic number of the subgraph induced by `mask`, by branch and
/// bound with a greedy upper bound and a greedy clique lower bound.
fn chromatic_within(adj: &[u32], mask: u32) -> usize {
    if mask == 0 {
        return 0;
    }
    let verts: Vec<usize> = VertexSet::from_mask(mask).iter().collect();

    // greedy upper bound, vertices in index order
    let mut colors = vec![usize::MAX; adj.len()];
    let mut greedy = 0;
    for &v in &verts {
        let mut used = 0u32;
        let mut nb = adj[v] & mask;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if colors[u] != usize::MAX {
                used |= 1 << colors[u];
            }
        }
        let c = (!used).trailing_zeros() as usize;
        colors[v] = c;
        greedy = greedy.max(c + 1);
    }

    // greedy clique from the lowest vertex as a lower bound
    let mut clique = 0u32;
    let mut cand = mask;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        clique |= 1 << v;
        cand &= adj[v];
    }
    let lower = clique.count_ones() as usize;
    if lower == greedy {
        return greedy;
    }

    let mut best = greedy;
    let mut assigned = vec![usize::MAX; adj.len()];
    branch_color(adj, &verts, 0, 0, &mut assigned, &mut best, lower);
    best
}

fn branch_color(
    adj: &[u32],
    verts: &[usize],
    idx: usize,
    used: usize,
    assigned: &mut [usize],
    best: &mut usize,
    lower: usize,
) {
    if used >= *best {
        return;
    }
    if idx == verts.len() {
        *best = used;
        return;
    }
    if *best == lower {
        return;
    }
    let v = verts[idx];
    let mut forbidden = 0u32;
    let mut nb = adj[v];
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if assigned[u] != usize::MAX {
            forbidden |= 1 << assigned[u];
        }
    }
    let limit = (used + 1).min(*best - 1);
    for c in 0..limit {
        if forbidden & (1 << c) != 0 {
            continue;
        }
        assigned[v] = c;
        branch_color(adj, verts, idx + 1, used.max(c + 1), assigned, best, lower);
        assigned[v] = usize::MAX;
        if *best == lower {
            return;
        }
    }
}

/// Number of vertex pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// The fixed pair order used by [`graph_with_edge_mask`]: `(0,1), (0,2), …,
/// (0,n−1), (1,2), …`.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Graph on `n` vertices whose edge set is selected by `mask` over the fixed
/// pair order. Masks `0..2^C(n,2)` enumerate every labeled graph exactly
/// once.
pub fn graph_with_edge_mask(n: usize, mask: u64, pairs: &[(usize, usize)]) -> Graph {
    let mut adj = vec![0u32; n];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        if mask & (1 << p) != 0 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    Graph { n, adj }
}
