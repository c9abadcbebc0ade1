//! The directed graph on the p-Frattini quotient whose edges witness
//! nonvanishing reduced transfers, together with its reduction, the p = 2
//! auxiliary graph, cycle detection, longest paths, the T_n layering, and
//! a deterministic DOT emitter.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::transfer::{analyze_transfers, h_components, TransferAnalysis};

/// Vertices are all of F_p^d, ordered lexicographically; the encoding is
/// the base-p big-endian value of the coordinate vector, so the identity
/// is vertex 0.
pub fn encode_vertex(coords: &[u32], p: u32) -> usize {
    coords
        .iter()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

pub fn decode_vertex(v: usize, p: u32, dim: usize) -> Vec<u32> {
    let mut coords = vec![0u32; dim];
    let mut v = v;
    for d in (0..dim).rev() {
        coords[d] = (v % p as usize) as u32;
        v /= p as usize;
    }
    coords
}

fn add_vertices(a: usize, b: usize, p: u32, dim: usize) -> usize {
    let (ca, cb) = (decode_vertex(a, p, dim), decode_vertex(b, p, dim));
    let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
    encode_vertex(&sum, p)
}

/// Length of a longest directed path; infinite when the graph has a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathLength {
    Finite(usize),
    Infinite,
}

impl PathLength {
    pub fn finite(&self) -> Option<usize> {
        match self {
            PathLength::Finite(n) => Some(*n),
            PathLength::Infinite => None,
        }
    }
}

/// The T_n layering: T_0 is every vertex, T_{n+1} the set of edge targets
/// reachable from T_n. On a DAG this descends to the empty set; with a
/// cycle it stabilizes on a nonempty core.
#[derive(Clone, Debug)]
pub struct Layering {
    pub sets: Vec<BTreeSet<usize>>,
    pub stabilized_nonempty: bool,
}

impl Layering {
    /// T_n, with the stabilized tail extended indefinitely.
    pub fn set(&self, n: usize) -> &BTreeSet<usize> {
        self.sets
            .get(n)
            .unwrap_or_else(|| self.sets.last().expect("nonempty"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGraph {
    prime: u32,
    dim: usize,
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    h_dims: Vec<usize>,
}

/// Build the graph for a group at a prime: one pass over the reduced
/// transfers of all conjugacy-class representatives.
pub fn build_gamma(g: &Group, p: u32) -> Result<GammaGraph> {
    Ok(gamma_from_transfers(&analyze_transfers(g, p)?))
}

pub fn gamma_from_transfers(ta: &TransferAnalysis) -> GammaGraph {
    let p = ta.fq.prime;
    let dim = ta.fq.dim();
    let vertex_count = (p as usize).pow(dim as u32);
    let mut edges = BTreeSet::new();
    for rt in &ta.transfers {
        if rt.matrix.is_zero() {
            continue;
        }
        let src = encode_vertex(&rt.source_vertex, p);
        for b in 0..vertex_count {
            let coords = decode_vertex(b, p, dim);
            if !crate::fp::is_zero_vec(&rt.matrix.mul_vec(&coords)) {
                edges.insert((src, b));
            }
        }
    }
    let h_dims = h_components(ta).iter().map(|c| c.space.dim()).collect();
    GammaGraph {
        prime: p,
        dim,
        vertex_count,
        edges,
        h_dims,
    }
}

impl GammaGraph {
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn h_dims(&self) -> &[usize] {
        &self.h_dims
    }

    /// Vertices carrying a length-1 cycle.
    pub fn loops(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.has_edge(v, v))
            .collect()
    }

    /// Keep an edge exactly when the target component h_b is nonzero.
    pub fn reduce(&self) -> GammaGraph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(_, b)| self.h_dims[b] > 0)
            .collect();
        GammaGraph {
            edges,
            h_dims: self.h_dims.clone(),
            ..*self
        }
    }

    /// The p = 2 auxiliary graph: an edge a -> b needs the two distinct
    /// witness edges a -> b and a -> a+b; those coincide only at a = e,
    /// so the identity vertex contributes nothing.
    pub fn gamma2(&self) -> Result<GammaGraph> {
        if self.prime != 2 {
            return Err(Error::GammaTwoRequiresPTwo { p: self.prime });
        }
        let mut edges = BTreeSet::new();
        for a in 1..self.vertex_count {
            for b in 0..self.vertex_count {
                let ab = add_vertices(a, b, self.prime, self.dim);
                if self.has_edge(a, b) && self.has_edge(a, ab) {
                    edges.insert((a, b));
                }
            }
        }
        Ok(GammaGraph {
            edges,
            h_dims: self.h_dims.clone(),
            ..*self
        })
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
        }
        adj
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[b].push(a);
        }
        adj
    }

    /// A shortest directed cycle as a vertex list (a loop is `[v]`), or
    /// None when acyclic. Ties break toward the lexicographically smallest
    /// starting vertex.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let succ = self.successors();
        let pred = self.predecessors();
        let mut best: Option<Vec<usize>> = None;
        for start in 0..self.vertex_count {
            if pred[start].is_empty() {
                continue;
            }
            // BFS out of `start`; a cycle through it closes over an
            // incoming edge (u, start)
            let mut dist = vec![usize::MAX; self.vertex_count];
            let mut parent = vec![usize::MAX; self.vertex_count];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &succ[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            let closing = pred[start]
                .iter()
                .copied()
                .filter(|&u| dist[u] != usize::MAX)
                .min_by_key(|&u| (dist[u], u));
            if let Some(u) = closing {
                let len = dist[u] + 1;
                if best.as_ref().is_none_or(|b| len < b.len()) {
                    let mut path = Vec::with_capacity(len);
                    let mut cur = u;
                    while cur != start {
                        path.push(cur);
                        cur = parent[cur];
                    }
                    path.push(start);
                    path.reverse();
                    best = Some(path);
                    if len == 1 {
                        break;
                    }
                }
            }
        }
        best
    }

    /// Longest directed path length (in edges) via topological order.
    pub fn longest_path(&self) -> PathLength {
        let succ = self.successors();
        let mut indegree = vec![0usize; self.vertex_count];
        for &(_, b) in &self.edges {
            indegree[b] += 1;
        }
        let mut order = Vec::with_capacity(self.vertex_count);
        let mut stack: Vec<usize> = (0..self.vertex_count)
            .filter(|&v| indegree[v] == 0)
            .collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() != self.vertex_count {
            return PathLength::Infinite;
        }
        let mut longest = vec![0usize; self.vertex_count];
        let mut best = 0;
        for &v in &order {
            for &w in &succ[v] {
                longest[w] = longest[w].max(longest[v] + 1);
                best = best.max(longest[w]);
            }
        }
        PathLength::Finite(best)
    }

    /// Iterate T_{n+1} = targets of edges out of T_n until the sequence
    /// stabilizes.
    pub fn layering(&self) -> Layering {
        let succ = self.successors();
        let mut sets: Vec<BTreeSet<usize>> = vec![(0..self.vertex_count).collect()];
        loop {
            let cur = sets.last().expect("nonempty");
            let next: BTreeSet<usize> = cur.iter().flat_map(|&v| succ[v].iter().copied()).collect();
            if &next == cur {
                let stabilized_nonempty = !next.is_empty();
                return Layering {
                    sets,
                    stabilized_nonempty,
                };
            }
            sets.push(next);
        }
    }

    /// Multiplicative word in the basis symbols g1..gd, or "e".
    pub fn vertex_label(&self, v: usize) -> String {
        let coords = decode_vertex(v, self.prime, self.dim);
        let parts: Vec<String> = coords
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(k, &c)| {
                if c == 1 {
                    format!("g{}", k + 1)
                } else {
                    format!("g{}^{}", k + 1, c)
                }
            })
            .collect();
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Deterministic DOT output: every vertex listed in index order, then
    /// edges in lexicographic order of their endpoint coordinates.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for v in 0..self.vertex_count {
            out.push_str(&format!("  \"{}\";\n", self.vertex_label(v)));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.vertex_label(a),
                self.vertex_label(b)
            ));
        }
        out.push_str("}\n");
        out
    }
}
