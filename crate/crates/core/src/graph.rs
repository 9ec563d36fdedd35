//! Small simple graphs stored as adjacency bitmasks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;

/// Simple undirected graph on vertices `0..n`, `n <= 16`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<u16>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 16, "graphs are limited to 16 vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        let full = mask(n);
        for v in 0..n {
            g.adj[v] = full & !(1 << v);
        }
        g
    }

    /// Vertices are positions (rooks) of `w`; `{i, j}` is an edge iff the pair is an inversion.
    pub fn inversion_graph(w: &Permutation) -> Self {
        let mut g = Graph::empty(w.n());
        for (i, j) in w.inversions() {
            g.add_edge(i - 1, j - 1);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b && a < self.n && b < self.n);
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// `G / {a, b}`: identifies `b` with `a`, drops loops and parallel edges,
    /// and removes vertex `b` (later vertices shift down by one).
    pub fn contract(&self, a: usize, b: usize) -> Graph {
        let merged = (self.adj[a] | self.adj[b]) & !(1 << a) & !(1 << b);
        let mut adj = self.adj.clone();
        adj[a] = merged;
        for v in 0..self.n {
            if v != a && v != b && merged >> v & 1 == 1 {
                adj[v] |= 1 << a;
            }
        }
        let mut g = Graph { n: self.n, adj };
        g.delete_vertex(b);
        g
    }

    /// Removes vertex `v`, shifting later vertices down.
    pub fn delete_vertex(&mut self, v: usize) {
        self.adj.remove(v);
        self.n -= 1;
        let low = (1u32 << v) - 1;
        for a in self.adj.iter_mut() {
            let bits = *a as u32;
            *a = ((bits & low) | ((bits >> 1) & !low)) as u16;
        }
    }

    /// The subgraph induced on the vertices in `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: u16) -> Graph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| keep >> v & 1 == 1).collect();
        let mut g = Graph::empty(verts.len());
        for (x, &a) in verts.iter().enumerate() {
            for (y, &b) in verts.iter().enumerate().skip(x + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }

    /// Vertex masks of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u16> {
        let mut seen = 0u16;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u16 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Relabels vertices so that `order[k]` becomes vertex `k`.
    pub fn relabel(&self, order: &[usize]) -> Graph {
        let mut pos = vec![0usize; self.n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let mut adj = vec![0u16; self.n];
        for (k, &v) in order.iter().enumerate() {
            let mut bits = self.adj[v];
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                adj[k] |= 1 << pos[u];
            }
        }
        Graph { n: self.n, adj }
    }
}

#[inline]
pub(crate) fn mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
