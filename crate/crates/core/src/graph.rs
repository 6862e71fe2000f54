//! Plain undirected simple graphs on vertices `0..n`.

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adjacency: vec![Vec::new(); n],
            matrix: vec![false; n * n],
        }
    }

    /// Rejects loops and out-of-range endpoints; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = SimpleGraph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Format(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Format(format!("loop at vertex {u}")));
            }
            g.matrix[u * n + v] = true;
            g.matrix[v * n + u] = true;
        }
        g.rebuild_lists();
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SimpleGraph::from_edges(n, edges).expect("valid")
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        SimpleGraph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid")
    }

    fn rebuild_lists(&mut self) {
        let n = self.n;
        self.adjacency = (0..n)
            .map(|u| (0..n).filter(|&v| self.matrix[u * n + v]).collect())
            .collect();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adjacency[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.n;
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SimpleGraph::from_edges(n, edges.filter(|&(u, v)| !self.has_edge(u, v))).expect("valid")
    }

    /// First edge `{u, v}` whose image under `p` is not an edge, if any.
    /// A permutation mapping every edge to an edge is an automorphism.
    pub fn first_broken_edge(&self, p: &Permutation) -> Option<(usize, usize)> {
        if p.degree() != self.n {
            return Some((0, 0));
        }
        (0..self.n).find_map(|u| {
            self.adjacency[u]
                .iter()
                .find(|&&v| u < v && !self.has_edge(p.apply(u), p.apply(v)))
                .map(|&v| (u, v))
        })
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.first_broken_edge(p).is_none()
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }
}
