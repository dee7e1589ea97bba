//! Dense undirected simple graphs stored as adjacency bit rows.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::PermutationMap;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 256;

/// Simple undirected graph on vertices `0..order`.
///
/// Row `x` is a bitset of the neighbours of `x`, packed into `stride`
/// 64-bit words. The matrix is kept symmetric with a zero diagonal; every
/// public constructor upholds this and values are immutable afterwards.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    order: usize,
    stride: usize,
    bits: Vec<u64>,
}

pub(crate) fn words_for(order: usize) -> usize {
    order.div_ceil(64).max(1)
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Graph> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Order(order));
        }
        let stride = words_for(order);
        Ok(Graph { order, stride, bits: vec![0; order * stride] })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on `x < y`.
    pub fn from_fn(order: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Graph> {
        let mut g = Graph::empty(order)?;
        for x in 0..order {
            for y in x + 1..order {
                if adjacent(x, y) {
                    g.set_edge(x, y, true);
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from rows of a 0/1 matrix, rejecting asymmetry and loops.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Graph> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Precondition(format!(
                    "row {x} has length {} in a {n}x{n} matrix",
                    row.len()
                )));
            }
            if row[x] {
                return Err(Error::SelfLoop(x));
            }
            for y in x + 1..n {
                if row[y] != rows[y][x] {
                    return Err(Error::Precondition(format!("matrix not symmetric at ({x}, {y})")));
                }
                if row[y] {
                    g.set_edge(x, y, true);
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order })
        } else {
            Ok(())
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        debug_assert!(u != v);
        let (su, sv) = (u * self.stride, v * self.stride);
        if on {
            self.bits[su + v / 64] |= 1 << (v % 64);
            self.bits[sv + u / 64] |= 1 << (u % 64);
        } else {
            self.bits[su + v / 64] &= !(1 << (v % 64));
            self.bits[sv + u / 64] &= !(1 << (u % 64));
        }
    }

    pub(crate) fn toggle_edge(&mut self, u: usize, v: usize) {
        let on = !self.has_edge(u, v);
        self.set_edge(u, v, on);
    }

    /// Neighbour bitset of `x`.
    pub fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.stride..(x + 1) * self.stride]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, x: usize) -> usize {
        self.row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(x))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|x| self.degree(x)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of common neighbours of two distinct vertices.
    pub fn common_neighbors(&self, x: usize, y: usize) -> Result<usize> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::SameVertex(x));
        }
        Ok(self.common_count(x, y))
    }

    /// `|N(x) ∩ N(y)|` without argument checks.
    pub fn common_count(&self, x: usize, y: usize) -> usize {
        self.row(x).iter().zip(self.row(y)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Degrees in ascending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order).map(|x| self.degree(x)).collect();
        d.sort_unstable();
        d
    }

    /// The valency if every vertex has the same degree.
    pub fn regular_valency(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.order).all(|x| self.degree(x) == k).then_some(k)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`. Returns the subgraph and the map from
    /// new vertex index to original vertex (ascending).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::EmptySet);
        }
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let h = Graph::from_fn(keep.len(), |i, j| self.has_edge(keep[i], keep[j]))?;
        Ok((h, keep))
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.order, |x, y| !self.has_edge(x, y)).expect("same order")
    }

    /// Relabels vertex `x` as `perm.apply(x)`.
    pub fn permuted(&self, perm: &PermutationMap) -> Graph {
        assert_eq!(perm.len(), self.order, "permutation size mismatch");
        let mut g = Graph::empty(self.order).expect("same order");
        for (u, v) in self.edges() {
            g.set_edge(perm.apply(u), perm.apply(v), true);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order;
        let mut g = Graph::empty(n + other.order)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(n + u, n + v, true);
        }
        Ok(g)
    }

    /// Complements every pair `{x, y}` with `x` in `a` and `y` in `b`
    /// (`a` and `b` disjoint).
    pub(crate) fn complement_between(&mut self, a: &[usize], b: &[usize]) {
        for &x in a {
            for &y in b {
                self.toggle_edge(x, y);
            }
        }
    }

    /// Verifies the adjacency invariants (symmetry, zero diagonal, no bits
    /// past `order`).
    pub fn check_invariants(&self) -> bool {
        for x in 0..self.order {
            if self.has_edge(x, x) {
                return false;
            }
            for y in 0..self.order {
                if self.has_edge(x, y) != self.has_edge(y, x) {
                    return false;
                }
            }
            let tail = self.order % 64;
            if tail != 0 && self.row(x)[self.stride - 1] >> tail != 0 {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {})", self.order, crate::graph6::encode(self))
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_duplicates() {
        let t = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.regular_valency(), Some(2));
        let d = Graph::from_edges(4, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(d.edge_count(), 1);
        let e = Graph::from_edges(2, &[]).unwrap();
        assert_eq!(e.degree_sequence(), vec![0, 0]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, order: 3 }));
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(257).is_err());
        assert!(Graph::empty(256).is_ok());
    }

    #[test]
    fn common_neighbors_and_degrees() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degree_sequence(), vec![1, 1, 2]);
        assert_eq!(p3.regular_valency(), None);
        assert_eq!(p3.common_neighbors(0, 2), Ok(1));
        assert_eq!(p3.common_neighbors(0, 0), Err(Error::SameVertex(0)));
        let e = Graph::empty(4).unwrap();
        assert_eq!(e.common_neighbors(1, 3), Ok(0));
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let e = Graph::empty(4).unwrap();
        assert_eq!(e.connected_components().len(), 4);
    }

    #[test]
    fn induced() {
        let t = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let (h, map) = t.induced_subgraph(&[2, 0]).unwrap();
        assert_eq!(map, vec![0, 2]);
        assert_eq!(h.edge_count(), 1);
        let (one, _) = t.induced_subgraph(&[1]).unwrap();
        assert_eq!((one.order(), one.edge_count()), (1, 0));
        assert_eq!(t.induced_subgraph(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn large_rows_stay_consistent() {
        let g = Graph::from_fn(200, |x, y| (x * 7 + y * 3) % 5 == 0).unwrap();
        assert!(g.check_invariants());
        assert!(g.complement().check_invariants());
        assert_eq!(g.edge_count() + g.complement().edge_count(), 200 * 199 / 2);
    }
}
