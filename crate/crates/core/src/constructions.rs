//! Lattice, Hadamard and switching constructions.
//!
//! Vertex conventions: the lattice vertex `(i, j)` (row `i < 4`, column
//! `j < n`) is `i·n + j`, and block constructions use the same layout with
//! class `i` occupying `i·n .. (i+1)·n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{PermutationMap, VertexPartition};

pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("complete bipartite sides must be nonempty".into()));
    }
    Graph::from_fn(m + n, |x, y| x < m && y >= m)
}

/// Vertices are the edges of `g` in [`Graph::edges`] order.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return Err(Error::EmptySet);
    }
    Graph::from_fn(edges.len(), |i, j| {
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        a == c || a == d || b == c || b == d
    })
}

/// The 4×n lattice with its row partition.
pub fn lattice4(n: usize) -> Result<(Graph, VertexPartition)> {
    if n == 0 {
        return Err(Error::Precondition("lattice needs n ≥ 1".into()));
    }
    let g = Graph::from_fn(4 * n, |x, y| (x / n == y / n) != (x % n == y % n))?;
    Ok((g, VertexPartition::blocks(4, n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Seed {
    First,
    Second,
}

/// Square ±1 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HadamardMatrix {
    pub entries: Vec<Vec<i8>>,
}

impl HadamardMatrix {
    pub fn new(entries: Vec<Vec<i8>>) -> Result<HadamardMatrix> {
        let m = entries.len();
        if m == 0 || entries.iter().any(|r| r.len() != m || r.iter().any(|&e| e != 1 && e != -1)) {
            return Err(Error::Precondition("expected a square ±1 matrix".into()));
        }
        Ok(HadamardMatrix { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    /// `H·Hᵀ = m·I`.
    pub fn is_hadamard(&self) -> bool {
        let m = self.order();
        (0..m).all(|i| {
            (0..m).all(|j| {
                let dot: i64 = (0..m).map(|l| (self.entries[i][l] * self.entries[j][l]) as i64).sum();
                dot == if i == j { m as i64 } else { 0 }
            })
        })
    }

    /// Symmetric with diagonal `-1`.
    pub fn is_graphical(&self) -> bool {
        let m = self.order();
        (0..m).all(|i| self.entries[i][i] == -1 && (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.iter().map(|r| r.iter().map(|&e| e as i64).sum()).collect()
    }

    pub fn is_regular(&self) -> bool {
        let rs = self.row_sums();
        let m = self.order();
        let cs: Vec<i64> = (0..m).map(|j| self.entries.iter().map(|r| r[j] as i64).sum()).collect();
        rs.iter().chain(&cs).all(|&s| s == rs[0])
    }
}

pub fn hadamard_seed(which: Seed) -> HadamardMatrix {
    let rows: [[i8; 4]; 4] = match which {
        Seed::First => [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]],
        Seed::Second => [[-1, 1, -1, -1], [1, -1, -1, -1], [-1, -1, -1, 1], [-1, -1, 1, -1]],
    };
    HadamardMatrix { entries: rows.iter().map(|r| r.to_vec()).collect() }
}

/// Block matrix with `-1 ↦ J-I` and `+1 ↦ I`.
pub fn hadamard_ddg(h: &HadamardMatrix, n: usize) -> Result<(Graph, VertexPartition)> {
    if !h.is_graphical() {
        return Err(Error::Precondition("Hadamard matrix is not graphical".into()));
    }
    if n < 2 {
        return Err(Error::Precondition("block size n must be at least 2".into()));
    }
    let m = h.order();
    let g = Graph::from_fn(m * n, |x, y| {
        let (bi, bj) = (x / n, y / n);
        let same = x % n == y % n;
        if h.entries[bi][bj] == -1 {
            !same
        } else {
            same
        }
    })?;
    debug_assert!(g.check_invariants());
    Ok((g, VertexPartition::blocks(m, n)))
}

/// Complements every pair with exactly one end in `s`.
pub fn seidel_switch(g: &Graph, s: &[usize]) -> Result<Graph> {
    let mut inside = vec![false; g.order()];
    for &v in s {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: g.order() });
        }
        inside[v] = true;
    }
    let a: Vec<usize> = (0..g.order()).filter(|&v| inside[v]).collect();
    let b: Vec<usize> = (0..g.order()).filter(|&v| !inside[v]).collect();
    let mut out = g.clone();
    out.complement_between(&a, &b);
    Ok(out)
}

/// Checks that `phi` is a non-identity involutive automorphism swapping
/// only non-adjacent vertices.
pub fn check_seidel_automorphism(g: &Graph, phi: &PermutationMap) -> Result<()> {
    if phi.len() != g.order() {
        return Err(Error::Permutation(format!("size {} for a graph of order {}", phi.len(), g.order())));
    }
    if phi.is_identity() {
        return Err(Error::Precondition("the permutation must not be the identity".into()));
    }
    for x in 0..g.order() {
        let y = phi.apply(x);
        if phi.apply(y) != x {
            return Err(Error::Permutation(format!("not an involution at {x}")));
        }
        if x != y && g.has_edge(x, y) {
            return Err(Error::NotSeidel(x, y));
        }
    }
    for (x, y) in g.edges() {
        if !g.has_edge(phi.apply(x), phi.apply(y)) {
            return Err(Error::NotSeidel(x, y));
        }
    }
    Ok(())
}

/// Adjacency `P·M`: `x ~ y` in the result iff `φ(x) ~ y` in `g`.
fn permute_rows(g: &Graph, phi: &PermutationMap) -> Result<Graph> {
    let n = g.order();
    let mut rows = vec![vec![false; n]; n];
    for (x, row) in rows.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = g.has_edge(phi.apply(x), y);
        }
    }
    Graph::from_matrix(&rows).map_err(|e| Error::Construction(e.to_string()))
}

pub fn dual_seidel(g: &Graph, phi: &PermutationMap) -> Result<Graph> {
    check_seidel_automorphism(g, phi)?;
    permute_rows(g, phi)
}

/// Replaces the block of the induced subgraph on `h_vertices` by `P₁₁M₁₁`.
/// `phi` acts on positions in the sorted, deduplicated `h_vertices`.
/// The identity leaves `g` unchanged.
pub fn gdss2(g: &Graph, h_vertices: &[usize], phi: &PermutationMap) -> Result<Graph> {
    let (h, map) = g.induced_subgraph(h_vertices)?;
    if phi.len() != map.len() {
        return Err(Error::Permutation(format!("size {} for a subgraph of order {}", phi.len(), map.len())));
    }
    if phi.is_identity() {
        return Ok(g.clone());
    }
    check_seidel_automorphism(&h, phi)?;
    let mut in_h = vec![false; g.order()];
    for &v in &map {
        in_h[v] = true;
    }
    // |N(v) ∩ N(x) ∩ H| must agree on x and φ(x) for every v outside H
    for v in (0..g.order()).filter(|&v| !in_h[v]) {
        let count = |i: usize| map.iter().filter(|&&z| g.has_edge(v, z) && g.has_edge(map[i], z)).count();
        for i in 0..map.len() {
            let j = phi.apply(i);
            if i < j && count(i) != count(j) {
                return Err(Error::SwitchingCondition { v, x: map[i], y: map[j] });
            }
        }
    }
    let block = permute_rows(&h, phi)?;
    let mut out = g.clone();
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            out.set_edge(map[i], map[j], block.has_edge(i, j));
        }
    }
    debug_assert!(out.check_invariants());
    Ok(out)
}

/// The graph obtained from the 4×n lattice by the generalised dual Seidel
/// switch on its first two rows with the central symmetry.
pub fn g_prime(n: usize) -> Result<(Graph, VertexPartition)> {
    if n % 2 == 1 || n < 6 {
        return Err(Error::Precondition(format!("g_prime needs even n ≥ 6, got {n}")));
    }
    let (g, part) = lattice4(n)?;
    let h: Vec<usize> = (0..2 * n).collect();
    let image = (0..2 * n).map(|x| (1 - x / n) * n + (n - 1 - x % n)).collect();
    let phi = PermutationMap::new(image)?;
    Ok((gdss2(&g, &h, &phi)?, part))
}

fn classes_of(p: &VertexPartition) -> Result<Vec<Vec<usize>>> {
    if p.class_count() != 4 {
        return Err(Error::Unsupported(format!("{} classes (expected 4)", p.class_count())));
    }
    Ok(p.classes())
}

/// Complements the blocks `(1,2)` and `(3,4)`.
pub fn star_switch_partitioned(g: &Graph, p: &VertexPartition) -> Result<Graph> {
    if p.order() != g.order() {
        return Err(Error::Partition("partition does not cover the graph".into()));
    }
    let c = classes_of(p)?;
    let mut out = g.clone();
    out.complement_between(&c[0], &c[1]);
    out.complement_between(&c[2], &c[3]);
    Ok(out)
}

/// Switches every pair between `V1 ∪ V2` and `V3 ∪ V4`.
pub fn class_pair_switch(g: &Graph, p: &VertexPartition) -> Result<Graph> {
    if p.order() != g.order() {
        return Err(Error::Partition("partition does not cover the graph".into()));
    }
    let c = classes_of(p)?;
    let front: Vec<usize> = c[0].iter().chain(&c[1]).copied().collect();
    seidel_switch(g, &front)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{are_isomorphic, seidel_automorphisms};

    #[test]
    fn lattice_is_line_graph_of_k4n() {
        for n in 1..=6 {
            let (l, _) = lattice4(n).unwrap();
            let lg = line_graph(&complete_bipartite(4, n).unwrap()).unwrap();
            assert!(are_isomorphic(&l, &lg), "n = {n}");
        }
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(line_graph(&tri).unwrap(), tri);
    }

    #[test]
    fn lattice_shape() {
        let (g, p) = lattice4(3).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.regular_valency(), Some(5));
        assert_eq!(g.common_neighbors(0, 1).unwrap(), 1);
        assert_eq!(g.common_neighbors(0, 3).unwrap(), 2);
        assert_eq!(p.classes()[1], vec![3, 4, 5]);
    }

    #[test]
    fn seeds() {
        let a = hadamard_seed(Seed::First);
        let b = hadamard_seed(Seed::Second);
        assert_eq!(a.row_sums(), vec![2; 4]);
        assert_eq!(b.row_sums(), vec![-2; 4]);
        for h in [&a, &b] {
            assert!(h.is_hadamard() && h.is_graphical() && h.is_regular());
        }
        assert!(HadamardMatrix::new(vec![vec![1, 0], vec![1, 1]]).is_err());
        let ng = HadamardMatrix::new(vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert!(ng.is_hadamard() && !ng.is_graphical());
        assert!(hadamard_ddg(&ng, 3).is_err());
    }

    #[test]
    fn first_seed_is_lattice_labeling() {
        let (h, _) = hadamard_ddg(&hadamard_seed(Seed::First), 5).unwrap();
        assert_eq!(h, lattice4(5).unwrap().0);
    }

    #[test]
    fn seidel_switch_trivial_sets() {
        let (g, _) = lattice4(3).unwrap();
        assert_eq!(seidel_switch(&g, &[]).unwrap(), g);
        let all: Vec<usize> = (0..12).collect();
        assert_eq!(seidel_switch(&g, &all).unwrap(), g);
        let once = seidel_switch(&g, &[0, 4, 7]).unwrap();
        assert_ne!(once, g);
        assert_eq!(seidel_switch(&once, &[0, 4, 7]).unwrap(), g);
        assert!(seidel_switch(&g, &[12]).is_err());
    }

    #[test]
    fn dual_seidel_on_rook_graph() {
        // 3×3 rook graph, transpose swaps only non-adjacent cells
        let g = Graph::from_fn(9, |x, y| (x / 3 == y / 3) != (x % 3 == y % 3)).unwrap();
        let t = PermutationMap::new((0..9).map(|x| (x % 3) * 3 + x / 3).collect()).unwrap();
        let d = dual_seidel(&g, &t).unwrap();
        assert_eq!(d.regular_valency(), Some(4));
        assert_ne!(d, g);
        assert_eq!(dual_seidel(&d, &t).unwrap(), g);
        assert!(dual_seidel(&g, &PermutationMap::identity(9)).is_err());
        let row_swap = PermutationMap::new(vec![1, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert!(dual_seidel(&g, &row_swap).is_err());
    }

    #[test]
    fn central_symmetry_of_two_row_lattice() {
        let n = 6;
        let two = Graph::from_fn(2 * n, |x, y| (x / n == y / n) != (x % n == y % n)).unwrap();
        let central = PermutationMap::new((0..2 * n).map(|x| (1 - x / n) * n + (n - 1 - x % n)).collect()).unwrap();
        assert!(seidel_automorphisms(&two).unwrap().contains(&central));
        let (l, _) = lattice4(6).unwrap();
        let (sub, _) = l.induced_subgraph(&(6..18).collect::<Vec<_>>()).unwrap();
        assert_eq!(sub.regular_valency(), Some(6));
        assert!(are_isomorphic(&sub, &two));
    }

    #[test]
    fn g_prime_basics() {
        let (g, _) = g_prime(6).unwrap();
        assert_eq!(g.regular_valency(), Some(8));
        assert!(!are_isomorphic(&g, &lattice4(6).unwrap().0));
        assert!(g_prime(5).is_err());
        assert!(g_prime(4).is_err());
        let (l, _) = lattice4(6).unwrap();
        let h: Vec<usize> = (0..12).collect();
        assert_eq!(gdss2(&l, &h, &PermutationMap::identity(12)).unwrap(), l);
    }

    #[test]
    fn gdss2_rejects_condition_violation() {
        // first graph on 6 vertices where (0 1)(2 3) is a Seidel automorphism
        // of H = {0,1,2,3} but some outside vertex sees different
        // common-neighbour counts inside H
        let pairs: Vec<(usize, usize)> = (0..6).flat_map(|x| (x + 1..6).map(move |y| (x, y))).collect();
        let h = [0, 1, 2, 3];
        let phi = PermutationMap::new(vec![1, 0, 3, 2]).unwrap();
        let cnt = |g: &Graph, v: usize, x: usize| h.iter().filter(|&&z| g.has_edge(v, z) && g.has_edge(x, z)).count();
        let found = (0u32..1 << pairs.len()).find_map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(6, &edges).unwrap();
            let seidel = !g.has_edge(0, 1)
                && !g.has_edge(2, 3)
                && g.has_edge(0, 2) == g.has_edge(1, 3)
                && g.has_edge(0, 3) == g.has_edge(1, 2);
            (seidel && (4..6).any(|v| cnt(&g, v, 0) != cnt(&g, v, 1))).then_some(g)
        });
        let g = found.expect("a counterexample exists");
        assert!(matches!(gdss2(&g, &h, &phi), Err(Error::SwitchingCondition { x: 0, y: 1, .. })));
    }

    #[test]
    fn class_pair_switch_maps_seeds() {
        let (a, p) = hadamard_ddg(&hadamard_seed(Seed::First), 6).unwrap();
        let (b, _) = hadamard_ddg(&hadamard_seed(Seed::Second), 6).unwrap();
        assert_eq!(class_pair_switch(&a, &p).unwrap(), b);
        assert_eq!(class_pair_switch(&b, &p).unwrap(), a);
        let s = star_switch_partitioned(&a, &p).unwrap();
        assert_eq!(s.regular_valency(), Some(12));
        assert_eq!(star_switch_partitioned(&s, &p).unwrap(), a);
        assert!(star_switch_partitioned(&a, &VertexPartition::blocks(2, 12)).is_err());
    }
}
