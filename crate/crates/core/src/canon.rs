//! Canonical labeling and automorphisms.
//!
//! Individualization-refinement: the vertex colouring is refined to an
//! equitable partition, then vertices of the first smallest non-singleton
//! cell are individualized in turn. Each refinement step contributes a hash
//! of its splitting events to a trace. The canonical leaf is the one with
//! the largest `(trace, permuted adjacency)` key; subtrees are skipped when
//! their trace prefix is already smaller than the best leaf's, when they lie
//! in the orbit of an explored sibling under automorphisms found so far, or
//! when a leaf proves the whole subtree equivalent to an explored one.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{words_for, Graph};
use crate::partition::PermutationMap;

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// The relabeled graph; equal for two inputs iff they are isomorphic
    /// (as coloured graphs, together with `colors`).
    pub graph: Graph,
    /// Maps each input vertex to its canonical position.
    pub labeling: PermutationMap,
    /// Vertex colours in canonical order (non-decreasing).
    pub colors: Vec<u32>,
    /// Automorphism group generators discovered during the search.
    pub generators: Vec<PermutationMap>,
    pub nodes: usize,
}

/// Canonical form of an uncoloured graph.
pub fn canonical_form(g: &Graph) -> (Graph, PermutationMap) {
    let c = canonize(g, &vec![0; g.order()]);
    (c.graph, c.labeling)
}

/// Canonical form of a vertex-coloured graph. Isomorphisms must preserve
/// colour values exactly.
pub fn canonize(g: &Graph, colors: &[u32]) -> Canonical {
    assert_eq!(colors.len(), g.order(), "one colour per vertex");
    let mut search = Search::new(g);
    let (part, h) = Part::initial(g, colors);
    let mut trace = vec![h];
    let mut path = Vec::new();
    search.explore(part, &mut path, &mut trace);
    let best = search.best.take().expect("search visits at least one leaf");
    let n = g.order();
    let mut image = vec![0; n];
    for (i, &v) in best.lab.iter().enumerate() {
        image[v] = i;
    }
    let labeling = PermutationMap::new(image).expect("leaf is a bijection");
    let mut sorted_colors: Vec<u32> = best.lab.iter().map(|&v| colors[v]).collect();
    debug_assert!(sorted_colors.windows(2).all(|w| w[0] <= w[1]));
    sorted_colors.shrink_to_fit();
    Canonical {
        graph: g.permuted(&labeling),
        labeling,
        colors: sorted_colors,
        generators: search.generators,
        nodes: search.nodes,
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    canonical_form(g).0 == canonical_form(h).0
}

/// Coloured isomorphism test.
pub fn are_isomorphic_colored(g: &Graph, gc: &[u32], h: &Graph, hc: &[u32]) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let a = canonize(g, gc);
    let b = canonize(h, hc);
    a.colors == b.colors && a.graph == b.graph
}

/// Generators of the automorphism group.
pub fn automorphisms(g: &Graph) -> Vec<PermutationMap> {
    canonize(g, &vec![0; g.order()]).generators
}

/// All elements of the group generated by `generators` on `0..n`, or an
/// error when there are more than `limit`.
pub fn group_elements(n: usize, generators: &[PermutationMap], limit: usize) -> Result<Vec<PermutationMap>> {
    let id = PermutationMap::identity(n);
    let mut seen: HashSet<PermutationMap> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for s in generators {
            let q = s.after(&p);
            if seen.insert(q.clone()) {
                if out.len() == limit {
                    return Err(Error::SizeLimit { what: "group order", got: limit + 1, limit });
                }
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Largest order accepted by [`seidel_automorphisms`].
pub const SEIDEL_ORDER_LIMIT: usize = 64;

/// Every non-identity involutive automorphism whose moved vertices are all
/// non-adjacent to their images, in lexicographic order of images.
pub fn seidel_automorphisms(g: &Graph) -> Result<Vec<PermutationMap>> {
    let n = g.order();
    if n > SEIDEL_ORDER_LIMIT {
        return Err(Error::SizeLimit { what: "order for Seidel automorphism search", got: n, limit: SEIDEL_ORDER_LIMIT });
    }
    let colors = equitable_colors(g, &vec![0; n]);
    let mut phi = vec![usize::MAX; n];
    let mut out = Vec::new();
    seidel_rec(g, &colors, &mut phi, 0, &mut out);
    Ok(out)
}

fn seidel_rec(g: &Graph, colors: &[u32], phi: &mut Vec<usize>, x: usize, out: &mut Vec<PermutationMap>) {
    let n = g.order();
    if x == n {
        let p = PermutationMap::new(phi.clone()).expect("involution");
        if !p.is_identity() {
            out.push(p);
        }
        return;
    }
    if phi[x] != usize::MAX {
        seidel_rec(g, colors, phi, x + 1, out);
        return;
    }
    // candidates: x itself, or a later unassigned non-neighbour of the same colour
    let candidates: Vec<usize> = std::iter::once(x)
        .chain((x + 1..n).filter(|&y| phi[y] == usize::MAX && colors[y] == colors[x] && !g.has_edge(x, y)))
        .collect();
    for y in candidates {
        phi[x] = y;
        phi[y] = x;
        let consistent = (0..n).filter(|&z| phi[z] != usize::MAX).all(|z| {
            g.has_edge(x, z) == g.has_edge(y, phi[z]) && g.has_edge(y, z) == g.has_edge(x, phi[z])
        });
        if consistent {
            seidel_rec(g, colors, phi, x + 1, out);
        }
        phi[x] = usize::MAX;
        phi[y] = usize::MAX;
    }
}

/// Coarsest equitable refinement of a colouring; returns the cell index
/// (in canonical cell order) of every vertex.
pub fn equitable_colors(g: &Graph, colors: &[u32]) -> Vec<u32> {
    let (part, _) = Part::initial(g, colors);
    let mut out = vec![0; g.order()];
    let mut cell = 0;
    let mut p = 0;
    while p < part.lab.len() {
        let len = part.len[p];
        for &v in &part.lab[p..p + len] {
            out[v] = cell;
        }
        cell += 1;
        p += len;
    }
    out
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Ordered partition of the vertex set into contiguous cells of `lab`.
#[derive(Clone)]
struct Part {
    lab: Vec<usize>,
    /// Start position of the cell containing each position.
    start: Vec<usize>,
    /// Cell length, valid at cell start positions.
    len: Vec<usize>,
    cells: usize,
}

impl Part {
    fn initial(g: &Graph, colors: &[u32]) -> (Part, u64) {
        let n = g.order();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut part = Part { lab, start: vec![0; n], len: vec![0; n], cells: 0 };
        let mut queue = Vec::new();
        let mut p = 0;
        let mut h = mix(0, n as u64);
        while p < n {
            let c = colors[part.lab[p]];
            let mut q = p;
            while q < n && colors[part.lab[q]] == c {
                part.start[q] = p;
                q += 1;
            }
            part.len[p] = q - p;
            part.cells += 1;
            h = mix(h, (c as u64) << 32 | (q - p) as u64);
            queue.push(p);
            p = q;
        }
        let h = part.refine(g, queue, h);
        (part, h)
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// First non-singleton cell of minimum size.
    fn target_cell(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_len = usize::MAX;
        let mut p = 0;
        while p < self.lab.len() {
            let l = self.len[p];
            if l > 1 && l < best_len {
                best = p;
                best_len = l;
                if l == 2 {
                    break;
                }
            }
            p += l;
        }
        best
    }

    /// Moves `v` to the front of the cell at `s`, splits it off, refines.
    fn individualize(&mut self, g: &Graph, s: usize, v: usize) -> u64 {
        let len = self.len[s];
        let at = (s..s + len).find(|&p| self.lab[p] == v).expect("vertex in target cell");
        self.lab.swap(s, at);
        // keep the remainder in ascending vertex order for determinism
        self.lab[s + 1..s + len].sort_unstable();
        self.len[s] = 1;
        self.len[s + 1] = len - 1;
        for p in s + 1..s + len {
            self.start[p] = s + 1;
        }
        self.cells += 1;
        let h = mix(0x5bd1_e995, s as u64);
        self.refine(g, vec![s], h)
    }

    fn refine(&mut self, g: &Graph, initial: Vec<usize>, mut h: u64) -> u64 {
        let n = self.lab.len();
        let stride = words_for(n);
        let mut in_queue = vec![false; n];
        let mut queue = VecDeque::with_capacity(n);
        for s in initial {
            in_queue[s] = true;
            queue.push_back(s);
        }
        let mut mask = vec![0u64; stride];
        let mut counts = vec![0u32; n];
        let mut buf: Vec<(u32, usize)> = Vec::with_capacity(n);
        while let Some(ws) = queue.pop_front() {
            in_queue[ws] = false;
            if self.is_discrete() {
                break;
            }
            mask.iter_mut().for_each(|w| *w = 0);
            for &v in &self.lab[ws..ws + self.len[ws]] {
                mask[v / 64] |= 1 << (v % 64);
            }
            let mut p = 0;
            while p < n {
                let len = self.len[p];
                if len == 1 {
                    p += 1;
                    continue;
                }
                let mut same = true;
                let mut first = u32::MAX;
                for &v in &self.lab[p..p + len] {
                    let c: u32 = g.row(v).iter().zip(&mask).map(|(a, b)| (a & b).count_ones()).sum();
                    counts[v] = c;
                    if first == u32::MAX {
                        first = c;
                    } else if c != first {
                        same = false;
                    }
                }
                if same {
                    p += len;
                    continue;
                }
                buf.clear();
                buf.extend(self.lab[p..p + len].iter().map(|&v| (counts[v], v)));
                buf.sort_unstable();
                h = mix(h, p as u64);
                let was_queued = in_queue[p];
                let mut groups: Vec<(usize, usize)> = Vec::new();
                let mut q = 0;
                while q < len {
                    let c = buf[q].0;
                    let mut r = q;
                    while r < len && buf[r].0 == c {
                        self.lab[p + r] = buf[r].1;
                        r += 1;
                    }
                    groups.push((p + q, r - q));
                    h = mix(h, (c as u64) << 32 | (r - q) as u64);
                    q = r;
                }
                for &(gs, gl) in &groups {
                    self.len[gs] = gl;
                    for x in gs..gs + gl {
                        self.start[x] = gs;
                    }
                }
                self.cells += groups.len() - 1;
                let largest = groups.iter().enumerate().max_by_key(|(i, g)| (g.1, std::cmp::Reverse(*i))).map(|(i, _)| i);
                for (i, &(gs, _)) in groups.iter().enumerate() {
                    if in_queue[gs] {
                        continue;
                    }
                    if was_queued || Some(i) != largest {
                        in_queue[gs] = true;
                        queue.push_back(gs);
                    }
                }
                p += len;
            }
        }
        mix(h, self.cells as u64)
    }
}

struct Leaf {
    lab: Vec<usize>,
    path: Vec<usize>,
    trace: Vec<u64>,
    cert: Vec<u64>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<PermutationMap>,
    nodes: usize,
}

fn cmp_prefix(trace: &[u64], best: &[u64]) -> Ordering {
    let m = trace.len().min(best.len());
    match trace[..m].cmp(&best[..m]) {
        Ordering::Equal if trace.len() > best.len() => Ordering::Greater,
        o => o,
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search { g, first: None, best: None, generators: Vec::new(), nodes: 0 }
    }

    /// Returns `Some(level)` when every node deeper than `level` on the
    /// current path is equivalent to an explored node.
    fn explore(&mut self, part: Part, path: &mut Vec<usize>, trace: &mut Vec<u64>) -> Option<usize> {
        self.nodes += 1;
        if part.is_discrete() {
            return self.leaf(part, path, trace);
        }
        let depth = path.len();
        let s = part.target_cell();
        let mut cell: Vec<usize> = part.lab[s..s + part.len[s]].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for v in cell {
            if !explored.is_empty() {
                let gens = self.generators.len();
                if orbits.as_ref().map(|o| o.0) != Some(gens) {
                    orbits = Some((gens, self.orbits_fixing(path)));
                }
                let uf = &orbits.as_ref().expect("computed").1;
                if explored.iter().any(|&u| uf[u] == uf[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = part.clone();
            let h = child.individualize(self.g, s, v);
            trace.push(h);
            if let Some(best) = &self.best {
                if cmp_prefix(trace, &best.trace) == Ordering::Less {
                    trace.pop();
                    continue;
                }
            }
            path.push(v);
            let r = self.explore(child, path, trace);
            path.pop();
            trace.pop();
            if let Some(level) = r {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: Part, path: &[usize], trace: &[u64]) -> Option<usize> {
        let n = part.lab.len();
        let stride = words_for(n);
        let mut pos = vec![0; n];
        for (i, &v) in part.lab.iter().enumerate() {
            pos[v] = i;
        }
        let mut cert = vec![0u64; n * stride];
        for (i, &v) in part.lab.iter().enumerate() {
            for w in self.g.neighbors(v) {
                let j = pos[w];
                cert[i * stride + j / 64] |= 1 << (j % 64);
            }
        }
        let leaf = Leaf { lab: part.lab, path: path.to_vec(), trace: trace.to_vec(), cert };
        let Some(best) = &self.best else {
            self.first = Some(Leaf { lab: leaf.lab.clone(), path: leaf.path.clone(), trace: leaf.trace.clone(), cert: leaf.cert.clone() });
            self.best = Some(leaf);
            return None;
        };
        let ord = (leaf.trace.as_slice(), &leaf.cert).cmp(&(best.trace.as_slice(), &best.cert));
        let best_match = (best.lab.clone(), common_prefix(&best.path, &leaf.path));
        if let Some(first) = &self.first {
            if first.trace == leaf.trace && first.cert == leaf.cert {
                let (from, level) = (first.lab.clone(), common_prefix(&first.path, &leaf.path));
                self.record(&from, &leaf.lab);
                return Some(level);
            }
        }
        match ord {
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => {
                self.record(&best_match.0, &leaf.lab);
                Some(best_match.1)
            }
            Ordering::Less => None,
        }
    }

    fn record(&mut self, from: &[usize], to: &[usize]) {
        let mut image = vec![0; from.len()];
        for (a, b) in from.iter().zip(to) {
            image[*a] = *b;
        }
        let p = PermutationMap::new(image).expect("leaf correspondence is a bijection");
        if !p.is_identity() && !self.generators.contains(&p) {
            debug_assert!(self.g.permuted(&p) == *self.g);
            self.generators.push(p);
        }
    }

    /// Union-find roots of the orbits of the group generated by the known
    /// generators that fix every vertex of `path`.
    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gen in &self.generators {
            if path.iter().any(|&v| gen.apply(v) != v) {
                continue;
            }
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gen.apply(x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel_all(g: &Graph) -> Vec<Graph> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(g.order()).into_iter().map(|p| g.permuted(&PermutationMap::new(p).unwrap())).collect()
    }

    #[test]
    fn path_relabelings_share_one_form() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let forms: HashSet<Graph> = relabel_all(&p3).iter().map(|g| canonical_form(g).0).collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn idempotent() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let (c, _) = canonical_form(&g);
        assert_eq!(canonical_form(&c).0, c);
    }

    #[test]
    fn p4_and_star_differ() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!are_isomorphic(&p4, &star));
        assert_ne!(canonical_form(&p4).0, canonical_form(&star).0);
    }

    #[test]
    fn labeling_maps_input_onto_canonical_graph() {
        let g = Graph::from_fn(10, |x, y| (x * y + x + y) % 4 == 1).unwrap();
        let c = canonize(&g, &vec![0; g.order()]);
        assert_eq!(g.permuted(&c.labeling), c.graph);
    }

    #[test]
    fn cycle_group_generators() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let gens = automorphisms(&c6);
        for s in &gens {
            assert_eq!(c6.permuted(s), c6);
        }
        assert_eq!(group_elements(6, &gens, 100).unwrap().len(), 12);
    }

    #[test]
    fn colored_forms_respect_colors() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(are_isomorphic_colored(&p3, &[1, 0, 0], &p3, &[0, 0, 1]));
        assert!(!are_isomorphic_colored(&p3, &[1, 0, 0], &p3, &[0, 1, 0]));
    }

    #[test]
    fn seidel_small_cases() {
        let k4 = Graph::from_fn(4, |_, _| true).unwrap();
        assert!(seidel_automorphisms(&k4).unwrap().is_empty());
        let e2 = Graph::empty(2).unwrap();
        let s = seidel_automorphisms(&e2).unwrap();
        assert_eq!(s, vec![PermutationMap::new(vec![1, 0]).unwrap()]);
        assert!(seidel_automorphisms(&Graph::empty(65).unwrap()).is_err());
    }
}
