//! The switched graph `G*` of an M5-quotient DDG: its components (4-cubes
//! and cocktail cycles), their assembly and their recognition.
//!
//! Classes are indexed `0..4` and paired as `{0,1}`, `{2,3}`, the pairs whose
//! blocks the star switch complements. A component carries an
//! [`Embedding`] naming which class pairs its own structure joins: `E12`
//! the switch pairs, `E13` the pairs `{0,2},{1,3}`, `E14` the pairs
//! `{0,3},{1,2}`. Relabeling the classes by `0↔1` (or `2↔3`) preserves
//! the switch pairs and exchanges `E13` with `E14` in every component at
//! once, so spec lists are compared after [`normalize_specs`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::canon::{are_isomorphic, canonize};
use crate::constructions::star_switch_partitioned;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::family_a;
use crate::partition::{PermutationMap, VertexPartition};
use crate::quotient::{reference_matrix, QuotientTag};
use crate::verify::{quotient_matrix, verify_ddg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Embedding {
    E12,
    E13,
    E14,
}

impl Embedding {
    pub const ALL: [Embedding; 3] = [Embedding::E12, Embedding::E13, Embedding::E14];

    pub fn class_pairs(self) -> [[usize; 2]; 2] {
        match self {
            Embedding::E12 => [[0, 1], [2, 3]],
            Embedding::E13 => [[0, 2], [1, 3]],
            Embedding::E14 => [[0, 3], [1, 2]],
        }
    }

    /// The embedding after exchanging classes 0 and 1.
    pub fn swapped(self) -> Embedding {
        match self {
            Embedding::E12 => Embedding::E12,
            Embedding::E13 => Embedding::E14,
            Embedding::E14 => Embedding::E13,
        }
    }

    fn of_pair(a: usize, b: usize) -> Embedding {
        let (a, b) = (a.min(b), a.max(b));
        Embedding::ALL.into_iter().find(|e| e.class_pairs().iter().any(|p| p == &[a, b])).expect("distinct classes")
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One connected component of `G*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ComponentSpec {
    /// The 4-cube with one of its three `J4` partitions (`1..=3`).
    FourCube { partition: u8, embedding: Embedding },
    /// `C_s[K̄2]` with `s = pairs`.
    CocktailCycle { pairs: usize, embedding: Embedding },
}

impl ComponentSpec {
    pub fn four_cube(partition: u8) -> ComponentSpec {
        ComponentSpec::FourCube { partition, embedding: Embedding::E12 }
    }

    pub fn cocktail(pairs: usize, embedding: Embedding) -> ComponentSpec {
        ComponentSpec::CocktailCycle { pairs, embedding }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ComponentSpec::FourCube { partition, .. } if !(1..=3).contains(&partition) => {
                Err(Error::Precondition(format!("4-cube partition id {partition} outside 1..=3")))
            }
            ComponentSpec::CocktailCycle { pairs, .. } if pairs < 4 || pairs % 4 != 0 => {
                Err(Error::Precondition(format!("cocktail cycle pair count {pairs} is not a positive multiple of 4")))
            }
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            ComponentSpec::FourCube { .. } => 16,
            ComponentSpec::CocktailCycle { pairs, .. } => 2 * pairs,
        }
    }

    pub fn embedding(&self) -> Embedding {
        match *self {
            ComponentSpec::FourCube { embedding, .. } | ComponentSpec::CocktailCycle { embedding, .. } => embedding,
        }
    }

    /// Collapses embeddings that give the same class-labelled component.
    pub fn normalized(&self) -> ComponentSpec {
        match *self {
            ComponentSpec::FourCube { partition, embedding } => {
                let embedding = if q4_class_pairing(partition).is_some() { embedding } else { Embedding::E12 };
                ComponentSpec::FourCube { partition, embedding }
            }
            ComponentSpec::CocktailCycle { pairs: 4, .. } => ComponentSpec::cocktail(4, Embedding::E12),
            other => other,
        }
    }

    fn swapped(&self) -> ComponentSpec {
        match *self {
            ComponentSpec::FourCube { partition, embedding } => {
                ComponentSpec::FourCube { partition, embedding: embedding.swapped() }
            }
            ComponentSpec::CocktailCycle { pairs, embedding } => ComponentSpec::cocktail(pairs, embedding.swapped()),
        }
    }

    pub fn build(&self) -> Result<(Graph, VertexPartition)> {
        self.validate()?;
        match *self {
            ComponentSpec::FourCube { partition, embedding } => four_cube_component(partition, embedding),
            ComponentSpec::CocktailCycle { pairs, embedding } => cocktail_cycle(pairs, embedding),
        }
    }
}

impl fmt::Display for ComponentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentSpec::FourCube { partition, embedding } => write!(f, "FourCube({partition},{embedding})"),
            ComponentSpec::CocktailCycle { pairs, embedding } => write!(f, "CocktailCycle({pairs},{embedding})"),
        }
    }
}

impl FromStr for Embedding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Embedding> {
        Embedding::ALL
            .into_iter()
            .find(|e| e.to_string() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown embedding {s:?}")))
    }
}

impl FromStr for ComponentSpec {
    type Err = Error;

    /// Inverse of `Display`; the embedding of a 4-cube may be left out.
    fn from_str(s: &str) -> Result<ComponentSpec> {
        let bad = || Error::Precondition(format!("invalid component spec {s:?}"));
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args: Vec<&str> = rest.strip_suffix(')').ok_or_else(bad)?.split(',').map(str::trim).collect();
        let spec = match (name.trim(), args.as_slice()) {
            ("FourCube", [id]) => ComponentSpec::four_cube(id.parse().map_err(|_| bad())?),
            ("FourCube", [id, e]) => ComponentSpec::FourCube { partition: id.parse().map_err(|_| bad())?, embedding: e.parse()? },
            ("CocktailCycle", [pairs, e]) => ComponentSpec::cocktail(pairs.parse().map_err(|_| bad())?, e.parse()?),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `+`-separated component specs.
pub fn parse_spec_list(s: &str) -> Result<Vec<ComponentSpec>> {
    s.split('+').map(str::parse).collect()
}

/// Sorted, normalized, and the smaller of the list and its `E13↔E14` image.
pub fn normalize_specs(specs: &[ComponentSpec]) -> Vec<ComponentSpec> {
    let mut a: Vec<ComponentSpec> = specs.iter().map(|s| s.normalized()).collect();
    let mut b: Vec<ComponentSpec> = a.iter().map(|s| s.swapped()).collect();
    a.sort();
    b.sort();
    a.min(b)
}

/// Every normalized spec list whose components put exactly `n` vertices
/// in each class.
pub fn component_multisets(n: usize) -> Vec<Vec<ComponentSpec>> {
    let mut items: Vec<ComponentSpec> = vec![ComponentSpec::four_cube(1)];
    items.extend(Embedding::ALL.iter().map(|&e| ComponentSpec::FourCube { partition: 2, embedding: e }));
    items.push(ComponentSpec::four_cube(3));
    items.push(ComponentSpec::cocktail(4, Embedding::E12));
    for pairs in (8..=2 * n).step_by(4) {
        items.extend(Embedding::ALL.iter().map(|&e| ComponentSpec::cocktail(pairs, e)));
    }
    fn rec(items: &[ComponentSpec], from: usize, left: usize, cur: &mut Vec<ComponentSpec>, out: &mut BTreeSet<Vec<ComponentSpec>>) {
        if left == 0 {
            out.insert(normalize_specs(cur));
            return;
        }
        for i in from..items.len() {
            let w = items[i].vertex_count() / 4;
            if w <= left {
                cur.push(items[i]);
                rec(items, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    if n > 0 {
        rec(&items, 0, n, &mut Vec::new(), &mut out);
    }
    out.into_iter().collect()
}

/// The spec lists at `n` whose reverse switch verifies as a DDG with
/// quotient M5.
pub fn valid_component_multisets(n: usize) -> Vec<Vec<ComponentSpec>> {
    component_multisets(n).into_iter().filter(|specs| reverse_switch_construct(specs, n).is_ok()).collect()
}

/// The 4-cube on 4-bit labels.
pub fn hypercube4() -> Graph {
    Graph::from_fn(16, |x, y| (x ^ y).count_ones() == 1).expect("16 vertices")
}

/// All 384 automorphisms: a bit permutation followed by a translation.
pub fn q4_automorphisms() -> Vec<PermutationMap> {
    let mut out = Vec::with_capacity(384);
    for perm in crate::quotient::permutations_of(4) {
        for mask in 0..16 {
            let image = (0..16)
                .map(|x| {
                    let y = (0..4).filter(|&b| x >> b & 1 == 1).fold(0, |acc, b| acc | 1 << perm.apply(b));
                    y ^ mask
                })
                .collect();
            out.push(PermutationMap::new(image).expect("bijection on 4-bit labels"));
        }
    }
    out
}

/// Class assignments of the 4-cube into four classes of four in which
/// every vertex has exactly one neighbour in each class. With
/// `first_occurrence` classes are numbered in order of first use, giving
/// one assignment per unordered partition.
pub fn q4_j4_assignments(first_occurrence: bool) -> Vec<Vec<usize>> {
    let q = hypercube4();
    let nbrs: Vec<Vec<usize>> = (0..16).map(|x| q.neighbors(x).collect()).collect();
    let mut out = Vec::new();
    let mut class = [usize::MAX; 16];
    let mut sizes = [0usize; 4];
    fn feasible(nbrs: &[Vec<usize>], class: &[usize; 16]) -> bool {
        (0..16).filter(|&u| class[u] != usize::MAX).all(|u| {
            let mut seen = [0u8; 4];
            let mut open = 0;
            for &w in &nbrs[u] {
                if class[w] == usize::MAX {
                    open += 1;
                } else {
                    seen[class[w]] += 1;
                }
            }
            let missing = seen.iter().filter(|&&c| c == 0).count();
            seen.iter().all(|&c| c <= 1) && missing <= open
        })
    }
    fn rec(
        v: usize,
        fo: bool,
        nbrs: &[Vec<usize>],
        class: &mut [usize; 16],
        sizes: &mut [usize; 4],
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == 16 {
            out.push(class.to_vec());
            return;
        }
        let used = sizes.iter().filter(|&&s| s > 0).count();
        let limit = if fo { (used + 1).min(4) } else { 4 };
        for c in 0..limit {
            if sizes[c] == 4 {
                continue;
            }
            class[v] = c;
            sizes[c] += 1;
            if feasible(nbrs, class) {
                rec(v + 1, fo, nbrs, class, sizes, out);
            }
            sizes[c] -= 1;
            class[v] = usize::MAX;
        }
    }
    rec(0, first_occurrence, &nbrs, &mut class, &mut sizes, &mut out);
    out
}

fn sorted_classes(class_of: &[usize]) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); 4];
    for (v, &c) in class_of.iter().enumerate() {
        classes[c].push(v);
    }
    classes.sort();
    classes
}

fn orbit_key(class_of: &[usize], auts: &[PermutationMap]) -> Vec<Vec<usize>> {
    auts.iter()
        .map(|a| {
            let mut moved = vec![0; 16];
            for (v, &c) in class_of.iter().enumerate() {
                moved[a.apply(v)] = c;
            }
            sorted_classes(&moved)
        })
        .min()
        .expect("nonempty group")
}

/// The three `J4`-equitable partitions of the 4-cube up to automorphism,
/// as lexicographically least representatives in ascending order.
pub fn q4_equitable_partitions() -> Vec<VertexPartition> {
    static CACHE: OnceLock<Vec<VertexPartition>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let auts = q4_automorphisms();
            let keys: BTreeSet<Vec<Vec<usize>>> =
                q4_j4_assignments(true).iter().map(|a| orbit_key(a, &auts)).collect();
            keys.into_iter()
                .map(|classes| VertexPartition::from_classes(16, &classes).expect("partition of the 4-cube"))
                .collect()
        })
        .clone()
}

/// An orbit of perfect matchings of the 4-cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingClass {
    /// Lexicographically least member, edges as `(low, high)` sorted.
    pub representative: Vec<(usize, usize)>,
    pub size: usize,
    /// Every edge's antipodal image `(x ^ 15, y ^ 15)` is also in the matching.
    pub antipodal: bool,
}

/// Perfect matchings of the 4-cube grouped into automorphism orbits.
pub fn q4_perfect_matching_classes() -> Vec<MatchingClass> {
    let q = hypercube4();
    let mut all = Vec::new();
    fn rec(q: &Graph, free: u32, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free == 0 {
            out.push(cur.clone());
            return;
        }
        let u = free.trailing_zeros() as usize;
        for w in q.neighbors(u) {
            if free >> w & 1 == 1 {
                cur.push((u, w));
                rec(q, free & !(1 << u) & !(1 << w), cur, out);
                cur.pop();
            }
        }
    }
    rec(&q, 0xffff, &mut Vec::new(), &mut all);
    let auts = q4_automorphisms();
    let key = |m: &[(usize, usize)], a: &PermutationMap| {
        let mut e: Vec<(usize, usize)> = m
            .iter()
            .map(|&(x, y)| {
                let (p, r) = (a.apply(x), a.apply(y));
                (p.min(r), p.max(r))
            })
            .collect();
        e.sort();
        e
    };
    let mut orbits: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    for m in &all {
        let k = auts.iter().map(|a| key(m, a)).min().expect("nonempty group");
        *orbits.entry(k).or_default() += 1;
    }
    let mut out: Vec<MatchingClass> = orbits
        .into_iter()
        .map(|(representative, size)| {
            let set: BTreeSet<(usize, usize)> = representative.iter().copied().collect();
            let antipodal = representative.iter().all(|&(x, y)| {
                let (p, r) = (x ^ 15, y ^ 15);
                set.contains(&(p.min(r), p.max(r)))
            });
            MatchingClass { representative, size, antipodal }
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    out
}

/// The edges inside the classes of a `J4` partition of the 4-cube.
pub fn inner_matching(part: &VertexPartition) -> Vec<(usize, usize)> {
    let q = hypercube4();
    q.edges().filter(|&(x, y)| part.class_of(x) == part.class_of(y)).collect()
}

/// For partition ids whose classes split into two pairs by the direction of
/// their inner edges, that pairing; `None` when the classes are symmetric.
fn q4_class_pairing(partition: u8) -> Option<[[usize; 2]; 2]> {
    let parts = q4_equitable_partitions();
    let part = parts.get(usize::from(partition).checked_sub(1)?)?;
    let mut dir = [usize::MAX; 4];
    for (x, y) in inner_matching(part) {
        dir[part.class_of(x)] = (x ^ y).trailing_zeros() as usize;
    }
    let distinct: BTreeSet<usize> = dir.iter().copied().collect();
    if distinct.len() != 2 {
        return None;
    }
    let partner = (1..4).find(|&c| dir[c] == dir[0])?;
    let rest: Vec<usize> = (1..4).filter(|&c| c != partner).collect();
    (dir[rest[0]] == dir[rest[1]]).then_some([[0, partner], [rest[0], rest[1]]])
}

fn four_cube_component(partition: u8, embedding: Embedding) -> Result<(Graph, VertexPartition)> {
    let parts = q4_equitable_partitions();
    let part = parts
        .get(usize::from(partition).wrapping_sub(1))
        .ok_or_else(|| Error::Precondition(format!("4-cube partition id {partition} outside 1..=3")))?;
    let part = match q4_class_pairing(partition) {
        Some(pairing) => {
            let target = embedding.class_pairs();
            let mut image = vec![0; 4];
            for (src, dst) in pairing.iter().zip(target.iter()) {
                image[src[0]] = dst[0];
                image[src[1]] = dst[1];
            }
            part.relabel_classes(&PermutationMap::new(image)?)?
        }
        None => part.clone(),
    };
    Ok((hypercube4(), part))
}

/// `C_s[K̄2]` on `u_p = 2p`, `w_p = 2p+1`. Pairs with `p mod 4 ∈ {0,1}` go
/// to the first class pair of `embedding`, the others to the second.
pub fn cocktail_cycle(pairs: usize, embedding: Embedding) -> Result<(Graph, VertexPartition)> {
    ComponentSpec::cocktail(pairs, embedding).validate()?;
    let s = pairs;
    let g = Graph::from_fn(2 * s, |x, y| {
        let (p, r) = (x / 2, y / 2);
        (p + 1) % s == r || (r + 1) % s == p
    })?;
    let cp = embedding.class_pairs();
    let class_of = (0..2 * s).map(|x| cp[usize::from(x / 2 % 4 >= 2)][x % 2]).collect();
    Ok((g, VertexPartition::new(class_of, 4)?))
}

/// Disjoint union of the components; every class must receive `n` vertices.
pub fn assemble_gstar(specs: &[ComponentSpec], n: usize) -> Result<(Graph, VertexPartition)> {
    if specs.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut per_class = 0;
    for s in specs {
        s.validate()?;
        per_class += s.vertex_count() / 4;
    }
    if per_class != n {
        return Err(Error::Precondition(format!("components give {per_class} vertices per class, need {n}")));
    }
    let mut acc: Option<(Graph, VertexPartition)> = None;
    for s in specs {
        let (g, p) = s.build()?;
        acc = Some(match acc {
            None => (g, p),
            Some((ag, ap)) => (ag.disjoint_union(&g)?, ap.concat(&p)),
        });
    }
    Ok(acc.expect("nonempty spec list"))
}

/// Undoes the star switch on an assembled `G*` and checks that the result
/// is a DDG with quotient M5 in class order.
pub fn reverse_switch_construct(specs: &[ComponentSpec], n: usize) -> Result<(Graph, VertexPartition)> {
    let (gs, part) = assemble_gstar(specs, n)?;
    let g = star_switch_partitioned(&gs, &part)?;
    let p = family_a(n as u64)?;
    let verdict = verify_ddg(&g, &p, Some(&part))?;
    if !verdict.is_ddg {
        return Err(Error::Construction(format!("reverse switch of {specs:?} is not a DDG with {p}")));
    }
    if verdict.quotient != reference_matrix(QuotientTag::M5, n as u64) {
        return Err(Error::Construction(format!("reverse switch of {specs:?} does not have quotient M5")));
    }
    Ok((g, part))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairCase {
    #[serde(rename = "1")]
    Same,
    #[serde(rename = "2a")]
    Partner2,
    #[serde(rename = "2b")]
    Partner1,
    #[serde(rename = "2c")]
    Partner0,
    #[serde(rename = "3a")]
    Cross2,
    #[serde(rename = "3b")]
    Cross1,
    #[serde(rename = "3c")]
    Cross0,
}

impl PairCase {
    pub fn label(self) -> &'static str {
        match self {
            PairCase::Same => "1",
            PairCase::Partner2 => "2a",
            PairCase::Partner1 => "2b",
            PairCase::Partner0 => "2c",
            PairCase::Cross2 => "3a",
            PairCase::Cross1 => "3b",
            PairCase::Cross0 => "3c",
        }
    }

    /// Common neighbours of the pair in `G*`.
    pub fn predicted(self) -> usize {
        match self {
            PairCase::Same | PairCase::Partner2 | PairCase::Cross0 => 0,
            PairCase::Partner1 | PairCase::Cross1 => 2,
            PairCase::Partner0 | PairCase::Cross2 => 4,
        }
    }
}

/// Case of the pair `x, y` of an M5 DDG `g` whose classes are in the
/// reference order, from the classes of `x, y` and their common
/// neighbours inside `V_x ∪ V_y`.
pub fn gstar_pair_type(g: &Graph, part: &VertexPartition, x: usize, y: usize) -> Result<PairCase> {
    if x == y {
        return Err(Error::SameVertex(x));
    }
    for v in [x, y] {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: g.order() });
        }
    }
    let q = quotient_matrix(g, part);
    if q.is_none() || q != reference_matrix(QuotientTag::M5, q.as_ref().map_or(0, |q| q.n)) {
        return Err(Error::Precondition("partition does not give quotient M5 in class order".into()));
    }
    let (cx, cy) = (part.class_of(x), part.class_of(y));
    if cx == cy {
        return Ok(PairCase::Same);
    }
    let t = g.neighbors(x).filter(|&z| g.has_edge(y, z) && (part.class_of(z) == cx || part.class_of(z) == cy)).count();
    let partner = cx ^ 1 == cy;
    Ok(match (partner, t) {
        (true, 2) => PairCase::Partner2,
        (true, 1) => PairCase::Partner1,
        (true, 0) => PairCase::Partner0,
        (false, 2) => PairCase::Cross2,
        (false, 1) => PairCase::Cross1,
        (false, 0) => PairCase::Cross0,
        _ => return Err(Error::Precondition(format!("pair ({x}, {y}) has {t} common neighbours in its classes"))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub kind: ComponentSpec,
    pub size: usize,
}

type ColoredKey = (Graph, Vec<u32>);

fn colored_key(g: &Graph, part: &VertexPartition) -> ColoredKey {
    let colors: Vec<u32> = part.assignment().iter().map(|&c| c as u32).collect();
    let c = canonize(g, &colors);
    (c.graph, c.colors)
}

fn four_cube_references() -> &'static Vec<(ColoredKey, ComponentSpec)> {
    static REFS: OnceLock<Vec<(ColoredKey, ComponentSpec)>> = OnceLock::new();
    REFS.get_or_init(|| {
        let mut out: Vec<(ColoredKey, ComponentSpec)> = Vec::new();
        for id in 1..=3u8 {
            for e in Embedding::ALL {
                let spec = ComponentSpec::FourCube { partition: id, embedding: e }.normalized();
                if out.iter().any(|(_, s)| *s == spec) {
                    continue;
                }
                let (g, p) = spec.build().expect("valid 4-cube spec");
                out.push((colored_key(&g, &p), spec));
            }
        }
        out
    })
}

/// Identifies every component of `G*` (4-regular with quotient `J4` on
/// `part`) as a 4-cube with one of its labelled partitions or as a
/// cocktail cycle with its embedding.
pub fn decompose_gstar(gstar: &Graph, part: &VertexPartition) -> Result<Vec<ComponentReport>> {
    if part.class_count() != 4 {
        return Err(Error::Unsupported(format!("{} classes (expected 4)", part.class_count())));
    }
    let q = quotient_matrix(gstar, part)
        .ok_or_else(|| Error::Precondition("partition is not equitable on G*".into()))?;
    if q.entries.iter().flatten().any(|&e| e != 1) {
        return Err(Error::Precondition(format!("G* quotient is {q}, expected J4")));
    }
    let q4 = hypercube4();
    let mut out = Vec::new();
    for comp in gstar.connected_components() {
        let (sub, map) = gstar.induced_subgraph(&comp)?;
        let sub_part = VertexPartition::new(map.iter().map(|&v| part.class_of(v)).collect(), 4);
        let fail = |reason: String| Error::ContradictsClassification { component: map.clone(), reason };
        let sub_part = sub_part.map_err(|e| fail(format!("component misses a class: {e}")))?;
        let size = map.len();
        if size % 8 != 0 {
            return Err(fail(format!("size {size} is not divisible by 8")));
        }
        let key = colored_key(&sub, &sub_part);
        let mut kind = None;
        if size == 16 && are_isomorphic(&sub, &q4) {
            kind = four_cube_references().iter().find(|(k, _)| *k == key).map(|(_, s)| *s);
            if kind.is_none() {
                return Err(fail("4-cube with a partition outside the three known types".into()));
            }
        } else if (size / 2) % 4 == 0 {
            for e in Embedding::ALL {
                let (cg, cp) = cocktail_cycle(size / 2, e)?;
                if colored_key(&cg, &cp) == key {
                    kind = Some(ComponentSpec::cocktail(size / 2, e).normalized());
                    break;
                }
            }
        }
        let kind = kind.ok_or_else(|| fail("neither a 4-cube nor an embedded cocktail cycle".into()))?;
        out.push(ComponentReport { vertices: map, kind, size });
    }
    Ok(out)
}

/// The embedding of a pair of twin vertices in a cocktail cycle.
pub fn twin_embedding(part: &VertexPartition, x: usize, y: usize) -> Embedding {
    Embedding::of_pair(part.class_of(x), part.class_of(y))
}
