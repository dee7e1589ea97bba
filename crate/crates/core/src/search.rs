//! Isomorph-free generation of Deza graphs and DDGs on at most 32 vertices.
//!
//! Vertices are committed one whole adjacency row at a time. After `h` rows
//! the undecided vertices are grouped into blocks of equal columns; inside
//! a block the vertices are interchangeable, so a new row only chooses how
//! many vertices of each block it takes (always the first ones). Each level
//! of partial graphs is reduced to one representative per isomorphism class
//! of its compressed form: the decided vertices plus one coloured vertex
//! per block. Dense parameter sets are searched in the complement.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonize};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::params::{DdgParams, DezaParams};
use crate::partition::VertexPartition;
use crate::verify::{check_ddg_partition, ddg_partition, deza_check};

pub const MAX_SEARCH_ORDER: usize = 32;

const CHUNK: usize = 2048;
const CHECKPOINT_MAGIC: &str = "ddg-search-checkpoint 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Deza(DezaParams),
    Ddg(DdgParams),
}

impl Target {
    pub fn deza_params(&self) -> DezaParams {
        match self {
            Target::Deza(p) => *p,
            Target::Ddg(p) => p.deza_shadow(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    AllDeza,
    DdgOnly,
    NonDdgOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTask {
    pub target: Target,
    pub mode: Mode,
    /// Stop after this many partial graphs have been generated.
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Worker threads; 0 means the rayon default.
    pub thread_count: usize,
    /// Frontier file written after every level and resumed from if present.
    pub checkpoint: Option<PathBuf>,
}

impl SearchTask {
    pub fn new(target: Target) -> SearchTask {
        SearchTask { target, mode: Mode::AllDeza, node_budget: None, time_budget: None, thread_count: 1, checkpoint: None }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn threads(mut self, n: usize) -> Self {
        self.thread_count = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Canonical graph6 strings, sorted.
    pub graphs: Vec<String>,
    pub node_count: u64,
    /// False iff a budget stopped the search early.
    pub exhausted: bool,
}

impl SearchResult {
    pub fn decoded(&self) -> Vec<Graph> {
        self.graphs.iter().map(|s| graph6::decode(s).expect("search emits valid graph6")).collect()
    }
}

/// The graph family actually searched: `k`-regular graphs on `v` vertices
/// whose adjacent pairs have a common-neighbour count in `adjacent` and
/// non-adjacent pairs one in `nonadjacent` (bit masks over counts).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Problem {
    pub v: usize,
    pub k: usize,
    pub adjacent: u64,
    pub nonadjacent: u64,
    pub complement: bool,
}

impl Problem {
    pub fn from_deza(p: &DezaParams) -> Result<Problem> {
        let v = p.v as usize;
        if v == 0 || v > MAX_SEARCH_ORDER {
            return Err(Error::SizeLimit { what: "search order", got: v, limit: MAX_SEARCH_ORDER });
        }
        if p.k >= p.v || p.b < p.a {
            return Err(Error::Infeasible(format!("Deza parameters {p}")));
        }
        let k = p.k as usize;
        let counts: u64 = (1u64 << p.a) | (1u64 << p.b);
        let kc = v - 1 - k;
        if kc >= k {
            return Ok(Problem { v, k, adjacent: counts, nonadjacent: counts, complement: false });
        }
        // in the complement a pair keeps c + v − 2k common neighbours if it
        // was adjacent in G and c + v − 2k − 2 otherwise
        let shift = |c: u64, minus: usize| -> u64 {
            let c = c as i64 + v as i64 - 2 * k as i64 - minus as i64;
            if (0..64).contains(&c) { 1u64 << c } else { 0 }
        };
        let non_g = shift(p.a, 0) | shift(p.b, 0);
        let adj_g = shift(p.a, 2) | shift(p.b, 2);
        Ok(Problem { v, k: kc, adjacent: adj_g, nonadjacent: non_g, complement: true })
    }

    fn mask(&self, adjacent: bool) -> u64 {
        if adjacent { self.adjacent } else { self.nonadjacent }
    }
}

fn range_mask(lo: u32, hi: u32) -> u64 {
    if lo > hi || lo >= 64 {
        return 0;
    }
    let hi = hi.min(63);
    let upper = if hi == 63 { u64::MAX } else { (1u64 << (hi + 1)) - 1 };
    upper & !((1u64 << lo) - 1)
}

fn max_bit(mask: u64) -> u32 {
    63 - mask.leading_zeros()
}

/// Partial graph: rows `0..head` are final, rows of later vertices hold
/// only their edges to the head.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct State {
    pub rows: [u32; MAX_SEARCH_ORDER],
    pub head: u8,
}

impl State {
    fn root() -> State {
        State { rows: [0; MAX_SEARCH_ORDER], head: 0 }
    }

    fn deg(&self, x: usize) -> u32 {
        self.rows[x].count_ones()
    }

    fn connect(&mut self, x: usize, y: usize) {
        self.rows[x] |= 1 << y;
        self.rows[y] |= 1 << x;
    }

    /// Runs of equal columns among vertices `from..v`.
    fn blocks(&self, from: usize, v: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for t in from..v {
            match out.last_mut() {
                Some((s, len)) if self.rows[*s] == self.rows[t] => *len += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }

    fn graph(&self, v: usize) -> Graph {
        Graph::from_fn(v, |x, y| self.rows[x] >> y & 1 == 1).expect("v ≤ 32")
    }
}

/// Rejects states that can no longer be completed.
fn feasible(s: &State, p: &Problem) -> bool {
    let (v, k, h) = (p.v, p.k as u32, s.head as usize);
    let tail_mask: u32 = if v == 32 { !0u32 << h } else { ((1u32 << v) - 1) & (!0u32 << h) };
    let tail_len = (v - h) as u32;
    for t in h..v {
        let d = s.deg(t);
        if d > k || d + tail_len - 1 < k {
            return false;
        }
    }
    for r in 0..h {
        let row_r = s.rows[r];
        let open = (row_r & tail_mask).count_ones();
        for t in h..v {
            let adj = row_r >> t & 1 == 1;
            let known = (row_r & s.rows[t]).count_ones();
            let room = (open - adj as u32).min(k - s.deg(t));
            if p.mask(adj) & range_mask(known, known + room) == 0 {
                return false;
            }
        }
    }
    let either = p.adjacent | p.nonadjacent;
    if either == 0 {
        return v - h < 2 && h >= 2 || v < 2;
    }
    let top = max_bit(either);
    for t in h..v {
        for u in t + 1..v {
            let known = (s.rows[t] & s.rows[u]).count_ones();
            if known > top {
                return false;
            }
            let room = (k - s.deg(t)).min(k - s.deg(u)).min(tail_len.saturating_sub(2));
            if either & range_mask(known, known + room) == 0 {
                return false;
            }
        }
    }
    true
}

/// Every feasible way to commit the row of vertex `head`.
pub(crate) fn children(s: &State, p: &Problem, out: &mut Vec<State>) {
    let (v, d) = (p.v, s.head as usize);
    let deg = s.deg(d) as usize;
    if deg > p.k {
        return;
    }
    let need = p.k - deg;
    let blocks = s.blocks(d + 1, v);
    let nb = blocks.len();
    let mut base = [0u32; MAX_SEARCH_ORDER];
    let mut masks = [0u64; MAX_SEARCH_ORDER];
    for r in 0..d {
        base[r] = (s.rows[r] & s.rows[d]).count_ones();
        masks[r] = p.mask(s.rows[d] >> r & 1 == 1);
    }
    // suffix[b][r]: vertices adjacent to r in blocks b..
    let mut suffix = vec![[0u32; MAX_SEARCH_ORDER]; nb + 1];
    let mut sizes_after = vec![0usize; nb + 1];
    for b in (0..nb).rev() {
        let (start, len) = blocks[b];
        suffix[b] = suffix[b + 1];
        sizes_after[b] = sizes_after[b + 1] + len;
        let col = s.rows[start];
        for (r, slot) in suffix[b].iter_mut().enumerate().take(d) {
            if col >> r & 1 == 1 {
                *slot += len as u32;
            }
        }
    }
    let mut choice = vec![0usize; nb];
    let mut ctx = Choose { s, p, blocks: &blocks, suffix: &suffix, sizes_after: &sizes_after, masks: &masks, d, out };
    ctx.go(0, need, &mut base, &mut choice);
}

struct Choose<'a> {
    s: &'a State,
    p: &'a Problem,
    blocks: &'a [(usize, usize)],
    suffix: &'a [[u32; MAX_SEARCH_ORDER]],
    sizes_after: &'a [usize],
    masks: &'a [u64; MAX_SEARCH_ORDER],
    d: usize,
    out: &'a mut Vec<State>,
}

impl Choose<'_> {
    fn go(&mut self, b: usize, left: usize, counts: &mut [u32; MAX_SEARCH_ORDER], choice: &mut [usize]) {
        let d = self.d;
        if b == self.blocks.len() {
            if left != 0 || (0..d).any(|r| self.masks[r] >> counts[r] & 1 == 0) {
                return;
            }
            let mut child = *self.s;
            for (&(start, _), &c) in self.blocks.iter().zip(choice.iter()) {
                for t in start..start + c {
                    child.connect(d, t);
                }
            }
            child.head += 1;
            if feasible(&child, self.p) {
                self.out.push(child);
            }
            return;
        }
        if self.sizes_after[b] < left {
            return;
        }
        let (start, len) = self.blocks[b];
        let col = self.s.rows[start];
        for c in (0..=len.min(left)).rev() {
            let mut ok = true;
            for r in 0..d {
                let add = if col >> r & 1 == 1 { c as u32 } else { 0 };
                let now = counts[r] + add;
                let room = (self.suffix[b + 1][r] as usize).min(left - c) as u32;
                if self.masks[r] & range_mask(now, now + room) == 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for r in 0..d {
                if col >> r & 1 == 1 {
                    counts[r] += c as u32;
                }
            }
            choice[b] = c;
            self.go(b + 1, left - c, counts, choice);
            for r in 0..d {
                if col >> r & 1 == 1 {
                    counts[r] -= c as u32;
                }
            }
        }
        choice[b] = 0;
    }
}

/// Canonical key of the compressed partial graph.
pub(crate) fn state_key(s: &State, v: usize) -> Box<[u32]> {
    let h = s.head as usize;
    let blocks = s.blocks(h, v);
    let order = h + blocks.len();
    let mut rows = [0u32; MAX_SEARCH_ORDER];
    let head_mask = if h == 32 { !0u32 } else { (1u32 << h) - 1 };
    for x in 0..h {
        rows[x] = s.rows[x] & head_mask;
    }
    for (i, &(start, _)) in blocks.iter().enumerate() {
        let col = s.rows[start];
        let node = h + i;
        for r in 0..h {
            if col >> r & 1 == 1 {
                rows[node] |= 1 << r;
                rows[r] |= 1 << node;
            }
        }
    }
    let g = Graph::from_fn(order, |x, y| rows[x] >> y & 1 == 1).expect("order ≤ 32");
    let mut colors = vec![0u32; h];
    colors.extend(blocks.iter().map(|&(_, len)| len as u32));
    let c = canonize(&g, &colors);
    let mut key = Vec::with_capacity(2 * order);
    for x in 0..order {
        key.push(c.graph.row(x)[0] as u32);
    }
    key.extend_from_slice(&c.colors);
    key.into_boxed_slice()
}

struct Control {
    start: Instant,
    time_budget: Option<Duration>,
    node_budget: Option<u64>,
}

impl Control {
    fn tripped(&self, nodes: u64) -> bool {
        self.node_budget.is_some_and(|b| nodes > b) || self.time_budget.is_some_and(|t| self.start.elapsed() >= t)
    }
}

/// Runs the level-by-level search. Returns the complete graphs (in the
/// searched problem, not yet complemented back), the node count and whether
/// it ran to completion.
fn run(problem: &Problem, task: &SearchTask) -> Result<(Vec<State>, u64, bool)> {
    let ctl = Control { start: Instant::now(), time_budget: task.time_budget, node_budget: task.node_budget };
    let (mut frontier, mut nodes) = match task.checkpoint.as_deref() {
        Some(path) if path.exists() => {
            let text = std::fs::read_to_string(path)?;
            let cp = parse_checkpoint(&text)?;
            if cp.problem != *problem {
                return Err(Error::Checkpoint { line: 2, reason: "checkpoint belongs to a different search".into() });
            }
            (cp.frontier, cp.nodes)
        }
        _ => (vec![State::root()], 0),
    };
    let level_of = |f: &[State]| f.first().map(|s| s.head as usize);
    while let Some(level) = level_of(&frontier) {
        if level == problem.v {
            break;
        }
        let mut seen: HashSet<Box<[u32]>> = HashSet::new();
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            if ctl.tripped(nodes) {
                return Ok((Vec::new(), nodes, false));
            }
            let produced: Vec<Vec<(Box<[u32]>, State)>> = chunk
                .par_iter()
                .map(|s| {
                    let mut kids = Vec::new();
                    children(s, problem, &mut kids);
                    kids.into_iter().map(|c| (state_key(&c, problem.v), c)).collect()
                })
                .collect();
            for (key, st) in produced.into_iter().flatten() {
                nodes += 1;
                if seen.insert(key) {
                    next.push(st);
                }
            }
        }
        frontier = next;
        log::info!("level {}: {} states, {} nodes, {:.1}s", level + 1, frontier.len(), nodes, ctl.start.elapsed().as_secs_f64());
        if let Some(path) = task.checkpoint.as_deref() {
            write_checkpoint(path, &Checkpoint { problem: *problem, nodes, frontier: frontier.clone() })?;
        }
    }
    Ok((frontier, nodes, true))
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Every graph of the target's Deza shadow, canonical and sorted by graph6.
fn search_graphs(task: &SearchTask) -> Result<(Vec<Graph>, u64, bool)> {
    let deza = task.target.deza_params();
    let problem = Problem::from_deza(&deza)?;
    let (leaves, nodes, done) = with_pool(task.thread_count, || run(&problem, task))??;
    let mut graphs: Vec<(String, Graph)> = leaves
        .par_iter()
        .map(|s| {
            let g = s.graph(problem.v);
            let g = if problem.complement { g.complement() } else { g };
            let c = canonical_form(&g).0;
            (graph6::encode(&c), c)
        })
        .collect();
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    graphs.dedup_by(|a, b| a.0 == b.0);
    Ok((graphs.into_iter().map(|(_, g)| g).collect(), nodes, done))
}

fn finish(graphs: Vec<Graph>, nodes: u64, exhausted: bool) -> SearchResult {
    let mut out: Vec<String> = graphs.iter().map(graph6::encode).collect();
    out.sort();
    SearchResult { graphs: out, node_count: nodes, exhausted }
}

/// A proper DDG structure carried by `g`, if any: some value `λ1` of the
/// common-neighbour count whose relation (with equality) is an equivalence
/// with at least two classes, all of equal size at least two.
pub fn ddg_structure(g: &Graph) -> Option<(DdgParams, VertexPartition)> {
    let dz = deza_check(g).params?;
    if dz.a == dz.b {
        return None;
    }
    let v = g.order();
    for (l1, l2) in [(dz.b, dz.a), (dz.a, dz.b)] {
        let mut class_of = vec![usize::MAX; v];
        let mut sizes = Vec::new();
        let mut ok = true;
        for x in 0..v {
            if class_of[x] != usize::MAX {
                continue;
            }
            class_of[x] = sizes.len();
            let mut size = 1;
            for y in x + 1..v {
                if g.common_count(x, y) as u64 == l1 {
                    if class_of[y] != usize::MAX {
                        ok = false;
                    }
                    class_of[y] = sizes.len();
                    size += 1;
                }
            }
            sizes.push(size);
        }
        let n = sizes[0];
        if !ok || n < 2 || sizes.len() < 2 || sizes.iter().any(|&s| s != n) {
            continue;
        }
        let params = DdgParams { v: v as u64, k: dz.k, lambda1: l1, lambda2: l2, m: sizes.len() as u64, n: n as u64 };
        let part = VertexPartition::new(class_of, sizes.len()).ok()?;
        if check_ddg_partition(g, &part, &params) {
            return Some((params, part));
        }
    }
    None
}

/// Isomorph-free enumeration of Deza graphs with the target parameters.
/// DDG-carrying graphs are kept or dropped according to `task.mode`.
pub fn enumerate_deza(task: &SearchTask) -> Result<SearchResult> {
    let Target::Deza(_) = task.target else {
        return Err(Error::Precondition("enumerate_deza needs Deza parameters".into()));
    };
    let (graphs, nodes, done) = search_graphs(task)?;
    let keep = |g: &Graph| match task.mode {
        Mode::AllDeza => true,
        Mode::DdgOnly => ddg_structure(g).is_some(),
        Mode::NonDdgOnly => ddg_structure(g).is_none(),
    };
    Ok(finish(graphs.into_iter().filter(keep).collect(), nodes, done))
}

/// Isomorph-free enumeration of DDGs with the target parameters: Deza
/// graphs of the shadow, split by the partition check. With `AllDeza` the
/// whole shadow is returned.
pub fn enumerate_ddg(task: &SearchTask) -> Result<SearchResult> {
    let Target::Ddg(p) = task.target else {
        return Err(Error::Precondition("enumerate_ddg needs DDG parameters".into()));
    };
    p.validate()?;
    let (graphs, nodes, done) = search_graphs(task)?;
    let (ddgs, others) = filter_ddg(&graphs, &p);
    let chosen = match task.mode {
        Mode::AllDeza => graphs,
        Mode::DdgOnly => ddgs,
        Mode::NonDdgOnly => others,
    };
    Ok(finish(chosen, nodes, done))
}

/// Splits by the DDG partition check. With `λ1 = λ2` any partition into
/// `m` classes of size `n` works, so the check is the Deza condition.
pub fn filter_ddg(graphs: &[Graph], p: &DdgParams) -> (Vec<Graph>, Vec<Graph>) {
    graphs.iter().cloned().partition(|g| {
        if p.lambda1 == p.lambda2 {
            let part = VertexPartition::blocks(p.m as usize, p.n as usize);
            check_ddg_partition(g, &part, p)
        } else {
            matches!(ddg_partition(g, p), Ok(Some(_)))
        }
    })
}

pub(crate) struct Checkpoint {
    pub problem: Problem,
    pub nodes: u64,
    pub frontier: Vec<State>,
}

pub(crate) fn render_checkpoint(cp: &Checkpoint) -> String {
    let p = &cp.problem;
    let mut s = String::new();
    let _ = writeln!(s, "{CHECKPOINT_MAGIC}");
    let _ = writeln!(s, "problem {} {} {:x} {:x} {}", p.v, p.k, p.adjacent, p.nonadjacent, p.complement as u8);
    let _ = writeln!(s, "nodes {}", cp.nodes);
    let _ = writeln!(s, "states {}", cp.frontier.len());
    for st in &cp.frontier {
        let _ = write!(s, "{}", st.head);
        for r in &st.rows[..p.v] {
            let _ = write!(s, " {r:x}");
        }
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, render_checkpoint(cp))?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Parses a frontier file. Every state must be symmetric, loop-free and
/// have the same head size.
pub fn validate_checkpoint(text: &str) -> Result<usize> {
    parse_checkpoint(text).map(|cp| cp.frontier.len())
}

pub(crate) fn parse_checkpoint(text: &str) -> Result<Checkpoint> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    let err = |line: usize, reason: &str| Error::Checkpoint { line, reason: reason.to_string() };
    let mut next = |what: &str| lines.next().ok_or_else(|| err(0, &format!("missing {what}")));
    let (ln, magic) = next("header")?;
    if magic != CHECKPOINT_MAGIC {
        return Err(err(ln, "unknown header"));
    }
    let (ln, line) = next("problem line")?;
    let f: Vec<&str> = line.split_whitespace().collect();
    if f.len() != 6 || f[0] != "problem" {
        return Err(err(ln, "expected `problem v k adjacent nonadjacent complement`"));
    }
    let num = |s: &str, radix: u32| u64::from_str_radix(s, radix).map_err(|e| err(ln, &e.to_string()));
    let v = num(f[1], 10)? as usize;
    let k = num(f[2], 10)? as usize;
    if v == 0 || v > MAX_SEARCH_ORDER || k >= v {
        return Err(err(ln, "order or valency out of range"));
    }
    let complement = match f[5] {
        "0" => false,
        "1" => true,
        _ => return Err(err(ln, "complement flag must be 0 or 1")),
    };
    let problem = Problem { v, k, adjacent: num(f[3], 16)?, nonadjacent: num(f[4], 16)?, complement };
    let (ln, line) = next("nodes line")?;
    let nodes = line
        .strip_prefix("nodes ")
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| err(ln, "expected `nodes N`"))?;
    let (ln, line) = next("states line")?;
    let count = line
        .strip_prefix("states ")
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| err(ln, "expected `states N`"))?;
    let mut frontier = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let (ln, line) = next("state")?;
        let mut parts = line.split_whitespace();
        let head: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(ln, "expected head size"))?;
        if head > v {
            return Err(err(ln, "head larger than order"));
        }
        let mut st = State { rows: [0; MAX_SEARCH_ORDER], head: head as u8 };
        for x in 0..v {
            let word = parts.next().ok_or_else(|| err(ln, "too few rows"))?;
            st.rows[x] = u32::from_str_radix(word, 16).map_err(|e| err(ln, &e.to_string()))?;
        }
        if parts.next().is_some() {
            return Err(err(ln, "too many rows"));
        }
        let limit: u64 = (1u64 << v) - 1;
        for x in 0..v {
            if st.rows[x] as u64 & !limit != 0 || st.rows[x] >> x & 1 == 1 {
                return Err(err(ln, "row outside the vertex range or with a loop"));
            }
            for y in 0..v {
                if (st.rows[x] >> y & 1) != (st.rows[y] >> x & 1) {
                    return Err(err(ln, "rows are not symmetric"));
                }
                if x >= head && y >= head && st.rows[x] >> y & 1 == 1 {
                    return Err(err(ln, "edge between undecided vertices"));
                }
            }
        }
        if frontier.first().is_some_and(|f: &State| f.head != st.head) {
            return Err(err(ln, "states from different levels"));
        }
        frontier.push(st);
    }
    let (ln, line) = next("end marker")?;
    if line != "end" {
        return Err(err(ln, "expected `end`"));
    }
    if let Some((ln, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(err(ln, "trailing content after `end`"));
    }
    Ok(Checkpoint { problem, nodes, frontier })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::constructions::{hadamard_ddg, hadamard_seed, lattice4, Seed};
    use crate::params::{family_a, family_b};

    /// All labelled `k`-regular graphs on `v` vertices by edge backtracking,
    /// filtered by the Deza condition and reduced by canonical form.
    fn brute_force(v: usize, k: usize, b: usize, a: usize) -> Vec<String> {
        fn rec(k: usize, pair: usize, pairs: &[(usize, usize)], deg: &mut [usize], adj: &mut Vec<Vec<bool>>, out: &mut Vec<Graph>) {
            if pair == pairs.len() {
                if deg.iter().all(|&d| d == k) {
                    out.push(Graph::from_matrix(adj).unwrap());
                }
                return;
            }
            let (x, y) = pairs[pair];
            // x's row closes at the last pair with this x
            let closes = pair + 1 == pairs.len() || pairs[pair + 1].0 != x;
            for on in [false, true] {
                if on && (deg[x] == k || deg[y] == k) {
                    continue;
                }
                if on {
                    deg[x] += 1;
                    deg[y] += 1;
                }
                adj[x][y] = on;
                adj[y][x] = on;
                if !closes || deg[x] == k {
                    rec(k, pair + 1, pairs, deg, adj, out);
                }
                adj[x][y] = false;
                adj[y][x] = false;
                if on {
                    deg[x] -= 1;
                    deg[y] -= 1;
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|x| (x + 1..v).map(move |y| (x, y))).collect();
        let mut all = Vec::new();
        rec(k, 0, &pairs, &mut vec![0; v], &mut vec![vec![false; v]; v], &mut all);
        let mut out: Vec<String> = all
            .iter()
            .filter(|g| (0..v).all(|x| (x + 1..v).all(|y| [a, b].contains(&g.common_count(x, y)))))
            .map(|g| graph6::encode(&canonical_form(g).0))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn deza(v: u64, k: u64, b: u64, a: u64) -> SearchResult {
        let task = SearchTask::new(Target::Deza(DezaParams::new(v, k, b, a).unwrap()));
        enumerate_deza(&task).unwrap()
    }

    #[test]
    fn matches_brute_force_on_small_orders() {
        for v in 3..=8usize {
            for k in 1..v {
                if v * k % 2 == 1 {
                    continue;
                }
                for a in 0..=k {
                    for b in a..=k {
                        let got = deza(v as u64, k as u64, b as u64, a as u64);
                        assert!(got.exhausted);
                        assert_eq!(got.graphs, brute_force(v, k, b, a), "({v},{k},{b},{a})");
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_is_the_only_twelve_vertex_graph() {
        let r = deza(12, 5, 2, 1);
        assert_eq!(r.graphs.len(), 1);
        assert!(are_isomorphic(&r.decoded()[0], &lattice4(3).unwrap().0));
        let task = SearchTask::new(Target::Ddg(family_a(3).unwrap())).mode(Mode::DdgOnly);
        assert_eq!(enumerate_ddg(&task).unwrap().graphs, r.graphs);
    }

    #[test]
    fn dense_family_member_found() {
        let (h, _) = hadamard_ddg(&hadamard_seed(Seed::Second), 3).unwrap();
        let p = family_b(3).unwrap();
        let task = SearchTask::new(Target::Ddg(p)).mode(Mode::DdgOnly);
        let r = enumerate_ddg(&task).unwrap();
        assert!(r.decoded().iter().any(|g| are_isomorphic(g, &h)));
        for g in r.decoded() {
            assert_eq!(deza_check(&g).params, Some(p.deza_shadow()));
        }
    }

    #[test]
    fn budget_stops_early() {
        let mut task = SearchTask::new(Target::Deza(DezaParams::new(12, 5, 2, 1).unwrap()));
        task.node_budget = Some(3);
        let r = enumerate_deza(&task).unwrap();
        assert!(!r.exhausted);
        assert!(r.graphs.is_empty());
    }

    #[test]
    fn checkpoint_round_trip() {
        let p = Problem::from_deza(&DezaParams::new(12, 5, 2, 1).unwrap()).unwrap();
        let mut kids = Vec::new();
        children(&State::root(), &p, &mut kids);
        let cp = Checkpoint { problem: p, nodes: 7, frontier: kids.clone() };
        let text = render_checkpoint(&cp);
        let back = parse_checkpoint(&text).unwrap();
        assert_eq!(back.problem, p);
        assert_eq!(back.nodes, 7);
        assert_eq!(back.frontier, kids);
        let broken = text.replacen("states", "stat", 1);
        assert!(matches!(parse_checkpoint(&broken), Err(Error::Checkpoint { line: 4, .. })));
    }

    #[test]
    fn resumes_from_checkpoint() {
        let dir = std::env::temp_dir().join(format!("ddg-cp-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("frontier.txt");
        let _ = std::fs::remove_file(&path);
        let params = DezaParams::new(12, 5, 2, 1).unwrap();
        let mut task = SearchTask::new(Target::Deza(params));
        task.checkpoint = Some(path.clone());
        task.node_budget = Some(10);
        let first = enumerate_deza(&task).unwrap();
        assert!(!first.exhausted);
        assert!(path.exists());
        task.node_budget = None;
        let resumed = enumerate_deza(&task).unwrap();
        assert!(resumed.exhausted);
        assert_eq!(resumed.graphs, deza(12, 5, 2, 1).graphs);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn oversize_rejected() {
        assert!(matches!(
            Problem::from_deza(&DezaParams::new(33, 4, 2, 0).unwrap()),
            Err(Error::SizeLimit { .. })
        ));
    }
}
