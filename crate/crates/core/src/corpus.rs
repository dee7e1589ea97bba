//! Adjacency-matrix lists as published on web pages or in text files.
//!
//! Markup is stripped, then every maximal run of consecutive lines made of
//! `0`/`1` digits of one length `L ≥ 2` (optionally separated by spaces or
//! commas) is cut into `L × L` matrices. Anything else separates runs.

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::graph::{Graph, MAX_ORDER};
use crate::graph6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    /// 1-based line of the matrix's first row.
    pub line: usize,
    pub order: usize,
    /// graph6 of the canonical form.
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusError {
    pub line: usize,
    pub reason: String,
}

impl std::fmt::Display for CorpusError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

/// Removes `<...>` tags and the common entities. Tags may span lines; line
/// breaks inside them are kept so line numbers stay put.
pub fn strip_markup(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_tag = false;
    for c in text.chars() {
        match c {
            '<' => in_tag = true,
            '>' if in_tag => {
                in_tag = false;
                out.push(' ');
            }
            '\n' => out.push('\n'),
            _ if !in_tag => out.push(c),
            _ => {}
        }
    }
    out.replace("&nbsp;", " ").replace("&#160;", " ")
}

fn parse_row(line: &str) -> Option<Vec<bool>> {
    let mut bits = Vec::new();
    for c in line.chars() {
        match c {
            '0' => bits.push(false),
            '1' => bits.push(true),
            ' ' | '\t' | ',' | '\r' => {}
            _ => return None,
        }
    }
    (bits.len() >= 2).then_some(bits)
}

struct Run {
    first_line: usize,
    rows: Vec<Vec<bool>>,
}

fn runs(text: &str) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    let mut open = false;
    for (i, line) in text.lines().enumerate() {
        let Some(row) = parse_row(line) else {
            open = false;
            continue;
        };
        match out.last_mut() {
            Some(run) if open && run.rows[0].len() == row.len() => run.rows.push(row),
            _ => out.push(Run { first_line: i + 1, rows: vec![row] }),
        }
        open = true;
    }
    out
}

fn matrix_graph(rows: &[Vec<bool>], first_line: usize) -> Result<Graph, CorpusError> {
    let n = rows.len();
    if n > MAX_ORDER {
        return Err(CorpusError { line: first_line, reason: format!("order {n} exceeds {MAX_ORDER}") });
    }
    for x in 0..n {
        if rows[x][x] {
            return Err(CorpusError { line: first_line + x, reason: format!("non-zero diagonal at row {x}") });
        }
        for y in 0..x {
            if rows[x][y] != rows[y][x] {
                return Err(CorpusError { line: first_line + x, reason: format!("asymmetric entries ({x},{y}) and ({y},{x})") });
            }
        }
    }
    Graph::from_matrix(rows).map_err(|e| CorpusError { line: first_line, reason: e.to_string() })
}

/// Every matrix in `text`, in document order. A malformed matrix becomes an
/// error entry; the others are still returned.
pub fn parse_corpus(text: &str) -> Vec<Result<CorpusEntry, CorpusError>> {
    let clean = strip_markup(text);
    let mut out = Vec::new();
    for run in runs(&clean) {
        let len = run.rows[0].len();
        if run.rows.len() % len != 0 {
            out.push(Err(CorpusError {
                line: run.first_line,
                reason: format!("{} rows of length {len} do not form square matrices", run.rows.len()),
            }));
            continue;
        }
        for (i, block) in run.rows.chunks(len).enumerate() {
            let line = run.first_line + i * len;
            out.push(matrix_graph(block, line).map(|g| CorpusEntry {
                line,
                order: g.order(),
                graph6: graph6::encode(&canonical_form(&g).0),
            }));
        }
    }
    out
}

/// Plain `0`/`1` rows, one blank line between matrices.
pub fn render_matrices(graphs: &[Graph]) -> String {
    let mut s = String::new();
    for (i, g) in graphs.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        for x in 0..g.order() {
            s.extend((0..g.order()).map(|y| if g.has_edge(x, y) { '1' } else { '0' }));
            s.push('\n');
        }
    }
    s
}
