//! JSON report envelope and plain I/O helpers.

use std::io::Read;
use std::path::Path;

use ddg_core::graph6;
use ddg_core::Graph;
use serde::Serialize;

use crate::Failure;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: u32,
    results: &'a [T],
}

/// `{"version":1,"results":[...]}`; fields keep declaration order.
pub fn report_json<T: Serialize>(results: &[T]) -> String {
    serde_json::to_string(&Envelope { version: SCHEMA_VERSION, results }).expect("report types serialize")
}

pub fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn read_graphs(path: &Path) -> Result<Vec<Graph>, Failure> {
    let text = read_text(path)?;
    graph6::decode_lines(&text).map_err(|(line, e)| Failure::Usage(format!("{}:{line}: {e}", path.display())))
}

pub fn graph6_lines(graphs: &[Graph]) -> String {
    graphs.iter().map(|g| graph6::encode(g) + "\n").collect()
}

pub fn parse_tuple(text: &str, len: usize, what: &str) -> Result<Vec<u64>, Failure> {
    let values: Result<Vec<u64>, _> = text.split(',').map(|s| s.trim().parse::<u64>()).collect();
    match values {
        Ok(v) if v.len() == len => Ok(v),
        _ => Err(Failure::Usage(format!("{what} must be {len} comma-separated integers, got {text:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let none: [u8; 0] = [];
        assert_eq!(report_json(&none), r#"{"version":1,"results":[]}"#);
    }

    #[test]
    fn tuples() {
        assert_eq!(parse_tuple("24, 8,4,2", 4, "p").unwrap(), vec![24, 8, 4, 2]);
        assert!(parse_tuple("24,8,4", 4, "p").is_err());
        assert!(parse_tuple("24,x,4,2", 4, "p").is_err());
    }
}
