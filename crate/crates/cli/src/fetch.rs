use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use ddg_core::canon::canonical_form;
use ddg_core::corpus::{parse_corpus, CorpusEntry, CorpusError};
use ddg_core::graph6;
use serde::Serialize;

use crate::report::{emit, read_graphs, read_text, report_json};
use crate::{Failure, FetchArgs};

#[derive(Serialize)]
struct FetchResult {
    source: String,
    count: usize,
    entries: Vec<CorpusEntry>,
    errors: Vec<CorpusError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Comparison>,
}

#[derive(Serialize)]
struct Comparison {
    matches: bool,
    missing: Vec<String>,
    unexpected: Vec<String>,
}

fn is_url(s: &str) -> bool {
    s.starts_with("http://") || s.starts_with("https://")
}

fn cache_name(url: &str) -> String {
    url.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' }).collect()
}

fn download(url: &str) -> Result<String, Failure> {
    log::info!("fetching {url}");
    let resp = ureq::get(url).call()?;
    Ok(resp.into_string()?)
}

fn load(a: &FetchArgs) -> Result<String, Failure> {
    if !is_url(&a.source) {
        return read_text(Path::new(&a.source));
    }
    let dir = a.cache_dir.clone().or_else(|| std::env::var_os("DDG_CACHE_DIR").map(PathBuf::from));
    let Some(dir) = dir else {
        return download(&a.source);
    };
    let path = dir.join(cache_name(&a.source));
    if !a.refresh {
        if let Ok(text) = std::fs::read_to_string(&path) {
            log::info!("using cached {}", path.display());
            return Ok(text);
        }
    }
    let text = download(&a.source)?;
    std::fs::create_dir_all(&dir)?;
    std::fs::write(&path, &text)?;
    Ok(text)
}

pub fn fetch(a: &FetchArgs) -> Result<(), Failure> {
    let text = load(a)?;
    let (mut entries, mut errors) = (Vec::new(), Vec::new());
    for e in parse_corpus(&text) {
        match e {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(e),
        }
    }
    let comparison = match &a.expect {
        Some(path) => {
            let want: BTreeSet<String> =
                read_graphs(path)?.iter().map(|g| graph6::encode(&canonical_form(g).0)).collect();
            let got: BTreeSet<String> = entries.iter().map(|e| e.graph6.clone()).collect();
            let missing: Vec<String> = want.difference(&got).cloned().collect();
            let unexpected: Vec<String> = got.difference(&want).cloned().collect();
            Some(Comparison { matches: missing.is_empty() && unexpected.is_empty(), missing, unexpected })
        }
        None => None,
    };
    for e in &errors {
        eprintln!("{}: {e}", a.source);
    }
    let ok = comparison.as_ref().is_none_or(|c| c.matches);
    let result = FetchResult { source: a.source.clone(), count: entries.len(), entries, errors, comparison };
    emit(&report_json(&[result]), None)?;
    if ok { Ok(()) } else { Err(Failure::Check) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_names_are_flat() {
        assert_eq!(cache_name("https://a.b/c?d=1"), "https___a.b_c_d_1");
        assert!(is_url("http://x") && !is_url("x.html"));
    }
}
