use std::collections::BTreeSet;

use ddg_core::canon::canonical_form;
use ddg_core::graph6;
use ddg_core::params::DezaParams;
use ddg_core::search::ddg_structure;
use ddg_core::verify::deza_check;
use ddg_core::Graph;

fn fixture(name: &str) -> Vec<Graph> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    graph6::decode_lines(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Valency of the b-relation when it is regular.
fn b_relation_degree(g: &Graph, b: usize) -> Option<usize> {
    let deg: BTreeSet<usize> =
        (0..g.order()).map(|x| (0..g.order()).filter(|&y| y != x && g.common_count(x, y) == b).count()).collect();
    (deg.len() == 1).then(|| *deg.first().unwrap())
}

#[test]
fn v24_k8_strict_deza_fixture() {
    let gs = fixture("nonddg_24_8_4_2.g6");
    assert_eq!(gs.len(), 60);
    let want = DezaParams::new(24, 8, 4, 2).unwrap();
    let keys: BTreeSet<String> = gs.iter().map(|g| graph6::encode(&canonical_form(g).0)).collect();
    assert_eq!(keys.len(), 60);
    for g in &gs {
        assert_eq!(deza_check(g).params, Some(want));
        assert!(ddg_structure(g).is_none());
        assert_eq!(b_relation_degree(g, 4), Some(5));
    }
}
