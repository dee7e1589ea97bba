use ddg_core::canon::canonical_form;
use ddg_core::constructions::seidel_switch;
use ddg_core::corpus::{parse_corpus, render_matrices};
use ddg_core::graph6;
use ddg_core::params::{ddg_eigenvalues, family_a, family_b, multiplicity_solutions, trace_table, DdgParams};
use ddg_core::quotient::{quotient_matrix_candidates, quotient_row_solutions};
use ddg_core::verify::deza_check;
use ddg_core::{Graph, PermutationMap};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(order: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> =
        (0..order).flat_map(|x| (0..x).map(move |y| (x, y))).filter(|_| rng.gen_bool(density)).collect();
    Graph::from_edges(order, &edges).unwrap()
}

fn shuffle(order: usize, seed: u64) -> PermutationMap {
    let mut image: Vec<usize> = (0..order).collect();
    image.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    PermutationMap::new(image).unwrap()
}

fn graphs() -> impl Strategy<Value = Graph> {
    (1usize..=24, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, d, s)| random_graph(n, d, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn canonical_form_ignores_labels(g in graphs(), seed in any::<u64>()) {
        let h = g.permuted(&shuffle(g.order(), seed));
        let (cg, pg) = canonical_form(&g);
        prop_assert_eq!(&cg, &canonical_form(&h).0);
        prop_assert_eq!(&g.permuted(&pg), &cg);
    }

    #[test]
    fn double_counting(g in graphs()) {
        for x in 0..g.order() {
            let lhs: usize = (0..g.order()).filter(|&y| y != x).map(|y| g.common_count(x, y)).sum();
            let rhs: usize = g.neighbors(x).map(|z| g.degree(z) - 1).sum();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn graph6_round_trip(g in graphs()) {
        let text = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn graphs_stay_simple(g in graphs(), seed in any::<u64>(), k in 0usize..24) {
        prop_assert!(g.check_invariants());
        prop_assert!(g.complement().check_invariants());
        let set: Vec<usize> = (0..g.order()).filter(|v| (seed >> (v % 64)) & 1 == 1).take(k).collect();
        let s = seidel_switch(&g, &set).unwrap();
        prop_assert!(s.check_invariants());
        prop_assert_eq!(seidel_switch(&s, &set).unwrap(), g);
    }

    #[test]
    fn deza_verdict_consistent(g in graphs()) {
        let v = deza_check(&g);
        prop_assert_eq!(v.is_deza, v.params.is_some());
        prop_assert_eq!(v.is_deza, v.witness.is_none());
    }

    #[test]
    fn permutations_are_bijections(order in 1usize..64, seed in any::<u64>()) {
        let p = shuffle(order, seed);
        prop_assert!(p.after(&p.inverse()).is_identity());
        prop_assert!(PermutationMap::new(vec![0; order + 1]).is_err());
    }

    #[test]
    fn corpus_round_trip(gs in prop::collection::vec((2usize..=24, 0.0f64..=1.0, any::<u64>()), 1..5)) {
        let gs: Vec<Graph> = gs.into_iter().map(|(n, d, s)| random_graph(n, d, s)).collect();
        let got = parse_corpus(&render_matrices(&gs));
        prop_assert_eq!(got.len(), gs.len());
        for (entry, g) in got.iter().zip(&gs) {
            prop_assert_eq!(&entry.as_ref().unwrap().graph6, &graph6::encode(&canonical_form(g).0));
        }
    }
}

fn integers(p: &DdgParams) -> Vec<i64> {
    let mut e: Vec<i64> = ddg_eigenvalues(p).unwrap().iter().map(|v| v.as_integer().unwrap()).collect();
    e.sort();
    e
}

fn sorted(mut e: Vec<i64>) -> Vec<i64> {
    e.sort();
    e
}

#[test]
fn family_eigenvalues() {
    for n in 3..=16i64 {
        let a = family_a(n as u64).unwrap();
        let b = family_b(n as u64).unwrap();
        let mut want_a = sorted(vec![n + 2, 2, -2, n - 2, -(n - 2)]);
        let mut want_b = sorted(vec![3 * n - 2, 2, -2, n - 2, -(n - 2)]);
        if n == 4 {
            want_a.dedup();
            want_b.dedup();
        }
        let mut got_a = integers(&a);
        let mut got_b = integers(&b);
        got_a.dedup();
        got_b.dedup();
        assert_eq!(got_a, want_a, "family A, n = {n}");
        assert_eq!(got_b, want_b, "family B, n = {n}");
    }
}

#[test]
fn spectrum_solutions_vanish() {
    for n in (3..=16u64).filter(|&n| n != 4) {
        for p in [family_a(n).unwrap(), family_b(n).unwrap()] {
            let s1 = ((p.k - p.lambda1) as f64).sqrt() as i64;
            let s2 = ((p.k * p.k - p.lambda2 * p.v) as f64).sqrt() as i64;
            assert_eq!(s1 * s1, (p.k - p.lambda1) as i64);
            assert_eq!(s2 * s2, (p.k * p.k - p.lambda2 * p.v) as i64);
            let sols = multiplicity_solutions(&p).unwrap();
            assert!(!sols.is_empty());
            for s in sols {
                let tr = p.k as i64 + (s.f1 as i64 - s.f2 as i64) * s1 + (s.g1 as i64 - s.g2 as i64) * s2;
                assert_eq!(tr, 0, "{p} {s:?}");
                assert_eq!(s.f1 + s.f2, p.m * (p.n - 1));
                assert_eq!(s.g1 + s.g2, p.m - 1);
                assert_eq!(s.quotient_trace, p.k as i64 + (s.g1 as i64 - s.g2 as i64) * s2);
            }
        }
    }
}

fn brute_rows(p: &DdgParams) -> Vec<[u64; 4]> {
    let target = p.k * p.k - p.lambda2 * p.v + p.lambda2 * p.n;
    let mut out = Vec::new();
    for a in 0..=p.n {
        for b in 0..=p.n {
            for c in 0..=p.n {
                for d in 0..=p.n {
                    if a + b + c + d == p.k && a * a + b * b + c * c + d * d == target {
                        let mut r = [a, b, c, d];
                        r.sort_by(|x, y| y.cmp(x));
                        out.push(r);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn row_solutions_match_brute_force() {
    for n in (3..=16u64).filter(|&n| n != 4) {
        for p in [family_a(n).unwrap(), family_b(n).unwrap()] {
            let mut got = quotient_row_solutions(&p).unwrap();
            got.sort();
            assert_eq!(got, brute_rows(&p), "{p}");
        }
    }
}

#[test]
fn candidates_satisfy_square_identity() {
    for n in (3..=16u64).filter(|&n| n != 4) {
        for p in [family_a(n).unwrap(), family_b(n).unwrap()] {
            let c = quotient_matrix_candidates(&p).unwrap();
            assert!(!c.matrices.is_empty());
            for (_, r) in &c.matrices {
                for i in 0..4 {
                    for j in 0..4 {
                        let sq: u64 = (0..4).map(|t| r.get(i, t) * r.get(t, j)).sum();
                        let want = p.lambda2 * p.n + if i == j { p.k * p.k - p.lambda2 * p.v } else { 0 };
                        assert_eq!(sq, want, "{p}\n{r}");
                    }
                }
            }
            assert_eq!(c.scope_note.is_some(), n <= 8);
        }
    }
}

#[test]
fn trace_tables() {
    for n in 9..=16i64 {
        let rows = trace_table(&family_a(n as u64).unwrap()).unwrap();
        let traces: Vec<i64> = rows.iter().map(|r| r.quotient_trace.unwrap()).collect();
        assert_eq!(traces, vec![4 * n - 4, 2 * n, 4, 8 - 2 * n]);
        assert_eq!(rows.iter().map(|r| r.excluded).collect::<Vec<_>>(), [false, false, false, true]);
        let rows = trace_table(&family_b(n as u64).unwrap()).unwrap();
        let traces: Vec<i64> = rows.iter().map(|r| r.quotient_trace.unwrap()).collect();
        assert_eq!(traces, vec![6 * n - 8, 4 * n - 4, 2 * n, 4]);
        assert_eq!(rows.iter().map(|r| r.excluded).collect::<Vec<_>>(), [true, false, false, false]);
    }
}
