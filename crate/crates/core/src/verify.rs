//! Deza and DDG checks, partition recovery, quotient matrices and
//! walk-regularity.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::{DdgParams, DezaParams};
use crate::partition::VertexPartition;
use crate::quotient::{classify_quotient, QuotientMatrix, QuotientTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DezaVerdict {
    pub is_deza: bool,
    pub params: Option<DezaParams>,
    /// A pair whose common-neighbour count is a third value, or a vertex
    /// paired with itself when the graph is not regular.
    pub witness: Option<(usize, usize)>,
}

pub fn deza_check(g: &Graph) -> DezaVerdict {
    let n = g.order();
    let fail = |w| DezaVerdict { is_deza: false, params: None, witness: Some(w) };
    let Some(k) = g.regular_valency() else {
        let x = (0..n).find(|&x| g.degree(x) != g.degree(0)).unwrap_or(0);
        return fail((x, x));
    };
    let mut values: Vec<usize> = Vec::with_capacity(2);
    for x in 0..n {
        for y in x + 1..n {
            let c = g.common_count(x, y);
            if !values.contains(&c) {
                if values.len() == 2 {
                    return fail((x, y));
                }
                values.push(c);
            }
        }
    }
    let b = values.iter().copied().max().unwrap_or(0) as u64;
    let a = values.iter().copied().min().unwrap_or(0) as u64;
    let params = DezaParams { v: n as u64, k: k as u64, b, a };
    DezaVerdict { is_deza: true, params: Some(params), witness: None }
}

/// Recovers the class partition from the `λ1` relation.
///
/// Classes are numbered by their smallest vertex. Improper parameters are
/// rejected since the counts cannot separate the classes.
pub fn ddg_partition(g: &Graph, p: &DdgParams) -> Result<Option<VertexPartition>> {
    if p.lambda1 == p.lambda2 {
        return Err(Error::Unsupported(format!("improper parameters {p}: the partition must be supplied")));
    }
    if g.order() as u64 != p.v || g.regular_valency() != Some(p.k as usize) {
        return Ok(None);
    }
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut m = 0;
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        class_of[x] = m;
        for y in x + 1..n {
            if g.common_count(x, y) as u64 == p.lambda1 {
                if class_of[y] != usize::MAX {
                    return Ok(None);
                }
                class_of[y] = m;
            }
        }
        m += 1;
    }
    if m as u64 != p.m {
        return Ok(None);
    }
    let part = VertexPartition::new(class_of, m)?;
    Ok(check_ddg_partition(g, &part, p).then_some(part))
}

/// `g` is `k`-regular and `part` has `m` classes of size `n` with `λ1`
/// common neighbours inside classes and `λ2` across.
pub fn check_ddg_partition(g: &Graph, part: &VertexPartition, p: &DdgParams) -> bool {
    if g.order() as u64 != p.v
        || part.order() != g.order()
        || part.class_count() as u64 != p.m
        || !part.is_uniform(p.n as usize)
        || g.regular_valency() != Some(p.k as usize)
    {
        return false;
    }
    let n = g.order();
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            let want = if part.class_of(x) == part.class_of(y) { p.lambda1 } else { p.lambda2 };
            g.common_count(x, y) as u64 == want
        })
    })
}

/// Present iff `part` is equitable. `n` is the common class size, or 0
/// when sizes differ.
pub fn quotient_matrix(g: &Graph, part: &VertexPartition) -> Option<QuotientMatrix> {
    if part.order() != g.order() {
        return None;
    }
    let m = part.class_count();
    let mut entries = vec![vec![u64::MAX; m]; m];
    for x in 0..g.order() {
        let mut counts = vec![0u64; m];
        for y in g.neighbors(x) {
            counts[part.class_of(y)] += 1;
        }
        let row = &mut entries[part.class_of(x)];
        if row[0] == u64::MAX {
            *row = counts;
        } else if *row != counts {
            return None;
        }
    }
    let sizes = part.class_sizes();
    let n = if sizes.iter().all(|&s| s == sizes[0]) { sizes[0] as u64 } else { 0 };
    Some(QuotientMatrix { entries, n })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdgVerdict {
    pub is_ddg: bool,
    pub params: Option<DdgParams>,
    pub partition: Option<VertexPartition>,
    pub quotient: Option<QuotientMatrix>,
    pub canonical_class: Option<QuotientTag>,
}

impl DdgVerdict {
    fn negative() -> DdgVerdict {
        DdgVerdict { is_ddg: false, params: None, partition: None, quotient: None, canonical_class: None }
    }
}

/// Full DDG check against `p`. For improper parameters `partition` must be
/// given; otherwise it is recovered and a supplied one is only compared.
pub fn verify_ddg(g: &Graph, p: &DdgParams, partition: Option<&VertexPartition>) -> Result<DdgVerdict> {
    let part = match partition {
        Some(part) => check_ddg_partition(g, part, p).then(|| part.clone()),
        None => ddg_partition(g, p)?,
    };
    let Some(part) = part else {
        return Ok(DdgVerdict::negative());
    };
    let quotient = quotient_matrix(g, &part).expect("a DDG class partition is equitable");
    let tag = if p.m == 4 { Some(classify_quotient(&quotient, p).0) } else { None };
    Ok(DdgVerdict { is_ddg: true, params: Some(*p), partition: Some(part), quotient: Some(quotient), canonical_class: tag })
}

/// True iff the diagonal of `A^ℓ` is constant for every `2 ≤ ℓ ≤ max_power`.
pub fn walk_regular_check(g: &Graph, max_power: usize) -> bool {
    let n = g.order();
    let adj: Vec<Vec<usize>> = (0..n).map(|x| g.neighbors(x).collect()).collect();
    // w = A^ℓ, stored densely
    let mut w: Vec<Vec<BigUint>> = (0..n)
        .map(|x| (0..n).map(|y| BigUint::from(g.has_edge(x, y) as u8)).collect())
        .collect();
    for _ in 2..=max_power {
        let mut next = vec![vec![BigUint::zero(); n]; n];
        for (x, row) in next.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                for &z in &adj[y] {
                    *cell += &w[x][z];
                }
            }
        }
        w = next;
        if (1..n).any(|x| w[x][x] != w[0][0]) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{g_prime, hadamard_ddg, hadamard_seed, lattice4, Seed};
    use crate::params::{family_a, family_b};

    #[test]
    fn deza_examples() {
        let (l, _) = lattice4(6).unwrap();
        let v = deza_check(&l);
        assert_eq!(v.params, Some(DezaParams { v: 24, k: 8, b: 4, a: 2 }));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let v = deza_check(&path);
        assert!(!v.is_deza && v.params.is_none() && v.witness.is_some());
        let k4 = Graph::from_fn(4, |_, _| true).unwrap();
        assert_eq!(deza_check(&k4).params, Some(DezaParams { v: 4, k: 3, b: 2, a: 2 }));
    }

    #[test]
    fn partition_recovery() {
        let (l, rows) = lattice4(6).unwrap();
        assert_eq!(ddg_partition(&l, &family_a(6).unwrap()).unwrap(), Some(rows));
        assert_eq!(ddg_partition(&l, &family_b(6).unwrap()).unwrap(), None);
        let (gp, _) = g_prime(6).unwrap();
        let part = ddg_partition(&gp, &family_a(6).unwrap()).unwrap().unwrap();
        assert!(part.is_uniform(6));
        assert!(matches!(ddg_partition(&l, &family_a(4).unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn quotients() {
        let (l, rows) = lattice4(6).unwrap();
        let q = quotient_matrix(&l, &rows).unwrap();
        assert_eq!(classify_quotient(&q, &family_a(6).unwrap()).0, QuotientTag::M3);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let p = VertexPartition::new(vec![0, 0, 1], 2).unwrap();
        assert!(quotient_matrix(&path, &p).is_none());
    }

    #[test]
    fn verdicts() {
        let (b, _) = hadamard_ddg(&hadamard_seed(Seed::Second), 6).unwrap();
        let v = verify_ddg(&b, &family_b(6).unwrap(), None).unwrap();
        assert!(v.is_ddg);
        assert_eq!(v.canonical_class, Some(QuotientTag::M8));
        let (l, rows) = lattice4(4).unwrap();
        let v = verify_ddg(&l, &family_a(4).unwrap(), Some(&rows)).unwrap();
        assert!(v.is_ddg);
    }

    #[test]
    fn walk_regularity() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!walk_regular_check(&star, 2));
        let (l, _) = lattice4(6).unwrap();
        assert!(walk_regular_check(&l, 6));
    }
}
