//! Structural classification of both families.

use serde::{Deserialize, Serialize};

use crate::canon::{are_isomorphic, canonical_form};
use crate::constructions::{class_pair_switch, g_prime, hadamard_ddg, hadamard_seed, lattice4, star_switch_partitioned, Seed};
use crate::error::Result;
use crate::graph::Graph;
use crate::gstar::{decompose_gstar, valid_component_multisets, normalize_specs, reverse_switch_construct, ComponentSpec};
use crate::params::{family_a, family_b, DdgParams, Family};
use crate::partition::VertexPartition;
use crate::quotient::{classify_quotient, QuotientTag};
use crate::verify::{ddg_partition, quotient_matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail")]
pub enum FamilyAVerdict {
    Lattice,
    GPrime,
    ReverseSwitch(Vec<ComponentSpec>),
    NotFamilyA(String),
    /// `λ1 = λ2`: the class partition cannot be recovered from the graph.
    ImproperParameters,
    /// A DDG whose structure does not match its quotient tag.
    Unexplained { tag: QuotientTag, reason: String },
}

/// A DDG with its partition relabeled so that the quotient equals the
/// reference matrix of `tag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagged {
    pub params: DdgParams,
    pub partition: VertexPartition,
    pub tag: QuotientTag,
}

/// Recovers the partition of a family member and orders its classes after
/// the matching reference matrix. `Ok(None)` when `g` is not a DDG with
/// the family's parameters; improper parameters are an error.
pub fn tag_ddg(g: &Graph, family: Family) -> Result<Option<Tagged>> {
    let v = g.order();
    if !v.is_multiple_of(4) || v < 8 {
        return Ok(None);
    }
    let params = family.params(v as u64 / 4)?;
    let Some(part) = ddg_partition(g, &params)? else {
        return Ok(None);
    };
    let q = quotient_matrix(g, &part).expect("DDG partitions are equitable");
    let (tag, sigma) = classify_quotient(&q, &params);
    let partition = if tag == QuotientTag::Other { part } else { part.relabel_classes(&sigma)? };
    Ok(Some(Tagged { params, partition, tag }))
}

pub fn classify_family_a(g: &Graph) -> FamilyAVerdict {
    let v = g.order();
    if !v.is_multiple_of(4) || v < 8 {
        return FamilyAVerdict::NotFamilyA(format!("order {v} is not 4n with n ≥ 2"));
    }
    let n = v / 4;
    let p = family_a(n as u64).expect("n ≥ 2");
    if !p.is_proper() {
        return FamilyAVerdict::ImproperParameters;
    }
    let t = match tag_ddg(g, Family::A) {
        Ok(Some(t)) => t,
        Ok(None) => return FamilyAVerdict::NotFamilyA(format!("not a DDG with {p}")),
        Err(e) => return FamilyAVerdict::NotFamilyA(e.to_string()),
    };
    let unexplained = |reason: &str| FamilyAVerdict::Unexplained { tag: t.tag, reason: reason.to_string() };
    match t.tag {
        QuotientTag::M3 => {
            let (l, _) = lattice4(n).expect("n ≥ 1");
            if are_isomorphic(g, &l) {
                FamilyAVerdict::Lattice
            } else {
                unexplained("quotient M3 but not isomorphic to the lattice")
            }
        }
        QuotientTag::M4 => match g_prime(n) {
            Ok((gp, _)) if are_isomorphic(g, &gp) => FamilyAVerdict::GPrime,
            _ => unexplained("quotient M4 but not isomorphic to g_prime(n)"),
        },
        QuotientTag::M5 => {
            let gs = star_switch_partitioned(g, &t.partition).expect("four classes");
            match decompose_gstar(&gs, &t.partition) {
                Ok(reports) => {
                    let specs: Vec<ComponentSpec> = reports.iter().map(|r| r.kind).collect();
                    FamilyAVerdict::ReverseSwitch(normalize_specs(&specs))
                }
                Err(e) => unexplained(&e.to_string()),
            }
        }
        _ => unexplained("quotient matches none of M3, M4, M5"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail")]
pub enum FamilyBVerdict {
    /// Input tag and the classification of its class-pair switch.
    Switched { tag: QuotientTag, partner: FamilyAVerdict },
    NotFamilyB(String),
    ImproperParameters,
}

pub fn classify_family_b(g: &Graph) -> FamilyBVerdict {
    let v = g.order();
    if !v.is_multiple_of(4) || v < 8 {
        return FamilyBVerdict::NotFamilyB(format!("order {v} is not 4n with n ≥ 2"));
    }
    let p = family_b(v as u64 / 4).expect("n ≥ 2");
    if !p.is_proper() {
        return FamilyBVerdict::ImproperParameters;
    }
    match class_pair_switch_ddg(g, Family::B) {
        Ok(Some((switched, t))) => FamilyBVerdict::Switched { tag: t.tag, partner: classify_family_a(&switched) },
        Ok(None) => FamilyBVerdict::NotFamilyB(format!("not a DDG with {p}")),
        Err(e) => FamilyBVerdict::NotFamilyB(e.to_string()),
    }
}

/// Tags a family member, then switches between `V1 ∪ V2` and `V3 ∪ V4`
/// in the reference class order.
pub fn class_pair_switch_ddg(g: &Graph, family: Family) -> Result<Option<(Graph, Tagged)>> {
    let Some(t) = tag_ddg(g, family)? else {
        return Ok(None);
    };
    let switched = class_pair_switch(g, &t.partition)?;
    Ok(Some((switched, t)))
}

/// One family-A DDG from the known constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub name: String,
    pub graph: Graph,
    pub partition: VertexPartition,
}

/// Every family-A construction at `n`, one per isomorphism class, sorted
/// by canonical form.
pub fn family_a_constructions(n: usize) -> Result<Vec<Built>> {
    let mut out = Vec::new();
    let (l, p) = lattice4(n)?;
    out.push(Built { name: "lattice".into(), graph: l, partition: p });
    if n.is_multiple_of(2) && n >= 6 {
        let (g, p) = g_prime(n)?;
        out.push(Built { name: "gprime".into(), graph: g, partition: p });
    }
    if n.is_multiple_of(2) {
        for specs in valid_component_multisets(n) {
            let (g, p) = reverse_switch_construct(&specs, n)?;
            let name = specs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("+");
            out.push(Built { name: format!("reverse-switch[{name}]"), graph: g, partition: p });
        }
    }
    Ok(dedupe(out))
}

/// Family-B DDGs from the class-pair switch of every family-A construction
/// (and the second Hadamard seed graph, which the lattice's switch equals).
pub fn family_b_constructions(n: usize) -> Result<Vec<Built>> {
    let mut out = Vec::new();
    let (h, p) = hadamard_ddg(&hadamard_seed(Seed::Second), n)?;
    out.push(Built { name: "hadamard-second".into(), graph: h, partition: p });
    for b in family_a_constructions(n)? {
        if let Some(t) = tag_ddg_with(&b.graph, &b.partition, Family::A)? {
            let g = class_pair_switch(&b.graph, &t.partition)?;
            out.push(Built { name: format!("class-pair[{}]", b.name), graph: g, partition: t.partition });
        }
    }
    Ok(dedupe(out))
}

/// Like [`tag_ddg`] but with a supplied partition, for improper parameters.
pub fn tag_ddg_with(g: &Graph, part: &VertexPartition, family: Family) -> Result<Option<Tagged>> {
    let params = family.params(g.order() as u64 / 4)?;
    if !crate::verify::check_ddg_partition(g, part, &params) {
        return Ok(None);
    }
    let q = quotient_matrix(g, part).expect("DDG partitions are equitable");
    let (tag, sigma) = classify_quotient(&q, &params);
    let partition = if tag == QuotientTag::Other { part.clone() } else { part.relabel_classes(&sigma)? };
    Ok(Some(Tagged { params, partition, tag }))
}

fn dedupe(items: Vec<Built>) -> Vec<Built> {
    let mut keyed: Vec<(Graph, Built)> = items.into_iter().map(|b| (canonical_form(&b.graph).0, b)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, b)| b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gstar::Embedding;

    #[test]
    fn lattice_and_gprime() {
        for n in [3, 5, 6, 9] {
            assert_eq!(classify_family_a(&lattice4(n).unwrap().0), FamilyAVerdict::Lattice, "n = {n}");
        }
        assert_eq!(classify_family_a(&g_prime(6).unwrap().0), FamilyAVerdict::GPrime);
        assert_eq!(classify_family_a(&lattice4(4).unwrap().0), FamilyAVerdict::ImproperParameters);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(classify_family_a(&path), FamilyAVerdict::NotFamilyA(_)));
    }

    #[test]
    fn reverse_switch_round_trip() {
        let specs = vec![ComponentSpec::four_cube(3), ComponentSpec::cocktail(4, Embedding::E12)];
        let (g, _) = reverse_switch_construct(&specs, 6).unwrap();
        assert_eq!(classify_family_a(&g), FamilyAVerdict::ReverseSwitch(normalize_specs(&specs)));
    }

    #[test]
    fn family_b_switches_back() {
        let (h, _) = hadamard_ddg(&hadamard_seed(Seed::Second), 6).unwrap();
        assert_eq!(
            classify_family_b(&h),
            FamilyBVerdict::Switched { tag: QuotientTag::M8, partner: FamilyAVerdict::Lattice }
        );
    }
}
