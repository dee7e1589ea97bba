use std::time::Duration;

use ddg_core::classify::{class_pair_switch_ddg, classify_family_a, classify_family_b, tag_ddg, FamilyAVerdict, FamilyBVerdict};
use ddg_core::constructions::{g_prime, hadamard_ddg, hadamard_seed, lattice4, seidel_switch, star_switch_partitioned, Seed};
use ddg_core::crossval::{cross_validate as run_cross, CrossOptions};
use ddg_core::graph6;
use ddg_core::gstar::{cocktail_cycle, hypercube4, parse_spec_list, reverse_switch_construct, ComponentSpec};
use ddg_core::params::{ddg_eigenvalues, multiplicity_solutions, trace_table, DdgParams, DezaParams, Family, SpectrumSolution, TraceRow};
use ddg_core::quotient::{quotient_matrix_candidates, quotient_row_solutions, QuotientMatrix, QuotientTag};
use ddg_core::search::{enumerate_ddg, enumerate_deza, Mode, SearchTask, Target};
use ddg_core::verify::{deza_check, verify_ddg};
use ddg_core::{Graph, VertexPartition};
use serde::Serialize;

use crate::report::{emit, graph6_lines, parse_tuple, read_graphs, report_json};
use crate::{
    ClassifyArgs, ConstructArgs, ConstructKind, CrossArgs, EnumerateArgs, Failure, FamilyArg, ModeArg, ParamArgs, SearchLimits,
    SeedArg, SwitchArgs, SwitchKind, TablesArgs, VerifyArgs,
};

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::A => Family::A,
        FamilyArg::B => Family::B,
    }
}

fn classes(p: &VertexPartition) -> Vec<Vec<usize>> {
    p.classes()
}

fn matrix(q: &QuotientMatrix) -> Vec<Vec<u64>> {
    q.entries.clone()
}

#[derive(Serialize)]
struct Constructed {
    name: String,
    order: usize,
    graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<Vec<usize>>>,
}

pub fn construct(a: &ConstructArgs) -> Result<(), Failure> {
    let n = || a.n.ok_or_else(|| Failure::Usage("--n is required".into()));
    let (name, g, part): (String, Graph, Option<VertexPartition>) = match a.kind {
        ConstructKind::Lattice => {
            let (g, p) = lattice4(n()?)?;
            ("lattice".into(), g, Some(p))
        }
        ConstructKind::Hadamard => {
            let seed = match a.seed {
                SeedArg::First => Seed::First,
                SeedArg::Second => Seed::Second,
            };
            let (g, p) = hadamard_ddg(&hadamard_seed(seed), n()?)?;
            ("hadamard".into(), g, Some(p))
        }
        ConstructKind::Gprime => {
            let (g, p) = g_prime(n()?)?;
            ("gprime".into(), g, Some(p))
        }
        ConstructKind::ReverseSwitch => {
            let text = a.spec.as_deref().ok_or_else(|| Failure::Usage("--spec is required".into()))?;
            let specs = parse_spec_list(text)?;
            let (g, p) = reverse_switch_construct(&specs, n()?)?;
            (format!("reverse-switch[{text}]"), g, Some(p))
        }
        ConstructKind::Cocktail => {
            let pairs = a.pairs.ok_or_else(|| Failure::Usage("--pairs is required".into()))?;
            let (g, p) = cocktail_cycle(pairs, a.embedding.parse()?)?;
            ("cocktail".into(), g, Some(p))
        }
        ConstructKind::Q4 => match a.partition {
            None => ("q4".into(), hypercube4(), None),
            Some(id) => {
                let spec = ComponentSpec::FourCube { partition: id, embedding: a.embedding.parse()? };
                let (g, p) = spec.build()?;
                (format!("q4[{spec}]"), g, Some(p))
            }
        },
    };
    let text = if a.json {
        report_json(&[Constructed { name, order: g.order(), graph6: graph6::encode(&g), classes: part.as_ref().map(classes) }])
    } else {
        graph6_lines(&[g])
    };
    emit(&text, a.output.as_deref())
}

fn resolve(p: &ParamArgs, order: Option<usize>) -> Result<DdgParams, Failure> {
    if let Some(text) = &p.params {
        let t = parse_tuple(text, 6, "--params")?;
        return Ok(DdgParams::new(t[0], t[1], t[2], t[3], t[4], t[5])?);
    }
    let f = p.family.ok_or_else(|| Failure::Usage("give --family or --params".into()))?;
    let n = match (p.n, order) {
        (Some(n), _) => n,
        (None, Some(v)) if v % 4 == 0 => v as u64 / 4,
        (None, Some(v)) => return Err(Failure::Usage(format!("order {v} is not a multiple of 4; pass --n"))),
        (None, None) => return Err(Failure::Usage("--n is required".into())),
    };
    Ok(family(f).params(n)?)
}

#[derive(Serialize)]
struct DdgCheck {
    index: usize,
    graph6: String,
    is_ddg: bool,
    params: DdgParams,
    quotient_tag: Option<QuotientTag>,
    quotient: Option<Vec<Vec<u64>>>,
    classes: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize)]
struct DezaCheck {
    index: usize,
    graph6: String,
    is_deza: bool,
    params: Option<DezaParams>,
    witness: Option<(usize, usize)>,
}

pub fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let graphs = read_graphs(&a.input)?;
    let mut all_ok = true;
    let text = if a.deza {
        let mut out = Vec::new();
        for (index, g) in graphs.iter().enumerate() {
            let v = deza_check(g);
            let wanted = if a.params.family.is_some() || a.params.params.is_some() {
                Some(resolve(&a.params, Some(g.order()))?.deza_shadow())
            } else {
                None
            };
            let ok = v.is_deza && wanted.is_none_or(|w| v.params == Some(w));
            all_ok &= ok;
            out.push(DezaCheck { index, graph6: graph6::encode(g), is_deza: ok, params: v.params, witness: v.witness });
        }
        report_json(&out)
    } else {
        let mut out = Vec::new();
        for (index, g) in graphs.iter().enumerate() {
            let p = resolve(&a.params, Some(g.order()))?;
            let blocks = a.blocks.then(|| VertexPartition::blocks(p.m as usize, p.n as usize));
            if blocks.is_some() && g.order() as u64 != p.v {
                return Err(Failure::Usage(format!("graph {index} has order {}, parameters need {}", g.order(), p.v)));
            }
            let v = verify_ddg(g, &p, blocks.as_ref()).map_err(|e| Failure::Usage(format!("{e}; pass --blocks")))?;
            all_ok &= v.is_ddg;
            out.push(DdgCheck {
                index,
                graph6: graph6::encode(g),
                is_ddg: v.is_ddg,
                params: p,
                quotient_tag: v.canonical_class,
                quotient: v.quotient.as_ref().map(matrix),
                classes: v.partition.as_ref().map(classes),
            });
        }
        report_json(&out)
    };
    emit(&text, None)?;
    if all_ok { Ok(()) } else { Err(Failure::Check) }
}

#[derive(Serialize)]
struct VerdictView {
    quotient_tag: Option<QuotientTag>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct ClassifyResult {
    index: usize,
    graph6: String,
    family: Family,
    #[serde(flatten)]
    verdict: VerdictView,
    #[serde(skip_serializing_if = "Option::is_none")]
    partner: Option<VerdictView>,
}

fn view_a(v: &FamilyAVerdict) -> (VerdictView, bool) {
    let view = |tag, verdict, components, reason| VerdictView { quotient_tag: tag, verdict, components, reason };
    match v {
        FamilyAVerdict::Lattice => (view(Some(QuotientTag::M3), "lattice", None, None), true),
        FamilyAVerdict::GPrime => (view(Some(QuotientTag::M4), "gprime", None, None), true),
        FamilyAVerdict::ReverseSwitch(specs) => {
            let names = specs.iter().map(|s| s.to_string()).collect();
            (view(Some(QuotientTag::M5), "reverse-switch", Some(names), None), true)
        }
        FamilyAVerdict::NotFamilyA(r) => (view(None, "not-in-family", None, Some(r.clone())), false),
        FamilyAVerdict::ImproperParameters => {
            (view(None, "improper-parameters", None, Some("λ1 = λ2: classes cannot be recovered".into())), false)
        }
        FamilyAVerdict::Unexplained { tag, reason } => (view(Some(*tag), "unexplained", None, Some(reason.clone())), false),
    }
}

pub fn classify(a: &ClassifyArgs) -> Result<(), Failure> {
    let graphs = read_graphs(&a.input)?;
    let mut all_ok = true;
    let mut out = Vec::new();
    for (index, g) in graphs.iter().enumerate() {
        let fam = family(a.family);
        let (verdict, partner, ok) = match fam {
            Family::A => {
                let (v, ok) = view_a(&classify_family_a(g));
                (v, None, ok)
            }
            Family::B => match classify_family_b(g) {
                FamilyBVerdict::Switched { tag, partner } => {
                    let (p, ok) = view_a(&partner);
                    let v = VerdictView { quotient_tag: Some(tag), verdict: "switched", components: None, reason: None };
                    (v, Some(p), ok)
                }
                FamilyBVerdict::NotFamilyB(r) => {
                    (VerdictView { quotient_tag: None, verdict: "not-in-family", components: None, reason: Some(r) }, None, false)
                }
                FamilyBVerdict::ImproperParameters => (
                    VerdictView {
                        quotient_tag: None,
                        verdict: "improper-parameters",
                        components: None,
                        reason: Some("λ1 = λ2: classes cannot be recovered".into()),
                    },
                    None,
                    false,
                ),
            },
        };
        all_ok &= ok;
        out.push(ClassifyResult { index, graph6: graph6::encode(g), family: fam, verdict, partner });
    }
    emit(&report_json(&out), None)?;
    if all_ok { Ok(()) } else { Err(Failure::Check) }
}

#[derive(Serialize)]
struct EnumerateResult {
    target: Target,
    mode: Mode,
    count: usize,
    node_count: u64,
    exhausted: bool,
    graphs: Vec<String>,
}

fn limits(task: &mut SearchTask, l: &SearchLimits) {
    task.thread_count = l.threads;
    task.node_budget = l.budget_nodes;
    task.time_budget = l.budget_secs.map(Duration::from_secs);
}

pub fn enumerate(a: &EnumerateArgs) -> Result<(), Failure> {
    let target = if let Some(t) = &a.deza {
        let t = parse_tuple(t, 4, "--deza")?;
        Target::Deza(DezaParams::new(t[0], t[1], t[2], t[3])?)
    } else if let Some(t) = &a.ddg {
        let t = parse_tuple(t, 6, "--ddg")?;
        Target::Ddg(DdgParams::new(t[0], t[1], t[2], t[3], t[4], t[5])?)
    } else if let (Some(f), Some(n)) = (a.family, a.n) {
        Target::Ddg(family(f).params(n)?)
    } else {
        return Err(Failure::Usage("give --deza, --ddg or --family with --n".into()));
    };
    let mode = match (a.mode, target) {
        (Some(ModeArg::All), _) | (None, Target::Deza(_)) => Mode::AllDeza,
        (Some(ModeArg::Ddg), _) | (None, Target::Ddg(_)) => Mode::DdgOnly,
        (Some(ModeArg::NonDdg), _) => Mode::NonDdgOnly,
    };
    let mut task = SearchTask::new(target).mode(mode);
    limits(&mut task, &a.limits);
    task.checkpoint = a.checkpoint.clone();
    let r = match target {
        Target::Deza(_) => enumerate_deza(&task)?,
        Target::Ddg(_) => enumerate_ddg(&task)?,
    };
    eprintln!(
        "{} graphs, {} nodes, {}",
        r.graphs.len(),
        r.node_count,
        if r.exhausted { "complete" } else { "stopped by budget" }
    );
    let text = if a.json {
        report_json(&[EnumerateResult {
            target,
            mode,
            count: r.graphs.len(),
            node_count: r.node_count,
            exhausted: r.exhausted,
            graphs: r.graphs.clone(),
        }])
    } else {
        r.graphs.iter().map(|s| format!("{s}\n")).collect()
    };
    emit(&text, a.output.as_deref())?;
    if r.exhausted { Ok(()) } else { Err(Failure::Check) }
}

#[derive(Serialize)]
struct Candidate {
    tag: QuotientTag,
    matrix: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct TablesResult {
    params: DdgParams,
    eigenvalues: Vec<String>,
    trace_table: Vec<TraceRow>,
    multiplicity_solutions: Vec<SpectrumSolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient_rows: Option<Vec<[u64; 4]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient_candidates: Option<Vec<Candidate>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity_rejected: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scope_note: Option<String>,
}

pub fn tables(a: &TablesArgs) -> Result<(), Failure> {
    let p = resolve(&a.params, None)?;
    let candidates = quotient_matrix_candidates(&p).ok();
    let result = TablesResult {
        params: p,
        eigenvalues: ddg_eigenvalues(&p)?.iter().map(|e| e.to_string()).collect(),
        trace_table: trace_table(&p)?,
        multiplicity_solutions: multiplicity_solutions(&p)?,
        quotient_rows: quotient_row_solutions(&p).ok(),
        quotient_candidates: candidates
            .as_ref()
            .map(|c| c.matrices.iter().map(|(tag, m)| Candidate { tag: *tag, matrix: matrix(m) }).collect()),
        parity_rejected: candidates.as_ref().map(|c| c.parity_rejected.iter().map(matrix).collect()),
        scope_note: candidates.and_then(|c| c.scope_note),
    };
    emit(&report_json(&[result]), None)
}

pub fn switch(a: &SwitchArgs) -> Result<(), Failure> {
    let graphs = read_graphs(&a.input)?;
    let mut out = Vec::new();
    let mut all_ok = true;
    for (index, g) in graphs.iter().enumerate() {
        let switched = match a.kind {
            SwitchKind::Seidel => {
                let text = a.set.as_deref().ok_or_else(|| Failure::Usage("--set is required".into()))?;
                let set: Result<Vec<usize>, _> = text.split(',').map(|s| s.trim().parse::<usize>()).collect();
                let set = set.map_err(|_| Failure::Usage(format!("bad vertex set {text:?}")))?;
                Some(seidel_switch(g, &set)?)
            }
            SwitchKind::Star => match tag_ddg(g, Family::A)? {
                Some(t) if t.tag == QuotientTag::M5 => Some(star_switch_partitioned(g, &t.partition)?),
                _ => None,
            },
            SwitchKind::ClassPair => class_pair_switch_ddg(g, family(a.family))?.map(|(s, _)| s),
        };
        match switched {
            Some(s) => out.push(s),
            None => {
                all_ok = false;
                eprintln!("graph {index}: not a family {} DDG with the required quotient", family(a.family));
            }
        }
    }
    emit(&graph6_lines(&out), a.output.as_deref())?;
    if all_ok { Ok(()) } else { Err(Failure::Check) }
}

pub fn cross_validate(a: &CrossArgs) -> Result<(), Failure> {
    let opts = CrossOptions {
        thread_count: a.limits.threads,
        node_budget: a.limits.budget_nodes,
        time_budget: a.limits.budget_secs.map(Duration::from_secs),
        constructions_only: a.constructions_only,
    };
    let report = run_cross(a.n, &opts);
    emit(&report_json(&[&report]), None)?;
    if report.is_clean() { Ok(()) } else { Err(Failure::Check) }
}
