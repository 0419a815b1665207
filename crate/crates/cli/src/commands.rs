use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use flagrank_core::classical::cross_ratio::{cross_ratio_certificate, CrossRatioCertificate, CrossRatioKind};
use flagrank_core::classical::dtriple::{random_triple_point, reduce_triple_d_odd};
use flagrank_core::classical::transversal::{transversal_basis, random_transversal_triple, verify};
use flagrank_core::classical::levi::{canonical_point, canonicalize_levi_triple, random_generic_point, verify_rational_invariant, InvariantReport, LeviCase};
use flagrank_core::exactlinalg::{fmt_rational, parse_rational, Rational};
use flagrank_core::golden;
use flagrank_core::levidecomp::{decompose_nilradical, invariant_quadratic_dim};
use flagrank_core::orbitrank::{levi_open_orbit, transitivity_with, Engine, RankConfig, TransitivityVerdict};
use flagrank_core::parabolic::is_self_opposite;
use flagrank_core::rootsystem::{Family, Nodes, SimpleType};
use flagrank_core::tables::{self, CellResult, TableKind};

use crate::args::{CertKind, CertifyArgs, ClassifyArgs, DecomposeArgs, InvariantArgs, TableArgs, TypeArgs, Which};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or an input the computation rejects; exit code 2.
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub struct Outcome {
    pub json: Value,
    pub markdown: String,
    /// 0 on success, 3 when a cross-check or reference comparison fails.
    pub code: u8,
}

fn envelope<T: Serialize>(command: &str, config: &RankConfig, body: &T) -> Value {
    json!({ "schema": SCHEMA_VERSION, "command": command, "config": config, "result": body })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_type(family: &str, rank: usize) -> Result<SimpleType, CliError> {
    let family: Family = family.parse()?;
    if family == Family::D && rank < 4 {
        return Err(usage(format!("D_{rank} is not accepted; D_l needs l >= 4")));
    }
    Ok(SimpleType::new(family, rank)?)
}

fn parse_type_args(a: &TypeArgs) -> Result<(SimpleType, Nodes), CliError> {
    let t = parse_type(&a.family, a.rank)?;
    let nodes = Nodes::parse(&a.parabolic, t.rank)?;
    if nodes.is_empty() {
        eprintln!("warning: empty parabolic list; P is the whole group and every action is transitive");
    }
    Ok((t, nodes))
}

fn verdict_cell(v: &TransitivityVerdict) -> String {
    let word = if v.transitive { "transitive" } else { "not transitive" };
    format!("{word} (rank {}/{})", v.certificate.achieved_rank, v.certificate.target_rank)
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

#[derive(Serialize)]
struct ClassifyReport {
    #[serde(rename = "type")]
    ty: String,
    parabolic: String,
    n: usize,
    transitive: bool,
    verdict: TransitivityVerdict,
    expected: Option<bool>,
    self_opposite: bool,
    levi_check: Option<TransitivityVerdict>,
    levi_agrees: bool,
}

pub fn classify(a: &ClassifyArgs, config: &RankConfig) -> Result<Outcome, CliError> {
    let (t, nodes) = parse_type_args(&a.ty)?;
    let engine = Engine::new();
    let (alg, pd) = engine.parabolic(t, &nodes)?;
    let verdict = transitivity_with(&alg, &pd, a.n, config)?;
    let self_opposite = is_self_opposite(alg.root_system(), &nodes);
    let levi_check = (a.n >= 3 && self_opposite && !nodes.is_empty()).then(|| levi_open_orbit(&alg, &pd, a.n - 2, config));
    let levi_agrees = levi_check.as_ref().map_or(true, |l| l.transitive == verdict.transitive);
    let report = ClassifyReport {
        ty: t.to_string(),
        parabolic: nodes.to_string(),
        n: a.n,
        transitive: verdict.transitive,
        expected: if nodes.is_empty() { None } else { golden::expected_transitive(t, &nodes, a.n) },
        verdict,
        self_opposite,
        levi_check,
        levi_agrees,
    };
    let mut md = String::new();
    writeln!(md, "| type | P | n | verdict | method | expected | Levi route |").ok();
    writeln!(md, "|---|---|---|---|---|---|---|").ok();
    writeln!(
        md,
        "| {} | P_{{{}}} | {} | {} | {} | {} | {} |",
        report.ty,
        report.parabolic,
        report.n,
        verdict_cell(&report.verdict),
        report.verdict.method,
        report.expected.map_or("-", yes_no),
        report.levi_check.as_ref().map_or("-".to_string(), verdict_cell),
    )
    .ok();
    if !levi_agrees {
        writeln!(md, "\nLevi-route cross-check DISAGREES with the direct test.").ok();
    }
    Ok(Outcome { json: envelope("classify", config, &report), markdown: md, code: if levi_agrees { 0 } else { 3 } })
}

#[derive(Serialize)]
struct TableReport {
    which: TableKind,
    cells: Vec<CellResult>,
    mismatches: usize,
    levi_disagreements: usize,
}

fn p_name(nodes: &str) -> String {
    if nodes.contains(',') { format!("P_{{{nodes}}}") } else { format!("P_{nodes}") }
}

/// Two-column summary in the layout of the printed tables, from computed verdicts.
fn summary_rows(kind: TableKind, cells: &[CellResult]) -> Vec<(String, String)> {
    let mut by_type: Vec<(String, Vec<&CellResult>)> = Vec::new();
    for c in cells {
        match by_type.last_mut() {
            Some((t, v)) if *t == c.ty => v.push(c),
            _ => by_type.push((c.ty.clone(), vec![c])),
        }
    }
    by_type
        .into_iter()
        .map(|(ty, cs)| {
            let text = match kind {
                TableKind::Maximal => {
                    let mut per_n: BTreeMap<usize, Vec<String>> = BTreeMap::new();
                    for c in cs.iter().filter(|c| c.verdict.transitive) {
                        per_n.entry(c.n).or_default().push(c.parabolic.clone());
                    }
                    let parts: Vec<String> = per_n.into_iter().map(|(n, is)| format!("n = {n}, i = {}", is.join(", "))).collect();
                    if parts.is_empty() { "-".into() } else { parts.join("; ") }
                }
                _ => {
                    let ps: Vec<String> = cs.iter().filter(|c| c.verdict.transitive).map(|c| p_name(&c.parabolic)).collect();
                    if ps.is_empty() { "-".into() } else { ps.join(", ") }
                }
            };
            (ty, text)
        })
        .collect()
}

pub fn table(a: &TableArgs, config: &RankConfig, max_rank: usize) -> Result<Outcome, CliError> {
    let to = a.to_rank.unwrap_or(max_rank);
    if to > max_rank {
        return Err(usage(format!("rank {to} exceeds --max-rank {max_rank}")));
    }
    let families: Vec<Family> = a.family.iter().map(|f| f.parse()).collect::<Result<_, _>>()?;
    let kind = match a.which {
        Which::Maximal => TableKind::Maximal,
        Which::NonMaximal => TableKind::NonMaximal,
        Which::Sphericity => TableKind::Sphericity,
    };
    let types: Vec<SimpleType> = tables::types_in_range(a.min_rank, to)
        .into_iter()
        .filter(|t| families.is_empty() || families.contains(&t.family))
        .collect();
    let specs: Vec<_> = types.iter().flat_map(|&t| tables::cells(kind, t)).collect();
    let engine = Engine::new();
    let cells = tables::evaluate(&engine, kind, &specs, config)?;
    let mismatches = cells.iter().filter(|c| !c.agrees()).count();
    let levi_disagreements = cells.iter().filter(|c| !c.levi_agrees()).count();

    let header = match kind {
        TableKind::Maximal => "(n, i), n >= 3",
        _ => "P",
    };
    let mut md = String::new();
    writeln!(md, "| Type of G | {header} |\n|---|---|").ok();
    for (ty, text) in summary_rows(kind, &cells) {
        writeln!(md, "| {ty} | {text} |").ok();
    }
    writeln!(md, "\n| type | P | n | computed | expected | Levi route | ok |\n|---|---|---|---|---|---|---|").ok();
    for c in &cells {
        writeln!(
            md,
            "| {} | {} | {} | {} | {} | {} | {} |",
            c.ty,
            p_name(&c.parabolic),
            c.n,
            verdict_cell(&c.verdict),
            c.expected.map_or("-", yes_no),
            c.levi_check.as_ref().map_or("-".to_string(), verdict_cell),
            if c.agrees() && c.levi_agrees() { "ok" } else { "MISMATCH" }
        )
        .ok();
    }
    writeln!(md, "\n{} cells, {mismatches} reference mismatches, {levi_disagreements} Levi disagreements", cells.len()).ok();
    let code = if mismatches + levi_disagreements > 0 { 3 } else { 0 };
    let report = TableReport { which: kind, cells, mismatches, levi_disagreements };
    Ok(Outcome { json: envelope("table", config, &report), markdown: md, code })
}

#[derive(Serialize)]
struct SummaryRecord {
    degree: Vec<i64>,
    dim: usize,
    has_invariant_quadratic: bool,
    central_weights: Vec<i64>,
    lowest_weight: Vec<i64>,
}

pub fn decompose(a: &DecomposeArgs, config: &RankConfig) -> Result<Outcome, CliError> {
    let (t, nodes) = parse_type_args(&a.ty)?;
    let engine = Engine::new();
    let (alg, pd) = engine.parabolic(t, &nodes)?;
    let summands = decompose_nilradical(&alg, &pd)?;
    let records: Vec<SummaryRecord> = summands
        .iter()
        .map(|s| SummaryRecord {
            degree: s.degree.clone(),
            dim: s.dim,
            has_invariant_quadratic: invariant_quadratic_dim(&alg, &pd, s) > 0,
            central_weights: s.central_weights.clone(),
            lowest_weight: s.lowest_weight.clone(),
        })
        .collect();
    let total: usize = records.iter().map(|r| r.dim).sum();
    let mut md = format!("{t}, P_{{{nodes}}}: {} summands, total dimension {total}\n\n", records.len());
    writeln!(md, "| degree | dim | invariant quadratic | central weights | lowest weight |\n|---|---|---|---|---|").ok();
    for r in &records {
        writeln!(
            md,
            "| {:?} | {} | {} | {:?} | {:?} |",
            r.degree,
            r.dim,
            yes_no(r.has_invariant_quadratic),
            r.central_weights,
            r.lowest_weight
        )
        .ok();
    }
    let body = json!({ "type": t.to_string(), "parabolic": nodes.to_string(), "flag_dim": pd.flag_dim, "summands": records });
    Ok(Outcome { json: envelope("decompose", config, &body), markdown: md, code: 0 })
}

pub fn verify_invariants(a: &InvariantArgs, config: &RankConfig) -> Result<Outcome, CliError> {
    let case: LeviCase = a.case.parse()?;
    let l = a.l.unwrap_or_else(|| case.default_l());
    if a.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let report: InvariantReport = verify_rational_invariant(case, l, config.seed, a.trials)?;
    let mut md = format!(
        "{} (l = {}), f = {}: {} trials, all equal: {}, resampled: {}\n",
        report.case,
        report.l,
        report.formula,
        report.trials,
        yes_no(report.all_equal),
        report.resampled
    );
    if report.non_constant() {
        writeln!(md, "non-constant: f takes the values {} and {}", fmt_rational(&report.witness[0]), fmt_rational(&report.witness[1])).ok();
    } else {
        writeln!(md, "no second value found").ok();
    }
    let code = if report.all_equal { 0 } else { 3 };
    Ok(Outcome { json: envelope("verify-invariants", config, &report), markdown: md, code })
}

fn parse_list(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|x| parse_rational(x.trim()).ok_or_else(|| usage(format!("{x:?} is not a rational number")))).collect()
}

fn cross_ratio_markdown(c: &CrossRatioCertificate) -> String {
    let mut md = format!("{}: {} random group elements per configuration\n\n| parameters | cross ratio | invariant |\n|---|---|---|\n", c.kind, c.trials);
    for v in &c.values {
        writeln!(md, "| {} | {} | {} |", v.params.join(", "), fmt_rational(&v.value), yes_no(v.invariant)).ok();
    }
    writeln!(md, "\ninvariant: {}, pairwise distinct: {}", yes_no(c.invariant), yes_no(c.distinct)).ok();
    md
}

#[derive(Serialize)]
struct TrialReport {
    kind: &'static str,
    l: usize,
    trials: usize,
    passed: usize,
    /// Full output of the first trial.
    first: Option<Value>,
}

fn trial_markdown(r: &TrialReport) -> String {
    format!("{} (l = {}): {}/{} random inputs verified\n", r.kind, r.l, r.passed, r.trials)
}

pub fn certify(a: &CertifyArgs, config: &RankConfig) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let trial_outcome = |r: TrialReport| {
        let code = if r.passed == r.trials { 0 } else { 3 };
        Outcome { markdown: trial_markdown(&r), json: envelope("certify", config, &r), code }
    };
    match a.kind {
        CertKind::So6CrossRatio | CertKind::So2lP1l | CertKind::So2lPlm1l | CertKind::Quadruple => {
            let mut params: Vec<Vec<Rational>> = a.t1.iter().map(|t| parse_list(t)).collect::<Result<_, _>>()?;
            for p in &a.params {
                params.push(parse_list(p)?);
            }
            if params.is_empty() {
                return Err(usage("give at least one --t1 or --params"));
            }
            let kind = match a.kind {
                CertKind::So6CrossRatio => CrossRatioKind::So6,
                CertKind::So2lP1l => CrossRatioKind::So2lP1l { l: a.l.unwrap_or(5) },
                CertKind::So2lPlm1l => CrossRatioKind::So2lPLastTwo { l: a.l.unwrap_or(5) },
                _ => {
                    let family: Family = a.family.as_deref().ok_or_else(|| usage("quadruple needs --type"))?.parse()?;
                    let l = a.l.ok_or_else(|| usage("quadruple needs --l"))?;
                    parse_type(&family.to_string(), l)?;
                    let nodes = Nodes::parse(a.parabolic.as_deref().ok_or_else(|| usage("quadruple needs --parabolic"))?, l)?;
                    CrossRatioKind::Quadruple { family, l, nodes }
                }
            };
            let cert = cross_ratio_certificate(&kind, &params, a.trials, config.seed)?;
            let code = if cert.invariant { 0 } else { 3 };
            Ok(Outcome { markdown: cross_ratio_markdown(&cert), json: envelope("certify", config, &cert), code })
        }
        CertKind::TransversalBasis => {
            let k = a.l.unwrap_or(4);
            if k == 0 || k % 2 == 1 {
                return Err(usage(format!("the transversal-triple basis needs an even half-dimension, got {k}")));
            }
            let mut passed = 0;
            let mut first = None;
            for _ in 0..a.trials {
                let (space, [u1, u2, u3]) = random_transversal_triple(k, &mut rng);
                let b = transversal_basis(&space, [&u1, &u2, &u3])?;
                passed += usize::from(verify(&space, [&u1, &u2, &u3], &b));
                first.get_or_insert_with(|| serde_json::to_value(&b).expect("serializable"));
            }
            Ok(trial_outcome(TrialReport { kind: "transversal-basis", l: k, trials: a.trials, passed, first }))
        }
        CertKind::LeviCanonical => {
            let case: LeviCase = a.case.as_deref().unwrap_or("dl-1,l").parse()?;
            let l = a.l.unwrap_or(4);
            let target = canonical_point(case, l);
            let mut passed = 0;
            let mut first = None;
            for _ in 0..a.trials {
                let u = random_generic_point(case, l, &mut rng)?;
                let c = canonicalize_levi_triple(&u)?;
                passed += usize::from(c.canonical == target && u.act(&c.g) == target);
                first.get_or_insert_with(|| json!({ "input": u, "output": c }));
            }
            Ok(trial_outcome(TrialReport { kind: "levi-canonical", l, trials: a.trials, passed, first }))
        }
        CertKind::DOddTriple => {
            let l = a.l.unwrap_or(5);
            let mut passed = 0;
            let mut first = None;
            for _ in 0..a.trials {
                let p = random_triple_point(l, &mut rng);
                let r = reduce_triple_d_odd(l, &p)?;
                passed += usize::from(r.preserves_form && r.matches_reference && r.det == flagrank_core::exactlinalg::rat(1));
                first.get_or_insert_with(|| serde_json::to_value(&r).expect("serializable"));
            }
            Ok(trial_outcome(TrialReport { kind: "d-odd-triple", l, trials: a.trials, passed, first }))
        }
    }
}
