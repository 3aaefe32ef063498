//! `beilab`: regularity of powers of binomial edge ideals from the command line.
//!
//! Exit codes: 0 all pass, 1 a violation or a characteristic anomaly,
//! 2 a budget, parse or usage failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use beilab::bei::{
    betti_power, cycle_sequence, path_sequence, reg_power, stabilization_probe, star_sequence,
    verify_theorem, ComputeConfig, Family, Instance, Theorem, TheoremReport,
};
use beilab::parse::{parse_graph, parse_polynomial, parse_poset_json};
use beilab::sequences::{
    colon_sum_bound, d_sequence_bound, filtration_bound, is_d_sequence, is_quadratic_sequence,
    is_regular_sequence,
};
use beilab::suite::{instances_for, matrix, run_cells, Budget, CellResult};
use beilab::{build_bei, Error, Ideal, Polynomial, PosetSequence, PrimeField, Regularity, Ring, DEFAULT_PRIME};

#[derive(Parser)]
#[command(name = "beilab", version, about = "Regularity of powers of binomial edge ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// reg(S/J_G^s) for each graph, power and prime
    Reg(RegArgs),
    /// Betti tables of S/J_G^s
    Betti(RegArgs),
    /// Check regularity formulas and structural identities
    Verify(VerifyArgs),
    /// d-sequence, quadratic-sequence and regularity-bound checks
    Seq(SeqArgs),
    /// reg(S/J_G^s) for s = 1..s-max and where the growth becomes linear
    Probe(ProbeArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Budget profile; BEILAB_BUDGET is used when the flag is absent
    #[arg(long, env = "BEILAB_BUDGET", default_value = "laptop")]
    budget: String,
    /// Prime(s) for the coefficient field, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = vec![DEFAULT_PRIME])]
    prime: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall time (ms) in records
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Clone)]
struct Source {
    /// Graph family: path, cycle, complete, star, g1, g2, clique-sum, balloon
    #[arg(long)]
    family: Option<String>,
    /// Graph file (text `n` then `i j` lines, or JSON {"n":..,"edges":..})
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    /// Vertex count or family size; a number, `a..b` or a comma list
    #[arg(long)]
    n: Option<String>,
    /// Second family parameter (g1/g2 size, clique size, balloon cycle part)
    #[arg(long)]
    m: Option<String>,
}

#[derive(Args)]
struct RegArgs {
    #[command(flatten)]
    source: Source,
    /// Powers: a number, `a..b` or a comma list
    #[arg(long, default_value = "1")]
    s: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Statement id(s), comma separated
    #[arg(long, value_delimiter = ',', required_unless_present = "all")]
    theorem: Vec<String>,
    /// Run the full matrix of the budget profile
    #[arg(long, conflicts_with = "theorem")]
    all: bool,
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "1")]
    s: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqCheck {
    Dseq,
    Quadratic,
    Regular,
}

#[derive(Args)]
struct SeqArgs {
    /// Property to check
    #[arg(long, value_enum)]
    check: Option<SeqCheck>,
    /// Report the regularity bounds for the s-th power
    #[arg(long)]
    bound: bool,
    #[command(flatten)]
    source: Source,
    /// Polynomials, one per line, instead of a graph
    #[arg(long, conflicts_with_all = ["family", "graph"], requires = "nvars")]
    polys: Option<PathBuf>,
    /// Number of ring variables for --polys (x1..xk,y1..yk when even, or v1..vN)
    #[arg(long)]
    nvars: Option<usize>,
    /// Poset JSON {"k":..,"covers":[[a,b],..]}; default is the chain
    #[arg(long)]
    poset: Option<PathBuf>,
    #[arg(long, default_value = "1")]
    s: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "3")]
    s_max: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Command outcome before it becomes an exit code.
struct Report {
    json: Value,
    table: String,
    failed: bool,
}

fn parse_list(spec: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
            if a > b {
                bail!("empty range `{part}`");
            }
            if b - a > 1000 {
                bail!("range `{part}` is too long");
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().with_context(|| format!("bad number `{part}`"))?);
        }
    }
    Ok(out)
}

fn powers(spec: &str) -> Result<Vec<u32>> {
    let v = parse_list(spec)?;
    if v.contains(&0) {
        bail!("powers start at s = 1");
    }
    Ok(v.into_iter().map(|s| s as u32).collect())
}

impl Source {
    fn ns(&self) -> Result<Vec<usize>> {
        self.n.as_deref().map(parse_list).unwrap_or(Ok(vec![]))
    }

    fn ms(&self) -> Result<Vec<usize>> {
        self.m.as_deref().map(parse_list).unwrap_or(Ok(vec![]))
    }

    fn families(&self) -> Result<Vec<Family>> {
        if let Some(path) = &self.graph {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            return Ok(vec![Family::Custom(parse_graph(&text)?)]);
        }
        let Some(name) = &self.family else {
            bail!("give --family or --graph");
        };
        let wrap = |v: Vec<usize>| -> Vec<Option<usize>> {
            if v.is_empty() {
                vec![None]
            } else {
                v.into_iter().map(Some).collect()
            }
        };
        let mut out = Vec::new();
        for n in wrap(self.ns()?) {
            for m in wrap(self.ms()?) {
                out.push(Family::from_name(name, n, m)?);
            }
        }
        Ok(out)
    }
}

fn config(common: &Common, prime: u32) -> Result<ComputeConfig> {
    let budget: Budget = common.budget.parse()?;
    PrimeField::new(prime)?;
    Ok(budget.config(prime))
}

fn strip_timing(mut v: Value, timing: bool) -> Value {
    if !timing {
        if let Some(o) = v.as_object_mut() {
            o.remove("ms");
        }
    }
    v
}

/// The exact formula for a family, if it has one at this power.
fn formula_for(family: &Family) -> Option<Theorem> {
    Some(match family {
        Family::Path { .. } => Theorem::Path,
        Family::Cycle { .. } => Theorem::Cycle,
        Family::Complete { .. } => Theorem::Complete,
        Family::Star { .. } => Theorem::Star,
        Family::G1 { .. } => Theorem::G1,
        Family::G2 { .. } => Theorem::G2,
        Family::Balloon { .. } => Theorem::Balloon,
        Family::CliqueSum { .. } => Theorem::CliqueSum,
        _ => return None,
    })
}

fn params_with_s(family: &Family, s: u32) -> BTreeMap<String, Value> {
    let mut p = family.params();
    p.insert("s".into(), json!(s));
    p
}

/// Keys `(statement, params)` whose computed value differs between primes.
fn anomalies(records: &[Value]) -> Vec<Value> {
    let mut by_key: BTreeMap<String, BTreeMap<u64, i64>> = BTreeMap::new();
    for r in records {
        let (Some(c), Some(p)) = (r["computed"].as_i64(), r["prime"].as_u64()) else {
            continue;
        };
        let key = format!("{} {}", r["theorem"], r["params"]);
        by_key.entry(key).or_default().insert(p, c);
    }
    by_key
        .into_iter()
        .filter(|(_, v)| v.values().collect::<std::collections::BTreeSet<_>>().len() > 1)
        .map(|(k, v)| json!({ "case": k, "values": v }))
        .collect()
}

fn params_text(p: &BTreeMap<String, Value>) -> String {
    p.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn report_line(r: &TheoremReport) -> String {
    let expected = match r.expected {
        beilab::Expected::Exact(v) => format!("{v}"),
        beilab::Expected::Bounds { lower, upper } => format!(
            "[{}, {}]",
            lower.map_or("-".into(), |v| v.to_string()),
            upper.map_or("-".into(), |v| v.to_string())
        ),
    };
    format!(
        "{:<13} {:<40} p={:<6} computed {:>3}  expected {:<9} {}",
        r.theorem,
        params_text(&r.params),
        r.prime,
        r.computed,
        expected,
        r.verdict
    )
}

fn cmd_reg(args: &RegArgs) -> Result<Report> {
    let families = args.source.families()?;
    let ss = powers(&args.s)?;
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut table = String::new();
    let mut failed = false;
    for prime in &args.common.prime {
        let cfg = config(&args.common, *prime)?;
        for f in &families {
            for &s in &ss {
                let verified = formula_for(f)
                    .map(|t| verify_theorem(t, &Instance::new(f.clone(), s), &cfg));
                let record = match verified {
                    Some(Ok(rep)) => {
                        failed |= rep.verdict.is_violation();
                        let _ = writeln!(table, "{}", report_line(&rep));
                        serde_json::to_value(&rep)?
                    }
                    Some(Err(Error::Hypothesis(_))) | None => {
                        let start = std::time::Instant::now();
                        let g = f.graph()?;
                        match reg_power(&g, s, &cfg) {
                            Ok(r) => {
                                let _ = writeln!(table, "{:<40} p={:<6} reg {}", params_text(&params_with_s(f, s)), prime, r);
                                json!({
                                    "params": params_with_s(f, s),
                                    "prime": prime,
                                    "computed": r,
                                    "ms": start.elapsed().as_millis() as u64,
                                })
                            }
                            Err(e) => {
                                errors.push(json!({"params": params_with_s(f, s), "prime": prime, "error": e.to_string()}));
                                let _ = writeln!(table, "{:<40} p={:<6} error: {e}", params_text(&params_with_s(f, s)), prime);
                                continue;
                            }
                        }
                    }
                    Some(Err(e)) => {
                        errors.push(json!({"params": params_with_s(f, s), "prime": prime, "error": e.to_string()}));
                        let _ = writeln!(table, "{:<40} p={:<6} error: {e}", params_text(&params_with_s(f, s)), prime);
                        continue;
                    }
                };
                records.push(strip_timing(record, args.common.timing));
            }
        }
    }
    let anomalies = anomalies(&records);
    for a in &anomalies {
        let _ = writeln!(table, "ANOMALY: {} differs between primes: {}", a["case"], a["values"]);
    }
    if !errors.is_empty() {
        return Ok(Report {
            json: json!({"records": records, "errors": errors, "anomalies": anomalies}),
            table,
            failed: true,
        })
        .and_then(budget_failure);
    }
    Ok(Report {
        failed: failed || !anomalies.is_empty(),
        json: json!({"records": records, "errors": errors, "anomalies": anomalies}),
        table,
    })
}

/// Marks a report whose records hit an error (budget, hypothesis) as exit 2.
fn budget_failure(r: Report) -> Result<Report> {
    Err(ExitWith(2, r).into())
}

struct ExitWith(u8, Report);

impl std::fmt::Debug for ExitWith {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::fmt::Display for ExitWith {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "some records could not be computed")
    }
}

impl std::error::Error for ExitWith {}

fn cmd_betti(args: &RegArgs) -> Result<Report> {
    let families = args.source.families()?;
    let ss = powers(&args.s)?;
    let mut records = Vec::new();
    let mut table = String::new();
    for prime in &args.common.prime {
        let cfg = config(&args.common, *prime)?;
        for f in &families {
            let g = f.graph()?;
            for &s in &ss {
                let start = std::time::Instant::now();
                let t = betti_power(&g, s, &cfg)?;
                let reg = t.regularity().ok();
                let _ = writeln!(
                    table,
                    "{} p={prime} reg={}\n{t}",
                    params_text(&params_with_s(f, s)),
                    reg.map_or("unknown".to_string(), |r| r.to_string())
                );
                records.push(strip_timing(
                    json!({
                        "params": params_with_s(f, s),
                        "prime": prime,
                        "betti": t,
                        "regularity": reg,
                        "ms": start.elapsed().as_millis() as u64,
                    }),
                    args.common.timing,
                ));
            }
        }
    }
    Ok(Report {
        json: json!({ "records": records }),
        table,
        failed: false,
    })
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cmd_verify(args: &VerifyArgs) -> Result<Report> {
    let budget: Budget = args.common.budget.parse()?;
    let cells: Vec<(Theorem, Instance)> = if args.all {
        matrix(budget)
    } else {
        let ss = powers(&args.s)?;
        let mut cells = Vec::new();
        for id in &args.theorem {
            let thm: Theorem = id.parse()?;
            let instances = if let Some(path) = &args.source.graph {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let g = parse_graph(&text)?;
                ss.iter().map(|&s| Instance::new(Family::Custom(g.clone()), s)).collect()
            } else {
                instances_for(
                    thm,
                    args.source.family.as_deref(),
                    &args.source.ns()?,
                    &args.source.ms()?,
                    &ss,
                )?
            };
            cells.extend(instances.into_iter().map(|i| (thm, i)));
        }
        cells
    };
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut table = String::new();
    let (mut violations, mut passes) = (0usize, 0usize);
    for prime in &args.common.prime {
        let cfg = config(&args.common, *prime)?;
        for r in run_cells(&cells, &cfg, workers()) {
            push_cell(r, &mut records, &mut errors, &mut table, &mut violations, &mut passes, args.common.timing)?;
        }
    }
    let anomalies = anomalies(&records);
    for a in &anomalies {
        let _ = writeln!(table, "ANOMALY: {} differs between primes: {}", a["case"], a["values"]);
    }
    let summary = json!({
        "budget": budget.to_string(),
        "cases": records.len() + errors.len(),
        "passed": passes,
        "violations": violations,
        "errors": errors.len(),
        "anomalies": anomalies.len(),
    });
    let _ = writeln!(
        table,
        "summary: {} cases, {passes} passed, {violations} violations, {} errors, {} anomalies",
        records.len() + errors.len(),
        errors.len(),
        anomalies.len()
    );
    let report = Report {
        json: json!({"summary": summary, "records": records, "errors": errors, "anomalies": anomalies}),
        table,
        failed: violations > 0 || !anomalies.is_empty(),
    };
    if !errors.is_empty() && !report.failed {
        return budget_failure(report);
    }
    Ok(report)
}

fn push_cell(
    r: CellResult,
    records: &mut Vec<Value>,
    errors: &mut Vec<Value>,
    table: &mut String,
    violations: &mut usize,
    passes: &mut usize,
    timing: bool,
) -> Result<()> {
    match r {
        Ok(rep) => {
            if rep.verdict.is_violation() {
                *violations += 1;
            } else {
                *passes += 1;
            }
            let _ = writeln!(table, "{}", report_line(&rep));
            records.push(strip_timing(serde_json::to_value(&rep)?, timing));
        }
        Err((t, inst, e)) => {
            let mut params = inst.family.params();
            params.insert("s".into(), json!(inst.s));
            let _ = writeln!(table, "{:<13} {:<40} error: {e}", t.id(), params_text(&params));
            errors.push(json!({"theorem": t.id(), "params": params, "error": e.to_string()}));
        }
    }
    Ok(())
}

/// Generators of `J_G` in the order used by the sequence statements.
fn graph_sequence(f: &Family, field: PrimeField) -> Result<Vec<Polynomial>> {
    Ok(match *f {
        Family::Star { n } => star_sequence(n, field)?,
        Family::Cycle { n } => cycle_sequence(n, field)?,
        Family::Path { n } => path_sequence(n, field)?,
        _ => build_bei(&f.graph()?, field)?.ideal().generators().to_vec(),
    })
}

#[derive(Serialize)]
struct SeqReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<BTreeMap<String, Value>>,
    prime: u32,
    generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Value>,
}

fn cmd_seq(args: &SeqArgs) -> Result<Report> {
    if args.check.is_none() && !args.bound {
        bail!("give --check or --bound");
    }
    let prime = *args.common.prime.first().unwrap_or(&DEFAULT_PRIME);
    let field = PrimeField::new(prime)?;
    let (params, elems) = if let Some(path) = &args.polys {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let ring = Ring::new(args.nvars.unwrap_or(0), field)?;
        let elems = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| parse_polynomial(ring, l))
            .collect::<beilab::Result<Vec<_>>>()?;
        (None, elems)
    } else {
        let families = args.source.families()?;
        let [f] = families.as_slice() else {
            bail!("seq takes a single graph");
        };
        (Some(f.params()), graph_sequence(f, field)?)
    };
    if elems.is_empty() {
        bail!("empty sequence");
    }
    let seq = match &args.poset {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            PosetSequence::new(parse_poset_json(&text)?, elems.clone())?
        }
        None => PosetSequence::chain(elems.clone())?,
    };
    let mut table = String::new();
    let mut failed = false;
    let check = match args.check {
        None => None,
        Some(SeqCheck::Dseq) => {
            let r = is_d_sequence(&elems)?;
            failed |= !r.is_d_sequence();
            let _ = writeln!(table, "d-sequence: {}", r.is_d_sequence());
            Some(serde_json::to_value(&r)?)
        }
        Some(SeqCheck::Regular) => {
            let r = is_regular_sequence(&elems)?;
            failed |= !r;
            let _ = writeln!(table, "regular sequence: {r}");
            Some(json!({ "regular": r }))
        }
        Some(SeqCheck::Quadratic) => {
            let r = is_quadratic_sequence(&seq)?;
            failed |= !r.holds;
            let _ = writeln!(table, "quadratic sequence: {}", r.holds);
            for w in &r.witnesses {
                let _ = writeln!(
                    table,
                    "  Σ={:#b} λ={} Θ={:#b}",
                    w.sigma,
                    w.lambda + 1,
                    w.theta
                );
            }
            Some(serde_json::to_value(&r)?)
        }
    };
    let bounds = if args.bound {
        let s = args.s;
        let u = Ideal::new(seq.ring(), elems.clone())?;
        let actual = beilab::regularity(&u.power(s)?)?;
        let filtration = filtration_bound(&seq, s).ok();
        let dseq = match d_sequence_bound(&elems, s) {
            Ok(b) => Some(b),
            Err(Error::Hypothesis(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let colon_sum = match colon_sum_bound(&elems) {
            Ok(r) => Some(r),
            Err(Error::Hypothesis(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let candidates: Vec<Regularity> = filtration
            .iter()
            .map(|f| f.bound)
            .chain(dseq.iter().map(|d| Regularity::Finite(d.bound as i32)))
            .collect();
        let bound = candidates.into_iter().min();
        let holds = bound.is_none_or(|b| actual <= b);
        failed |= !holds || colon_sum.as_ref().is_some_and(|c| !c.holds);
        let _ = writeln!(
            table,
            "s={s}: reg(R/U^s) = {actual}, bound = {}{}",
            bound.map_or("n/a".into(), |b| b.to_string()),
            if holds { "" } else { "  VIOLATION" }
        );
        Some(json!({
            "s": s,
            "computed": actual,
            "bound": bound,
            "filtration": filtration,
            "d_sequence": dseq,
            "colon_sum": colon_sum,
            "holds": holds,
        }))
    } else {
        None
    };
    let rep = SeqReport {
        params,
        prime,
        generators: elems.iter().map(|p| p.to_string()).collect(),
        check,
        bounds,
    };
    Ok(Report {
        json: serde_json::to_value(&rep)?,
        table,
        failed,
    })
}

fn cmd_probe(args: &ProbeArgs) -> Result<Report> {
    let families = args.source.families()?;
    let mut records = Vec::new();
    let mut table = String::new();
    for prime in &args.common.prime {
        let cfg = config(&args.common, *prime)?;
        for f in &families {
            let p = stabilization_probe(&f.graph()?, args.s_max, &cfg)?;
            let _ = writeln!(table, "{} p={prime}", params_text(&f.params()));
            for q in &p.points {
                let _ = writeln!(
                    table,
                    "  s={} reg={}",
                    q.s,
                    q.reg.map_or_else(|| q.error.clone().unwrap_or_default(), |r| r.to_string())
                );
            }
            let _ = writeln!(
                table,
                "  differences {:?}, constant from s={}",
                p.differences,
                p.constant_from.map_or("?".into(), |s| s.to_string())
            );
            records.push(json!({ "params": f.params(), "prime": prime, "probe": p }));
        }
    }
    Ok(Report {
        json: json!({ "records": records }),
        table,
        failed: false,
    })
}

fn emit(report: &Report, common: &Common) -> Result<()> {
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&report.json)? + "\n",
        Format::Table => report.table.clone(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, common) = match &cli.command {
        Command::Reg(a) => (cmd_reg(a), &a.common),
        Command::Betti(a) => (cmd_betti(a), &a.common),
        Command::Verify(a) => (cmd_verify(a), &a.common),
        Command::Seq(a) => (cmd_seq(a), &a.common),
        Command::Probe(a) => (cmd_probe(a), &a.common),
    };
    match result {
        Ok(report) => {
            if let Err(e) = emit(&report, common) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.failed { 1 } else { 0 })
        }
        Err(e) => match e.downcast::<ExitWith>() {
            Ok(ExitWith(code, report)) => {
                if let Err(e) = emit(&report, common) {
                    eprintln!("error: {e:#}");
                }
                eprintln!("error: some records could not be computed");
                ExitCode::from(code)
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}
