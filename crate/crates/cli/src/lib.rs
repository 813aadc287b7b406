//! Runner and report emitter behind the `ydcheck` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use yangian_core::dsl::parse_relation_file;
use yangian_core::evalrep::{build_eval_l, check_inverse, check_recomposition, check_rll, render_currents};
use yangian_core::field::Var;
use yangian_core::modealg::ideal::membership_report;
use yangian_core::modealg::{
    check_c_coherence, check_parity, check_soundness, extract_mode_relations, ideal_suite,
    parse_free_element, relation_elements, Family, DEFAULT_CAP,
};
use yangian_core::relcheck::hopf::hopf_structural;
use yangian_core::relcheck::suite::{derivation_suite, hopf_relations, summary_suite, user_relation};
use yangian_core::relcheck::{check_entry, Contexts, SuiteRelation};
use yangian_core::report::{CheckReport, Verdict};
use yangian_core::rmat::{build_r, check_sybe, check_unitarity, check_weight_conservation};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ydcheck", version, about = "Exact checks for the super Yangian double DY(gl(1|1))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a check suite.
    Check(CheckArgs),
    /// Print derived objects.
    Show(ShowArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Ybe,
    Unitarity,
    Weight,
    RllEval,
    Relations,
    Hopf,
    Ideal,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteSel {
    Summary,
    Derivation,
    Hopf,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilySel {
    PlusPlus,
    MinusMinus,
    PlusMinus,
    All,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub target: Target,
    /// Relation file for `check file`.
    pub path: Option<PathBuf>,
    /// Mode window N for distributional comparisons.
    #[arg(long, default_value_t = 8)]
    pub window: i64,
    /// Total degree bound D for ideal membership.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Mode bound for extracted relations.
    #[arg(long, default_value_t = 2)]
    pub modes: i64,
    #[arg(long, value_enum, default_value_t = SuiteSel::All)]
    pub suite: SuiteSel,
    #[arg(long, value_enum, default_value_t = FamilySel::All)]
    pub family: FamilySel,
    /// File of free-algebra elements to test for ideal membership, one per line.
    #[arg(long)]
    pub candidate: Option<PathBuf>,
    /// Largest spanning set the membership solver will build.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Zero all timing fields.
    #[arg(long)]
    pub deterministic: bool,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShowWhat {
    Currents,
}

#[derive(Debug, Args)]
pub struct ShowArgs {
    pub what: ShowWhat,
    /// Evaluation point.
    #[arg(long, default_value = "w")]
    pub at: String,
}

/// A configuration problem, reported with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub target: String,
    pub window: i64,
    pub degree: usize,
    pub modes: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    pub deterministic: bool,
}

#[derive(Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    #[serde(rename = "window-exhausted")]
    pub window_exhausted: usize,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub config: ConfigEcho,
    pub results: Vec<CheckReport>,
    pub summary: Summary,
    pub millis: u64,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail + self.summary.window_exhausted == 0 {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn file_name(p: &Path) -> String {
    p.file_name().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn families(sel: FamilySel) -> Vec<Family> {
    match sel {
        FamilySel::PlusPlus => vec![Family::PlusPlus],
        FamilySel::MinusMinus => vec![Family::MinusMinus],
        FamilySel::PlusMinus => vec![Family::PlusMinus],
        FamilySel::All => Family::ALL.to_vec(),
    }
}

fn validate(args: &CheckArgs) -> Result<(), UsageError> {
    let bad = |m: &str| Err(UsageError(m.to_string()));
    if args.window < 2 {
        return bad("--window must be at least 2");
    }
    if args.modes < 1 {
        return bad("--modes must be at least 1");
    }
    if args.degree < 1 {
        return bad("--degree must be at least 1");
    }
    match (args.target, &args.path) {
        (Target::File, None) => return bad("check file needs a path"),
        (Target::File, Some(_)) => {}
        (_, Some(p)) => return Err(UsageError(format!("unexpected argument '{}'", p.display()))),
        _ => {}
    }
    if args.candidate.is_some() && args.target != Target::Ideal {
        return bad("--candidate only applies to check ideal");
    }
    Ok(())
}

fn echo(args: &CheckArgs) -> ConfigEcho {
    let t = args.target;
    ConfigEcho {
        target: value_name(t),
        window: args.window,
        degree: args.degree,
        modes: args.modes,
        suite: (t == Target::Relations).then(|| value_name(args.suite)),
        family: (t == Target::Ideal).then(|| value_name(args.family)),
        path: args.path.as_deref().map(file_name),
        candidate: args.candidate.as_deref().map(file_name),
        deterministic: args.deterministic,
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn suite_entries(sel: SuiteSel) -> Vec<SuiteRelation> {
    let mut out = Vec::new();
    if matches!(sel, SuiteSel::Summary | SuiteSel::All) {
        out.extend(summary_suite());
    }
    if matches!(sel, SuiteSel::Derivation | SuiteSel::All) {
        out.extend(derivation_suite());
    }
    if matches!(sel, SuiteSel::Hopf | SuiteSel::All) {
        out.extend(hopf_relations());
    }
    out
}

fn check_all(entries: &[SuiteRelation], n: i64) -> Result<Vec<CheckReport>, UsageError> {
    let ctx = Contexts::standard().map_err(|e| UsageError(e.to_string()))?;
    Ok(entries.par_iter().map(|e| check_entry(e, &ctx, n)).collect())
}

fn ideal_reports(args: &CheckArgs) -> Result<Vec<CheckReport>, UsageError> {
    let fams = families(args.family);
    let Some(path) = &args.candidate else {
        return Ok(fams
            .par_iter()
            .flat_map(|&f| ideal_suite(f, args.modes, args.degree, args.cap))
            .collect());
    };
    let text = read(path)?;
    let name = file_name(path);
    let mut cands = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let e = parse_free_element(body)
            .map_err(|e| UsageError(format!("{name}:{}:{}: {}", i + 1, e.offset + 1, e.message)))?;
        cands.push((i + 1, e));
    }
    let mut out = Vec::new();
    for f in fams {
        let rels = relation_elements(&extract_mode_relations(f, args.modes));
        out.push(check_soundness(f, args.modes));
        out.push(check_parity(f, args.modes));
        if f == Family::PlusMinus {
            out.push(check_c_coherence(args.modes));
        }
        out.extend(cands.par_iter().map(|(line, e)| {
            let id = format!("ideal.{}.{name}:{line}", f.name());
            membership_report(&id, e, &rels, args.degree, args.cap, true).0
        }).collect::<Vec<_>>());
    }
    Ok(out)
}

fn file_reports(args: &CheckArgs, path: &Path) -> Result<Vec<CheckReport>, UsageError> {
    let text = read(path)?;
    let name = file_name(path);
    let rels = parse_relation_file(&text).map_err(|e| {
        UsageError(format!("{name}:{}:{}: {}", e.span.line, e.span.column, e.message))
    })?;
    let entries: Vec<SuiteRelation> = rels
        .into_iter()
        .map(|(line, r)| user_relation(format!("{name}:{line}"), r))
        .collect();
    check_all(&entries, args.window)
}

fn results(args: &CheckArgs) -> Result<Vec<CheckReport>, UsageError> {
    Ok(match args.target {
        Target::Ybe => vec![check_sybe(&build_r(Var::U))],
        Target::Unitarity => vec![check_unitarity(&build_r(Var::U))],
        Target::Weight => vec![check_weight_conservation(&build_r(Var::U))],
        Target::RllEval => {
            let l = build_eval_l(Var::W);
            vec![
                check_rll("eval.rll", &l),
                check_recomposition("eval.gauss", &l),
                check_inverse("eval.inverse", &l),
            ]
        }
        Target::Relations => check_all(&suite_entries(args.suite), args.window)?,
        Target::Hopf => {
            let mut out = check_all(&hopf_relations(), args.window)?;
            out.extend(hopf_structural(Var::W1, Var::W2));
            out
        }
        Target::Ideal => ideal_reports(args)?,
        Target::File => file_reports(args, args.path.as_deref().expect("validated"))?,
    })
}

/// Runs the selected checks. Results are sorted by id, so the report does
/// not depend on scheduling.
pub fn run(args: &CheckArgs) -> Result<SuiteReport, UsageError> {
    validate(args)?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| UsageError(e.to_string()))?;
    let mut results = pool.install(|| results(args))?;
    results.sort_by(|a, b| a.id.cmp(&b.id));
    let mut millis = start.elapsed().as_millis() as u64;
    if args.deterministic {
        millis = 0;
        for r in &mut results {
            r.millis = 0;
        }
    }
    let mut summary = Summary::default();
    for r in &results {
        match r.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::WindowExhausted => summary.window_exhausted += 1,
        }
    }
    Ok(SuiteReport {
        config: echo(args),
        results,
        summary,
        millis,
    })
}

pub fn emit_json(report: &SuiteReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn emit_text(report: &SuiteReport) -> String {
    let width = report.results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut s = String::new();
    writeln!(s, "{:<width$}  {:<16}  {:>8}  detail", "id", "verdict", "millis").unwrap();
    for r in &report.results {
        let mut detail = Vec::new();
        if let Some(w) = &r.witness {
            detail.push(format!("at {}: {} vs {}", w.location, w.lhs, w.rhs));
        }
        if let Some(n) = r.window {
            detail.push(format!("N={n}"));
        }
        if let Some(n) = &r.note {
            detail.push(n.clone());
        }
        writeln!(
            s,
            "{:<width$}  {:<16}  {:>8}  {}",
            r.id,
            r.verdict.as_str(),
            r.millis,
            detail.join("; ")
        )
        .unwrap();
    }
    let m = &report.summary;
    writeln!(
        s,
        "{} pass, {} fail, {} window-exhausted ({} ms)",
        m.pass, m.fail, m.window_exhausted, report.millis
    )
    .unwrap();
    s
}

pub fn emit(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => emit_json(report),
        Format::Text => emit_text(report),
    }
}

pub fn show(args: &ShowArgs) -> Result<String, UsageError> {
    let w = Var::from_name(&args.at)
        .filter(|v| matches!(v, Var::W | Var::W1 | Var::W2))
        .ok_or_else(|| UsageError(format!("--at expects w, w1 or w2, got '{}'", args.at)))?;
    let currents = render_currents(w).map_err(|e| UsageError(e.to_string()))?;
    let mut s = String::new();
    for (name, m) in currents {
        writeln!(s, "{name} =\n{m}").unwrap();
    }
    Ok(s)
}

/// Parses `argv`, runs, and returns the output text and exit status.
pub fn main_with_args<I, T>(argv: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() { (String::new(), text, code) } else { (text, String::new(), code) };
        }
    };
    match cli.command {
        Command::Check(args) => match run(&args) {
            Ok(r) => (emit(&r, args.format), String::new(), r.exit_code()),
            Err(e) => (String::new(), format!("error: {e}\n"), EXIT_USAGE),
        },
        Command::Show(args) => match show(&args) {
            Ok(s) => (s, String::new(), EXIT_PASS),
            Err(e) => (String::new(), format!("error: {e}\n"), EXIT_USAGE),
        },
    }
}
