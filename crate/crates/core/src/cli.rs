//! The `hyperbi` command line.
//!
//! Exit codes: 0 when the property holds (or the command succeeded), 1 when
//! it fails or nothing was found, 2 on usage, parse or budget errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumerate::{self, Budget, Dedup, EnumerationSpec, Filter, SearchLevel};
use crate::error::Error;
use crate::format;
use crate::ideals::{self, IdealKind};
use crate::laws::{self, HarnessConfig, LawReport, Outcome, SweepReport, Tally};
use crate::structure::{Shape, Structure};

pub const TOOL: &str = "hyperbi";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "hyperbi", version, about = "Bi-ideals in finite hypersemigroups and Gamma-semigroups")]
pub struct Cli {
    /// Report file (check, ideals, verify) or catalog directory (enumerate, search-problem).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for exhaustive commands [default: available cores].
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sampled law checks.
    #[arg(long, global = true, default_value_t = laws::DEFAULT_SEED)]
    seed: u64,
    /// Lift the table-space budget of exhaustive commands.
    #[arg(long, global = true)]
    budget_override: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide one property of a structure file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// List the ideals of one kind, or a principal one-sided ideal.
    Ideals(IdealsArgs),
    /// Run the law harness on a file, or on every table of a shape.
    Verify {
        #[arg(required_unless_present = "exhaustive", conflicts_with = "exhaustive")]
        file: Option<PathBuf>,
        /// Sweep a whole space: `hyper N` or `gamma N K`.
        #[arg(long, num_args = 2..=3, value_names = ["KIND", "N", "K"])]
        exhaustive: Option<Vec<String>>,
    },
    /// Enumerate every table of a shape, optionally writing a catalog.
    Enumerate {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        /// Size of the gamma set (gamma only).
        k: Option<usize>,
        #[arg(long)]
        semigroups_only: bool,
        /// Keep one canonical representative per isomorphism class.
        #[arg(long)]
        dedup: bool,
    },
    /// Search for hypersemigroups without proper bi-ideals that are not hypergroups.
    SearchProblem {
        #[arg(long, default_value_t = 1)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        #[arg(long)]
        dedup: bool,
    },
}

#[derive(Args, Debug)]
struct IdealsArgs {
    file: PathBuf,
    #[arg(long, value_enum, required_unless_present = "principal", conflicts_with = "principal")]
    kind: Option<KindArg>,
    /// `left B` or `right B`.
    #[arg(long, num_args = 2, value_names = ["SIDE", "B"])]
    principal: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Hypersemigroup,
    GammaSemigroup,
    Hypergroup,
    Regular,
    LeftSimple,
    RightSimple,
    NoProperBiIdeals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Left,
    Right,
    TwoSided,
    Bi,
    Subsemigroup,
    SubidempotentBi,
}

impl From<KindArg> for IdealKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Left => IdealKind::LeftIdeal,
            KindArg::Right => IdealKind::RightIdeal,
            KindArg::TwoSided => IdealKind::TwoSidedIdeal,
            KindArg::Bi => IdealKind::BiIdeal,
            KindArg::Subsemigroup => IdealKind::Subsemigroup,
            KindArg::SubidempotentBi => IdealKind::SubidempotentBiIdeal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hyper,
    Gamma,
}

/// A command's failure, already mapped to its exit code.
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit {
            code: 2,
            message: message.into(),
        }
    }

    fn fails(message: impl Into<String>) -> Self {
        Exit {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit::usage(e.to_string())
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        Exit::usage(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Exit>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    output: Option<PathBuf>,
    workers: usize,
    config: HarnessConfig,
    budget: Budget,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let mut ctx = Ctx {
        out,
        output: cli.output,
        workers,
        config: HarnessConfig {
            seed: cli.seed,
            ..HarnessConfig::default()
        },
        budget: if cli.budget_override {
            Budget::overridden()
        } else {
            Budget::default()
        },
    };
    let result = match cli.command {
        Command::Check { file, property } => cmd_check(&mut ctx, &file, property),
        Command::Ideals(args) => cmd_ideals(&mut ctx, &args),
        Command::Verify { file: Some(file), .. } => cmd_verify_file(&mut ctx, &file),
        Command::Verify { exhaustive: Some(spec), .. } => {
            parse_shape(&spec).and_then(|shape| cmd_verify_exhaustive(&mut ctx, shape))
        }
        Command::Verify { .. } => Err(Exit::usage("verify needs a file or --exhaustive")),
        Command::Enumerate {
            kind,
            n,
            k,
            semigroups_only,
            dedup,
        } => shape_of(kind, n, k).and_then(|shape| {
            let spec = EnumerationSpec {
                shape,
                filter: if semigroups_only { Filter::SemigroupsOnly } else { Filter::All },
                dedup: if dedup { Dedup::UpToIsomorphism } else { Dedup::Raw },
            };
            cmd_enumerate(&mut ctx, spec)
        }),
        Command::SearchProblem { n_from, n_to, dedup } => cmd_search_problem(&mut ctx, n_from, n_to, dedup),
    };
    match result {
        Ok(code) => code,
        Err(exit) => {
            let _ = writeln!(err, "error: {}", exit.message);
            exit.code
        }
    }
}

fn shape_of(kind: Kind, n: usize, k: Option<usize>) -> std::result::Result<Shape, Exit> {
    match (kind, k) {
        (Kind::Hyper, None) => Ok(Shape::Hyper { n }),
        (Kind::Hyper, Some(_)) => Err(Exit::usage("hyper spaces take no K")),
        (Kind::Gamma, Some(k)) => Ok(Shape::Gamma { n, k }),
        (Kind::Gamma, None) => Err(Exit::usage("gamma spaces need K")),
    }
}

fn parse_shape(spec: &[String]) -> std::result::Result<Shape, Exit> {
    let kind = Kind::from_str(&spec[0], true).map_err(|_| Exit::usage(format!("unknown kind {:?}", spec[0])))?;
    let number = |s: &String| s.parse::<usize>().map_err(|_| Exit::usage(format!("not a size: {s:?}")));
    let n = number(&spec[1])?;
    let k = spec.get(2).map(number).transpose()?;
    shape_of(kind, n, k)
}

fn load(path: &Path) -> std::result::Result<Structure, Exit> {
    let text = fs::read_to_string(path).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> std::result::Result<(), Exit> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn header(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn not_associative(s: &Structure) -> Option<String> {
    s.associativity_violation().map(|v| format!("not associative: {v}"))
}

/// Verdict and explanation, or `None` when the property does not apply to
/// the file's kind.
fn decide(s: &Structure, property: Property) -> Option<(bool, String)> {
    let alg = s.algebra();
    let assoc = not_associative(s);
    let needs_assoc = |holds: Box<dyn FnOnce() -> (bool, String)>| match &assoc {
        Some(reason) => (false, reason.clone()),
        None => holds(),
    };
    Some(match (property, s) {
        (Property::Hypersemigroup, Structure::Hyper(_)) | (Property::GammaSemigroup, Structure::Gamma(_)) => {
            match &assoc {
                Some(reason) => (false, reason.clone()),
                None => (true, "associative".into()),
            }
        }
        (Property::Hypersemigroup | Property::Hypergroup, Structure::Gamma(_))
        | (Property::GammaSemigroup, Structure::Hyper(_)) => return None,
        (Property::Hypergroup, Structure::Hyper(t)) => needs_assoc(Box::new(|| {
            let verdict = t.hypergroup().expect("associative");
            (verdict.is_hypergroup(), verdict.reason())
        })),
        (Property::Regular, _) => needs_assoc(Box::new(|| {
            let holds = ideals::is_regular(alg).expect("associative");
            let witness = (0..s.size()).find(|&a| {
                let single = alg.carrier().singleton(a).expect("in range");
                let full = alg.carrier().full();
                let around = alg.product(alg.product(single, full).expect("nonempty"), single).expect("nonempty");
                !around.contains(a)
            });
            match witness {
                None => (holds, "a in a.H.a for every a".into()),
                Some(a) => (holds, format!("{a} is not in {{{a}}}.H.{{{a}}}")),
            }
        })),
        (Property::LeftSimple | Property::RightSimple, _) => {
            let left = property == Property::LeftSimple;
            let kind = if left { IdealKind::LeftIdeal } else { IdealKind::RightIdeal };
            let side = if left { "left" } else { "right" };
            let list = ideals::enumerate_ideals(alg, kind).expect("no precondition");
            match list.iter().find(|i| !i.is_full()) {
                None => (true, format!("the carrier is the only {side} ideal")),
                Some(p) => (false, format!("{p} is a proper {side} ideal")),
            }
        }
        (Property::NoProperBiIdeals, _) => needs_assoc(Box::new(|| {
            let list = ideals::enumerate_ideals(alg, IdealKind::BiIdeal).expect("associative");
            match list.iter().find(|i| !i.is_full()) {
                None => (true, "the carrier is the only bi-ideal".into()),
                Some(p) => (false, format!("{p} is a proper bi-ideal")),
            }
        })),
    })
}

fn property_name(p: Property) -> String {
    p.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn cmd_check(ctx: &mut Ctx, file: &Path, property: Property) -> CmdResult {
    let s = load(file)?;
    let name = property_name(property);
    let (holds, detail) = decide(&s, property)
        .ok_or_else(|| Exit::usage(format!("property {name} does not apply to {} files", s.kind_name())))?;
    writeln!(ctx.out, "{name}: {} ({detail})", if holds { "holds" } else { "fails" })?;
    if let Some(path) = &ctx.output {
        let mut report = header("check");
        report.insert("property".into(), json!(name));
        report.insert("holds".into(), json!(holds));
        report.insert("detail".into(), json!(detail));
        report.insert("digest".into(), json!(s.digest()));
        report.insert("structure".into(), format::to_value(&s));
        write_json(path, &report)?;
    }
    Ok(if holds { 0 } else { 1 })
}

fn cmd_ideals(ctx: &mut Ctx, args: &IdealsArgs) -> CmdResult {
    let s = load(&args.file)?;
    let alg = s.algebra();
    let (what, list) = match (&args.kind, &args.principal) {
        (Some(kind), _) => {
            let kind = IdealKind::from(*kind);
            let list = match ideals::enumerate_ideals(alg, kind) {
                Err(Error::NotAssociative(v)) => return Err(Exit::fails(format!("not associative: {v}"))),
                other => other?,
            };
            (serde_json::to_value(kind).expect("serializes"), list)
        }
        (None, Some(principal)) => {
            let b: usize = principal[1]
                .parse()
                .map_err(|_| Exit::usage(format!("not an element: {:?}", principal[1])))?;
            let ideal = match principal[0].as_str() {
                "left" => ideals::principal_left_ideal(alg, b),
                "right" => ideals::principal_right_ideal(alg, b),
                other => return Err(Exit::usage(format!("side must be left or right, not {other:?}"))),
            };
            let ideal = match ideal {
                Err(Error::NotAssociative(v)) => return Err(Exit::fails(format!("not associative: {v}"))),
                other => other?,
            };
            (json!({ "principal": principal[0], "element": b }), vec![ideal])
        }
        (None, None) => return Err(Exit::usage("give --kind or --principal")),
    };
    for ideal in &list {
        writeln!(ctx.out, "{ideal}")?;
    }
    if let Some(path) = &ctx.output {
        let mut report = header("ideals");
        report.insert("query".into(), what);
        report.insert("ideals".into(), json!(list));
        report.insert("digest".into(), json!(s.digest()));
        report.insert("structure".into(), format::to_value(&s));
        write_json(path, &report)?;
    }
    Ok(0)
}

fn outcome_detail(o: &Outcome) -> String {
    match o {
        Outcome::Pass => String::new(),
        Outcome::Fail(c) => c.detail.clone(),
        Outcome::NotApplicable(r) => r.to_string(),
    }
}

fn tally_of<'a>(outcomes: impl Iterator<Item = &'a Outcome>) -> Tally {
    let mut t = Tally::default();
    for o in outcomes {
        match o {
            Outcome::Pass => t.pass += 1,
            Outcome::Fail(_) => t.fail += 1,
            Outcome::NotApplicable(_) => t.not_applicable += 1,
        }
    }
    t
}

/// Machine form of a single-structure report.
pub fn law_report_json(report: &LawReport) -> Value {
    let mut m = header("verify");
    m.insert("digest".into(), json!(report.digest));
    m.insert("structure".into(), format::to_value(&report.structure));
    m.insert("seed".into(), json!(report.config.seed));
    m.insert("samples".into(), json!(report.config.samples));
    let results: Vec<Value> = report
        .results
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(&r.outcome).expect("serializes");
            let obj = v.as_object_mut().expect("outcomes are objects");
            obj.insert("check".into(), json!(r.id));
            obj.insert("statement".into(), json!(r.id.statement()));
            v
        })
        .collect();
    m.insert("results".into(), Value::Array(results));
    m.insert(
        "summary".into(),
        json!(tally_of(report.results.iter().map(|r| &r.outcome))),
    );
    let timings: serde_json::Map<String, Value> = report
        .results
        .iter()
        .map(|r| (r.id.code().to_string(), json!(r.elapsed.as_nanos() as u64)))
        .collect();
    m.insert("timings_ns".into(), Value::Object(timings));
    Value::Object(m)
}

fn cmd_verify_file(ctx: &mut Ctx, file: &Path) -> CmdResult {
    let s = load(file)?;
    let report = laws::verify_structure(&s, &ctx.config);
    writeln!(ctx.out, "{} {}", s.kind_name(), report.digest)?;
    for r in &report.results {
        let label = if r.outcome.is_fail() { "FAIL" } else { r.outcome.label() };
        let detail = outcome_detail(&r.outcome);
        let line = format!("  {:<6} {:<15} {}", r.id.code(), label, detail);
        writeln!(ctx.out, "{}", line.trim_end())?;
    }
    let t = tally_of(report.results.iter().map(|r| &r.outcome));
    writeln!(
        ctx.out,
        "{} checks: {} pass / {} fail / {} not applicable",
        report.results.len(),
        t.pass,
        t.fail,
        t.not_applicable
    )?;
    if let Some(path) = &ctx.output {
        write_json(path, &law_report_json(&report))?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn semigroup_noun(shape: Shape) -> &'static str {
    match shape {
        Shape::Hyper { .. } => "hypersemigroups",
        Shape::Gamma { .. } => "gamma-semigroups",
    }
}

/// Machine form of an exhaustive sweep.
pub fn sweep_report_json(report: &SweepReport) -> Value {
    let mut m = header("verify-exhaustive");
    m.insert("shape".into(), json!(report.shape));
    m.insert("seed".into(), json!(report.config.seed));
    m.insert("samples".into(), json!(report.config.samples));
    m.insert("scanned".into(), json!(report.scanned));
    m.insert("semigroups".into(), json!(report.semigroups));
    if let Some(h) = report.hypergroups {
        m.insert("hypergroups".into(), json!(h));
    }
    if let Some(w) = report.problem_witnesses {
        m.insert("problem_witnesses".into(), json!(w));
    }
    let tallies: serde_json::Map<String, Value> = report
        .tallies
        .iter()
        .map(|(id, t)| (id.code().to_string(), json!(t)))
        .collect();
    m.insert("tallies".into(), Value::Object(tallies));
    m.insert("failure_count".into(), json!(report.failure_count));
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            json!({
                "index": f.index,
                "check": f.check,
                "counterexample": f.counterexample,
                "digest": f.structure.digest(),
                "structure": format::to_value(&f.structure),
            })
        })
        .collect();
    m.insert("failures".into(), Value::Array(failures));
    m.insert("timings_ns".into(), json!({ "total": report.elapsed.as_nanos() as u64 }));
    Value::Object(m)
}

fn cmd_verify_exhaustive(ctx: &mut Ctx, shape: Shape) -> CmdResult {
    let report = laws::verify_exhaustive(shape, &ctx.budget, &ctx.config, ctx.workers)?;
    writeln!(
        ctx.out,
        "{shape}: {} scanned / {} {} / {} failures",
        report.scanned,
        report.semigroups,
        semigroup_noun(shape),
        report.failure_count
    )?;
    if let (Some(h), Some(w)) = (report.hypergroups, report.problem_witnesses) {
        writeln!(ctx.out, "{h} hypergroups / {w} without proper bi-ideals that are not hypergroups")?;
    }
    for (id, t) in &report.tallies {
        writeln!(
            ctx.out,
            "  {:<6} {:>10} pass {:>6} fail {:>10} n/a",
            id.code(),
            t.pass,
            t.fail,
            t.not_applicable
        )?;
    }
    for f in &report.failures {
        writeln!(ctx.out, "  FAIL {} at table {}: {}", f.check, f.index, f.counterexample.detail)?;
    }
    writeln!(ctx.out, "elapsed {:.2}s", report.elapsed.as_secs_f64())?;
    if let Some(path) = &ctx.output {
        write_json(path, &sweep_report_json(&report))?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

#[derive(Serialize)]
struct Properties {
    semigroup: bool,
    regular: Option<bool>,
    left_simple: bool,
    right_simple: bool,
    no_proper_bi_ideals: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hypergroup: Option<Option<bool>>,
    bi_ideals: Option<usize>,
}

fn properties(s: &Structure) -> Properties {
    let alg = s.algebra();
    let semigroup = s.is_semigroup();
    let bi = semigroup.then(|| ideals::enumerate_ideals(alg, IdealKind::BiIdeal).expect("associative"));
    Properties {
        semigroup,
        regular: semigroup.then(|| ideals::is_regular(alg).expect("associative")),
        left_simple: ideals::is_left_simple(alg),
        right_simple: ideals::is_right_simple(alg),
        no_proper_bi_ideals: bi.as_ref().map(|b| b.len() == 1),
        hypergroup: match s {
            Structure::Hyper(t) => Some(semigroup.then(|| t.is_hypergroup())),
            Structure::Gamma(_) => None,
        },
        bi_ideals: bi.map(|b| b.len()),
    }
}

fn index_width(shape: Shape) -> usize {
    enumerate::Space::new(shape)
        .ok()
        .and_then(|s| s.size())
        .map_or(1, |size| size.saturating_sub(1).to_string().len())
}

fn catalog_dir(path: &Path) -> std::result::Result<(), Exit> {
    fs::create_dir_all(path).map_err(|e| Exit::usage(format!("{}: {e}", path.display())))
}

fn cmd_enumerate(ctx: &mut Ctx, spec: EnumerationSpec) -> CmdResult {
    let found = enumerate::collect_structures(spec, &ctx.budget, ctx.workers)?;
    let filter = if spec.filter == Filter::SemigroupsOnly { ", semigroups only" } else { "" };
    let dedup = if spec.dedup == Dedup::UpToIsomorphism { ", up to isomorphism" } else { "" };
    writeln!(ctx.out, "{}: {} structures{filter}{dedup}", spec.shape, found.len())?;
    if let Some(dir) = &ctx.output {
        catalog_dir(dir)?;
        let width = index_width(spec.shape);
        let mut entries = Vec::with_capacity(found.len());
        for (index, s) in &found {
            let file = format!("{index:0width$}.json");
            fs::write(dir.join(&file), format::to_json(s))?;
            entries.push(json!({
                "file": file,
                "index": index,
                "digest": s.digest(),
                "properties": properties(s),
            }));
        }
        let mut index = header("enumerate");
        index.insert("shape".into(), json!(spec.shape));
        index.insert("filter".into(), json!(spec.filter));
        index.insert("dedup".into(), json!(spec.dedup));
        index.insert("count".into(), json!(found.len()));
        index.insert("entries".into(), Value::Array(entries));
        write_json(&dir.join("index.json"), &index)?;
    }
    Ok(0)
}

fn level_json(level: &SearchLevel, files: &[String]) -> Value {
    match level {
        SearchLevel::Complete { n, scanned, witnesses } => json!({
            "n": n,
            "status": "complete",
            "scanned": scanned,
            "witnesses": witnesses
                .iter()
                .zip(files)
                .map(|((index, w), file)| json!({
                    "file": file,
                    "index": index,
                    "digest": Structure::Hyper(w.table().clone()).digest(),
                    "bi_ideals": w.bi_ideals,
                    "reason": w.reason.reason(),
                }))
                .collect::<Vec<_>>(),
        }),
        SearchLevel::Refused { n, space } => json!({
            "n": n,
            "status": "refused",
            "space": space,
        }),
    }
}

fn cmd_search_problem(ctx: &mut Ctx, n_from: usize, n_to: usize, dedup: bool) -> CmdResult {
    if n_from == 0 || n_from > n_to {
        return Err(Exit::usage("need 1 <= --n-from <= --n-to"));
    }
    let dedup = if dedup { Dedup::UpToIsomorphism } else { Dedup::Raw };
    if let Some(dir) = &ctx.output {
        catalog_dir(dir)?;
    }
    let mut levels_json = Vec::new();
    let mut io_error = None;
    let (out, output) = (&mut *ctx.out, ctx.output.as_deref());
    let levels = enumerate::search_problem_with(n_from, n_to, dedup, &ctx.budget, ctx.workers, |level| {
        let line = match level {
            SearchLevel::Complete { n, scanned, witnesses } => {
                format!("n={n}: {} witnesses ({scanned} tables scanned)", witnesses.len())
            }
            SearchLevel::Refused { n, space } => format!("n={n}: refused, {space} tables exceed the budget"),
        };
        let mut step = || -> std::io::Result<()> {
            writeln!(out, "{line}")?;
            let Some(dir) = output else { return Ok(()) };
            let width = index_width(Shape::Hyper { n: level.n() });
            let mut files = Vec::new();
            for (index, w) in level.witnesses() {
                let file = format!("n{}-{index:0width$}.json", level.n());
                fs::write(dir.join(&file), format::to_json(&Structure::Hyper(w.table().clone())))?;
                files.push(file);
            }
            levels_json.push(level_json(level, &files));
            let mut index = header("search-problem");
            index.insert("dedup".into(), json!(dedup));
            index.insert("levels".into(), Value::Array(levels_json.clone()));
            let mut text = serde_json::to_string_pretty(&index).expect("serializes");
            text.push('\n');
            fs::write(dir.join("index.json"), text)
        };
        if io_error.is_none() {
            io_error = step().err();
        }
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if levels.iter().any(|l| matches!(l, SearchLevel::Refused { .. })) {
        return Err(Exit::usage("budget exceeded; pass --budget-override to search larger sizes"));
    }
    let total: usize = levels.iter().map(|l| l.witnesses().len()).sum();
    Ok(if total > 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::CheckId;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hyperbi").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["check"]).0, 2);
        assert_eq!(run_args(&["verify", "--exhaustive", "monoid", "2"]).0, 2);
        assert_eq!(run_args(&["verify", "--exhaustive", "gamma", "2"]).0, 2);
        assert_eq!(run_args(&["--version"]).0, 0);
    }

    #[test]
    fn exhaustive_hyper_two() {
        let (code, out, _) = run_args(&["--workers", "1", "verify", "--exhaustive", "hyper", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("hyper n=2: 81 scanned / 30 hypersemigroups / 0 failures\n"), "{out}");
    }

    #[test]
    fn budget_refusal_names_the_space() {
        let (code, _, err) = run_args(&["verify", "--exhaustive", "hyper", "9"]);
        assert_eq!(code, 2);
        assert!(err.contains("511^81"), "{err}");
    }

    #[test]
    fn search_exit_codes() {
        assert_eq!(run_args(&["search-problem", "--n-to", "1"]).0, 1);
        let (code, out, _) = run_args(&["search-problem", "--n-to", "2", "--dedup"]);
        assert_eq!(code, 0);
        assert!(out.contains("n=2: 7 witnesses"), "{out}");
    }

    #[test]
    fn all_properties_have_names() {
        for p in Property::value_variants() {
            assert!(!property_name(*p).is_empty());
        }
        assert_eq!(CheckId::from_code("T3.13"), Some(CheckId::T3_13));
    }
}
