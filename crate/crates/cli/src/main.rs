use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use steiner_core::catalog::{self, Fixture};
use steiner_core::census::census;
use steiner_core::format;
use steiner_core::iso::{are_isomorphic_with, IsoConfig};
use steiner_core::operator::{build_extension, double, survey_doubling, LatinSquare};
use steiner_core::schreier::{build_schreier, classify, count_nonequivalent, FactorSystem};
use steiner_core::veblen::{hyperplanes, is_projective, veblen_points};
use steiner_core::{Error, SteinerLoop, TripleSystem};

const SCHEMA: u32 = 1;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  invalid input (unreadable file, parse error, invalid structure)
  3  a search or size bound was exceeded
  4  a Steiner operator could not be completed

Inputs named by --q, --n, --f, --square and positional systems are either a
path to a file or a catalog name (sts1, sts3, fano, pg<n>, ag<n>, or a key
from `steiner catalog list`).";

#[derive(Parser)]
#[command(name = "steiner", version, about = "Steiner triple systems, Steiner loops and their extensions")]
#[command(after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest order accepted by analysis and isomorphism tests.
    #[arg(long, global = true, default_value_t = 63, value_parser = positive)]
    bound_v: usize,
    /// Largest t·b accepted when enumerating factor systems.
    #[arg(long, global = true, default_value_t = 24, value_parser = positive)]
    bound_tb: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(clap::Args)]
struct SystemInput {
    /// System file (`v b` header) or loop CSV.
    #[arg(long, required_unless_present = "seed_fixture", conflicts_with = "seed_fixture")]
    input: Option<PathBuf>,
    /// Use a catalog entry instead of a file.
    #[arg(long)]
    seed_fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Veblen points, configuration census, projectivity and hyperplanes.
    Analyze(SystemInput),
    /// Build a larger system from an extension.
    Extend {
        #[command(subcommand)]
        kind: ExtendKind,
    },
    /// Build every factor system over a quotient and tally the results.
    Enumerate {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// One line per factor system instead of a summary.
        #[arg(long)]
        list: bool,
    },
    /// Equivalence and isomorphism classes of Schreier extensions.
    Classify {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Double a loop with a square, or survey all squares when none is given.
    Double {
        #[arg(long)]
        n: String,
        #[arg(long)]
        square: Option<String>,
        /// Squares tried by the survey.
        #[arg(long, default_value_t = 1000, value_parser = positive)]
        limit: usize,
    },
    /// Test two systems for isomorphism.
    Isomorphic { first: String, second: String },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum ExtendKind {
    /// Central extension by (Z/2)^t through a factor system.
    Schreier {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Factor system file, catalog key, or `zero`.
        #[arg(long, default_value = "zero")]
        f: String,
    },
    /// Extension given by a Steiner operator file over the quotient `q`.
    Operator {
        #[arg(long)]
        q: String,
        #[arg(long)]
        operator: PathBuf,
    },
    /// Index-2 extension by a symmetric square with identity diagonal.
    Double {
        #[arg(long)]
        n: String,
        #[arg(long)]
        square: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Print an entry in its file format.
    Show { key: String },
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_system_text(text: &str, path: &Path) -> Result<TripleSystem> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    let s = if first.is_some_and(|l| l.starts_with(',')) {
        format::parse_loop_csv(text).map(|l| l.to_system())
    } else {
        format::parse_system(text)
    };
    s.with_context(|| format!("in {}", path.display()))
}

fn load_system(src: &str) -> Result<TripleSystem> {
    let path = Path::new(src);
    if path.is_file() {
        return parse_system_text(&read(path)?, path);
    }
    Ok(catalog::system_by_name(src)?)
}

fn load_input(input: &SystemInput) -> Result<(TripleSystem, String)> {
    match (&input.input, &input.seed_fixture) {
        (Some(path), _) => Ok((parse_system_text(&read(path)?, path)?, path.display().to_string())),
        (None, Some(key)) => Ok((catalog::system_by_name(key)?, key.clone())),
        (None, None) => bail!("no input given"),
    }
}

fn load_square(src: &str) -> Result<LatinSquare> {
    let path = Path::new(src);
    if path.is_file() {
        return format::parse_square(&read(path)?).with_context(|| format!("in {src}"));
    }
    match catalog::fixture(src)? {
        Fixture::Square(sq) => Ok(sq),
        _ => bail!(Error::UnknownKey(format!("{src} (not a square)"))),
    }
}

fn load_factor(src: &str, q: &Arc<TripleSystem>, t: u32) -> Result<FactorSystem> {
    let f = if src == "zero" {
        FactorSystem::zero(q.clone(), t)
    } else if Path::new(src).is_file() {
        format::parse_factor_system(&read(Path::new(src))?, q.clone()).with_context(|| format!("in {src}"))?
    } else {
        match catalog::fixture(src)? {
            Fixture::Factor(f) if **f.quotient() == **q => f,
            Fixture::Factor(_) => bail!(Error::ShapeMismatch(format!("{src} is over a different quotient"))),
            _ => bail!(Error::UnknownKey(format!("{src} (not a factor system)"))),
        }
    };
    if f.t() != t {
        bail!(Error::ShapeMismatch(format!("factor system has t = {}, requested t = {t}", f.t())));
    }
    Ok(f)
}

fn check_v(v: usize, bound: usize) -> Result<()> {
    if v > bound {
        bail!(Error::BoundExceeded(format!("order {v} exceeds --bound-v {bound}")));
    }
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct Analysis {
    schema: u32,
    source: String,
    v: usize,
    b: usize,
    veblen: Vec<usize>,
    veblen_count: usize,
    center_order: usize,
    pasch_total: usize,
    fano_total: usize,
    projective: bool,
    hyperplanes: Vec<Vec<usize>>,
}

fn analyze(input: &SystemInput, cli: &Cli) -> Result<String> {
    let (s, source) = load_input(input)?;
    check_v(s.v(), cli.bound_v)?;
    let veblen = veblen_points(&s);
    let c = census(&s);
    let a = Analysis {
        schema: SCHEMA,
        source,
        v: s.v(),
        b: s.b(),
        veblen_count: veblen.len(),
        center_order: veblen.len() + 1,
        veblen,
        pasch_total: c.pasch_total,
        fano_total: c.fano_total,
        projective: is_projective(&s),
        hyperplanes: hyperplanes(&s),
    };
    if cli.format == OutputFormat::Json {
        return Ok(serde_json::to_string_pretty(&a)? + "\n");
    }
    let mut out = format!(
        "v {}\nb {}\nveblen {}\ncenter_order {}\npasch_total {}\nfano_total {}\nprojective {}\nhyperplanes {}\n",
        a.v,
        a.b,
        join(&a.veblen),
        a.center_order,
        a.pasch_total,
        a.fano_total,
        a.projective,
        a.hyperplanes.len()
    );
    for h in &a.hyperplanes {
        out += &format!("  {}\n", join(h));
    }
    Ok(out)
}

fn emit_system(s: &TripleSystem, provenance: &str, cli: &Cli) -> Result<String> {
    if cli.format == OutputFormat::Json {
        let j = json!({
            "schema": SCHEMA,
            "provenance": provenance,
            "v": s.v(),
            "b": s.b(),
            "triples": s.triples(),
            "veblen": veblen_points(s),
        });
        return Ok(serde_json::to_string_pretty(&j)? + "\n");
    }
    Ok(format!("# {provenance}\n{}", format::write_system(s)))
}

fn extend(kind: &ExtendKind, cli: &Cli) -> Result<String> {
    let (s, provenance) = match kind {
        ExtendKind::Schreier { q, t, f } => {
            let qs = Arc::new(load_system(q)?);
            let fs = load_factor(f, &qs, *t)?;
            (build_schreier(&fs).to_system(), format!("extend schreier q={q} t={t} f={f}"))
        }
        ExtendKind::Operator { q, operator } => {
            let ql = SteinerLoop::from_system(&load_system(q)?);
            let op = format::parse_operator(&read(operator)?, &ql)
                .with_context(|| format!("in {}", operator.display()))?;
            let built = build_extension(&op)?;
            (built.to_system(), format!("extend operator q={q} operator={}", operator.display()))
        }
        ExtendKind::Double { n, square } => {
            let nl = SteinerLoop::from_system(&load_system(n)?);
            let s = double(&nl, &load_square(square)?)?;
            (s, format!("extend double n={n} square={square}"))
        }
    };
    emit_system(&s, &provenance, cli)
}

fn enumerate(q: &str, t: u32, list: bool, cli: &Cli) -> Result<String> {
    let qs = Arc::new(load_system(q)?);
    let tb = t as usize * qs.b();
    if tb > cli.bound_tb || tb >= 64 {
        bail!(Error::BoundExceeded(format!("t*b = {tb} exceeds --bound-tb {}", cli.bound_tb)));
    }
    let rows: Vec<(u64, usize, bool)> = (0..1u64 << tb)
        .into_par_iter()
        .map(|i| {
            let s = build_schreier(&FactorSystem::from_index(qs.clone(), t, i)).to_system();
            (i, veblen_points(&s).len(), is_projective(&s))
        })
        .collect();
    let mut tally = std::collections::BTreeMap::new();
    for &(_, vb, proj) in &rows {
        *tally.entry((vb, proj)).or_insert(0u64) += 1;
    }
    let json_mode = cli.format == OutputFormat::Json;
    if list {
        if json_mode {
            let items: Vec<_> = rows
                .iter()
                .map(|&(i, vb, proj)| json!({"index": i, "veblen_count": vb, "projective": proj}))
                .collect();
            return Ok(serde_json::to_string_pretty(&json!({"schema": SCHEMA, "systems": items}))? + "\n");
        }
        return Ok(rows.iter().map(|(i, vb, proj)| format!("{i} {vb} {proj}\n")).collect());
    }
    if json_mode {
        let buckets: Vec<_> = tally
            .iter()
            .map(|(&(vb, proj), &count)| json!({"veblen_count": vb, "projective": proj, "count": count}))
            .collect();
        let j = json!({"schema": SCHEMA, "w": qs.v(), "t": t, "total": rows.len(), "tally": buckets});
        return Ok(serde_json::to_string_pretty(&j)? + "\n");
    }
    let mut out = format!("w {} t {} total {}\n", qs.v(), t, rows.len());
    for ((vb, proj), count) in tally {
        out += &format!("veblen {vb} projective {proj}: {count}\n");
    }
    Ok(out)
}

fn run_classify(q: &str, t: u32, cli: &Cli) -> Result<String> {
    let qs = Arc::new(load_system(q)?);
    let report = classify(qs.clone(), t, cli.bound_tb)?;
    let closed = count_nonequivalent(&qs, t).ok();
    if closed.is_some_and(|c| c != report.equivalence_class_count as u128) {
        bail!("equivalence class count disagrees with the closed form");
    }
    if cli.format == OutputFormat::Json {
        let mut j = serde_json::to_value(&report)?;
        j["schema"] = json!(SCHEMA);
        return Ok(serde_json::to_string_pretty(&j)? + "\n");
    }
    let mut out = format!(
        "w {} b {} t {}\ntotal {}\nhom {}\ncoboundaries {}\nequivalence_classes {}\nisomorphism_classes {}\n",
        report.w,
        report.b,
        report.t,
        report.total,
        report.hom_count,
        report.coboundary_count,
        report.equivalence_class_count,
        report.isomorphism_class_count
    );
    for (i, (class, f)) in report.isomorphism_classes.iter().zip(report.representatives()).enumerate() {
        let s = build_schreier(&f).to_system();
        out += &format!(
            "class {i}: representative [{}], {} equivalence classes, builds v={} with {} Veblen points\n",
            join(&class.representative),
            class.equivalence_classes.len(),
            s.v(),
            veblen_points(&s).len()
        );
    }
    Ok(out)
}

fn run_double(n: &str, square: Option<&str>, limit: usize, cli: &Cli) -> Result<String> {
    let nl = SteinerLoop::from_system(&load_system(n)?);
    if let Some(sq) = square {
        let s = double(&nl, &load_square(sq)?)?;
        return emit_system(&s, &format!("double n={n} square={sq}"), cli);
    }
    let survey = survey_doubling(&nl, limit);
    if cli.format == OutputFormat::Json {
        let j = json!({"schema": SCHEMA, "loop_order": nl.order(), "survey": survey});
        return Ok(serde_json::to_string_pretty(&j)? + "\n");
    }
    Ok(format!(
        "loop_order {}\nsquares {}\nvalid {}\nincompletable {}\n",
        nl.order(),
        survey.squares,
        survey.valid,
        survey.incompletable
    ))
}

fn isomorphic(first: &str, second: &str, cli: &Cli) -> Result<String> {
    let (a, b) = (load_system(first)?, load_system(second)?);
    check_v(a.v().max(b.v()), cli.bound_v)?;
    let cfg = IsoConfig { max_v: cli.bound_v, ..IsoConfig::default() };
    let map = are_isomorphic_with(&a, &b, &cfg)?;
    if cli.format == OutputFormat::Json {
        let j = json!({"schema": SCHEMA, "isomorphic": map.is_some(), "map": map});
        return Ok(serde_json::to_string_pretty(&j)? + "\n");
    }
    Ok(match map {
        Some(m) => format!("isomorphic\nmap {}\n", join(&m)),
        None => "not isomorphic\n".into(),
    })
}

fn run_catalog(action: &CatalogAction, cli: &Cli) -> Result<String> {
    let json_mode = cli.format == OutputFormat::Json;
    match action {
        CatalogAction::List => {
            let mut entries = catalog::list().to_vec();
            entries.sort_by_key(|e| e.key);
            if json_mode {
                return Ok(serde_json::to_string_pretty(&json!({"schema": SCHEMA, "fixtures": entries}))? + "\n");
            }
            Ok(entries
                .iter()
                .map(|e| {
                    let origin = if e.external { "external" } else { "worked example" };
                    format!("{:<16} {:<11} {:<15} {}\n", e.key, e.kind, origin, e.description)
                })
                .collect())
        }
        CatalogAction::Show { key } => {
            let fx = catalog::fixture(key)?;
            let (kind, text) = match &fx {
                Fixture::System(s) => ("system", format::write_system(s)),
                Fixture::Loop(l) => ("loop", format::write_loop_csv(l)),
                Fixture::Square(sq) => ("square", format::write_square(sq)),
                Fixture::Factor(f) => ("factor", format::write_factor_system(f)),
                Fixture::Permutation(p) => ("permutation", join(p) + "\n"),
            };
            if json_mode {
                let j = json!({"schema": SCHEMA, "key": key, "kind": kind, "data": text});
                return Ok(serde_json::to_string_pretty(&j)? + "\n");
            }
            Ok(text)
        }
    }
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Analyze(input) => analyze(input, cli),
        Command::Extend { kind } => extend(kind, cli),
        Command::Enumerate { q, t, list } => enumerate(q, *t, *list, cli),
        Command::Classify { q, t } => run_classify(q, *t, cli),
        Command::Double { n, square, limit } => run_double(n, square.as_deref(), *limit, cli),
        Command::Isomorphic { first, second } => isomorphic(first, second, cli),
        Command::Catalog { action } => run_catalog(action, cli),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            let e = match e {
                Error::InvalidOperator(inner) => inner,
                e => e,
            };
            return match e {
                Error::BoundExceeded(_) => 3,
                Error::Incompletable(..) => 4,
                _ => 2,
            };
        }
    }
    2
}

fn init_threads() -> Result<()> {
    if let Ok(n) = std::env::var("STEINER_THREADS") {
        let n: usize = n.parse().context("STEINER_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| run(&cli)).and_then(|out| {
        match &cli.output {
            Some(path) => fs::write(path, out).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().write_all(out.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
