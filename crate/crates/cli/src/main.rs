use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ringlab::construct::enumerate_unital_rings;
use ringlab::predicates::check_properties;
use ringlab::suite::{resolve_corpus_spec, HuntReport};
use ringlab::{
    build, build_corpus, hunt_counterexample, parse_expr, run_theorem_suite, Error, FiniteRing, HuntQuery,
    Limits, Predicate, RingAnalysis, RingExpr,
};

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Radicals, reversibility predicates and theorem checks on finite rings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    size_cap: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    lattice_cap: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    armendariz_cap: Option<u32>,
    /// Order bound for the lattice-quantified radical characterizations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    lattice_check_cap: Option<u32>,
    /// Log more (repeat for debug output).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Radical {
    Jacobson,
    Socle,
    Delta,
    DeltaSharp,
}

#[derive(Subcommand)]
enum Command {
    /// Build a ring from an expression and write its table JSON.
    Construct { expr: String },
    /// Print radicals of a ring (expression or ring JSON path).
    Radical {
        ring: String,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Radical::Delta])]
        which: Vec<Radical>,
        /// Also print every characterization of delta(R).
        #[arg(long)]
        all_characterizations: bool,
    },
    /// Evaluate predicates on a ring.
    Check {
        ring: String,
        #[arg(long, value_delimiter = ',', required = true)]
        props: Vec<String>,
    },
    /// Run the theorem suite over a corpus.
    Suite {
        /// Preset name, @file, or `;`-separated expressions.
        #[arg(long)]
        corpus: Option<String>,
    },
    /// Search the corpus for a counterexample to `A => B`.
    Hunt {
        #[arg(long)]
        implies: String,
        #[arg(long)]
        corpus: Option<String>,
        /// Report every counterexample rather than the first.
        #[arg(long)]
        all: bool,
    },
    /// List unital rings of a given order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        up_to_iso: bool,
    },
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownPredicate(_) | Error::UnknownCorpus(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn limits(g: &Global) -> Limits {
    let d = Limits::default();
    Limits {
        size_cap: g.size_cap.map_or(d.size_cap, |v| v as usize),
        lattice_cap: g.lattice_cap.map_or(d.lattice_cap, |v| v as usize),
        armendariz_cap: g.armendariz_cap.map_or(d.armendariz_cap, |v| v as usize),
        lattice_check_cap: g.lattice_check_cap.map_or(d.lattice_check_cap, |v| v as usize),
    }
}

/// An expression, or a path to ring JSON when the text is not an expression.
fn load_ring(text: &str, limits: &Limits) -> Result<FiniteRing, Failure> {
    match parse_expr(text) {
        Ok(expr) => Ok(build(&expr, limits)?),
        Err(_) if Path::new(text).is_file() => Ok(build(&RingExpr::File(PathBuf::from(text)), limits)?),
        Err(e) => Err(e.into()),
    }
}

fn emit(g: &Global, text: &str) -> Result<(), Failure> {
    match &g.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct NamedSet {
    name: String,
    elements: Vec<usize>,
}

fn named(name: &str, elements: Vec<usize>) -> NamedSet {
    NamedSet {
        name: name.to_string(),
        elements,
    }
}

#[derive(Serialize)]
struct RadicalReport {
    tool_version: &'static str,
    ring: String,
    order: usize,
    caps: Limits,
    radicals: Vec<NamedSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    characterizations: Option<Vec<NamedSet>>,
    agree: bool,
}

fn radical_name(r: Radical) -> &'static str {
    match r {
        Radical::Jacobson => "jacobson",
        Radical::Socle => "socle",
        Radical::Delta => "delta",
        Radical::DeltaSharp => "delta-sharp",
    }
}

fn cmd_radical(g: &Global, ring: &str, which: &[Radical], all: bool) -> Result<ExitCode, Failure> {
    let lim = limits(g);
    let a = RingAnalysis::new(load_ring(ring, &lim)?, &lim)?;
    let radicals = which
        .iter()
        .map(|&w| {
            let set = match w {
                Radical::Jacobson => a.jacobson().elems(),
                Radical::Socle => a.socle().elems(),
                Radical::Delta => a.delta().elems(),
                Radical::DeltaSharp => a.delta_sharp().elems(),
            };
            named(radical_name(w), set)
        })
        .collect();
    let mut agree = true;
    let characterizations = if all {
        let delta = a.delta().elems();
        let mut v = vec![
            named("essential-maximal-intersection", a.r1().to_vec()),
            named("socle-quotient-pullback", a.socle_pullback()?.to_vec()),
            named("direct-summand", a.r3_set().to_vec()),
            named("semisimple-complement", a.r5_set().to_vec()),
        ];
        if a.ring().order() <= lim.lattice_check_cap {
            v.push(named("largest-delta-small", a.r2()?.to_vec()));
            v.push(named("faithful-singular-simple", a.r4()?.to_vec()));
        }
        agree = v.iter().all(|s| s.elements == delta);
        Some(v)
    } else {
        None
    };
    let rep = RadicalReport {
        tool_version: ringlab::VERSION,
        ring: a.ring().name().to_string(),
        order: a.ring().order(),
        caps: lim,
        radicals,
        characterizations,
        agree,
    };
    let text = match g.format {
        Format::Json => json(&rep),
        Format::Markdown => {
            let mut s = format!("# Radicals of {}\n\n- order: {}\n", rep.ring, rep.order);
            for n in rep.radicals.iter().chain(rep.characterizations.iter().flatten()) {
                let _ = writeln!(s, "- {}: {:?}", n.name, n.elements);
            }
            let _ = writeln!(s, "- agree: {}", rep.agree);
            s
        }
    };
    emit(g, &text)?;
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_check(g: &Global, ring: &str, props: &[String]) -> Result<ExitCode, Failure> {
    let lim = limits(g);
    let preds: Vec<Predicate> = props.iter().map(|p| p.trim().parse()).collect::<Result<_, _>>()?;
    let a = RingAnalysis::new(load_ring(ring, &lim)?, &lim)?;
    let rep = check_properties(&a, &preds)?;
    let text = match g.format {
        Format::Json => json(&rep),
        Format::Markdown => {
            let mut s = format!("# Properties of {}\n\n| predicate | verdict | witness | method |\n|---|---|---|---|\n", rep.ring);
            for (n, v) in &rep.results {
                let w = v.witness.as_ref().map(|w| format!("{w:?}")).unwrap_or_default();
                let _ = writeln!(s, "| {n} | {} | {w} | {} |", v.verdict, v.method);
            }
            s
        }
    };
    emit(g, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_suite(g: &Global, corpus: Option<&str>) -> Result<ExitCode, Failure> {
    let lim = limits(g);
    let c = build_corpus(&resolve_corpus_spec(corpus), &lim)?;
    let rep = run_theorem_suite(&c, &lim)?;
    let text = match g.format {
        Format::Json => rep.to_json(),
        Format::Markdown => rep.to_markdown(),
    };
    emit(g, &text)?;
    for f in rep.failures() {
        eprintln!("FAIL {}", f.id);
    }
    Ok(if rep.failures().is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_hunt(g: &Global, implies: &str, corpus: Option<&str>, all: bool) -> Result<ExitCode, Failure> {
    let lim = limits(g);
    let mut q: HuntQuery = implies.parse()?;
    q.stop_at_first = !all;
    let c = build_corpus(&resolve_corpus_spec(corpus), &lim)?;
    let rep: HuntReport = hunt_counterexample(&q, &c, &lim)?;
    let text = match g.format {
        Format::Json => rep.to_json(),
        Format::Markdown => rep.to_markdown(),
    };
    emit(g, &text)?;
    Ok(if rep.findings.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct EnumerationReport {
    tool_version: &'static str,
    order: usize,
    up_to_iso: bool,
    count: usize,
    rings: Vec<ringlab::RawRing>,
}

fn cmd_enumerate(g: &Global, order: usize, up_to_iso: bool) -> Result<ExitCode, Failure> {
    let lim = limits(g);
    let rings = enumerate_unital_rings(order, up_to_iso, &lim)?;
    let rep = EnumerationReport {
        tool_version: ringlab::VERSION,
        order,
        up_to_iso,
        count: rings.len(),
        rings: rings.iter().map(FiniteRing::to_raw).collect(),
    };
    let text = match g.format {
        Format::Json => json(&rep),
        Format::Markdown => {
            let mut s = format!("# Unital rings of order {order}\n\n- up_to_iso: {up_to_iso}\n- count: {}\n\n", rep.count);
            for r in &rings {
                let _ = writeln!(s, "- {} (commutative: {})", r.name(), r.is_commutative());
            }
            s
        }
    };
    emit(g, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(g: &Global, expr: &str) -> Result<ExitCode, Failure> {
    let lim = limits(g);
    let ring = load_ring(expr, &lim)?;
    let summary = format!("{} order {}", ring.name(), ring.order());
    match &g.out {
        Some(p) => {
            std::fs::write(p, ring.to_json())?;
            println!("{summary}");
        }
        None => {
            print!("{}", ring.to_json());
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let g = &cli.global;
    if let Some(j) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j as usize)
            .build_global()
            .map_err(|e| Failure::Run(e.to_string()))?;
    }
    match &cli.command {
        Command::Construct { expr } => cmd_construct(g, expr),
        Command::Radical {
            ring,
            which,
            all_characterizations,
        } => cmd_radical(g, ring, which, *all_characterizations),
        Command::Check { ring, props } => cmd_check(g, ring, props),
        Command::Suite { corpus } => cmd_suite(g, corpus.as_deref()),
        Command::Hunt { implies, corpus, all } => cmd_hunt(g, implies, corpus.as_deref(), *all),
        Command::Enumerate { order, up_to_iso } => cmd_enumerate(g, *order, *up_to_iso),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Run(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
