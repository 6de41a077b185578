//! Command-line driver for the firefly automaton library: simulate single
//! orbits, emit traces and summaries, build the counterexample catalogue,
//! sweep coloring spaces, run verification suites, and classify six-color
//! subtrees.
//!
//! Exit codes: 0 on success (a sweep that finds counterexamples still
//! exits 0 — reporting them is its job), 1 when a verification suite
//! detects a violation, 2 on usage or validation errors with a one-line
//! diagnostic on stderr.
//!
//! Output is a pure function of arguments, input files, and seed: repeated
//! invocations are byte-identical, regardless of `--threads`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fca::construct::{
    construct_even, construct_highdeg, construct_kappa8, construct_odd, counterexample_for_kappa,
    ConstructionResult,
};
use fca::dynamics::{step, Configuration, MAX_KAPPA, MIN_KAPPA};
use fca::graph::{make_star, root_tree, Graph};
use fca::harness::{
    check_branch_width_lemma, check_degree_blinking, check_star_sync_kappa8,
    check_width_convergence, phase_transition_table, sweep_tree, LemmaCheckReport, PhaseTable,
    SweepMode,
};
use fca::io::{orbit_json, parse_coloring, parse_edge_list, to_json_pretty, write_coloring, write_edge_list};
use fca::orbit::find_orbit;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_MAX_STEPS: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "fca",
    version,
    about = "Simulate and verify the kappa-color firefly automaton on finite graphs"
)]
struct Cli {
    /// Worker threads for sweeps and verification suites (default: all
    /// available cores). Results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one orbit and emit its per-step state trace.
    Run(OrbitArgs),
    /// Detect one orbit and emit its summary (period, transient, blinks).
    Orbit(OrbitArgs),
    /// Decide synchronization across a coloring space of one graph.
    Sweep(SweepArgs),
    /// Build a catalogued instance and print its graph and coloring.
    Construct(ConstructArgs),
    /// Run a verification suite and exit nonzero on violations.
    Verify(VerifyArgs),
    /// Classify the rooted subtrees of a six-color orbit.
    Classify(ClassifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct OrbitArgs {
    /// Number of colors.
    #[arg(long)]
    kappa: u32,
    /// Edge-list file describing the graph (`n m` header, one `u v` pair
    /// per line, `#` comments allowed).
    #[arg(long, conflicts_with = "construct")]
    graph: Option<PathBuf>,
    /// Builder supplying both graph and coloring: odd, even, kappa8,
    /// highdeg, or catalogue.
    #[arg(long)]
    construct: Option<String>,
    /// Comma-separated builder parameters (see `construct --help`).
    #[arg(long, requires = "construct")]
    params: Option<String>,
    /// Initial coloring as comma-separated states.
    #[arg(long, conflicts_with_all = ["coloring_file", "construct"])]
    coloring: Option<String>,
    /// File containing the initial coloring.
    #[arg(long, conflicts_with = "construct")]
    coloring_file: Option<PathBuf>,
    /// Step budget for orbit detection.
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    /// Output format (default: csv for run, json for orbit).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of colors.
    #[arg(long)]
    kappa: u32,
    /// Edge-list file describing the graph to sweep.
    #[arg(long)]
    graph: PathBuf,
    /// Sample this many seeded colorings instead of exhausting all of
    /// them.
    #[arg(long)]
    sample: Option<u64>,
    /// Base seed for sampled colorings.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Builder name: odd (params p,q), even (params p,q,r), kappa8,
    /// highdeg (params leaves[,center-state]), or catalogue.
    name: String,
    /// Number of colors (optional for kappa8, which fixes it at 8).
    #[arg(long)]
    kappa: Option<u32>,
    /// Comma-separated builder parameters; defaults are built in.
    #[arg(long)]
    params: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Synchronization table across tree shapes on both sides of the
    /// max-degree threshold.
    #[value(name = "phase-table")]
    PhaseTable,
    /// Monotone width convergence on low-width colorings.
    #[value(name = "width")]
    Width,
    /// Branch alignment and width control.
    #[value(name = "branch-width")]
    BranchWidth,
    /// Every vertex of degree < kappa blinks in the cycle.
    #[value(name = "degree-blink")]
    DegreeBlink,
    /// Eight-color stars always synchronize.
    #[value(name = "star8")]
    Star8,
    /// All of the above.
    #[value(name = "all")]
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(value_enum)]
    suite: Suite,
    /// Instances per randomized suite (defaults: width 2000,
    /// branch-width 500, degree-blink 2000).
    #[arg(long)]
    trials: Option<u64>,
    /// Sampled colorings per star in the star8 suite (default 10000).
    #[arg(long)]
    sample: Option<u64>,
    /// Largest tree size in the phase-table suite.
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// Comma-separated kappa values for the phase-table suite.
    #[arg(long, default_value = "3,4,5,6,7")]
    kappas: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Number of colors (classification is defined for kappa = 6).
    #[arg(long)]
    kappa: u32,
    /// Edge-list file describing the tree.
    #[arg(long)]
    graph: PathBuf,
    /// Initial coloring as comma-separated states.
    #[arg(long, conflicts_with = "coloring_file")]
    coloring: Option<String>,
    /// File containing the initial coloring.
    #[arg(long)]
    coloring_file: Option<PathBuf>,
    /// Root vertex for the parent/child orientation.
    #[arg(long, default_value_t = 0)]
    root: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// A one-line diagnostic that terminates the process with exit code 2.
struct Usage(String);

fn usage(message: impl Into<String>) -> Usage {
    Usage(message.into())
}

fn fail(e: impl std::fmt::Display) -> Usage {
    Usage(e.to_string())
}

type CmdResult = Result<u8, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = setup_threads(cli.threads).and_then(|()| match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Orbit(args) => cmd_orbit(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Classify(args) => cmd_classify(args),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Usage(message)) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}

fn setup_threads(threads: Option<usize>) -> Result<(), Usage> {
    if let Some(t) = threads {
        if t == 0 {
            return Err(usage("threads must be ≥ 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| usage(format!("cannot configure thread pool: {e}")))?;
    }
    Ok(())
}

fn check_kappa(kappa: u32) -> Result<(), Usage> {
    if kappa < MIN_KAPPA {
        return Err(usage(format!("kappa must be ≥ {MIN_KAPPA}")));
    }
    if kappa > MAX_KAPPA {
        return Err(usage(format!("kappa must be ≤ {MAX_KAPPA}")));
    }
    Ok(())
}

fn read_file(path: &PathBuf) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<(), Usage> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_params(params: Option<&str>) -> Result<Vec<u32>, Usage> {
    match params {
        None => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| usage(format!("invalid builder parameter '{}'", p.trim())))
            })
            .collect(),
    }
}

/// Resolve a builder name plus parameters into a ready instance.
fn resolve_builder(
    name: &str,
    kappa: Option<u32>,
    params: Option<&str>,
) -> Result<ConstructionResult, Usage> {
    let ps = parse_params(params)?;
    let need_kappa = |kappa: Option<u32>| {
        kappa.ok_or_else(|| usage(format!("--kappa is required for builder '{name}'")))
    };
    match name {
        "kappa8" => {
            if let Some(k) = kappa {
                if k != 8 {
                    return Err(usage("builder 'kappa8' requires kappa = 8"));
                }
            }
            if !ps.is_empty() {
                return Err(usage("builder 'kappa8' takes no parameters"));
            }
            Ok(construct_kappa8())
        }
        "odd" => {
            let k = need_kappa(kappa)?;
            check_kappa(k)?;
            let (p, q) = match ps.as_slice() {
                [] => {
                    let m = k.div_ceil(2);
                    (m / 2, m - m / 2)
                }
                [p, q] => (*p, *q),
                _ => return Err(usage("builder 'odd' takes parameters p,q")),
            };
            construct_odd(k, p, q).map_err(fail)
        }
        "even" => {
            let k = need_kappa(kappa)?;
            check_kappa(k)?;
            let (p, q, r) = match ps.as_slice() {
                [] => (2, 2, (k / 2 + 1).saturating_sub(4)),
                [p, q, r] => (*p, *q, *r),
                _ => return Err(usage("builder 'even' takes parameters p,q,r")),
            };
            construct_even(k, p, q, r).map_err(fail)
        }
        "highdeg" => {
            let k = need_kappa(kappa)?;
            check_kappa(k)?;
            let (leaves, center_state) = match ps.as_slice() {
                [] => (k as usize, None),
                [l] => (*l as usize, None),
                [l, c] => (*l as usize, Some(u8::try_from(*c).map_err(fail)?)),
                _ => return Err(usage("builder 'highdeg' takes parameters leaves[,center-state]")),
            };
            let star = make_star(leaves).map_err(fail)?;
            let rooted = root_tree(&star, 0).map_err(fail)?;
            construct_highdeg(&rooted, 0, k, center_state).map_err(fail)
        }
        "catalogue" => {
            let k = need_kappa(kappa)?;
            check_kappa(k)?;
            counterexample_for_kappa(k).map_err(fail)
        }
        other => Err(usage(format!(
            "unknown builder '{other}' (expected odd, even, kappa8, highdeg, or catalogue)"
        ))),
    }
}

/// Resolve the graph and initial coloring for run/orbit.
fn resolve_instance(args: &OrbitArgs) -> Result<(Graph, Configuration), Usage> {
    check_kappa(args.kappa)?;
    match (&args.graph, &args.construct) {
        (Some(path), None) => {
            let g = parse_edge_list(&read_file(path)?).map_err(fail)?;
            let coloring_text = match (&args.coloring, &args.coloring_file) {
                (Some(inline), None) => inline.clone(),
                (None, Some(file)) => read_file(file)?,
                (None, None) => {
                    return Err(usage(
                        "a coloring is required with --graph (use --coloring or --coloring-file)",
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let x0 = parse_coloring(coloring_text.trim(), args.kappa).map_err(fail)?;
            if x0.len() != g.n() {
                return Err(usage(format!(
                    "coloring has {} states but the graph has {} vertices",
                    x0.len(),
                    g.n()
                )));
            }
            Ok((g, x0))
        }
        (None, Some(name)) => {
            let c = resolve_builder(name, Some(args.kappa), args.params.as_deref())?;
            Ok((c.graph, c.coloring))
        }
        (None, None) => Err(usage(
            "one graph source is required: --graph FILE or --construct NAME",
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

#[derive(Serialize)]
struct TraceJson {
    kappa: u32,
    n: usize,
    transient: u64,
    period: u64,
    synchronized: bool,
    columns: Vec<String>,
    /// One row per step: `[t, state of v0, ..., state of v_{n-1}]`.
    rows: Vec<Vec<u64>>,
}

fn cmd_run(args: OrbitArgs) -> CmdResult {
    let (g, x0) = resolve_instance(&args)?;
    let summary = find_orbit(&g, &x0, args.max_steps).map_err(fail)?;
    let content = match args.format.unwrap_or(Format::Csv) {
        Format::Csv | Format::Text => fca::io::trace_csv(&g, &x0, &summary).map_err(fail)?,
        Format::Json => {
            let mut columns = vec!["t".to_string()];
            columns.extend((0..g.n()).map(|v| format!("v{v}")));
            let mut rows = Vec::new();
            let mut x = x0.clone();
            for t in 0..summary.transient + summary.period {
                let mut row = vec![t];
                row.extend(x.states().iter().map(|&s| u64::from(s)));
                rows.push(row);
                x = step(&g, &x).map_err(fail)?;
            }
            let mut json = to_json_pretty(&TraceJson {
                kappa: x0.kappa(),
                n: g.n(),
                transient: summary.transient,
                period: summary.period,
                synchronized: summary.synchronized,
                columns,
                rows,
            });
            json.push('\n');
            json
        }
    };
    emit(&args.output, &content)?;
    Ok(0)
}

fn cmd_orbit(args: OrbitArgs) -> CmdResult {
    let (g, x0) = resolve_instance(&args)?;
    let summary = find_orbit(&g, &x0, args.max_steps).map_err(fail)?;
    let content = match args.format.unwrap_or(Format::Json) {
        Format::Json | Format::Csv => {
            let mut json = orbit_json(&summary);
            json.push('\n');
            json
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "kappa {}", summary.kappa());
            let _ = writeln!(out, "vertices {}", summary.n());
            let _ = writeln!(out, "transient {}", summary.transient);
            let _ = writeln!(out, "period {}", summary.period);
            let _ = writeln!(out, "synchronized {}", summary.synchronized);
            out
        }
    };
    emit(&args.output, &content)?;
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> CmdResult {
    check_kappa(args.kappa)?;
    let g = parse_edge_list(&read_file(&args.graph)?).map_err(fail)?;
    let mode = match args.sample {
        Some(sample) => SweepMode::Random {
            sample,
            seed: args.seed,
        },
        None => SweepMode::Exhaustive,
    };
    let report = sweep_tree(&g, args.kappa, mode).map_err(fail)?;
    let content = match args.format {
        Format::Json => {
            let mut json = to_json_pretty(&report);
            json.push('\n');
            json
        }
        Format::Text | Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "kappa {} tree {}", report.kappa, report.tree);
            let _ = writeln!(out, "colorings tested {}", report.colorings_tested);
            let _ = writeln!(out, "all synchronized {}", report.all_synchronized);
            let _ = writeln!(
                out,
                "counterexamples {} (listing {})",
                report.counterexample_total,
                report.counterexamples.len()
            );
            for c in &report.counterexamples {
                let _ = writeln!(out, "  {c}");
            }
            let _ = writeln!(out, "skipped {}", report.skipped);
            let _ = writeln!(
                out,
                "max transient {} max period {}",
                report.max_transient, report.max_period
            );
            out
        }
    };
    emit(&args.output, &content)?;
    // Finding counterexamples is this command's purpose, not a failure.
    Ok(0)
}

#[derive(Serialize)]
struct ConstructJson {
    kappa: u32,
    n: usize,
    max_degree: usize,
    edges: Vec<(usize, usize)>,
    coloring: Vec<u8>,
    claimed_period_divisor: Option<u64>,
    claimed_nonsync: bool,
}

fn cmd_construct(args: ConstructArgs) -> CmdResult {
    if let Some(k) = args.kappa {
        check_kappa(k)?;
    }
    let c = resolve_builder(&args.name, args.kappa, args.params.as_deref())?;
    let content = match args.format {
        Format::Json => {
            let mut json = to_json_pretty(&ConstructJson {
                kappa: c.kappa,
                n: c.graph.n(),
                max_degree: c.max_degree,
                edges: c.graph.edges(),
                coloring: c.coloring.states().to_vec(),
                claimed_period_divisor: c.claimed_period_divisor,
                claimed_nonsync: c.claimed_nonsync,
            });
            json.push('\n');
            json
        }
        Format::Text | Format::Csv => {
            // Comment header first, then a plain edge list: the whole
            // output is itself a valid graph file.
            let mut out = String::new();
            let _ = writeln!(out, "# builder {} kappa {}", args.name, c.kappa);
            let _ = writeln!(out, "# coloring {}", write_coloring(c.coloring.states()));
            if let Some(d) = c.claimed_period_divisor {
                let _ = writeln!(out, "# claimed-period-divisor {d}");
            }
            let _ = writeln!(out, "# claimed-nonsynchronizing {}", c.claimed_nonsync);
            let _ = writeln!(out, "# max-degree {}", c.max_degree);
            out.push_str(&write_edge_list(&c.graph));
            out
        }
    };
    emit(&args.output, &content)?;
    Ok(0)
}

/// Violations in a phase-table run: a sub-threshold row that failed to
/// synchronize, or a witness row whose catalogued counterexample
/// synchronized after all.
fn phase_table_violations(table: &PhaseTable) -> u64 {
    table
        .rows
        .iter()
        .filter(|r| if r.kappa <= 6 { !r.all_sync } else { r.all_sync })
        .count() as u64
}

fn render_lemma_report(out: &mut String, report: &LemmaCheckReport) {
    let _ = writeln!(out, "suite {}", report.lemma);
    let _ = writeln!(out, "instances {}", report.instances_tested);
    let _ = writeln!(out, "violations {}", report.violation_total);
    for v in &report.violations {
        let _ = writeln!(
            out,
            "  violation kappa={} graph={} coloring={} :: {}",
            v.kappa, v.graph, v.coloring, v.detail
        );
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let seed = args.seed;
    let run_phase_table = |out: &mut String, json: &mut Vec<serde_json::Value>| -> Result<u64, Usage> {
        let kappas = args
            .kappas
            .split(',')
            .map(|k| {
                k.trim()
                    .parse::<u32>()
                    .map_err(|_| usage(format!("invalid kappa '{}'", k.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for &k in &kappas {
            check_kappa(k)?;
        }
        let table = phase_transition_table(args.nmax, &kappas).map_err(fail)?;
        let violations = phase_table_violations(&table);
        out.push_str(&table.to_csv());
        json.push(serde_json::json!({"suite": "phase-table", "violations": violations, "table": table}));
        Ok(violations)
    };
    let mut out = String::new();
    let mut json = Vec::new();
    let mut violations: u64 = 0;
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::PhaseTable,
            Suite::Width,
            Suite::BranchWidth,
            Suite::DegreeBlink,
            Suite::Star8,
        ],
        s => vec![s],
    };
    for (i, suite) in suites.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match suite {
            Suite::PhaseTable => violations += run_phase_table(&mut out, &mut json)?,
            Suite::Width => {
                let r = check_width_convergence(args.trials.unwrap_or(2000), seed).map_err(fail)?;
                violations += r.violation_total;
                render_lemma_report(&mut out, &r);
                json.push(serde_json::json!({"suite": "width", "report": r}));
            }
            Suite::BranchWidth => {
                let r = check_branch_width_lemma(args.trials.unwrap_or(500), seed).map_err(fail)?;
                violations += r.violation_total;
                render_lemma_report(&mut out, &r);
                json.push(serde_json::json!({"suite": "branch-width", "report": r}));
            }
            Suite::DegreeBlink => {
                let r = check_degree_blinking(args.trials.unwrap_or(2000), seed).map_err(fail)?;
                violations += r.violation_total;
                render_lemma_report(&mut out, &r);
                json.push(serde_json::json!({"suite": "degree-blink", "report": r}));
            }
            Suite::Star8 => {
                let r = check_star_sync_kappa8(5, args.sample.unwrap_or(10_000), seed)
                    .map_err(fail)?;
                violations += r.violation_total;
                render_lemma_report(&mut out, &r);
                json.push(serde_json::json!({"suite": "star8", "report": r}));
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    let _ = writeln!(
        out,
        "\nresult: {}",
        if violations == 0 {
            "all checks passed".to_string()
        } else {
            format!("{violations} violations")
        }
    );
    let content = match args.format {
        Format::Json => {
            let mut s = to_json_pretty(&json);
            s.push('\n');
            s
        }
        Format::Text | Format::Csv => out,
    };
    emit(&args.output, &content)?;
    Ok(u8::from(violations > 0))
}

fn cmd_classify(args: ClassifyArgs) -> CmdResult {
    check_kappa(args.kappa)?;
    if args.kappa != 6 {
        return Err(usage("subtree classification requires kappa = 6"));
    }
    let g = parse_edge_list(&read_file(&args.graph)?).map_err(fail)?;
    let coloring_text = match (&args.coloring, &args.coloring_file) {
        (Some(inline), None) => inline.clone(),
        (None, Some(file)) => read_file(file)?,
        (None, None) => {
            return Err(usage(
                "a coloring is required (use --coloring or --coloring-file)",
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let x0 = parse_coloring(coloring_text.trim(), args.kappa).map_err(fail)?;
    if x0.len() != g.n() {
        return Err(usage(format!(
            "coloring has {} states but the graph has {} vertices",
            x0.len(),
            g.n()
        )));
    }
    let rooted = root_tree(&g, args.root).map_err(fail)?;
    let summary = find_orbit(&g, &x0, args.max_steps).map_err(fail)?;
    let mut verdicts = Vec::new();
    for v in 0..g.n() {
        if v == args.root {
            continue;
        }
        verdicts.push(fca::classify::classify_subtree(&rooted, &summary, v).map_err(fail)?);
    }
    let content = match args.format {
        Format::Json => {
            let mut s = to_json_pretty(&verdicts);
            s.push('\n');
            s
        }
        Format::Text | Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "kappa 6 root {} period {} synchronized {}",
                args.root, summary.period, summary.synchronized
            );
            for v in &verdicts {
                let _ = writeln!(
                    out,
                    "v{}: {} ({} blinks checked)",
                    v.vertex,
                    v.verdict,
                    v.evidence.len()
                );
            }
            out
        }
    };
    emit(&args.output, &content)?;
    Ok(0)
}
