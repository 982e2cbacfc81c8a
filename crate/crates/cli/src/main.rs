//! `hrcolor` command-line tool.
//!
//! Exit codes: 0 pass / sat, 1 fail / unsat, 2 usage or input error,
//! 3 unknown (search budget exhausted).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use hrcolor::codec::{decode_coloring, decode_edge_list, decode_instance, encode_instance, render_json};
use hrcolor::constructions::by_name;
use hrcolor::lemmas::{scope, verify_lemma, LEMMA_CHUNK};
use hrcolor::search::{k_table, MinColorsOutcome, NonexistenceOutcome};
use hrcolor::{
    check_highly_with_threads, decide, exhaustive_nonexistence, min_colors, resolve_threads,
    sample_check_with_threads, CheckReport, ColoredInstance, Decision, Graph, Outcome,
    SampleReport,
};
use serde_json::{json, Value};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "hrcolor", version, about = "Check, build and search highly a-resistant vertex multicolorings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Worker threads for checks and lemma runs (0 = all cores). Results do
    /// not depend on this value.
    #[arg(long, env = "HRCOLOR_THREADS", default_value_t = 0, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a colored graph is highly a-resistant.
    #[command(group(ArgGroup::new("input").required(true).args(["instance", "graph"])))]
    Check {
        /// Instance document.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Edge list (or instance document) for the graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Coloring document; required unless --graph holds an instance.
        #[arg(long, requires = "graph")]
        coloring: Option<PathBuf>,
        /// Number of attackers; defaults to the instance's `attackers`.
        #[arg(short = 'a', long = "attackers")]
        a: Option<usize>,
        /// Sample this many random attack sets instead of checking all.
        #[arg(long)]
        sample: Option<u64>,
        /// Seed for --sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a named construction as an instance document.
    Construct {
        /// clique-partition:<a>, paper-14 or paper-21.
        #[arg(long)]
        family: String,
    },
    /// Search for a highly a-resistant k-multicoloring.
    Search {
        /// Edge list (or instance document) for the graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(short = 'a', long = "attackers")]
        a: usize,
        /// Palette size for a single decision.
        #[arg(short = 'k')]
        k: Option<usize>,
        /// Node budget per decision.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Find the smallest k in a+1..=kmax.
        #[arg(long)]
        min_colors: bool,
        /// Search every labeled graph on -n vertices.
        #[arg(long)]
        nonexistence: bool,
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Sample instances in a lemma's scope and test its disjunction.
    VerifyLemma {
        #[arg(long)]
        lemma: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the known values of K(a, n) with their provenance.
    Table {
        #[arg(long, default_value_t = 4)]
        max_a: usize,
    },
}

/// Usage or input error; always exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<u8, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let threads = resolve_threads(cli.threads);
    let out = Output { format: cli.format };
    match &cli.command {
        Command::Check {
            instance,
            graph,
            coloring,
            a,
            sample,
            seed,
        } => {
            let inst = load_check_input(instance.as_deref(), graph.as_deref(), coloring.as_deref())?;
            let a = a
                .or(inst.attackers)
                .ok_or_else(|| UsageError("no attacker count: pass -a or set \"attackers\" in the instance".into()))?;
            if a == 0 {
                return Err(UsageError("-a must be at least 1".into()));
            }
            match sample {
                None => {
                    let report = check_highly_with_threads(&inst.graph, &inst.coloring, a, threads)?;
                    out.check(&inst, &report, threads);
                    Ok(if report.highly_resistant { PASS } else { FAIL })
                }
                Some(trials) => {
                    let report =
                        sample_check_with_threads(&inst.graph, &inst.coloring, a, *trials, *seed, threads)?;
                    out.sample(&inst, &report, threads);
                    let failed = report.hr_failures + report.resistance_failures > 0;
                    Ok(if failed { FAIL } else { PASS })
                }
            }
        }
        Command::Construct { family } => {
            let inst = by_name(family)?;
            print!("{}", encode_instance(&inst));
            Ok(PASS)
        }
        Command::Search {
            graph,
            a,
            k,
            budget,
            min_colors: min,
            nonexistence,
            n,
            kmax,
        } => {
            if *nonexistence {
                if graph.is_some() || k.is_some() || *min {
                    return Err(UsageError("--nonexistence takes -n, -a and --kmax only".into()));
                }
                let n = n.ok_or_else(|| UsageError("--nonexistence needs -n".into()))?;
                let kmax = kmax.ok_or_else(|| UsageError("--nonexistence needs --kmax".into()))?;
                let summary = exhaustive_nonexistence(n, *a, kmax, *budget)?;
                return Ok(out.nonexistence(&summary, *budget));
            }
            let path = graph
                .as_deref()
                .ok_or_else(|| UsageError("search needs --graph (or --nonexistence)".into()))?;
            if n.is_some() {
                return Err(UsageError("-n is only used with --nonexistence".into()));
            }
            let g = load_graph(path)?.0;
            if *min {
                if k.is_some() {
                    return Err(UsageError("--min-colors takes --kmax, not -k".into()));
                }
                let kmax = kmax.ok_or_else(|| UsageError("--min-colors needs --kmax".into()))?;
                let result = min_colors(&g, *a, kmax, *budget)?;
                return Ok(out.min_colors(&g, &result.outcome, &result.trail));
            }
            let k = k.ok_or_else(|| UsageError("search needs -k, --min-colors or --nonexistence".into()))?;
            if kmax.is_some() {
                return Err(UsageError("--kmax is only used with --min-colors or --nonexistence".into()));
            }
            let d = decide(&g, *a, k, *budget)?;
            Ok(out.decision(&g, &d))
        }
        Command::VerifyLemma { lemma, trials, seed } => {
            let s = scope(*lemma)?;
            if *trials == 0 {
                return Err(UsageError("--trials must be at least 1".into()));
            }
            let report = verify_lemma(*lemma, *trials, *seed, threads)?;
            let counterexample = report.first_violation.as_ref().map(encode_instance);
            let verdict = if report.passed() { "pass" } else { "violation" };
            match out.format {
                Format::Json => {
                    let mut doc = serde_json::to_value(&report)?;
                    doc["command"] = json!("verify-lemma");
                    doc["scope"] = json!(s.to_string());
                    doc["threads"] = json!(threads);
                    doc["chunk"] = json!(LEMMA_CHUNK);
                    doc["verdict"] = json!(verdict);
                    doc["counterexample"] = json!(counterexample);
                    print!("{}", render_json(&doc));
                }
                Format::Human => {
                    let lines = vec![
                        s.to_string(),
                        format!(
                            "trials={} seed={} threads={threads} (chunks of {LEMMA_CHUNK}; counts do not depend on threads)",
                            report.trials, report.seed
                        ),
                        format!(
                            "hr failures: {}, resistance failures: {}, violations: {}",
                            report.hr_failures, report.resistance_failures, report.violations
                        ),
                        match report.first_violation_trial {
                            None => format!("verdict: {verdict}"),
                            Some(t) => format!(
                                "verdict: {verdict} (first at trial {t}; replay with `hrcolor check --instance FILE -a {}`)",
                                s.a_hr
                            ),
                        },
                    ];
                    emit(&lines, counterexample.as_deref());
                }
            }
            Ok(if report.passed() { PASS } else { FAIL })
        }
        Command::Table { max_a } => {
            let table = k_table(*max_a)?;
            match out.format {
                Format::Json => {
                    let rows = table
                        .iter()
                        .map(|e| {
                            let mut v = serde_json::to_value(e)?;
                            v["text"] = json!(e.to_string());
                            Ok(v)
                        })
                        .collect::<Result<Vec<Value>, serde_json::Error>>()?;
                    print!("{}", render_json(&json!({ "command": "table", "rows": rows })));
                }
                Format::Human => {
                    for e in &table {
                        println!("{e}");
                    }
                }
            }
            Ok(PASS)
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn looks_like_instance(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with('{') || t.starts_with("//")
}

/// Reads a graph from an edge list or an instance document.
fn load_graph(path: &Path) -> Result<(Graph, Option<ColoredInstance>), UsageError> {
    let text = read(path)?;
    let at = |e: hrcolor::codec::DecodeError| UsageError(format!("{}: [{}] {e}", path.display(), e.code()));
    if looks_like_instance(&text) {
        let inst = decode_instance(&text).map_err(at)?;
        Ok((inst.graph.clone(), Some(inst)))
    } else {
        Ok((decode_edge_list(&text).map_err(at)?, None))
    }
}

fn load_check_input(
    instance: Option<&Path>,
    graph: Option<&Path>,
    coloring: Option<&Path>,
) -> Result<ColoredInstance, UsageError> {
    if let Some(path) = instance {
        let text = read(path)?;
        return decode_instance(&text)
            .map_err(|e| UsageError(format!("{}: [{}] {e}", path.display(), e.code())));
    }
    let gpath = graph.expect("clap requires --instance or --graph");
    let (g, inst) = load_graph(gpath)?;
    match (coloring, inst) {
        (Some(cpath), inst) => {
            let text = read(cpath)?;
            let kappa = decode_coloring(&text)
                .map_err(|e| UsageError(format!("{}: [{}] {e}", cpath.display(), e.code())))?;
            let name = inst.as_ref().and_then(|i| i.name.clone());
            let attackers = inst.and_then(|i| i.attackers);
            Ok(ColoredInstance::new(name, g, kappa, attackers)?)
        }
        (None, Some(inst)) => Ok(inst),
        (None, None) => Err(UsageError("--graph holds an edge list; pass --coloring too".into())),
    }
}

/// Prints summary lines; when a document follows they become `//` comments
/// so the whole output still decodes as an instance.
fn emit(lines: &[String], document: Option<&str>) {
    match document {
        None => lines.iter().for_each(|l| println!("{l}")),
        Some(doc) => {
            lines.iter().for_each(|l| println!("// {l}"));
            print!("{doc}");
        }
    }
}

fn instance_value(inst: &ColoredInstance) -> Value {
    let text = encode_instance(inst);
    let body = text.split_once('\n').map_or(text.as_str(), |(_, rest)| rest);
    serde_json::from_str(body).expect("encoded instances are valid JSON")
}

fn witness_text(w: &Option<hrcolor::VertexSet>) -> String {
    w.as_ref().map_or_else(|| "none".into(), ToString::to_string)
}

struct Output {
    format: Format,
}

impl Output {
    fn check(&self, inst: &ColoredInstance, r: &CheckReport, threads: usize) {
        match self.format {
            Format::Json => {
                let doc = json!({
                    "command": "check",
                    "mode": "exhaustive",
                    "name": inst.name,
                    "n": inst.num_vertices(),
                    "k": inst.palette_size(),
                    "threads": threads,
                    "verdict": if r.highly_resistant { "pass" } else { "fail" },
                    "report": r,
                });
                print!("{}", render_json(&doc));
            }
            Format::Human => {
                let holds = |ok: bool, w: &Option<hrcolor::VertexSet>| {
                    if ok {
                        "holds".to_string()
                    } else {
                        format!("fails, witness {}", witness_text(w))
                    }
                };
                let name = inst.name.as_deref().unwrap_or("instance");
                println!(
                    "{name}: n={} k={} a={} threads={threads}",
                    inst.num_vertices(),
                    inst.palette_size(),
                    r.attackers
                );
                println!("{}-HR condition: {}", r.attackers, holds(r.hr_holds, &r.hr_witness));
                println!("{}-resistance: {}", r.attackers, holds(r.resistant, &r.resistance_witness));
                println!("attack sets examined: {}", r.attack_sets_examined);
                let verdict = if r.highly_resistant { "pass" } else { "fail" };
                println!("verdict: {verdict} (highly {}-resistant: {})", r.attackers, r.highly_resistant);
            }
        }
    }

    fn sample(&self, inst: &ColoredInstance, r: &SampleReport, threads: usize) {
        let failed = r.hr_failures + r.resistance_failures > 0;
        let verdict = if failed { "fail" } else { "no failure sampled" };
        match self.format {
            Format::Json => {
                let doc = json!({
                    "command": "check",
                    "mode": "sample",
                    "name": inst.name,
                    "n": inst.num_vertices(),
                    "k": inst.palette_size(),
                    "threads": threads,
                    "verdict": if failed { "fail" } else { "pass" },
                    "report": r,
                });
                print!("{}", render_json(&doc));
            }
            Format::Human => {
                let name = inst.name.as_deref().unwrap_or("instance");
                println!(
                    "{name}: n={} k={} a={} sampled trials={} seed={} threads={threads}",
                    inst.num_vertices(),
                    inst.palette_size(),
                    r.attackers,
                    r.trials,
                    r.seed
                );
                println!(
                    "HR failures: {} (first {})",
                    r.hr_failures,
                    witness_text(&r.first_hr_failure)
                );
                println!(
                    "resistance failures: {} (first {})",
                    r.resistance_failures,
                    witness_text(&r.first_resistance_failure)
                );
                println!("verdict: {verdict} (sampling cannot prove the property)");
            }
        }
    }

    fn decision(&self, g: &Graph, d: &Decision) -> u8 {
        let code = outcome_code(&d.outcome);
        let inst = d.witness().map(|w| witness_instance(g, w.clone(), d.attackers, d.palette_size));
        match self.format {
            Format::Json => {
                let mut doc = serde_json::to_value(d).expect("decisions serialize");
                doc["command"] = json!("search");
                doc["mode"] = json!("decide");
                doc["instance"] = inst.as_ref().map_or(Value::Null, instance_value);
                print!("{}", render_json(&doc));
            }
            Format::Human => {
                let lines = vec![
                    format!(
                        "search: n={} a={} k={} budget={} policy={}",
                        g.num_vertices(),
                        d.attackers,
                        d.palette_size,
                        d.budget,
                        d.policy
                    ),
                    format!("verdict: {} after {} nodes", d.outcome.label(), d.nodes_expanded),
                ];
                emit(&lines, inst.as_ref().map(encode_instance).as_deref());
            }
        }
        code
    }

    fn min_colors(&self, g: &Graph, outcome: &MinColorsOutcome, trail: &[Decision]) -> u8 {
        let (label, code) = match outcome {
            MinColorsOutcome::Found(k) => (format!("minimum k = {k}"), PASS),
            MinColorsOutcome::NoneUpTo(k) => (format!("none for k <= {k}"), FAIL),
            MinColorsOutcome::Unknown => ("unknown (budget exhausted)".to_string(), UNKNOWN),
        };
        let inst = trail
            .last()
            .and_then(|d| d.witness().map(|w| witness_instance(g, w.clone(), d.attackers, d.palette_size)));
        match self.format {
            Format::Json => {
                let found = match outcome {
                    MinColorsOutcome::Found(k) => json!({ "verdict": "found", "k": k }),
                    MinColorsOutcome::NoneUpTo(k) => json!({ "verdict": "none", "k_max": k }),
                    MinColorsOutcome::Unknown => json!({ "verdict": "unknown" }),
                };
                let doc = json!({
                    "command": "search",
                    "mode": "min-colors",
                    "outcome": found,
                    "trail": trail,
                    "instance": inst.as_ref().map_or(Value::Null, instance_value),
                });
                print!("{}", render_json(&doc));
            }
            Format::Human => {
                let mut lines: Vec<String> = trail
                    .iter()
                    .map(|d| {
                        format!(
                            "k={}: {} after {} nodes (budget {})",
                            d.palette_size,
                            d.outcome.label(),
                            d.nodes_expanded,
                            d.budget
                        )
                    })
                    .collect();
                lines.push(format!("verdict: {label}"));
                emit(&lines, inst.as_ref().map(encode_instance).as_deref());
            }
        }
        code
    }

    fn nonexistence(&self, s: &hrcolor::search::NonexistenceSummary, budget: u64) -> u8 {
        let (verdict, code, inst) = match &s.outcome {
            NonexistenceOutcome::AllUnsat => ("all-unsat".to_string(), FAIL, None),
            NonexistenceOutcome::FoundSat(inst) => ("sat".to_string(), PASS, Some(inst)),
            NonexistenceOutcome::Unknown { graph, k } => {
                (format!("unknown at k={k} on edges {:?}", graph.edges()), UNKNOWN, None)
            }
        };
        match self.format {
            Format::Json => {
                let doc = json!({
                    "command": "search",
                    "mode": "nonexistence",
                    "n": s.n,
                    "attackers": s.attackers,
                    "k_max": s.k_max,
                    "budget": budget,
                    "graphs_examined": s.graphs_examined,
                    "decisions": s.decisions,
                    "nodes_expanded": s.nodes_expanded,
                    "verdict": verdict,
                    "instance": inst.map_or(Value::Null, instance_value),
                });
                print!("{}", render_json(&doc));
            }
            Format::Human => {
                let lines = vec![
                    format!(
                        "nonexistence: n={} a={} k={}..={} budget={} policy=sequential",
                        s.n,
                        s.attackers,
                        s.attackers + 1,
                        s.k_max,
                        budget
                    ),
                    format!(
                        "graphs examined: {}, decisions: {}, nodes: {}",
                        s.graphs_examined, s.decisions, s.nodes_expanded
                    ),
                    format!("verdict: {verdict} (covers k <= {} only)", s.k_max),
                ];
                emit(&lines, inst.map(encode_instance).as_deref());
            }
        }
        code
    }
}

fn outcome_code(outcome: &Outcome) -> u8 {
    match outcome {
        Outcome::Sat(_) => PASS,
        Outcome::Unsat => FAIL,
        Outcome::Unknown => UNKNOWN,
    }
}

fn witness_instance(g: &Graph, w: hrcolor::Multicoloring, a: usize, k: usize) -> ColoredInstance {
    ColoredInstance::new(Some(format!("search-a{a}-k{k}")), g.clone(), w, Some(a))
        .expect("witness matches the graph")
}
