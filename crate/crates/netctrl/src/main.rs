use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use netctrl::corpus;
use netctrl::netspec::{parse_spec, ParsedSpec};
use netctrl::numalg::NumericTolerance;
use netctrl::report::{analyze, human_report, json_report, render_assembly, AnalysisOptions};
use netctrl::structural::{classify, structurally_controllable};
use netctrl::theorems::certify;

/// Exact controllability analysis for networks of identical linear systems.
#[derive(Parser)]
#[command(name = "netctrl", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide controllability of the network in a spec file.
    ///
    /// Exit code 0 means controllable, 1 uncontrollable, 2 error.
    Check {
        /// Network spec (JSON).
        file: PathBuf,
        /// Emit the machine-readable report instead of text.
        #[arg(long)]
        json: bool,
        /// Rank and residual tolerance for numeric fallbacks.
        #[arg(long)]
        tol: Option<f64>,
        /// Skip the condition battery; run only the direct rank test.
        #[arg(long)]
        no_certify: bool,
    },
    /// Print the assembled network matrices with their block structure.
    Assemble {
        /// Network spec (JSON).
        file: PathBuf,
    },
    /// Weight-independent controllability analysis of the topology.
    Structural {
        /// Network spec (JSON).
        file: PathBuf,
    },
    /// Run the condition battery and print one line per condition.
    Certify {
        /// Network spec (JSON).
        file: PathBuf,
        /// Only show the condition with this id (e.g. T2, T8.iii).
        #[arg(long)]
        theorem: Option<String>,
        /// Rank and residual tolerance for numeric fallbacks.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Built-in example networks with pinned expected results.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the fixture ids and titles.
    List,
    /// Run all fixtures, or a single one, and compare against pinned values.
    Run {
        /// Fixture id (e.g. ex7); all fixtures when omitted.
        id: Option<String>,
    },
}

fn tolerance(tol: Option<f64>) -> NumericTolerance {
    match tol {
        Some(t) => NumericTolerance::uniform(t),
        None => NumericTolerance::default(),
    }
}

fn load(file: &Path) -> Result<ParsedSpec, ExitCode> {
    parse_spec(file).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_check(file: &Path, json: bool, tol: Option<f64>, no_certify: bool) -> ExitCode {
    let spec = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let opts = AnalysisOptions {
        tol: tolerance(tol),
        certify: !no_certify,
    };
    let started = Instant::now();
    let analysis = analyze(&spec.name, &spec.node, &spec.topo, &opts);
    let elapsed = started.elapsed().as_millis();
    if json {
        print!("{}", json_report(&analysis));
    } else {
        print!("{}", human_report(&analysis, Some(elapsed)));
    }
    if analysis.verdict.controllable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_assemble(file: &Path) -> ExitCode {
    let spec = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let sys = netctrl::model::assemble(&spec.node, &spec.topo);
    print!("{}", render_assembly(&spec.name, &sys));
    ExitCode::SUCCESS
}

fn run_structural(file: &Path) -> ExitCode {
    let spec = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let shape = classify(&spec.topo);
    let report = structurally_controllable(&spec.topo);
    println!("network: {}", spec.name);
    println!("topology class: {}", shape.name());
    let pairs: Vec<String> = report
        .matching
        .pairs
        .iter()
        .map(|&(tail, head)| format!("{} -> {}", tail + 1, head + 1))
        .collect();
    println!(
        "matching: size {}{}; pairs: {}",
        report.matching.size,
        if report.matching.perfect {
            " (perfect)"
        } else {
            ""
        },
        if pairs.is_empty() {
            "none".to_string()
        } else {
            pairs.join(", ")
        }
    );
    let ones = |v: &[usize]| -> String {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        }
    };
    println!("unsaturated undriven nodes: {}", ones(&report.unsaturated));
    println!("nodes unreachable from the driven set: {}", ones(&report.unreachable));
    println!(
        "structurally controllable: {}",
        yes_no(report.controllable)
    );
    ExitCode::SUCCESS
}

fn run_certify(file: &Path, theorem: Option<String>, tol: Option<f64>) -> ExitCode {
    let spec = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let sys = netctrl::model::assemble(&spec.node, &spec.topo);
    let report = certify(&sys, &tolerance(tol));
    let mut shown = 0usize;
    for r in &report.conditions {
        if let Some(want) = &theorem {
            if !r.id.eq_ignore_ascii_case(want) {
                continue;
            }
        }
        shown += 1;
        println!(
            "{:<10} {:<15} [{}] {}",
            r.id,
            r.status.as_str(),
            r.confidence,
            r.label
        );
        if let Some(note) = &r.note {
            println!("           note: {note}");
        }
    }
    if shown == 0 {
        if let Some(want) = &theorem {
            eprintln!("error: no condition with id '{want}'");
            return ExitCode::from(2);
        }
    }
    if theorem.is_none() {
        println!(
            "direct test: {} (rank {} of {})",
            if report.verdict.controllable {
                "controllable"
            } else {
                "uncontrollable"
            },
            report.verdict.achieved_rank,
            report.verdict.required_rank
        );
        if report.contradiction {
            println!("cross-check: CONTRADICTION");
            for n in &report.contradiction_notes {
                println!("  {n}");
            }
            return ExitCode::from(1);
        }
        println!("cross-check: consistent");
    }
    ExitCode::SUCCESS
}

fn run_corpus(action: CorpusAction) -> ExitCode {
    match action {
        CorpusAction::List => {
            for f in corpus::fixtures() {
                println!("{:<6} {}", f.id, f.title);
            }
            ExitCode::SUCCESS
        }
        CorpusAction::Run { id } => {
            let fixtures = match &id {
                Some(id) => match corpus::fixture(id) {
                    Some(f) => vec![f],
                    None => {
                        eprintln!("error: no fixture with id '{id}'");
                        return ExitCode::from(2);
                    }
                },
                None => corpus::fixtures(),
            };
            let tol = NumericTolerance::default();
            let mut checks = 0usize;
            let mut failures = 0usize;
            for f in &fixtures {
                println!("{}  {}", f.id, f.title);
                for outcome in corpus::run_fixture(f, &tol) {
                    checks += 1;
                    if !outcome.pass {
                        failures += 1;
                    }
                    println!(
                        "  [{}] {}: expected {}, got {}",
                        if outcome.pass { "pass" } else { "FAIL" },
                        outcome.description,
                        outcome.expected,
                        outcome.computed
                    );
                }
            }
            println!(
                "summary: {} fixture(s), {} check(s), {} failure(s)",
                fixtures.len(),
                checks,
                failures
            );
            if failures > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Command::Check {
            file,
            json,
            tol,
            no_certify,
        } => run_check(&file, json, tol, no_certify),
        Command::Assemble { file } => run_assemble(&file),
        Command::Structural { file } => run_structural(&file),
        Command::Certify { file, theorem, tol } => run_certify(&file, theorem, tol),
        Command::Corpus { action } => run_corpus(action),
    }
}
