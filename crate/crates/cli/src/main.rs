mod report;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use toughham::constructor::{
    replay_trace, theorem1_driver_with, ConstructionOutcome, ConstructionTrace, DriverOptions,
    ReplayVerdict,
};
use toughham::generators::{enumerate_small, generate, EnumFilter, FamilySpec, MAX_ENUM_N};
use toughham::graph::{encode_graph6, parse_graphs};
use toughham::hamiltonicity::{hamiltonian_cycle_with, HamiltonOptions, HamiltonResult};
use toughham::pattern::find_p2p3;
use toughham::structure::{sweep_lemmas, LemmaTally};
use toughham::toughness::{toughness_with, ExactOptions, DEFAULT_EXACT_LIMIT};
use toughham::{Graph, Rational};

use report::{Report, Row};

#[derive(Parser)]
#[command(name = "toughham", version, about = "Toughness, (P2 ∪ P3)-freeness and Hamiltonian cycles")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report whether each graph contains an induced P2 ∪ P3.
    CheckFree(Inputs),
    /// Exact toughness with a minimizing cutset.
    Toughness {
        #[command(flatten)]
        inputs: Inputs,
        /// Run the exact search above the vertex limit.
        #[arg(long)]
        force: bool,
        /// Vertex limit for the exact search.
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        max_n: usize,
    },
    /// Find a Hamiltonian cycle, or report none / timeout.
    Hamilton {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
    },
    /// Build a Hamiltonian cycle step by step, recording a trace.
    Construct {
        #[command(flatten)]
        inputs: Inputs,
        /// Write the trace here (suffixed `.1`, `.2`, ... for several inputs).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
        /// Seed for the randomized cutset search on large subgraphs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hand graphs below the degree thresholds to the oracle.
        #[arg(long)]
        literal_degree_branch: bool,
    },
    /// Re-check a trace against its graph.
    Replay {
        graph: PathBuf,
        trace: PathBuf,
    },
    /// Run the clique-component checkers over every cutset of every
    /// connected (P2 ∪ P3)-free graph up to `--max-n` vertices.
    VerifyLemmas {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Report connected (P2 ∪ P3)-free graphs up to `--max-n` vertices with
    /// toughness at least `--tau` and no Hamiltonian cycle.
    SweepThreshold {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        tau: Rational,
    },
    /// Emit graphs of a family as graph6 lines.
    Gen {
        /// complete, cycle, complete-split, split, two-cliques-join or random-free
        family: String,
        /// complete N | cycle N | complete-split M S | split CLIQUE INDEPENDENT DENSITY |
        /// two-cliques-join A B K | random-free N P
        params: Vec<String>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Required for randomized families; graph i uses seed + i.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit all connected graphs on `--n` vertices up to isomorphism.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "none")]
        filter: EnumFilter,
    },
}

#[derive(clap::Args)]
struct Inputs {
    /// graph6 or edge-list files; standard input when none are given.
    files: Vec<PathBuf>,
}

/// One parsed input graph, or the reason it could not be parsed.
struct Item {
    id: String,
    graph: Result<Graph, String>,
}

impl Inputs {
    fn load(&self) -> anyhow::Result<Vec<Item>> {
        let mut sources = Vec::new();
        if self.files.is_empty() {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading standard input")?;
            sources.push(("stdin".to_string(), text));
        }
        for f in &self.files {
            let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
            sources.push((f.display().to_string(), text));
        }
        Ok(sources
            .iter()
            .flat_map(|(name, text)| {
                parse_graphs(text).into_iter().map(move |(line, g)| Item {
                    id: format!("{name}:{line}"),
                    graph: g.map_err(|e| e.to_string()),
                })
            })
            .collect())
    }
}

/// Runs `f` on every item in parallel and collects the rows in input order.
fn per_graph(
    items: &[Item],
    columns: &[&'static str],
    f: impl Fn(usize, &str, &Graph) -> Row + Sync,
) -> Report {
    let rows: Vec<Row> = items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let started = Instant::now();
            match &item.graph {
                Ok(g) => f(i, &item.id, g),
                Err(e) => Row::error(item.id.clone(), columns.len() - 1, e, started),
            }
        })
        .collect();
    let mut report = Report::new(columns);
    for r in rows {
        report.push(r);
    }
    report
}

fn check_free(items: &[Item]) -> Report {
    per_graph(items, &["id", "n", "verdict", "witness", "time_ms"], |_, id, g| {
        let started = Instant::now();
        let (verdict, witness) = match find_p2p3(g) {
            Some(w) => ("contains", w.to_string()),
            None => ("free", "-".into()),
        };
        Row::new(vec![id.into(), g.n().to_string(), verdict.into(), witness], started)
    })
}

fn toughness_report(items: &[Item], opts: &ExactOptions) -> Report {
    let columns = ["id", "n", "tau", "witness", "time_ms"];
    per_graph(items, &columns, |_, id, g| {
        let started = Instant::now();
        match toughness_with(g, opts) {
            Ok(cert) => {
                let witness = cert.witness.map_or("-".to_string(), |w| w.to_string());
                Row::new(
                    vec![
                        id.into(),
                        g.n().to_string(),
                        format!("tau={}", cert.tau),
                        format!("witness={witness}"),
                    ],
                    started,
                )
            }
            Err(e) => Row::error(id.into(), columns.len() - 1, &e.to_string(), started),
        }
    })
}

fn hamilton_report(items: &[Item], opts: &HamiltonOptions) -> Report {
    per_graph(items, &["id", "n", "cycle", "time_ms"], |_, id, g| {
        let started = Instant::now();
        let cycle = match hamiltonian_cycle_with(g, opts) {
            HamiltonResult::Found(c) => c.to_string(),
            HamiltonResult::NoCycle => "none".into(),
            HamiltonResult::Timeout => "timeout".into(),
        };
        Row::new(vec![id.into(), g.n().to_string(), cycle], started)
    })
}

fn trace_path(base: &Path, index: usize, total: usize) -> PathBuf {
    if total == 1 {
        base.to_path_buf()
    } else {
        let mut s = base.as_os_str().to_owned();
        s.push(format!(".{}", index + 1));
        PathBuf::from(s)
    }
}

fn construct_report(items: &[Item], opts: &DriverOptions, trace: Option<&Path>) -> Report {
    let columns = ["id", "n", "verdict", "cycle", "detail", "trace", "time_ms"];
    let total = items.len();
    per_graph(items, &columns, |i, id, g| {
        let started = Instant::now();
        let out = match theorem1_driver_with(g, opts) {
            Ok(out) => out,
            Err(e) => return Row::error(id.into(), columns.len() - 1, &e.to_string(), started),
        };
        let path = match trace {
            Some(base) => {
                let p = trace_path(base, i, total);
                if let Err(e) = fs::write(&p, out.trace().to_text()) {
                    let msg = format!("writing {}: {e}", p.display());
                    return Row::error(id.into(), columns.len() - 1, &msg, started);
                }
                p.display().to_string()
            }
            None => "-".into(),
        };
        let cycle = out.cycle().map_or("-".into(), |c| c.to_string());
        let detail = match &out {
            ConstructionOutcome::Failed { failure, .. } => failure.to_string(),
            _ => format!("{} steps", out.trace().steps.len()),
        };
        let failed = matches!(out, ConstructionOutcome::Failed { .. });
        Row::new(
            vec![id.into(), g.n().to_string(), out.verdict().into(), cycle, detail, path],
            started,
        )
        .flag(failed)
    })
}

fn replay_report(graph: &Path, trace: &Path) -> anyhow::Result<Report> {
    let started = Instant::now();
    let text = fs::read_to_string(graph).with_context(|| format!("reading {}", graph.display()))?;
    let g = match parse_graphs(&text).into_iter().next() {
        Some((_, Ok(g))) => g,
        Some((_, Err(e))) => bail!("{}: {e}", graph.display()),
        None => bail!("{}: no graph", graph.display()),
    };
    let trace_text =
        fs::read_to_string(trace).with_context(|| format!("reading {}", trace.display()))?;
    let mut report = Report::new(&["trace", "verdict", "step", "reason", "time_ms"]);
    let id = trace.display().to_string();
    let verdict = ConstructionTrace::parse(&trace_text).map(|t| replay_trace(&g, &t));
    let row = match verdict {
        Ok(ReplayVerdict::Valid) => {
            Row::new(vec![id, "valid".into(), "-".into(), "-".into()], started)
        }
        Ok(ReplayVerdict::Invalid { step, reason }) => {
            let step = step.map_or("-".into(), |s| s.to_string());
            Row::new(vec![id, "invalid".into(), step, reason], started).flag(true)
        }
        Err(e) => Row::new(vec![id, "invalid".into(), "-".into(), e.to_string()], started).flag(true),
    };
    report.push(row);
    Ok(report)
}

fn check_sweep_bound(max_n: usize) -> anyhow::Result<()> {
    if max_n == 0 || max_n > MAX_ENUM_N {
        bail!("--max-n must be in 1..={MAX_ENUM_N}");
    }
    Ok(())
}

fn verify_lemmas(max_n: usize) -> anyhow::Result<Report> {
    check_sweep_bound(max_n)?;
    let mut report = Report::new(&[
        "n",
        "graphs",
        "cutsets",
        "lemma3_checked",
        "lemma3_violations",
        "lemma4_checked",
        "lemma4_violations",
        "lemma5_checked",
        "lemma5_violations",
        "time_ms",
    ]);
    for n in 1..=max_n {
        let started = Instant::now();
        let graphs = enumerate_small(n, EnumFilter::P2p3Free)?;
        let tally = graphs
            .par_iter()
            .map(|g| sweep_lemmas(g).expect("enumerated graphs are small and free"))
            .reduce(LemmaTally::default, |mut a, b| {
                a.add(&b);
                a
            });
        let fields = [
            n,
            graphs.len(),
            tally.cutsets,
            tally.lemma3.0,
            tally.lemma3.1,
            tally.lemma4.0,
            tally.lemma4.1,
            tally.lemma5.0,
            tally.lemma5.1,
        ];
        let row = Row::new(fields.iter().map(|v| v.to_string()).collect(), started);
        report.push(row.flag(tally.violations() > 0));
    }
    Ok(report)
}

fn sweep_threshold(max_n: usize, tau: Rational) -> anyhow::Result<Report> {
    check_sweep_bound(max_n)?;
    let mut report = Report::new(&[
        "n",
        "graphs",
        "tough",
        "non_hamiltonian",
        "counterexamples",
        "time_ms",
    ]);
    let opts = HamiltonOptions {
        timeout: Duration::from_secs(3600),
        ..HamiltonOptions::default()
    };
    for n in 1..=max_n {
        let started = Instant::now();
        let graphs = enumerate_small(n, EnumFilter::P2p3Free)?;
        // (tough, hamiltonian) per graph; single vertices and edges have no
        // Hamiltonian cycle by definition.
        let flags: Vec<(bool, bool)> = graphs
            .par_iter()
            .map(|g| {
                let tough = toughness_with(g, &ExactOptions::default())
                    .expect("enumerated graphs are within the exact limit")
                    .tau
                    .at_least(tau);
                let ham = n >= 3 && matches!(hamiltonian_cycle_with(g, &opts), HamiltonResult::Found(_));
                (tough, ham)
            })
            .collect();
        let tough = flags.iter().filter(|f| f.0).count();
        let non_ham = flags.iter().filter(|f| !f.1).count();
        let bad: Vec<String> = graphs
            .iter()
            .zip(&flags)
            .filter(|(_, &(t, h))| n >= 3 && t && !h)
            .map(|(g, _)| encode_graph6(g))
            .collect();
        let row = Row::new(
            vec![
                n.to_string(),
                graphs.len().to_string(),
                tough.to_string(),
                non_ham.to_string(),
                if bad.is_empty() { "-".into() } else { bad.join(",") },
            ],
            started,
        );
        report.push(row.flag(!bad.is_empty()));
    }
    Ok(report)
}

fn gen(family: &str, params: &[String], count: usize, seed: Option<u64>) -> anyhow::Result<Vec<String>> {
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    let spec = FamilySpec::from_parts(family, &params, seed.unwrap_or(0))?;
    if spec.is_randomized() && seed.is_none() {
        bail!("{family} is randomized; pass --seed");
    }
    (0..count)
        .map(|i| {
            let s = seed.map_or(spec.clone(), |s| spec.reseeded(s.wrapping_add(i as u64)));
            Ok(encode_graph6(&generate(&s)?))
        })
        .collect()
}

enum Output {
    Report(Report),
    Lines(Vec<String>),
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    Ok(match cli.cmd {
        Cmd::CheckFree(inputs) => Output::Report(check_free(&inputs.load()?)),
        Cmd::Toughness { inputs, force, max_n } => {
            Output::Report(toughness_report(&inputs.load()?, &ExactOptions { max_n, force }))
        }
        Cmd::Hamilton { inputs, timeout_ms } => {
            let opts = HamiltonOptions {
                timeout: Duration::from_millis(timeout_ms),
                ..HamiltonOptions::default()
            };
            Output::Report(hamilton_report(&inputs.load()?, &opts))
        }
        Cmd::Construct {
            inputs,
            trace,
            timeout_ms,
            seed,
            literal_degree_branch,
        } => {
            let opts = DriverOptions {
                literal_degree_branch,
                hamilton: HamiltonOptions {
                    timeout: Duration::from_millis(timeout_ms),
                    ..HamiltonOptions::default()
                },
                seed,
                ..DriverOptions::default()
            };
            Output::Report(construct_report(&inputs.load()?, &opts, trace.as_deref()))
        }
        Cmd::Replay { graph, trace } => Output::Report(replay_report(&graph, &trace)?),
        Cmd::VerifyLemmas { max_n } => Output::Report(verify_lemmas(max_n)?),
        Cmd::SweepThreshold { max_n, tau } => Output::Report(sweep_threshold(max_n, tau)?),
        Cmd::Gen {
            family,
            params,
            count,
            seed,
        } => Output::Lines(gen(&family, &params, count, seed)?),
        Cmd::Enum { n, filter } => Output::Lines(
            enumerate_small(n, filter)?
                .iter()
                .map(encode_graph6)
                .collect(),
        ),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Report(r)) => {
            let mut out = io::stdout().lock();
            if let Err(e) = r.write(&mut out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(r.exit_code())
        }
        Ok(Output::Lines(lines)) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
