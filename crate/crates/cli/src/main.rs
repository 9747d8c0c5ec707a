//! `walk` — simulate Grover walks on small graphs and detect perfect
//! state transfer between vertex type states.
//!
//! Graphs come from a family spec (`multipartite:R,M`, `cycle:N`,
//! `complete:N`) or an edge-list file. Output is JSON by default and is
//! byte-deterministic for a fixed invocation; CSV is available for scan
//! tables. Exit codes: 0 success, 1 verification mismatch, 2 usage or
//! input error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grover_walk::graph::Graph;
use grover_walk::multipartite::{
    verify_bipartite_theorem, verify_complete_graphs, verify_periods, verify_tripartite_theorem,
    CompleteGraphChecks, PeriodCheck, TheoremVerification,
};
use grover_walk::operators::WalkOperators;
use grover_walk::pst::{
    detect_pst, find_period, scan_pst, PeriodReport, ScanReport, TransferReport,
    DEFAULT_PERIOD_BOUND, DEFAULT_PERIOD_TOL, DEFAULT_PST_TOL,
};
use grover_walk::spectral::{
    decompose, SpectralDecomposition, DEFAULT_CLUSTER_TOL, DEFAULT_SUPPORT_TOL,
};

#[derive(Parser)]
#[command(
    name = "walk",
    version,
    about = "Grover walk simulator and perfect state transfer detector"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct GraphArg {
    /// Graph source: "multipartite:R,M", "cycle:N", "complete:N", or an
    /// edge-list file path (one "u v" edge per line, '#' comments)
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
struct FormatArg {
    /// Output format; CSV is only available for scan tables
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the vertex state d* e_x and print the per-step arc amplitudes
    Simulate {
        #[command(flatten)]
        graph: GraphArg,
        /// Source vertex (dense index)
        #[arg(long)]
        x: usize,
        /// Number of steps to simulate
        #[arg(long, default_value_t = 0)]
        tau: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Perfect-state-transfer verdict for one (source, target, time)
    Pst {
        #[command(flatten)]
        graph: GraphArg,
        /// Source vertex
        #[arg(long)]
        x: usize,
        /// Target vertex
        #[arg(long)]
        y: usize,
        /// Walk time
        #[arg(long)]
        tau: u32,
        /// Threshold on 1 - |amplitude|
        #[arg(long, default_value_t = DEFAULT_PST_TOL)]
        tol: f64,
        /// Eigenvalue clustering tolerance for the spectral decomposition
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Scan all times 1..=tau-max from one source for perfect transfers
    Scan {
        #[command(flatten)]
        graph: GraphArg,
        /// Source vertex
        #[arg(long)]
        x: usize,
        /// Largest time to examine
        #[arg(long, default_value_t = 24)]
        tau_max: u32,
        /// Threshold on 1 - |amplitude|
        #[arg(long, default_value_t = DEFAULT_PST_TOL)]
        tol: f64,
        /// Eigenvalue clustering tolerance for the spectral decomposition
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Smallest time p with U^p = I, if any within the bound
    Period {
        #[command(flatten)]
        graph: GraphArg,
        /// Largest time to try
        #[arg(long, default_value_t = DEFAULT_PERIOD_BOUND)]
        bound: u32,
        /// Tolerance on the max-norm distance from the identity
        #[arg(long, default_value_t = DEFAULT_PERIOD_TOL)]
        tol: f64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Eigenvalue support of a vertex with respect to the discriminant
    Support {
        #[command(flatten)]
        graph: GraphArg,
        /// Vertex (dense index)
        #[arg(long)]
        x: usize,
        /// Threshold on the projector column norm
        #[arg(long, default_value_t = DEFAULT_SUPPORT_TOL)]
        tol: f64,
        /// Eigenvalue clustering tolerance for the spectral decomposition
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run the built-in classification battery for the equal-part
    /// multipartite families and exit nonzero on any mismatch
    Verify {
        /// Largest part size for the two-part family scan
        #[arg(long, default_value_t = 5)]
        bipartite_max_m: usize,
        /// Largest part size for the three-part family scan
        #[arg(long, default_value_t = 4)]
        tripartite_max_m: usize,
        #[command(flatten)]
        format: FormatArg,
    },
}

/// Errors that terminate the process with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(err: E) -> Self {
        UsageError(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(spec: &str) -> Result<Graph, UsageError> {
    if let Some((family, args)) = spec.split_once(':') {
        let parse = |value: &str| -> Result<usize, UsageError> {
            value
                .trim()
                .parse::<usize>()
                .map_err(|_| UsageError(format!("bad family parameter {value:?} in {spec:?}")))
        };
        return match family {
            "multipartite" => {
                let (r, m) = args.split_once(',').ok_or_else(|| {
                    UsageError(format!("expected multipartite:R,M, got {spec:?}"))
                })?;
                Ok(Graph::complete_multipartite(parse(r)?, parse(m)?)?)
            }
            "cycle" => Ok(Graph::cycle(parse(args)?)?),
            "complete" => Ok(Graph::complete(parse(args)?)?),
            other => Err(UsageError(format!(
                "unknown graph family {other:?} (expected multipartite, cycle, or complete)"
            ))),
        };
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|err| UsageError(format!("cannot read {spec:?}: {err}")))?;
    Ok(Graph::from_edge_list(&text)?)
}

fn decomposed(ops: &WalkOperators, cluster_tol: f64) -> Result<SpectralDecomposition, UsageError> {
    Ok(decompose(ops.discriminant(), cluster_tol)?)
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization cannot fail")
    );
}

fn reject_csv(format: Format, command: &str) -> Result<(), UsageError> {
    if format == Format::Csv {
        return Err(UsageError(format!(
            "csv output is only available for scan tables, not {command}"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ArcInfo {
    index: usize,
    origin: usize,
    terminus: usize,
}

#[derive(Serialize)]
struct StepRecord {
    time: u32,
    norm: f64,
    /// Per-arc amplitudes, aligned with the `arcs` table.
    amplitudes: Vec<AmplitudeRecord>,
}

#[derive(Serialize)]
struct AmplitudeRecord {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct SimulateOutput {
    graph: String,
    source: usize,
    steps: u32,
    arcs: Vec<ArcInfo>,
    trace: Vec<StepRecord>,
}

#[derive(Serialize)]
struct PstOutput {
    graph: String,
    #[serde(flatten)]
    report: TransferReport,
}

#[derive(Serialize)]
struct ScanOutput {
    graph: String,
    #[serde(flatten)]
    report: ScanReport,
}

#[derive(Serialize)]
struct PeriodOutput {
    graph: String,
    #[serde(flatten)]
    report: PeriodReport,
}

#[derive(Serialize)]
struct SupportOutput {
    graph: String,
    vertex: usize,
    /// Distinct eigenvalues of the discriminant, descending.
    spectrum: Vec<f64>,
    /// The subset supporting e_x.
    support: Vec<f64>,
}

#[derive(Serialize)]
struct ClassificationReport {
    bipartite: TheoremVerification,
    tripartite: TheoremVerification,
    complete_graphs: CompleteGraphChecks,
    periods: Vec<PeriodCheck>,
    pass: bool,
}

fn run(command: Command) -> Result<ExitCode, UsageError> {
    match command {
        Command::Simulate {
            graph,
            x,
            tau,
            format,
        } => {
            reject_csv(format.format, "simulate")?;
            let g = load_graph(&graph.graph)?;
            let ops = WalkOperators::from_graph(&g);
            let mut state = ops.vertex_state(x)?;
            let mut trace = Vec::with_capacity(tau as usize + 1);
            for time in 0..=tau {
                if time > 0 {
                    state = ops.step(&state, 1);
                }
                trace.push(StepRecord {
                    time,
                    norm: state.norm(),
                    amplitudes: state
                        .amplitudes()
                        .iter()
                        .map(|amp| AmplitudeRecord {
                            re: amp.re,
                            im: amp.im,
                        })
                        .collect(),
                });
            }
            let output = SimulateOutput {
                graph: graph.graph.clone(),
                source: x,
                steps: tau,
                arcs: ops
                    .arcs()
                    .arcs()
                    .iter()
                    .enumerate()
                    .map(|(index, arc)| ArcInfo {
                        index,
                        origin: arc.origin,
                        terminus: arc.terminus,
                    })
                    .collect(),
                trace,
            };
            match format.format {
                Format::Json => emit_json(&output),
                Format::Text => {
                    println!("simulate {} from vertex {x}, {tau} steps", graph.graph);
                    for record in &output.trace {
                        let amplitudes: Vec<String> = record
                            .amplitudes
                            .iter()
                            .zip(&output.arcs)
                            .filter(|(amp, _)| amp.re.abs() + amp.im.abs() > 1e-12)
                            .map(|(amp, arc)| {
                                format!(
                                    "({}->{}): {:+.6}{:+.6}i",
                                    arc.origin, arc.terminus, amp.re, amp.im
                                )
                            })
                            .collect();
                        println!(
                            "t={:<3} norm={:.12}  {}",
                            record.time,
                            record.norm,
                            amplitudes.join("  ")
                        );
                    }
                }
                Format::Csv => unreachable!(),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pst {
            graph,
            x,
            y,
            tau,
            tol,
            cluster_tol,
            format,
        } => {
            reject_csv(format.format, "pst")?;
            let g = load_graph(&graph.graph)?;
            let ops = WalkOperators::from_graph(&g);
            let sd = decomposed(&ops, cluster_tol)?;
            let report = detect_pst(&ops, &sd, x, y, tau, tol)?;
            match format.format {
                Format::Json => emit_json(&PstOutput {
                    graph: graph.graph.clone(),
                    report,
                }),
                Format::Text => {
                    println!(
                        "{} -> {} at tau={}: pst={} |amplitude|={:.12} amplitude={:+.12}{:+.12}i",
                        report.source,
                        report.target,
                        report.time,
                        report.pst,
                        report.amplitude_abs,
                        report.amplitude.re,
                        report.amplitude.im
                    );
                }
                Format::Csv => unreachable!(),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            graph,
            x,
            tau_max,
            tol,
            cluster_tol,
            format,
        } => {
            let g = load_graph(&graph.graph)?;
            let ops = WalkOperators::from_graph(&g);
            let sd = decomposed(&ops, cluster_tol)?;
            let report = scan_pst(&ops, &sd, x, tau_max, tol)?;
            match format.format {
                Format::Json => emit_json(&ScanOutput {
                    graph: graph.graph.clone(),
                    report,
                }),
                Format::Csv => {
                    println!("time,target,amplitude_re,amplitude_im,amplitude_abs,pst,trivial");
                    for hit in &report.hits {
                        println!(
                            "{},{},{},{},{},{},{}",
                            hit.time,
                            hit.target,
                            hit.amplitude.re,
                            hit.amplitude.im,
                            hit.amplitude_abs,
                            hit.pst,
                            hit.trivial
                        );
                    }
                }
                Format::Text => {
                    println!(
                        "scan {} from vertex {x}, tau <= {tau_max}: {} hits, {} times pruned",
                        graph.graph,
                        report.hits.len(),
                        report.pruned_times
                    );
                    for hit in &report.hits {
                        println!(
                            "  tau={:<3} target={:<3} amplitude={:+.12}{:+.12}i{}",
                            hit.time,
                            hit.target,
                            hit.amplitude.re,
                            hit.amplitude.im,
                            if hit.trivial { "  (trivial)" } else { "" }
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Period {
            graph,
            bound,
            tol,
            format,
        } => {
            reject_csv(format.format, "period")?;
            let g = load_graph(&graph.graph)?;
            let ops = WalkOperators::from_graph(&g);
            let report = find_period(&ops, bound, tol);
            match format.format {
                Format::Json => emit_json(&PeriodOutput {
                    graph: graph.graph.clone(),
                    report,
                }),
                Format::Text => match report.period {
                    Some(p) => println!(
                        "period {p} (deviation {:.3e} <= {tol:.3e})",
                        report.deviation
                    ),
                    None => println!("none up to bound {bound}"),
                },
                Format::Csv => unreachable!(),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Support {
            graph,
            x,
            tol,
            cluster_tol,
            format,
        } => {
            reject_csv(format.format, "support")?;
            let g = load_graph(&graph.graph)?;
            let ops = WalkOperators::from_graph(&g);
            let sd = decomposed(&ops, cluster_tol)?;
            let support = sd.support(x, tol)?;
            let output = SupportOutput {
                graph: graph.graph.clone(),
                vertex: x,
                spectrum: sd.eigenvalues().to_vec(),
                support,
            };
            match format.format {
                Format::Json => emit_json(&output),
                Format::Text => {
                    println!(
                        "support of vertex {x}: {:?} (spectrum {:?})",
                        output.support, output.spectrum
                    );
                }
                Format::Csv => unreachable!(),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            bipartite_max_m,
            tripartite_max_m,
            format,
        } => {
            reject_csv(format.format, "verify")?;
            let report = run_verification(bipartite_max_m, tripartite_max_m)?;
            match format.format {
                Format::Json => emit_json(&report),
                Format::Text => {
                    println!(
                        "bipartite family (m <= {bipartite_max_m}): {}",
                        verdict(report.bipartite.pass)
                    );
                    println!(
                        "tripartite family (m <= {tripartite_max_m}): {}",
                        verdict(report.tripartite.pass)
                    );
                    println!("complete graphs: {}", verdict(report.complete_graphs.pass));
                    for period in &report.periods {
                        println!(
                            "period {}: expected {} found {:?} {}",
                            period.family,
                            period.expected,
                            period.found,
                            verdict(period.pass)
                        );
                    }
                    println!("overall: {}", verdict(report.pass));
                }
                Format::Csv => unreachable!(),
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "MISMATCH"
    }
}

/// Run the four verification batteries, fanned out over up to
/// `WALK_THREADS` worker threads (default: sequential). Results are
/// assembled in a fixed order, so the output does not depend on the
/// thread count.
fn run_verification(
    bipartite_max_m: usize,
    tripartite_max_m: usize,
) -> Result<ClassificationReport, UsageError> {
    let threads = match std::env::var("WALK_THREADS") {
        Ok(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| {
                UsageError(format!(
                    "WALK_THREADS must be a positive integer, got {raw:?}"
                ))
            })?,
        Err(_) => 1,
    };

    if threads <= 1 {
        let report = ClassificationReport {
            bipartite: verify_bipartite_theorem(bipartite_max_m)?,
            tripartite: verify_tripartite_theorem(tripartite_max_m)?,
            complete_graphs: verify_complete_graphs()?,
            periods: verify_periods()?,
            pass: false,
        };
        return Ok(finish_classification(report));
    }

    // Two workers cover the slow batteries; the caller thread takes the
    // cheap ones. More than three threads buys nothing.
    let (bipartite, tripartite, complete_graphs, periods) = std::thread::scope(|scope| {
        let bipartite = scope.spawn(move || verify_bipartite_theorem(bipartite_max_m));
        let tripartite = scope.spawn(move || verify_tripartite_theorem(tripartite_max_m));
        let complete_graphs = verify_complete_graphs();
        let periods = verify_periods();
        (
            bipartite.join().expect("verification worker panicked"),
            tripartite.join().expect("verification worker panicked"),
            complete_graphs,
            periods,
        )
    });
    let report = ClassificationReport {
        bipartite: bipartite?,
        tripartite: tripartite?,
        complete_graphs: complete_graphs?,
        periods: periods?,
        pass: false,
    };
    Ok(finish_classification(report))
}

fn finish_classification(mut report: ClassificationReport) -> ClassificationReport {
    report.pass = report.bipartite.pass
        && report.tripartite.pass
        && report.complete_graphs.pass
        && report.periods.iter().all(|p| p.pass);
    report
}
