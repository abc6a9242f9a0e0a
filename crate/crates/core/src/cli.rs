//! Command-line front end. `run` parses the argument vector, streams the
//! result to the given writers, and returns the process exit code:
//! 0 on success, 1 on domain errors, 2 on usage errors.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::forcing::{
    forced_types, forces_with_witness, rational_string, forces_to_json, ForcingCaps,
};
use crate::logistic::{
    certify_cascade, iterate, scan_bifurcations, scan_to_csv, LogisticParams,
};
use crate::markov::{build_digraph, double_graph, to_dot, to_json};
use crate::perm::Cycle;
use crate::poly::charpoly;
use crate::successors::{cascade, cascade_to_json, enumerate_successors, SuccessorCaps};

#[derive(Debug, Parser)]
#[command(
    name = "combdyn",
    about = "Combinatorial dynamics of interval maps: digraphs, exact polynomials, doubling successors, forcing, and the logistic map",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Args)]
struct SuccessorCapArgs {
    /// Max cycle length for successor enumeration (2^n candidates)
    #[arg(long, default_value_t = SuccessorCaps::default().enumerate_max_base)]
    successor_cap: usize,
    /// Max cycle length for the unimodal doubling filter
    #[arg(long, default_value_t = SuccessorCaps::default().double_max_base)]
    double_cap: usize,
    /// Max total period reachable by a cascade
    #[arg(long, default_value_t = SuccessorCaps::default().cascade_max_period)]
    period_cap: usize,
}

impl SuccessorCapArgs {
    fn caps(&self) -> SuccessorCaps {
        SuccessorCaps {
            enumerate_max_base: self.successor_cap,
            double_max_base: self.double_cap,
            cascade_max_period: self.period_cap,
        }
    }
}

#[derive(Debug, Args)]
struct ForcingCapArgs {
    /// Max loop length searched in the digraph
    #[arg(long, default_value_t = ForcingCaps::default().max_loop_len)]
    max_loop_len: usize,
    /// Max number of closed walks visited per search
    #[arg(long, default_value_t = ForcingCaps::default().max_loops)]
    max_loops: usize,
}

impl ForcingCapArgs {
    fn caps(&self) -> ForcingCaps {
        ForcingCaps {
            max_loop_len: self.max_loop_len,
            max_loops: self.max_loops,
        }
    }
}

#[derive(Debug, Args)]
struct LogisticArgs {
    /// Iterations discarded before period detection
    #[arg(long, default_value_t = 100_000)]
    burn_in: usize,
    /// Largest period searched for
    #[arg(long, default_value_t = 64)]
    max_period: usize,
    /// Cycle-closure tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Initial point of the iteration
    #[arg(long, default_value_t = 0.5)]
    x0: f64,
}

impl LogisticArgs {
    fn params(&self, a: f64) -> LogisticParams {
        LogisticParams {
            a,
            burn_in: self.burn_in,
            max_period: self.max_period,
            tol: self.tol,
            x0: self.x0,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the signed Markov digraph of a cycle
    Digraph {
        /// Cycle, e.g. "(123)" or "2,3,1"
        cycle: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact characteristic polynomial of the digraph's adjacency matrix
    Charpoly {
        cycle: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate doubling candidates of a cycle
    Successors {
        cycle: String,
        /// Keep only the cyclic candidates (odd swap sets)
        #[arg(long)]
        cyclic_only: bool,
        /// Keep only candidates with modality +1
        #[arg(long)]
        unimodal_only: bool,
        #[command(flatten)]
        caps: SuccessorCapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Double the digraph of a cycle along a swap set
    Double {
        cycle: String,
        /// Swap indices, comma separated, e.g. --swaps 2,3,4
        #[arg(long, value_delimiter = ',', required = true)]
        swaps: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Unimodal period-doubling cascade with certified polynomials
    Cascade {
        seed: String,
        /// Number of doublings to perform
        #[arg(long)]
        levels: usize,
        /// Re-check the polynomial product level by level and say so
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        caps: SuccessorCapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether the first cycle forces the second
    Forces {
        beta: String,
        alpha: String,
        #[command(flatten)]
        caps: ForcingCapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// All orbit types realized by loops up to a period, plus the cycle itself
    ForcedTypes {
        beta: String,
        #[arg(long)]
        max_period: usize,
        #[command(flatten)]
        caps: ForcingCapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Detect the logistic-map attractor at one parameter value
    Logistic {
        #[arg(long)]
        a: f64,
        #[command(flatten)]
        opts: LogisticArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sweep the logistic parameter and report periods and doublings
    LogisticScan {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[command(flatten)]
        opts: LogisticArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check numeric orbit types against the symbolic cascade
    CertifyCascade {
        #[arg(long)]
        seed: String,
        /// Parameter values, comma separated, e.g. --a-list 2.5,3.2,3.5
        #[arg(long, value_delimiter = ',', required = true)]
        a_list: Vec<f64>,
        #[command(flatten)]
        opts: LogisticArgs,
        #[command(flatten)]
        caps: SuccessorCapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Runs the CLI against an argument vector, streaming to the writers.
pub fn run<W: Write, E: Write>(argv: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = write!(
                if code == 0 { Box::new(out) as Box<dyn Write> } else { Box::new(err) },
                "{e}"
            );
            return code;
        }
    };
    if let Some(msg) = bad_format(&cli.command) {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn bad_format(cmd: &Command) -> Option<String> {
    let (format, allowed): (Format, &[Format]) = match cmd {
        Command::Digraph { format, .. } | Command::Double { format, .. } => {
            (*format, &[Format::Text, Format::Dot, Format::Json])
        }
        Command::LogisticScan { format, .. } => {
            (*format, &[Format::Text, Format::Json, Format::Csv])
        }
        Command::Charpoly { format, .. }
        | Command::Successors { format, .. }
        | Command::Cascade { format, .. }
        | Command::Forces { format, .. }
        | Command::ForcedTypes { format, .. }
        | Command::Logistic { format, .. }
        | Command::CertifyCascade { format, .. } => {
            (*format, &[Format::Text, Format::Json])
        }
    };
    if allowed.contains(&format) {
        None
    } else {
        Some(format!(
            "--format {}: not supported by this subcommand",
            format.name()
        ))
    }
}

fn dispatch<W: Write>(cmd: Command, out: &mut W) -> Result<i32, Box<dyn std::error::Error>> {
    match cmd {
        Command::Digraph { cycle, format } => {
            let theta = Cycle::parse(&cycle)?;
            let g = build_digraph(&theta);
            emit_graph(out, &g, format)?;
        }
        Command::Charpoly { cycle, format } => {
            let theta = Cycle::parse(&cycle)?;
            let p = charpoly(build_digraph(&theta).adjacency())?;
            match format {
                Format::Json => {
                    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                    writeln!(
                        out,
                        "{}",
                        serde_json::json!({ "variable": "λ", "coeffs": coeffs })
                    )?;
                }
                _ => writeln!(out, "{p}")?,
            }
        }
        Command::Successors {
            cycle,
            cyclic_only,
            unimodal_only,
            caps,
            format,
        } => {
            let theta = Cycle::parse(&cycle)?;
            let set = enumerate_successors(&theta, &caps.caps())?;
            let cyclic: Vec<_> = set
                .cyclic
                .iter()
                .filter(|(_, c)| !unimodal_only || c.is_unimodal() || c.len() == 2)
                .collect();
            match format {
                Format::Json => {
                    let body = serde_json::json!({
                        "base": set.base.images(),
                        "cyclic": cyclic
                            .iter()
                            .map(|(s, c)| serde_json::json!({"swaps": s, "cycle": c.images()}))
                            .collect::<Vec<_>>(),
                        "non_cyclic": if cyclic_only || unimodal_only {
                            Vec::new()
                        } else {
                            set.non_cyclic
                                .iter()
                                .map(|(s, p)| serde_json::json!({"swaps": s, "permutation": p.images()}))
                                .collect::<Vec<_>>()
                        },
                    });
                    writeln!(out, "{body}")?;
                }
                _ => {
                    for (swaps, c) in &cyclic {
                        writeln!(out, "cyclic swaps={{{}}} {}", swap_list(swaps), c)?;
                    }
                    if !cyclic_only && !unimodal_only {
                        for (swaps, p) in &set.non_cyclic {
                            writeln!(out, "non-cyclic swaps={{{}}} {}", swap_list(swaps), p)?;
                        }
                    }
                }
            }
        }
        Command::Double {
            cycle,
            swaps,
            format,
        } => {
            let theta = Cycle::parse(&cycle)?;
            let g = double_graph(&build_digraph(&theta), &swaps)?;
            emit_graph(out, &g, format)?;
        }
        Command::Cascade {
            seed,
            levels,
            verify,
            caps,
            format,
        } => {
            let seed = Cycle::parse(&seed)?;
            let chain = cascade(&seed, levels, &caps.caps())?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&cascade_to_json(&chain))?)?,
                _ => {
                    for i in 0..=chain.depth() {
                        let c = chain.level(i);
                        write!(out, "level {i}: period {} {} charpoly {}", c.len(), c, chain.polynomials[i])?;
                        if verify {
                            write!(out, " verified")?;
                        }
                        writeln!(out)?;
                    }
                }
            }
        }
        Command::Forces {
            beta,
            alpha,
            caps,
            format,
        } => {
            let beta = Cycle::parse(&beta)?;
            let alpha = Cycle::parse(&alpha)?;
            let (result, witness) = forces_with_witness(&beta, &alpha, &caps.caps())?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&forces_to_json(&beta, &alpha, result, &witness))?
                )?,
                _ => {
                    writeln!(out, "{result}")?;
                    if let Some(w) = &witness {
                        let loop_str = swap_list(w.found_loop.vertices());
                        let points: Vec<String> =
                            w.orbit.points.iter().map(rational_string).collect();
                        writeln!(out, "witness loop: [{loop_str}]")?;
                        writeln!(out, "witness orbit: {}", points.join(" -> "))?;
                        writeln!(out, "orbit type: {}", w.orbit.orbit_type)?;
                    }
                }
            }
        }
        Command::ForcedTypes {
            beta,
            max_period,
            caps,
            format,
        } => {
            let beta = Cycle::parse(&beta)?;
            let types = forced_types(&beta, max_period, &caps.caps())?;
            match format {
                Format::Json => {
                    let body: Vec<_> = types.iter().map(|c| c.images().to_vec()).collect();
                    writeln!(out, "{}", serde_json::to_string(&body)?)?;
                }
                _ => {
                    for t in &types {
                        writeln!(out, "{t}")?;
                    }
                }
            }
        }
        Command::Logistic { a, opts, format } => {
            let report = iterate(&opts.params(a))?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                _ => {
                    writeln!(out, "a = {}", report.a)?;
                    writeln!(out, "period = {}", report.period)?;
                    let pts: Vec<String> = report.points.iter().map(|p| p.to_string()).collect();
                    writeln!(out, "points = [{}]", pts.join(", "))?;
                    writeln!(out, "orbit type = {}", report.orbit_type)?;
                }
            }
        }
        Command::LogisticScan {
            from,
            to,
            step,
            opts,
            format,
        } => {
            let report = scan_bifurcations(from, to, step, &opts.params(from))?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                Format::Csv => write!(out, "{}", scan_to_csv(&report))?,
                _ => {
                    for t in &report.transitions {
                        writeln!(
                            out,
                            "doubling {} -> {} at a = {}",
                            t.from_period, t.to_period, t.a
                        )?;
                    }
                    let detected = report.samples.iter().filter(|s| s.period.is_some()).count();
                    writeln!(
                        out,
                        "{} samples, {} with a detected attractor",
                        report.samples.len(),
                        detected
                    )?;
                }
            }
        }
        Command::CertifyCascade {
            seed,
            a_list,
            opts,
            caps,
            format,
        } => {
            let seed = Cycle::parse(&seed)?;
            let a0 = a_list.first().copied().unwrap_or(3.0);
            let report = certify_cascade(&a_list, &seed, &opts.params(a0), &caps.caps())?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                _ => {
                    for e in &report.entries {
                        match (&e.detected_type, &e.expected_type) {
                            (Some(d), Some(x)) => writeln!(
                                out,
                                "a = {}: period {} level {} detected {} expected {} {}",
                                e.a,
                                e.period.unwrap_or(0),
                                e.level.map_or("-".to_string(), |l| l.to_string()),
                                d,
                                x,
                                if e.matched { "match" } else { "MISMATCH" }
                            )?,
                            (Some(d), None) => writeln!(
                                out,
                                "a = {}: period {} detected {} has no cascade level: MISMATCH",
                                e.a,
                                e.period.unwrap_or(0),
                                d
                            )?,
                            _ => writeln!(
                                out,
                                "a = {}: {}",
                                e.a,
                                e.error.as_deref().unwrap_or("no detection")
                            )?,
                        }
                    }
                    writeln!(
                        out,
                        "{}",
                        if report.all_matched { "all matched" } else { "mismatches found" }
                    )?;
                }
            }
            if !report.all_matched {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn swap_list(xs: &[usize]) -> String {
    let strs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    strs.join(",")
}

fn emit_graph<W: Write>(
    out: &mut W,
    g: &crate::markov::SignedDigraph,
    format: Format,
) -> Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Dot => write!(out, "{}", to_dot(g))?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&to_json(g))?)?,
        _ => {
            writeln!(out, "vertices: {}", g.n_vertices())?;
            for i in 1..=g.n_vertices() {
                let succ: Vec<String> = g
                    .successors_of(i)
                    .into_iter()
                    .map(|j| format!("v{j}"))
                    .collect();
                writeln!(out, "v{}{} -> {}", i, g.sign(i).as_char(), succ.join(" "))?;
            }
        }
    }
    Ok(())
}
