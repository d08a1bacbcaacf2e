//! `rotor`: rotor-router orbit analysis, exact stationary distributions,
//! and deterministic experiment harnesses on directed multigraphs.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rotor_core::{
    empirical_frequency, experiment_csv, experiment_json, gen_random_strong_digraph,
    max_deviation, orbit_report_with_budget, parse_digraph, rational_string, rotor_step,
    rotor_walk, run_family_sweep, run_m1_experiment, serialize_digraph, stationary_exact,
    stationary_power_iteration, sweep_csv, sweep_json, tree_counts, BigInt, BigRational,
    ChipRotorState, DirectedMultigraph, Family, OrbitReport, RotorConfiguration,
    DEFAULT_POWER_ITERATIONS, DEFAULT_POWER_TOLERANCE, DEFAULT_STATE_BUDGET,
};

#[derive(Parser, Debug)]
#[command(
    name = "rotor",
    version,
    about = "Rotor-router orbits, arborescence counts, and random-walk stationary analysis"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Per-vertex oriented-spanning-tree counts and their gcd
    Trees {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Orbit size, orbit count, and unicycle count from the closed forms,
    /// optionally verified against exhaustive simulation
    Orbits {
        #[command(flatten)]
        source: GraphSource,
        /// Verify the formulas by brute force and report MATCH/MISMATCH
        #[arg(long)]
        simulate: bool,
        /// State budget for the brute-force verification
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run a rotor walk and compare visit frequencies with the exact
    /// stationary distribution
    Walk {
        #[command(flatten)]
        source: GraphSource,
        /// Number of rotor-router steps (counts the first t visited vertices)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        /// Starting vertex of the chip
        #[arg(long)]
        chip: usize,
        /// Comma-separated initial rotor indices, '-' for sinks (default: all 0)
        #[arg(long)]
        rotors: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Exact stationary distribution plus the power-iteration cross-check
    Stationary {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = DEFAULT_POWER_ITERATIONS)]
        iterations: u64,
        #[arg(long, default_value_t = DEFAULT_POWER_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Deterministic Monte-Carlo experiment harnesses
    Experiment {
        #[command(subcommand)]
        kind: ExperimentCmd,
    },
    /// Closed-form sweep over a graph family
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Emit a graph in the text interchange format
    Gen {
        #[command(flatten)]
        source: GraphSource,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCmd {
    /// Sample random strongly connected digraphs and tally how often the
    /// arborescence counts are coprime (single-orbit graphs)
    M1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Read the graph from a file in the text interchange format
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Generate a family member instead of reading a file
    #[arg(long, value_enum, value_name = "FAMILY")]
    family: Option<FamilyArg>,
    /// Family size parameter
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Edge probability (random family only)
    #[arg(long, value_name = "P")]
    p: Option<f64>,
    /// RNG seed (random family only, default 0)
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyArg {
    #[value(name = "cycle")]
    Cycle,
    #[value(name = "bidirected_complete")]
    BidirectedComplete,
    #[value(name = "thm2")]
    Thm2,
    #[value(name = "two_four_chain")]
    TwoFourChain,
    #[value(name = "random")]
    Random,
}

impl FamilyArg {
    fn fixed_family(self) -> Option<Family> {
        match self {
            FamilyArg::Cycle => Some(Family::Cycle),
            FamilyArg::BidirectedComplete => Some(Family::BidirectedComplete),
            FamilyArg::Thm2 => Some(Family::Thm2),
            FamilyArg::TwoFourChain => Some(Family::TwoFourChain),
            FamilyArg::Random => None,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl GraphSource {
    fn load(&self) -> Result<DirectedMultigraph> {
        match (&self.file, self.family) {
            (Some(_), Some(_)) => bail!("--file and --family are mutually exclusive"),
            (None, None) => bail!("one of --file or --family is required"),
            (Some(path), None) => {
                if self.n.is_some() || self.p.is_some() || self.seed.is_some() {
                    bail!("--n/--p/--seed only apply to --family");
                }
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(parse_digraph(&text)?)
            }
            (None, Some(family)) => {
                let n = self.n.ok_or_else(|| anyhow!("--family requires --n"))?;
                match family.fixed_family() {
                    Some(f) => {
                        if self.p.is_some() || self.seed.is_some() {
                            bail!("--p/--seed only apply to --family random");
                        }
                        Ok(f.generate(n)?)
                    }
                    None => {
                        let p = self
                            .p
                            .ok_or_else(|| anyhow!("--family random requires --p"))?;
                        Ok(gen_random_strong_digraph(n, p, self.seed.unwrap_or(0))?)
                    }
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Trees { source, format } => cmd_trees(&source.load()?, format),
        Cmd::Orbits {
            source,
            simulate,
            budget,
            format,
        } => cmd_orbits(&source.load()?, simulate, budget, format),
        Cmd::Walk {
            source,
            steps,
            chip,
            rotors,
            format,
        } => cmd_walk(&source.load()?, steps, chip, rotors.as_deref(), format),
        Cmd::Stationary {
            source,
            iterations,
            tolerance,
            format,
        } => cmd_stationary(&source.load()?, iterations, tolerance, format),
        Cmd::Experiment {
            kind:
                ExperimentCmd::M1 {
                    n,
                    p,
                    trials,
                    seed,
                    out,
                    format,
                },
        } => cmd_experiment_m1(n, p, trials, seed, out.as_deref(), format),
        Cmd::Sweep {
            family,
            from,
            to,
            out,
            format,
        } => cmd_sweep(family, from, to, out.as_deref(), format),
        Cmd::Gen { source, out } => {
            emit(&serialize_digraph(&source.load()?), out.as_deref())?;
            Ok(0)
        }
    }
}

fn emit(content: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn bigint_list(v: &[BigInt]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn ratio_list(v: &[BigRational]) -> String {
    let items: Vec<String> = v.iter().map(rational_string).collect();
    format!("[{}]", items.join(", "))
}

fn reject_csv(format: OutputFormat) -> Result<()> {
    if format == OutputFormat::Csv {
        bail!("csv output is only available for 'experiment' and 'sweep'");
    }
    Ok(())
}

fn cmd_trees(g: &DirectedMultigraph, format: OutputFormat) -> Result<u8> {
    reject_csv(format)?;
    let tc = tree_counts(g);
    match format {
        OutputFormat::Text => {
            println!("T = {}, M = {}", bigint_list(&tc.counts), tc.m_gcd);
        }
        OutputFormat::Json => {
            let counts: Vec<String> = tc.counts.iter().map(|c| c.to_string()).collect();
            let value = serde_json::json!({
                "tree_counts": counts,
                "m_gcd": tc.m_gcd.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        OutputFormat::Csv => unreachable!(),
    }
    Ok(0)
}

fn print_report_text(report: &OrbitReport, verdict: Option<&str>) {
    println!("orbit size  = {}", report.orbit_size_formula);
    println!("orbit count = {}", report.orbit_count_formula);
    println!("unicycles   = {}", report.unicycle_count);
    let visits: Vec<String> = report
        .per_vertex_visits
        .iter()
        .map(|(v, c)| format!("{v}: {c}"))
        .collect();
    println!("visits      = {{{}}}", visits.join(", "));
    if let Some(verdict) = verdict {
        println!("simulation  = {verdict}");
    }
}

fn cmd_orbits(
    g: &DirectedMultigraph,
    simulate: bool,
    budget: u64,
    format: OutputFormat,
) -> Result<u8> {
    reject_csv(format)?;
    let report = orbit_report_with_budget(g, if simulate { budget } else { 0 })?;
    let verdict = if simulate {
        match report.simulation_matches() {
            Some(true) => Some("MATCH"),
            Some(false) => Some("MISMATCH"),
            None => bail!(
                "state space exceeds --budget {budget}; raise it to simulate this graph"
            ),
        }
    } else {
        None
    };
    match format {
        OutputFormat::Text => print_report_text(&report, verdict),
        OutputFormat::Json => {
            let mut value = serde_json::to_value(&report)?;
            if let Some(verdict) = verdict {
                value["verdict"] = serde_json::Value::String(verdict.to_string());
            }
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        OutputFormat::Csv => unreachable!(),
    }
    if verdict == Some("MISMATCH") {
        eprintln!("simulation disagrees with the closed forms");
        return Ok(1);
    }
    Ok(0)
}

fn parse_rotor_indices(s: &str) -> Result<Vec<Option<usize>>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "-" {
                Ok(None)
            } else {
                tok.parse::<usize>()
                    .map(Some)
                    .map_err(|_| anyhow!("bad rotor index {tok:?} (expected a number or '-')"))
            }
        })
        .collect()
}

fn cmd_walk(
    g: &DirectedMultigraph,
    steps: u64,
    chip: usize,
    rotors: Option<&str>,
    format: OutputFormat,
) -> Result<u8> {
    reject_csv(format)?;
    let config = match rotors {
        Some(s) => RotorConfiguration::from_indices(g, parse_rotor_indices(s)?)?,
        None => RotorConfiguration::initial(g),
    };
    let start = ChipRotorState::new(g, chip, config)?;

    let walk = rotor_walk(g, &start, steps);
    let mut counts = vec![0u64; g.vertex_count()];
    for &v in &walk[..steps as usize] {
        counts[v - 1] += 1;
    }
    let freq = empirical_frequency(g, &start, steps)?;
    let exact = stationary_exact(g)?;
    let deviation = max_deviation(&freq, &exact.probs);
    let report = orbit_report_with_budget(g, 0)?;
    let bound = BigRational::new(report.orbit_size_formula.clone(), BigInt::from(steps));
    let mut final_state = start.clone();
    for _ in 0..steps {
        final_state = rotor_step(g, &final_state);
    }

    match format {
        OutputFormat::Text => {
            if walk.len() <= 200 {
                let verts: Vec<String> = walk.iter().map(|v| v.to_string()).collect();
                println!("walk   = {}", verts.join(" "));
            } else {
                println!("walk   = ({} vertices; use --format json)", walk.len());
            }
            let count_strs: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            println!("visits = [{}] / {}", count_strs.join(", "), steps);
            println!("freq   = {}", ratio_list(&freq));
            println!("exact  = {}", ratio_list(&exact.probs));
            println!(
                "max deviation = {} (bound {})",
                rational_string(&deviation),
                rational_string(&bound)
            );
            println!("final  = {final_state}");
        }
        OutputFormat::Json => {
            let value = serde_json::json!({
                "walk": walk,
                "visit_counts": counts,
                "frequencies": freq.iter().map(rational_string).collect::<Vec<_>>(),
                "exact": exact.probs.iter().map(rational_string).collect::<Vec<_>>(),
                "max_deviation": rational_string(&deviation),
                "deviation_bound": rational_string(&bound),
                "orbit_size": report.orbit_size_formula.to_string(),
                "final_state": final_state.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        OutputFormat::Csv => unreachable!(),
    }
    Ok(0)
}

fn cmd_stationary(
    g: &DirectedMultigraph,
    iterations: u64,
    tolerance: f64,
    format: OutputFormat,
) -> Result<u8> {
    reject_csv(format)?;
    let exact = stationary_exact(g)?;
    let power = stationary_power_iteration(g, iterations, tolerance)?;
    let exact_f = exact.probs_f64();
    let gap = power
        .iter()
        .zip(&exact_f)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    match format {
        OutputFormat::Text => {
            println!("exact = {}", ratio_list(&exact.probs));
            let approx: Vec<String> = power.iter().map(|p| format!("{p:.10}")).collect();
            println!("power iteration = [{}]", approx.join(", "));
            println!("max |power - exact| = {gap:.3e}");
        }
        OutputFormat::Json => {
            let value = serde_json::json!({
                "exact": exact.probs.iter().map(rational_string).collect::<Vec<_>>(),
                "power_iteration": power,
                "max_abs_difference": gap,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        OutputFormat::Csv => unreachable!(),
    }
    Ok(0)
}

fn cmd_experiment_m1(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    out: Option<&std::path::Path>,
    format: OutputFormat,
) -> Result<u8> {
    if format == OutputFormat::Text {
        bail!("experiment output is csv or json");
    }
    let record = run_m1_experiment(n, p, trials, seed)?;
    eprintln!(
        "m1: {}/{} trials with coprime tree counts ({:.3}s)",
        record.m1_count, record.trials, record.elapsed_s
    );
    let content = match format {
        OutputFormat::Csv => experiment_csv(&record),
        OutputFormat::Json => experiment_json(&record),
        OutputFormat::Text => unreachable!(),
    };
    emit(&content, out)?;
    Ok(0)
}

fn cmd_sweep(
    family: FamilyArg,
    from: usize,
    to: usize,
    out: Option<&std::path::Path>,
    format: OutputFormat,
) -> Result<u8> {
    let family = family
        .fixed_family()
        .ok_or_else(|| anyhow!("sweep works on fixed families, not 'random'"))?;
    if format == OutputFormat::Text {
        bail!("sweep output is csv or json");
    }
    let rows = run_family_sweep(family, from, to)?;
    let content = match format {
        OutputFormat::Csv => sweep_csv(&rows),
        OutputFormat::Json => sweep_json(&rows),
        OutputFormat::Text => unreachable!(),
    };
    emit(&content, out)?;
    Ok(0)
}
