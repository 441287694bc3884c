//! Command-line front end for `caywalk-core`.

pub mod config;
pub mod verify;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use caywalk_core::analytics::{build_walk_matrix, mixing_time, time_averaged, walk_spectrum, write_distribution_csv};
use caywalk_core::engine::{basis_state, position_distribution, uniform_coin_state, Amplitude, Backend};
use caywalk_core::pathsum::path_count_table;
use caywalk_core::walsh::{hadamard_amplitudes, walsh_seq};
use caywalk_core::{BigInt, BigRational, Caps, CayleyGraph, CharacterTable, Complex64, Walk, WalkState};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::{RawConfig, RunConfig, StartSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    VerifyFailed(String),
}

impl From<caywalk_core::Error> for CliError {
    fn from(e: caywalk_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::VerifyFailed(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "caywalk", version, about = "Coined quantum walks on Cayley graphs of S_n", arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Walk description shared by most subcommands. Flags override the
/// values read from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct WalkArgs {
    /// Config file with `key = value` lines (group, gens, coin, start, steps, backend, shift, caps)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Group, `sn:<n>`
    #[arg(long)]
    pub group: Option<String>,
    /// `gamma[:n]`, `transpositions[:n]` or `cycles:(12);(123)`
    #[arg(long)]
    pub gens: Option<String>,
    /// `grover`, `hadamard`, `ix`, `identity` or `custom:<path.json>`
    #[arg(long)]
    pub coin: Option<String>,
    /// Basis state `s,g` (g as rank or one-line perm) or `uniform:g`
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long)]
    pub steps: Option<String>,
    /// `float`, `exact` or `scaled`
    #[arg(long)]
    pub backend: Option<String>,
    /// `standard`, `flip-flop` or `map:1,0,...`
    #[arg(long)]
    pub shift: Option<String>,
    /// Cap overrides, e.g. `degree=9,sequences=1e8`
    #[arg(long)]
    pub caps: Option<String>,
}

impl WalkArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RawConfig::from_text(&fs::read_to_string(path)?)?,
            None => RawConfig::default(),
        };
        let flags = RawConfig {
            group: self.group.clone(),
            gens: self.gens.clone(),
            coin: self.coin.clone(),
            start: self.start.clone(),
            steps: self.steps.clone(),
            backend: self.backend.clone(),
            shift: self.shift.clone(),
            caps: self.caps.clone(),
        };
        let config = RunConfig::from_raw(&base.overridden_by(flags))?;
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a walk and write the position distribution as CSV
    Walk {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write every amplitude as JSON
        #[arg(long)]
        amplitudes: Option<PathBuf>,
        /// Print the resolved configuration and exit
        #[arg(long)]
        print_config: bool,
    },
    /// Time-averaged distribution over steps 0..T-1 (float backend)
    Timeavg {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 4096)]
        tmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Total-variation convergence of the time average and the mixing time
    Mixing {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 4096)]
        tmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generating-sequence counts by endpoint and number of switches
    Paths {
        #[command(flatten)]
        walk: WalkArgs,
        /// Final chirality of the counted words
        #[arg(long, default_value_t = 0)]
        terminal: usize,
        /// Split counts by whether the first letter equals this chirality
        #[arg(long)]
        start_chirality: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Walsh sign sequence of length 2^level, one sign per line
    Walsh {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        caps: Option<String>,
    },
    /// Hadamard walk from |0, e> by the Walsh closed form, as scaled integers
    HadamardWalk {
        /// Degree of Gamma_n
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Character table of S_n as CSV
    Characters {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check orthogonality, dimensions and hook lengths
        #[arg(long)]
        check: bool,
        #[arg(long)]
        caps: Option<String>,
    },
    /// Cayley graph as DOT or JSON
    Graph {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of the dense walk matrix as CSV
    Spectrum {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification catalog
    Verify {
        /// Comma-separated groups or check ids
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// List checks without running them
        #[arg(long)]
        list: bool,
        #[arg(long)]
        caps: Option<String>,
        #[arg(long, hide = true)]
        corrupt_character_table: bool,
    },
}

pub fn run(cli: Cli) -> ExitCode {
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        // output closed early, e.g. piped into `head`
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn caps_from(text: Option<&str>) -> Result<Caps, CliError> {
    let caps = Caps::from_env()?;
    Ok(match text {
        Some(t) => caps.with_overrides(t)?,
        None => caps,
    })
}

fn with_output(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(fs::File::create(p)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_json(path: Option<&Path>, value: &impl serde::Serialize) -> Result<(), CliError> {
    with_output(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(io::Error::other)?;
        writeln!(w)?;
        Ok(())
    })
}

fn start_state<T: Amplitude>(graph: &CayleyGraph, start: &StartSpec) -> Result<WalkState<T>, CliError> {
    Ok(match start {
        StartSpec::Basis { s, g } => basis_state(graph, *s, g.rank() as usize)?,
        StartSpec::Uniform { g } => uniform_coin_state(graph, g.rank() as usize)?,
    })
}

fn evolve<'g, T: Amplitude>(graph: &'g CayleyGraph, config: &RunConfig) -> Result<(Walk<'g, T>, WalkState<T>), CliError> {
    let walk = Walk::with_shift(graph, &config.coin_operator()?, config.shift_permutation()?)?;
    let state = walk.evolve(&start_state(graph, &config.start)?, config.steps)?;
    Ok((walk, state))
}

fn require_float(config: &RunConfig, what: &str) -> Result<(), CliError> {
    if config.backend != Backend::Float {
        return Err(CliError::Validation(format!("{what} runs on the float backend only")));
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Walk {
            walk,
            out,
            amplitudes,
            print_config,
        } => {
            let config = walk.resolve()?;
            if print_config {
                print!("{config}");
                return Ok(());
            }
            let graph = config.graph()?;
            match config.backend {
                Backend::Float => {
                    let (_, state) = evolve::<Complex64>(&graph, &config)?;
                    finish_walk(&graph, &config, &state, position_distribution(&state), out, amplitudes, |z| {
                        json!({ "re": z.re, "im": z.im })
                    })
                }
                Backend::ExactRational => {
                    let (_, state) = evolve::<BigRational>(&graph, &config)?;
                    let dist = position_distribution(&state).to_f64();
                    finish_walk(&graph, &config, &state, dist, out, amplitudes, |q| json!(q.to_string()))
                }
                Backend::ScaledInteger => {
                    let (_, state) = evolve::<BigInt>(&graph, &config)?;
                    let dist = position_distribution(&state).to_f64();
                    finish_walk(&graph, &config, &state, dist, out, amplitudes, |k| json!(k.to_string()))
                }
            }
        }
        Command::Timeavg { walk, tmax, out } => {
            let config = walk.resolve()?;
            require_float(&config, "timeavg")?;
            let graph = config.graph()?;
            let w = Walk::<Complex64>::with_shift(&graph, &config.coin_operator()?, config.shift_permutation()?)?;
            let dist = time_averaged(&w, &start_state(&graph, &config.start)?, tmax)?;
            with_output(out.as_deref(), |o| Ok(write_distribution_csv(&graph, &dist, o)?))
        }
        Command::Mixing { walk, eps, tmax, out } => {
            let config = walk.resolve()?;
            require_float(&config, "mixing")?;
            let graph = config.graph()?;
            let w = Walk::<Complex64>::with_shift(&graph, &config.coin_operator()?, config.shift_permutation()?)?;
            let report = mixing_time(&w, &start_state(&graph, &config.start)?, eps, tmax)?;
            match report.mixing_time {
                Some(m) => eprintln!("mixing time M_{eps} = {m}, residual {:.3e}", report.residual),
                None => eprintln!("mixing time M_{eps} not reached within T_max = {tmax}"),
            }
            write_json(out.as_deref(), &report)
        }
        Command::Paths {
            walk,
            terminal,
            start_chirality,
            out,
        } => {
            let config = walk.resolve()?;
            let graph = config.graph()?;
            if let Some(s0) = start_chirality {
                if s0 >= graph.valency() {
                    return Err(CliError::Validation(format!(
                        "start chirality {s0} out of range for d = {}",
                        graph.valency()
                    )));
                }
            }
            let table = path_count_table(&graph, config.steps, terminal, &config.caps)?;
            write_json(out.as_deref(), &table.to_json(&graph, start_chirality))
        }
        Command::Walsh { level, out, caps } => {
            let seq = walsh_seq(level, &caps_from(caps.as_deref())?)?;
            with_output(out.as_deref(), |o| {
                for &s in seq.signs() {
                    writeln!(o, "{s}")?;
                }
                Ok(())
            })
        }
        Command::HadamardWalk { n, walk, out } => {
            let mut walk = walk;
            if let Some(n) = n {
                if walk.gens.is_none() {
                    walk.gens = Some(format!("gamma:{n}"));
                }
                walk.group.get_or_insert(format!("sn:{n}"));
            }
            walk.coin.get_or_insert_with(|| "hadamard".into());
            walk.backend.get_or_insert_with(|| "scaled".into());
            let config = walk.resolve()?;
            let graph = config.graph()?;
            let steps = u32::try_from(config.steps).map_err(|_| CliError::Validation("too many steps".into()))?;
            let amps = hadamard_amplitudes(&graph, steps, &config.caps)?;
            with_output(out.as_deref(), |o| {
                let mut w = csv::Writer::from_writer(o);
                w.write_record(["s", "g", "perm", "numerator", "scale_exponent"])?;
                for s in 0..2 {
                    for g in 0..graph.order() {
                        w.write_record([
                            s.to_string(),
                            g.to_string(),
                            graph.element(g).one_line(),
                            amps.get(s, g).to_string(),
                            amps.scale_exponent().to_string(),
                        ])?;
                    }
                }
                w.flush()?;
                Ok(())
            })
        }
        Command::Characters { n, out, check, caps } => {
            let table = CharacterTable::with_caps(n, &caps_from(caps.as_deref())?)?;
            with_output(out.as_deref(), |o| Ok(table.write_csv(o)?))?;
            if check {
                let report = table.check();
                eprintln!("{report:?}");
                if !report.all_hold() {
                    return Err(CliError::VerifyFailed(format!("character table of S_{n} fails its checks")));
                }
            }
            Ok(())
        }
        Command::Graph { walk, format, out } => {
            let config = walk.resolve()?;
            let graph = config.graph()?;
            match format {
                GraphFormat::Dot => with_output(out.as_deref(), |o| Ok(graph.write_dot(o)?)),
                GraphFormat::Json => {
                    let gens = graph.generators();
                    let value = json!({
                        "degree": graph.degree(),
                        "order": graph.order(),
                        "generators": (0..gens.len()).map(|s| json!({
                            "index": s,
                            "label": gens.labels()[s],
                            "perm": gens.get(s).one_line(),
                        })).collect::<Vec<_>>(),
                        "vertices": (0..graph.order()).map(|g| graph.element(g).one_line()).collect::<Vec<_>>(),
                        "edges": (0..gens.len()).flat_map(|s| {
                            graph.succ(s).iter().enumerate().map(move |(g, &h)| [g, h as usize, s])
                        }).collect::<Vec<_>>(),
                        "diameter": graph.diameter()?,
                        "conjugate_invariant": gens.is_conjugate_invariant(),
                    });
                    write_json(out.as_deref(), &value)
                }
            }
        }
        Command::Spectrum { walk, out } => {
            let config = walk.resolve()?;
            let graph = config.graph()?;
            let u = build_walk_matrix(&graph, &config.coin_operator()?, config.shift_permutation()?.as_ref(), &config.caps)?;
            let spectrum = walk_spectrum(&u)?;
            eprintln!(
                "{} eigenvalues, {} clusters, largest multiplicity {}",
                spectrum.eigenvalues.len(),
                spectrum.clusters.len(),
                spectrum.largest_multiplicity()
            );
            with_output(out.as_deref(), |o| Ok(spectrum.write_csv(o)?))
        }
        Command::Verify {
            only,
            jobs,
            list,
            caps,
            corrupt_character_table,
        } => {
            let checks = verify::select(only.as_deref()).map_err(CliError::Validation)?;
            if list {
                for c in &checks {
                    println!("{:<24} {:<12} {}", c.id, c.group, c.description);
                }
                return Ok(());
            }
            let options = verify::VerifyOptions {
                caps: caps_from(caps.as_deref())?,
                corrupt_table: corrupt_character_table,
            };
            let results = verify::run_checks(&checks, &options, jobs.max(1));
            let mut failed = 0;
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("{status}  {:<24} {:>9.3}s  {}", r.id, r.elapsed.as_secs_f64(), r.detail);
                failed += usize::from(!r.passed);
            }
            println!("{} of {} checks passed", results.len() - failed, results.len());
            if failed > 0 {
                return Err(CliError::VerifyFailed(format!("{failed} check(s) failed")));
            }
            Ok(())
        }
    }
}

fn finish_walk<T: Amplitude>(
    graph: &CayleyGraph,
    config: &RunConfig,
    state: &WalkState<T>,
    dist: caywalk_core::Distribution,
    out: Option<PathBuf>,
    amplitudes: Option<PathBuf>,
    value: impl Fn(&T) -> serde_json::Value,
) -> Result<(), CliError> {
    with_output(out.as_deref(), |o| Ok(write_distribution_csv(graph, &dist, o)?))?;
    if let Some(path) = amplitudes {
        let order = graph.order();
        let entries: Vec<_> = (0..state.valency() * order)
            .map(|i| {
                json!({
                    "s": i / order,
                    "g": i % order,
                    "perm": graph.element(i % order).one_line(),
                    "value": value(&state.amplitudes()[i]),
                })
            })
            .collect();
        let doc = json!({
            "config": config.to_string(),
            "backend": config.backend.name(),
            "steps": config.steps,
            "scale": state.scale().to_string(),
            "amplitudes": entries,
        });
        write_json(Some(&path), &doc)?;
    }
    Ok(())
}
