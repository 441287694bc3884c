//! Run configuration shared by the walk-based subcommands.
//!
//! A configuration has a canonical text form, one `key=value` per line:
//!
//! ```text
//! group=sn:4
//! gens=gamma
//! coin=grover
//! start=0,e
//! steps=10
//! backend=float
//! shift=standard
//! caps=degree=8,characters=10,sequences=10000000,walsh=26,hadamard=24,dense=4096
//! ```
//!
//! `--config FILE` reads this form; flags given on the command line
//! override the file.

use std::fmt;
use std::path::PathBuf;

use caywalk_core::engine::{Backend, ChiralityPermutation};
use caywalk_core::{Caps, CayleyGraph, CoinKind, CoinOperator, GeneratingSet, Permutation};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    /// {(1 2), (1 2 ... n)}
    Gamma,
    /// Every transposition of S_n.
    Transpositions,
    Cycles(Vec<Permutation>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoinSpec {
    Grover,
    Hadamard,
    Ix,
    Identity,
    Custom(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum StartSpec {
    /// |s, g>
    Basis { s: usize, g: Permutation },
    /// (1/sqrt(d)) sum_s |s, g>
    Uniform { g: Permutation },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShiftSpec {
    Standard,
    /// Reverses the chirality labels after each shift.
    FlipFlop,
    Map(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub degree: usize,
    pub gens: GenSpec,
    pub coin: CoinSpec,
    pub start: StartSpec,
    pub steps: usize,
    pub backend: Backend,
    pub shift: ShiftSpec,
    pub caps: Caps,
}

/// Unparsed settings; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawConfig {
    pub group: Option<String>,
    pub gens: Option<String>,
    pub coin: Option<String>,
    pub start: Option<String>,
    pub steps: Option<String>,
    pub backend: Option<String>,
    pub shift: Option<String>,
    pub caps: Option<String>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl RawConfig {
    pub fn from_text(text: &str) -> Result<RawConfig, CliError> {
        let mut raw = RawConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("line {}: expected key=value", lineno + 1)))?;
            let value = Some(value.trim().to_string());
            match key.trim() {
                "group" => raw.group = value,
                "gens" => raw.gens = value,
                "coin" => raw.coin = value,
                "start" => raw.start = value,
                "steps" => raw.steps = value,
                "backend" => raw.backend = value,
                "shift" => raw.shift = value,
                "caps" => raw.caps = value,
                other => return Err(invalid(format!("line {}: unknown key `{other}`", lineno + 1))),
            }
        }
        Ok(raw)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overridden_by(self, over: RawConfig) -> RawConfig {
        RawConfig {
            group: over.group.or(self.group),
            gens: over.gens.or(self.gens),
            coin: over.coin.or(self.coin),
            start: over.start.or(self.start),
            steps: over.steps.or(self.steps),
            backend: over.backend.or(self.backend),
            shift: over.shift.or(self.shift),
            caps: over.caps.or(self.caps),
        }
    }
}

fn parse_group(text: &str) -> Result<usize, CliError> {
    let n = text
        .strip_prefix("sn:")
        .or_else(|| text.strip_prefix("S"))
        .ok_or_else(|| invalid(format!("group `{text}`: expected sn:<n>")))?;
    n.parse().map_err(|_| invalid(format!("group `{text}`: bad degree")))
}

/// Returns the generator spec and the degree it names, if any.
fn parse_gens(text: &str) -> Result<(GenSpec, Option<usize>), CliError> {
    let (name, degree) = match text.split_once(':') {
        Some((name, n)) if name == "gamma" || name == "transpositions" => {
            let n = n.parse().map_err(|_| invalid(format!("gens `{text}`: bad degree")))?;
            (name, Some(n))
        }
        _ => (text, None),
    };
    match name {
        "gamma" => Ok((GenSpec::Gamma, degree)),
        "transpositions" => Ok((GenSpec::Transpositions, degree)),
        _ => Err(invalid(format!(
            "gens `{text}`: expected gamma[:n], transpositions[:n] or cycles:<c1>;<c2>;..."
        ))),
    }
}

fn parse_cycle_gens(n: usize, list: &str) -> Result<GenSpec, CliError> {
    let gens = list
        .split(';')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| Permutation::parse_cycles(n, c).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GenSpec::Cycles(gens))
}

fn parse_coin(text: &str) -> Result<CoinSpec, CliError> {
    match text {
        "grover" => Ok(CoinSpec::Grover),
        "hadamard" => Ok(CoinSpec::Hadamard),
        "ix" => Ok(CoinSpec::Ix),
        "identity" => Ok(CoinSpec::Identity),
        _ => match text.strip_prefix("custom:") {
            Some(path) if !path.is_empty() => Ok(CoinSpec::Custom(PathBuf::from(path))),
            _ => Err(invalid(format!(
                "coin `{text}`: expected grover, hadamard, ix, identity or custom:<file>"
            ))),
        },
    }
}

fn parse_start(n: usize, text: &str) -> Result<StartSpec, CliError> {
    if let Some(g) = text.strip_prefix("uniform:") {
        return Ok(StartSpec::Uniform {
            g: Permutation::parse_cycles(n, g)?,
        });
    }
    let (s, g) = text
        .split_once(',')
        .ok_or_else(|| invalid(format!("start `{text}`: expected <s>,<g> or uniform:<g>")))?;
    let s = s
        .trim()
        .parse()
        .map_err(|_| invalid(format!("start `{text}`: chirality must be an index")))?;
    Ok(StartSpec::Basis {
        s,
        g: Permutation::parse_cycles(n, g.trim())?,
    })
}

fn parse_backend(text: &str) -> Result<Backend, CliError> {
    match text {
        "float" => Ok(Backend::Float),
        "exact" | "exact-rational" => Ok(Backend::ExactRational),
        "scaled" | "scaled-integer" => Ok(Backend::ScaledInteger),
        _ => Err(invalid(format!("backend `{text}`: expected float, exact or scaled"))),
    }
}

fn parse_shift(text: &str) -> Result<ShiftSpec, CliError> {
    match text {
        "standard" => Ok(ShiftSpec::Standard),
        "flip-flop" => Ok(ShiftSpec::FlipFlop),
        _ => {
            let map = text
                .strip_prefix("map:")
                .ok_or_else(|| invalid(format!("shift `{text}`: expected standard, flip-flop or map:<i,j,...>")))?;
            let map = map
                .split(',')
                .map(|i| i.trim().parse().map_err(|_| invalid(format!("shift `{text}`: bad index"))))
                .collect::<Result<Vec<usize>, _>>()?;
            Ok(ShiftSpec::Map(map))
        }
    }
}

impl RunConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<RunConfig, CliError> {
        let (gens, named_degree) = match raw.gens.as_deref() {
            None => (None, None),
            Some(text) if text.starts_with("cycles:") => (None, None),
            Some(text) => {
                let (gen_spec, n) = parse_gens(text)?;
                (Some(gen_spec), n)
            }
        };
        let degree = match (raw.group.as_deref().map(parse_group).transpose()?, named_degree) {
            (Some(g), Some(n)) if g != n => {
                return Err(invalid(format!("group has degree {g} but gens name degree {n}")))
            }
            (Some(g), _) => g,
            (None, Some(n)) => n,
            (None, None) => 4,
        };
        let gens = match (gens, raw.gens.as_deref()) {
            (Some(gen_spec), _) => gen_spec,
            (None, Some(text)) => parse_cycle_gens(degree, &text["cycles:".len()..])?,
            (None, None) => GenSpec::Gamma,
        };
        let caps = match raw.caps.as_deref() {
            Some(text) => Caps::default().with_overrides(text)?,
            None => Caps::from_env()?,
        };
        let config = RunConfig {
            degree,
            gens,
            coin: raw.coin.as_deref().map(parse_coin).transpose()?.unwrap_or(CoinSpec::Grover),
            start: match raw.start.as_deref() {
                Some(text) => parse_start(degree, text)?,
                None => StartSpec::Basis {
                    s: 0,
                    g: Permutation::identity(degree),
                },
            },
            steps: match raw.steps.as_deref() {
                Some(text) => text.parse().map_err(|_| invalid(format!("steps `{text}`: not a count")))?,
                None => 10,
            },
            backend: raw.backend.as_deref().map(parse_backend).transpose()?.unwrap_or(Backend::Float),
            shift: raw.shift.as_deref().map(parse_shift).transpose()?.unwrap_or(ShiftSpec::Standard),
            caps,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn from_text(text: &str) -> Result<RunConfig, CliError> {
        RunConfig::from_raw(&RawConfig::from_text(text)?)
    }

    pub fn generating_set(&self) -> Result<GeneratingSet, CliError> {
        let n = self.degree;
        Ok(match &self.gens {
            GenSpec::Gamma => GeneratingSet::gamma(n)?,
            GenSpec::Transpositions => GeneratingSet::transpositions(n)?,
            GenSpec::Cycles(gens) => GeneratingSet::new(gens.clone())?,
        })
    }

    /// Number of generators, without building the graph.
    pub fn valency(&self) -> Result<usize, CliError> {
        Ok(match &self.gens {
            GenSpec::Gamma => 2,
            GenSpec::Transpositions => self.degree * (self.degree.saturating_sub(1)) / 2,
            GenSpec::Cycles(gens) => gens.len(),
        })
    }

    pub fn graph(&self) -> Result<CayleyGraph, CliError> {
        Ok(CayleyGraph::with_caps(self.generating_set()?, &self.caps)?)
    }

    pub fn coin_operator(&self) -> Result<CoinOperator, CliError> {
        let d = self.valency()?;
        Ok(match &self.coin {
            CoinSpec::Grover => CoinOperator::grover(d)?,
            CoinSpec::Hadamard => CoinOperator::hadamard(),
            CoinSpec::Ix => CoinOperator::ix(),
            CoinSpec::Identity => CoinOperator::identity(d),
            CoinSpec::Custom(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| invalid(format!("coin file {}: {e}", path.display())))?;
                CoinOperator::from_json(&text)?
            }
        })
    }

    pub fn shift_permutation(&self) -> Result<Option<ChiralityPermutation>, CliError> {
        let d = self.valency()?;
        match &self.shift {
            ShiftSpec::Standard => Ok(None),
            ShiftSpec::FlipFlop => Ok(Some(ChiralityPermutation::reversal(d))),
            ShiftSpec::Map(map) => {
                if map.len() != d {
                    return Err(invalid(format!("shift map has {} entries for d = {d}", map.len())));
                }
                Ok(Some(ChiralityPermutation::new(map.clone())?))
            }
        }
    }

    /// Checks everything that can be checked without building the graph.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.degree > self.caps.degree {
            return Err(invalid(format!(
                "degree {} exceeds the cap {} (raise it with CAYWALK_CAPS=degree=<n>)",
                self.degree, self.caps.degree
            )));
        }
        let gens = self.generating_set()?;
        let d = gens.len();
        match self.coin {
            CoinSpec::Hadamard | CoinSpec::Ix if d != 2 => {
                return Err(invalid(format!("the {} coin needs d = 2, but the generating set has d = {d}", self.coin)))
            }
            CoinSpec::Grover if d < 2 => {
                return Err(invalid(format!("the Grover coin needs d >= 2, got d = {d}")));
            }
            _ => {}
        }
        let start_s = match &self.start {
            StartSpec::Basis { s, .. } => Some(*s),
            StartSpec::Uniform { .. } => None,
        };
        if let Some(s) = start_s.filter(|&s| s >= d) {
            return Err(invalid(format!("start chirality {s} is out of range for d = {d}")));
        }
        let kind = match self.coin {
            CoinSpec::Grover => Some(CoinKind::Grover),
            CoinSpec::Hadamard => Some(CoinKind::Hadamard),
            CoinSpec::Ix => Some(CoinKind::Ix),
            CoinSpec::Identity | CoinSpec::Custom(_) => None,
        };
        match (self.backend, kind) {
            (Backend::ExactRational, Some(CoinKind::Hadamard | CoinKind::Ix)) => {
                return Err(invalid(format!(
                    "the {} coin has irrational entries; use --backend float or scaled",
                    self.coin
                )))
            }
            (Backend::ScaledInteger, Some(CoinKind::Grover | CoinKind::Ix)) => {
                return Err(invalid(format!(
                    "the {} coin has no scaled-integer form; use --backend float or exact",
                    self.coin
                )))
            }
            _ => {}
        }
        self.shift_permutation()?;
        Ok(())
    }
}

impl fmt::Display for CoinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoinSpec::Grover => f.write_str("grover"),
            CoinSpec::Hadamard => f.write_str("hadamard"),
            CoinSpec::Ix => f.write_str("ix"),
            CoinSpec::Identity => f.write_str("identity"),
            CoinSpec::Custom(path) => write!(f, "custom:{}", path.display()),
        }
    }
}

fn element(p: &Permutation) -> String {
    if p.is_identity() {
        "e".into()
    } else {
        p.cycle_notation()
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group=sn:{}", self.degree)?;
        match &self.gens {
            GenSpec::Gamma => writeln!(f, "gens=gamma")?,
            GenSpec::Transpositions => writeln!(f, "gens=transpositions")?,
            GenSpec::Cycles(gens) => {
                let list: Vec<String> = gens.iter().map(|g| g.cycle_notation()).collect();
                writeln!(f, "gens=cycles:{}", list.join(";"))?
            }
        }
        writeln!(f, "coin={}", self.coin)?;
        match &self.start {
            StartSpec::Basis { s, g } => writeln!(f, "start={s},{}", element(g))?,
            StartSpec::Uniform { g } => writeln!(f, "start=uniform:{}", element(g))?,
        }
        writeln!(f, "steps={}", self.steps)?;
        let backend = match self.backend {
            Backend::Float => "float",
            Backend::ExactRational => "exact",
            Backend::ScaledInteger => "scaled",
        };
        writeln!(f, "backend={backend}")?;
        match &self.shift {
            ShiftSpec::Standard => writeln!(f, "shift=standard")?,
            ShiftSpec::FlipFlop => writeln!(f, "shift=flip-flop")?,
            ShiftSpec::Map(map) => {
                let list: Vec<String> = map.iter().map(usize::to_string).collect();
                writeln!(f, "shift=map:{}", list.join(","))?
            }
        }
        writeln!(f, "caps={}", self.caps)
    }
}
