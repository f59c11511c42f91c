//! Flat `key=value` experiment configuration. Precedence is defaults, then
//! config file, then command-line flags. Unknown keys are hard errors;
//! recognized keys that a given command does not consume are allowed, so a
//! snapshot written by one command can seed another.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    Spectra,
    RmtCompare,
    KickedTop,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Run => "run",
            Command::Spectra => "spectra",
            Command::RmtCompare => "rmt-compare",
            Command::KickedTop => "kicked-top",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Haar,
    FixedHaar,
    Diagonal,
    KickedTop,
}

impl Ensemble {
    fn parse(v: &str) -> Result<Self, String> {
        match v {
            "haar" => Ok(Ensemble::Haar),
            "fixed-haar" => Ok(Ensemble::FixedHaar),
            "diagonal" => Ok(Ensemble::Diagonal),
            "kicked-top" => Ok(Ensemble::KickedTop),
            _ => Err(format!(
                "ensemble must be haar, fixed-haar, diagonal, or kicked-top, got '{v}'"
            )),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Ensemble::Haar => "haar",
            Ensemble::FixedHaar => "fixed-haar",
            Ensemble::Diagonal => "diagonal",
            Ensemble::KickedTop => "kicked-top",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameChoice {
    Random,
    Computational,
}

impl FrameChoice {
    fn parse(v: &str) -> Result<Self, String> {
        match v {
            "random" => Ok(FrameChoice::Random),
            "computational" => Ok(FrameChoice::Computational),
            _ => Err(format!("frame must be random or computational, got '{v}'")),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FrameChoice::Random => "random",
            FrameChoice::Computational => "computational",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableChoice {
    Jx,
    Jz,
    /// Jz conjugated by a fresh Haar unitary drawn per trial.
    Rotated,
}

impl ObservableChoice {
    fn parse(v: &str) -> Result<Self, String> {
        match v {
            "jx" => Ok(ObservableChoice::Jx),
            "jz" => Ok(ObservableChoice::Jz),
            "rotated" => Ok(ObservableChoice::Rotated),
            _ => Err(format!("observable must be jx, jz, or rotated, got '{v}'")),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ObservableChoice::Jx => "jx",
            ObservableChoice::Jz => "jz",
            ObservableChoice::Rotated => "rotated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    HaarPure,
    HsMixed,
}

impl StateFamily {
    fn parse(v: &str) -> Result<Self, String> {
        match v {
            "haar-pure" => Ok(StateFamily::HaarPure),
            "hs-mixed" => Ok(StateFamily::HsMixed),
            _ => Err(format!("state_family must be haar-pure or hs-mixed, got '{v}'")),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            StateFamily::HaarPure => "haar-pure",
            StateFamily::HsMixed => "hs-mixed",
        }
    }
}

/// Partially specified configuration: every field optional, merged by layer.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub dim: Option<usize>,
    pub j: Option<f64>,
    pub ensemble: Option<Ensemble>,
    pub frame: Option<FrameChoice>,
    pub observable: Option<ObservableChoice>,
    pub k0: Option<f64>,
    pub k0_regular: Option<f64>,
    pub k0_chaotic: Option<f64>,
    pub steps: Option<usize>,
    pub sigma: Option<f64>,
    pub epsilon: Option<f64>,
    pub trials: Option<usize>,
    pub state_family: Option<StateFamily>,
    pub stride: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub plots: Option<bool>,
}

fn parse_usize(key: &str, v: &str) -> Result<usize, String> {
    v.parse::<usize>()
        .map_err(|_| format!("{key} must be a non-negative integer, got '{v}'"))
}

fn parse_f64(key: &str, v: &str) -> Result<f64, String> {
    let x: f64 = v
        .parse()
        .map_err(|_| format!("{key} must be a number, got '{v}'"))?;
    if !x.is_finite() {
        return Err(format!("{key} must be finite, got '{v}'"));
    }
    Ok(x)
}

fn parse_bool_switch(key: &str, v: &str) -> Result<bool, String> {
    match v {
        "on" => Ok(true),
        "off" => Ok(false),
        _ => Err(format!("{key} must be on or off, got '{v}'")),
    }
}

impl RawConfig {
    /// Assigns one `key=value` pair; unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "dim" => self.dim = Some(parse_usize(key, value)?),
            "j" => self.j = Some(parse_f64(key, value)?),
            "ensemble" => self.ensemble = Some(Ensemble::parse(value)?),
            "frame" => self.frame = Some(FrameChoice::parse(value)?),
            "observable" => self.observable = Some(ObservableChoice::parse(value)?),
            "k0" => self.k0 = Some(parse_f64(key, value)?),
            "k0_regular" => self.k0_regular = Some(parse_f64(key, value)?),
            "k0_chaotic" => self.k0_chaotic = Some(parse_f64(key, value)?),
            "steps" => self.steps = Some(parse_usize(key, value)?),
            "sigma" => self.sigma = Some(parse_f64(key, value)?),
            "epsilon" => self.epsilon = Some(parse_f64(key, value)?),
            "trials" => self.trials = Some(parse_usize(key, value)?),
            "state_family" => self.state_family = Some(StateFamily::parse(value)?),
            "stride" => self.stride = Some(parse_usize(key, value)?),
            "seed" => {
                self.seed = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| format!("seed must be an unsigned integer, got '{value}'"))?,
                )
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "plots" => self.plots = Some(parse_bool_switch(key, value)?),
            _ => return Err(format!("unknown config key '{key}'")),
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<RawConfig, AppError> {
        let mut raw = RawConfig::default();
        let mut seen = HashSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(AppError::Config(format!(
                    "line {}: expected key=value, got '{line}'",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(AppError::Config(format!(
                    "line {}: duplicate key '{key}'",
                    lineno + 1
                )));
            }
            raw.set(key, value)
                .map_err(|msg| AppError::Config(format!("line {}: {msg}", lineno + 1)))?;
        }
        Ok(raw)
    }

    pub fn from_file(path: &Path) -> Result<RawConfig, AppError> {
        let text = fs::read_to_string(path).map_err(|e| {
            AppError::Config(format!("cannot read config file {}: {e}", path.display()))
        })?;
        RawConfig::parse_str(&text)
    }

    /// Layers `over` on top of `self`; `over` wins wherever both are set.
    pub fn merge(mut self, over: RawConfig) -> RawConfig {
        macro_rules! take {
            ($field:ident) => {
                if over.$field.is_some() {
                    self.$field = over.$field;
                }
            };
        }
        take!(dim);
        take!(j);
        take!(ensemble);
        take!(frame);
        take!(observable);
        take!(k0);
        take!(k0_regular);
        take!(k0_chaotic);
        take!(steps);
        take!(sigma);
        take!(epsilon);
        take!(trials);
        take!(state_family);
        take!(stride);
        take!(seed);
        take!(out);
        take!(plots);
        self
    }
}

/// Fully resolved configuration for one command invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub command: Command,
    pub dim: usize,
    pub ensemble: Ensemble,
    pub frame: FrameChoice,
    pub observable: ObservableChoice,
    pub k0: Option<f64>,
    pub k0_regular: f64,
    pub k0_chaotic: f64,
    pub steps: usize,
    pub sigma: f64,
    pub epsilon: f64,
    pub trials: usize,
    pub state_family: StateFamily,
    pub stride: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub plots: bool,
}

fn cfg_err(msg: String) -> AppError {
    AppError::Config(msg)
}

pub fn resolve(raw: &RawConfig, command: Command) -> Result<Config, AppError> {
    let dim = match (raw.dim, raw.j) {
        (Some(_), Some(_)) => {
            return Err(cfg_err("set either dim or j, not both".to_string()));
        }
        (Some(d), None) => d,
        (None, Some(j)) => {
            let two_j = 2.0 * j;
            if j <= 0.0 || (two_j - two_j.round()).abs() > 1e-9 {
                return Err(cfg_err(format!(
                    "j must be a positive integer or half-integer, got {j}"
                )));
            }
            two_j.round() as usize + 1
        }
        (None, None) => {
            return Err(cfg_err("dim (or j) is required".to_string()));
        }
    };
    if dim < 2 {
        return Err(cfg_err(format!("dim must be at least 2, got {dim}")));
    }

    let ensemble = match command {
        Command::KickedTop => Ensemble::KickedTop,
        _ => raw.ensemble.unwrap_or(Ensemble::Haar),
    };
    let observable = match command {
        Command::KickedTop => ObservableChoice::Jz,
        _ => raw.observable.unwrap_or(ObservableChoice::Jx),
    };
    let frame = raw.frame.unwrap_or(FrameChoice::Random);
    let steps = raw.steps.unwrap_or(6 * dim * dim);
    if steps == 0 {
        return Err(cfg_err("steps must be positive".to_string()));
    }
    let sigma = raw.sigma.unwrap_or(1.0);
    if sigma < 0.0 {
        return Err(cfg_err(format!("sigma must be non-negative, got {sigma}")));
    }
    let epsilon = raw.epsilon.unwrap_or((dim * dim) as f64);
    if epsilon < 0.0 {
        return Err(cfg_err(format!("epsilon must be non-negative, got {epsilon}")));
    }
    let trials = raw.trials.unwrap_or(match command {
        Command::KickedTop => 10,
        _ => 50,
    });
    if trials == 0 {
        return Err(cfg_err("trials must be positive".to_string()));
    }
    let stride = raw.stride.unwrap_or_else(|| (steps / 200).max(1));
    if stride == 0 {
        return Err(cfg_err("stride must be positive".to_string()));
    }
    let k0_regular = raw.k0_regular.unwrap_or(0.5);
    let k0_chaotic = raw.k0_chaotic.unwrap_or(7.0);

    match command {
        Command::Spectra | Command::RmtCompare => {
            if sigma == 0.0 {
                return Err(cfg_err(format!(
                    "{} needs sigma > 0: the inverse covariance is the design Gram matrix \
                     divided by sigma^2",
                    command.name()
                )));
            }
        }
        _ => {}
    }
    if command == Command::RmtCompare
        && !matches!(ensemble, Ensemble::Haar | Ensemble::Diagonal)
    {
        return Err(cfg_err(format!(
            "rmt-compare supports ensemble=haar (Marchenko-Pastur) or ensemble=diagonal \
             (Porter-Thomas), got {}",
            ensemble.as_str()
        )));
    }
    if ensemble == Ensemble::KickedTop && command != Command::KickedTop && raw.k0.is_none() {
        return Err(cfg_err(
            "ensemble=kicked-top needs k0 (kick strength)".to_string(),
        ));
    }

    Ok(Config {
        command,
        dim,
        ensemble,
        frame,
        observable,
        k0: raw.k0,
        k0_regular,
        k0_chaotic,
        steps,
        sigma,
        epsilon,
        trials,
        state_family: raw.state_family.unwrap_or(StateFamily::HaarPure),
        stride,
        seed: raw.seed.unwrap_or(0),
        out: raw.out.clone().unwrap_or_else(|| PathBuf::from("tomolab-out")),
        plots: raw.plots.unwrap_or(false),
    })
}

impl Config {
    /// Spin quantum number for the configured dimension, d = 2j + 1.
    pub fn spin_j(&self) -> f64 {
        (self.dim - 1) as f64 / 2.0
    }

    pub fn dim_op(&self) -> usize {
        self.dim * self.dim - 1
    }

    /// Serializes the resolved configuration so the exact run can be repeated
    /// with `--config <snapshot>`.
    pub fn snapshot(&self) -> String {
        let mut s = String::from("# resolved tomolab configuration\n");
        let _ = writeln!(s, "dim={}", self.dim);
        let _ = writeln!(s, "ensemble={}", self.ensemble.as_str());
        let _ = writeln!(s, "frame={}", self.frame.as_str());
        let _ = writeln!(s, "observable={}", self.observable.as_str());
        if let Some(k0) = self.k0 {
            let _ = writeln!(s, "k0={k0}");
        }
        let _ = writeln!(s, "k0_regular={}", self.k0_regular);
        let _ = writeln!(s, "k0_chaotic={}", self.k0_chaotic);
        let _ = writeln!(s, "steps={}", self.steps);
        let _ = writeln!(s, "sigma={}", self.sigma);
        let _ = writeln!(s, "epsilon={}", self.epsilon);
        let _ = writeln!(s, "trials={}", self.trials);
        let _ = writeln!(s, "state_family={}", self.state_family.as_str());
        let _ = writeln!(s, "stride={}", self.stride);
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "out={}", self.out.display());
        let _ = writeln!(s, "plots={}", if self.plots { "on" } else { "off" });
        s
    }
}
