//! Flag, file and default merging into a validated [`RunConfig`].

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sio_core::quadrature::DEFAULT_NODES;
use sio_core::sio::{NonConvergence, DEFAULT_FP_TOL, DEFAULT_MAX_FP_ITERS};
use sio_core::stability::{Window, DEFAULT_RESOLUTION};

use crate::args::{Format, IntegralMode, SolverArgs, StabilityArgs};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Table,
    Order,
    Stability,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

impl OneOrMany {
    fn into_vec(self) -> Vec<usize> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Resolution {
    Square(usize),
    Pair([usize; 2]),
}

/// Keys accepted in the `--config` TOML file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    problem: Option<String>,
    m: Option<OneOrMany>,
    h: Option<f64>,
    steps: Option<usize>,
    fp_tol: Option<f64>,
    max_fp_iters: Option<usize>,
    quad_nodes: Option<usize>,
    integral: Option<IntegralMode>,
    continue_on_nonconvergence: Option<bool>,
    output: Option<PathBuf>,
    format: Option<Format>,
    window: Option<[f64; 4]>,
    res: Option<Resolution>,
    taylor_p: Option<OneOrMany>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    fn load_opt(path: Option<&Path>) -> Result<Self, CliError> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub problem: Option<String>,
    /// One entry except for stability, which may carry several.
    pub m: Vec<usize>,
    pub h: f64,
    pub n_steps: usize,
    pub fp_tol: f64,
    pub max_fp_iters: usize,
    pub quad_nodes: usize,
    pub integral: IntegralMode,
    pub on_nonconvergence: NonConvergence,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub window: Window,
    pub resolution: (usize, usize),
    pub taylor_p: Vec<usize>,
}

impl RunConfig {
    fn defaults(command: CommandKind) -> Self {
        RunConfig {
            command,
            problem: None,
            m: vec![3],
            h: 0.1,
            n_steps: 5,
            fp_tol: DEFAULT_FP_TOL,
            max_fp_iters: DEFAULT_MAX_FP_ITERS,
            quad_nodes: DEFAULT_NODES,
            integral: IntegralMode::Auto,
            on_nonconvergence: NonConvergence::Abort,
            output: None,
            format: Format::Csv,
            window: Window::default(),
            resolution: DEFAULT_RESOLUTION,
            taylor_p: Vec::new(),
        }
    }

    pub fn from_solver_args(command: CommandKind, args: &SolverArgs) -> Result<Self, CliError> {
        let file = FileConfig::load_opt(args.common.config.as_deref())?;
        let mut cfg = Self::defaults(command);
        cfg.apply_file(file)?;
        if let Some(p) = &args.problem {
            cfg.problem = Some(p.clone());
        }
        if let Some(m) = args.m {
            cfg.m = vec![m];
        }
        set(&mut cfg.h, args.h);
        set(&mut cfg.n_steps, args.steps);
        set(&mut cfg.fp_tol, args.fp_tol);
        set(&mut cfg.max_fp_iters, args.max_fp_iters);
        set(&mut cfg.quad_nodes, args.quad_nodes);
        set(&mut cfg.integral, args.integral);
        if args.continue_on_nonconvergence {
            cfg.on_nonconvergence = NonConvergence::Continue;
        }
        if let Some(o) = &args.common.output {
            cfg.output = Some(o.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_stability_args(args: &StabilityArgs) -> Result<Self, CliError> {
        let file = FileConfig::load_opt(args.common.config.as_deref())?;
        let mut cfg = Self::defaults(CommandKind::Stability);
        cfg.apply_file(file)?;
        if !args.m.is_empty() {
            cfg.m = args.m.clone();
        }
        if !args.taylor_p.is_empty() {
            cfg.taylor_p = args.taylor_p.clone();
        }
        if let Some(w) = &args.window {
            cfg.window = parse_window(w)?;
        }
        if let Some(r) = &args.res {
            cfg.resolution = parse_resolution(r)?;
        }
        set(&mut cfg.format, args.format);
        if let Some(o) = &args.common.output {
            cfg.output = Some(o.clone());
        }
        // Taylor regions alone are fine; the default SIO degree only fills in
        // when nothing was asked for.
        if !args.taylor_p.is_empty() && args.m.is_empty() {
            cfg.m.clear();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, file: FileConfig) -> Result<(), CliError> {
        if file.problem.is_some() {
            self.problem = file.problem;
        }
        if let Some(m) = file.m {
            self.m = m.into_vec();
        }
        set(&mut self.h, file.h);
        set(&mut self.n_steps, file.steps);
        set(&mut self.fp_tol, file.fp_tol);
        set(&mut self.max_fp_iters, file.max_fp_iters);
        set(&mut self.quad_nodes, file.quad_nodes);
        set(&mut self.integral, file.integral);
        if file.continue_on_nonconvergence == Some(true) {
            self.on_nonconvergence = NonConvergence::Continue;
        }
        if file.output.is_some() {
            self.output = file.output;
        }
        set(&mut self.format, file.format);
        if let Some([a, b, c, d]) = file.window {
            self.window = Window::new(a, b, c, d).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        match file.res {
            Some(Resolution::Square(n)) => self.resolution = (n, n),
            Some(Resolution::Pair([nx, ny])) => self.resolution = (nx, ny),
            None => {}
        }
        if let Some(p) = file.taylor_p {
            self.taylor_p = p.into_vec();
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if self.command != CommandKind::Stability {
            if self.m.len() != 1 {
                return usage(format!("exactly one --m expected, got {}", self.m.len()));
            }
            if self.problem.is_none() {
                return usage("--problem is required".into());
            }
        }
        if self.m.contains(&0) {
            return usage("--m must be at least 1".into());
        }
        if self.taylor_p.contains(&0) {
            return usage("--taylor-p must be at least 1".into());
        }
        if self.h == 0.0 || !self.h.is_finite() {
            return usage(format!("--h must be finite and nonzero, got {}", self.h));
        }
        if self.n_steps == 0 {
            return usage("--steps must be at least 1".into());
        }
        if !self.fp_tol.is_finite() || self.fp_tol <= 0.0 {
            return usage(format!("--fp-tol must be positive, got {}", self.fp_tol));
        }
        if self.max_fp_iters == 0 {
            return usage("--max-fp-iters must be at least 1".into());
        }
        if !(1..=8).contains(&self.quad_nodes) {
            return usage(format!("--quad-nodes must be between 1 and 8, got {}", self.quad_nodes));
        }
        if self.resolution.0 < 2 || self.resolution.1 < 2 {
            return usage(format!(
                "--res must be at least 2 per axis, got {}x{}",
                self.resolution.0, self.resolution.1
            ));
        }
        Ok(())
    }

    /// The single SIO degree of a non-stability command.
    pub fn degree(&self) -> usize {
        self.m[0]
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

pub fn parse_window(s: &str) -> Result<Window, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("--window {s:?}: {e}")))?;
    match parts[..] {
        [a, b, c, d] => Window::new(a, b, c, d).map_err(|e| CliError::Usage(e.to_string())),
        _ => Err(CliError::Usage(format!("--window needs four numbers, got {s:?}"))),
    }
}

pub fn parse_resolution(s: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("--res {s:?}: {e}")))?;
    match parts[..] {
        [n] => Ok((n, n)),
        [nx, ny] => Ok((nx, ny)),
        _ => Err(CliError::Usage(format!("--res takes N or NX,NY, got {s:?}"))),
    }
}
