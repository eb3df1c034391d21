//! Run configuration: one TOML file describing the signal model, the game,
//! solver knobs, and output paths. All solver knobs have documented defaults,
//! so a minimal config is about ten lines.
//!
//! ```toml
//! [model]
//! kind = "uniform"          # uniform | beta | discrete | curve
//!
//! [game]
//! kind = "two"              # single | two | many | sequential | correlated | uncertain_bias
//! cost = 0.05
//! senders = [ { p = 0.8, bias = "up" }, { p = 0.6, bias = "up" } ]
//! ```
//!
//! Model kinds:
//! - `uniform`: uniform belief density; optional `lo`/`hi` support bounds.
//! - `beta`: symmetric Beta family, requires `rho > 0`.
//! - `discrete`: requires `prior` and `table` rows `[signal, p0, p1]`.
//! - `curve`: requires `curve` samples `[s, psi(s)]` of a target
//!   nondisclosure curve; a cubic spline through the samples is handed to
//!   the curve-construction solver.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::belief::{Bias, SenderSpec};
use crate::error::SolveError;
use crate::num::interp::CubicSpline;
use crate::signal::{
    beta_precision_model, model_from_target_curve, ContinuousSignalModel, DiscreteAtom,
    DiscreteSignalModel, SignalModel,
};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub game: GameSpec,
    #[serde(default)]
    pub solver: SolverOptions,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub rho: Option<f64>,
    pub prior: Option<f64>,
    /// Discrete table rows (signal, prob given state 0, prob given state 1).
    pub table: Option<Vec<[f64; 3]>>,
    /// Samples (s, psi(s)) of a target nondisclosure curve.
    pub curve: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Uniform,
    Beta,
    Discrete,
    Curve,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpec {
    pub kind: GameKind,
    pub cost: f64,
    pub senders: Vec<SenderEntry>,
    /// Probability of the upward type in the uncertain-bias game.
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    Single,
    Two,
    Many,
    Sequential,
    Correlated,
    UncertainBias,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SenderEntry {
    pub p: f64,
    pub bias: Bias,
}

impl From<SenderEntry> for SenderSpec {
    fn from(e: SenderEntry) -> Self {
        SenderSpec { informed_prob: e.p, bias: e.bias }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverOptions {
    /// Master seed for every randomized path.
    pub seed: u64,
    /// Worker threads for sweeps and simulation; 0 = machine parallelism.
    pub threads: usize,
    /// Root-refinement tolerance.
    pub tolerance: f64,
    /// Sign-change scan resolution.
    pub scan_points: usize,
    /// Grid-enumeration resolution per axis.
    pub grid_resolution: usize,
    /// Monte Carlo draws for `simulate`.
    pub mc_draws: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            seed: 7_240_817,
            threads: 0,
            tolerance: 1e-9,
            scan_points: 2048,
            grid_resolution: 512,
            mc_draws: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: Vec<AxisSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    P1,
    P2,
    C,
    Rho,
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.from];
        }
        (0..self.steps)
            .map(|k| self.from + (self.to - self.from) * k as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, SolveError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SolveError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| SolveError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_str_for_tests(text: &str) -> Result<Self, SolveError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| SolveError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), SolveError> {
        let need = match self.game.kind {
            GameKind::Single | GameKind::UncertainBias => 1,
            GameKind::Two | GameKind::Sequential | GameKind::Correlated => 2,
            GameKind::Many => self.game.senders.len().max(2),
        };
        if self.game.senders.len() != need {
            return Err(SolveError::Config(format!(
                "game kind needs {need} sender(s), config lists {}",
                self.game.senders.len()
            )));
        }
        for (k, s) in self.game.senders.iter().enumerate() {
            if !(s.p > 0.0 && s.p <= 1.0) {
                return Err(SolveError::Config(format!("sender {k}: p = {} outside (0, 1]", s.p)));
            }
        }
        if self.game.kind == GameKind::UncertainBias {
            match self.game.lambda {
                Some(l) if (0.0..=1.0).contains(&l) => {}
                Some(l) => return Err(SolveError::Config(format!("lambda = {l} outside [0, 1]"))),
                None => return Err(SolveError::Config("uncertain_bias requires lambda".into())),
            }
        }
        if !self.game.cost.is_finite() {
            return Err(SolveError::Config("cost must be finite".into()));
        }
        Ok(())
    }

    /// Builds the signal model the configuration describes.
    pub fn build_model(&self) -> Result<SignalModel, SolveError> {
        let m = &self.model;
        match m.kind {
            ModelKind::Uniform => {
                let lo = m.lo.unwrap_or(0.0);
                let hi = m.hi.unwrap_or(1.0);
                Ok(ContinuousSignalModel::uniform_belief(lo, hi)
                    .map_err(|e| SolveError::Config(e.to_string()))?
                    .into())
            }
            ModelKind::Beta => {
                let rho = m
                    .rho
                    .ok_or_else(|| SolveError::Config("beta model requires rho".into()))?;
                Ok(beta_precision_model(rho)
                    .map_err(|e| SolveError::Config(e.to_string()))?
                    .into())
            }
            ModelKind::Discrete => {
                let prior = m
                    .prior
                    .ok_or_else(|| SolveError::Config("discrete model requires prior".into()))?;
                let table = m
                    .table
                    .as_ref()
                    .ok_or_else(|| SolveError::Config("discrete model requires table".into()))?;
                let atoms: Vec<DiscreteAtom> = table
                    .iter()
                    .map(|row| DiscreteAtom {
                        value: row[0],
                        prob_given_0: row[1],
                        prob_given_1: row[2],
                    })
                    .collect();
                let model = DiscreteSignalModel::new(prior, atoms).map_err(|e| {
                    SolveError::Config(format!("discrete table: {e}"))
                })?;
                Ok(model.into())
            }
            ModelKind::Curve => {
                let samples = m
                    .curve
                    .as_ref()
                    .ok_or_else(|| SolveError::Config("curve model requires curve samples".into()))?;
                if samples.len() < 4 {
                    return Err(SolveError::Config("curve needs at least 4 samples".into()));
                }
                let xs: Vec<f64> = samples.iter().map(|r| r[0]).collect();
                let ys: Vec<f64> = samples.iter().map(|r| r[1]).collect();
                let (lo, hi) = (xs[0], *xs.last().unwrap());
                let spline = CubicSpline::new(xs, ys);
                let spline2 = spline.clone();
                let built = model_from_target_curve(
                    move |s| spline.eval(s),
                    move |s| spline2.derivative(s),
                    lo,
                    hi,
                )
                .map_err(|e| SolveError::Config(format!("curve model: {e}")))?;
                Ok(built.model.into())
            }
        }
    }

    pub fn senders(&self) -> Vec<SenderSpec> {
        self.game.senders.iter().map(|&e| e.into()).collect()
    }
}
