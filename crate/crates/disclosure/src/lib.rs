//! Numerical equilibrium engine for voluntary-disclosure games with message
//! costs: one or more biased senders hold verifiable signals about a binary
//! state and choose what to reveal to a decision maker, paying a cost for
//! disclosure (c > 0) or concealment (c < 0).
//!
//! The crate computes:
//! - nondisclosure beliefs and the posterior transform across interim
//!   beliefs ([`belief`]);
//! - single-sender equilibria, welfare, comparative statics, and the
//!   uncertain-bias variant ([`single`]);
//! - multi-sender best responses and extremal equilibria by monotone
//!   fixed-point iteration, grid enumeration, many senders, sequential
//!   reporting, perfectly correlated signals, and nonlinear utilities
//!   ([`multi`]);
//! - induced posterior distributions, DM and sender welfare, deviation
//!   verification, and a golden table of worked examples ([`welfare`]);
//! - a seeded Monte Carlo oracle ([`sim`]).
//!
//! Signal structures live in [`signal`]: continuous belief densities,
//! discrete atom tables, precision families, and construction from a target
//! nondisclosure curve. See the `examples/` directory for one runnable
//! example per capability, and the `disclosure` binary for the `solve`,
//! `sweep`, `curves`, `examples`, and `simulate` commands.

pub mod belief;
pub mod cli;
pub mod config;
pub mod error;
pub mod multi;
pub mod num;
pub mod report;
pub mod signal;
pub mod sim;
pub mod single;
pub mod welfare;

pub use belief::{
    concealment_payoff, message_distribution, nondisclosure_belief, nondisclosure_belief_down,
    transform_posterior, Bias, ConcealmentPayoff, Cut, MessageDistribution, SenderSpec,
};
pub use error::{ModelError, SolveError};
pub use multi::{
    best_response_set, solve_extremal_complements, solve_extremal_substitutes, BestResponseSet,
    EquilibriumLabel, ThresholdProfile, TwoSenderEquilibrium, TwoSenderGame,
};
pub use signal::{
    beta_precision_model, model_from_target_curve, ContinuousSignalModel, DiscreteSignalModel,
    PrecisionFamily, Side, SignalModel,
};
pub use single::{
    extremal_single, sender_welfare, solve_single, solve_uncertain_bias, sweep_single,
    SingleEquilibrium, SingleKind, UncertainBiasEquilibrium,
};
pub use welfare::{dm_welfare_general, dm_welfare_quadratic, PosteriorDistribution};
