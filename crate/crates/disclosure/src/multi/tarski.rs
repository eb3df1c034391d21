//! Extremal equilibria by monotone fixed-point iteration.
//!
//! Under a concealment cost the smallest-best-response map is monotone on
//! the oriented product lattice, so ascending iteration from the most
//! disclosing profile reaches the smallest equilibrium and descending
//! iteration from the least disclosing one the largest. Under a disclosure
//! cost the second coordinate is order-reversed and the same iterations
//! deliver the i-maximal and j-maximal equilibria.

use crate::belief::Cut;
use crate::error::SolveError;
use crate::signal::SignalModel;
use crate::single::dedup_cuts;

use super::{
    BrSolver, EquilibriumLabel, PreparedOpponent, TwoSenderEquilibrium, TwoSenderGame,
    ITERATION_TOL, MAX_ITERATIONS,
};

/// Scan resolution of inner best-response solves during iteration.
const INNER_SCAN: usize = 257;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Extreme {
    Smallest,
    Largest,
}

/// A sender's most-disclosing (bottom) or least-disclosing (top) oriented cut.
fn lattice_extreme(model: &SignalModel, top: bool) -> Cut {
    let (lo, hi) = model.support();
    match model {
        SignalModel::Continuous(_) => {
            if top {
                Cut::at(hi)
            } else {
                Cut::at(lo)
            }
        }
        SignalModel::Discrete(_) => {
            if top {
                Cut::with_weight(hi, 0.0)
            } else {
                Cut::with_weight(lo, 1.0)
            }
        }
    }
}

fn br_extreme(
    solver: &BrSolver,
    prep: &PreparedOpponent,
    c: f64,
    which: Extreme,
) -> Result<Cut, SolveError> {
    if solver.is_continuous() {
        let x = match which {
            Extreme::Smallest => solver.smallest_br(prep, c, INNER_SCAN),
            Extreme::Largest => solver.largest_br(prep, c, INNER_SCAN),
        };
        return Ok(Cut::at(x));
    }
    let mut set = solver.discrete_best_responses(prep, c);
    dedup_cuts(&mut set);
    let pick = match which {
        Extreme::Smallest => set.first(),
        Extreme::Largest => set.last(),
    };
    pick.copied().ok_or(SolveError::Convergence { iterations: 0, deltas: vec![] })
}

fn cut_distance(a: Cut, b: Cut) -> f64 {
    (a.threshold - b.threshold).abs().max((a.marginal_weight - b.marginal_weight).abs())
}

/// Simultaneous monotone iteration of per-sender extremal best responses.
fn iterate(
    game: &TwoSenderGame,
    start: [Cut; 2],
    which: [Extreme; 2],
    label: EquilibriumLabel,
) -> Result<TwoSenderEquilibrium, SolveError> {
    let solvers = [game.br_solver(0), game.br_solver(1)];
    let mut current = start;
    let mut deltas: Vec<f64> = Vec::new();
    let mut trace: Vec<[f64; 2]> = vec![[current[0].threshold, current[1].threshold]];
    for iteration in 1..=MAX_ITERATIONS {
        let mut next = current;
        for idx in 0..2 {
            let opp = game.opponent_cut_in_frame(idx, current[1 - idx]);
            let prep = solvers[idx].prepare(opp);
            next[idx] = br_extreme(&solvers[idx], &prep, game.cost, which[idx])?;
        }
        let delta = cut_distance(next[0], current[0]).max(cut_distance(next[1], current[1]));
        deltas.push(delta);
        trace.push([next[0].threshold, next[1].threshold]);
        current = next;
        if delta < ITERATION_TOL {
            let mut eq = game.certify(current, label, iteration)?;
            eq.oriented_trace = trace;
            return Ok(eq);
        }
    }
    deltas.truncate(8);
    Err(SolveError::Convergence { iterations: MAX_ITERATIONS, deltas })
}

/// Smallest and largest equilibria under no cost or a concealment cost
/// (strategic complements). Ascending iteration from the most disclosing
/// profile and descending from the least disclosing one.
pub fn solve_extremal_complements(
    game: &TwoSenderGame,
) -> Result<(TwoSenderEquilibrium, TwoSenderEquilibrium), SolveError> {
    if game.cost > 0.0 {
        return Err(SolveError::Config(
            "complements solver requires c <= 0; use the substitutes solver".into(),
        ));
    }
    let bottom = [
        lattice_extreme(game.frame_model(0), false),
        lattice_extreme(game.frame_model(1), false),
    ];
    let top =
        [lattice_extreme(game.frame_model(0), true), lattice_extreme(game.frame_model(1), true)];
    let smallest = iterate(
        game,
        bottom,
        [Extreme::Smallest, Extreme::Smallest],
        EquilibriumLabel::Smallest,
    )?;
    let largest =
        iterate(game, top, [Extreme::Largest, Extreme::Largest], EquilibriumLabel::Largest)?;
    Ok((smallest, largest))
}

/// The i-maximal and j-maximal equilibria under a disclosure cost
/// (strategic substitutes), obtained from the order-reversing transform of
/// the second coordinate.
pub fn solve_extremal_substitutes(
    game: &TwoSenderGame,
) -> Result<(TwoSenderEquilibrium, TwoSenderEquilibrium), SolveError> {
    if game.cost <= 0.0 {
        return Err(SolveError::Config(
            "substitutes solver requires c > 0; use the complements solver".into(),
        ));
    }
    let bottom0 = lattice_extreme(game.frame_model(0), false);
    let top0 = lattice_extreme(game.frame_model(0), true);
    let bottom1 = lattice_extreme(game.frame_model(1), false);
    let top1 = lattice_extreme(game.frame_model(1), true);
    // i-maximal: sender 0's threshold maximal, sender 1's minimal.
    let i_maximal = iterate(
        game,
        [top0, bottom1],
        [Extreme::Largest, Extreme::Smallest],
        EquilibriumLabel::IMaximal,
    )?;
    // j-maximal: sender 1's threshold maximal, sender 0's minimal.
    let j_maximal = iterate(
        game,
        [bottom0, top1],
        [Extreme::Smallest, Extreme::Largest],
        EquilibriumLabel::JMaximal,
    )?;
    Ok((i_maximal, j_maximal))
}
