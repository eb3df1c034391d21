//! Brute-force equilibrium enumeration: a residual sign-change search over a
//! threshold grid for continuous models, and the full strategy lattice
//! (atom index x marginal weight) for discrete models. Used to certify the
//! extremality claims of the fixed-point solvers on fixtures.

use crate::belief::Cut;
use crate::error::SolveError;
use crate::num::roots;
use crate::signal::SignalModel;

use super::{deviation_violation, EquilibriumLabel, ThresholdProfile, TwoSenderEquilibrium, TwoSenderGame};

/// An equilibrium candidate located by the grid search.
#[derive(Debug, Clone)]
pub struct GridEquilibrium {
    /// Game-frame profile (cell midpoint for continuous models).
    pub profile: ThresholdProfile,
    /// Half-width of the locating cell (0 for discrete profiles).
    pub cell: f64,
    /// Worst per-sender residual at the reported profile.
    pub residuals: [f64; 2],
}

/// Enumerates all equilibria of a two-sender game.
///
/// Continuous models: both senders' best-response residuals are tabulated on
/// a `resolution`^2 oriented grid; a cell is reported when each sender's
/// residual changes sign across it (or satisfies the boundary conditions).
/// Discrete models: every (atom, weight) strategy pair on a `weights`-point
/// weight grid is checked exactly, with indifference segments refined.
pub fn enumerate_equilibria_grid(
    game: &TwoSenderGame,
    resolution: usize,
) -> Result<Vec<GridEquilibrium>, SolveError> {
    match &game.model {
        SignalModel::Continuous(_) => enumerate_continuous(game, resolution),
        SignalModel::Discrete(_) => enumerate_discrete(game, 101),
    }
}

fn enumerate_continuous(game: &TwoSenderGame, resolution: usize) -> Result<Vec<GridEquilibrium>, SolveError> {
    if !(2..=4096).contains(&resolution) {
        return Err(SolveError::Config(format!("grid resolution {resolution} out of range")));
    }
    let solvers = [game.br_solver(0), game.br_solver(1)];
    let supports = [game.frame_support(0), game.frame_support(1)];
    let xs = roots::grid(supports[0].0, supports[0].1, resolution);
    let ys = roots::grid(supports[1].0, supports[1].1, resolution);

    // Oriented residual tables: r0[a][b] for sender 0 at x_a against y_b,
    // r1[b][a] for sender 1 at y_b against x_a.
    let mut r0 = vec![vec![0.0f64; ys.len()]; xs.len()];
    let mut r1 = vec![vec![0.0f64; xs.len()]; ys.len()];
    for (b, &y) in ys.iter().enumerate() {
        let prep = solvers[0].prepare(game.opponent_cut_in_frame(0, Cut::at(y)));
        for (a, &x) in xs.iter().enumerate() {
            r0[a][b] = solvers[0].u_diag(x, &prep) - x + game.cost;
        }
    }
    for (a, &x) in xs.iter().enumerate() {
        let prep = solvers[1].prepare(game.opponent_cut_in_frame(1, Cut::at(x)));
        for (b, &y) in ys.iter().enumerate() {
            r1[b][a] = solvers[1].u_diag(y, &prep) - y + game.cost;
        }
    }

    // A sign "band" per axis point: residual zero is crossed inside the cell,
    // or the boundary conditions hold at the support ends.
    let crosses = |lo_val: f64, hi_val: f64| lo_val == 0.0 || lo_val * hi_val < 0.0;
    let mut out = Vec::new();
    for a in 0..xs.len() - 1 {
        for b in 0..ys.len() - 1 {
            let s0 = crosses(r0[a][b], r0[a + 1][b]) || crosses(r0[a][b + 1], r0[a + 1][b + 1]);
            let s1 = crosses(r1[b][a], r1[b + 1][a]) || crosses(r1[b][a + 1], r1[b + 1][a + 1]);
            // Boundary rows: sender 0 at lo needs r <= 0, at hi r >= 0.
            let s0 = s0
                || (a == 0 && r0[0][b] <= 0.0)
                || (a + 2 == xs.len() && r0[xs.len() - 1][b] >= 0.0);
            let s1 = s1
                || (b == 0 && r1[0][a] <= 0.0)
                || (b + 2 == ys.len() && r1[ys.len() - 1][a] >= 0.0);
            if s0 && s1 {
                out.push((a, b));
            }
        }
    }

    // Merge adjacent cells into connected clusters and report midpoints.
    let cell = ((supports[0].1 - supports[0].0) / (resolution - 1) as f64)
        .max((supports[1].1 - supports[1].0) / (resolution - 1) as f64);
    let clusters = cluster_cells(&out);
    let mut eqs = Vec::with_capacity(clusters.len());
    for (a, b) in clusters {
        let x = 0.5 * (xs[a] + xs[a + 1]);
        let y = 0.5 * (ys[b] + ys[b + 1]);
        let oriented = [Cut::at(x), Cut::at(y)];
        eqs.push(GridEquilibrium {
            profile: ThresholdProfile::new(vec![
                game.to_game_frame(0, oriented[0]),
                game.to_game_frame(1, oriented[1]),
            ]),
            cell,
            residuals: [game.residual(0, oriented)?, game.residual(1, oriented)?],
        });
    }
    Ok(eqs)
}

/// Collapses 8-connected runs of marked cells to one representative each.
fn cluster_cells(cells: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut remaining: std::collections::BTreeSet<(usize, usize)> = cells.iter().copied().collect();
    let mut reps = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        let mut stack = vec![seed];
        let mut members = Vec::new();
        remaining.remove(&seed);
        while let Some(c) = stack.pop() {
            members.push(c);
            let neighbors: Vec<(usize, usize)> = remaining
                .iter()
                .copied()
                .filter(|&(a, b)| a.abs_diff(c.0) <= 1 && b.abs_diff(c.1) <= 1)
                .collect();
            for n in neighbors {
                remaining.remove(&n);
                stack.push(n);
            }
        }
        // Median member approximates the cluster center.
        members.sort();
        reps.push(members[members.len() / 2]);
    }
    reps.sort();
    reps
}

fn enumerate_discrete(game: &TwoSenderGame, weights: usize) -> Result<Vec<GridEquilibrium>, SolveError> {
    let solvers = [game.br_solver(0), game.br_solver(1)];
    let strategies: [Vec<Cut>; 2] = [
        discrete_strategy_lattice(game.frame_model(0), weights),
        discrete_strategy_lattice(game.frame_model(1), weights),
    ];
    let atoms: [Vec<f64>; 2] = [
        discrete_atom_values(game.frame_model(0)),
        discrete_atom_values(game.frame_model(1)),
    ];

    let mut found: Vec<[Cut; 2]> = Vec::new();
    for &cut0 in &strategies[0] {
        let prep1 = solvers[1].prepare(game.opponent_cut_in_frame(1, cut0));
        for &cut1 in &strategies[1] {
            // Check sender 1 first: his prepared opponent is fixed per cut0.
            if !discrete_ok(&solvers[1], &atoms[1], cut1, &prep1, game.cost) {
                continue;
            }
            let prep0 = solvers[0].prepare(game.opponent_cut_in_frame(0, cut1));
            if discrete_ok(&solvers[0], &atoms[0], cut0, &prep0, game.cost) {
                found.push([cut0, cut1]);
            }
        }
    }

    // Canonicalize: duplicate (atom, weight) encodings of one disclosure set
    // collapse, and a whole indifference segment of interior weights at one
    // atom is reported once (the enumeration is over its grid points).
    let mut canonical: Vec<[Cut; 2]> = Vec::new();
    'outer: for f in &found {
        for c in &canonical {
            if strategy_key(&atoms[0], f[0]) == strategy_key(&atoms[0], c[0])
                && strategy_key(&atoms[1], f[1]) == strategy_key(&atoms[1], c[1])
            {
                continue 'outer;
            }
        }
        canonical.push(*f);
    }

    let mut eqs = Vec::with_capacity(canonical.len());
    for mut oriented in canonical {
        for (idx, cut) in oriented.iter_mut().enumerate() {
            *cut = canonical_cut(&atoms[idx], *cut);
        }
        eqs.push(GridEquilibrium {
            profile: ThresholdProfile::new(vec![
                game.to_game_frame(0, oriented[0]),
                game.to_game_frame(1, oriented[1]),
            ]),
            cell: 0.0,
            residuals: [game.residual(0, oriented)?, game.residual(1, oriented)?],
        });
    }
    Ok(eqs)
}

/// Prefers the weight-1 encoding of a pure cut: an atom with zero marginal
/// weight is the same strategy as the next atom disclosed fully.
fn canonical_cut(atoms: &[f64], cut: Cut) -> Cut {
    if cut.marginal_weight <= 1e-12 {
        if let Some(k) = atoms.iter().position(|&v| (v - cut.threshold).abs() <= 1e-12) {
            if k + 1 < atoms.len() {
                return Cut::with_weight(atoms[k + 1], 1.0);
            }
        }
    }
    cut
}

fn discrete_atom_values(model: &SignalModel) -> Vec<f64> {
    model.as_discrete().unwrap().atoms().iter().map(|a| a.value).collect()
}

/// The full (atom, weight) strategy lattice in oriented coordinates.
fn discrete_strategy_lattice(model: &SignalModel, weights: usize) -> Vec<Cut> {
    let values = discrete_atom_values(model);
    let mut cuts = Vec::with_capacity(values.len() * weights + 1);
    for &v in &values {
        for i in 0..weights {
            cuts.push(Cut::with_weight(v, i as f64 / (weights - 1) as f64));
        }
    }
    cuts
}

/// Exact optimality of a discrete cut against a prepared opponent, with
/// weight-grid indifference handled by sign-bracketing refinement.
fn discrete_ok(
    solver: &super::BrSolver,
    atoms: &[f64],
    cut: Cut,
    prep: &super::PreparedOpponent,
    cost: f64,
) -> bool {
    const TOL: f64 = 1e-9;
    for &s in atoms {
        let gap = (s - cost) - solver.u_at(s, cut, prep);
        let marginal = (s - cut.threshold).abs() <= 1e-12;
        if marginal && cut.marginal_weight > 1e-12 && cut.marginal_weight < 1.0 - 1e-12 {
            // Interior weight requires exact indifference of the marginal
            // type; accept when a root lies within one weight-grid step.
            let phi = |w: f64| (s - cost) - solver.u_at(s, Cut::with_weight(cut.threshold, w), prep);
            let step = 0.01;
            let (wl, wh) = ((cut.marginal_weight - step).max(0.0), (cut.marginal_weight + step).min(1.0));
            let (gl, gh) = (phi(wl), phi(wh));
            if gap.abs() > TOL && gl * gh > 0.0 {
                return false;
            }
        } else if deviation_violation(gap, s, cut) > TOL {
            return false;
        }
    }
    true
}

/// Per-atom disclosure marker: concealed, fractional, or fully disclosed.
fn strategy_key(atoms: &[f64], cut: Cut) -> Vec<u8> {
    atoms
        .iter()
        .map(|&v| {
            let w = disclosure_weight(v, cut);
            if w <= 1e-12 {
                0
            } else if w >= 1.0 - 1e-12 {
                2
            } else {
                1
            }
        })
        .collect()
}

fn disclosure_weight(v: f64, cut: Cut) -> f64 {
    if (v - cut.threshold).abs() <= 1e-12 {
        cut.marginal_weight
    } else if v > cut.threshold {
        1.0
    } else {
        0.0
    }
}

/// Convenience: certified equilibria from grid candidates (continuous
/// models), refined by a local fixed-point polish.
pub fn certify_grid_candidates(
    game: &TwoSenderGame,
    candidates: &[GridEquilibrium],
) -> Result<Vec<TwoSenderEquilibrium>, SolveError> {
    let mut out = Vec::new();
    for cand in candidates {
        let oriented = [
            oriented_cut(game, 0, cand.profile.cuts[0]),
            oriented_cut(game, 1, cand.profile.cuts[1]),
        ];
        if let Ok(eq) = game.certify(oriented, EquilibriumLabel::GridCell, 0) {
            out.push(eq);
        }
    }
    Ok(out)
}

fn oriented_cut(game: &TwoSenderGame, idx: usize, game_frame: Cut) -> Cut {
    // Converting between frames is the same mirror either way.
    game.to_game_frame(idx, game_frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::SenderSpec;
    use crate::signal::{ContinuousSignalModel, DiscreteSignalModel};
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_cost_grid_matches_tarski() {
        let m: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
        let game = TwoSenderGame::new(m, [SenderSpec::up(0.8), SenderSpec::up(0.6)], 0.0).unwrap();
        let eqs = enumerate_equilibria_grid(&game, 257).unwrap();
        assert_eq!(eqs.len(), 1);
        let (small, _) = super::super::solve_extremal_complements(&game).unwrap();
        for idx in 0..2 {
            assert_abs_diff_eq!(
                eqs[0].profile.cuts[idx].threshold,
                small.profile.cuts[idx].threshold,
                epsilon = eqs[0].cell
            );
        }
    }

    #[test]
    fn four_point_opposing_game_has_unique_equilibrium() {
        let m: SignalModel = DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap().into();
        let game =
            TwoSenderGame::new(m, [SenderSpec::up(0.8), SenderSpec::down(0.8)], 0.36).unwrap();
        let eqs = enumerate_equilibria_grid(&game, 512).unwrap();
        assert_eq!(eqs.len(), 1, "expected a unique equilibrium, got {eqs:?}");
        let eq = &eqs[0];
        // Each sender discloses only his most favorable signal.
        assert_abs_diff_eq!(eq.profile.cuts[0].threshold, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eq.profile.cuts[0].marginal_weight, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eq.profile.cuts[1].threshold, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eq.profile.cuts[1].marginal_weight, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn higher_cost_admits_one_sided_revelation() {
        let m: SignalModel = DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap().into();
        let game =
            TwoSenderGame::new(m, [SenderSpec::up(0.8), SenderSpec::down(0.8)], 0.38).unwrap();
        let eqs = enumerate_equilibria_grid(&game, 512).unwrap();
        // Contains the profile where sender 0 reveals the two favorable
        // signals and sender 1 conceals everything.
        let hit = eqs.iter().any(|e| {
            (e.profile.cuts[0].threshold - 0.7).abs() < 1e-9
                && (e.profile.cuts[0].marginal_weight - 1.0).abs() < 1e-9
                && ((e.profile.cuts[1].threshold - 0.0).abs() < 1e-9
                    && e.profile.cuts[1].marginal_weight < 1e-9)
        });
        assert!(hit, "expected the one-sided revelation profile in {eqs:?}");
    }
}
