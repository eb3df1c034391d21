//! Command implementations behind the `disclosure` binary: solve, sweep,
//! curves, examples, and simulate. Commands return the text they print so
//! they stay testable without a terminal.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::belief::{Bias, Cut, SenderSpec};
use crate::config::{GameKind, RunConfig, SweepParam, SweepSpec};
use crate::error::SolveError;
use crate::multi::correlated::{solve_correlated, CorrelatedSolution};
use crate::multi::grid::enumerate_equilibria_grid;
use crate::multi::many::solve_many_senders;
use crate::multi::sequential::solve_sequential;
use crate::multi::{
    solve_extremal_complements, solve_extremal_substitutes, TwoSenderEquilibrium, TwoSenderGame,
};
use crate::report;
use crate::signal::SignalModel;
use crate::sim::{monte_carlo, SimulatedPlay};
use crate::single::{solve_single, sweep_single};
use crate::welfare;

/// Applies command-line / environment overrides onto the file config.
pub fn apply_overrides(
    cfg: &mut RunConfig,
    seed: Option<u64>,
    threads: Option<usize>,
    tolerance: Option<f64>,
) {
    if let Some(s) = seed {
        cfg.solver.seed = s;
    }
    if let Some(t) = threads {
        cfg.solver.threads = t;
    }
    if let Some(t) = tolerance {
        cfg.solver.tolerance = t;
    }
}

/// Builds the global worker pool; 0 keeps machine parallelism.
pub fn setup_threads(threads: usize) {
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

fn write_artifact(out_dir: &Path, name: &str, contents: &str) -> Result<(), SolveError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| SolveError::Config(format!("cannot create {}: {e}", out_dir.display())))?;
    let path = out_dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| SolveError::Config(format!("cannot write {}: {e}", path.display())))
}

/// `solve`: runs the configured solver, writes the equilibrium report and a
/// posterior-distribution summary, and returns the report text.
pub fn cmd_solve(cfg: &RunConfig, out_dir: &Path) -> Result<String, SolveError> {
    let model = cfg.build_model()?;
    let senders = cfg.senders();
    let c = cfg.game.cost;
    let mut text = report::provenance_block(&cfg.solver);
    let posterior;

    match cfg.game.kind {
        GameKind::Single => {
            let eqs = solve_single(&model, senders[0], c)?;
            let _ = write!(text, "{}", report::single_equilibria_text(&eqs));
            let best = eqs
                .iter()
                .max_by(|a, b| a.dm_welfare.partial_cmp(&b.dm_welfare).unwrap())
                .unwrap();
            let dist = welfare::single_posterior_distribution(&model, senders[0], best.cut)?;
            posterior = report::posterior_summary_text(&dist);
        }
        GameKind::Two => {
            let game = TwoSenderGame::new(model.clone(), [senders[0], senders[1]], c)?;
            let eqs = solve_two(&game)?;
            for eq in &eqs {
                let _ = write!(text, "{}", report::two_sender_equilibrium_text(eq));
            }
            if c == 0.0 {
                let mut max_gap: f64 = 0.0;
                for (k, spec) in senders.iter().enumerate().take(2) {
                    let single = solve_single(&model, *spec, 0.0)?;
                    max_gap = max_gap
                        .max((single[0].cut.threshold - eqs[0].profile.cuts[k].threshold).abs());
                }
                let _ = writeln!(
                    text,
                    "note: zero message cost; thresholds equal the single-sender fixed points (max gap {max_gap:.2e})"
                );
            }
            let cuts = [eqs[0].profile.cuts[0], eqs[0].profile.cuts[1]];
            let dist = welfare::two_sender_posterior_distribution(
                &model,
                [senders[0], senders[1]],
                cuts,
            )?;
            posterior = report::posterior_summary_text(&dist);
        }
        GameKind::Many => {
            let eq = solve_many_senders(&model, c, &senders)?;
            let _ = writeln!(text, "many-sender equilibrium ({} senders):", senders.len());
            for (k, cut) in eq.profile.cuts.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "  sender {k}: threshold = {:.12}, weight = {:.6}, residual = {:.3e}",
                    cut.threshold, cut.marginal_weight, eq.residuals[k]
                );
            }
            let dist = welfare::many_sender_posterior_distribution(
                &model,
                senders.clone(),
                eq.profile.cuts.clone(),
            )?;
            let _ = writeln!(text, "  dm_welfare = {:.12}", welfare::dm_welfare_quadratic(&dist));
            posterior = report::posterior_summary_text(&dist);
        }
        GameKind::Sequential => {
            let sol = solve_sequential(&model, c, senders[0], senders[1])?;
            for (tag, eq) in [("lowest", &sol.lowest), ("highest", &sol.highest)] {
                let _ = writeln!(
                    text,
                    "sequential {tag}: first threshold = {:.12}, nd belief = {:.12}, residual = {:.3e}",
                    eq.first_cut.threshold, eq.first_nd_belief, eq.residual
                );
                let _ = writeln!(
                    text,
                    "  second after nondisclosure: {:.12}",
                    eq.policy.after_nondisclosure
                );
                for &(t, y) in eq.policy.after_disclosure.iter().step_by(16) {
                    let _ = writeln!(text, "  second after disclosure of {:.4}: {:.12}", t, y);
                }
            }
            let dist = welfare::sequential_posterior_distribution(
                &model,
                senders[0],
                senders[1],
                sol.lowest.first_cut,
                &sol.lowest.policy,
            )?;
            let _ = writeln!(text, "dm_welfare (lowest) = {:.12}", welfare::dm_welfare_quadratic(&dist));
            posterior = report::posterior_summary_text(&dist);
        }
        GameKind::Correlated => {
            match solve_correlated(&model, c, [senders[0], senders[1]])? {
                CorrelatedSolution::SameBias { effective_p, equilibria } => {
                    let _ = writeln!(text, "same-bias reduction: effective p = {effective_p:.12}");
                    let _ = write!(text, "{}", report::single_equilibria_text(&equilibria));
                    let dist = welfare::correlated_posterior_distribution(
                        &model,
                        [senders[0], senders[1]],
                        [equilibria[0].cut, equilibria[0].cut],
                    )?;
                    posterior = report::posterior_summary_text(&dist);
                }
                CorrelatedSolution::Opposing { profiles } => {
                    for eq in &profiles {
                        let _ = writeln!(
                            text,
                            "opposing-bias equilibrium: thresholds = [{:.12}, {:.12}], joint nd belief = {:.12}",
                            eq.profile.cuts[0].threshold,
                            eq.profile.cuts[1].threshold,
                            eq.joint_nd_belief
                        );
                    }
                    let dist = welfare::correlated_posterior_distribution(
                        &model,
                        [senders[0], senders[1]],
                        [profiles[0].profile.cuts[0], profiles[0].profile.cuts[1]],
                    )?;
                    posterior = report::posterior_summary_text(&dist);
                }
            }
        }
        GameKind::UncertainBias => {
            let lambda = cfg.game.lambda.unwrap();
            let eqs = crate::single::solve_uncertain_bias(&model, senders[0].informed_prob, c, lambda)?;
            for eq in &eqs {
                let _ = writeln!(
                    text,
                    "uncertain-bias equilibrium: s_up = {:.12}, s_down = {:.12}, nd belief = {:.12}",
                    eq.up_threshold, eq.down_threshold, eq.nondisclosure_belief
                );
            }
            let dist = welfare::uncertain_bias_posterior_distribution(
                &model,
                senders[0].informed_prob,
                lambda,
                eqs[0].up_threshold,
                eqs[0].down_threshold,
            )?;
            posterior = report::posterior_summary_text(&dist);
        }
    }

    write_artifact(out_dir, "equilibrium_report.txt", &text)?;
    write_artifact(out_dir, "posterior_summary.txt", &posterior)?;
    Ok(text)
}

/// Extremal / named equilibria of a two-sender game, by cost sign; discrete
/// models go through the exhaustive enumerator.
fn solve_two(game: &TwoSenderGame) -> Result<Vec<TwoSenderEquilibrium>, SolveError> {
    if matches!(game.model, SignalModel::Discrete(_)) {
        let found = enumerate_equilibria_grid(game, 512)?;
        let certified = crate::multi::grid::certify_grid_candidates(game, &found)?;
        if certified.is_empty() {
            return Err(SolveError::Convergence { iterations: 0, deltas: vec![] });
        }
        return Ok(certified);
    }
    if game.cost > 0.0 {
        let (i_max, j_max) = solve_extremal_substitutes(game)?;
        Ok(vec![i_max, j_max])
    } else {
        let (small, large) = solve_extremal_complements(game)?;
        Ok(vec![small, large])
    }
}

/// `sweep`: one CSV row per grid cell, plus a monotonicity audit appended as
/// a comment block naming any violated comparative-statics direction.
pub fn cmd_sweep(cfg: &RunConfig, out_dir: &Path) -> Result<String, SolveError> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| SolveError::Config("sweep command requires a [sweep] section".into()))?;
    if sweep.axis.is_empty() || sweep.axis.len() > 2 {
        return Err(SolveError::Config("sweep needs 1 or 2 axes".into()));
    }
    for ax in &sweep.axis {
        if ax.param == SweepParam::Rho && cfg.model.kind != crate::config::ModelKind::Beta {
            return Err(SolveError::Config("rho axis requires the beta model".into()));
        }
    }
    match cfg.game.kind {
        GameKind::Single => sweep_single_game(cfg, sweep, out_dir),
        GameKind::Two => sweep_two_game(cfg, sweep, out_dir),
        _ => Err(SolveError::Config("sweep supports single and two-sender games".into())),
    }
}

type AxisPoint = (SweepParam, f64);

fn axis_values(sweep: &SweepSpec) -> (Vec<AxisPoint>, Vec<Vec<AxisPoint>>) {
    let primary: Vec<(SweepParam, f64)> =
        sweep.axis[0].values().iter().map(|&v| (sweep.axis[0].param, v)).collect();
    let cells: Vec<Vec<(SweepParam, f64)>> = if sweep.axis.len() == 2 {
        let secondary: Vec<(SweepParam, f64)> =
            sweep.axis[1].values().iter().map(|&v| (sweep.axis[1].param, v)).collect();
        primary
            .iter()
            .flat_map(|&a| secondary.iter().map(move |&b| vec![a, b]))
            .collect()
    } else {
        primary.iter().map(|&a| vec![a]).collect()
    };
    (primary, cells)
}

fn patched(cfg: &RunConfig, cell: &[AxisPoint]) -> RunConfig {
    let mut out = cfg.clone();
    for &(param, v) in cell {
        match param {
            SweepParam::P1 => out.game.senders[0].p = v,
            SweepParam::P2 => {
                if out.game.senders.len() > 1 {
                    out.game.senders[1].p = v;
                }
            }
            SweepParam::C => out.game.cost = v,
            SweepParam::Rho => out.model.rho = Some(v),
        }
    }
    out
}

fn sweep_single_game(
    cfg: &RunConfig,
    sweep: &SweepSpec,
    out_dir: &Path,
) -> Result<String, SolveError> {
    // Reuse the library sweep when the axes are (p, c) on a fixed model;
    // otherwise solve cell by cell (e.g. rho axes rebuild the model).
    let (_, cells) = axis_values(sweep);
    let mut csv = report::provenance_block(&cfg.solver);
    csv.push_str("p,c,lowest_threshold,highest_threshold,lowest_eta,highest_eta,dm_welfare_best,sender_welfare_best\n");
    let rows: Vec<Result<String, SolveError>> = cells
        .par_iter()
        .map(|cell| {
            let local = patched(cfg, cell);
            let model = local.build_model()?;
            let sender: SenderSpec = local.game.senders[0].into();
            let (low, high) = crate::single::extremal_single(&model, sender, local.game.cost)?;
            Ok(report::csv_line(&[
                report::g17(sender.informed_prob),
                report::g17(local.game.cost),
                report::g17(low.cut.threshold),
                report::g17(high.cut.threshold),
                report::g17(low.nondisclosure_belief),
                report::g17(high.nondisclosure_belief),
                report::g17(low.dm_welfare.max(high.dm_welfare)),
                report::g17(low.sender_welfare.max(high.sender_welfare)),
            ]))
        })
        .collect();
    for row in rows {
        csv.push_str(&row?);
        csv.push('\n');
    }
    // The library sweep runs the hard monotonicity audit on (p, c) grids.
    let p_axis: Vec<f64> = sweep
        .axis
        .iter()
        .find(|a| a.param == SweepParam::P1)
        .map(|a| a.values())
        .unwrap_or_else(|| vec![cfg.game.senders[0].p]);
    let c_axis: Vec<f64> = sweep
        .axis
        .iter()
        .find(|a| a.param == SweepParam::C)
        .map(|a| a.values())
        .unwrap_or_else(|| vec![cfg.game.cost]);
    let mut audit = String::from("# monotonicity: ");
    if sweep.axis.iter().all(|a| matches!(a.param, SweepParam::P1 | SweepParam::C)) {
        let model = cfg.build_model()?;
        match sweep_single(&model, cfg.game.senders[0].bias, &p_axis, &c_axis) {
            Ok(_) => audit.push_str("thresholds weakly decreasing in p and increasing in c: ok\n"),
            Err(e) => {
                let _ = writeln!(audit, "VIOLATED ({e})");
            }
        }
    } else {
        audit.push_str("not audited on rho axes\n");
    }
    csv.push_str(&audit);
    write_artifact(out_dir, "sweep.csv", &csv)?;
    Ok(csv)
}

struct TwoCell {
    p1: f64,
    p2: f64,
    c: f64,
    s1: [f64; 2],
    s2: [f64; 2],
    dm_welfare: f64,
    kind: &'static str,
}

fn sweep_two_game(cfg: &RunConfig, sweep: &SweepSpec, out_dir: &Path) -> Result<String, SolveError> {
    let (_, cells) = axis_values(sweep);
    let solved: Vec<Result<TwoCell, SolveError>> = cells
        .par_iter()
        .map(|cell| {
            let local = patched(cfg, cell);
            let model = local.build_model()?;
            let senders = local.senders();
            let game = TwoSenderGame::new(model, [senders[0], senders[1]], local.game.cost)?;
            let eqs = solve_two(&game)?;
            let t = |eq: &TwoSenderEquilibrium, k: usize| eq.profile.cuts[k].threshold;
            let s1 = [
                eqs.iter().map(|e| t(e, 0)).fold(f64::INFINITY, f64::min),
                eqs.iter().map(|e| t(e, 0)).fold(f64::NEG_INFINITY, f64::max),
            ];
            let s2 = [
                eqs.iter().map(|e| t(e, 1)).fold(f64::INFINITY, f64::min),
                eqs.iter().map(|e| t(e, 1)).fold(f64::NEG_INFINITY, f64::max),
            ];
            Ok(TwoCell {
                p1: senders[0].informed_prob,
                p2: senders[1].informed_prob,
                c: local.game.cost,
                s1,
                s2,
                dm_welfare: eqs.iter().map(|e| e.dm_welfare).fold(f64::NEG_INFINITY, f64::max),
                kind: if local.game.cost > 0.0 { "substitutes" } else { "complements" },
            })
        })
        .collect();
    let mut rows = Vec::with_capacity(solved.len());
    for cell in solved {
        rows.push(cell?);
    }

    let mut csv = report::provenance_block(&cfg.solver);
    csv.push_str("p1,p2,c,s1_lo,s1_hi,s2_lo,s2_hi,dm_welfare,kind\n");
    for r in &rows {
        csv.push_str(&report::csv_line(&[
            report::g17(r.p1),
            report::g17(r.p2),
            report::g17(r.c),
            report::g17(r.s1[0]),
            report::g17(r.s1[1]),
            report::g17(r.s2[0]),
            report::g17(r.s2[1]),
            report::g17(r.dm_welfare),
            r.kind.to_string(),
        ]));
        csv.push('\n');
    }
    csv.push_str(&audit_two_sweep(cfg, sweep, &rows));
    write_artifact(out_dir, "sweep.csv", &csv)?;
    Ok(csv)
}

/// Comparative-statics audit over the swept axes; violations beyond 1e-7
/// are named, smaller wiggles are numerical noise.
fn audit_two_sweep(cfg: &RunConfig, sweep: &SweepSpec, rows: &[TwoCell]) -> String {
    const NOISE: f64 = 1e-7;
    let mut notes: Vec<String> = Vec::new();
    let both_up = cfg.game.senders.iter().all(|s| matches!(s.bias, Bias::Up));
    if !both_up {
        return String::from("# monotonicity: audited for upward-biased pairs only\n");
    }
    let stride = if sweep.axis.len() == 2 { sweep.axis[1].values().len() } else { 1 };
    let along_primary: Vec<Vec<&TwoCell>> = (0..stride)
        .map(|off| rows.iter().skip(off).step_by(stride).collect())
        .collect();
    for lane in &along_primary {
        for w in lane.windows(2) {
            let (a, b) = (w[0], w[1]);
            match sweep.axis[0].param {
                SweepParam::P1 if b.p1 > a.p1 => {
                    if b.s1[0] > a.s1[0] + NOISE || b.s1[1] > a.s1[1] + NOISE {
                        notes.push(format!("sender 1 threshold rose in p1 at p1 = {}", b.p1));
                    }
                    if a.c > 0.0 && (b.s2[0] < a.s2[0] - NOISE || b.s2[1] < a.s2[1] - NOISE) {
                        notes.push(format!("sender 2 threshold fell in p1 at p1 = {}", b.p1));
                    }
                    if a.c < 0.0 && (b.s2[0] > a.s2[0] + NOISE || b.s2[1] > a.s2[1] + NOISE) {
                        notes.push(format!("sender 2 threshold rose in p1 at p1 = {}", b.p1));
                    }
                }
                SweepParam::C
                    if b.c > a.c
                        && a.c <= 0.0
                        && b.c <= 0.0
                        && (b.s1[0] < a.s1[0] - NOISE || b.s2[0] < a.s2[0] - NOISE) =>
                {
                    notes.push(format!("threshold fell in c at c = {}", b.c));
                }
                _ => {}
            }
        }
    }
    let mut out = String::from("# monotonicity: ");
    if notes.is_empty() {
        out.push_str("ok\n");
    } else {
        out.push_str("violations present\n");
        for n in notes {
            out.push_str("#   ");
            out.push_str(&n);
            out.push('\n');
        }
    }
    out
}

/// `curves`: emits (s, eta, u, u_more, diagonal) on a 512-point grid in the
/// first sender's oriented frame, with `u` evaluated against the solved
/// opponent and `u_more` against a strictly more informative one.
pub fn cmd_curves(cfg: &RunConfig, out_dir: &Path) -> Result<String, SolveError> {
    let model = cfg.build_model()?;
    let senders = cfg.senders();
    let c = cfg.game.cost;
    let frame_mirrored = senders[0].bias == Bias::Down;
    let frame = if frame_mirrored { model.mirror() } else { model.clone() };
    let (lo, hi) = frame.support();
    let prior = frame.prior();
    let p1 = senders[0].informed_prob;

    // Opponent settings: the solved game threshold, then a rotation toward
    // more information (higher p, lower oriented threshold).
    let (opp, opp_cut) = if senders.len() > 1 {
        let spec1 = SenderSpec {
            informed_prob: senders[1].informed_prob,
            bias: if frame_mirrored { senders[1].bias.flip() } else { senders[1].bias },
        };
        let game = TwoSenderGame::new(model.clone(), [senders[0], senders[1]], c)?;
        let eqs = solve_two(&game)?;
        let cut_game = eqs[0].profile.cuts[1];
        let cut_frame = if frame_mirrored { cut_game.mirror() } else { cut_game };
        (spec1, cut_frame)
    } else {
        (SenderSpec { informed_prob: 1e-12, bias: Bias::Up }, Cut::at(hi))
    };
    let solver = crate::multi::BrSolver::new(&frame, p1, opp);
    let prep = solver.prepare(opp_cut);
    let more_cut = match opp.bias {
        Bias::Up => Cut::at(lo + 0.5 * (opp_cut.threshold - lo)),
        Bias::Down => Cut::at(opp_cut.threshold + 0.5 * (hi - opp_cut.threshold)),
    };
    let more = crate::multi::BrSolver::new(
        &frame,
        p1,
        SenderSpec {
            informed_prob: opp.informed_prob + 0.5 * (1.0 - opp.informed_prob),
            bias: opp.bias,
        },
    );
    let prep_more = more.prepare(more_cut);

    let mut csv = report::provenance_block(&cfg.solver);
    let _ = writeln!(csv, "# frame_mirrored = {frame_mirrored}");
    csv.push_str("s,eta,u,u_more,diagonal_minus_cost\n");
    for &s in crate::num::roots::grid(lo, hi, 512).iter() {
        let eta = crate::belief::nondisclosure_belief(&frame, Cut::at(s), p1, prior);
        let u = solver.u_diag(s, &prep);
        let u_more = more.u_diag(s, &prep_more);
        csv.push_str(&report::csv_line(&[
            report::g17(s),
            report::g17(eta),
            report::g17(u),
            report::g17(u_more),
            report::g17(s - c),
        ]));
        csv.push('\n');
    }
    write_artifact(out_dir, "curves.csv", &csv)?;
    Ok(csv)
}

/// `examples`: runs the golden table and reports pass/fail per claim.
/// Returns (text, all_passed).
pub fn cmd_examples(cfg: &RunConfig, out_dir: &Path) -> Result<(String, bool), SolveError> {
    let golden = welfare::worked_examples_report()?;
    let mut text = report::provenance_block(&cfg.solver);
    text.push_str(&report::golden_report_text(&golden));
    write_artifact(out_dir, "examples_report.txt", &text)?;
    Ok((text, golden.all_pass()))
}

/// `simulate`: Monte Carlo at the solved equilibrium of the configured game.
pub fn cmd_simulate(cfg: &RunConfig, out_dir: &Path) -> Result<String, SolveError> {
    let model = cfg.build_model()?;
    let senders = cfg.senders();
    let c = cfg.game.cost;
    let n = cfg.solver.mc_draws;
    let seed = cfg.solver.seed;

    let mut analytic_welfare = None;
    let report_sim = |play: SimulatedPlay| -> Result<crate::sim::SimReport, SolveError> {
        monte_carlo(&model, &play, c, n, seed).map_err(SolveError::Model)
    };
    let sim = match cfg.game.kind {
        GameKind::Single => {
            let eqs = solve_single(&model, senders[0], c)?;
            let best = &eqs[0];
            let dist = welfare::single_posterior_distribution(&model, senders[0], best.cut)?;
            analytic_welfare = Some(welfare::dm_welfare_quadratic(&dist));
            report_sim(SimulatedPlay::Single { sender: senders[0], cut: best.cut })?
        }
        GameKind::Two => {
            let game = TwoSenderGame::new(model.clone(), [senders[0], senders[1]], c)?;
            let eqs = solve_two(&game)?;
            let cuts = [eqs[0].profile.cuts[0], eqs[0].profile.cuts[1]];
            analytic_welfare = Some(eqs[0].dm_welfare);
            report_sim(SimulatedPlay::Two { senders: [senders[0], senders[1]], cuts })?
        }
        GameKind::Many => {
            let eq = solve_many_senders(&model, c, &senders)?;
            report_sim(SimulatedPlay::Many { senders: &senders, cuts: &eq.profile.cuts })?
        }
        GameKind::Sequential => {
            let sol = solve_sequential(&model, c, senders[0], senders[1])?;
            report_sim(SimulatedPlay::Sequential {
                first: senders[0],
                second: senders[1],
                first_cut: sol.lowest.first_cut,
                policy: &sol.lowest.policy,
            })?
        }
        GameKind::Correlated => match solve_correlated(&model, c, [senders[0], senders[1]])? {
            CorrelatedSolution::SameBias { equilibria, .. } => report_sim(SimulatedPlay::Correlated {
                senders: [senders[0], senders[1]],
                cuts: [equilibria[0].cut, equilibria[0].cut],
            })?,
            CorrelatedSolution::Opposing { profiles } => report_sim(SimulatedPlay::Correlated {
                senders: [senders[0], senders[1]],
                cuts: [profiles[0].profile.cuts[0], profiles[0].profile.cuts[1]],
            })?,
        },
        GameKind::UncertainBias => {
            let lambda = cfg.game.lambda.unwrap();
            let eqs = crate::single::solve_uncertain_bias(&model, senders[0].informed_prob, c, lambda)?;
            report_sim(SimulatedPlay::UncertainBias {
                p: senders[0].informed_prob,
                lambda,
                up_threshold: eqs[0].up_threshold,
                down_threshold: eqs[0].down_threshold,
            })?
        }
    };

    let mut text = report::provenance_block(&cfg.solver);
    let _ = writeln!(text, "draws = {}, seed = {}", sim.n_draws, sim.seed);
    let _ = writeln!(
        text,
        "mean posterior = {:.8} (se {:.2e}); prior = {:.8}",
        sim.mean_posterior,
        sim.se_mean_posterior,
        model.prior()
    );
    let _ = writeln!(
        text,
        "empirical dm welfare = {:.8} (se {:.2e})",
        -sim.mean_dispersion, sim.se_dispersion
    );
    if let Some(w) = analytic_welfare {
        let _ = writeln!(
            text,
            "analytic dm welfare = {:.8} (gap = {:.2} se)",
            w,
            (w + sim.mean_dispersion).abs() / sim.se_dispersion.max(1e-300)
        );
    }
    for (k, (p, se)) in sim.sender_payoff.iter().zip(&sim.se_sender_payoff).enumerate() {
        let _ = writeln!(text, "sender {k} payoff = {:.8} (se {:.2e})", p, se);
    }
    write_artifact(out_dir, "simulation_report.txt", &text)?;

    let mut csv = report::provenance_block(&cfg.solver);
    csv.push_str("n_draws,seed,mean_posterior,se_mean_posterior,mean_dispersion,se_dispersion");
    for k in 0..sim.sender_payoff.len() {
        let _ = write!(csv, ",sender{k}_payoff,sender{k}_se");
    }
    csv.push('\n');
    let mut cells = vec![
        sim.n_draws.to_string(),
        sim.seed.to_string(),
        report::g17(sim.mean_posterior),
        report::g17(sim.se_mean_posterior),
        report::g17(sim.mean_dispersion),
        report::g17(sim.se_dispersion),
    ];
    for (p, se) in sim.sender_payoff.iter().zip(&sim.se_sender_payoff) {
        cells.push(report::g17(*p));
        cells.push(report::g17(*se));
    }
    csv.push_str(&report::csv_line(&cells));
    csv.push('\n');
    write_artifact(out_dir, "simulation_report.csv", &csv)?;
    Ok(text)
}

/// Maps an error to the documented exit code: 3 for configuration errors,
/// 2 for solver failures.
pub fn exit_code(err: &SolveError) -> i32 {
    match err {
        SolveError::Config(_) => 3,
        SolveError::Model(_) => 3,
        SolveError::Inner { source, .. } => exit_code(source),
        _ => 2,
    }
}
