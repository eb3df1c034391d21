//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured figures (run with `--nocapture` to see them all).
//!
//! Tolerances are pinned in the constants below; every criterion either
//! holds at its stated tolerance or the test fails.

use std::time::Instant;

use rand::Rng;

use disclosure::belief::{concealment_payoff, nondisclosure_belief, Bias, Cut, SenderSpec};
use disclosure::multi::correlated::{solve_correlated, CorrelatedSolution};
use disclosure::multi::grid::enumerate_equilibria_grid;
use disclosure::multi::nonlinear::{power_gap_curvature, power_shift_gap};
use disclosure::multi::sequential::solve_sequential;
use disclosure::multi::{
    best_response_set, solve_extremal_complements, solve_extremal_substitutes, TwoSenderEquilibrium,
    TwoSenderGame,
};
use disclosure::num::rng_from_seed;
use disclosure::signal::{
    beta_precision_model, model_from_target_curve, precision_nd_derivative, ContinuousSignalModel,
    DiscreteSignalModel, PrecisionFamily, SignalModel,
};
use disclosure::sim::{monte_carlo, monte_carlo_concealment_payoff, SimulatedPlay};
use disclosure::single::solve_single;
use disclosure::welfare;

const SEED: u64 = 0x5eed_2026_0809;

fn uniform() -> SignalModel {
    ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into()
}

fn four_point() -> SignalModel {
    DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap().into()
}

/// A random smooth belief-density model; the prior is the implied mean.
fn random_model(rng: &mut impl Rng) -> SignalModel {
    let lo = rng.gen_range(0.0..0.15);
    let hi = rng.gen_range(0.85..1.0);
    let a1 = rng.gen_range(-0.6..0.6);
    let a2 = rng.gen_range(-0.5..0.5);
    let a3 = rng.gen_range(-0.4..0.4);
    let density = move |s: f64| {
        let u = (s - lo) / (hi - lo) * std::f64::consts::PI;
        (a1 * u.cos() + a2 * (2.0 * u).cos() + a3 * (3.0 * u).sin()).exp()
    };
    ContinuousSignalModel::from_belief_density(density, lo, hi, None).unwrap().into()
}

/// The steep quadratic target curve used for multi-equilibrium fixtures.
fn curve_model() -> SignalModel {
    let psi = |s: f64| 0.5 + 1.6 * (s - 0.5) * (s - 0.5);
    let dpsi = |s: f64| 3.2 * (s - 0.5);
    model_from_target_curve(psi, dpsi, 0.0, 1.0).unwrap().model.into()
}

#[test]
fn criterion_01_golden_numbers() {
    let start = Instant::now();
    let report = welfare::worked_examples_report().unwrap();
    let elapsed = start.elapsed();
    for c in &report.checks {
        assert!(c.pass, "{} failed: value {:.6}, target {:.6}", c.name, c.value, c.target);
    }
    assert!(elapsed.as_secs_f64() < 2.0, "golden table took {elapsed:?}");
    let eta = report.checks.iter().find(|c| c.name == "single_best_nd_belief").unwrap();
    println!(
        "PASS criterion 1: golden numbers within 5e-5 (eta = {:.6}, {} checks, {:.0} ms)",
        eta.value,
        report.checks.len(),
        elapsed.as_secs_f64() * 1e3
    );
}

#[test]
fn criterion_02_unique_equilibrium_by_lattice_enumeration() {
    let start = Instant::now();
    let game =
        TwoSenderGame::new(four_point(), [SenderSpec::up(0.8), SenderSpec::down(0.8)], 0.36)
            .unwrap();
    let eqs = enumerate_equilibria_grid(&game, 512).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(eqs.len(), 1, "expected a unique equilibrium, found {}", eqs.len());
    let eq = &eqs[0];
    assert!((eq.profile.cuts[0].threshold - 1.0).abs() < 1e-12);
    assert!((eq.profile.cuts[0].marginal_weight - 1.0).abs() < 1e-9);
    assert!((eq.profile.cuts[1].threshold - 0.0).abs() < 1e-12);
    assert!((eq.profile.cuts[1].marginal_weight - 1.0).abs() < 1e-9);
    assert!(elapsed.as_secs_f64() < 30.0, "lattice enumeration took {elapsed:?}");
    println!(
        "PASS criterion 2: full strategy lattice finds exactly one equilibrium ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_03_zero_cost_irrelevance() {
    let mut rng = rng_from_seed(SEED ^ 3);
    let mut max_gap: f64 = 0.0;
    for _ in 0..50 {
        let model = random_model(&mut rng);
        let (lo, hi) = model.support();
        let p_i = rng.gen_range(0.15..0.95);
        let p_j = rng.gen_range(0.15..0.95);
        let s_hat_j = rng.gen_range(lo..hi);
        let bias_j = if rng.gen_bool(0.5) { Bias::Up } else { Bias::Down };
        let single = solve_single(&model, SenderSpec::up(p_i), 0.0).unwrap();
        let fp = single[0].cut.threshold;
        let br = best_response_set(
            &model,
            0.0,
            SenderSpec::up(p_i),
            SenderSpec { informed_prob: p_j, bias: bias_j },
            Cut::at(s_hat_j),
        )
        .unwrap();
        max_gap = max_gap.max((br.smallest - fp).abs()).max((br.largest - fp).abs());
    }
    assert!(max_gap < 1e-6, "worst irrelevance gap {max_gap:.3e}");
    println!("PASS criterion 3: c = 0 best responses match single-sender fixed points (max gap {max_gap:.2e})");
}

#[test]
fn criterion_04_ivp_sandwich_and_monotonicity() {
    let mut rng = rng_from_seed(SEED ^ 4);
    let mut worst_side: f64 = 0.0;
    let mut worst_mono: f64 = f64::NEG_INFINITY;
    for k in 0..200 {
        let model = random_model(&mut rng);
        let (lo, hi) = model.support();
        let span = hi - lo;
        let prior = model.prior();
        let p_i = rng.gen_range(0.2..0.95);
        let p_j = rng.gen_range(0.2..0.8);
        let s_hat_j = rng.gen_range(lo + 0.05 * span..hi - 0.1 * span);
        let single = solve_single(&model, SenderSpec::up(p_i), 0.0).unwrap();
        let fp = single[0].cut.threshold;
        // Sample away from the fixed point so the strict side is resolvable.
        let mut s_i = rng.gen_range(lo + 0.02 * span..hi - 0.02 * span);
        if (s_i - fp).abs() < 0.05 * span {
            s_i = if fp + 0.08 * span < hi { fp + 0.08 * span } else { fp - 0.08 * span };
        }
        let eta = nondisclosure_belief(&model, Cut::at(s_i), p_i, prior);
        let spec_j = SenderSpec::up(p_j);
        let u = concealment_payoff(&model, s_i, Cut::at(s_i), p_i, Cut::at(s_hat_j), spec_j, prior)
            .unwrap()
            .value();
        // Sandwich on the side dictated by the sign of s_i - eta.
        if s_i > eta {
            worst_side = worst_side.max(eta - u).max(u - s_i);
            assert!(u > eta && u < s_i, "draw {k}: u {u} outside ({eta}, {s_i})");
        } else {
            worst_side = worst_side.max(u - eta).max(s_i - u);
            assert!(u < eta && u > s_i, "draw {k}: u {u} outside ({s_i}, {eta})");
        }
        // More informative opponent shrinks |U - s_i|.
        let p_j2 = p_j + 0.5 * (1.0 - p_j);
        let s_hat_j2 = lo + 0.5 * (s_hat_j - lo);
        let u2 = concealment_payoff(
            &model,
            s_i,
            Cut::at(s_i),
            p_i,
            Cut::at(s_hat_j2),
            SenderSpec::up(p_j2),
            prior,
        )
        .unwrap()
        .value();
        worst_mono = worst_mono.max((u2 - s_i).abs() - (u - s_i).abs());
    }
    assert!(worst_mono <= 1e-10, "informativeness monotonicity violated by {worst_mono:.3e}");
    println!(
        "PASS criterion 4: payoff sandwich strict on 200 draws; |U - s| monotone (worst excess {worst_mono:.2e})"
    );
}

#[test]
fn criterion_05_strategic_structure_direction() {
    let mut rng = rng_from_seed(SEED ^ 5);
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..100 {
        let model = random_model(&mut rng);
        let (lo, hi) = model.support();
        let span = hi - lo;
        let p_i = rng.gen_range(0.2..0.95);
        let p_j = rng.gen_range(0.2..0.95);
        let c = if rng.gen_bool(0.5) {
            rng.gen_range(0.01..0.05) * span
        } else {
            -rng.gen_range(0.01..0.05) * span
        };
        let y_lo = rng.gen_range(lo + 0.05 * span..lo + 0.45 * span);
        let y_hi = rng.gen_range(y_lo + 0.1 * span..hi - 0.05 * span);
        let br = |y: f64| {
            best_response_set(
                &model,
                c,
                SenderSpec::up(p_i),
                SenderSpec::up(p_j),
                Cut::at(y),
            )
            .unwrap()
        };
        let (a, b) = (br(y_lo), br(y_hi));
        // Direction sign(-c): increasing in the opponent threshold when
        // c < 0, decreasing when c > 0.
        let dir = if c < 0.0 { 1.0 } else { -1.0 };
        worst = worst
            .max(-dir * (b.smallest - a.smallest))
            .max(-dir * (b.largest - a.largest));
    }
    assert!(worst <= 1e-7, "best-response monotonicity violated by {worst:.3e}");
    println!("PASS criterion 5: best responses monotone in the opponent threshold with direction sign(-c) (worst violation {worst:.2e})");
}

struct TarskiFixture {
    model: SignalModel,
    p: [f64; 2],
    c: f64,
}

fn tarski_fixtures() -> Vec<TarskiFixture> {
    let beta_lo: SignalModel = beta_precision_model(0.8).unwrap().into();
    let beta_hi: SignalModel = beta_precision_model(1.4).unwrap().into();
    vec![
        TarskiFixture { model: uniform(), p: [0.8, 0.6], c: -0.04 },
        TarskiFixture { model: uniform(), p: [0.7, 0.7], c: 0.05 },
        TarskiFixture { model: uniform(), p: [0.9, 0.4], c: 0.03 },
        TarskiFixture { model: uniform(), p: [0.5, 0.5], c: -0.02 },
        TarskiFixture { model: beta_lo.clone(), p: [0.8, 0.5], c: -0.05 },
        TarskiFixture { model: beta_lo, p: [0.6, 0.6], c: 0.04 },
        TarskiFixture { model: beta_hi.clone(), p: [0.75, 0.65], c: -0.03 },
        TarskiFixture { model: beta_hi, p: [0.55, 0.85], c: 0.06 },
        TarskiFixture { model: curve_model(), p: [0.8, 0.7], c: 0.02 },
        TarskiFixture { model: curve_model(), p: [0.6, 0.8], c: -0.03 },
    ]
}

fn solve_pair(game: &TwoSenderGame) -> (TwoSenderEquilibrium, TwoSenderEquilibrium) {
    if game.cost > 0.0 {
        solve_extremal_substitutes(game).unwrap()
    } else {
        solve_extremal_complements(game).unwrap()
    }
}

#[test]
fn criterion_06_tarski_solvers_certified_and_grid_checked() {
    let mut worst_residual: f64 = 0.0;
    for (k, fx) in tarski_fixtures().into_iter().enumerate() {
        let game = TwoSenderGame::new(
            fx.model.clone(),
            [SenderSpec::up(fx.p[0]), SenderSpec::up(fx.p[1])],
            fx.c,
        )
        .unwrap();
        let (first, second) = solve_pair(&game);
        for eq in [&first, &second] {
            worst_residual = worst_residual.max(eq.residuals[0]).max(eq.residuals[1]);
            assert!(
                eq.residuals[0] <= 1e-7 && eq.residuals[1] <= 1e-7,
                "fixture {k}: residuals {:?}",
                eq.residuals
            );
        }
        // Grid agreement within one cell at resolution 512.
        let grid = enumerate_equilibria_grid(&game, 512).unwrap();
        assert!(!grid.is_empty(), "fixture {k}: grid found no equilibria");
        let cell = grid[0].cell;
        for eq in [&first, &second] {
            let hit = grid.iter().any(|g| {
                (g.profile.cuts[0].threshold - eq.profile.cuts[0].threshold).abs() <= cell
                    && (g.profile.cuts[1].threshold - eq.profile.cuts[1].threshold).abs() <= cell
            });
            assert!(hit, "fixture {k}: {:?} not within one grid cell", eq.label);
        }
        // Comparative statics in p_0 per the cost sign.
        let bumped = TwoSenderGame::new(
            fx.model.clone(),
            [SenderSpec::up((fx.p[0] + 0.05).min(0.99)), SenderSpec::up(fx.p[1])],
            fx.c,
        )
        .unwrap();
        let (b_first, b_second) = solve_pair(&bumped);
        for (eq, beq) in [(&first, &b_first), (&second, &b_second)] {
            let d0 = beq.profile.cuts[0].threshold - eq.profile.cuts[0].threshold;
            let d1 = beq.profile.cuts[1].threshold - eq.profile.cuts[1].threshold;
            assert!(d0 <= 1e-7, "fixture {k}: own threshold rose in p_0 ({d0:.2e})");
            if fx.c > 0.0 {
                assert!(d1 >= -1e-7, "fixture {k}: rival threshold fell under substitutes ({d1:.2e})");
            } else {
                assert!(d1 <= 1e-7, "fixture {k}: rival threshold rose under complements ({d1:.2e})");
            }
        }
    }
    println!(
        "PASS criterion 6: extremal equilibria certified (worst residual {worst_residual:.2e}), grid-checked at 512, comparative statics hold"
    );
}

#[test]
fn criterion_07_monte_carlo_oracle() {
    let start = Instant::now();
    let n = 1_000_000u64;
    let mut fixtures: Vec<(SignalModel, [SenderSpec; 2], f64)> = vec![
        (uniform(), [SenderSpec::up(0.8), SenderSpec::up(0.6)], 0.0),
        (uniform(), [SenderSpec::up(0.7), SenderSpec::down(0.7)], 0.05),
        (uniform(), [SenderSpec::up(0.5), SenderSpec::up(0.9)], -0.04),
        (beta_precision_model(0.8).unwrap().into(), [SenderSpec::up(0.8), SenderSpec::up(0.5)], 0.03),
        (beta_precision_model(1.3).unwrap().into(), [SenderSpec::up(0.6), SenderSpec::down(0.6)], -0.02),
        (curve_model(), [SenderSpec::up(0.8), SenderSpec::up(0.7)], 0.02),
        (four_point(), [SenderSpec::up(0.8), SenderSpec::down(0.8)], 0.36),
    ];
    fixtures.push((uniform(), [SenderSpec::up(0.85), SenderSpec::down(0.45)], -0.03));
    fixtures.push((beta_precision_model(1.1).unwrap().into(), [SenderSpec::up(0.4), SenderSpec::up(0.4)], 0.02));
    fixtures.push((uniform(), [SenderSpec::up(0.65), SenderSpec::up(0.65)], 0.0));

    for (k, (model, senders, c)) in fixtures.into_iter().enumerate() {
        let game = TwoSenderGame::new(model.clone(), senders, c).unwrap();
        let eq = if matches!(model, SignalModel::Discrete(_)) {
            let found = enumerate_equilibria_grid(&game, 512).unwrap();
            let certified =
                disclosure::multi::grid::certify_grid_candidates(&game, &found).unwrap();
            certified.into_iter().next().unwrap()
        } else {
            solve_pair(&game).0
        };
        let cuts = [eq.profile.cuts[0], eq.profile.cuts[1]];
        let seed = SEED ^ (k as u64);
        let rep = monte_carlo(&model, &SimulatedPlay::Two { senders, cuts }, c, n, seed).unwrap();

        // DM welfare.
        let gap_w = (-eq.dm_welfare - rep.mean_dispersion).abs();
        assert!(
            gap_w < 3.0 * rep.se_dispersion,
            "fixture {k}: welfare gap {gap_w:.2e} vs se {:.2e}",
            rep.se_dispersion
        );
        // Sender payoffs (analytic = oriented prior minus expected costs).
        for idx in 0..2 {
            let analytic = disclosure::single::sender_welfare(&model, cuts[idx], senders[idx], c);
            let gap = (analytic - rep.sender_payoff[idx]).abs();
            assert!(
                gap < 3.0 * rep.se_sender_payoff[idx].max(1e-9),
                "fixture {k} sender {idx}: payoff gap {gap:.2e} vs se {:.2e}",
                rep.se_sender_payoff[idx]
            );
        }
        // Concealment payoff of sender 0's threshold type (continuous only:
        // the discrete marginal type needs an interior signal).
        if matches!(model, SignalModel::Continuous(_)) {
            let (frame, cut_i, cut_j, spec_j) = match senders[0].bias {
                Bias::Up => (model.clone(), cuts[0], cuts[1], senders[1]),
                Bias::Down => (
                    model.mirror(),
                    cuts[0].mirror(),
                    cuts[1].mirror(),
                    SenderSpec { informed_prob: senders[1].informed_prob, bias: senders[1].bias.flip() },
                ),
            };
            let s = cut_i.threshold.clamp(frame.support().0 + 1e-9, frame.support().1 - 1e-9);
            let exact = concealment_payoff(
                &frame,
                s,
                cut_i,
                senders[0].informed_prob,
                cut_j,
                spec_j,
                frame.prior(),
            )
            .unwrap()
            .value();
            let (mc, se) = monte_carlo_concealment_payoff(
                &frame,
                s,
                cut_i,
                senders[0].informed_prob,
                cut_j,
                spec_j,
                n,
                seed ^ 0xabcd,
            );
            assert!(
                (mc - exact).abs() < 3.0 * se,
                "fixture {k}: concealment payoff gap {:.2e} vs se {:.2e}",
                (mc - exact).abs(),
                se
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "oracle run took {elapsed:?}");
    println!(
        "PASS criterion 7: analytic payoffs and welfare within 3 SE of 10^6-draw simulations on 10 fixtures ({:.1} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_08_sequential_reporting() {
    let mut rng = rng_from_seed(SEED ^ 8);
    for &c in &[0.04, -0.04] {
        for k in 0..20 {
            let model: SignalModel = match k % 3 {
                0 => uniform(),
                1 => beta_precision_model(0.9).unwrap().into(),
                _ => beta_precision_model(1.3).unwrap().into(),
            };
            let p1 = rng.gen_range(0.3..0.9);
            let p2 = rng.gen_range(0.2..0.6);
            let p2_hi = p2 + rng.gen_range(0.2..0.35);
            let a = solve_sequential(&model, c, SenderSpec::up(p1), SenderSpec::up(p2)).unwrap();
            let b = solve_sequential(&model, c, SenderSpec::up(p1), SenderSpec::up(p2_hi)).unwrap();
            let dir = if c > 0.0 { 1.0 } else { -1.0 };
            let d_low = b.lowest.first_cut.threshold - a.lowest.first_cut.threshold;
            let d_high = b.highest.first_cut.threshold - a.highest.first_cut.threshold;
            assert!(
                dir * d_low >= -1e-7 && dir * d_high >= -1e-7,
                "c = {c}, fixture {k}: thresholds moved ({d_low:.2e}, {d_high:.2e}) against the cost sign"
            );
        }
    }
    // Irrelevance for the first mover at zero cost.
    let mut max_gap: f64 = 0.0;
    for (p1, p2) in [(0.8, 0.5), (0.6, 0.9), (0.4, 0.3)] {
        let model = uniform();
        let sol = solve_sequential(&model, 0.0, SenderSpec::up(p1), SenderSpec::up(p2)).unwrap();
        let single = solve_single(&model, SenderSpec::up(p1), 0.0).unwrap();
        max_gap = max_gap.max((sol.lowest.first_cut.threshold - single[0].cut.threshold).abs());
        max_gap = max_gap.max((sol.highest.first_cut.threshold - single[0].cut.threshold).abs());
    }
    assert!(max_gap < 1e-6);
    println!("PASS criterion 8: second-sender informedness moves the first mover with the cost sign on 20 fixtures per sign; zero-cost gap {max_gap:.2e}");
}

#[test]
fn criterion_09_correlated_variant() {
    let mut rng = rng_from_seed(SEED ^ 9);
    // Same-bias reduction.
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let model = uniform();
        let p1 = rng.gen_range(0.2..0.9);
        let p2 = rng.gen_range(0.2..0.9);
        let c = rng.gen_range(-0.05..0.08);
        let bias = if rng.gen_bool(0.5) { Bias::Up } else { Bias::Down };
        let senders = [
            SenderSpec { informed_prob: p1, bias },
            SenderSpec { informed_prob: p2, bias },
        ];
        let sol = solve_correlated(&model, c, senders).unwrap();
        let eff = p1 + p2 - p1 * p2;
        match sol {
            CorrelatedSolution::SameBias { effective_p, equilibria } => {
                assert!((effective_p - eff).abs() < 1e-15);
                let direct =
                    solve_single(&model, SenderSpec { informed_prob: eff, bias }, c).unwrap();
                assert_eq!(equilibria.len(), direct.len());
                for (a, b) in equilibria.iter().zip(&direct) {
                    worst = worst.max((a.cut.threshold - b.cut.threshold).abs());
                }
            }
            CorrelatedSolution::Opposing { .. } => panic!("expected the same-bias reduction"),
        }
    }
    assert!(worst < 1e-8, "same-bias reduction gap {worst:.2e}");
    // Opposing biases at zero cost: strictly less disclosure per sender.
    for k in 0..10 {
        let model: SignalModel = if k % 2 == 0 {
            uniform()
        } else {
            beta_precision_model(1.0 + 0.1 * k as f64).unwrap().into()
        };
        let p1 = 0.3 + 0.06 * k as f64;
        let p2 = 0.8 - 0.04 * k as f64;
        let sol =
            solve_correlated(&model, 0.0, [SenderSpec::up(p1), SenderSpec::down(p2)]).unwrap();
        let profiles = match sol {
            CorrelatedSolution::Opposing { profiles } => profiles,
            _ => panic!("expected opposing-bias solve"),
        };
        let up_solo = solve_single(&model, SenderSpec::up(p1), 0.0).unwrap()[0].cut.threshold;
        let down_solo = solve_single(&model, SenderSpec::down(p2), 0.0).unwrap()[0].cut.threshold;
        for eq in &profiles {
            assert!(
                eq.profile.cuts[0].threshold > up_solo + 1e-7,
                "fixture {k}: upward sender not strictly less informative"
            );
            assert!(
                eq.profile.cuts[1].threshold < down_solo - 1e-7,
                "fixture {k}: downward sender not strictly less informative"
            );
        }
    }
    println!("PASS criterion 9: pooled-informedness reduction within 1e-8; opposing-bias equilibria strictly less informative on 10 fixtures");
}

#[test]
fn criterion_10_curvature_regions() {
    let mut rng = rng_from_seed(SEED ^ 10);
    let h = 1e-4;
    // (alpha, r) samplers per stated region.
    type RegionSampler = Box<dyn Fn(&mut disclosure::num::SeededRng) -> (f64, f64)>;
    let regions: [(&str, RegionSampler); 4] = [
        ("0<a<=1, r>1", Box::new(|rng| (rng.gen_range(0.15..1.0), rng.gen_range(1.1..3.0)))),
        (
            "0<a<=1, bound<r<1",
            Box::new(|rng| {
                let a = rng.gen_range(0.2..0.95);
                let lo = (1.0 - a) / (1.0 + a);
                (a, lo + (0.97 - lo) * rng.gen_range(0.15..1.0))
            }),
        ),
        ("a<-1, r>1", Box::new(|rng| (rng.gen_range(-3.0..-1.05), rng.gen_range(1.1..3.0)))),
        ("a<0, r<1", Box::new(|rng| (rng.gen_range(-3.0..-0.05), rng.gen_range(0.2..0.9)))),
    ];
    for (name, sample) in regions {
        for _ in 0..200 {
            let (alpha, r) = sample(&mut rng);
            let beta = rng.gen_range(0.03..0.97);
            let w = |b: f64| power_shift_gap(b, r, alpha);
            let second = (w(beta + h) - 2.0 * w(beta) + w(beta - h)) / (h * h);
            let indicator = power_gap_curvature(beta, alpha, r);
            assert!(
                second * indicator > 0.0,
                "region {name}: sign mismatch at beta={beta:.3}, alpha={alpha:.3}, r={r:.3} (fd {second:.3e}, H {indicator:.3e})"
            );
        }
    }
    println!("PASS criterion 10: second differences of the utility gap match the curvature indicator in all four regions (800 points)");
}

#[test]
fn criterion_11_precision_derivative() {
    let family = PrecisionFamily::symmetric_beta();
    let mut rng = rng_from_seed(SEED ^ 11);
    let mut worst_rel: f64 = 0.0;
    for k in 0..50 {
        let s_hat = rng.gen_range(0.08..0.45);
        let rho = rng.gen_range(0.5..2.2);
        let p = rng.gen_range(0.15..0.95);
        let d = precision_nd_derivative(&family, s_hat, p, rho).unwrap();
        assert!(
            d.finite_difference < 0.0,
            "draw {k}: derivative {:+.3e} not negative at (s={s_hat:.3}, rho={rho:.3}, p={p:.3})",
            d.finite_difference
        );
        assert!(
            d.finite_difference.signum() == d.quadrature_form.signum(),
            "draw {k}: sign mismatch fd {:+.3e} vs quadrature {:+.3e}",
            d.finite_difference,
            d.quadrature_form
        );
        worst_rel = worst_rel
            .max((d.finite_difference - d.quadrature_form).abs() / d.quadrature_form.abs());
    }
    println!("PASS criterion 11: precision derivative negative below the prior; routes agree in sign at 50 points (worst relative gap {worst_rel:.2e})");
}
