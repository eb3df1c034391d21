//! The seeded simulation oracle against the analytic machinery: posterior
//! martingale, DM welfare, sender payoffs, and the concealment payoff of the
//! threshold type. `cargo run --example monte_carlo_oracle`.

use disclosure::belief::{concealment_payoff, SenderSpec};
use disclosure::multi::{solve_extremal_complements, TwoSenderGame};
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::sim::{monte_carlo, monte_carlo_concealment_payoff, SimulatedPlay};

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
    let senders = [SenderSpec::up(0.8), SenderSpec::up(0.6)];
    let c = -0.04;
    let game = TwoSenderGame::new(model.clone(), senders, c).unwrap();
    let (eq, _) = solve_extremal_complements(&game).unwrap();
    let cuts = [eq.profile.cuts[0], eq.profile.cuts[1]];

    let n = 1_000_000;
    let seed = 20_260_809;
    let rep = monte_carlo(&model, &SimulatedPlay::Two { senders, cuts }, c, n, seed).unwrap();
    println!("{n} draws at seed {seed}:");
    println!(
        "  mean posterior     {:.6} +- {:.1e}  (prior 0.5)",
        rep.mean_posterior, rep.se_mean_posterior
    );
    println!(
        "  dm welfare         {:+.6} +- {:.1e}  (analytic {:+.6})",
        -rep.mean_dispersion, rep.se_dispersion, eq.dm_welfare
    );
    for k in 0..2 {
        println!(
            "  sender {k} payoff    {:+.6} +- {:.1e}  (analytic {:+.6})",
            rep.sender_payoff[k], rep.se_sender_payoff[k], eq.sender_welfare[k]
        );
    }

    // The threshold type's concealment payoff, simulated from his vantage.
    let s = cuts[0].threshold;
    let exact = concealment_payoff(&model, s, cuts[0], 0.8, cuts[1], senders[1], 0.5)
        .unwrap()
        .value();
    let (mc, se) = monte_carlo_concealment_payoff(&model, s, cuts[0], 0.8, cuts[1], senders[1], n, seed);
    println!(
        "  concealment payoff {:.6} +- {:.1e}  (analytic {:.6}, gap {:.2} se)",
        mc,
        se,
        exact,
        (mc - exact).abs() / se
    );

    // Reruns with the same seed are bit-identical.
    let again = monte_carlo(&model, &SimulatedPlay::Two { senders, cuts }, c, n, seed).unwrap();
    println!(
        "  rerun identical: {}",
        rep.mean_posterior.to_bits() == again.mean_posterior.to_bits()
    );
}
