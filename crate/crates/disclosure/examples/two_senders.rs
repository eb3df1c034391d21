//! Two senders: disclosures are strategic complements under a concealment
//! cost and substitutes under a disclosure cost; extremal equilibria come
//! from monotone fixed-point iteration. `cargo run --example two_senders`.

use disclosure::belief::SenderSpec;
use disclosure::multi::{solve_extremal_complements, solve_extremal_substitutes, TwoSenderGame};
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::single::solve_single;

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
    let senders = [SenderSpec::up(0.8), SenderSpec::up(0.6)];

    let single0 = solve_single(&model, SenderSpec::up(0.8), -0.04).unwrap()[0].cut.threshold;
    let single1 = solve_single(&model, SenderSpec::up(0.6), -0.04).unwrap()[0].cut.threshold;
    println!("single-sender thresholds at c = -0.04: ({single0:.6}, {single1:.6})");

    // Concealment cost: both senders disclose more than alone, and the
    // smallest equilibrium is the DM's best.
    let game = TwoSenderGame::new(model.clone(), senders, -0.04).unwrap();
    let (small, large) = solve_extremal_complements(&game).unwrap();
    for eq in [&small, &large] {
        println!(
            "{:?}: thresholds ({:.6}, {:.6}), residuals ({:.1e}, {:.1e}), dm welfare {:.6}",
            eq.label,
            eq.profile.cuts[0].threshold,
            eq.profile.cuts[1].threshold,
            eq.residuals[0],
            eq.residuals[1],
            eq.dm_welfare
        );
    }

    // Disclosure cost: each sender's disclosure crowds out the other's; the
    // named equilibria bracket every other equilibrium.
    let game = TwoSenderGame::new(model.clone(), senders, 0.05).unwrap();
    let (i_max, j_max) = solve_extremal_substitutes(&game).unwrap();
    println!();
    for eq in [&i_max, &j_max] {
        println!(
            "{:?}: thresholds ({:.6}, {:.6}), sender welfare ({:.6}, {:.6})",
            eq.label,
            eq.profile.cuts[0].threshold,
            eq.profile.cuts[1].threshold,
            eq.sender_welfare[0],
            eq.sender_welfare[1]
        );
    }
    println!(
        "\nmonotone iteration trace of {:?} (oriented thresholds):",
        i_max.label
    );
    for (k, step) in i_max.oriented_trace.iter().enumerate() {
        println!("  step {k}: ({:.8}, {:.8})", step[0], step[1]);
    }
}
