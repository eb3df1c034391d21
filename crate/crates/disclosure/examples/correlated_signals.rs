//! Perfectly correlated signals: same-bias pairs pool into one better
//! informed sender, while opposite-bias pairs each disclose strictly less
//! than alone. `cargo run --example correlated_signals`.

use disclosure::belief::SenderSpec;
use disclosure::multi::correlated::{solve_correlated, CorrelatedSolution};
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::single::solve_single;

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();

    // Same bias: informed with probability p1 + p2 - p1 p2.
    match solve_correlated(&model, 0.0, [SenderSpec::up(0.5), SenderSpec::up(0.5)]).unwrap() {
        CorrelatedSolution::SameBias { effective_p, equilibria } => {
            let solo = solve_single(&model, SenderSpec::up(0.5), 0.0).unwrap()[0].cut.threshold;
            println!("same bias, p = 0.5 each: effective p = {effective_p:.4}");
            println!(
                "  common threshold {:.6} vs {:.6} alone (more disclosure together)",
                equilibria[0].cut.threshold, solo
            );
        }
        CorrelatedSolution::Opposing { .. } => unreachable!(),
    }

    // Opposing biases, no message cost: the shared-signal structure breaks
    // the irrelevance result and both senders lean on each other's silence.
    match solve_correlated(&model, 0.0, [SenderSpec::up(0.6), SenderSpec::down(0.7)]).unwrap() {
        CorrelatedSolution::Opposing { profiles } => {
            let up_solo = solve_single(&model, SenderSpec::up(0.6), 0.0).unwrap()[0].cut.threshold;
            let down_solo =
                solve_single(&model, SenderSpec::down(0.7), 0.0).unwrap()[0].cut.threshold;
            for eq in &profiles {
                println!("\nopposing biases, c = 0:");
                println!(
                    "  upward sender: threshold {:.6} (alone {:.6}) - conceals more",
                    eq.profile.cuts[0].threshold, up_solo
                );
                println!(
                    "  downward sender: threshold {:.6} (alone {:.6}) - conceals more",
                    eq.profile.cuts[1].threshold, down_solo
                );
                println!("  joint nondisclosure belief {:.6}", eq.joint_nd_belief);
            }
        }
        CorrelatedSolution::SameBias { .. } => unreachable!(),
    }
}
