//! The single-sender benchmark: equilibrium thresholds are crossings of the
//! nondisclosure-belief curve with the line s - c. Run with
//! `cargo run --example single_sender`.

use disclosure::belief::{nondisclosure_belief, Cut, SenderSpec};
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::single::{extremal_single, solve_single, sweep_single};
use disclosure::Bias;

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
    let sender = SenderSpec::up(0.8);

    // No message cost: the unique equilibrium is the fixed point of the
    // nondisclosure belief.
    let eqs = solve_single(&model, sender, 0.0).unwrap();
    println!("c = 0: {} equilibrium at threshold {:.6}", eqs.len(), eqs[0].cut.threshold);
    let eta = nondisclosure_belief(&model, Cut::at(eqs[0].cut.threshold), 0.8, 0.5);
    println!("       nondisclosure belief there = {eta:.6} (fixed point)");

    // A disclosure cost opens a wedge: the threshold type's belief exceeds
    // the DM's nondisclosure belief by exactly c.
    for c in [0.05, -0.05] {
        let eqs = solve_single(&model, sender, c).unwrap();
        println!("c = {c:+.2}: {} equilibria", eqs.len());
        for eq in &eqs {
            println!(
                "  threshold {:.6} ({:?}), nd belief {:.6}, sender welfare {:.6}, dm welfare {:.6}",
                eq.cut.threshold, eq.kind, eq.nondisclosure_belief, eq.sender_welfare, eq.dm_welfare
            );
        }
    }

    // Comparative statics: more informed senders disclose more, higher
    // disclosure costs less.
    let ps = [0.3, 0.5, 0.7, 0.9];
    let cs = [-0.04, 0.0, 0.04];
    println!("\nextremal thresholds over (p, c):");
    println!("{:>6} {:>7} {:>10} {:>10}", "p", "c", "lowest", "highest");
    for row in sweep_single(&model, Bias::Up, &ps, &cs).unwrap() {
        println!(
            "{:>6.2} {:>7.2} {:>10.6} {:>10.6}",
            row.p, row.c, row.lowest_threshold, row.highest_threshold
        );
    }

    // A downward-biased sender is the mirror image.
    let (low, high) = extremal_single(&model, SenderSpec::down(0.8), 0.05).unwrap();
    println!(
        "\ndownward sender at c = 0.05: thresholds in [{:.6}, {:.6}] (discloses below)",
        low.cut.threshold, high.cut.threshold
    );
}
