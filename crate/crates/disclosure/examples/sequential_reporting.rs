//! Sequential reporting: the first mover anticipates how the second sender's
//! informedness will sway the DM after his own silence. `cargo run --example
//! sequential_reporting`.

use disclosure::belief::SenderSpec;
use disclosure::multi::sequential::solve_sequential;
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::single::solve_single;

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
    let first = SenderSpec::up(0.8);

    let solo = solve_single(&model, first, 0.0).unwrap()[0].cut.threshold;
    println!("first mover's single-sender fixed point: {solo:.6}\n");

    for c in [0.05, 0.0, -0.05] {
        println!("c = {c:+.2}: first mover's extremal thresholds as the follower improves");
        for p2 in [0.3, 0.6, 0.9] {
            let sol = solve_sequential(&model, c, first, SenderSpec::up(p2)).unwrap();
            println!(
                "  p2 = {p2:.1}: lowest {:.6}, highest {:.6}; follower after silence cuts at {:.6}",
                sol.lowest.first_cut.threshold,
                sol.highest.first_cut.threshold,
                sol.lowest.policy.after_nondisclosure
            );
        }
        println!();
    }
    println!("a stronger follower raises the first mover's threshold under a");
    println!("disclosure cost, lowers it under a concealment cost, and leaves");
    println!("it exactly at the single-sender fixed point when messages are free.");
}
