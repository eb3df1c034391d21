//! More than two senders: under a concealment cost every added sender makes
//! the others disclose more. `cargo run --example many_senders`.

use disclosure::belief::SenderSpec;
use disclosure::multi::many::solve_many_senders;
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::welfare::{dm_welfare_quadratic, many_sender_posterior_distribution};

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
    let c = -0.04;

    let mut roster = vec![SenderSpec::up(0.8), SenderSpec::up(0.6)];
    for extra in [None, Some(SenderSpec::up(0.5)), Some(SenderSpec::up(0.5))] {
        if let Some(s) = extra {
            roster.push(s);
        }
        let eq = solve_many_senders(&model, c, &roster).unwrap();
        let dist =
            many_sender_posterior_distribution(&model, roster.clone(), eq.profile.cuts.clone())
                .unwrap();
        let thresholds: Vec<String> =
            eq.profile.cuts.iter().map(|cut| format!("{:.6}", cut.threshold)).collect();
        println!(
            "{} senders: thresholds [{}], dm welfare {:.6} ({} iterations)",
            roster.len(),
            thresholds.join(", "),
            dm_welfare_quadratic(&dist),
            eq.iterations
        );
    }
    println!("\neach added sender pushes the incumbents' thresholds down and the");
    println!("decision maker's welfare up: complements under a concealment cost.");
}
