//! A single sender whose bias direction is private: interior type
//! thresholds always differ by exactly twice the message cost.
//! `cargo run --example uncertain_bias`.

use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::single::solve_uncertain_bias;
use disclosure::welfare::{dm_welfare_quadratic, uncertain_bias_posterior_distribution};

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
    let (p, lambda) = (0.8, 0.5);

    println!("{:>7} {:>10} {:>10} {:>10} {:>12}", "c", "s_up", "s_down", "nd belief", "dm welfare");
    for c in [-0.06, -0.03, 0.0, 0.03, 0.06] {
        let eqs = solve_uncertain_bias(&model, p, c, lambda).unwrap();
        for eq in &eqs {
            let dist = uncertain_bias_posterior_distribution(
                &model,
                p,
                lambda,
                eq.up_threshold,
                eq.down_threshold,
            )
            .unwrap();
            println!(
                "{c:>+7.2} {:>10.6} {:>10.6} {:>10.6} {:>12.6}",
                eq.up_threshold,
                eq.down_threshold,
                eq.nondisclosure_belief,
                dm_welfare_quadratic(&dist)
            );
        }
    }
    println!();
    println!("s_up - s_down = 2c throughout: a disclosure cost leaves an interval");
    println!("neither type reveals, a concealment cost makes their regions overlap.");
}
