//! Nonlinear sender utilities over the DM's posterior: the zero-cost
//! irrelevance result survives any strictly monotone utility, while the
//! substitute/complement pattern under costs depends on curvature.
//! `cargo run --example nonlinear_utility`.

use disclosure::belief::{Cut, SenderSpec};
use disclosure::multi::nonlinear::{nonlinear_best_response, power_gap_curvature, UtilitySpec};
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::single::solve_single;

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.1, 0.9).unwrap().into();
    let fp = solve_single(&model, SenderSpec::up(0.8), 0.0).unwrap()[0].cut.threshold;
    println!("linear-case fixed point: {fp:.6}\n");

    // Zero cost: any strictly monotone utility lands on the same threshold.
    for (name, v) in [
        ("quadratic gains", UtilitySpec::Power { alpha: 2.0, gamma: 1.0 }),
        ("concave gains", UtilitySpec::Power { alpha: 0.5, gamma: 1.0 }),
        ("convex loss aversion", UtilitySpec::Power { alpha: -1.5, gamma: -1.0 }),
    ] {
        let br = nonlinear_best_response(&model, 0.0, 0.8, SenderSpec::up(0.6), Cut::at(0.4), &v)
            .unwrap();
        println!("c = 0, {name:<22}: best response {:.6}", br.smallest);
    }

    // With a disclosure cost the response direction depends on curvature.
    println!("\nc = +0.03, rival threshold falling from 0.8 to 0.4:");
    for (name, v) in [
        ("concave gains (substitutes)", UtilitySpec::Power { alpha: 0.7, gamma: 1.0 }),
        ("sharply convex losses (complements)", UtilitySpec::Power { alpha: -2.0, gamma: -1.0 }),
    ] {
        let weak = nonlinear_best_response(&model, 0.03, 0.7, SenderSpec::up(0.4), Cut::at(0.8), &v)
            .unwrap();
        let strong =
            nonlinear_best_response(&model, 0.03, 0.7, SenderSpec::up(0.8), Cut::at(0.4), &v)
                .unwrap();
        println!(
            "  {name:<38}: {:.6} -> {:.6}",
            weak.smallest, strong.smallest
        );
    }

    // The curvature indicator behind those directions.
    println!("\ncurvature indicator of the posterior-shift gap:");
    for (alpha, r) in [(0.7, 1.5), (0.7, 0.8), (-2.0, 1.5), (-0.5, 0.5)] {
        println!(
            "  alpha = {alpha:+.1}, r = {r:.1}: H(0.5) = {:+.4}",
            power_gap_curvature(0.5, alpha, r)
        );
    }
}
