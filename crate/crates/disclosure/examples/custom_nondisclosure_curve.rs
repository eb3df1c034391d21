//! Reverse-engineering a signal model from a target nondisclosure curve:
//! any quasiconvex curve satisfying the sign condition is attainable, and a
//! steep one manufactures multiple equilibria under a small disclosure cost.
//! `cargo run --example custom_nondisclosure_curve`.

use disclosure::belief::{nondisclosure_belief, Cut, SenderSpec};
use disclosure::signal::{model_from_target_curve, SignalModel};
use disclosure::single::solve_single;

fn main() {
    // Steep quadratic target: fixed point at 1/2, slope 1.6 at the top.
    let psi = |s: f64| 0.5 + 1.6 * (s - 0.5) * (s - 0.5);
    let dpsi = |s: f64| 3.2 * (s - 0.5);
    let built = model_from_target_curve(psi, dpsi, 0.0, 1.0).unwrap();
    println!(
        "constructed model: prior = {:.4}, informed probability = {:.6}",
        built.prior, built.informed_prob
    );

    let model: SignalModel = built.model.clone().into();
    let mut worst: f64 = 0.0;
    for k in 0..=50 {
        let s = k as f64 / 50.0;
        let eta = nondisclosure_belief(&model, Cut::at(s), built.informed_prob, built.prior);
        worst = worst.max((eta - psi(s)).abs());
    }
    println!("max |eta - target| on a 51-point grid: {worst:.2e}");

    let sender = SenderSpec::up(built.informed_prob);
    for c in [0.0, 0.12] {
        let eqs = solve_single(&model, sender, c).unwrap();
        println!("\nc = {c:.2}: {} equilibria", eqs.len());
        for eq in &eqs {
            println!(
                "  threshold {:.6} ({:?}{})",
                eq.cut.threshold,
                eq.kind,
                if eq.tangent { ", tangent" } else { "" }
            );
        }
    }
    println!("\nthe steep right branch lets the line s - c cross three times.");
}
