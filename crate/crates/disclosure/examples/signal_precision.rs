//! Precision comparative statics: sharper signals rotate the belief
//! distribution around the prior and lower the nondisclosure belief, just
//! like a higher probability of being informed.
//! `cargo run --example signal_precision`.

use disclosure::belief::{nondisclosure_belief, Cut};
use disclosure::signal::{beta_precision_model, precision_nd_derivative, PrecisionFamily, SignalModel};

fn main() {
    // Rotation order of the symmetric Beta family.
    let coarse = beta_precision_model(0.7).unwrap();
    let sharp = beta_precision_model(1.6).unwrap();
    println!("{:>6} {:>12} {:>12}", "s", "F(rho=0.7)", "F(rho=1.6)");
    for s in [0.1, 0.3, 0.5, 0.7, 0.9] {
        println!("{s:>6.2} {:>12.6} {:>12.6}", coarse.cdf_prior(s), sharp.cdf_prior(s));
    }
    println!("higher precision raises F below the prior and lowers it above.\n");

    // The nondisclosure belief falls in precision wherever it matters.
    let family = PrecisionFamily::symmetric_beta();
    println!("{:>6} {:>6} {:>6} {:>14} {:>14}", "s_hat", "p", "rho", "fd derivative", "sign form");
    for (s_hat, p, rho) in [(0.3, 0.8, 1.0), (0.2, 0.5, 0.8), (0.4, 0.9, 1.5)] {
        let d = precision_nd_derivative(&family, s_hat, p, rho).unwrap();
        println!(
            "{s_hat:>6.2} {p:>6.2} {rho:>6.2} {:>14.6e} {:>14.6e}",
            d.finite_difference, d.quadrature_form
        );
    }

    // Spelled out at one point: eta itself falls as rho rises.
    println!();
    for rho in [0.8, 1.0, 1.4, 2.0] {
        let m: SignalModel = beta_precision_model(rho).unwrap().into();
        let eta = nondisclosure_belief(&m, Cut::at(0.3), 0.8, 0.5);
        println!("rho = {rho:.1}: nondisclosure belief at cut 0.3 = {eta:.6}");
    }
}
