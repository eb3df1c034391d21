//! Text and CSV emission. Every numeric artifact echoes the tolerances, grid
//! sizes, and seeds that produced it, and numbers are written with 17
//! significant digits so identical runs are byte-identical.

use std::fmt::Write as _;

use crate::config::SolverOptions;
use crate::multi::TwoSenderEquilibrium;
use crate::single::SingleEquilibrium;
use crate::welfare::{CheckKind, GoldenReport, PosteriorDistribution};

/// Full-precision rendering used in every CSV cell.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// The provenance block prepended (as comments) to every artifact.
pub fn provenance_block(solver: &SolverOptions) -> String {
    format!(
        "# seed = {}\n# tolerance = {}\n# scan_points = {}\n# grid_resolution = {}\n",
        solver.seed, solver.tolerance, solver.scan_points, solver.grid_resolution
    )
}

pub fn csv_line(cells: &[String]) -> String {
    cells.join(",")
}

pub fn single_equilibria_text(eqs: &[SingleEquilibrium]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "equilibria: {}", eqs.len());
    for (k, eq) in eqs.iter().enumerate() {
        let _ = writeln!(
            out,
            "  [{k}] kind = {:?}, threshold = {:.12}, weight = {:.6}, nd_belief = {:.12}{}",
            eq.kind,
            eq.cut.threshold,
            eq.cut.marginal_weight,
            eq.nondisclosure_belief,
            if eq.tangent { " (tangent)" } else { "" }
        );
        let _ = writeln!(
            out,
            "       dm_welfare = {:.12}, sender_welfare = {:.12}",
            eq.dm_welfare, eq.sender_welfare
        );
    }
    out
}

pub fn two_sender_equilibrium_text(eq: &TwoSenderEquilibrium) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "equilibrium [{:?}]", eq.label);
    for (k, cut) in eq.profile.cuts.iter().enumerate() {
        let _ = writeln!(
            out,
            "  sender {k}: threshold = {:.12}, weight = {:.6}, nd_belief = {:.12}, residual = {:.3e}",
            cut.threshold, cut.marginal_weight, eq.nondisclosure_beliefs[k], eq.residuals[k]
        );
    }
    let _ = writeln!(
        out,
        "  dm_welfare = {:.12}, sender_welfare = [{:.12}, {:.12}], iterations = {}",
        eq.dm_welfare, eq.sender_welfare[0], eq.sender_welfare[1], eq.iterations
    );
    out
}

pub fn posterior_summary_text(dist: &PosteriorDistribution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "posterior distribution (mean = {:.12}):", dist.mean());
    let mut atoms = dist.atoms.clone();
    atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for (mu, mass) in atoms {
        let _ = writeln!(out, "  atom: posterior = {:.12}, mass = {:.12}", mu, mass);
    }
    for b in &dist.branches {
        let _ = writeln!(out, "  branch over [{:.6}, {:.6}]", b.region.0, b.region.1);
    }
    let continuous_mass = dist.total_mass() - dist.atoms.iter().map(|a| a.1).sum::<f64>();
    let _ = writeln!(out, "  continuous mass = {:.12}", continuous_mass.max(0.0));
    out
}

pub fn golden_report_text(report: &GoldenReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let relation = match c.kind {
            CheckKind::Matches => format!("target {:.6} (tol {:.1e})", c.target, c.tolerance),
            CheckKind::Exceeds => format!("must exceed {:.6}", c.target),
            CheckKind::Below => format!("must stay below {:.6}", c.target),
        };
        let _ = writeln!(
            out,
            "{} {:<42} value = {:.6}, {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            relation
        );
    }
    let _ = writeln!(out, "{}", if report.all_pass() { "all checks passed" } else { "FAILURES PRESENT" });
    out
}
