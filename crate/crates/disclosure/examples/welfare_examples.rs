//! The worked four-signal welfare examples: a second, opposite-biased sender
//! can strictly hurt the decision maker under a disclosure cost, and a
//! higher cost can help her. `cargo run --example welfare_examples`.

use disclosure::welfare::worked_examples_report;

fn main() {
    let report = worked_examples_report().unwrap();
    for c in &report.checks {
        println!(
            "{} {:<44} value = {:+.6}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.value
        );
    }
    println!();
    let get = |name: &str| report.checks.iter().find(|c| c.name == name).unwrap().value;
    println!("single sender (best equilibrium):  dm welfare {:+.4}", get("single_best_dm_welfare"));
    println!("two opposing senders, c = 0.36:    dm welfare {:+.4}", get("two_sender_dm_welfare"));
    println!("two opposing senders, c = 0.38:    dm welfare {:+.4}", get("higher_cost_dm_welfare"));
    println!();
    println!("adding a sender lowered welfare; raising the cost restored it.");
    std::process::exit(if report.all_pass() { 0 } else { 1 });
}
