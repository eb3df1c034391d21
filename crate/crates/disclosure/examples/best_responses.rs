//! Best-response structure against a mechanical opponent: without a message
//! cost the opponent is strategically irrelevant; with one, the response
//! moves against (substitutes) or with (complements) the opponent's
//! disclosure. `cargo run --example best_responses`.

use disclosure::belief::{Cut, SenderSpec};
use disclosure::multi::best_response_set;
use disclosure::signal::{ContinuousSignalModel, SignalModel};
use disclosure::single::solve_single;

fn main() {
    let model: SignalModel = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into();
    let me = SenderSpec::up(0.8);
    let rival = SenderSpec::up(0.6);

    let fixed_point = solve_single(&model, me, 0.0).unwrap()[0].cut.threshold;
    println!("single-sender fixed point: {fixed_point:.6}\n");

    for c in [0.0, -0.05, 0.05] {
        println!("c = {c:+.2}:");
        println!("{:>24} {:>10} {:>10}", "rival threshold", "smallest", "largest");
        for y in [0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
            let br = best_response_set(&model, c, me, rival, Cut::at(y)).unwrap();
            println!("{y:>24.2} {:>10.6} {:>10.6}", br.smallest, br.largest);
        }
        println!();
    }
    println!("reading: at c = 0 the rows are flat at the fixed point;");
    println!("c < 0 rows rise with the rival's threshold (complements);");
    println!("c > 0 rows fall as the rival conceals more (substitutes).");
}
