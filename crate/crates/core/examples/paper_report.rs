// Runs every reproduction check with a reduced Monte Carlo budget.

use thicklink::report::{paper_report, ReportOptions};

fn main() {
    let report = paper_report(&ReportOptions {
        seed: 7,
        samples: 100_000,
    })
    .unwrap();
    print!("{}", report.to_table());
}
