// Runs every verification suite with a fixed seed and prints the summary.

use fcy_core::cli::{export, run_suite, Format, SuiteOptions};

pub fn run_example() -> fcy_core::Result<()> {
    let opts = SuiteOptions {
        samples: 200,
        ranks: vec![2, 3],
        max_length: 5,
        ..SuiteOptions::default()
    };
    let report = run_suite("all", &opts)?;
    for c in report.cases.iter().filter(|c| !c.pass) {
        println!("FAIL {}: expected {} got {}", c.id, c.expected, c.got);
    }
    println!(
        "{}/{} cases pass (seed {})",
        report.summary.passed, report.summary.total, report.seed
    );
    let csv = export(&report, Format::Csv);
    println!("csv export: {} bytes", csv.len());
    Ok(())
}

fn main() -> fcy_core::Result<()> {
    run_example()
}
