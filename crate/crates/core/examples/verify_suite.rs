//! Runs the full exact property suite and prints one line per check.

use walshform::verify::{run_suite, SuiteConfig};

fn main() -> walshform::Result<()> {
    let m = std::env::args().nth(1).map_or(3, |s| s.parse().expect("resolution"));
    let report = run_suite(&SuiteConfig::new(m, 20, 1))?;
    for c in &report.checks {
        let status = if c.ok { "ok" } else { "FAIL" };
        println!("{:<24} {:>8} run {:>4} failed  {status}", c.name, c.instances_run, c.failures);
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    println!("overall: {}", report.overall);
    Ok(())
}
