//! Runs the property suites at a small size and prints a one-line summary per property.

use wavelab::verify::{run, VerifyConfig, GAMMAS};

fn main() -> wavelab::Result<()> {
    let cfg = VerifyConfig { samples: 500, grid: 300, ..VerifyConfig::default() };
    let report = run(&GAMMAS, &cfg)?;
    for g in &report.gammas {
        println!("gamma = {:.4} ({})", g.gamma, g.suite);
        for p in &g.properties {
            println!(
                "  [{}] {:<58} {:>6} checked {:>5} skipped  max {:.1e}",
                if p.passed { "ok" } else { "FAIL" },
                p.name,
                p.checked,
                p.skipped,
                p.max_residual
            );
        }
    }
    println!("{} properties, {} failed", report.properties, report.failed);
    Ok(())
}
