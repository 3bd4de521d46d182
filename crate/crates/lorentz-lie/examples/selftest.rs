//! Run the invariant checks over the fixture catalog and print failures only.

use lorentz_lie::cli::run_selftest;
use lorentz_lie::scalar::Tolerance;

fn main() -> lorentz_lie::error::Result<()> {
    let checks = run_selftest(&Tolerance::default())?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    for c in &failed {
        println!("FAIL {}: {}", c.name, c.detail);
    }
    println!("{} checks, {} failed", checks.len(), failed.len());
    Ok(())
}
