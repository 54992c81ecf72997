//! Runs every verification suite with the default seed and prints the report.

use ferromem::verify::{run, Suite, VerifyConfig, DEFAULT_SEED};

fn main() -> ferromem::Result<()> {
    let report = run(Suite::All, &VerifyConfig { seed: DEFAULT_SEED, tolerance_scale: 1.0 })?;
    print!("{report}");
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
