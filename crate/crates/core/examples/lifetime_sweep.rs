//! Lifetime enhancement over noise strength, choosing the best code size at each point.
//!
//! Writes `lifetime.csv` in the working directory.

use std::fs::File;

use ferromem::bounds::{lifetime_curve, log_space, DEFAULT_T_RANGE};
use ferromem::output::write_lifetime_csv;

fn main() -> ferromem::Result<()> {
    let a = log_space(1e-6, 1e-2, 41)?;
    let rows = lifetime_curve(10.0, 1e-4, &a, DEFAULT_T_RANGE)?;
    for r in rows.iter().step_by(4) {
        match (r.best_t, r.enhancement) {
            (Some(t), Some(e)) => println!("a = {:.3e}: t = {t:>3}, enhancement {e:.2}", r.a),
            _ => println!("a = {:.3e}: no certified code", r.a),
        }
    }
    write_lifetime_csv(&rows, File::create("lifetime.csv")?)?;
    println!("wrote lifetime.csv");
    Ok(())
}
