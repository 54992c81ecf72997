//! Levels of the mean-field Heisenberg ferromagnet and the gaps protecting a code.
//!
//! `cargo run --example spectrum_table -- 12`

use ferromem::spectrum::{harmonic, SpectralModel};

fn main() -> ferromem::Result<()> {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse().expect("n")).unwrap_or(12);
    let model = SpectralModel::new(n, 1.0)?;
    println!("n = {n}, J = 1");
    println!("{:>3} {:>10} {:>14} {:>18}", "j", "lambda_j", "multiplicity", "weak gap to j+1");
    for j in 0..model.n_levels() {
        let gap = if j + 1 < model.n_levels() {
            format!("{:.3}", model.gap_lower_bound_weak(j + 1)?)
        } else {
            "-".into()
        };
        println!("{j:>3} {:>10} {:>14} {gap:>18}", model.eigenvalue(j)?, model.multiplicity(j)?);
    }
    let s = harmonic(n / 2 + 1)?;
    println!("S_(n/2+1) = {} ~ {:.6}", s.value(), s.to_f64());
    Ok(())
}
