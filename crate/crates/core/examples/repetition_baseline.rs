//! The unprotected reference: a repetition code under a Z field loses fidelity as `|sin(sum z tau)|`.

use ferromem::bounds::{baseline_error, baseline_lifetime};
use ferromem::sim::{repetition_storage_error, LocalField};

fn main() -> ferromem::Result<()> {
    let z = [0.010, -0.004, 0.007, 0.002, 0.001];
    let field = LocalField::dephasing(&z)?;
    let total: f64 = z.iter().sum();
    for tau in [1.0, 10.0, 50.0, 100.0] {
        let eps = repetition_storage_error(&field, tau, 1.0)?;
        println!("tau = {tau:>5}: simulated {eps:.6e}, |sin(theta)| = {:.6e}", (total * tau).sin().abs());
    }
    let a = 1e-5;
    println!(
        "worst case for a = {a}, n = 5, tau = 100: {:.3e}; lifetime at eps = 1e-4: {:.2} ns",
        baseline_error(a, 5, 100.0),
        baseline_lifetime(a, 1e-4)
    );
    Ok(())
}
