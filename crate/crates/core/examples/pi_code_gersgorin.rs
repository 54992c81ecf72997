//! Permutation-invariant codes evolved under the ferromagnet plus a weak field:
//! block trace norms against `b^2 + b` and the storage error against `1.01 mean(b)`.

use num_complex::Complex64;

use ferromem::linalg::expm;
use ferromem::sim::{build_heisenberg, gersgorin_check, pi_codewords, LocalField};
use ferromem::verify::{small_codes, trial_rng};

fn main() -> ferromem::Result<()> {
    let mut rng = trial_rng(3, 0, 0);
    let mut codes = small_codes()?;
    codes.push(("PI d=2 t=1".to_string(), pi_codewords(2, 1)?, 1));
    for (name, code, t) in &codes {
        let n = ferromem::sim::code_qubits(code)?;
        let h = build_heisenberg(n, 1.0)?;
        let field = LocalField::random(n, 2e-3, &mut rng);
        let u = expm(&((h + field.to_dense()) * Complex64::new(0.0, -1.0)));
        let r = gersgorin_check(&u, code, *t, None)?;
        println!(
            "{name:<14} n = {n}: max b = {:.3e}, slack = {:.2e}, eps = {:.3e} vs 1.01 mean b = {:.3e}",
            r.b.iter().copied().fold(0.0, f64::max),
            r.inequality_slack(),
            r.storage_error,
            1.01 * r.mean_b()
        );
    }
    Ok(())
}
