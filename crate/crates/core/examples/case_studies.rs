//! Certified storage times for two worked devices and the bound at those times.

use ferromem::bounds::{baseline_lifetime, tau_lower_bound, total_error_bound, BoundScenario, CodeSetting};

fn main() -> ferromem::Result<()> {
    let (a, eps) = (4e-5, 5e-4);
    for (exchange, t) in [(10.0, 12), (1000.0, 23)] {
        let setting = CodeSetting::family(a, t, exchange)?;
        let tau = tau_lower_bound(&setting, eps)?;
        let at = total_error_bound(&BoundScenario { setting, tau, theta: None })?;
        println!(
            "J = {exchange} GHz, t = {t}, n = {}: tau >= {tau:.3} ns (unprotected {:.3} ns); optimized bound there {:.3e}",
            setting.n,
            baseline_lifetime(a, eps),
            at.value()
        );
    }
    Ok(())
}
