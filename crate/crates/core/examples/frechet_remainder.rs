//! Taylor expansion of `exp(-i(H + A)tau)` in a local field `A` through Davis's
//! divided-difference formula, compared with the remainder bound.

use ferromem::frechet::{build_decomposition, davis_frechet_term, deadman_relton_bound, taylor_remainder};
use ferromem::linalg::operator_norm;
use ferromem::sim::{build_heisenberg, LocalField};
use ferromem::verify::trial_rng;

fn main() -> ferromem::Result<()> {
    let (n, exchange, tau) = (3, 1.0, 1.0);
    let h = build_heisenberg(n, exchange)?;
    let mut rng = trial_rng(1, 0, 0);
    let field = LocalField::random(n, 0.05, &mut rng);
    let a = field.to_dense();
    let dec = build_decomposition(&h, None)?;
    println!("n = {n}, ||H|| = {:.3}, ||A|| = {:.4}, tau = {tau}", operator_norm(&h), operator_norm(&a));
    for j in 1..=3 {
        println!("||D^[{j}]/{j}!|| = {:.3e}", operator_norm(&davis_frechet_term(j, &dec, &a, tau)?));
    }
    for t in 0..=5 {
        let rem = operator_norm(&taylor_remainder(t, &dec, &h, &a, tau)?);
        let bound = deadman_relton_bound(t, operator_norm(&h), operator_norm(&a), tau)?;
        println!("t = {t}: ||R_t|| = {rem:.3e}  bound = {bound:.3e}");
    }
    Ok(())
}
