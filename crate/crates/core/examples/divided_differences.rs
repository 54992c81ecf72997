//! Divided differences of `exp(-i x tau)`: distinct, clustered and repeated arguments,
//! and the level-tree bound that controls them on the ferromagnet spectrum.

use ferromem::divdiff::{confluent_magnitude, divided_difference, divided_difference_bound, LevelMultiset};
use ferromem::spectrum::SpectralModel;

fn main() -> ferromem::Result<()> {
    let tau = 1.5;
    for values in [vec![0.0, 1.0, 3.0], vec![2.0, 2.0 + 1e-9, 5.0], vec![4.0; 4]] {
        let g = divided_difference(&values, tau)?;
        println!("g{values:?} = {:.12} {:+.12}i  |g| = {:.3e}", g.re, g.im, g.norm());
    }
    println!("identical arguments, order 3: tau^3/3! = {:.6}", confluent_magnitude(4, tau));

    let model = SpectralModel::new(20, 1.0)?;
    for levels in [vec![1, 2], vec![1, 1, 3], vec![2, 5, 5, 9]] {
        let args = LevelMultiset::with_ground(levels.clone(), model, tau)?;
        let exact = args.exact().norm();
        let bound = divided_difference_bound(&args);
        println!("ground + {levels:?}: |g| = {exact:.3e} <= bound {bound:.3e}");
    }
    Ok(())
}
