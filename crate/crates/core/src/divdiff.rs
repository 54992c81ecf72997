//! Divided differences of the evolution exponential `g(x) = exp(-i x tau)`.
//!
//! [`divided_difference_exact`] evaluates `g(y_1, ..., y_k)` for arbitrary real
//! arguments, repeated or not. [`divided_difference_bound`] is the recursive
//! tree bound on `|g(lambda_{n_1}, ..., lambda_{n_j}, 0)|` at Heisenberg levels,
//! which only uses level indices and the spectral gap estimate.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::spectrum::SpectralModel;
use crate::{Error, Result};

/// Below this value of `span * tau` a block of arguments is treated as a
/// cluster and evaluated by its Taylor expansion around the midpoint.
const CLUSTER_PHASE: f64 = 0.5;

/// Arguments of a divided difference of `exp(-i x tau)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDiffArgs {
    values: Vec<f64>,
    tau: f64,
}

impl DividedDiffArgs {
    pub fn new(values: Vec<f64>, tau: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("divided difference needs at least one argument".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("divided difference arguments must be finite".into()));
        }
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::Domain(format!("storage time must be >= 0, got {tau}")));
        }
        Ok(Self { values, tau })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Divided-difference order, one less than the number of arguments.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }
}

/// `g(y_1, ..., y_k)` for `g(x) = exp(-i x tau)`.
///
/// Arguments are sorted and a Newton table is built over contiguous blocks.
/// Blocks whose spread is small relative to `1/tau` (including fully
/// confluent blocks) are evaluated from the Taylor series about the block
/// midpoint; wider blocks use the two-point recursion.
pub fn divided_difference_exact(args: &DividedDiffArgs) -> Complex64 {
    let mut y = args.values.clone();
    y.sort_by(f64::total_cmp);
    newton_table_top(&y, args.tau)
}

/// Convenience wrapper over [`divided_difference_exact`].
pub fn divided_difference(values: &[f64], tau: f64) -> Result<Complex64> {
    Ok(divided_difference_exact(&DividedDiffArgs::new(
        values.to_vec(),
        tau,
    )?))
}

fn newton_table_top(y: &[f64], tau: f64) -> Complex64 {
    let k = y.len();
    // row[i] holds g(y_i, ..., y_{i+len-1}) for the current block length.
    let mut row: Vec<Complex64> = y.iter().map(|&v| Complex64::from_polar(1.0, -v * tau)).collect();
    for len in 2..=k {
        let mut next = Vec::with_capacity(k - len + 1);
        for i in 0..=(k - len) {
            let lo = y[i];
            let hi = y[i + len - 1];
            let span = hi - lo;
            if span * tau <= CLUSTER_PHASE {
                next.push(cluster_series(&y[i..i + len], tau));
            } else {
                next.push((row[i + 1] - row[i]) / span);
            }
        }
        row = next;
    }
    row[0]
}

/// Taylor evaluation `exp(-i c tau) sum_q (-i tau)^(p+q) / (p+q)! h_q(y - c)`
/// where `h_q` is the complete homogeneous symmetric polynomial and `p` the order.
fn cluster_series(block: &[f64], tau: f64) -> Complex64 {
    let p = block.len() - 1;
    let c = 0.5 * (block[0] + block[p]);
    let d: Vec<f64> = block.iter().map(|&v| v - c).collect();
    let radius = d.iter().fold(0.0f64, |m, x| m.max(x.abs())) * tau;

    let w = Complex64::new(0.0, -tau);
    // (-i tau)^p / p!
    let mut lead = Complex64::new(1.0, 0.0);
    for m in 1..=p {
        lead = lead * w / m as f64;
    }
    if radius == 0.0 || tau == 0.0 {
        return lead * Complex64::from_polar(1.0, -c * tau);
    }

    // h[q] accumulated one variable at a time: h_new[q] = h_old[q] + d * h_new[q-1].
    const MAX_TERMS: usize = 64;
    let mut h = vec![0.0f64; MAX_TERMS];
    h[0] = 1.0;
    for &dv in &d {
        for q in 1..MAX_TERMS {
            h[q] += dv * h[q - 1];
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coeff = lead;
    let mut tail = 1.0;
    for (q, hq) in h.iter().enumerate() {
        sum += coeff * *hq;
        // |term_q| <= (tau^p / p!) * radius^q / q!
        tail *= radius / (q + 1) as f64;
        if tail < 1e-18 {
            break;
        }
        coeff = coeff * w / (p + q + 1) as f64;
    }
    sum * Complex64::from_polar(1.0, -c * tau)
}

/// A multiset of Heisenberg level indices, the arguments of
/// `g(lambda_{n_1}, ..., lambda_{n_j}, 0)` (the trailing ground level included).
#[derive(Debug, Clone, PartialEq)]
pub struct LevelMultiset {
    levels: Vec<usize>,
    model: SpectralModel,
    tau: f64,
}

impl LevelMultiset {
    pub fn new(levels: Vec<usize>, model: SpectralModel, tau: f64) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Domain("level multiset must be nonempty".into()));
        }
        if let Some(&bad) = levels.iter().find(|&&l| l > model.max_level()) {
            return Err(Error::LevelIndex {
                index: bad,
                max: model.max_level(),
            });
        }
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::Domain(format!("storage time must be >= 0, got {tau}")));
        }
        Ok(Self { levels, model, tau })
    }

    /// `n_1, ..., n_j` followed by the ground level 0.
    pub fn with_ground(mut levels: Vec<usize>, model: SpectralModel, tau: f64) -> Result<Self> {
        levels.push(0);
        Self::new(levels, model, tau)
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn model(&self) -> &SpectralModel {
        &self.model
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// The energies `lambda_{n_v}` at which the divided difference is taken.
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|&l| self.model.level_energy(l)).collect()
    }

    /// Exact value of the divided difference at the level energies.
    pub fn exact(&self) -> Complex64 {
        divided_difference_exact(&DividedDiffArgs {
            values: self.energies(),
            tau: self.tau,
        })
    }

    fn counts(&self) -> Vec<u8> {
        let mut counts = vec![0u8; self.model.n_levels()];
        for &l in &self.levels {
            counts[l] += 1;
        }
        counts
    }
}

/// Recursive upper bound on `|g(lambda_{n_1}, ..., lambda_{n_j})|` from level indices alone.
///
/// Each node pops two distinct levels `p < q` and uses
/// `|g(y)| <= (|g(y[not p])| + |g(y[not q])|) / (2J (floor(n/2) + 1 - q))`,
/// valid because `lambda_q - lambda_p >= 2J (floor(n/2) + 1 - q)`. A node whose
/// remaining `r` arguments coincide terminates with `tau^(r-1) / (r-1)!`.
/// The bound is the minimum over every choice of popped pair at every node;
/// it is memoized on the vector of level counts.
pub fn divided_difference_bound(args: &LevelMultiset) -> f64 {
    let mut memo = HashMap::new();
    tree_bound(
        &mut args.counts(),
        args.model.exchange(),
        args.model.n_levels(),
        args.tau,
        &mut memo,
    )
}

fn tree_bound(
    counts: &mut Vec<u8>,
    exchange: f64,
    n_levels: usize,
    tau: f64,
    memo: &mut HashMap<Vec<u8>, f64>,
) -> f64 {
    if let Some(&v) = memo.get(counts) {
        return v;
    }
    let present: Vec<usize> = (0..counts.len()).filter(|&l| counts[l] > 0).collect();
    let value = if present.len() == 1 {
        let r = counts[present[0]] as usize;
        confluent_magnitude(r, tau)
    } else {
        let mut best = f64::INFINITY;
        for (a, &p) in present.iter().enumerate() {
            for &q in &present[a + 1..] {
                let denom = 2.0 * exchange * (n_levels - q) as f64;
                counts[p] -= 1;
                let without_p = tree_bound(counts, exchange, n_levels, tau, memo);
                counts[p] += 1;
                counts[q] -= 1;
                let without_q = tree_bound(counts, exchange, n_levels, tau, memo);
                counts[q] += 1;
                best = best.min((without_p + without_q) / denom);
            }
        }
        best
    };
    memo.insert(counts.clone(), value);
    value
}

/// `tau^(r-1) / (r-1)!`, the magnitude of `g` at `r` coincident arguments.
pub fn confluent_magnitude(r: usize, tau: f64) -> f64 {
    (1..r).fold(1.0, |acc, m| acc * tau / m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(values: &[f64], tau: f64) -> Complex64 {
        divided_difference(values, tau).unwrap()
    }

    #[test]
    fn single_argument_is_the_function() {
        assert!((dd(&[0.0], 0.3) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_identical_zeros_give_derivative() {
        let v = dd(&[0.0, 0.0], 0.5);
        assert!((v - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        assert!((v.norm() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn first_order_matches_difference_quotient() {
        let (lam, tau) = (2.0, 0.4);
        let expected = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -lam * tau)) / (0.0 - lam);
        assert!((dd(&[0.0, lam], tau) - expected).norm() < 1e-15);
        assert!((dd(&[lam, 0.0], tau) - expected).norm() < 1e-15);
    }

    #[test]
    fn identical_arguments_have_factorial_magnitude() {
        for k in 1..9 {
            for &y in &[0.0, 1.7, 42.0] {
                let v = dd(&vec![y; k], 1.3);
                let expected = confluent_magnitude(k, 1.3);
                assert!((v.norm() - expected).abs() <= 1e-15 * expected.max(1.0));
            }
        }
    }

    #[test]
    fn tau_zero_is_constant_function() {
        assert!((dd(&[1.0, 2.0, 3.0], 0.0)).norm() < 1e-15);
        assert!((dd(&[5.0], 0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_empty_and_bad_inputs() {
        assert!(DividedDiffArgs::new(vec![], 1.0).is_err());
        assert!(DividedDiffArgs::new(vec![1.0], -1.0).is_err());
        assert!(DividedDiffArgs::new(vec![f64::NAN], 1.0).is_err());
    }

    #[test]
    fn bound_all_ground_is_codespace_term() {
        let m = SpectralModel::new(10, 1.0).unwrap();
        for j in 0..7 {
            let args = LevelMultiset::new(vec![0; j + 1], m, 1.7).unwrap();
            assert!((divided_difference_bound(&args) - confluent_magnitude(j + 1, 1.7)).abs() < 1e-15);
        }
    }

    #[test]
    fn bound_single_excitation_n10() {
        // Pop (0, 1): (1 + 1) / (2 * 1 * (6 - 1)).
        let m = SpectralModel::new(10, 1.0).unwrap();
        let args = LevelMultiset::new(vec![1, 0], m, 1.0).unwrap();
        assert!((divided_difference_bound(&args) - 0.2).abs() < 1e-15);
        assert!(args.exact().norm() <= 0.2);
    }

    #[test]
    fn level_out_of_range_rejected() {
        let m = SpectralModel::new(4, 1.0).unwrap();
        assert_eq!(
            LevelMultiset::new(vec![3, 0], m, 1.0),
            Err(Error::LevelIndex { index: 3, max: 2 })
        );
    }
}
