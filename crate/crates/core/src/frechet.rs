//! Fréchet derivatives of `g(X) = exp(-i X tau)` through Davis' divided-difference
//! representation, the Taylor remainder, and the contour-integral remainder bound.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::divdiff::{divided_difference_exact, DividedDiffArgs};
use crate::linalg::{self, DenseOperator};
use crate::{Error, Result};

/// Distinct eigenvalues of a Hermitian operator and their orthogonal projectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub projectors: Vec<DenseOperator>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.projectors.first().map_or(0, |p| p.nrows())
    }

    /// `sum_i f(lambda_i) Pi_i`.
    pub fn apply_function(&self, f: impl Fn(f64) -> Complex64) -> DenseOperator {
        let mut out = DenseOperator::zeros(self.dim(), self.dim());
        for (l, p) in self.eigenvalues.iter().zip(&self.projectors) {
            out += p * f(*l);
        }
        out
    }

    pub fn reconstruct(&self) -> DenseOperator {
        self.apply_function(|l| Complex64::new(l, 0.0))
    }

    /// Rank of each projector, rounded from its trace.
    pub fn ranks(&self) -> Vec<usize> {
        self.projectors.iter().map(|p| p.trace().re.round() as usize).collect()
    }
}

/// Groups the numerical eigenpairs of `h` into distinct levels.
///
/// With `known` levels, every eigenvalue must lie within `1e-8 ||H||` of one of
/// them; levels that receive no eigenvalue are dropped. Without, eigenvalues are
/// clustered by the same tolerance.
pub fn build_decomposition(h: &DenseOperator, known: Option<&[f64]>) -> Result<SpectralDecomposition> {
    let dim = linalg::check_square(h, "Hamiltonian")?;
    if !linalg::is_hermitian(h, 1e-10 * (1.0 + linalg::norm1(h))) {
        return Err(Error::Domain("operator is not Hermitian".into()));
    }
    let (values, vectors) = linalg::eigh(h);
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-8 * scale + 1e-12;

    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    match known {
        Some(levels) => {
            let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); levels.len()];
            for (i, &v) in values.iter().enumerate() {
                let (best, dist) = levels
                    .iter()
                    .enumerate()
                    .map(|(k, &l)| (k, (l - v).abs()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .ok_or(Error::SpectralMismatch(v))?;
                if dist > tol {
                    return Err(Error::SpectralMismatch(v));
                }
                buckets[best].push(i);
            }
            for (l, idx) in levels.iter().zip(buckets) {
                if !idx.is_empty() {
                    groups.push((*l, idx));
                }
            }
        }
        None => {
            for (i, &v) in values.iter().enumerate() {
                match groups.last_mut() {
                    Some((_, idx)) if (v - values[idx[0]]).abs() <= tol => idx.push(i),
                    _ => groups.push((v, vec![i])),
                }
            }
            for (l, idx) in groups.iter_mut() {
                *l = idx.iter().map(|&i| values[i]).sum::<f64>() / idx.len() as f64;
            }
        }
    }

    let projectors = groups
        .iter()
        .map(|(_, idx)| {
            let cols = DenseOperator::from_fn(dim, idx.len(), |r, c| vectors[(r, idx[c])]);
            &cols * cols.adjoint()
        })
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues: groups.into_iter().map(|(l, _)| l).collect(),
        projectors,
    })
}

/// `D^{[j]}_g(H, A) / j! = sum g(lambda_{i_0}, ..., lambda_{i_j}) (Pi_{i_j} A) ... (Pi_{i_1} A) Pi_{i_0}`.
///
/// The level-tuple sum is evaluated directly, depth first, so its cost grows as
/// `L^(j+1)` with `L` distinct eigenvalues. Order 0 returns `g(H)`.
pub fn davis_frechet_term(
    order: usize,
    dec: &SpectralDecomposition,
    a: &DenseOperator,
    tau: f64,
) -> Result<DenseOperator> {
    let dim = dec.dim();
    if a.nrows() != dim || a.ncols() != dim {
        return Err(Error::Shape {
            expected: format!("{dim}x{dim}"),
            got: format!("{}x{}", a.nrows(), a.ncols()),
        });
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain(format!("storage time must be >= 0, got {tau}")));
    }
    if order == 0 {
        return Ok(dec.apply_function(|l| Complex64::from_polar(1.0, -l * tau)));
    }
    let pa: Vec<DenseOperator> = dec.projectors.iter().map(|p| p * a).collect();
    let levels = dec.eigenvalues.len();
    let partials: Vec<DenseOperator> = (0..levels)
        .into_par_iter()
        .map(|i0| {
            let mut acc = DenseOperator::zeros(dim, dim);
            let mut tuple = vec![dec.eigenvalues[i0]];
            accumulate(order, &pa, dec, tau, &dec.projectors[i0], &mut tuple, &mut acc);
            acc
        })
        .collect();
    let mut total = DenseOperator::zeros(dim, dim);
    for p in partials {
        total += p;
    }
    Ok(total)
}

fn accumulate(
    order: usize,
    pa: &[DenseOperator],
    dec: &SpectralDecomposition,
    tau: f64,
    product: &DenseOperator,
    tuple: &mut Vec<f64>,
    acc: &mut DenseOperator,
) {
    if tuple.len() == order + 1 {
        let g = divided_difference_exact(
            &DividedDiffArgs::new(tuple.clone(), tau).expect("validated arguments"),
        );
        *acc += product * g;
        return;
    }
    for (i, pai) in pa.iter().enumerate() {
        let next = pai * product;
        if next.iter().all(|z| z.norm_sqr() == 0.0) {
            continue;
        }
        tuple.push(dec.eigenvalues[i]);
        accumulate(order, pa, dec, tau, &next, tuple, acc);
        tuple.pop();
    }
}

fn evolution_along(h: &DenseOperator, a: &DenseOperator, s: f64, tau: f64) -> DenseOperator {
    let k = h + a * Complex64::new(s, 0.0);
    linalg::expm(&(k * Complex64::new(0.0, -tau)))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Central finite-difference estimate of `D^{[j]}_g(H, A) / j!`.
///
/// `step` is the perturbation size measured in units of `||A||`; one Richardson
/// extrapolation removes the leading `O(h^2)` error.
pub fn finite_difference_frechet(
    order: usize,
    h: &DenseOperator,
    a: &DenseOperator,
    tau: f64,
    step: f64,
) -> Result<DenseOperator> {
    linalg::check_square(h, "Hamiltonian")?;
    linalg::check_same_dim(h, a)?;
    if order == 0 {
        return Ok(evolution_along(h, a, 0.0, tau));
    }
    let norm_a = linalg::operator_norm(a);
    if norm_a == 0.0 {
        return Ok(DenseOperator::zeros(h.nrows(), h.ncols()));
    }
    let base = step / norm_a;
    let central = |hstep: f64| -> DenseOperator {
        let mut acc = DenseOperator::zeros(h.nrows(), h.ncols());
        for k in 0..=order {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let s = (order as f64 / 2.0 - k as f64) * hstep;
            acc += evolution_along(h, a, s, tau) * Complex64::new(sign * binomial(order, k), 0.0);
        }
        acc / Complex64::new(hstep.powi(order as i32), 0.0)
    };
    let coarse = central(base);
    let fine = central(base / 2.0);
    let extrapolated = (fine * Complex64::new(4.0, 0.0) - coarse) / Complex64::new(3.0, 0.0);
    let factorial: f64 = (1..=order).map(|m| m as f64).product();
    Ok(extrapolated / Complex64::new(factorial, 0.0))
}

/// `exp(-i (H + A) tau) - sum_{j <= t} D^{[j]}_g(H, A) / j!`.
pub fn taylor_remainder(
    t: usize,
    dec: &SpectralDecomposition,
    h: &DenseOperator,
    a: &DenseOperator,
    tau: f64,
) -> Result<DenseOperator> {
    linalg::check_same_dim(h, a)?;
    let mut rem = evolution_along(h, a, 1.0, tau);
    for j in 0..=t {
        rem -= davis_frechet_term(j, dec, a, tau)?;
    }
    Ok(rem)
}

/// `(2e/pi) (||H|| + 1/tau) (||A|| tau)^(t+1)`, the operator-norm bound on the order-`t` remainder.
pub fn deadman_relton_bound(t: usize, norm_h: f64, norm_a: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("storage time must be > 0, got {tau}")));
    }
    Ok(2.0 * E / PI * (norm_h + 1.0 / tau) * (norm_a * tau).powi(t as i32 + 1))
}

/// Channel-level variant `(3e/pi) (||H|| + 1/tau) (a n tau)^(t+1)` bounding the storage error.
pub fn channel_remainder_bound(t: usize, norm_h: f64, a: f64, n: u64, tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("storage time must be > 0, got {tau}")));
    }
    Ok(3.0 * E / PI * (norm_h + 1.0 / tau) * (a * n as f64 * tau).powi(t as i32 + 1))
}
