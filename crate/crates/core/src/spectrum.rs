//! Analytic spectrum of the mean-field (all-to-all) Heisenberg ferromagnet
//!
//! `H = -J sum_{j<k} (X_j X_k + Y_j Y_k + Z_j Z_k - 1) / 2 = J sum_{j<k} (1 - SWAP_{jk})`
//!
//! has `floor(n/2) + 1` distinct eigenvalues `lambda_j = J j (n + 1 - j)`.
//! Level `j` is the total-spin sector `S = n/2 - j`; the ground level is the
//! symmetric subspace.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Spectral data of the mean-field Heisenberg Hamiltonian on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralModel {
    n: u64,
    exchange: f64,
}

impl SpectralModel {
    /// `exchange` is the coupling `J` in GHz.
    pub fn new(n: u64, exchange: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("qubit count must be positive".into()));
        }
        if !(exchange.is_finite() && exchange > 0.0) {
            return Err(Error::Domain(format!(
                "exchange constant must be positive and finite, got {exchange}"
            )));
        }
        Ok(Self { n, exchange })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn exchange(&self) -> f64 {
        self.exchange
    }

    /// Number of distinct eigenvalues, `floor(n/2) + 1`.
    pub fn n_levels(&self) -> usize {
        (self.n / 2) as usize + 1
    }

    /// Largest admissible level index, `floor(n/2)`.
    pub fn max_level(&self) -> usize {
        (self.n / 2) as usize
    }

    fn check_level(&self, j: usize) -> Result<()> {
        if j > self.max_level() {
            Err(Error::LevelIndex {
                index: j,
                max: self.max_level(),
            })
        } else {
            Ok(())
        }
    }

    /// `lambda_j = J j (n + 1 - j)`.
    pub fn eigenvalue(&self, j: usize) -> Result<f64> {
        self.check_level(j)?;
        Ok(self.level_energy(j))
    }

    /// Same as [`eigenvalue`](Self::eigenvalue) for indices already known to be valid.
    pub(crate) fn level_energy(&self, j: usize) -> f64 {
        let j = j as f64;
        self.exchange * j * (self.n as f64 + 1.0 - j)
    }

    /// All distinct eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.n_levels()).map(|j| self.level_energy(j)).collect()
    }

    /// Degeneracy `(n + 1 - 2j) (C(n, j) - C(n, j - 1))`, with `C(n, -1) = 0`.
    pub fn multiplicity(&self, j: usize) -> Result<BigUint> {
        self.check_level(j)?;
        let n = self.n;
        let j = j as u64;
        let upper = binomial(n, j);
        let lower = if j == 0 {
            BigUint::zero()
        } else {
            binomial(n, j - 1)
        };
        Ok(BigUint::from(n + 1 - 2 * j) * (upper - lower))
    }

    /// Lower bound `J (k - j) (n + 2 - 2k)` on `lambda_k - lambda_j` for `j < k <= n/2`.
    pub fn gap_lower_bound(&self, j: usize, k: usize) -> Result<f64> {
        if j >= k {
            return Err(Error::Ordering { j, k });
        }
        self.check_level(k)?;
        Ok(self.exchange * (k - j) as f64 * (self.n as f64 + 2.0 - 2.0 * k as f64))
    }

    /// The weaker, `j`-independent form `2J (floor(n/2) + 1 - k)`.
    pub fn gap_lower_bound_weak(&self, k: usize) -> Result<f64> {
        self.check_level(k)?;
        Ok(2.0 * self.exchange * (self.n_levels() - k) as f64)
    }

    /// `S_{floor(n/2)+1}`, the harmonic number appearing in the high-energy bound.
    pub fn level_harmonic(&self) -> f64 {
        harmonic_f64(self.n_levels() as u64)
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact harmonic partial sum `S_m = 1 + 1/2 + ... + 1/m`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSum {
    m: u64,
    value: BigRational,
}

impl HarmonicSum {
    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// `ln m + 1/(2m) + 0.57722`, the upper estimate quoted for harmonic numbers.
    pub fn log_upper_estimate(&self) -> f64 {
        let m = self.m as f64;
        m.ln() + 0.5 / m + 0.57722
    }
}

/// Exact `S_m`; `m = 0` is a domain error.
pub fn harmonic(m: u64) -> Result<HarmonicSum> {
    if m == 0 {
        return Err(Error::Domain("harmonic number order must be at least 1".into()));
    }
    let mut value = BigRational::zero();
    for k in 1..=m {
        value += BigRational::new(BigUint::one().into(), BigUint::from(k).into());
    }
    Ok(HarmonicSum { m, value })
}

/// Floating-point `S_m`, summed from the smallest term up.
pub fn harmonic_f64(m: u64) -> f64 {
    (1..=m).rev().map(|k| 1.0 / k as f64).sum()
}
