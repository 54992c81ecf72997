//! Numerical verification batteries.
//!
//! Each check reports the largest residual seen over its trials next to the
//! tolerance it must stay under. Random trials draw from a ChaCha stream seeded
//! by the root seed and the trial index, run in parallel, and are reduced in
//! trial order, so a report is reproducible at any thread count.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, CodeSetting};
use crate::divdiff::{self, divided_difference, divided_difference_bound, LevelMultiset};
use crate::frechet::{self, build_decomposition};
use crate::linalg::{self, DenseOperator, DenseState};
use crate::sim::{self, Codeword, LocalField, NoiseEnsemble};
use crate::spectrum::{self, SpectralModel};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20_190_722;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Spectrum,
    Divdiff,
    Frechet,
    Sim,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Spectrum => "spectrum",
            Suite::Divdiff => "divdiff",
            Suite::Frechet => "frechet",
            Suite::Sim => "sim",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectrum" => Ok(Suite::Spectrum),
            "divdiff" => Ok(Suite::Divdiff),
            "frechet" => Ok(Suite::Frechet),
            "sim" => Ok(Suite::Sim),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config(format!("unknown suite '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Multiplies every tolerance; values below one tighten the battery.
    pub tolerance_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tolerance_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub property: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(
            f,
            "{:<6} {:<9} {:<58} {:>7} {:>12} {:>12}",
            "status", "suite", "property", "trials", "residual", "tolerance"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<6} {:<9} {:<58} {:>7} {:>12.3e} {:>12.3e}",
                if c.passed() { "pass" } else { "FAIL" },
                c.suite,
                c.property,
                c.trials,
                c.max_residual,
                c.tolerance
            )?;
        }
        let failed = self.failures().len();
        writeln!(
            f,
            "{} checks, {} failed, {:.1} s",
            self.checks.len(),
            failed,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Independent RNG stream for one trial.
pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(trial) << 20);
    rng
}

/// Runs `f` on each trial in parallel and returns the residuals in trial order.
fn trials<F>(seed: u64, stream: u64, count: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<f64> + Sync,
{
    (0..count as u64)
        .into_par_iter()
        .map(|i| f(&mut trial_rng(seed, stream, i)))
        .collect()
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

struct Builder {
    suite: &'static str,
    scale: f64,
    checks: Vec<Check>,
}

impl Builder {
    fn push(&mut self, property: impl Into<String>, trials: usize, residual: f64, tolerance: f64) {
        self.checks.push(Check {
            suite: self.suite,
            property: property.into(),
            trials,
            max_residual: residual,
            tolerance: tolerance * self.scale,
        });
    }
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let suites: &[Suite] = match suite {
        Suite::All => &[Suite::Spectrum, Suite::Divdiff, Suite::Frechet, Suite::Sim],
        Suite::Spectrum => &[Suite::Spectrum],
        Suite::Divdiff => &[Suite::Divdiff],
        Suite::Frechet => &[Suite::Frechet],
        Suite::Sim => &[Suite::Sim],
    };
    for s in suites {
        let mut b = Builder {
            suite: s.name(),
            scale: config.tolerance_scale,
            checks: Vec::new(),
        };
        match s {
            Suite::Spectrum => spectrum_suite(&mut b)?,
            Suite::Divdiff => divdiff_suite(&mut b, config.seed)?,
            Suite::Frechet => frechet_suite(&mut b, config.seed)?,
            Suite::Sim => sim_suite(&mut b, config.seed)?,
            Suite::All => unreachable!(),
        }
        checks.extend(b.checks);
    }
    Ok(Report {
        seed: config.seed,
        checks,
        elapsed: start.elapsed(),
    })
}

/// Largest distance from each dense eigenvalue to the nearest analytic level,
/// scaled by `J n^2`, and the number of levels whose multiplicity disagrees.
pub fn dense_spectrum_mismatch(n: usize, exchange: f64) -> Result<(f64, usize)> {
    let model = SpectralModel::new(n as u64, exchange)?;
    let levels = model.eigenvalues();
    let mut counts = vec![0u64; levels.len()];
    let mut worst = 0.0f64;
    for ev in sim::heisenberg_spectrum(n, exchange)? {
        let (k, d) = levels
            .iter()
            .enumerate()
            .map(|(k, l)| (k, (ev - l).abs()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("at least one level");
        worst = worst.max(d);
        counts[k] += 1;
    }
    let mismatched = (0..levels.len())
        .filter(|&j| BigUint::from(counts[j]) != model.multiplicity(j).expect("valid level"))
        .count();
    Ok((worst / (exchange * (n * n) as f64), mismatched))
}

/// `sum_{n_1..n_k in 1..=L} prod_j n_j^(-[n_j != alpha])` as an exact rational.
pub fn harmonic_product_sum(levels: u64, alpha: u64, k: u32) -> BigRational {
    let per_factor: BigRational = (1..=levels)
        .map(|m| {
            if m == alpha {
                BigRational::one()
            } else {
                BigRational::new(BigInt::one(), BigInt::from(m))
            }
        })
        .sum();
    num_traits::pow(per_factor, k as usize)
}

fn spectrum_suite(b: &mut Builder) -> Result<()> {
    let bad_sums = (1..=14u64)
        .filter(|&n| {
            let m = SpectralModel::new(n, 1.0).expect("positive n");
            let total: BigUint = (0..m.n_levels()).map(|j| m.multiplicity(j).expect("valid")).sum();
            total != BigUint::one() << n
        })
        .count();
    b.push("multiplicities sum to 2^n, n = 1..14", 14, bad_sums as f64, 0.0);

    let mut worst = 0.0f64;
    let mut mismatched = 0;
    for n in 1..=10 {
        let (w, m) = dense_spectrum_mismatch(n, 1.7)?;
        worst = worst.max(w);
        mismatched += m;
    }
    b.push("dense eigenvalues = J j (n+1-j) / (J n^2), n <= 10", 10, worst, 1e-9);
    b.push("dense multiplicities match, n <= 10", 10, mismatched as f64, 0.0);

    let mut gap_excess = f64::NEG_INFINITY;
    for n in 2..=50u64 {
        let m = SpectralModel::new(n, 1.0)?;
        for k in 1..m.n_levels() {
            for j in 0..k {
                let diff = m.eigenvalue(k)? - m.eigenvalue(j)?;
                gap_excess = gap_excess.max(m.gap_lower_bound(j, k)? - diff);
                gap_excess = gap_excess.max(m.gap_lower_bound_weak(k)? - diff);
            }
        }
    }
    b.push("gap lower bounds <= exact gaps, n <= 50", 49, gap_excess.max(0.0), 0.0);

    let mut harmonic_err = 0.0f64;
    let mut estimate_excess = f64::NEG_INFINITY;
    for m in 1..=300u64 {
        let exact = spectrum::harmonic(m)?;
        harmonic_err = harmonic_err.max((exact.to_f64() - spectrum::harmonic_f64(m)).abs() / exact.to_f64());
        estimate_excess = estimate_excess.max(exact.to_f64() - exact.log_upper_estimate());
    }
    b.push("float harmonic numbers match exact rationals", 300, harmonic_err, 1e-15);
    b.push("S_m <= ln m + 1/(2m) + 0.57722", 300, estimate_excess.max(0.0), 0.0);

    let mut log_excess = f64::NEG_INFINITY;
    for n in 9..=5000u64 {
        let s = spectrum::harmonic_f64(n / 2 + 1);
        log_excess = log_excess.max(s - (2.0 * n as f64).ln());
    }
    b.push("S_{floor(n/2)+1} <= ln 2n for n >= 9", 4992, log_excess.max(0.0), 0.0);

    let mut identity_err = 0.0f64;
    let mut count = 0;
    for levels in 1..=6u64 {
        let s: BigRational = spectrum::harmonic(levels)?.value().clone();
        for alpha in 1..=levels {
            for k in 1..=4u32 {
                let lhs = harmonic_product_sum(levels, alpha, k);
                let base = &s - BigRational::new(BigInt::one(), BigInt::from(alpha)) + BigRational::one();
                let rhs = num_traits::pow(base, k as usize);
                let upper = num_traits::pow(&s + BigRational::one(), k as usize);
                if lhs != rhs || lhs > upper {
                    identity_err += 1.0;
                }
                count += 1;
            }
        }
    }
    b.push("harmonic product sum = (S - 1/alpha + 1)^k <= (S+1)^k", count, identity_err, 0.0);
    Ok(())
}

/// `g(y_1..y_k)` as the top-right entry of `exp(-i tau B)`, `B` upper bidiagonal
/// with the arguments on the diagonal and ones above it.
pub fn divided_difference_by_matrix(values: &[f64], tau: f64) -> Complex64 {
    let k = values.len();
    let m = DenseOperator::from_fn(k, k, |i, j| {
        if i == j {
            Complex64::new(0.0, -tau * values[i])
        } else if j == i + 1 {
            Complex64::new(0.0, -tau)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    linalg::expm(&m)[(0, k - 1)]
}

fn random_multiset(rng: &mut ChaCha8Rng, max_len: usize, span: f64) -> Vec<f64> {
    let len = rng.random_range(1..=max_len);
    let mut pool: Vec<f64> = Vec::new();
    (0..len)
        .map(|_| {
            if !pool.is_empty() && rng.random_bool(0.4) {
                pool[rng.random_range(0..pool.len())]
            } else {
                let v = rng.random_range(0.0..span);
                pool.push(v);
                v
            }
        })
        .collect()
}

/// Random level multiset for an `n <= 20` model with `1..=order` perturbation levels plus ground.
pub fn random_level_multiset(rng: &mut ChaCha8Rng, order: usize) -> Result<LevelMultiset> {
    let n = rng.random_range(2..=20u64);
    let exchange = rng.random_range(0.2..5.0);
    let tau = rng.random_range(0.05..3.0);
    let model = SpectralModel::new(n, exchange)?;
    let j = rng.random_range(1..=order);
    let levels = (0..j).map(|_| rng.random_range(0..=model.max_level())).collect();
    LevelMultiset::with_ground(levels, model, tau)
}

fn divdiff_suite(b: &mut Builder, seed: u64) -> Result<()> {
    let residuals = trials(seed, 1, 500, |rng| {
        let values = random_multiset(rng, 8, 6.0);
        let tau = rng.random_range(0.05..1.5);
        let exact = divided_difference(&values, tau)?;
        let reference = divided_difference_by_matrix(&values, tau);
        let scale = divdiff::confluent_magnitude(values.len(), tau);
        Ok((exact - reference).norm() / scale)
    })?;
    b.push("exact evaluator vs bidiagonal expm, |err| / (tau^(k-1)/(k-1)!)", 500, max_of(&residuals), 1e-9);

    let residuals = trials(seed, 2, 500, |rng| {
        let mut values = random_multiset(rng, 8, 20.0);
        let tau = rng.random_range(0.05..2.0);
        let base = divided_difference(&values, tau)?;
        let mut worst = 0.0f64;
        for _ in 0..4 {
            for i in (1..values.len()).rev() {
                let j = rng.random_range(0..=i);
                values.swap(i, j);
            }
            let v = divided_difference(&values, tau)?;
            worst = worst.max((v - base).norm() / base.norm().max(1e-300));
        }
        Ok(worst)
    })?;
    b.push("permutation invariance (relative)", 500, max_of(&residuals), 1e-12);

    let mut worst = 0.0f64;
    for k in 1..=10 {
        for &y in &[0.0, 0.37, 12.0, 250.0] {
            for &tau in &[0.1, 1.0, 3.0] {
                let v = divided_difference(&vec![y; k], tau)?;
                let m = divdiff::confluent_magnitude(k, tau);
                worst = worst.max((v.norm() - m).abs() / m);
            }
        }
    }
    b.push("identical arguments: |g| = tau^(k-1)/(k-1)!", 120, worst, 1e-13);

    let residuals = trials(seed, 3, 300, |rng| {
        let values = random_multiset(rng, 6, 5.0);
        let tau = rng.random_range(0.1..2.0);
        let c = rng.random_range(0.2..5.0);
        let scaled: Vec<f64> = values.iter().map(|v| v * c).collect();
        let lhs = divided_difference(&scaled, tau / c)?;
        let rhs = divided_difference(&values, tau)? * c.powi(1 - values.len() as i32);
        Ok((lhs - rhs).norm() / rhs.norm().max(1e-300))
    })?;
    b.push("scaling: g_{tau/c}(c y) = c^{-(k-1)} g_tau(y)", 300, max_of(&residuals), 1e-10);

    let ratios = trials(seed, 4, 1000, |rng| {
        let args = random_level_multiset(rng, 6)?;
        let bound = divided_difference_bound(&args);
        Ok((args.exact().norm() - bound) / bound)
    })?;
    b.push("tree bound dominates |g| at Heisenberg levels (rel. excess)", 1000, max_of(&ratios), 1e-12);
    Ok(())
}

/// Random 1-local perturbation with `||A|| = strength`.
pub fn random_field(rng: &mut ChaCha8Rng, n: usize, strength: f64) -> LocalField {
    let f = LocalField::random(n, 1.0, rng);
    let norm = f.norm();
    f.scaled(strength / norm)
}

/// Largest excess `||R_t|| - bound` of the order-`t` Taylor remainder over its
/// Deadman-Relton bound, `t = 0..=6`; nonpositive when every bound holds.
pub fn remainder_ratio(n: usize, exchange: f64, field: &LocalField, tau: f64) -> Result<f64> {
    let h = sim::build_heisenberg(n, exchange)?;
    let model = SpectralModel::new(n as u64, exchange)?;
    let dec = build_decomposition(&h, Some(&model.eigenvalues()))?;
    let a = field.to_dense();
    let norm_h = linalg::operator_norm(&h);
    let norm_a = linalg::operator_norm(&a);
    let mut rem = linalg::evolution_hermitian(&(&h + &a), tau);
    let mut worst = f64::NEG_INFINITY;
    for t in 0..=6 {
        rem -= frechet::davis_frechet_term(t, &dec, &a, tau)?;
        let bound = frechet::deadman_relton_bound(t, norm_h, norm_a, tau)?;
        worst = worst.max(linalg::operator_norm(&rem) - bound);
    }
    Ok(worst)
}

/// Relative mismatch of Davis terms of order 1 and 2 against finite differences.
pub fn davis_vs_finite_difference(n: usize, exchange: f64, field: &LocalField, tau: f64) -> Result<(f64, f64)> {
    let h = sim::build_heisenberg(n, exchange)?;
    let dec = build_decomposition(&h, None)?;
    let a = field.to_dense();
    let mut out = [0.0; 2];
    for (slot, order) in [1usize, 2].into_iter().enumerate() {
        let davis = frechet::davis_frechet_term(order, &dec, &a, tau)?;
        let step = if order == 1 { 1e-3 } else { 1e-2 };
        let fd = frechet::finite_difference_frechet(order, &h, &a, tau, step)?;
        let scale = linalg::operator_norm(&davis).max(f64::MIN_POSITIVE);
        out[slot] = linalg::operator_norm(&(davis - fd)) / scale;
    }
    Ok((out[0], out[1]))
}

fn frechet_suite(b: &mut Builder, seed: u64) -> Result<()> {
    let exchange = 1.0;
    let results = trials(seed, 5, 40, |rng| {
        let n = 2 + (rng.random_range(0..2usize));
        let strength = rng.random_range(0.001..0.1) * exchange;
        let field = random_field(rng, n, strength);
        let tau = rng.random_range(0.1..2.0);
        remainder_ratio(n, exchange, &field, tau)
    })?;
    b.push("Taylor remainder - Deadman-Relton bound, n = 2,3, t <= 6", 40, max_of(&results), 1e-13);

    let pairs: Vec<(f64, f64)> = (0..20u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, 6, i);
            let n = 2 + (i as usize % 2);
            let strength = rng.random_range(0.01..0.1) * exchange;
            let field = random_field(&mut rng, n, strength);
            let tau = rng.random_range(0.1..2.0);
            davis_vs_finite_difference(n, exchange, &field, tau)
        })
        .collect::<Result<_>>()?;
    let first = pairs.iter().map(|p| p.0).fold(0.0, f64::max);
    let second = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
    b.push("order-1 Davis term vs finite differences (relative)", 20, first, 1e-6);
    b.push("order-2 Davis term vs finite differences (relative)", 20, second, 1e-4);
    Ok(())
}

/// Codes used for the block-matrix trials, with their correctable weight.
pub fn small_codes() -> Result<Vec<(String, Vec<Codeword>, usize)>> {
    Ok(vec![
        ("gnu(2,2,1)".into(), sim::gnu_codewords(2, 2, 1)?, 0),
        ("gnu(2,3,1)".into(), sim::gnu_codewords(2, 3, 1)?, 0),
        ("gnu(3,2,1)".into(), sim::gnu_codewords(3, 2, 1)?, 0),
    ])
}

/// `U |j_L>` for `U = exp(-i (H + A) tau)`.
pub fn evolve_code(code: &[Codeword], exchange: f64, field: &LocalField, tau: f64) -> Result<Vec<DenseState>> {
    let n = field.n();
    let k = sim::build_heisenberg(n, exchange)? + field.to_dense();
    Ok(code.iter().map(|c| linalg::evolve_state(&k, &c.state, tau)).collect())
}

/// One block-matrix trial: the inequality slack and whether the channel bound held.
#[derive(Debug, Clone, Copy)]
pub struct GersgorinTrial {
    pub slack: f64,
    pub max_b: f64,
    pub channel_ok: bool,
    pub small_regime: bool,
}

/// Scales `field` by bisection so that `max_j b_j` equals `target` (to 1e-12 relative).
pub fn field_for_target_b(
    code: &[Codeword],
    t: usize,
    exchange: f64,
    field: &LocalField,
    tau: f64,
    target: f64,
) -> Result<LocalField> {
    let space = sim::CorrectableSpace::new(code, t)?;
    let max_b = |s: f64| -> Result<f64> {
        let evolved = evolve_code(code, exchange, &field.scaled(s), tau)?;
        Ok(evolved.iter().map(|v| space.residual_norm(v)).fold(0.0, f64::max))
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while max_b(hi)? < target {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::Domain("perturbation cannot reach the target b".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if max_b(mid)? <= target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(field.scaled(lo))
}

pub fn gersgorin_trials(seed: u64, count: usize) -> Result<Vec<GersgorinTrial>> {
    let codes = small_codes()?;
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, 7, i);
            let (_, code, t) = &codes[i as usize % codes.len()];
            let n = sim::code_qubits(code)?;
            let exchange = rng.random_range(0.5..2.0);
            let tau = rng.random_range(0.2..2.0);
            let strength = 10f64.powf(rng.random_range(-4.0..-1.5));
            let mut field = random_field(&mut rng, n, strength);
            if i == 0 {
                field = field_for_target_b(code, *t, exchange, &field, tau, 0.01)?;
            }
            let evolved = evolve_code(code, exchange, &field, tau)?;
            let r = sim::gersgorin_check_states(&evolved, code, *t, None)?;
            Ok(GersgorinTrial {
                slack: r.inequality_slack(),
                max_b: r.b.iter().copied().fold(0.0, f64::max),
                channel_ok: r.channel_bound_holds(),
                small_regime: r.small_regime(),
            })
        })
        .collect()
}

fn sim_suite(b: &mut Builder, seed: u64) -> Result<()> {
    let mut worst = 0.0f64;
    for n in 2..=sim::MAX_SYMMETRIZER_QUBITS {
        let h = sim::build_heisenberg(n, 1.0)?;
        let model = SpectralModel::new(n as u64, 1.0)?;
        let dec = build_decomposition(&h, Some(&model.eigenvalues()))?;
        let sym = sim::symmetrizer(n)?;
        worst = worst.max(linalg::operator_norm(&(&dec.projectors[0] - sym)));
    }
    b.push("ground projector = symmetrizer, n = 2..6", 5, worst, 1e-10);

    let residuals = trials(seed, 8, 20, |rng| {
        let n = rng.random_range(2..=6usize);
        let z: Vec<f64> = (0..n).map(|_| rng.random_range(-0.3..0.3)).collect();
        let field = LocalField::dephasing(&z)?;
        let tau = rng.random_range(0.1..5.0);
        let h = sim::build_heisenberg(n, rng.random_range(0.5..3.0))?;
        let full = &h + field.to_dense();
        let mut worst = 0.0f64;
        for c in sim::repetition_codewords(n)? {
            let a = linalg::evolve_state(&full, &c.state, tau);
            let b = linalg::evolve_state(&field.to_dense(), &c.state, tau);
            worst = worst.max((a - b).norm());
        }
        Ok(worst)
    })?;
    b.push("repetition states: exp(-i(H+A)tau) = exp(-iA tau) under dephasing", 20, max_of(&residuals), 1e-9);

    let residuals = trials(seed, 9, 100, |rng| {
        let n = if rng.random_bool(0.5) { 3 } else { 5 };
        let z: Vec<f64> = (0..n).map(|_| rng.random_range(-0.2..0.2)).collect();
        let tau = rng.random_range(0.1..10.0);
        let field = LocalField::dephasing(&z)?;
        let e = sim::repetition_storage_error(&field, tau, 1.0)?;
        let theta: f64 = z.iter().sum::<f64>() * tau;
        Ok((e - theta.sin().abs()).abs())
    })?;
    b.push("repetition storage error = |sin((sum z) tau)|, n = 3,5", 100, max_of(&residuals), 1e-8);

    let residuals = trials(seed, 10, 10, |rng| {
        let z: Vec<f64> = (0..4).map(|_| rng.random_range(-0.2..0.2)).collect();
        let field = LocalField::dephasing(&z)?;
        let tau = rng.random_range(0.1..10.0);
        let a = sim::repetition_storage_error(&field, tau, 0.5)?;
        let c = sim::repetition_storage_error(&field, tau, 9.0)?;
        Ok((a - c).abs())
    })?;
    b.push("repetition storage error independent of J", 10, max_of(&residuals), 1e-10);

    let residuals = trials(seed, 11, 10, |rng| {
        let n = rng.random_range(2..=4usize);
        let members: Vec<(f64, LocalField)> = (0..3).map(|_| (1.0 / 3.0, LocalField::random(n, 0.3, rng))).collect();
        let total: f64 = members.iter().map(|m| m.0).sum();
        let members = members.into_iter().map(|(p, f)| (p / total, f)).collect();
        let e = NoiseEnsemble::new(members)?;
        let h = sim::build_heisenberg(n, 1.0)?;
        e.unitality_defect(&h, rng.random_range(0.1..3.0))
    })?;
    b.push("noise channel is unital", 10, max_of(&residuals), 1e-10);

    let code = sim::pi_codewords(2, 1)?;
    let h = sim::build_heisenberg(9, 1.0)?;
    let mut worst = 0.0f64;
    for c in &code {
        worst = worst.max((c.state.norm() - 1.0).abs());
        worst = worst.max((&h * &c.state).norm());
    }
    worst = worst.max(code[0].state.dotc(&code[1].state).norm());
    b.push("9-qubit PI codewords orthonormal and in the ground space", 2, worst, 1e-10);

    let results = gersgorin_trials(seed, 100)?;
    let slack = results.iter().map(|r| r.slack).fold(f64::NEG_INFINITY, f64::max);
    b.push("||M_j||_1 - (b^2 + b), n <= 6 (b = 0.01 boundary included)", 100, slack.max(0.0), 1e-12);
    let channel_fail = results.iter().filter(|r| r.small_regime && !r.channel_ok).count();
    b.push("eps_C <= 1.01 mean b whenever b <= 0.01 (violations)", 100, channel_fail as f64, 0.0);

    let residuals = trials(seed, 12, 4, |rng| {
        let exchange = 1.0;
        let tau = rng.random_range(0.2..1.5);
        let a = 10f64.powf(rng.random_range(-4.0..-2.5));
        let field = random_field(rng, 9, a * 9.0);
        let evolved = evolve_code(&code, exchange, &field, tau)?;
        let r = sim::gersgorin_check_states(&evolved, &code, 1, None)?;
        let setting = CodeSetting::new(a, 9, 1, exchange)?;
        let series = bounds::high_energy_tail_bound(&setting, tau)? + bounds::codespace_tail(a * 9.0, tau, 1);
        let b_ratio = r.b.iter().copied().fold(0.0, f64::max) / series;
        Ok(b_ratio.max(r.inequality_slack().max(0.0)))
    })?;
    b.push("9-qubit PI code: b_j / series bound (and block inequality)", 4, max_of(&residuals), 1.0);
    Ok(())
}
