//! Closed-form storage-error bounds and the lifetime sweeps built on them.
//!
//! With `S = S_{floor(n/2)+1}`, `x1 = 2San/J`, `x2 = an theta`,
//! `c1 = 2J / (S^2 (1 - x1))` and `c2 = exp((1/theta - 1) tau) / (1 - x2)`,
//!
//! `eps <= (3 e^tau / 2) (c1 x1^(t+1) + inf_theta c2 x2^(t+1))`.
//!
//! All evaluations are carried out in log space so that large codes
//! (`n` in the thousands, `t` near 100) neither underflow nor overflow.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::spectrum::{harmonic_f64, SpectralModel};
use crate::{Error, Result, ValidityFlag};

/// Code and noise parameters shared by every bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeSetting {
    /// Per-qubit noise strength `a = max_u ||A_u|| / n` in GHz.
    pub a: f64,
    pub n: u64,
    /// Number of correctable errors.
    pub t: usize,
    /// Exchange constant `J` in GHz.
    pub exchange: f64,
}

impl CodeSetting {
    pub fn new(a: f64, n: u64, t: usize, exchange: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::Domain(format!("noise strength must be >= 0, got {a}")));
        }
        SpectralModel::new(n, exchange)?;
        Ok(Self { a, n, t, exchange })
    }

    /// The two-level permutation-invariant code correcting `t` errors, `n = (2t+1)^2`.
    pub fn family(a: f64, t: usize, exchange: f64) -> Result<Self> {
        Self::new(a, CodeFamily::new(2, t)?.n(), t, exchange)
    }

    pub fn harmonic(&self) -> f64 {
        harmonic_f64(self.n / 2 + 1)
    }

    /// `x1 = 2San/J`.
    pub fn x1(&self) -> f64 {
        2.0 * self.harmonic() * self.a * self.n as f64 / self.exchange
    }

    pub fn an(&self) -> f64 {
        self.a * self.n as f64
    }

    /// `ln c1 = ln(2J) - 2 ln S - ln(1 - x1)`.
    fn ln_c1(&self) -> f64 {
        let s = self.harmonic();
        (2.0 * self.exchange).ln() - 2.0 * s.ln() - (-self.x1()).ln_1p()
    }

    /// Checks `n >= 9` and `x1 < 1`.
    pub fn check(&self) -> Result<()> {
        if self.n < 9 {
            return Err(Error::BoundInvalid(ValidityFlag::TooFewQubits));
        }
        if self.x1() >= 1.0 {
            return Err(Error::BoundInvalid(ValidityFlag::HighEnergyRatio));
        }
        Ok(())
    }
}

/// Logical dimension `d` and correctable errors `t`; uses `(d-1)(2t+1)^2` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeFamily {
    pub d: u64,
    pub t: usize,
}

impl CodeFamily {
    pub fn new(d: u64, t: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain("logical dimension must be at least 2".into()));
        }
        Ok(Self { d, t })
    }

    pub fn n(&self) -> u64 {
        let m = 2 * self.t as u64 + 1;
        (self.d - 1) * m * m
    }
}

/// A point at which to evaluate the storage-error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundScenario {
    pub setting: CodeSetting,
    /// Storage time in ns.
    pub tau: f64,
    /// Hölder parameter in `(0, 1/(an))`; `None` selects the optimum.
    pub theta: Option<f64>,
}

/// Value of the storage-error bound together with the Hölder parameter used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBound {
    /// Natural log of the bound; `-inf` when the bound is zero.
    pub ln_value: f64,
    pub theta: f64,
    pub high_energy_ln: f64,
    pub codespace_ln: f64,
}

impl ErrorBound {
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }

    /// `-log10(eps)`, the quantity shown on contour maps.
    pub fn neg_log10(&self) -> f64 {
        -self.ln_value / std::f64::consts::LN_10
    }
}

/// Codespace coefficient `c_j = tau^j / j!`.
pub fn codespace_term(j: usize, tau: f64) -> f64 {
    (1..=j).fold(1.0, |acc, k| acc * tau / k as f64)
}

/// `h_j <= (2J/S^2)(2S/J)^j`, valid for `n >= 9`.
pub fn high_energy_term_bound(j: usize, model: &SpectralModel) -> Result<f64> {
    if model.n() < 9 {
        return Err(Error::BoundInvalid(ValidityFlag::TooFewQubits));
    }
    if j == 0 {
        return Err(Error::Domain("high-energy terms start at j = 1".into()));
    }
    let s = model.level_harmonic();
    let jj = model.exchange();
    Ok(2.0 * jj / (s * s) * (2.0 * s / jj).powi(j as i32))
}

/// `sum_{j > t} (an)^j h_j <= (2J e^tau / S^2) x1^(t+1) / (1 - x1)`.
pub fn high_energy_tail_bound(setting: &CodeSetting, tau: f64) -> Result<f64> {
    setting.check()?;
    let s = setting.harmonic();
    let x1 = setting.x1();
    Ok(2.0 * setting.exchange * tau.exp() / (s * s) * x1.powi(setting.t as i32 + 1) / (1.0 - x1))
}

/// `sum_{j > t} (an tau)^j / j!`, summed directly.
pub fn codespace_tail(an: f64, tau: f64, t: usize) -> f64 {
    let x = an * tau;
    let mut term = codespace_term(t + 1, x);
    let mut sum = 0.0;
    let mut j = t + 1;
    while term > 0.0 && term > 1e-18 * sum {
        sum += term;
        j += 1;
        term *= x / j as f64;
    }
    sum
}

/// Optimal `u = an theta`: the smaller root of `t u^2 - (an tau + t + 1) u + an tau = 0`.
fn optimal_u(an_tau: f64, t: usize) -> f64 {
    let b = an_tau + t as f64 + 1.0;
    let disc = (b * b - 4.0 * t as f64 * an_tau).max(0.0);
    2.0 * an_tau / (b + disc.sqrt())
}

/// `ln(c2 x2^(t+1))` at `u = x2 = an theta`.
fn codespace_ln(an: f64, tau: f64, t: usize, u: f64) -> f64 {
    (an / u - 1.0) * tau - (-u).ln_1p() + (t as f64 + 1.0) * u.ln()
}

fn ln_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `(3 e^tau / 2)(c1 x1^(t+1) + c2 x2^(t+1))`, with `theta` optimized when unset.
pub fn total_error_bound(sc: &BoundScenario) -> Result<ErrorBound> {
    let st = &sc.setting;
    st.check()?;
    if !(sc.tau.is_finite() && sc.tau >= 0.0) {
        return Err(Error::Domain(format!("storage time must be >= 0, got {}", sc.tau)));
    }
    let an = st.an();
    let tp1 = st.t as f64 + 1.0;
    let high = if st.a == 0.0 {
        f64::NEG_INFINITY
    } else {
        st.ln_c1() + tp1 * st.x1().ln()
    };
    let (theta, code) = match sc.theta {
        Some(theta) => {
            if !(theta > 0.0 && an * theta < 1.0) {
                return Err(Error::BoundInvalid(ValidityFlag::CodespaceRatio));
            }
            let ln = if an == 0.0 {
                f64::NEG_INFINITY
            } else {
                codespace_ln(an, sc.tau, st.t, an * theta)
            };
            (theta, ln)
        }
        None => {
            let x = an * sc.tau;
            if x == 0.0 {
                (0.0, f64::NEG_INFINITY)
            } else {
                let u = optimal_u(x, st.t);
                (u / an, codespace_ln(an, sc.tau, st.t, u))
            }
        }
    };
    let ln_value = sc.tau + 1.5f64.ln() + ln_add(high, code);
    Ok(ErrorBound {
        ln_value,
        theta,
        high_energy_ln: high,
        codespace_ln: code,
    })
}

/// Certified storage time at error `eps` with `theta = 1`:
///
/// `tau = ln(2 eps / 3) - (t+1) ln(c1^(1/(t+1)) x1 + c2^(1/(t+1)) x2)`, `c2 = 1/(1 - an)`.
///
/// At `theta = 1` the right-hand side does not depend on `tau`, so no iteration is needed.
pub fn tau_lower_bound(setting: &CodeSetting, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("target error must lie in (0, 1), got {eps}")));
    }
    if setting.a.is_nan() || setting.a <= 0.0 {
        return Err(Error::Domain("noise strength must be positive".into()));
    }
    setting.check()?;
    let an = setting.an();
    if an >= 1.0 {
        return Err(Error::BoundInvalid(ValidityFlag::CodespaceRatio));
    }
    let tp1 = setting.t as f64 + 1.0;
    let r1 = (setting.ln_c1() / tp1 + setting.x1().ln()).exp();
    let r2 = (-(-an).ln_1p() / tp1 + an.ln()).exp();
    let tau = (2.0 * eps / 3.0).ln() - tp1 * (r1 + r2).ln();
    if tau > 0.0 {
        Ok(tau)
    } else {
        Err(Error::Infeasible(format!(
            "no positive storage time certifies eps = {eps} (t = {}, n = {})",
            setting.t, setting.n
        )))
    }
}

/// Repetition-code baseline `|sin(a n tau)|`; `n = 1` is an unprotected qubit.
pub fn baseline_error(a: f64, n: u64, tau: f64) -> f64 {
    (a * n as f64 * tau).sin().abs()
}

/// Baseline lifetime `tau0 = arcsin(eps)/a` of an unprotected qubit.
pub fn baseline_lifetime(a: f64, eps: f64) -> f64 {
    eps.asin() / a
}

/// Outcome of one bound evaluation in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Feasible,
    Invalid(ValidityFlag),
    Infeasible,
}

impl Status {
    fn from_error(e: &Error) -> Self {
        match e {
            Error::BoundInvalid(f) => Status::Invalid(*f),
            _ => Status::Infeasible,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Status::Feasible)
    }

    pub fn label(&self) -> String {
        match self {
            Status::Feasible => "ok".into(),
            Status::Infeasible => "infeasible".into(),
            Status::Invalid(f) => format!("invalid: {f}"),
        }
    }
}

/// Certified lifetime of one code in an enhancement sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnhancementRow {
    pub t: usize,
    pub n: u64,
    pub tau: Option<f64>,
    pub tau0: f64,
    pub status: Status,
}

impl EnhancementRow {
    pub fn enhancement(&self) -> Option<f64> {
        self.tau.map(|t| t / self.tau0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enhancement {
    pub best: EnhancementRow,
    pub rows: Vec<EnhancementRow>,
}

/// Default code sizes scanned by the lifetime optimizer.
pub const DEFAULT_T_RANGE: RangeInclusive<usize> = 1..=200;

/// Best `tau / tau0` over the two-level code family `n = (2t+1)^2`, `t` in `t_range`.
pub fn enhancement(a: f64, exchange: f64, eps: f64, t_range: RangeInclusive<usize>) -> Result<Enhancement> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("noise strength must be positive, got {a}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("target error must lie in (0, 1), got {eps}")));
    }
    SpectralModel::new(1, exchange)?;
    if t_range.is_empty() {
        return Err(Error::Domain("empty t range".into()));
    }
    let tau0 = baseline_lifetime(a, eps);
    let rows: Vec<EnhancementRow> = t_range
        .map(|t| {
            let n = CodeFamily { d: 2, t }.n();
            let res = CodeSetting::new(a, n, t, exchange).and_then(|s| tau_lower_bound(&s, eps));
            match res {
                Ok(tau) => EnhancementRow {
                    t,
                    n,
                    tau: Some(tau),
                    tau0,
                    status: Status::Feasible,
                },
                Err(e) => EnhancementRow {
                    t,
                    n,
                    tau: None,
                    tau0,
                    status: Status::from_error(&e),
                },
            }
        })
        .collect();
    let best = rows
        .iter()
        .filter(|r| r.tau.is_some())
        .max_by(|x, y| x.tau.partial_cmp(&y.tau).expect("finite lifetimes"))
        .copied()
        .ok_or_else(|| Error::Infeasible(format!("no code certifies eps = {eps} at a = {a}")))?;
    Ok(Enhancement { best, rows })
}

/// One point of the lifetime-versus-noise curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifetimeRow {
    pub a: f64,
    pub exchange: f64,
    pub best_t: Option<usize>,
    pub n: Option<u64>,
    pub tau: Option<f64>,
    pub tau0: f64,
    pub enhancement: Option<f64>,
}

impl LifetimeRow {
    pub fn feasible(&self) -> bool {
        self.tau.is_some()
    }
}

/// Enhancement at each `a`; noise levels with no feasible code give infeasible rows.
pub fn lifetime_curve(
    exchange: f64,
    eps: f64,
    a_values: &[f64],
    t_range: RangeInclusive<usize>,
) -> Result<Vec<LifetimeRow>> {
    a_values
        .par_iter()
        .map(|&a| match enhancement(a, exchange, eps, t_range.clone()) {
            Ok(e) => Ok(LifetimeRow {
                a,
                exchange,
                best_t: Some(e.best.t),
                n: Some(e.best.n),
                tau: e.best.tau,
                tau0: e.best.tau0,
                enhancement: e.best.enhancement(),
            }),
            Err(Error::Infeasible(_)) => Ok(LifetimeRow {
                a,
                exchange,
                best_t: None,
                n: None,
                tau: None,
                tau0: baseline_lifetime(a, eps),
                enhancement: None,
            }),
            Err(e) => Err(e),
        })
        .collect()
}

/// `steps` points spaced evenly in `log10` between `min` and `max` inclusive.
pub fn log_space(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max >= min && max.is_finite()) || steps == 0 {
        return Err(Error::Domain(format!("bad log range [{min}, {max}] x {steps}")));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let (lo, hi) = (min.log10(), max.log10());
    Ok((0..steps)
        .map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / (steps - 1) as f64))
        .collect())
}

/// `steps` points spaced evenly between `min` and `max` inclusive.
pub fn lin_space(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && max >= min) || steps == 0 {
        return Err(Error::Domain(format!("bad range [{min}, {max}] x {steps}")));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    Ok((0..steps)
        .map(|k| min + (max - min) * k as f64 / (steps - 1) as f64)
        .collect())
}

/// How the register size follows the number of correctable errors in a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sizing {
    /// `n = (2t+1)^2`, the two-level permutation-invariant family.
    Family,
    Fixed(u64),
}

impl Sizing {
    pub fn qubits(&self, t: usize) -> u64 {
        match self {
            Sizing::Family => CodeFamily { d: 2, t }.n(),
            Sizing::Fixed(n) => *n,
        }
    }
}

/// `-log10` of the optimized error bound over a `(tau, t)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid {
    pub exchange: f64,
    pub a: f64,
    pub sizing: Sizing,
    pub taus: Vec<f64>,
    pub ts: Vec<usize>,
    /// `cells[i][k]` belongs to `taus[i]`, `ts[k]`; `None` where the bound is invalid.
    pub cells: Vec<Vec<Option<f64>>>,
    pub status: Vec<Vec<Status>>,
}

pub fn contour_grid(exchange: f64, a: f64, taus: &[f64], ts: &[usize], sizing: Sizing) -> Result<ContourGrid> {
    SpectralModel::new(1, exchange)?;
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::Domain(format!("noise strength must be >= 0, got {a}")));
    }
    if taus.is_empty() || ts.is_empty() {
        return Err(Error::Domain("contour grid needs nonempty axes".into()));
    }
    let evaluated: Vec<Vec<(Option<f64>, Status)>> = taus
        .par_iter()
        .map(|&tau| {
            ts.iter()
                .map(|&t| {
                    let sc = CodeSetting::new(a, sizing.qubits(t), t, exchange).map(|setting| BoundScenario {
                        setting,
                        tau,
                        theta: None,
                    });
                    match sc.and_then(|sc| total_error_bound(&sc)) {
                        Ok(b) => (Some(b.neg_log10()), Status::Feasible),
                        Err(e) => (None, Status::from_error(&e)),
                    }
                })
                .collect()
        })
        .collect();
    Ok(ContourGrid {
        exchange,
        a,
        sizing,
        taus: taus.to_vec(),
        ts: ts.to_vec(),
        cells: evaluated.iter().map(|r| r.iter().map(|c| c.0).collect()).collect(),
        status: evaluated.iter().map(|r| r.iter().map(|c| c.1).collect()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setting(a: f64, n: u64, t: usize, j: f64) -> CodeSetting {
        CodeSetting::new(a, n, t, j).unwrap()
    }

    #[test]
    fn codespace_terms() {
        assert_eq!(codespace_term(0, 3.0), 1.0);
        assert!((codespace_term(3, 2.0) - 8.0 / 6.0).abs() < 1e-15);
        for tau in [0.5, 1.0, 5.0] {
            let s: f64 = (0..60).map(|j| codespace_term(j, tau)).sum();
            assert!((s - f64::exp(tau)).abs() < 1e-12 * f64::exp(tau));
        }
    }

    #[test]
    fn high_energy_example() {
        let m = SpectralModel::new(9, 10.0).unwrap();
        let h2 = high_energy_term_bound(2, &m).unwrap();
        assert!((h2 - 0.8001).abs() < 1e-4);
        let h3 = high_energy_term_bound(3, &m).unwrap();
        let s = m.level_harmonic();
        assert!((h3 / h2 - 2.0 * s / 10.0).abs() < 1e-14);
        let small = SpectralModel::new(8, 10.0).unwrap();
        assert_eq!(
            high_energy_term_bound(2, &small),
            Err(Error::BoundInvalid(ValidityFlag::TooFewQubits))
        );
    }

    #[test]
    fn zero_noise_gives_zero() {
        let sc = BoundScenario {
            setting: setting(0.0, 25, 2, 10.0),
            tau: 5.0,
            theta: None,
        };
        assert_eq!(total_error_bound(&sc).unwrap().value(), 0.0);
    }

    #[test]
    fn theta_one_matches_both_readings() {
        let st = setting(1e-3, 49, 3, 10.0);
        let sc = BoundScenario {
            setting: st,
            tau: 4.0,
            theta: Some(1.0),
        };
        let b = total_error_bound(&sc).unwrap();
        let x1 = st.x1();
        let s = st.harmonic();
        let c1 = 20.0 / (s * s * (1.0 - x1));
        let an = st.an();
        let direct = 1.5 * 4f64.exp() * (c1 * x1.powi(4) + an.powi(4) / (1.0 - an));
        assert!((b.value() - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn optimized_theta_is_a_minimum() {
        let st = setting(2e-3, 81, 4, 10.0);
        let opt = total_error_bound(&BoundScenario {
            setting: st,
            tau: 20.0,
            theta: None,
        })
        .unwrap();
        for k in 1..200 {
            let theta = k as f64 / 200.0 / st.an();
            let v = total_error_bound(&BoundScenario {
                setting: st,
                tau: 20.0,
                theta: Some(theta),
            })
            .unwrap();
            assert!(opt.ln_value <= v.ln_value + 1e-12);
        }
    }

    #[test]
    fn codespace_series_below_closed_form() {
        for &(an, tau, t) in &[(0.02, 30.0, 3usize), (0.3, 2.0, 0), (0.1, 10.0, 5)] {
            let exact = codespace_tail(an, tau, t);
            let u = optimal_u(an * tau, t);
            let bound = codespace_ln(an, tau, t, u) + tau;
            assert!(exact.ln() <= bound + 1e-12);
        }
    }

    #[test]
    fn validity_flags() {
        let sc = |a, n| BoundScenario {
            setting: setting(a, n, 1, 10.0),
            tau: 1.0,
            theta: None,
        };
        assert_eq!(
            total_error_bound(&sc(1e-4, 5)),
            Err(Error::BoundInvalid(ValidityFlag::TooFewQubits))
        );
        assert_eq!(
            total_error_bound(&sc(1.0, 9)),
            Err(Error::BoundInvalid(ValidityFlag::HighEnergyRatio))
        );
        let bad_theta = BoundScenario {
            theta: Some(1e6),
            ..sc(1e-4, 9)
        };
        assert_eq!(
            total_error_bound(&bad_theta),
            Err(Error::BoundInvalid(ValidityFlag::CodespaceRatio))
        );
    }

    #[test]
    fn case_study_lifetimes() {
        let small = tau_lower_bound(&CodeSetting::family(4e-5, 12, 10.0).unwrap(), 5e-4).unwrap();
        assert!((small - 29.674_175_7).abs() < 1e-6);
        let large = tau_lower_bound(&CodeSetting::family(4e-5, 23, 1000.0).unwrap(), 5e-4).unwrap();
        assert!((large - 49.716_317_2).abs() < 1e-6);
    }

    #[test]
    fn lifetime_reproduces_target() {
        let st = CodeSetting::family(1e-4, 8, 10.0).unwrap();
        let tau = tau_lower_bound(&st, 1e-4).unwrap();
        let b = total_error_bound(&BoundScenario {
            setting: st,
            tau,
            theta: Some(1.0),
        })
        .unwrap();
        assert!(b.value() <= 1e-4 * (1.0 + 1e-6));
    }

    #[test]
    fn infeasible_lifetimes() {
        let st = CodeSetting::family(4e-5, 12, 10.0).unwrap();
        assert!(matches!(tau_lower_bound(&st, 1e-300), Err(Error::Infeasible(_))));
        assert!(matches!(
            enhancement(0.5, 10.0, 1e-4, 1..=20),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn baseline() {
        assert!((baseline_error(1.0, 1, std::f64::consts::FRAC_PI_2) - 1.0).abs() < 1e-15);
        assert_eq!(baseline_error(0.0, 5, 3.0), 0.0);
        assert!((baseline_error(4e-5, 1, 12.0) - 4.8e-4).abs() < 1e-10);
    }

    #[test]
    fn ranges() {
        let v = log_space(1e-6, 1e-2, 5).unwrap();
        assert!((v[2] - 1e-4).abs() < 1e-18);
        assert_eq!(lin_space(1.0, 3.0, 3).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(log_space(0.0, 1.0, 3).is_err());
    }
}
