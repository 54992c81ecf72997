//! Unital noise channels, storage errors and the correctible/uncorrectible split.

use num_complex::Complex64;

use super::codes::{code_qubits, repetition_codewords, Codeword};
use super::operators::{build_heisenberg, LocalField, PauliString};
use crate::linalg::{self, DenseOperator, DenseState};
use crate::{Error, Result};

/// Probability-weighted local fields `A_u`; the channel applies `exp(-i (H + A_u) tau)`.
#[derive(Debug, Clone)]
pub struct NoiseEnsemble {
    members: Vec<(f64, LocalField)>,
}

impl NoiseEnsemble {
    pub fn new(members: Vec<(f64, LocalField)>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::Model("ensemble has no members".into()))?;
        let n = first.1.n();
        if members.iter().any(|(p, f)| !(p.is_finite() && *p >= 0.0) || f.n() != n) {
            return Err(Error::Model(
                "probabilities must be nonnegative and fields share one register".into(),
            ));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Model(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { members })
    }

    pub fn single(field: LocalField) -> Self {
        Self {
            members: vec![(1.0, field)],
        }
    }

    pub fn members(&self) -> &[(f64, LocalField)] {
        &self.members
    }

    pub fn n(&self) -> usize {
        self.members[0].1.n()
    }

    /// `a = max_u ||A_u|| / n`.
    pub fn strength(&self) -> f64 {
        let max = self.members.iter().map(|(_, f)| f.norm()).fold(0.0, f64::max);
        max / self.n() as f64
    }

    /// `(p_u, exp(-i (H + A_u) tau))` for every member.
    pub fn unitaries(&self, h: &DenseOperator, tau: f64) -> Result<Vec<(f64, DenseOperator)>> {
        let dim = 1usize << self.n();
        linalg::check_dim(h, dim, "Hamiltonian")?;
        Ok(self
            .members
            .iter()
            .map(|(p, f)| (*p, linalg::evolution_hermitian(&(h + f.to_dense()), tau)))
            .collect())
    }

    pub fn apply(&self, h: &DenseOperator, tau: f64, rho: &DenseOperator) -> Result<DenseOperator> {
        let mut out = DenseOperator::zeros(rho.nrows(), rho.ncols());
        for (p, u) in self.unitaries(h, tau)? {
            out += (&u * rho * u.adjoint()) * Complex64::new(p, 0.0);
        }
        Ok(out)
    }

    /// `||N(1) - 1||` in operator norm.
    pub fn unitality_defect(&self, h: &DenseOperator, tau: f64) -> Result<f64> {
        let id = linalg::identity(1 << self.n());
        Ok(linalg::operator_norm(&(self.apply(h, tau, &id)? - id)))
    }
}

/// Checks that `rho` is Hermitian, unit-trace and positive semidefinite to `1e-9`.
pub fn validate_state(rho: &DenseOperator) -> Result<()> {
    linalg::check_square(rho, "density matrix")?;
    if !linalg::is_hermitian(rho, 1e-9) {
        return Err(Error::StateValidity("not Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-9 || tr.im.abs() > 1e-9 {
        return Err(Error::StateValidity(format!("trace {tr}")));
    }
    let min = linalg::hermitian_eigenvalues(rho)[0];
    if min < -1e-9 {
        return Err(Error::StateValidity(format!("negative eigenvalue {min}")));
    }
    Ok(())
}

/// `(1/2) ||rho - sigma||_1`.
pub fn trace_distance(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    validate_state(rho)?;
    validate_state(sigma)?;
    linalg::check_dim(sigma, rho.nrows(), "density matrix")?;
    Ok(0.5 * linalg::trace_norm(&(rho - sigma)))
}

/// `sum_j |j> (x) v_j / sqrt(d)` with the reference index as the high-order factor.
pub fn entangle(parts: &[DenseState]) -> DenseState {
    let d = parts.len();
    let dim = parts[0].len();
    let s = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    DenseState::from_fn(d * dim, |i, _| parts[i / dim][i % dim] * s)
}

/// Storage error of the repetition code under pure dephasing, with identity recovery.
///
/// Evaluates the trace distance between the encoded entangled state before and
/// after `exp(-i (H + A) tau)` as dense density matrices.
pub fn repetition_storage_error(field: &LocalField, tau: f64, exchange: f64) -> Result<f64> {
    if !field.is_dephasing() {
        return Err(Error::Model("repetition baseline needs pure Z noise".into()));
    }
    let n = field.n();
    let code = repetition_codewords(n)?;
    let h = build_heisenberg(n, exchange)? + field.to_dense();
    let u = linalg::evolution_hermitian(&h, tau);
    let before: Vec<DenseState> = code.iter().map(|c| c.state.clone()).collect();
    let after: Vec<DenseState> = before.iter().map(|v| &u * v).collect();
    let psi = entangle(&before);
    let phi = entangle(&after);
    trace_distance(&linalg::outer(&psi, &psi), &linalg::outer(&phi, &phi))
}

/// Span of `{E |j_L> : E Pauli of weight <= t}`.
#[derive(Debug, Clone)]
pub struct CorrectableSpace {
    basis: Vec<DenseState>,
}

impl CorrectableSpace {
    pub fn new(code: &[Codeword], t: usize) -> Result<Self> {
        let n = code_qubits(code)?;
        let mut images = Vec::new();
        for e in PauliString::up_to_weight(n, t) {
            for c in code {
                images.push(e.apply(&c.state));
            }
        }
        Ok(Self {
            basis: linalg::orthonormal_basis(&images, 1e-10),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn project(&self, psi: &DenseState) -> DenseState {
        let mut out = DenseState::zeros(psi.len());
        for q in &self.basis {
            out += q * q.dotc(psi);
        }
        out
    }

    /// `||(1 - Pi_g) psi||`.
    pub fn residual_norm(&self, psi: &DenseState) -> f64 {
        (psi - self.project(psi)).norm()
    }
}

/// `b_j = ||(1 - Pi_g) U |j_L>||` for each codeword.
pub fn uncorrectable_norm(u: &DenseOperator, code: &[Codeword], t: usize) -> Result<Vec<f64>> {
    let space = CorrectableSpace::new(code, t)?;
    linalg::check_dim(u, code[0].state.len(), "evolution")?;
    Ok(code.iter().map(|c| space.residual_norm(&(u * &c.state))).collect())
}

/// A recovery channel, given through the action of its Kraus operators on vectors.
#[derive(Debug, Clone)]
pub enum Recovery {
    /// Knill-Laflamme decoding of weight-`<= t` errors, with the identity on the
    /// uncorrectable complement.
    Projective {
        code: Vec<DenseState>,
        syndromes: Vec<Vec<DenseState>>,
    },
    Kraus(Vec<DenseOperator>),
}

impl Recovery {
    /// Builds the decoder from the error Gram matrix `C_ab = <0_L|E_a^dag E_b|0_L>`.
    ///
    /// Fails with a channel error if the code does not satisfy the Knill-Laflamme
    /// conditions for weight `t`.
    pub fn projective(code: &[Codeword], t: usize) -> Result<Self> {
        let n = code_qubits(code)?;
        let errors = PauliString::up_to_weight(n, t);
        let images: Vec<Vec<DenseState>> = code
            .iter()
            .map(|c| errors.iter().map(|e| e.apply(&c.state)).collect())
            .collect();
        let m = errors.len();
        let gram = DenseOperator::from_fn(m, m, |a, b| images[0][a].dotc(&images[0][b]));
        let (mu, w) = linalg::eigh(&gram);
        let top = mu.last().copied().unwrap_or(0.0);
        let mut syndromes = Vec::new();
        for (k, &mk) in mu.iter().enumerate() {
            if mk <= 1e-10 * top {
                continue;
            }
            let s = 1.0 / mk.sqrt();
            let per_label = images
                .iter()
                .map(|imgs| {
                    let mut v = DenseState::zeros(imgs[0].len());
                    for (a, img) in imgs.iter().enumerate() {
                        v += img * (w[(a, k)] * s);
                    }
                    v
                })
                .collect();
            syndromes.push(per_label);
        }
        let flat: Vec<&DenseState> = syndromes.iter().flatten().collect();
        let mut worst = 0.0f64;
        for (i, x) in flat.iter().enumerate() {
            for (j, y) in flat.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((x.dotc(y) - target).norm());
            }
        }
        if worst > 1e-8 {
            return Err(Error::Channel(format!(
                "code violates the Knill-Laflamme conditions for t = {t} (defect {worst:.2e})"
            )));
        }
        Ok(Recovery::Projective {
            code: code.iter().map(|c| c.state.clone()).collect(),
            syndromes,
        })
    }

    /// Wraps explicit Kraus operators, checking `sum K^dag K = 1` to `1e-9`.
    pub fn from_kraus(kraus: Vec<DenseOperator>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::Channel("no Kraus operators".into()))?;
        let dim = first.nrows();
        let mut sum = DenseOperator::zeros(dim, dim);
        for k in &kraus {
            linalg::check_dim(k, dim, "Kraus operator")?;
            sum += k.adjoint() * k;
        }
        let defect = linalg::operator_norm(&(sum - linalg::identity(dim)));
        if defect > 1e-9 {
            return Err(Error::Channel(format!("completeness violated by {defect:.2e}")));
        }
        Ok(Recovery::Kraus(kraus))
    }

    /// `K_m psi` for every Kraus operator, in a fixed order.
    pub fn images(&self, psi: &DenseState) -> Vec<DenseState> {
        match self {
            Recovery::Kraus(ks) => ks.iter().map(|k| k * psi).collect(),
            Recovery::Projective { code, syndromes } => {
                let mut out = Vec::with_capacity(syndromes.len() + 1);
                let mut rest = psi.clone();
                for per_label in syndromes {
                    let mut v = DenseState::zeros(psi.len());
                    for (phi, target) in per_label.iter().zip(code) {
                        let c = phi.dotc(psi);
                        v += target * c;
                        rest -= phi * c;
                    }
                    out.push(v);
                }
                out.push(rest);
                out
            }
        }
    }
}

/// Numerical check of the block-matrix trace-norm inequality for one evolution.
#[derive(Debug, Clone)]
pub struct GersgorinReport {
    /// `b_j = ||B |j_L>||`.
    pub b: Vec<f64>,
    /// `||M_{j,U}||_1` with `M_{j,U} = |j_L><j_L| - R(U |j_L><j_L| U^dag)`.
    pub m_trace_norms: Vec<f64>,
    /// Entangled storage error with the given recovery, an upper bound on `eps_C`.
    pub storage_error: f64,
}

impl GersgorinReport {
    pub fn mean_b(&self) -> f64 {
        self.b.iter().sum::<f64>() / self.b.len() as f64
    }

    /// Largest `||M_j||_1 - (b_j^2 + b_j)`; nonpositive when the inequality holds.
    pub fn inequality_slack(&self) -> f64 {
        self.b
            .iter()
            .zip(&self.m_trace_norms)
            .map(|(b, m)| m - (b * b + b))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn inequality_holds(&self) -> bool {
        self.inequality_slack() <= 1e-12
    }

    /// Whether every `b_j <= 0.01`, the regime of the simplified channel bound.
    pub fn small_regime(&self) -> bool {
        self.b.iter().all(|&b| b <= 0.01)
    }

    /// `eps_C <= 1.01 mean_j b_j`; vacuously true outside the small regime.
    pub fn channel_bound_holds(&self) -> bool {
        !self.small_regime() || self.storage_error <= 1.01 * self.mean_b() + 1e-14
    }
}

/// Evaluates `b_j`, `||M_{j,U}||_1` and the storage error for `U` on `code`.
///
/// Without an explicit recovery the Knill-Laflamme decoder for weight `t` is used.
pub fn gersgorin_check(
    u: &DenseOperator,
    code: &[Codeword],
    t: usize,
    recovery: Option<&Recovery>,
) -> Result<GersgorinReport> {
    linalg::check_dim(u, code[0].state.len(), "evolution")?;
    let evolved: Vec<DenseState> = code.iter().map(|c| u * &c.state).collect();
    gersgorin_check_states(&evolved, code, t, recovery)
}

/// As [`gersgorin_check`], given the evolved codewords `U |j_L>` directly.
pub fn gersgorin_check_states(
    evolved: &[DenseState],
    code: &[Codeword],
    t: usize,
    recovery: Option<&Recovery>,
) -> Result<GersgorinReport> {
    if evolved.len() != code.len() {
        return Err(Error::Shape {
            expected: format!("{} evolved codewords", code.len()),
            got: evolved.len().to_string(),
        });
    }
    let owned;
    let recovery = match recovery {
        Some(r) => r,
        None => {
            owned = Recovery::projective(code, t)?;
            &owned
        }
    };
    let space = CorrectableSpace::new(code, t)?;
    let b: Vec<f64> = evolved.iter().map(|v| space.residual_norm(v)).collect();

    let images: Vec<Vec<DenseState>> = evolved.iter().map(|v| recovery.images(v)).collect();
    let m_trace_norms = code
        .iter()
        .zip(&images)
        .map(|(c, imgs)| {
            let mut vectors = vec![c.state.clone()];
            vectors.extend(imgs.iter().cloned());
            let mut signs = vec![1.0];
            signs.extend(std::iter::repeat_n(-1.0, imgs.len()));
            linalg::low_rank_trace_norm(&vectors, &signs)
        })
        .collect();

    let reference: Vec<DenseState> = code.iter().map(|c| c.state.clone()).collect();
    let mut vectors = vec![entangle(&reference)];
    let mut signs = vec![1.0];
    for m in 0..images[0].len() {
        let parts: Vec<DenseState> = images.iter().map(|imgs| imgs[m].clone()).collect();
        vectors.push(entangle(&parts));
        signs.push(-1.0);
    }
    let storage_error = 0.5 * linalg::low_rank_trace_norm(&vectors, &signs);

    Ok(GersgorinReport {
        b,
        m_trace_norms,
        storage_error,
    })
}
