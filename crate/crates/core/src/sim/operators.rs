//! Qubit operators: Pauli strings, 1-local fields and the mean-field Heisenberg Hamiltonian.
//!
//! Qubit `q` of an `n`-qubit register is bit `n - 1 - q` of the basis index, so
//! qubit 0 is the leftmost tensor factor.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::linalg::{self, DenseOperator, DenseState, I, ONE, ZERO};
use crate::{Error, Result};

/// Largest register the dense simulator will instantiate.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest register for which the `n!`-term symmetrizer is built.
pub const MAX_SYMMETRIZER_QUBITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// Image of the single-qubit basis state `bit` as `(new bit, phase)`.
    fn act(self, bit: bool) -> (bool, Complex64) {
        match (self, bit) {
            (Pauli::X, b) => (!b, ONE),
            (Pauli::Y, false) => (true, I),
            (Pauli::Y, true) => (false, -I),
            (Pauli::Z, false) => (false, ONE),
            (Pauli::Z, true) => (true, -ONE),
        }
    }
}

pub(crate) fn check_qubits(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("register needs at least one qubit".into()));
    }
    if n > cap {
        return Err(Error::Resource(format!(
            "{n} qubits exceeds the dense limit of {cap}"
        )));
    }
    Ok(())
}

fn bit_mask(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// A tensor product of single-qubit Paulis on distinct qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    ops: Vec<(usize, Pauli)>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self { n, ops: Vec::new() }
    }

    pub fn new(n: usize, ops: Vec<(usize, Pauli)>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &(q, _) in &ops {
            if q >= n || seen[q] {
                return Err(Error::Domain(format!("invalid qubit {q} in Pauli string")));
            }
            seen[q] = true;
        }
        Ok(Self { n, ops })
    }

    pub fn weight(&self) -> usize {
        self.ops.len()
    }

    pub fn apply(&self, psi: &DenseState) -> DenseState {
        let mut out = DenseState::zeros(psi.len());
        for (b, amp) in psi.iter().enumerate() {
            if *amp == ZERO {
                continue;
            }
            let mut idx = b;
            let mut phase = ONE;
            for &(q, p) in &self.ops {
                let m = bit_mask(self.n, q);
                let (bit, ph) = p.act(idx & m != 0);
                idx = if bit { idx | m } else { idx & !m };
                phase *= ph;
            }
            out[idx] += phase * amp;
        }
        out
    }

    pub fn to_dense(&self) -> DenseOperator {
        let dim = 1 << self.n;
        let mut m = DenseOperator::zeros(dim, dim);
        for b in 0..dim {
            let mut e = DenseState::zeros(dim);
            e[b] = ONE;
            m.set_column(b, &self.apply(&e));
        }
        m
    }

    /// Every Pauli string of weight at most `t`, identity first.
    pub fn up_to_weight(n: usize, t: usize) -> Vec<PauliString> {
        let mut out = Vec::new();
        for w in 0..=t.min(n) {
            let mut positions = Vec::with_capacity(w);
            choose(n, w, 0, &mut positions, &mut |pos: &[usize]| {
                let total = 3usize.pow(w as u32);
                for code in 0..total {
                    let mut c = code;
                    let ops = pos
                        .iter()
                        .map(|&q| {
                            let p = Pauli::ALL[c % 3];
                            c /= 3;
                            (q, p)
                        })
                        .collect();
                    out.push(PauliString { n, ops });
                }
            });
        }
        out
    }
}

fn choose(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for q in start..n {
        acc.push(q);
        choose(n, k, q + 1, acc, f);
        acc.pop();
    }
}

/// A 1-local Hermitian perturbation `sum_q (x_q X_q + y_q Y_q + z_q Z_q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalField {
    n: usize,
    coeffs: Vec<[f64; 3]>,
}

impl LocalField {
    pub fn new(coeffs: Vec<[f64; 3]>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("local field needs at least one qubit".into()));
        }
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Domain("local field coefficients must be finite".into()));
        }
        Ok(Self {
            n: coeffs.len(),
            coeffs,
        })
    }

    /// Pure dephasing field `sum_q z_q Z_q`.
    pub fn dephasing(z: &[f64]) -> Result<Self> {
        Self::new(z.iter().map(|&z| [0.0, 0.0, z]).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: vec![[0.0; 3]; n],
        }
    }

    pub fn single(n: usize, q: usize, p: Pauli, coeff: f64) -> Self {
        let mut f = Self::zero(n);
        let slot = match p {
            Pauli::X => 0,
            Pauli::Y => 1,
            Pauli::Z => 2,
        };
        f.coeffs[q][slot] = coeff;
        f
    }

    /// Random field with each per-qubit vector uniform in direction and of length up to `strength`.
    pub fn random(n: usize, strength: f64, rng: &mut impl Rng) -> Self {
        let coeffs = (0..n)
            .map(|_| {
                let v: [f64; 3] = [
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ];
                let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().max(1e-12);
                let r = strength * rng.random_range(0.0..1.0);
                [v[0] / len * r, v[1] / len * r, v[2] / len * r]
            })
            .collect();
        Self { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[[f64; 3]] {
        &self.coeffs
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c[0] * s, c[1] * s, c[2] * s])
                .collect(),
        }
    }

    pub fn is_dephasing(&self) -> bool {
        self.coeffs.iter().all(|c| c[0] == 0.0 && c[1] == 0.0)
    }

    /// Exact operator norm: the terms commute and each has eigenvalues `+-|r_q|`.
    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt())
            .sum()
    }

    pub fn apply(&self, psi: &DenseState) -> DenseState {
        let mut out = DenseState::zeros(psi.len());
        for (q, c) in self.coeffs.iter().enumerate() {
            for (slot, p) in Pauli::ALL.iter().enumerate() {
                if c[slot] != 0.0 {
                    let s = PauliString {
                        n: self.n,
                        ops: vec![(q, *p)],
                    };
                    out += s.apply(psi) * Complex64::new(c[slot], 0.0);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseOperator {
        let dim = 1 << self.n;
        let mut m = DenseOperator::zeros(dim, dim);
        for b in 0..dim {
            let mut e = DenseState::zeros(dim);
            e[b] = ONE;
            m.set_column(b, &self.apply(&e));
        }
        m
    }
}

/// `J sum_{j<k} (1 - SWAP_{jk})` as a real symmetric matrix.
pub fn heisenberg_real(n: usize, exchange: f64) -> Result<DMatrix<f64>> {
    check_qubits(n, MAX_DENSE_QUBITS)?;
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        for j in 0..n {
            for k in (j + 1)..n {
                let (mj, mk) = (bit_mask(n, j), bit_mask(n, k));
                if (b & mj != 0) != (b & mk != 0) {
                    h[(b, b)] += exchange;
                    h[(b ^ mj ^ mk, b)] -= exchange;
                }
            }
        }
    }
    Ok(h)
}

/// `H = -J sum_{j<k} (X_j X_k + Y_j Y_k + Z_j Z_k - 1) / 2` on `n <= 12` qubits.
pub fn build_heisenberg(n: usize, exchange: f64) -> Result<DenseOperator> {
    Ok(linalg::to_complex(&heisenberg_real(n, exchange)?))
}

/// Heisenberg Hamiltonian restricted to basis states of Hamming weight `w`.
///
/// `H` conserves weight, so the full spectrum is the union over `w` of these blocks.
pub fn heisenberg_sector(n: usize, exchange: f64, w: usize) -> DMatrix<f64> {
    let states: Vec<usize> = (0..1usize << n).filter(|b| b.count_ones() as usize == w).collect();
    let index = |b: usize| states.binary_search(&b).expect("weight is conserved");
    let mut h = DMatrix::zeros(states.len(), states.len());
    for (col, &b) in states.iter().enumerate() {
        for j in 0..n {
            for k in (j + 1)..n {
                let (mj, mk) = (bit_mask(n, j), bit_mask(n, k));
                if (b & mj != 0) != (b & mk != 0) {
                    h[(col, col)] += exchange;
                    h[(index(b ^ mj ^ mk), col)] -= exchange;
                }
            }
        }
    }
    h
}

/// All `2^n` eigenvalues of the Heisenberg Hamiltonian, by weight sector, ascending.
pub fn heisenberg_spectrum(n: usize, exchange: f64) -> Result<Vec<f64>> {
    check_qubits(n, 16)?;
    let mut all = Vec::with_capacity(1 << n);
    for w in 0..=n {
        all.extend(linalg::symmetric_eigenvalues(&heisenberg_sector(n, exchange, w)));
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Projector onto the symmetric subspace, `(1/n!) sum_sigma P_sigma`, for `n <= 6`.
pub fn symmetrizer(n: usize) -> Result<DenseOperator> {
    check_qubits(n, MAX_SYMMETRIZER_QUBITS)?;
    let dim = 1usize << n;
    let mut acc = DMatrix::<f64>::zeros(dim, dim);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0usize;
    permutations(&mut perm, 0, &mut |p: &[usize]| {
        count += 1;
        for b in 0..dim {
            let mut image = 0usize;
            for (q, &target) in p.iter().enumerate() {
                if b & bit_mask(n, q) != 0 {
                    image |= bit_mask(n, target);
                }
            }
            acc[(image, b)] += 1.0;
        }
    });
    Ok(linalg::to_complex(&(acc / count as f64)))
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}
