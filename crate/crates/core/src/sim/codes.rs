//! Dicke states and small quantum codes.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::operators::{check_qubits, MAX_DENSE_QUBITS};
use crate::linalg::{DenseState, ONE};
use crate::spectrum::binomial;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    pub label: usize,
    pub state: DenseState,
}

/// Number of qubits of a code, read off its state dimension.
pub fn code_qubits(code: &[Codeword]) -> Result<usize> {
    let first = code
        .first()
        .ok_or_else(|| Error::Domain("code has no codewords".into()))?;
    let dim = first.state.len();
    if !dim.is_power_of_two() || code.iter().any(|c| c.state.len() != dim) {
        return Err(Error::Shape {
            expected: "equal power-of-two dimensions".into(),
            got: format!("{dim}"),
        });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// `|D^n_w>`, the uniform superposition of weight-`w` basis states.
pub fn dicke_state(n: usize, w: usize) -> Result<DenseState> {
    check_qubits(n, MAX_DENSE_QUBITS)?;
    if w > n {
        return Err(Error::Domain(format!("Dicke weight {w} exceeds n = {n}")));
    }
    let amp = 1.0 / binomial(n as u64, w as u64).to_f64().unwrap_or(f64::INFINITY).sqrt();
    Ok(DenseState::from_fn(1 << n, |b, _| {
        if b.count_ones() as usize == w {
            Complex64::new(amp, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `(|0...0> +- |1...1>)/sqrt(2)`, labelled 0 and 1.
pub fn repetition_codewords(n: usize) -> Result<Vec<Codeword>> {
    check_qubits(n, MAX_DENSE_QUBITS)?;
    let dim = 1usize << n;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut plus = DenseState::zeros(dim);
    let mut minus = DenseState::zeros(dim);
    plus[0] = Complex64::new(s, 0.0);
    plus[dim - 1] = Complex64::new(s, 0.0);
    minus[0] = Complex64::new(s, 0.0);
    minus[dim - 1] = Complex64::new(-s, 0.0);
    Ok(vec![
        Codeword { label: 0, state: plus },
        Codeword { label: 1, state: minus },
    ])
}

/// Coefficients of `(1 + x + ... + x^(d-1))^m`.
pub fn polynomial_coefficients(d: usize, m: usize) -> Vec<u64> {
    let mut c = vec![1u64];
    for _ in 0..m {
        let mut next = vec![0u64; c.len() + d - 1];
        for (i, &v) in c.iter().enumerate() {
            for k in 0..d {
                next[i + k] += v;
            }
        }
        c = next;
    }
    c
}

/// Number of qubits `(d - 1)(2t + 1)^2` of the permutation-invariant family.
pub fn pi_code_qubits(d: usize, t: usize) -> usize {
    (d - 1) * (2 * t + 1) * (2 * t + 1)
}

/// Permutation-invariant codewords encoding a qudit of dimension `d` against `t` errors.
///
/// `|j> = d^(-t) sum_{z = j mod d} sqrt(f_z) |D^n_{(2t+1) z}>` where `f_z` are the
/// coefficients of `(1 + x + ... + x^(d-1))^(2t+1)`.
pub fn pi_codewords(d: usize, t: usize) -> Result<Vec<Codeword>> {
    if d < 2 {
        return Err(Error::Domain("logical dimension must be at least 2".into()));
    }
    let n = pi_code_qubits(d, t);
    check_qubits(n, MAX_DENSE_QUBITS)?;
    let spacing = 2 * t + 1;
    let f = polynomial_coefficients(d, spacing);
    let norm = (d as f64).powi(t as i32);
    let mut code = Vec::with_capacity(d);
    for j in 0..d {
        let mut state = DenseState::zeros(1 << n);
        for (z, &fz) in f.iter().enumerate().filter(|(z, _)| z % d == j) {
            state += dicke_state(n, spacing * z)? * Complex64::new((fz as f64).sqrt() / norm, 0.0);
        }
        code.push(Codeword { label: j, state });
    }
    Ok(code)
}

/// Two-level permutation-invariant code with spacing `g`, `m` binomial terms and
/// scaling `u`, on `g m u` qubits.
///
/// It corrects `min(g, m)` bit and phase errors up to `floor((min(g, m) - 1)/2)`
/// and detects `min(g, m) - 1`. `pi_codewords(2, t)` is the case `g = m = 2t + 1`, `u = 1`.
pub fn gnu_codewords(g: usize, m: usize, u: usize) -> Result<Vec<Codeword>> {
    if g == 0 || m == 0 || u == 0 {
        return Err(Error::Domain("g, m and u must be positive".into()));
    }
    let n = g * m * u;
    check_qubits(n, MAX_DENSE_QUBITS)?;
    let norm = 2f64.powi(m as i32 - 1).sqrt();
    let mut code = Vec::with_capacity(2);
    for parity in 0..2 {
        let mut state = DenseState::zeros(1 << n);
        for l in (parity..=m).step_by(2) {
            let c = binomial(m as u64, l as u64).to_f64().unwrap_or(0.0);
            state += dicke_state(n, g * l)? * Complex64::new(c.sqrt() / norm, 0.0);
        }
        code.push(Codeword { label: parity, state });
    }
    Ok(code)
}

/// The perfect `[[5,1,3]]` code, stabilized by cyclic shifts of `XZZXI`.
pub fn five_qubit_code() -> Vec<Codeword> {
    // Generators as (x mask, z mask) over bit positions 4..0 for qubits 0..4.
    let generator = |shift: usize| -> (usize, usize) {
        let pattern = ['X', 'Z', 'Z', 'X', 'I'];
        let (mut x, mut z) = (0, 0);
        for q in 0..5 {
            let bit = 1 << (4 - q);
            match pattern[(q + 5 - shift) % 5] {
                'X' => x |= bit,
                'Z' => z |= bit,
                _ => {}
            }
        }
        (x, z)
    };
    let gens: Vec<(usize, usize)> = (0..4).map(generator).collect();
    let apply = |(x, z): (usize, usize), v: &DenseState| {
        let mut out = DenseState::zeros(32);
        for (b, a) in v.iter().enumerate() {
            let sign = if (b & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ x] += a * sign;
        }
        out
    };
    let project = |mut v: DenseState| {
        for &g in &gens {
            v = (apply(g, &v) + &v) * Complex64::new(0.5, 0.0);
        }
        v
    };
    let mut zero = DenseState::zeros(32);
    zero[0] = ONE;
    let zero = project(zero);
    let zero = &zero / Complex64::new(zero.norm(), 0.0);
    // Logical X = XXXXX.
    let one = apply((31, 0), &zero);
    vec![
        Codeword { label: 0, state: zero },
        Codeword { label: 1, state: one },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::operators::{symmetrizer, PauliString};

    fn assert_orthonormal(code: &[Codeword]) {
        for a in code {
            assert!((a.state.norm() - 1.0).abs() < 1e-12);
            for b in code.iter().filter(|b| b.label != a.label) {
                assert!(a.state.dotc(&b.state).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn dicke_examples() {
        let d = dicke_state(3, 1).unwrap();
        let s = 1.0 / 3f64.sqrt();
        for b in [4usize, 2, 1] {
            assert!((d[b].re - s).abs() < 1e-15);
        }
        assert_eq!(dicke_state(4, 0).unwrap()[0], ONE);
        assert!(dicke_state(3, 4).is_err());
        let p = symmetrizer(4).unwrap();
        let d = dicke_state(4, 2).unwrap();
        assert!((&p * &d - &d).norm() < 1e-12);
    }

    #[test]
    fn polynomial_sum() {
        assert_eq!(polynomial_coefficients(2, 3), vec![1, 3, 3, 1]);
        let c = polynomial_coefficients(3, 5);
        assert_eq!(c.iter().sum::<u64>(), 3u64.pow(5));
    }

    #[test]
    fn trivial_pi_code() {
        let code = pi_codewords(2, 0).unwrap();
        assert_eq!(code[0].state.len(), 2);
        assert_eq!(code[0].state[0], ONE);
        assert_eq!(code[1].state[1], ONE);
    }

    #[test]
    fn nine_qubit_pi_code() {
        let code = pi_codewords(2, 1).unwrap();
        assert_eq!(code[0].state.len(), 512);
        assert_orthonormal(&code);
        let gnu = gnu_codewords(3, 3, 1).unwrap();
        for (a, b) in code.iter().zip(&gnu) {
            assert!((&a.state - &b.state).norm() < 1e-12);
        }
    }

    #[test]
    fn pi_code_cap() {
        assert!(matches!(pi_codewords(2, 2), Err(Error::Resource(_))));
    }

    #[test]
    fn five_qubit_code_is_stabilized() {
        let code = five_qubit_code();
        assert_orthonormal(&code);
        // Knill-Laflamme for all weight-<=2 products.
        let errs = PauliString::up_to_weight(5, 2);
        for e in &errs {
            let a = e.apply(&code[0].state);
            let b = e.apply(&code[1].state);
            let c00 = code[0].state.dotc(&a);
            let c11 = code[1].state.dotc(&b);
            let c01 = code[0].state.dotc(&b);
            assert!((c00 - c11).norm() < 1e-12);
            assert!(c01.norm() < 1e-12);
        }
    }
}
