//! Dense complex linear algebra shared by the Fréchet machinery and the simulator.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

/// Complex matrix over a `2^n`-dimensional qubit space.
pub type DenseOperator = DMatrix<Complex64>;
/// Complex state vector.
pub type DenseState = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(dim: usize) -> DenseOperator {
    DenseOperator::identity(dim, dim)
}

pub fn to_complex(m: &DMatrix<f64>) -> DenseOperator {
    m.map(|x| Complex64::new(x, 0.0))
}

pub(crate) fn check_square(m: &DenseOperator, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape {
            expected: format!("square {what}"),
            got: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    Ok(m.nrows())
}

pub(crate) fn check_same_dim(a: &DenseOperator, b: &DenseOperator) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::Shape {
            expected: format!("{}x{}", a.nrows(), a.ncols()),
            got: format!("{}x{}", b.nrows(), b.ncols()),
        });
    }
    Ok(())
}

pub(crate) fn check_dim(m: &DenseOperator, dim: usize, what: &str) -> Result<()> {
    if m.shape() != (dim, dim) {
        return Err(Error::Shape {
            expected: format!("{dim}x{dim} {what}"),
            got: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    Ok(())
}

/// Largest singular value.
pub fn operator_norm(m: &DenseOperator) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if is_hermitian(m, 0.0) {
        return hermitian_eigenvalues(m)
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
    }
    m.singular_values().max()
}

/// Induced 1-norm (maximum absolute column sum).
pub fn norm1(m: &DenseOperator) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Sum of singular values.
pub fn trace_norm(m: &DenseOperator) -> f64 {
    m.singular_values().sum()
}

pub fn is_hermitian(m: &DenseOperator, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let n = m.nrows();
    for i in 0..n {
        for j in i..n {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// `|| U^dagger U - 1 ||` in operator norm.
pub fn unitarity_defect(u: &DenseOperator) -> f64 {
    let d = u.adjoint() * u - identity(u.nrows());
    operator_norm(&d)
}

fn hermitian_part(m: &DenseOperator) -> DenseOperator {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Eigenvalues of a Hermitian matrix in increasing order.
pub fn hermitian_eigenvalues(m: &DenseOperator) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(hermitian_part(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending, eigenvectors as columns.
pub fn eigh(m: &DenseOperator) -> (Vec<f64>, DenseOperator) {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DenseOperator::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a real symmetric matrix in increasing order.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `exp(-i K tau)` for Hermitian `K` via its eigendecomposition.
pub fn evolution_hermitian(k: &DenseOperator, tau: f64) -> DenseOperator {
    let (values, vectors) = eigh(k);
    let phases = DVector::from_iterator(
        values.len(),
        values.iter().map(|&l| Complex64::from_polar(1.0, -l * tau)),
    );
    let mut scaled = vectors.clone();
    for (mut col, p) in scaled.column_iter_mut().zip(phases.iter()) {
        col *= *p;
    }
    scaled * vectors.adjoint()
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// General matrix exponential by scaling and squaring with a degree-13 Padé approximant.
pub fn expm(a: &DenseOperator) -> DenseOperator {
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let norm = norm1(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = a * Complex64::new(0.5f64.powi(s), 0.0);
    let b = |i: usize| Complex64::new(PADE13[i], 0.0);
    let ident = identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &ident * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &ident * b(0);
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .expect("Padé denominator is nonsingular after scaling");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// `exp(-i K tau) psi` by a scaled Taylor expansion; `K` is assumed Hermitian.
pub fn evolve_state(k: &DenseOperator, psi: &DenseState, tau: f64) -> DenseState {
    let scale = norm1(k) * tau.abs();
    let steps = scale.ceil().max(1.0) as usize;
    let h = Complex64::new(0.0, -tau / steps as f64);
    let mut out = psi.clone();
    for _ in 0..steps {
        let mut term = out.clone();
        let mut acc = out.clone();
        let base = acc.norm().max(f64::MIN_POSITIVE);
        for m in 1..60 {
            term = (k * &term) * (h / m as f64);
            acc += &term;
            if term.norm() <= 1e-17 * base {
                break;
            }
        }
        out = acc;
    }
    out
}

pub fn inner(a: &DenseState, b: &DenseState) -> Complex64 {
    a.dotc(b)
}

/// Orthonormal basis of the span of `vectors` (modified Gram-Schmidt, two passes).
///
/// Vectors whose residual norm falls below `tol` times their original norm are dropped.
pub fn orthonormal_basis(vectors: &[DenseState], tol: f64) -> Vec<DenseState> {
    let mut basis: Vec<DenseState> = Vec::new();
    for v in vectors {
        let original = v.norm();
        if original == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = q.dotc(&w);
                w -= q * c;
            }
        }
        let r = w.norm();
        if r > tol * original {
            basis.push(w / Complex64::new(r, 0.0));
        }
    }
    basis
}

/// Trace norm of `sum_i sign_i |v_i><v_i|` without forming the full matrix.
///
/// The operator lives in the span of the vectors; it is compressed onto an
/// orthonormal basis of that span and diagonalized there.
pub fn low_rank_trace_norm(vectors: &[DenseState], signs: &[f64]) -> f64 {
    assert_eq!(vectors.len(), signs.len());
    let basis = orthonormal_basis(vectors, 1e-13);
    let r = basis.len();
    if r == 0 {
        return 0.0;
    }
    let coords: Vec<Vec<Complex64>> = vectors
        .iter()
        .map(|v| basis.iter().map(|q| q.dotc(v)).collect())
        .collect();
    let mut small = DenseOperator::zeros(r, r);
    for (c, &s) in coords.iter().zip(signs) {
        for i in 0..r {
            for j in 0..r {
                small[(i, j)] += c[i] * c[j].conj() * s;
            }
        }
    }
    hermitian_eigenvalues(&small).iter().map(|x| x.abs()).sum()
}

pub fn outer(a: &DenseState, b: &DenseState) -> DenseOperator {
    a * b.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn random_hermitian(dim: usize, seed: u64) -> DenseOperator {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = DenseOperator::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        hermitian_part(&m)
    }

    #[test]
    fn pade_matches_eigendecomposition_route() {
        for seed in 0..5 {
            let k = random_hermitian(8, seed) * Complex64::new(3.0, 0.0);
            let tau = 0.7;
            let a = evolution_hermitian(&k, tau);
            let b = expm(&(&k * Complex64::new(0.0, -tau)));
            assert!(operator_norm(&(a - &b)) < 1e-11);
            assert!(unitarity_defect(&b) < 1e-11);
        }
    }

    #[test]
    fn expm_scalar_and_nilpotent() {
        let z = DenseOperator::from_element(1, 1, Complex64::new(0.3, -2.0));
        let e = expm(&z);
        assert!((e[(0, 0)] - Complex64::new(0.3, -2.0).exp()).norm() < 1e-14);
        let mut n = DenseOperator::zeros(3, 3);
        n[(0, 1)] = ONE;
        n[(1, 2)] = ONE;
        let e = expm(&n);
        assert!(close(e[(0, 2)].re, 0.5, 1e-15));
        assert!(close(e[(0, 1)].re, 1.0, 1e-15));
    }

    #[test]
    fn taylor_action_matches_dense_evolution() {
        let k = random_hermitian(16, 9) * Complex64::new(5.0, 0.0);
        let psi = DenseState::from_fn(16, |i, _| Complex64::new(1.0 + i as f64, -0.5));
        let psi = &psi / Complex64::new(psi.norm(), 0.0);
        let direct = evolution_hermitian(&k, 1.3) * &psi;
        let action = evolve_state(&k, &psi, 1.3);
        assert!((direct - action).norm() < 1e-12);
    }

    #[test]
    fn low_rank_trace_norm_matches_dense() {
        let v1 = DenseState::from_vec(vec![ONE, I, ZERO, ONE]);
        let v2 = DenseState::from_vec(vec![ZERO, ONE, ONE * 0.5, -I]);
        let v3 = DenseState::from_vec(vec![ONE * 0.2, ZERO, I, ONE]);
        let signs = [1.0, -1.0, -0.5];
        let dense = outer(&v1, &v1) - outer(&v2, &v2) - outer(&v3, &v3) * Complex64::new(0.5, 0.0);
        let a = low_rank_trace_norm(&[v1, v2, v3], &signs);
        assert!(close(a, trace_norm(&dense), 1e-12));
    }

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let v1 = DenseState::from_vec(vec![ONE, ZERO, ZERO]);
        let v2 = DenseState::from_vec(vec![ONE, ONE, ZERO]);
        let v3 = &v1 * Complex64::new(2.0, 0.0) - &v2;
        let basis = orthonormal_basis(&[v1, v2, v3], 1e-10);
        assert_eq!(basis.len(), 2);
    }
}
