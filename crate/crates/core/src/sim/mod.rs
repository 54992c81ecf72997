//! Dense state-vector and density-matrix simulation for small registers.
//!
//! Everything here is exact up to floating point and serves as an oracle for
//! the analytic bounds: Hamiltonian construction, unital channels, codewords,
//! storage errors and the correctible/uncorrectible split of a noisy evolution.

mod channel;
mod codes;
mod operators;

pub use channel::{
    entangle, gersgorin_check, gersgorin_check_states, repetition_storage_error, trace_distance,
    uncorrectable_norm, validate_state, CorrectableSpace, GersgorinReport, NoiseEnsemble, Recovery,
};
pub use codes::{
    code_qubits, dicke_state, five_qubit_code, gnu_codewords, pi_code_qubits, pi_codewords,
    polynomial_coefficients, repetition_codewords, Codeword,
};
pub use operators::{
    build_heisenberg, heisenberg_real, heisenberg_sector, heisenberg_spectrum, symmetrizer,
    LocalField, Pauli, PauliString, MAX_DENSE_QUBITS, MAX_SYMMETRIZER_QUBITS,
};
