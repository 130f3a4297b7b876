//! Pauli strings, Pauli spectra and the dense transforms between them.

mod hamiltonian;
mod spectrum;
mod string;
mod transform;

pub use hamiltonian::{Eigen, Hamiltonian, HamiltonianJson, NORM_SLACK};
pub use spectrum::{CoeffJson, PauliSpectrum, SpectrumJson};
pub use string::{PauliString, MAX_QUBITS};
pub use transform::{
    coefficient_vector, dense_from_spectrum, dense_from_spectrum_with_cap, inf_norm,
    inf_norm_with_cap, inverse_pauli_transform_in_place, matrix_inf_norm, naive_spectrum,
    pauli_matrix, pauli_transform_in_place, qubits_of, spectrum_from_dense,
    spectrum_from_dense_with_cap, DEFAULT_QUBIT_CAP,
};

/// Number of non-identity letters of `p`.
pub fn weight(p: &PauliString) -> usize {
    p.weight()
}

/// `‖A_{>k}‖₂`.
pub fn tail_two_norm(s: &PauliSpectrum, k: usize) -> crate::Result<f64> {
    s.tail_two_norm(k)
}
