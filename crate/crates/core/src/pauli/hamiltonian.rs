use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spectrum::{PauliSpectrum, SpectrumJson};
use super::string::PauliString;
use super::transform::{dense_from_spectrum, DEFAULT_QUBIT_CAP};
use crate::error::{Error, Result};

/// Slack allowed on `‖H‖∞ ≤ 1` for the normalized flag.
pub const NORM_SLACK: f64 = 1e-9;

/// `H = V Λ V†`.
#[derive(Debug)]
pub struct Eigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<Complex64>,
}

/// A self-adjoint operator given by real Pauli coefficients.
///
/// The eigendecomposition is computed on first use and shared by clones.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    spectrum: PauliSpectrum,
    declared_locality: Option<usize>,
    normalized: bool,
    eigen: Arc<OnceLock<Eigen>>,
}

impl PartialEq for Hamiltonian {
    fn eq(&self, other: &Self) -> bool {
        self.spectrum == other.spectrum
            && self.declared_locality == other.declared_locality
            && self.normalized == other.normalized
    }
}

impl Hamiltonian {
    /// Wraps a spectrum, rejecting complex coefficients.
    pub fn new(spectrum: PauliSpectrum) -> Result<Self> {
        if spectrum.num_qubits() > DEFAULT_QUBIT_CAP {
            return Err(Error::QubitCapExceeded { n: spectrum.num_qubits(), cap: DEFAULT_QUBIT_CAP });
        }
        if let Some((p, _)) = spectrum.iter().find(|(_, a)| a.im != 0.0) {
            return Err(Error::NotHermitian(p.to_string()));
        }
        Ok(Self {
            spectrum,
            declared_locality: None,
            normalized: false,
            eigen: Arc::new(OnceLock::new()),
        })
    }

    pub fn from_real_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, f64)>,
    {
        Self::new(PauliSpectrum::from_terms(
            n,
            terms.into_iter().map(|(p, h)| (p, Complex64::new(h, 0.0))),
        )?)
    }

    pub fn from_words(n: usize, terms: &[(&str, f64)]) -> Result<Self> {
        Self::new(PauliSpectrum::from_real_words(n, terms)?)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(PauliSpectrum::zero(n)).expect("zero spectrum is Hermitian")
    }

    /// Declares locality `k`, checking every term.
    pub fn with_locality(mut self, k: usize) -> Result<Self> {
        let n = self.num_qubits();
        if k > n {
            return Err(Error::LocalityOutOfRange { k, n });
        }
        if let Some((p, _)) = self.spectrum.iter().find(|(p, _)| p.weight() > k) {
            return Err(Error::LocalityViolated { word: p.to_string(), weight: p.weight(), k });
        }
        self.declared_locality = Some(k);
        Ok(self)
    }

    /// Verifies `‖H‖∞ ≤ 1` and sets the normalized flag.
    pub fn checked_normalized(mut self) -> Result<Self> {
        let norm = self.inf_norm()?;
        if norm > 1.0 + NORM_SLACK {
            return Err(Error::NotNormalized(norm));
        }
        self.normalized = true;
        Ok(self)
    }

    /// Rescales to spectral norm exactly 1. The zero operator stays zero.
    pub fn normalize(self) -> Result<Self> {
        let norm = self.inf_norm()?;
        let mut out = if norm > 0.0 {
            let h = Self::new(self.spectrum.scaled(1.0 / norm))?;
            Self { declared_locality: self.declared_locality, ..h }
        } else {
            self
        };
        out.normalized = true;
        Ok(out)
    }

    pub fn num_qubits(&self) -> usize {
        self.spectrum.num_qubits()
    }

    pub fn spectrum(&self) -> &PauliSpectrum {
        &self.spectrum
    }

    pub fn declared_locality(&self) -> Option<usize> {
        self.declared_locality
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Real coefficient `h_x`.
    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.spectrum.get(p).re
    }

    pub fn terms(&self) -> impl Iterator<Item = (PauliString, f64)> + '_ {
        self.spectrum.iter().map(|(p, a)| (*p, a.re))
    }

    pub fn dense(&self) -> Result<DMatrix<Complex64>> {
        dense_from_spectrum(&self.spectrum)
    }

    /// Cached Hermitian eigendecomposition.
    pub fn eigen(&self) -> Result<&Eigen> {
        if let Some(e) = self.eigen.get() {
            return Ok(e);
        }
        let m = self.dense()?;
        let decomposed = m.symmetric_eigen();
        if decomposed.eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::EigenFailure);
        }
        let e = Eigen { values: decomposed.eigenvalues, vectors: decomposed.eigenvectors };
        Ok(self.eigen.get_or_init(|| e))
    }

    /// Spectral norm `‖H‖∞`, from the cached eigenvalues.
    pub fn inf_norm(&self) -> Result<f64> {
        Ok(self.eigen()?.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
    }

    pub fn to_json(&self) -> HamiltonianJson {
        HamiltonianJson { spectrum: self.spectrum.to_json(), k: self.declared_locality }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HamiltonianJson {
    #[serde(flatten)]
    pub spectrum: SpectrumJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_complex_coefficients() {
        let s = PauliSpectrum::from_terms(1, [("X".parse().unwrap(), Complex64::new(0.0, 1e-3))])
            .unwrap();
        assert!(matches!(Hamiltonian::new(s), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn locality_is_checked() {
        let h = Hamiltonian::from_words(3, &[("XXI", 0.5), ("ZII", 0.1)]).unwrap();
        assert!(h.clone().with_locality(2).is_ok());
        assert!(matches!(h.with_locality(1), Err(Error::LocalityViolated { weight: 2, .. })));
    }

    #[test]
    fn normalization_rescales_to_unit_norm() {
        let h = Hamiltonian::from_words(2, &[("XI", 1.0), ("IZ", 1.0)]).unwrap();
        assert!(matches!(h.clone().checked_normalized(), Err(Error::NotNormalized(_))));
        let h = h.normalize().unwrap();
        assert!(h.is_normalized());
        assert!((h.inf_norm().unwrap() - 1.0).abs() < 1e-12);
        assert!((h.coefficient(&"XI".parse().unwrap()) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_stays_zero() {
        let h = Hamiltonian::zero(2).normalize().unwrap();
        assert!(h.is_normalized());
        assert!(h.spectrum().is_empty());
    }
}
