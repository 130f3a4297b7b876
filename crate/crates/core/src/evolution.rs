//! Exact time evolution `U(t) = exp(-iHt)` and its Pauli spectrum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{
    coefficient_vector, matrix_inf_norm, Hamiltonian, PauliSpectrum, PauliString, SpectrumJson,
    DEFAULT_QUBIT_CAP, NORM_SLACK,
};

/// Constant in `‖U(t) - Id + itH‖∞ ≤ c·t²` for `t ≤ 1/2`.
///
/// `c = 1` holds since `|e^{-iθ} - 1 + iθ| ≤ θ²/2` for real `θ`.
pub const DEFAULT_TAYLOR_CONSTANT: f64 = 1.0;

fn require_normalized(h: &Hamiltonian) -> Result<()> {
    if h.is_normalized() {
        return Ok(());
    }
    let norm = h.inf_norm()?;
    if norm > 1.0 + NORM_SLACK {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// `V exp(-itΛ) V†` from the Hamiltonian's cached eigendecomposition.
pub fn evolve_unitary(h: &Hamiltonian, t: f64) -> Result<DMatrix<Complex64>> {
    require_normalized(h)?;
    let eig = h.eigen()?;
    let phases = eig.values.map(|l| Complex64::from_polar(1.0, -t * l));
    let mut scaled = eig.vectors.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    Ok(scaled * eig.vectors.adjoint())
}

/// Pauli coefficients `u_x` of `U(t)`, stored densely in index order.
#[derive(Clone, Debug)]
pub struct UnitarySpectrum {
    n: usize,
    t: f64,
    coeffs: Vec<Complex64>,
}

impl UnitarySpectrum {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn get(&self, p: &PauliString) -> Complex64 {
        self.coeffs[p.index()]
    }

    /// All `4^n` coefficients in [`PauliString::index`] order.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// The Bell-sampling distribution `|u_x|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|u| u.norm_sqr()).collect()
    }

    /// `Σ_x |u_x|²`, one up to rounding.
    pub fn total_mass(&self) -> f64 {
        self.coeffs.iter().map(|u| u.norm_sqr()).sum()
    }

    /// `‖U(t)_{>k}‖₂`.
    pub fn tail_two_norm(&self, k: usize) -> Result<f64> {
        if k > self.n {
            return Err(Error::LocalityOutOfRange { k, n: self.n });
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| PauliString::from_index(self.n, *i).weight() > k)
            .fold(0.0, |acc, (_, u)| acc + u.norm_sqr())
            .sqrt())
    }

    pub fn to_spectrum(&self) -> PauliSpectrum {
        PauliSpectrum::from_dense_vec(self.n, &self.coeffs)
    }

    pub fn to_json(&self) -> UnitarySpectrumJson {
        UnitarySpectrumJson { spectrum: self.to_spectrum().to_json(), t: self.t }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitarySpectrumJson {
    #[serde(flatten)]
    pub spectrum: SpectrumJson,
    pub t: f64,
}

pub fn unitary_spectrum(h: &Hamiltonian, t: f64) -> Result<UnitarySpectrum> {
    let u = evolve_unitary(h, t)?;
    let coeffs = coefficient_vector(&u, DEFAULT_QUBIT_CAP)?;
    Ok(UnitarySpectrum { n: h.num_qubits(), t, coeffs })
}

/// Measured size of the second-order Taylor remainder against `c·t²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TaylorRemainder {
    pub t: f64,
    pub remainder_norm: f64,
    pub bound: f64,
}

impl TaylorRemainder {
    pub fn holds(&self) -> bool {
        self.remainder_norm <= self.bound
    }
}

/// `‖U(t) - Id + itH‖∞` for `0 < t ≤ 1/2`.
pub fn remainder_check(h: &Hamiltonian, t: f64, c: f64) -> Result<TaylorRemainder> {
    if !(t > 0.0 && t <= 0.5) {
        return Err(Error::TimeOutOfRange(t));
    }
    let u = evolve_unitary(h, t)?;
    let d = u.nrows();
    let r = u - DMatrix::<Complex64>::identity(d, d) + h.dense()? * Complex64::new(0.0, t);
    Ok(TaylorRemainder { t, remainder_norm: matrix_inf_norm(r), bound: c * t * t })
}

/// `|(u_0 - 1) + iαh_0|² + Σ_{x≠0} |u_x + iαh_x|²`, coefficient by coefficient.
pub fn first_order_residual(h: &Hamiltonian, alpha: f64) -> Result<f64> {
    let u = unitary_spectrum(h, alpha)?;
    let i_alpha = Complex64::new(0.0, alpha);
    Ok(u.coefficients()
        .iter()
        .enumerate()
        .map(|(idx, ux)| {
            let p = PauliString::from_index(h.num_qubits(), idx);
            let shift = if p.is_identity() { 1.0 } else { 0.0 };
            (ux - shift + i_alpha * h.coefficient(&p)).norm_sqr()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_k_local;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn diagonal_hamiltonian_gives_phases() {
        let h = Hamiltonian::from_words(1, &[("Z", 1.0)]).unwrap();
        for &t in &[0.1, 0.37, 1.5] {
            let u = evolve_unitary(&h, t).unwrap();
            assert!(close(u[(0, 0)], Complex64::from_polar(1.0, -t), 1e-12));
            assert!(close(u[(1, 1)], Complex64::from_polar(1.0, t), 1e-12));
            assert!(u[(0, 1)].norm() < 1e-12 && u[(1, 0)].norm() < 1e-12);
        }
    }

    #[test]
    fn zero_hamiltonian_evolves_to_identity() {
        let h = Hamiltonian::zero(2);
        let u = evolve_unitary(&h, 0.3).unwrap();
        assert!((u - DMatrix::<Complex64>::identity(4, 4)).norm() < 1e-12);
        let s = unitary_spectrum(&h, 0.3).unwrap();
        assert!(close(s.get(&PauliString::identity(2)), Complex64::new(1.0, 0.0), 1e-12));
        assert!((s.tail_two_norm(0).unwrap()) < 1e-12);
    }

    #[test]
    fn z_spectrum_is_cos_and_sin() {
        let h = Hamiltonian::from_words(1, &[("Z", 1.0)]).unwrap();
        let t = 0.4;
        let s = unitary_spectrum(&h, t).unwrap();
        assert!(close(s.get(&"I".parse().unwrap()), Complex64::new(t.cos(), 0.0), 1e-12));
        assert!(close(s.get(&"Z".parse().unwrap()), Complex64::new(0.0, -t.sin()), 1e-12));
        assert!(s.get(&"X".parse().unwrap()).norm() < 1e-12);
        assert!(s.get(&"Y".parse().unwrap()).norm() < 1e-12);
    }

    #[test]
    fn random_evolution_is_unitary() {
        let h = random_k_local(3, 2, 0.7, 9).unwrap();
        let u = evolve_unitary(&h, 0.3).unwrap();
        let err = matrix_inf_norm(u.adjoint() * &u - DMatrix::<Complex64>::identity(8, 8));
        assert!(err <= 1e-9, "{err}");
        let s = unitary_spectrum(&h, 0.2).unwrap();
        assert!((s.total_mass() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn rejects_unnormalized_input() {
        let h = Hamiltonian::from_words(1, &[("Z", 2.0)]).unwrap();
        assert!(matches!(evolve_unitary(&h, 0.1), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn remainder_for_z_matches_closed_form() {
        let h = Hamiltonian::from_words(1, &[("Z", 1.0)]).unwrap();
        let r = remainder_check(&h, 0.5, 1.0).unwrap();
        let t: f64 = 0.5;
        let expected = Complex64::new(t.cos() - 1.0, -(t.sin() - t)).norm();
        assert!((r.remainder_norm - expected).abs() < 1e-12);
        assert!((r.remainder_norm - 0.12413).abs() < 1e-5);
        assert_eq!(r.bound, 0.25);
        assert!(r.holds());
    }

    #[test]
    fn remainder_of_zero_is_zero() {
        let r = remainder_check(&Hamiltonian::zero(2), 0.2, 1.0).unwrap();
        assert!(r.remainder_norm < 1e-15);
    }

    #[test]
    fn remainder_time_range() {
        let h = Hamiltonian::zero(1);
        assert!(matches!(remainder_check(&h, 0.0, 1.0), Err(Error::TimeOutOfRange(_))));
        assert!(matches!(remainder_check(&h, 0.6, 1.0), Err(Error::TimeOutOfRange(_))));
    }

    #[test]
    fn random_remainder_at_small_time() {
        for seed in 0..10 {
            let h = random_k_local(3, 3, 0.5, seed).unwrap();
            let r = remainder_check(&h, 0.1, 1.0).unwrap();
            assert!(r.remainder_norm <= 0.01, "{r:?}");
        }
    }

    #[test]
    fn residual_equals_frobenius_of_remainder() {
        let h = random_k_local(3, 2, 0.6, 4).unwrap();
        let alpha = 0.3;
        let u = evolve_unitary(&h, alpha).unwrap();
        let r = u - DMatrix::<Complex64>::identity(8, 8) + h.dense().unwrap() * Complex64::new(0.0, alpha);
        let frob = r.norm_squared() / 8.0;
        let residual = first_order_residual(&h, alpha).unwrap();
        assert!((frob - residual).abs() < 1e-12);
        assert!(residual <= alpha.powi(4));
    }
}
