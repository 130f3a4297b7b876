//! Conversions between dense `2^n × 2^n` matrices and Pauli spectra.
//!
//! The forward transform computes every `a_x = Tr[σ_x M] / 2^n` in
//! `O(4^n · n)`: the row-major vectorization of `M` is walked one qubit at a
//! time, and each group of four entries `(M_00, M_01, M_10, M_11)` on that
//! qubit is replaced by its `(I, Z, X, Y)` coefficients. Because the row bit
//! of qubit `i` sits `n` positions above its column bit, the output lands
//! directly at [`PauliString::index`] `= (x << n) | z`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::spectrum::PauliSpectrum;
use super::string::PauliString;
use crate::error::{Error, Result};

/// Default qubit cap for dense operations (`4^10` coefficients).
pub const DEFAULT_QUBIT_CAP: usize = 10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Qubit count of a square matrix with power-of-two dimension.
pub fn qubits_of(m: &DMatrix<Complex64>, cap: usize) -> Result<usize> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if !rows.is_power_of_two() {
        return Err(Error::DimensionNotPowerOfTwo(rows));
    }
    let n = rows.trailing_zeros() as usize;
    check_cap(n, cap)?;
    Ok(n)
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::QubitCapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// In-place forward transform of a row-major `4^n` vector.
pub fn pauli_transform_in_place(v: &mut [Complex64], n: usize) {
    assert_eq!(v.len(), 1usize << (2 * n));
    for q in 0..n {
        let cbit = 1usize << q;
        let rbit = cbit << n;
        for base in 0..v.len() {
            if base & (cbit | rbit) != 0 {
                continue;
            }
            let m00 = v[base];
            let m01 = v[base | cbit];
            let m10 = v[base | rbit];
            let m11 = v[base | cbit | rbit];
            v[base] = (m00 + m11) * 0.5;
            v[base | cbit] = (m00 - m11) * 0.5;
            v[base | rbit] = (m01 + m10) * 0.5;
            v[base | cbit | rbit] = (m01 - m10) * I * 0.5;
        }
    }
}

/// Inverse of [`pauli_transform_in_place`].
pub fn inverse_pauli_transform_in_place(v: &mut [Complex64], n: usize) {
    assert_eq!(v.len(), 1usize << (2 * n));
    for q in 0..n {
        let cbit = 1usize << q;
        let rbit = cbit << n;
        for base in 0..v.len() {
            if base & (cbit | rbit) != 0 {
                continue;
            }
            let a_i = v[base];
            let a_z = v[base | cbit];
            let a_x = v[base | rbit];
            let a_y = v[base | cbit | rbit];
            v[base] = a_i + a_z;
            v[base | cbit] = a_x - I * a_y;
            v[base | rbit] = a_x + I * a_y;
            v[base | cbit | rbit] = a_i - a_z;
        }
    }
}

fn row_major(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let d = m.nrows();
    let mut v = Vec::with_capacity(d * d);
    for r in 0..d {
        for c in 0..d {
            v.push(m[(r, c)]);
        }
    }
    v
}

/// Dense `4^n` coefficient vector (index order) of a matrix.
pub fn coefficient_vector(m: &DMatrix<Complex64>, cap: usize) -> Result<Vec<Complex64>> {
    let n = qubits_of(m, cap)?;
    let mut v = row_major(m);
    pauli_transform_in_place(&mut v, n);
    Ok(v)
}

pub fn spectrum_from_dense(m: &DMatrix<Complex64>) -> Result<PauliSpectrum> {
    spectrum_from_dense_with_cap(m, DEFAULT_QUBIT_CAP)
}

pub fn spectrum_from_dense_with_cap(
    m: &DMatrix<Complex64>,
    cap: usize,
) -> Result<PauliSpectrum> {
    let n = qubits_of(m, cap)?;
    let v = coefficient_vector(m, cap)?;
    Ok(PauliSpectrum::from_dense_vec(n, &v))
}

pub fn dense_from_spectrum(s: &PauliSpectrum) -> Result<DMatrix<Complex64>> {
    dense_from_spectrum_with_cap(s, DEFAULT_QUBIT_CAP)
}

pub fn dense_from_spectrum_with_cap(s: &PauliSpectrum, cap: usize) -> Result<DMatrix<Complex64>> {
    let n = s.num_qubits();
    check_cap(n, cap)?;
    let mut v = s.to_dense_vec();
    inverse_pauli_transform_in_place(&mut v, n);
    let d = 1usize << n;
    Ok(DMatrix::from_row_slice(d, d, &v))
}

/// Dense `σ_x` built as an explicit Kronecker product.
pub fn pauli_matrix(p: &PauliString) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let single = |l: u8| match l {
        0 => DMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
        1 => DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
        2 => DMatrix::from_row_slice(2, 2, &[zero, -I, I, zero]),
        _ => DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
    };
    p.letters()
        .into_iter()
        .fold(DMatrix::from_element(1, 1, one), |acc, l| acc.kronecker(&single(l)))
}

/// Reference `Tr[σ_x M] / 2^n` evaluated string by string, `O(16^n)`.
pub fn naive_spectrum(m: &DMatrix<Complex64>, cap: usize) -> Result<Vec<Complex64>> {
    let n = qubits_of(m, cap)?;
    let d = (1usize << n) as f64;
    Ok(PauliString::all(n)
        .map(|p| (pauli_matrix(&p) * m).trace() / d)
        .collect())
}

/// Largest singular value of the operator with spectrum `s`.
///
/// Real spectra are Hermitian, so the largest absolute eigenvalue is used;
/// anything else goes through a full SVD.
pub fn inf_norm(s: &PauliSpectrum) -> Result<f64> {
    inf_norm_with_cap(s, DEFAULT_QUBIT_CAP)
}

pub fn inf_norm_with_cap(s: &PauliSpectrum, cap: usize) -> Result<f64> {
    let m = dense_from_spectrum_with_cap(s, cap)?;
    if s.is_real() {
        Ok(hermitian_inf_norm(m))
    } else {
        Ok(matrix_inf_norm(m))
    }
}

pub(crate) fn hermitian_inf_norm(m: DMatrix<Complex64>) -> f64 {
    m.symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Largest singular value of an arbitrary dense matrix.
pub fn matrix_inf_norm(m: DMatrix<Complex64>) -> f64 {
    m.singular_values().iter().fold(0.0f64, |acc, v| acc.max(*v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn diag_one_minus_one_is_z() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
        let s = spectrum_from_dense(&m).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.get(&"Z".parse().unwrap()), c(1.0));
    }

    #[test]
    fn linear_combination_of_x_and_z() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.8), c(0.6), c(0.6), c(-0.8)]);
        let s = spectrum_from_dense(&m).unwrap();
        assert!((s.get(&"X".parse().unwrap()) - c(0.6)).norm() < 1e-15);
        assert!((s.get(&"Z".parse().unwrap()) - c(0.8)).norm() < 1e-15);
        assert_eq!(s.get(&"I".parse().unwrap()), c(0.0));
        assert_eq!(s.get(&"Y".parse().unwrap()), c(0.0));
    }

    #[test]
    fn dense_examples() {
        let z = PauliSpectrum::from_real_words(1, &[("Z", 1.0)]).unwrap();
        let m = dense_from_spectrum(&z).unwrap();
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]));

        let empty = dense_from_spectrum(&PauliSpectrum::zero(2)).unwrap();
        assert_eq!(empty, DMatrix::zeros(4, 4));

        let half = PauliSpectrum::from_real_words(2, &[("II", 1.0)]).unwrap().scaled(0.5);
        let m = dense_from_spectrum(&half).unwrap();
        assert_eq!(m, DMatrix::identity(4, 4) * c(0.5));
    }

    #[test]
    fn pauli_matrix_y_is_standard() {
        let y = pauli_matrix(&"Y".parse().unwrap());
        assert_eq!(y[(0, 1)], -I);
        assert_eq!(y[(1, 0)], I);
        let s = spectrum_from_dense(&y).unwrap();
        assert_eq!(s.get(&"Y".parse().unwrap()), c(1.0));
    }

    #[test]
    fn dimension_errors() {
        let m = DMatrix::<Complex64>::zeros(3, 3);
        assert!(matches!(spectrum_from_dense(&m), Err(Error::DimensionNotPowerOfTwo(3))));
        let m = DMatrix::<Complex64>::zeros(2, 4);
        assert!(matches!(spectrum_from_dense(&m), Err(Error::NotSquare { .. })));
        let m = DMatrix::<Complex64>::zeros(8, 8);
        assert!(matches!(
            spectrum_from_dense_with_cap(&m, 2),
            Err(Error::QubitCapExceeded { n: 3, cap: 2 })
        ));
        assert!(dense_from_spectrum_with_cap(&PauliSpectrum::zero(3), 2).is_err());
    }

    #[test]
    fn inf_norm_examples() {
        let z = PauliSpectrum::from_real_words(1, &[("Z", 1.0)]).unwrap();
        assert!((inf_norm(&z).unwrap() - 1.0).abs() < 1e-12);
        let xz = PauliSpectrum::from_real_words(1, &[("X", 0.6), ("Z", 0.8)]).unwrap();
        assert!((inf_norm(&xz).unwrap() - 1.0).abs() < 1e-12);
        // non-Hermitian: X + iY = 2|0><1|
        let raising = PauliSpectrum::from_terms(
            1,
            [
                ("X".parse().unwrap(), c(1.0)),
                ("Y".parse().unwrap(), Complex64::new(0.0, 1.0)),
            ],
        )
        .unwrap();
        assert!((inf_norm(&raising).unwrap() - 2.0).abs() < 1e-12);
    }
}
