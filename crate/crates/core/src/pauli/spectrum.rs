use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::string::PauliString;
use crate::error::{Error, Result};

/// Pauli coefficients `a_x` of an operator `A = Σ_x a_x σ_x`.
///
/// Sparse: strings not present have coefficient zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSpectrum {
    n: usize,
    coeffs: BTreeMap<PauliString, Complex64>,
}

impl PauliSpectrum {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut s = Self::zero(n);
        for (p, a) in terms {
            s.add(p, a)?;
        }
        Ok(s)
    }

    /// Real-coefficient constructor from word strings, e.g. `[("XX", 0.5)]`.
    pub fn from_real_words(n: usize, terms: &[(&str, f64)]) -> Result<Self> {
        Self::from_terms(
            n,
            terms
                .iter()
                .map(|(w, a)| Ok((w.parse::<PauliString>()?, Complex64::new(*a, 0.0))))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Builds a spectrum from a dense `4^n` vector in [`PauliString::index`]
    /// order, dropping exact zeros.
    pub fn from_dense_vec(n: usize, v: &[Complex64]) -> Self {
        assert_eq!(v.len(), 1usize << (2 * n));
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(i, a)| (PauliString::from_index(n, i), *a))
            .collect();
        Self { n, coeffs }
    }

    pub fn to_dense_vec(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); 1usize << (2 * self.n)];
        for (p, a) in &self.coeffs {
            v[p.index()] = *a;
        }
        v
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Adds `a` to the coefficient of `p`.
    pub fn add(&mut self, p: PauliString, a: Complex64) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::QubitMismatch { expected: self.n, found: p.num_qubits() });
        }
        *self.coeffs.entry(p).or_insert(Complex64::new(0.0, 0.0)) += a;
        Ok(())
    }

    pub fn get(&self, p: &PauliString) -> Complex64 {
        self.coeffs.get(p).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient has an exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(|a| a.im == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(p, a)| (*p, a * factor)).collect(),
        }
    }

    /// `√(Σ_x |a_x|²)`, equal to the normalized Frobenius norm.
    pub fn two_norm(&self) -> f64 {
        self.coeffs.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A_{>k}‖₂ = √(Σ_{|x|>k} |a_x|²)`.
    pub fn tail_two_norm(&self, k: usize) -> Result<f64> {
        if k > self.n {
            return Err(Error::LocalityOutOfRange { k, n: self.n });
        }
        Ok(self
            .coeffs
            .iter()
            .filter(|(p, _)| p.weight() > k)
            .fold(0.0, |acc, (_, a)| acc + a.norm_sqr())
            .sqrt())
    }

    /// Largest weight among the stored terms.
    pub fn max_weight(&self) -> usize {
        self.coeffs.keys().map(PauliString::weight).max().unwrap_or(0)
    }

    /// Serializable form, `{"n": .., "coeffs": [{"word", "re", "im"}, ..]}`.
    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, a)| CoeffJson { word: p.to_string(), re: a.re, im: a.im })
                .collect(),
        }
    }

    pub fn from_json(j: &SpectrumJson) -> Result<Self> {
        Self::from_terms(
            j.n,
            j.coeffs
                .iter()
                .map(|c| Ok((c.word.parse::<PauliString>()?, Complex64::new(c.re, c.im))))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub word: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub n: usize,
    pub coeffs: Vec<CoeffJson>,
}

impl Serialize for PauliSpectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliSpectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SpectrumJson::deserialize(d)?;
        PauliSpectrum::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_norm_examples() {
        let s = PauliSpectrum::from_real_words(2, &[("XX", 0.5), ("ZI", 0.5)]).unwrap();
        assert!((s.tail_two_norm(1).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(s.tail_two_norm(2).unwrap(), 0.0);
        assert!(s.tail_two_norm(3).is_err());
    }

    #[test]
    fn rejects_mismatched_qubits() {
        let mut s = PauliSpectrum::zero(2);
        assert!(s.add("XXX".parse().unwrap(), Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn json_schema_uses_letter_words() {
        let s = PauliSpectrum::from_terms(
            2,
            [("IX".parse().unwrap(), Complex64::new(0.25, -1.0))],
        )
        .unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"n": 2, "coeffs": [{"word": "IX", "re": 0.25, "im": -1.0}]})
        );
        let back: PauliSpectrum = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
