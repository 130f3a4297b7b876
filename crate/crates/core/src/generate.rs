//! Random normalized Hamiltonians and planted close/far instances.

use num_complex::Complex64;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Hamiltonian, PauliSpectrum, PauliString, SpectrumJson, DEFAULT_QUBIT_CAP};

/// Attempts made by [`planted_instance`] before giving up.
pub const DEFAULT_REJECTION_BUDGET: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Close,
    Far,
}

/// A normalized Hamiltonian whose distance from `k`-locality was measured
/// after normalization.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub hamiltonian: Hamiltonian,
    pub exact_tail: f64,
    pub label: Label,
    pub k: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlantedInstanceJson {
    #[serde(flatten)]
    pub spectrum: SpectrumJson,
    pub exact_tail: f64,
    pub label: Label,
    pub k: usize,
    pub seed: u64,
}

impl PlantedInstance {
    pub fn to_json(&self) -> PlantedInstanceJson {
        PlantedInstanceJson {
            spectrum: self.hamiltonian.spectrum().to_json(),
            exact_tail: self.exact_tail,
            label: self.label,
            k: self.k,
            seed: self.seed,
        }
    }
}

fn check_sizes(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > DEFAULT_QUBIT_CAP {
        return Err(Error::InvalidParameter(format!("n = {n} must be in 1..={DEFAULT_QUBIT_CAP}")));
    }
    if k == 0 || k > n {
        return Err(Error::LocalityOutOfRange { k, n });
    }
    Ok(())
}

/// Each string of weight `≤ k` is kept with probability `density` and given
/// a coefficient uniform in `[-1, 1]`; nothing is normalized here.
fn draw_local_terms(n: usize, k: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<(PauliString, f64)> {
    PauliString::all(n)
        .filter(|p| p.weight() <= k)
        .filter_map(|p| {
            if rng.random_bool(density) {
                Some((p, rng.random_range(-1.0..=1.0)))
            } else {
                None
            }
        })
        .collect()
}

/// A `k`-local Hamiltonian rescaled to `‖H‖∞ = 1`.
pub fn random_k_local(n: usize, k: usize, density: f64, seed: u64) -> Result<Hamiltonian> {
    check_sizes(n, k)?;
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidParameter(format!("density {density} not in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = draw_local_terms(n, k, density, &mut rng);
    Hamiltonian::from_real_terms(n, terms)?.normalize()?.with_locality(k)
}

fn unit_two_norm(terms: &mut [(PauliString, f64)]) -> bool {
    let norm = terms.iter().map(|(_, h)| h * h).sum::<f64>().sqrt();
    if norm == 0.0 {
        return false;
    }
    terms.iter_mut().for_each(|(_, h)| *h /= norm);
    true
}

/// Planted instance with the default rejection budget.
pub fn planted_instance(
    n: usize,
    k: usize,
    eps1: f64,
    eps2: f64,
    want: Label,
    seed: u64,
) -> Result<PlantedInstance> {
    planted_instance_with_budget(n, k, eps1, eps2, want, seed, DEFAULT_REJECTION_BUDGET)
}

/// Draws `H ∝ √(1-w²)·L + w·T` with `L` local and `T` supported on weight
/// `> k`, both of unit 2-norm, normalizes by `‖H‖∞` and keeps the draw only
/// if the measured tail lands on the requested side of `(ε₁, ε₂)`.
pub fn planted_instance_with_budget(
    n: usize,
    k: usize,
    eps1: f64,
    eps2: f64,
    want: Label,
    seed: u64,
    budget: usize,
) -> Result<PlantedInstance> {
    check_sizes(n, k)?;
    if !(0.0 <= eps1 && eps1 < eps2 && eps2 <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= eps1 < eps2 <= 1, got eps1 = {eps1}, eps2 = {eps2}"
        )));
    }
    let tail_strings: Vec<PauliString> = PauliString::all(n).filter(|p| p.weight() > k).collect();
    if want == Label::Far && tail_strings.is_empty() {
        return Err(Error::InvalidParameter(format!("no strings of weight > {k} on {n} qubits")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..budget {
        let mut local = draw_local_terms(n, k, 0.5, &mut rng);
        if !unit_two_norm(&mut local) {
            continue;
        }
        let w = match want {
            Label::Close if eps1 == 0.0 => 0.0,
            Label::Close => rng.random_range(0.0..=eps1),
            Label::Far => rng.random_range(eps2..=1.0),
        };
        let mut terms: Vec<(PauliString, Complex64)> = local
            .into_iter()
            .filter(|_| w < 1.0)
            .map(|(p, h)| (p, Complex64::new(h * (1.0 - w * w).sqrt(), 0.0)))
            .collect();
        if w > 0.0 {
            let count = rng.random_range(1..=tail_strings.len().min(3));
            let mut tail: Vec<(PauliString, f64)> = index::sample(&mut rng, tail_strings.len(), count)
                .into_iter()
                .map(|i| (tail_strings[i], rng.random_range(-1.0..=1.0)))
                .collect();
            if !unit_two_norm(&mut tail) {
                continue;
            }
            terms.extend(tail.into_iter().map(|(p, h)| (p, Complex64::new(w * h, 0.0))));
        }
        let h = Hamiltonian::new(PauliSpectrum::from_terms(n, terms)?)?.normalize()?;
        let exact_tail = h.spectrum().tail_two_norm(k)?;
        let accepted = match want {
            Label::Close => exact_tail <= eps1,
            Label::Far => exact_tail >= eps2,
        };
        if accepted {
            return Ok(PlantedInstance { hamiltonian: h, exact_tail, label: want, k, seed });
        }
    }
    Err(Error::RejectionBudgetExhausted { attempts: budget })
}
