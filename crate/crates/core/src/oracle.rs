//! Simulated access to `U(t)`: Bell sampling of the Choi state and the
//! single-coefficient estimation primitive, both metered.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{unitary_spectrum, UnitarySpectrum};
use crate::pauli::{Hamiltonian, PauliString};

/// ChaCha stream reserved for oracle randomness, so an oracle and an
/// instance generator seeded with the same value draw independent bits.
const ORACLE_STREAM: u64 = 0x0ac1e;

/// Queries made to `U(t)` and their summed evolution time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QueryLedger {
    pub queries: u64,
    pub evolution_time: f64,
}

impl QueryLedger {
    fn record(&mut self, count: u64, t: f64) {
        self.queries += count;
        self.evolution_time += count as f64 * t.abs();
    }

    /// Usage accumulated after `earlier` was taken.
    pub fn since(&self, earlier: &QueryLedger) -> QueryLedger {
        QueryLedger {
            queries: self.queries - earlier.queries,
            evolution_time: self.evolution_time - earlier.evolution_time,
        }
    }
}

/// Shots per Bernoulli estimator so that `|u''_x - u_x| ≤ β` with
/// probability `≥ 1-δ`: `⌈4 ln(4/δ) / β²⌉`.
pub fn coefficient_shots(beta: f64, delta: f64) -> u64 {
    (4.0 * (4.0 / delta).ln() / (beta * beta)).ceil() as u64
}

fn check_estimator_params(beta: f64, delta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParameter(format!("beta = {beta} not in (0, 1]")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} not in (0, 1)")));
    }
    Ok(())
}

/// Exact `(|u_x|²)_x` over all Pauli strings.
#[derive(Clone, Debug)]
pub struct ProbabilityTable {
    n: usize,
    probs: Vec<f64>,
}

impl ProbabilityTable {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: &PauliString) -> f64 {
        self.probs[p.index()]
    }

    /// Probabilities in [`PauliString::index`] order.
    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

struct Evolved {
    spectrum: UnitarySpectrum,
    sampler: WeightedAliasIndex<f64>,
}

/// Black-box access to the evolution of a hidden Hamiltonian.
///
/// Algorithms see only [`EvolutionOracle::bell_sample`],
/// [`EvolutionOracle::estimate_coefficient`] and the ledger.
pub struct EvolutionOracle {
    hidden: Hamiltonian,
    cache: HashMap<u64, Arc<Evolved>>,
    ledger: QueryLedger,
    rng: ChaCha8Rng,
    verification: bool,
}

impl EvolutionOracle {
    pub fn new(hidden: Hamiltonian, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ORACLE_STREAM);
        Self { hidden, cache: HashMap::new(), ledger: QueryLedger::default(), rng, verification: false }
    }

    /// Enables [`EvolutionOracle::exact_distribution`].
    pub fn with_verification(mut self) -> Self {
        self.verification = true;
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.hidden.num_qubits()
    }

    pub fn ledger(&self) -> QueryLedger {
        self.ledger
    }

    fn evolved(&mut self, t: f64) -> Result<Arc<Evolved>> {
        if let Some(e) = self.cache.get(&t.to_bits()) {
            return Ok(Arc::clone(e));
        }
        let spectrum = unitary_spectrum(&self.hidden, t)?;
        let sampler = WeightedAliasIndex::new(spectrum.probabilities())
            .map_err(|e| Error::InvalidParameter(format!("Bell distribution: {e}")))?;
        let e = Arc::new(Evolved { spectrum, sampler });
        self.cache.insert(t.to_bits(), Arc::clone(&e));
        Ok(e)
    }

    /// Draws `m` Bell-basis outcomes of `U(t) ⊗ Id |EPR_n⟩` and hands each
    /// to `visit` without collecting them.
    pub fn for_each_bell_sample<F>(&mut self, t: f64, m: u64, mut visit: F) -> Result<()>
    where
        F: FnMut(PauliString),
    {
        if t.abs() > 0.5 {
            log::warn!("Bell sampling at |t| = {} outside the short-time regime", t.abs());
        }
        let evolved = self.evolved(t)?;
        let n = self.num_qubits();
        for _ in 0..m {
            visit(PauliString::from_index(n, evolved.sampler.sample(&mut self.rng)));
        }
        self.ledger.record(m, t);
        Ok(())
    }

    /// `m` independent draws from `(|u_x|²)_x` for `U(t)`.
    pub fn bell_sample(&mut self, t: f64, m: u64) -> Result<Vec<PauliString>> {
        let mut out = Vec::with_capacity(m as usize);
        self.for_each_bell_sample(t, m, |p| out.push(p))?;
        Ok(out)
    }

    /// Estimate of `u_x` within `β` with probability `≥ 1-δ`.
    ///
    /// Two Bernoulli estimators with means `(1 + Re u_x)/2` and
    /// `(1 + Im u_x)/2`, each run for [`coefficient_shots`] queries.
    pub fn estimate_coefficient(
        &mut self,
        t: f64,
        x: &PauliString,
        beta: f64,
        delta: f64,
    ) -> Result<Complex64> {
        check_estimator_params(beta, delta)?;
        let u = self.evolved(t)?.spectrum.get(x);
        let shots = coefficient_shots(beta, delta);
        let est = bernoulli_estimate(u, shots, &mut self.rng)?;
        self.ledger.record(2 * shots, t);
        Ok(est)
    }

    /// [`EvolutionOracle::estimate_coefficient`] for several strings at a
    /// shared `(β, δ)`. Each string gets its own RNG stream seeded from the
    /// oracle, so results do not depend on the thread count.
    pub fn estimate_coefficients(
        &mut self,
        t: f64,
        xs: &[PauliString],
        beta: f64,
        delta: f64,
    ) -> Result<Vec<Complex64>> {
        check_estimator_params(beta, delta)?;
        let evolved = self.evolved(t)?;
        let shots = coefficient_shots(beta, delta);
        let jobs: Vec<(Complex64, u64)> =
            xs.iter().map(|x| (evolved.spectrum.get(x), self.rng.random())).collect();
        let run = |(u, seed): &(Complex64, u64)| {
            bernoulli_estimate(*u, shots, &mut ChaCha8Rng::seed_from_u64(*seed))
        };
        #[cfg(feature = "parallel")]
        let out = {
            use rayon::prelude::*;
            jobs.par_iter().map(run).collect::<Result<Vec<_>>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let out = jobs.iter().map(run).collect::<Result<Vec<_>>>()?;
        self.ledger.record(2 * shots * xs.len() as u64, t);
        Ok(out)
    }

    /// Unmetered `(|u_x|²)_x`; only in verification mode.
    pub fn exact_distribution(&mut self, t: f64) -> Result<ProbabilityTable> {
        if !self.verification {
            return Err(Error::VerificationDisabled);
        }
        let evolved = self.evolved(t)?;
        Ok(ProbabilityTable { n: self.num_qubits(), probs: evolved.spectrum.probabilities() })
    }
}

fn bernoulli_estimate<R: Rng>(u: Complex64, shots: u64, rng: &mut R) -> Result<Complex64> {
    let mut part = |v: f64| -> Result<f64> {
        let p = ((1.0 + v) / 2.0).clamp(0.0, 1.0);
        let hits = Binomial::new(shots, p)
            .map_err(|e| Error::InvalidParameter(format!("binomial: {e}")))?
            .sample(rng);
        Ok(2.0 * hits as f64 / shots as f64 - 1.0)
    };
    let re = part(u.re)?;
    let im = part(u.im)?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_oracle(seed: u64) -> EvolutionOracle {
        EvolutionOracle::new(Hamiltonian::from_words(1, &[("Z", 1.0)]).unwrap(), seed)
    }

    #[test]
    fn zero_hamiltonian_samples_identity() {
        let mut o = EvolutionOracle::new(Hamiltonian::zero(3), 1);
        let s = o.bell_sample(0.3, 100).unwrap();
        assert!(s.iter().all(PauliString::is_identity));
    }

    #[test]
    fn z_frequency_matches_sin_squared() {
        let mut o = z_oracle(7);
        let m = 100_000u64;
        let z: PauliString = "Z".parse().unwrap();
        let hits = o.bell_sample(0.4, m).unwrap().iter().filter(|p| **p == z).count();
        let p = 0.4f64.sin().powi(2);
        assert!((p - 0.15165).abs() < 1e-5);
        let sigma = (p * (1.0 - p) / m as f64).sqrt();
        assert!((hits as f64 / m as f64 - p).abs() <= 3.0 * sigma);
    }

    #[test]
    fn ledger_counts_every_query() {
        let mut o = z_oracle(0);
        o.bell_sample(0.25, 7).unwrap();
        assert_eq!(o.ledger().queries, 7);
        assert!((o.ledger().evolution_time - 7.0 * 0.25).abs() < 1e-12);
        let before = o.ledger();
        o.estimate_coefficient(0.25, &"Z".parse().unwrap(), 0.1, 0.05).unwrap();
        let used = o.ledger().since(&before);
        let shots = (4.0 * (4.0f64 / 0.05).ln() / 0.01).ceil() as u64;
        assert_eq!(used.queries, 2 * shots);
        assert!((used.evolution_time - 2.0 * shots as f64 * 0.25).abs() < 1e-9);
    }

    #[test]
    fn identity_coefficient_of_zero_hamiltonian() {
        let mut o = EvolutionOracle::new(Hamiltonian::zero(2), 3);
        let est = o.estimate_coefficient(0.2, &PauliString::identity(2), 0.05, 0.1).unwrap();
        assert!((est - Complex64::new(1.0, 0.0)).norm() <= 0.05);
    }

    #[test]
    fn z_coefficient_estimate_hits_target_often() {
        let z: PauliString = "Z".parse().unwrap();
        let target = Complex64::new(0.0, -0.3f64.sin());
        assert!((target.im + 0.29552).abs() < 1e-5);
        let mut o = z_oracle(11);
        let hits = (0..200)
            .filter(|_| (o.estimate_coefficient(0.3, &z, 0.01, 0.05).unwrap() - target).norm() <= 0.01)
            .count();
        assert!(hits as f64 >= 0.95 * 200.0, "{hits}");
    }

    #[test]
    fn batch_estimates_match_metering() {
        let mut o = z_oracle(5);
        let xs: Vec<PauliString> = PauliString::all(1).collect();
        let est = o.estimate_coefficients(0.3, &xs, 0.05, 0.1).unwrap();
        assert_eq!(est.len(), 4);
        assert_eq!(o.ledger().queries, 8 * coefficient_shots(0.05, 0.1));
        assert!((est[0] - Complex64::new(0.3f64.cos(), 0.0)).norm() <= 0.05);
    }

    #[test]
    fn exact_distribution_requires_verification_mode() {
        let mut o = z_oracle(0);
        assert!(matches!(o.exact_distribution(0.1), Err(Error::VerificationDisabled)));
        let mut o = z_oracle(0).with_verification();
        let t = 0.35;
        let d = o.exact_distribution(t).unwrap();
        assert!((d.get(&"I".parse().unwrap()) - t.cos().powi(2)).abs() < 1e-12);
        assert!((d.get(&"Z".parse().unwrap()) - t.sin().powi(2)).abs() < 1e-12);
        assert!((d.total() - 1.0).abs() < 1e-12);
        assert_eq!(o.ledger().queries, 0);
    }

    #[test]
    fn rejects_bad_estimator_parameters() {
        let mut o = z_oracle(0);
        let z: PauliString = "Z".parse().unwrap();
        assert!(o.estimate_coefficient(0.1, &z, 0.0, 0.1).is_err());
        assert!(o.estimate_coefficient(0.1, &z, 0.1, 1.0).is_err());
    }

    #[test]
    fn same_seed_same_samples() {
        let a = z_oracle(9).bell_sample(0.4, 50).unwrap();
        let b = z_oracle(9).bell_sample(0.4, 50).unwrap();
        assert_eq!(a, b);
    }
}
