//! Self-checks of the inequalities the tester and learner rely on, each
//! measured against brute force on random small instances.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::evolution::{first_order_residual, remainder_check, unitary_spectrum, DEFAULT_TAYLOR_CONSTANT};
use crate::generate::{planted_instance, random_k_local, Label};
use crate::learner::{bh_sum, DEFAULT_BH_CONSTANT};
use crate::oracle::EvolutionOracle;
use crate::pauli::{coefficient_vector, inverse_pauli_transform_in_place, naive_spectrum, PauliString, DEFAULT_QUBIT_CAP};
use crate::stats::{total_variation, wilson_interval, Z_95};
use crate::tester::{compute_plan, exact_unitary_tail};

/// Matrix to index-ordered Pauli coefficients. Swappable so the suite can be
/// pointed at a deliberately broken transform.
pub type TransformFn = dyn Fn(&DMatrix<Complex64>) -> Result<Vec<Complex64>> + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl VerifyLevel {
    fn instances(&self) -> usize {
        match self {
            VerifyLevel::Quick => 20,
            VerifyLevel::Full => 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), measured, threshold, passed: measured <= threshold }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<24} measured={:<12.4e} threshold={:.4e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.threshold
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Dense Hermitian matrix with i.i.d. Gaussian-ish entries, built without
/// going through any Pauli code.
fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let d = 1usize << n;
    let a = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

fn row_major(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| m[(r, c)])).collect()
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Worst relative gap between `Σ|a_x|²` and `Tr[M†M]/2^n`, `n ∈ {2..5}`.
pub fn check_parseval(instances: usize, transform: &TransformFn, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for i in 0..instances {
        let n = 2 + i % 4;
        let m = random_hermitian(n, &mut rng);
        let lhs: f64 = transform(&m)?.iter().map(|a| a.norm_sqr()).sum();
        let rhs = m.iter().map(|a| a.norm_sqr()).sum::<f64>() / (1u64 << n) as f64;
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    Ok(CheckResult::at_most("parseval", worst, 1e-9))
}

/// Worst entrywise gap to the Kronecker-product trace formula, `n ≤ 4`.
pub fn check_transform_equivalence(instances: usize, transform: &TransformFn, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for i in 0..instances {
        let m = random_hermitian(1 + i % 4, &mut rng);
        worst = worst.max(max_abs_diff(&transform(&m)?, &naive_spectrum(&m, DEFAULT_QUBIT_CAP)?));
    }
    Ok(CheckResult::at_most("transform_equivalence", worst, 1e-10))
}

/// Worst entrywise gap after transform followed by the inverse transform.
pub fn check_round_trip(instances: usize, transform: &TransformFn, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for i in 0..instances {
        let n = 1 + i % 5;
        let m = random_hermitian(n, &mut rng);
        let mut v = transform(&m)?;
        if v.len() != 1 << (2 * n) {
            return Ok(CheckResult::at_most("round_trip", f64::INFINITY, 1e-10));
        }
        inverse_pauli_transform_in_place(&mut v, n);
        worst = worst.max(max_abs_diff(&v, &row_major(&m)));
    }
    Ok(CheckResult::at_most("round_trip", worst, 1e-10))
}

/// Planted instances at `n = 4, k = 1, ε₁ = 0, ε₂ = 0.3, c = 1`: counts
/// close instances whose `‖U(α)_{>k}‖₂` exceeds the low bound and far
/// instances below the high bound.
pub fn check_tail_bounds(per_label: usize, seed: u64) -> Result<CheckResult> {
    let plan = compute_plan(0.0, 0.3, 1.0 / 3.0, 1, DEFAULT_TAYLOR_CONSTANT)?;
    let mut violations = 0usize;
    for i in 0..per_label as u64 {
        let close = planted_instance(4, 1, 0.0, 0.3, Label::Close, seed + 2 * i)?;
        if exact_unitary_tail(&close.hamiltonian, &plan)? > plan.low_bound {
            violations += 1;
        }
        let far = planted_instance(4, 1, 0.0, 0.3, Label::Far, seed + 2 * i + 1)?;
        if exact_unitary_tail(&far.hamiltonian, &plan)? < plan.high_bound {
            violations += 1;
        }
    }
    Ok(CheckResult::at_most("unitary_tail_bounds", violations as f64, 0.0))
}

const TIME_GRID: [f64; 10] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5];

fn sweep_instance(i: usize, seed: u64) -> Result<crate::Hamiltonian> {
    let n = 2 + i % 3;
    let k = 1 + i % n;
    random_k_local(n, k, 1.0, seed + i as u64)
}

/// Violations of `‖U(t) - Id + itH‖∞ ≤ c·t²` over the time grid.
pub fn check_taylor_remainder(instances: usize, seed: u64) -> Result<CheckResult> {
    let mut violations = 0usize;
    for i in 0..instances {
        let h = sweep_instance(i, seed)?;
        for &t in &TIME_GRID {
            if !remainder_check(&h, t, DEFAULT_TAYLOR_CONSTANT)?.holds() {
                violations += 1;
            }
        }
    }
    Ok(CheckResult::at_most("taylor_remainder", violations as f64, 0.0))
}

/// Violations of the coefficient-wise first-order residual bound `≤ α⁴`.
pub fn check_first_order_residual(instances: usize, seed: u64) -> Result<CheckResult> {
    let mut violations = 0usize;
    for i in 0..instances {
        let h = sweep_instance(i, seed)?;
        for &t in &TIME_GRID {
            if first_order_residual(&h, t)? > t.powi(4) {
                violations += 1;
            }
        }
    }
    Ok(CheckResult::at_most("first_order_residual", violations as f64, 0.0))
}

/// Violations of `Σ|h_x|^{2k/(k+1)} ≤ 3^k` on normalized `k`-local `H`,
/// `n = 4`, `k ∈ {1, 2, 3}`.
pub fn check_bh_sums(per_k: usize, seed: u64) -> Result<CheckResult> {
    let mut violations = 0usize;
    for k in 1..=3 {
        for i in 0..per_k as u64 {
            let h = random_k_local(4, k, 1.0, seed + 10_000 * k as u64 + i)?;
            if bh_sum(&h, k)? > DEFAULT_BH_CONSTANT.powi(k as i32) {
                violations += 1;
            }
        }
    }
    Ok(CheckResult::at_most("bh_sum", violations as f64, 0.0))
}

/// Total-variation distance of `samples` Bell draws at `n = 4` from the
/// exact distribution.
pub fn check_sampler_tv(samples: u64, seed: u64) -> Result<CheckResult> {
    let h = random_k_local(4, 2, 1.0, seed)?;
    let t = 0.25;
    let mut oracle = EvolutionOracle::new(h, seed).with_verification();
    let exact = oracle.exact_distribution(t)?;
    let mut counts = vec![0u64; exact.as_slice().len()];
    oracle.for_each_bell_sample(t, samples, |p: PauliString| counts[p.index()] += 1)?;
    Ok(CheckResult::at_most("sampler_tv", total_variation(&counts, exact.as_slice()), 0.02))
}

/// Upper Wilson bound on the rate of estimates off by more than `β = 0.05`
/// over `calls` estimator calls at `δ = 0.1`; must not exceed `δ`.
pub fn check_estimator_calibration(calls: usize, seed: u64) -> Result<CheckResult> {
    let (beta, delta, t) = (0.05, 0.1, 0.2);
    let h = random_k_local(3, 2, 1.0, seed)?;
    let u = unitary_spectrum(&h, t)?;
    let mut oracle = EvolutionOracle::new(h, seed);
    let n = oracle.num_qubits();
    let mut misses = 0u64;
    for i in 0..calls {
        let x = PauliString::from_index(n, i % (1 << (2 * n)));
        let est = oracle.estimate_coefficient(t, &x, beta, delta)?;
        if (est - u.get(&x)).norm() > beta {
            misses += 1;
        }
    }
    let upper = wilson_interval(misses, calls as u64, Z_95).upper;
    Ok(CheckResult::at_most("estimator_miss_rate", upper, delta))
}

pub fn verify_suite(level: VerifyLevel) -> Result<VerifyReport> {
    verify_suite_with(level, &|m: &DMatrix<Complex64>| coefficient_vector(m, DEFAULT_QUBIT_CAP))
}

/// The suite with a caller-supplied forward transform.
pub fn verify_suite_with(level: VerifyLevel, transform: &TransformFn) -> Result<VerifyReport> {
    let n = level.instances();
    let checks = vec![
        check_parseval(n, transform, 1)?,
        check_transform_equivalence(n, transform, 2)?,
        check_round_trip(n, transform, 3)?,
        check_tail_bounds(n, 4)?,
        check_taylor_remainder(n, 5)?,
        check_first_order_residual(n, 6)?,
        check_bh_sums(10 * n, 7)?,
        check_sampler_tv(100_000, 8)?,
        check_estimator_calibration(10 * n, 9)?,
    ];
    Ok(VerifyReport { checks })
}
