//! Tolerant testing of `k`-locality, and of any property given by a set of
//! Pauli strings, from Bell samples of `U(α)`.
//!
//! For `α = (ε₂-ε₁)/(3c)`, a Hamiltonian `ε₁`-close to the property has
//! `‖U(α)_{out}‖₂ ≤ (ε₂-ε₁)(2ε₁+ε₂)/(9c)` while an `ε₂`-far one has
//! `‖U(α)_{out}‖₂ ≥ (ε₂-ε₁)(ε₁+2ε₂)/(9c)`. The tester estimates the squared
//! left-hand side, the Bell-sampling mass outside the property, and cuts at
//! the midpoint of the squared bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::unitary_spectrum;
use crate::oracle::{EvolutionOracle, QueryLedger};
use crate::pauli::{Hamiltonian, PauliString};

/// Derived quantities of one test. All fields are fixed by
/// [`compute_plan`]; `sample_override` only changes how many samples are
/// actually drawn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterPlan {
    pub eps1: f64,
    pub eps2: f64,
    pub delta: f64,
    pub k: usize,
    pub c: f64,
    pub alpha: f64,
    pub low_bound: f64,
    pub high_bound: f64,
    pub threshold: f64,
    pub tau: f64,
    /// Hoeffding sample count `⌈ln(2/δ) / (2τ²)⌉`.
    pub m_samples: u64,
    /// The coarser accuracy `((ε₂-ε₁)²/(18c))²`, never larger than `tau`.
    pub coarse_error_target: f64,
    /// Desk-scale sample count. Voids the `1-δ` guarantee.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_override: Option<u64>,
}

impl TesterPlan {
    pub fn with_sample_override(mut self, m: u64) -> Self {
        self.sample_override = Some(m);
        self
    }

    /// Samples a test with this plan draws.
    pub fn samples(&self) -> u64 {
        self.sample_override.unwrap_or(self.m_samples)
    }

    /// Same plan at a different failure probability.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        let mut p = compute_plan(self.eps1, self.eps2, delta, self.k, self.c)?;
        p.sample_override = self.sample_override;
        Ok(p)
    }

    /// Queries and total evolution time of a theory-mode run.
    pub fn theory_cost(&self) -> QueryLedger {
        QueryLedger { queries: self.m_samples, evolution_time: self.m_samples as f64 * self.alpha }
    }
}

pub fn compute_plan(eps1: f64, eps2: f64, delta: f64, k: usize, c: f64) -> Result<TesterPlan> {
    if !(0.0 <= eps1 && eps1 < eps2 && eps2 <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= eps1 < eps2 <= 1, got eps1 = {eps1}, eps2 = {eps2}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} not in (0, 1)")));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    let gap = eps2 - eps1;
    let alpha = gap / (3.0 * c);
    if alpha > 0.5 {
        return Err(Error::InfeasiblePlan(format!(
            "alpha = {alpha} > 1/2 leaves the short-time regime"
        )));
    }
    let low_bound = gap * (2.0 * eps1 + eps2) / (9.0 * c);
    let high_bound = gap * (eps1 + 2.0 * eps2) / (9.0 * c);
    let (lo2, hi2) = (low_bound * low_bound, high_bound * high_bound);
    let threshold = (lo2 + hi2) / 2.0;
    let tau = (hi2 - lo2) / 2.0;
    let m_samples = ((2.0 / delta).ln() / (2.0 * tau * tau)).ceil() as u64;
    let coarse_error_target = (gap * gap / (18.0 * c)).powi(2);
    Ok(TesterPlan {
        eps1,
        eps2,
        delta,
        k,
        c,
        alpha,
        low_bound,
        high_bound,
        threshold,
        tau,
        m_samples,
        coarse_error_target,
        sample_override: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    CloseToLocal,
    FarFromLocal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestVerdict {
    pub decision: Decision,
    /// Fraction of samples outside the property.
    pub estimated_tail_mass: f64,
    pub plan: TesterPlan,
    /// Queries this test consumed.
    pub ledger: QueryLedger,
}

fn decide(plan: &TesterPlan, outside: u64, m: u64, ledger: QueryLedger) -> TestVerdict {
    let estimated_tail_mass = if m == 0 { 0.0 } else { outside as f64 / m as f64 };
    let decision = if estimated_tail_mass > plan.threshold {
        Decision::FarFromLocal
    } else {
        Decision::CloseToLocal
    };
    TestVerdict { decision, estimated_tail_mass, plan: plan.clone(), ledger }
}

/// Tests `k`-locality: the property is "weight ≤ k", so the identity never
/// counts toward the tail.
pub fn test_locality(o: &mut EvolutionOracle, plan: &TesterPlan) -> Result<TestVerdict> {
    let n = o.num_qubits();
    if plan.k > n {
        return Err(Error::LocalityOutOfRange { k: plan.k, n });
    }
    let k = plan.k;
    test_property(o, plan, |p| p.weight() <= k)
}

/// Tests whether `√(Σ_{x∉S} h_x²)` is at most `ε₁` or at least `ε₂`, with
/// `S` given by `member`.
pub fn test_property<F>(o: &mut EvolutionOracle, plan: &TesterPlan, member: F) -> Result<TestVerdict>
where
    F: Fn(&PauliString) -> bool,
{
    let m = plan.samples();
    let before = o.ledger();
    let mut outside = 0u64;
    o.for_each_bell_sample(plan.alpha, m, |p| {
        if !member(&p) {
            outside += 1;
        }
    })?;
    Ok(decide(plan, outside, m, o.ledger().since(&before)))
}

/// One entry of [`test_many`].
pub struct PropertyTest<'a> {
    pub plan: TesterPlan,
    pub member: &'a dyn Fn(&PauliString) -> bool,
}

/// Runs `M` tests, each at failure probability `δ_total / M`, so all verdicts
/// hold together with probability `≥ 1 - δ_total`.
///
/// Tests sharing an `α` read one sample stream: the `i`-th test classifies
/// the first `m_i` samples, and the stream is as long as the largest `m_i`.
pub fn test_many(
    o: &mut EvolutionOracle,
    tests: &[PropertyTest<'_>],
    delta_total: f64,
) -> Result<Vec<TestVerdict>> {
    if tests.is_empty() {
        return Err(Error::InvalidParameter("test_many needs at least one test".into()));
    }
    let per_test = delta_total / tests.len() as f64;
    let plans = tests.iter().map(|t| t.plan.with_delta(per_test)).collect::<Result<Vec<_>>>()?;

    let mut groups: Vec<(u64, Vec<usize>)> = Vec::new();
    for (i, p) in plans.iter().enumerate() {
        let key = p.alpha.to_bits();
        match groups.iter_mut().find(|(a, _)| *a == key) {
            Some((_, members)) => members.push(i),
            None => groups.push((key, vec![i])),
        }
    }

    let mut verdicts: Vec<Option<TestVerdict>> = vec![None; tests.len()];
    for (key, members) in groups {
        let alpha = f64::from_bits(key);
        let longest = members.iter().map(|&i| plans[i].samples()).max().unwrap_or(0);
        let mut outside = vec![0u64; members.len()];
        let mut j = 0u64;
        o.for_each_bell_sample(alpha, longest, |p| {
            for (slot, &i) in members.iter().enumerate() {
                if j < plans[i].samples() && !(tests[i].member)(&p) {
                    outside[slot] += 1;
                }
            }
            j += 1;
        })?;
        for (slot, &i) in members.iter().enumerate() {
            let m = plans[i].samples();
            let ledger = QueryLedger { queries: m, evolution_time: m as f64 * alpha.abs() };
            verdicts[i] = Some(decide(&plans[i], outside[slot], m, ledger));
        }
    }
    Ok(verdicts.into_iter().map(|v| v.expect("every test is in a group")).collect())
}

/// Exact `‖U(α)_{>k}‖₂` for the plan's `α`, with no sampling.
pub fn exact_unitary_tail(h: &Hamiltonian, plan: &TesterPlan) -> Result<f64> {
    unitary_spectrum(h, plan.alpha)?.tail_two_norm(plan.k)
}
