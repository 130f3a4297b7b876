//! Two-stage learning of a `k`-local Hamiltonian from queries to `U(α)`.
//!
//! Stage one Bell-samples `U(α)` and keeps the strings whose empirical
//! amplitude `u'_x = √(count_x / m₁)` exceeds `γ`. Stage two estimates `u_x`
//! for those strings and the identity to accuracy `β`, and the output is
//! `h''_0 = Re(i(u''_0 - 1))/α`, `h''_x = Re(i u''_x)/α`. Everything left
//! out is small by the non-commutative Bohnenblust–Hille inequality
//! `Σ|h_x|^{2k/(k+1)} ≤ C^k`.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{EvolutionOracle, QueryLedger};
use crate::pauli::{Hamiltonian, PauliString};

/// Default Bohnenblust–Hille constant `C`.
pub const DEFAULT_BH_CONSTANT: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanMode {
    Theory,
    Practical,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnerPlan {
    pub k: usize,
    pub eps: f64,
    pub delta: f64,
    pub bh_const: f64,
    pub c: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub beta: f64,
    /// Stage-one samples.
    pub m1: u64,
    pub mode: PlanMode,
}

fn check_common(k: usize, eps: f64, delta: f64, bh_const: f64, c: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps = {eps} not in (0, 1)")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} not in (0, 1)")));
    }
    if !(bh_const > 1.0) {
        return Err(Error::InvalidParameter(format!("C = {bh_const} must exceed 1")));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    Ok(())
}

/// `α = ε^{k+1} C^{-k(k+1)/2}`, `γ = α²`, `β = α³ε`,
/// `m₁ = ⌈2 ln(2/δ) / γ⁴⌉` (saturating).
pub fn theory_parameters(k: usize, eps: f64, delta: f64, bh_const: f64, c: f64) -> Result<LearnerPlan> {
    check_common(k, eps, delta, bh_const, c)?;
    let kf = k as f64;
    let alpha = eps.powf(kf + 1.0) * bh_const.powf(-kf * (kf + 1.0) / 2.0);
    if alpha > 0.5 {
        return Err(Error::InfeasiblePlan(format!(
            "alpha = {alpha} > 1/2 leaves the short-time regime"
        )));
    }
    let gamma = alpha * alpha;
    let beta = alpha * alpha * alpha * eps;
    let m1 = (2.0 * (2.0 / delta).ln() / gamma.powi(4)).ceil() as u64;
    Ok(LearnerPlan { k, eps, delta, bh_const, c, alpha, gamma, beta, m1, mode: PlanMode::Theory })
}

/// Plan with user-chosen `α, γ, β, m₁`. `eps` is kept for reporting.
#[allow(clippy::too_many_arguments)]
pub fn practical_parameters(
    k: usize,
    eps: f64,
    delta: f64,
    bh_const: f64,
    c: f64,
    alpha: f64,
    gamma: f64,
    beta: f64,
    m1: u64,
) -> Result<LearnerPlan> {
    check_common(k, eps, delta, bh_const, c)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must be positive")));
    }
    if alpha > 0.5 {
        return Err(Error::InfeasiblePlan(format!(
            "alpha = {alpha} > 1/2 leaves the short-time regime"
        )));
    }
    if !(gamma > 0.0) || !(beta > 0.0 && beta <= 1.0) || m1 == 0 {
        return Err(Error::InvalidParameter(format!(
            "need gamma > 0, beta in (0, 1], m1 >= 1; got {gamma}, {beta}, {m1}"
        )));
    }
    Ok(LearnerPlan { k, eps, delta, bh_const, c, alpha, gamma, beta, m1, mode: PlanMode::Practical })
}

impl LearnerPlan {
    /// Planned queries `m₁ + 2·m₂·(γ⁻² + 1)` with the stage-two union bound
    /// taken over the worst-case support size. Kept in `f64` since theory
    /// plans overflow integers quickly.
    pub fn planned_queries(&self) -> f64 {
        let support = (self.gamma.powi(-2)).floor() + 1.0;
        let per_coeff = self.delta / (2.0 * support);
        let shots = 4.0 * (4.0 / per_coeff).ln() / (self.beta * self.beta);
        self.m1 as f64 + 2.0 * shots.ceil() * support
    }

    pub fn planned_evolution_time(&self) -> f64 {
        self.planned_queries() * self.alpha
    }

    /// Upper bounds on the two parts of `‖H - H''‖₂²`.
    pub fn error_budget(&self) -> ErrorBudget {
        let (a, g, b, c) = (self.alpha, self.gamma, self.beta, self.c);
        let kf = self.k as f64;
        let term_i = 2.0 * c * c * a * a + 2.0 * b * b * (g.powi(-2) + 1.0) / (a * a);
        let term_ii = (2.0 * g / a + c * a).powf(2.0 / (kf + 1.0)) * self.bh_const.powf(kf);
        ErrorBudget { term_i, term_ii }
    }

    fn check_mode(&self) -> Result<()> {
        if self.mode == PlanMode::Theory
            && (self.gamma != self.alpha * self.alpha
                || self.beta != self.alpha * self.alpha * self.alpha * self.eps)
        {
            return Err(Error::InvalidParameter(
                "theory plan with gamma != alpha^2 or beta != alpha^3 eps".into(),
            ));
        }
        if self.alpha > 0.5 {
            return Err(Error::InfeasiblePlan(format!("alpha = {} > 1/2", self.alpha)));
        }
        Ok(())
    }
}

/// `term_i` bounds the error on estimated coordinates, `term_ii` the mass
/// of the coordinates that were never detected.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub term_i: f64,
    pub term_ii: f64,
}

impl ErrorBudget {
    pub fn total(&self) -> f64 {
        self.term_i + self.term_ii
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionResult {
    /// `u'_x` for every observed string, the identity included.
    pub amplitudes: BTreeMap<PauliString, f64>,
    /// `S_γ = {x : u'_x > γ} \ {0^n}`, in index order.
    pub support: Vec<PauliString>,
    pub samples: u64,
}

pub fn detect_big_coefficients(o: &mut EvolutionOracle, plan: &LearnerPlan) -> Result<DetectionResult> {
    plan.check_mode()?;
    let mut counts: HashMap<PauliString, u64> = HashMap::new();
    o.for_each_bell_sample(plan.alpha, plan.m1, |p| *counts.entry(p).or_insert(0) += 1)?;
    let amplitudes: BTreeMap<PauliString, f64> = counts
        .into_iter()
        .map(|(p, c)| (p, (c as f64 / plan.m1 as f64).sqrt()))
        .collect();
    let support = amplitudes
        .iter()
        .filter(|(p, u)| !p.is_identity() && **u > plan.gamma)
        .map(|(p, _)| *p)
        .collect();
    Ok(DetectionResult { amplitudes, support, samples: plan.m1 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientEstimates {
    /// `u''_x` for `x ∈ S_γ ∪ {0^n}`.
    pub estimates: BTreeMap<PauliString, Complex64>,
    pub beta: f64,
    /// Failure probability allotted to each coefficient.
    pub delta_per_coefficient: f64,
}

pub fn estimate_big_coefficients(
    o: &mut EvolutionOracle,
    plan: &LearnerPlan,
    det: &DetectionResult,
) -> Result<CoefficientEstimates> {
    plan.check_mode()?;
    let mut keys = Vec::with_capacity(det.support.len() + 1);
    keys.push(PauliString::identity(o.num_qubits()));
    keys.extend(det.support.iter().copied());
    let delta_per_coefficient = plan.delta / (2.0 * keys.len() as f64);
    let values = o.estimate_coefficients(plan.alpha, &keys, plan.beta, delta_per_coefficient)?;
    Ok(CoefficientEstimates {
        estimates: keys.into_iter().zip(values).collect(),
        beta: plan.beta,
        delta_per_coefficient,
    })
}

/// The learner's output `H''`.
#[derive(Clone, Debug)]
pub struct LearnedHamiltonian {
    pub hamiltonian: Hamiltonian,
    pub plan: LearnerPlan,
    pub detection: DetectionResult,
    pub estimates: CoefficientEstimates,
    pub error_budget: ErrorBudget,
    pub ledger: QueryLedger,
}

impl LearnedHamiltonian {
    /// `S_γ ∪ {0^n}`.
    pub fn support_size(&self) -> usize {
        self.detection.support.len() + 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self.hamiltonian.spectrum()).expect("spectrum serializes");
        v["plan"] = serde_json::to_value(&self.plan).expect("plan serializes");
        v["error_budget"] = serde_json::to_value(self.error_budget).expect("budget serializes");
        v["ledger"] = serde_json::to_value(self.ledger).expect("ledger serializes");
        v
    }
}

pub fn learn(o: &mut EvolutionOracle, plan: &LearnerPlan) -> Result<LearnedHamiltonian> {
    plan.check_mode()?;
    let n = o.num_qubits();
    if plan.k > n {
        return Err(Error::LocalityOutOfRange { k: plan.k, n });
    }
    let before = o.ledger();
    let detection = detect_big_coefficients(o, plan)?;
    let estimates = estimate_big_coefficients(o, plan, &detection)?;
    let i = Complex64::new(0.0, 1.0);
    let terms = estimates.estimates.iter().map(|(p, u)| {
        let shifted = if p.is_identity() { u - 1.0 } else { *u };
        (*p, (i * shifted).re / plan.alpha)
    });
    let hamiltonian = Hamiltonian::from_real_terms(n, terms)?;
    Ok(LearnedHamiltonian {
        hamiltonian,
        plan: plan.clone(),
        error_budget: plan.error_budget(),
        detection,
        estimates,
        ledger: o.ledger().since(&before),
    })
}

/// Split of `‖H - H''‖₂²` against the true `H` into the estimated
/// coordinates `S_γ ∪ {0^n}` and the truncated rest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuredError {
    pub estimated: f64,
    pub truncated: f64,
}

impl MeasuredError {
    /// `‖H - H''‖₂`.
    pub fn two_norm(&self) -> f64 {
        (self.estimated + self.truncated).sqrt()
    }
}

pub fn measured_error(truth: &Hamiltonian, learned: &LearnedHamiltonian) -> MeasuredError {
    let learned_h = &learned.hamiltonian;
    let estimated = learned
        .estimates
        .estimates
        .keys()
        .map(|p| (learned_h.coefficient(p) - truth.coefficient(p)).powi(2))
        .sum();
    let truncated = truth
        .terms()
        .filter(|(p, _)| !learned.estimates.estimates.contains_key(p))
        .map(|(_, h)| h * h)
        .sum();
    MeasuredError { estimated, truncated }
}

/// `Σ_x |h_x|^{2k/(k+1)}`.
pub fn bh_sum(h: &Hamiltonian, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if let Some((p, _)) = h.terms().find(|(p, _)| p.weight() > k) {
        return Err(Error::LocalityViolated { word: p.to_string(), weight: p.weight(), k });
    }
    let exponent = 2.0 * k as f64 / (k as f64 + 1.0);
    Ok(h.terms().map(|(_, c)| c.abs().powf(exponent)).sum())
}
