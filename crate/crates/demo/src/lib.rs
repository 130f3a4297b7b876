//! Browser bindings. Each operation is a plain Rust function returning JSON,
//! wrapped by a thin `#[wasm_bindgen]` export.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use pauliprobe::evolution::unitary_spectrum;
use pauliprobe::generate::random_k_local;
use pauliprobe::learner::{learn, measured_error, practical_parameters, DEFAULT_BH_CONSTANT};
use pauliprobe::oracle::EvolutionOracle;
use pauliprobe::tester::compute_plan;

/// Largest instance the page will build; keeps every call well under a second.
pub const DEMO_MAX_QUBITS: usize = 5;

fn check_n(n: usize) -> Result<(), String> {
    if n == 0 || n > DEMO_MAX_QUBITS {
        return Err(format!("n must be between 1 and {DEMO_MAX_QUBITS}"));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Tester plan for the given gap, as JSON.
pub fn tester_plan_json(eps1: f64, eps2: f64, delta: f64, k: usize, c: f64) -> Result<String, String> {
    let plan = compute_plan(eps1, eps2, delta, k, c).map_err(|e| e.to_string())?;
    to_json(&plan)
}

#[derive(Serialize)]
struct WeightProfile {
    t: f64,
    k: usize,
    /// `mass[w] = Σ_{|x| = w} |u_x|²`.
    mass: Vec<f64>,
    tail_norm: f64,
    hamiltonian: Vec<(String, f64)>,
}

/// Weight-resolved Pauli mass of `U(t)` for a random `k`-local `H`, with
/// the tail measured against locality `k`.
pub fn weight_profile_json(n: usize, k: usize, density: f64, t: f64, seed: u64) -> Result<String, String> {
    check_n(n)?;
    let h = random_k_local(n, k, density, seed).map_err(|e| e.to_string())?;
    let u = unitary_spectrum(&h, t).map_err(|e| e.to_string())?;
    let mut mass = vec![0.0; n + 1];
    for (p, a) in u.to_spectrum().iter() {
        mass[p.weight()] += a.norm_sqr();
    }
    to_json(&WeightProfile {
        t,
        k,
        mass,
        tail_norm: u.tail_two_norm(k).map_err(|e| e.to_string())?,
        hamiltonian: h.terms().map(|(p, c)| (p.to_string(), c)).collect(),
    })
}

#[derive(Serialize)]
struct LearnComparison {
    /// `(word, true coefficient, learned coefficient)` over the union of supports.
    coefficients: Vec<(String, f64, f64)>,
    error: f64,
    queries: u64,
}

/// Learns a random `k`-local `H` in practical mode and lines up true and
/// learned coefficients.
#[allow(clippy::too_many_arguments)]
pub fn learn_json(
    n: usize,
    k: usize,
    density: f64,
    alpha: f64,
    gamma: f64,
    beta: f64,
    m1: u64,
    seed: u64,
) -> Result<String, String> {
    check_n(n)?;
    let truth = random_k_local(n, k, density, seed).map_err(|e| e.to_string())?;
    let plan = practical_parameters(k, 0.5, 0.1, DEFAULT_BH_CONSTANT, 1.0, alpha, gamma, beta, m1)
        .map_err(|e| e.to_string())?;
    let mut oracle = EvolutionOracle::new(truth.clone(), seed);
    let learned = learn(&mut oracle, &plan).map_err(|e| e.to_string())?;
    let mut words: Vec<_> = truth.terms().map(|(p, _)| p).chain(learned.hamiltonian.terms().map(|(p, _)| p)).collect();
    words.sort();
    words.dedup();
    to_json(&LearnComparison {
        coefficients: words
            .into_iter()
            .map(|p| (p.to_string(), truth.coefficient(&p), learned.hamiltonian.coefficient(&p)))
            .collect(),
        error: measured_error(&truth, &learned).two_norm(),
        queries: learned.ledger.queries,
    })
}

#[wasm_bindgen]
pub fn tester_plan(eps1: f64, eps2: f64, delta: f64, k: usize, c: f64) -> Result<String, JsValue> {
    tester_plan_json(eps1, eps2, delta, k, c).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn weight_profile(n: usize, k: usize, density: f64, t: f64, seed: u32) -> Result<String, JsValue> {
    weight_profile_json(n, k, density, t, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn learn_random(
    n: usize,
    k: usize,
    density: f64,
    alpha: f64,
    gamma: f64,
    beta: f64,
    m1: u32,
    seed: u32,
) -> Result<String, JsValue> {
    learn_json(n, k, density, alpha, gamma, beta, m1 as u64, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn plan_values() {
        let v: Value = serde_json::from_str(&tester_plan_json(0.0, 0.3, 1.0 / 3.0, 1, 1.0).unwrap()).unwrap();
        assert!((v["threshold"].as_f64().unwrap() - 2.5e-4).abs() < 1e-15);
        assert!(tester_plan_json(0.3, 0.1, 0.1, 1, 1.0).is_err());
    }

    #[test]
    fn profile_mass_sums_to_one() {
        let v: Value = serde_json::from_str(&weight_profile_json(3, 1, 1.0, 0.3, 4).unwrap()).unwrap();
        let mass: Vec<f64> = v["mass"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
        assert_eq!(mass.len(), 4);
        assert!((mass.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let tail: f64 = mass[2..].iter().sum();
        assert!((v["tail_norm"].as_f64().unwrap() - tail.sqrt()).abs() < 1e-10);
        assert!(weight_profile_json(6, 1, 1.0, 0.3, 4).is_err());
    }

    #[test]
    fn learn_lines_up_coefficients() {
        let v: Value = serde_json::from_str(&learn_json(2, 1, 1.0, 0.2, 0.02, 0.01, 20_000, 1).unwrap()).unwrap();
        assert!(v["error"].as_f64().unwrap() < 0.3);
        assert!(!v["coefficients"].as_array().unwrap().is_empty());
    }
}
