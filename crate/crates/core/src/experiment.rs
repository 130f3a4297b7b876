//! Seeded multi-trial experiments over planted or random instances.
//!
//! Trial `i` uses seed `seed + i` for both its instance and its oracle
//! (on separate RNG streams), so a record is a pure function of the config.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{planted_instance, random_k_local, Label};
use crate::learner::{
    learn, measured_error, practical_parameters, theory_parameters, ErrorBudget, LearnerPlan, PlanMode,
    DEFAULT_BH_CONSTANT,
};
use crate::oracle::EvolutionOracle;
use crate::pauli::DEFAULT_QUBIT_CAP;
use crate::stats::{wilson_interval, Interval, Z_95};
use crate::tester::{compute_plan, test_locality, Decision, TesterPlan};

/// Environment variable capping the trial worker pool.
pub const THREADS_ENV: &str = "PAULIPROBE_THREADS";

/// CSV columns of a tester run, in order.
pub const TESTER_COLUMNS: &[&str] = &[
    "trial",
    "seed",
    "label",
    "exact_tail",
    "decision",
    "estimated_tail_mass",
    "success",
    "queries",
    "evolution_time",
];

/// CSV columns of a learner run, in order.
pub const LEARNER_COLUMNS: &[&str] = &[
    "trial",
    "seed",
    "error",
    "estimated_sq",
    "truncated_sq",
    "budget_term_i",
    "budget_term_ii",
    "within_budget",
    "support_size",
    "success",
    "queries",
    "evolution_time",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Tester,
    Learner,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Tester => "tester",
            ExperimentKind::Learner => "learner",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    pub k: usize,
    pub eps1: f64,
    pub eps2: f64,
    /// Learner target; a trial succeeds when `‖H - H''‖₂ ≤ eps`.
    pub eps: f64,
    pub delta: f64,
    /// Term density of the learner's random instances.
    pub density: f64,
    pub c: f64,
    pub bh_const: f64,
    pub mode: PlanMode,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub beta: Option<f64>,
    pub m1: Option<u64>,
    /// Tester sample-count override.
    pub m: Option<u64>,
    pub trials: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub gnuplot_stub: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            kind: ExperimentKind::Tester,
            n: 4,
            k: 1,
            eps1: 0.0,
            eps2: 0.3,
            eps: 0.2,
            delta: 1.0 / 3.0,
            density: 0.5,
            c: 1.0,
            bh_const: DEFAULT_BH_CONSTANT,
            mode: PlanMode::Practical,
            alpha: None,
            gamma: None,
            beta: None,
            m1: None,
            m: None,
            trials: 200,
            seed: 0,
            out: None,
            gnuplot_stub: false,
        }
    }
}

/// Plan resolved from a validated config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResolvedPlan {
    Tester(TesterPlan),
    Learner(LearnerPlan),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// Checks every range and builds the plan. Range problems are
    /// [`Error::InvalidParameter`]; a plan outside the short-time regime is
    /// [`Error::InfeasiblePlan`].
    pub fn resolve(&self) -> Result<ResolvedPlan> {
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.n == 0 || self.n > DEFAULT_QUBIT_CAP {
            return Err(invalid(format!("n = {} not in 1..={DEFAULT_QUBIT_CAP}", self.n)));
        }
        if self.k == 0 || self.k > self.n {
            return Err(invalid(format!("k = {} not in 1..={}", self.k, self.n)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(invalid(format!("delta = {} not in (0, 1)", self.delta)));
        }
        match self.kind {
            ExperimentKind::Tester => {
                if self.k == self.n {
                    return Err(invalid("tester needs k < n so far instances exist"));
                }
                if self.alpha.is_some() || self.gamma.is_some() || self.beta.is_some() || self.m1.is_some() {
                    return Err(invalid("--alpha/--gamma/--beta/--m1 apply to the learner only"));
                }
                let plan = compute_plan(self.eps1, self.eps2, self.delta, self.k, self.c)?;
                match (self.mode, self.m) {
                    (PlanMode::Theory, None) => Ok(ResolvedPlan::Tester(plan)),
                    (PlanMode::Theory, Some(_)) => Err(invalid("--m needs --mode practical")),
                    (PlanMode::Practical, Some(0)) => Err(invalid("--m must be at least 1")),
                    (PlanMode::Practical, Some(m)) => Ok(ResolvedPlan::Tester(plan.with_sample_override(m))),
                    (PlanMode::Practical, None) => Err(invalid("practical tester needs --m")),
                }
            }
            ExperimentKind::Learner => {
                if !(self.density > 0.0 && self.density <= 1.0) {
                    return Err(invalid(format!("density = {} not in (0, 1]", self.density)));
                }
                if self.m.is_some() {
                    return Err(invalid("--m applies to the tester only"));
                }
                let plan = match self.mode {
                    PlanMode::Theory => {
                        if self.alpha.is_some() || self.gamma.is_some() || self.beta.is_some() || self.m1.is_some() {
                            return Err(invalid("overrides need --mode practical"));
                        }
                        theory_parameters(self.k, self.eps, self.delta, self.bh_const, self.c)?
                    }
                    PlanMode::Practical => match (self.alpha, self.gamma, self.beta, self.m1) {
                        (Some(a), Some(g), Some(b), Some(m1)) => practical_parameters(
                            self.k, self.eps, self.delta, self.bh_const, self.c, a, g, b, m1,
                        )?,
                        _ => return Err(invalid("practical learner needs --alpha, --gamma, --beta and --m1")),
                    },
                };
                Ok(ResolvedPlan::Learner(plan))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterRow {
    pub trial: usize,
    pub seed: u64,
    pub label: Label,
    pub exact_tail: f64,
    pub decision: Decision,
    pub estimated_tail_mass: f64,
    pub success: bool,
    pub queries: u64,
    pub evolution_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnerRow {
    pub trial: usize,
    pub seed: u64,
    /// `‖H - H''‖₂`.
    pub error: f64,
    pub estimated_sq: f64,
    pub truncated_sq: f64,
    pub budget_term_i: f64,
    pub budget_term_ii: f64,
    pub within_budget: bool,
    pub support_size: usize,
    pub success: bool,
    pub queries: u64,
    pub evolution_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TrialRows {
    Tester(Vec<TesterRow>),
    Learner(Vec<LearnerRow>),
}

impl TrialRows {
    pub fn len(&self) -> usize {
        match self {
            TrialRows::Tester(r) => r.len(),
            TrialRows::Learner(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn successes_and_costs(&self) -> Vec<(bool, u64, f64)> {
        match self {
            TrialRows::Tester(r) => r.iter().map(|t| (t.success, t.queries, t.evolution_time)).collect(),
            TrialRows::Learner(r) => r.iter().map(|t| (t.success, t.queries, t.evolution_time)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub wilson95: Interval,
    pub mean_queries: f64,
    pub mean_evolution_time: f64,
}

impl Aggregate {
    pub fn from_rows(rows: &TrialRows) -> Self {
        let v = rows.successes_and_costs();
        let trials = v.len();
        let successes = v.iter().filter(|(s, _, _)| *s).count();
        let denom = trials.max(1) as f64;
        Aggregate {
            trials,
            successes,
            success_rate: successes as f64 / denom,
            wilson95: wilson_interval(successes as u64, trials as u64, Z_95),
            mean_queries: v.iter().map(|(_, q, _)| *q as f64).sum::<f64>() / denom,
            mean_evolution_time: v.iter().map(|(_, _, t)| *t).sum::<f64>() / denom,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: ExperimentConfig,
    pub plan: ResolvedPlan,
    pub trials: TrialRows,
    pub aggregate: Aggregate,
    pub wall_clock_secs: f64,
}

fn tester_trial(cfg: &ExperimentConfig, plan: &TesterPlan, trial: usize) -> Result<TesterRow> {
    let seed = cfg.seed.wrapping_add(trial as u64);
    let label = if trial.is_multiple_of(2) { Label::Close } else { Label::Far };
    let inst = planted_instance(cfg.n, cfg.k, cfg.eps1, cfg.eps2, label, seed)?;
    let mut oracle = EvolutionOracle::new(inst.hamiltonian, seed);
    let verdict = test_locality(&mut oracle, plan)?;
    let expected = match label {
        Label::Close => Decision::CloseToLocal,
        Label::Far => Decision::FarFromLocal,
    };
    Ok(TesterRow {
        trial,
        seed,
        label,
        exact_tail: inst.exact_tail,
        decision: verdict.decision,
        estimated_tail_mass: verdict.estimated_tail_mass,
        success: verdict.decision == expected,
        queries: verdict.ledger.queries,
        evolution_time: verdict.ledger.evolution_time,
    })
}

fn learner_trial(cfg: &ExperimentConfig, plan: &LearnerPlan, trial: usize) -> Result<LearnerRow> {
    let seed = cfg.seed.wrapping_add(trial as u64);
    let truth = random_k_local(cfg.n, cfg.k, cfg.density, seed)?;
    let mut oracle = EvolutionOracle::new(truth.clone(), seed);
    let learned = learn(&mut oracle, plan)?;
    let err = measured_error(&truth, &learned);
    let budget = learned.error_budget;
    Ok(LearnerRow {
        trial,
        seed,
        error: err.two_norm(),
        estimated_sq: err.estimated,
        truncated_sq: err.truncated,
        budget_term_i: budget.term_i,
        budget_term_ii: budget.term_ii,
        within_budget: err.estimated <= budget.term_i && err.truncated <= budget.term_ii,
        support_size: learned.support_size(),
        success: err.two_norm() <= cfg.eps,
        queries: learned.ledger.queries,
        evolution_time: learned.ledger.evolution_time,
    })
}

/// Worker count: `PAULIPROBE_THREADS` when set and positive, else all cores.
pub fn worker_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn run_trials<T, F>(trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(worker_threads())
            .build()
            .map_err(|e| invalid(format!("thread pool: {e}")))?;
        pool.install(|| (0..trials).into_par_iter().map(&f).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(f).collect()
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRecord> {
    let plan = cfg.resolve()?;
    let start = Instant::now();
    let trials = match &plan {
        ResolvedPlan::Tester(p) => TrialRows::Tester(run_trials(cfg.trials, |i| tester_trial(cfg, p, i))?),
        ResolvedPlan::Learner(p) => TrialRows::Learner(run_trials(cfg.trials, |i| learner_trial(cfg, p, i))?),
    };
    let aggregate = Aggregate::from_rows(&trials);
    Ok(ExperimentRecord {
        config: cfg.clone(),
        plan,
        trials,
        aggregate,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

impl ExperimentRecord {
    pub fn kind(&self) -> ExperimentKind {
        self.config.kind
    }

    /// One CSV row per trial, header first.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.trials {
            TrialRows::Tester(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
            TrialRows::Learner(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    /// Whitespace-separated `trial metric` columns for gnuplot.
    pub fn to_gnuplot(&self) -> String {
        let mut s = String::new();
        match &self.trials {
            TrialRows::Tester(rows) => {
                s.push_str("# trial exact_tail estimated_tail_mass success\n");
                for r in rows {
                    s.push_str(&format!("{} {} {} {}\n", r.trial, r.exact_tail, r.estimated_tail_mass, r.success as u8));
                }
            }
            TrialRows::Learner(rows) => {
                s.push_str("# trial error support_size success\n");
                for r in rows {
                    s.push_str(&format!("{} {} {} {}\n", r.trial, r.error, r.support_size, r.success as u8));
                }
            }
        }
        s
    }

    /// Writes `<kind>_record.json`, `<kind>_trials.csv` and, when asked,
    /// `<kind>_trials.dat`. Returns the written paths.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let name = self.kind().name();
        let json = dir.join(format!("{name}_record.json"));
        fs::write(&json, serde_json::to_string_pretty(self)?)?;
        let csv = dir.join(format!("{name}_trials.csv"));
        fs::write(&csv, self.to_csv()?)?;
        let mut out = vec![json, csv];
        if self.config.gnuplot_stub {
            let dat = dir.join(format!("{name}_trials.dat"));
            fs::write(&dat, self.to_gnuplot())?;
            out.push(dat);
        }
        Ok(out)
    }

    pub fn summary_table(&self) -> String {
        let a = &self.aggregate;
        let mut s = String::new();
        s.push_str(&format!("{:<22}{}\n", "experiment", self.kind().name()));
        s.push_str(&format!("{:<22}{}\n", "trials", a.trials));
        s.push_str(&format!("{:<22}{}\n", "successes", a.successes));
        s.push_str(&format!("{:<22}{:.4}\n", "success rate", a.success_rate));
        s.push_str(&format!(
            "{:<22}[{:.4}, {:.4}]\n",
            "wilson 95%", a.wilson95.lower, a.wilson95.upper
        ));
        s.push_str(&format!("{:<22}{:.1}\n", "mean queries", a.mean_queries));
        s.push_str(&format!("{:<22}{:.4}\n", "mean evolution time", a.mean_evolution_time));
        s.push_str(&format!("{:<22}{:.2}s\n", "wall clock", self.wall_clock_secs));
        s
    }
}

/// Theory-mode tester plan with its cost formulas.
#[derive(Clone, Debug, Serialize)]
pub struct TesterPlanReport {
    pub plan: TesterPlan,
    pub queries: u64,
    pub evolution_time: f64,
    pub query_formula: &'static str,
    pub evolution_time_formula: &'static str,
}

/// Theory-mode learner plan with its cost formulas and error budget.
#[derive(Clone, Debug, Serialize)]
pub struct LearnerPlanReport {
    pub plan: LearnerPlan,
    pub planned_queries: f64,
    pub planned_evolution_time: f64,
    pub error_budget: ErrorBudget,
    pub query_formula: &'static str,
    pub evolution_time_formula: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tester: Option<TesterPlanReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub learner: Option<LearnerPlanReport>,
}

pub fn tester_plan_report(cfg: &ExperimentConfig) -> Result<TesterPlanReport> {
    let plan = compute_plan(cfg.eps1, cfg.eps2, cfg.delta, cfg.k, cfg.c)?;
    let cost = plan.theory_cost();
    Ok(TesterPlanReport {
        queries: cost.queries,
        evolution_time: cost.evolution_time,
        query_formula: "m = ceil(ln(2/delta) / (2 tau^2))",
        evolution_time_formula: "m * alpha",
        plan,
    })
}

pub fn learner_plan_report(cfg: &ExperimentConfig) -> Result<LearnerPlanReport> {
    let plan = theory_parameters(cfg.k, cfg.eps, cfg.delta, cfg.bh_const, cfg.c)?;
    Ok(LearnerPlanReport {
        planned_queries: plan.planned_queries(),
        planned_evolution_time: plan.planned_evolution_time(),
        error_budget: plan.error_budget(),
        query_formula: "m1 + 2 m2 (gamma^-2 + 1), m1 = ceil(2 ln(2/delta) / gamma^4), \
                        m2 = ceil(4 ln(8 (gamma^-2 + 1) / delta) / beta^2)",
        evolution_time_formula: "queries * alpha",
        plan,
    })
}

/// Rounds to 12 significant digits for display, so `0.3 / 3` prints as `0.1`.
fn sig(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

impl fmt::Display for PlanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.tester {
            let p = &t.plan;
            writeln!(f, "tester (eps1 = {}, eps2 = {}, delta = {}, k = {}, c = {})", p.eps1, p.eps2, p.delta, p.k, p.c)?;
            writeln!(f, "  alpha              {}", sig(p.alpha))?;
            writeln!(f, "  low bound          {}", sig(p.low_bound))?;
            writeln!(f, "  high bound         {}", sig(p.high_bound))?;
            writeln!(f, "  threshold theta    {}", sig(p.threshold))?;
            writeln!(f, "  accuracy tau       {}", sig(p.tau))?;
            writeln!(f, "  coarse target      {}", sig(p.coarse_error_target))?;
            writeln!(f, "  queries            {}   [{}]", t.queries, t.query_formula)?;
            writeln!(f, "  evolution time     {}   [{}]", sig(t.evolution_time), t.evolution_time_formula)?;
        }
        if let Some(l) = &self.learner {
            let p = &l.plan;
            writeln!(f, "learner (k = {}, eps = {}, delta = {}, C = {}, c = {})", p.k, p.eps, p.delta, p.bh_const, p.c)?;
            writeln!(f, "  alpha              {}", sig(p.alpha))?;
            writeln!(f, "  gamma              {}", sig(p.gamma))?;
            writeln!(f, "  beta               {}", sig(p.beta))?;
            writeln!(f, "  m1                 {}", p.m1)?;
            writeln!(f, "  budget term i      {}", sig(l.error_budget.term_i))?;
            writeln!(f, "  budget term ii     {}", sig(l.error_budget.term_ii))?;
            writeln!(f, "  queries            {:e}   [{}]", l.planned_queries, l.query_formula)?;
            writeln!(f, "  evolution time     {:e}   [{}]", l.planned_evolution_time, l.evolution_time_formula)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_tester() -> ExperimentConfig {
        ExperimentConfig { n: 3, m: Some(20_000), trials: 6, seed: 11, ..Default::default() }
    }

    fn small_learner() -> ExperimentConfig {
        ExperimentConfig {
            kind: ExperimentKind::Learner,
            n: 2,
            k: 1,
            eps: 0.1,
            delta: 0.1,
            alpha: Some(0.2),
            gamma: Some(0.02),
            beta: Some(0.01),
            m1: Some(20_000),
            trials: 4,
            seed: 5,
            ..Default::default()
        }
    }

    #[test]
    fn zero_trials_is_a_config_error() {
        let cfg = ExperimentConfig { trials: 0, ..small_tester() };
        let e = run_experiment(&cfg).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn large_gap_is_infeasible() {
        let cfg = ExperimentConfig { eps2: 1.0, c: 0.5, ..small_tester() };
        let e = cfg.resolve().unwrap_err();
        assert!(matches!(e, Error::InfeasiblePlan(_)));
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn mode_and_override_mismatches() {
        assert!(ExperimentConfig { m: None, ..small_tester() }.resolve().is_err());
        assert!(ExperimentConfig { mode: PlanMode::Theory, ..small_tester() }.resolve().is_err());
        assert!(ExperimentConfig { alpha: Some(0.1), ..small_tester() }.resolve().is_err());
        assert!(ExperimentConfig { m1: None, ..small_learner() }.resolve().is_err());
        assert!(ExperimentConfig { m: Some(3), ..small_learner() }.resolve().is_err());
        assert!(ExperimentConfig { k: 3, ..small_tester() }.resolve().is_err());
    }

    #[test]
    fn tester_record_is_consistent_and_deterministic() {
        let cfg = small_tester();
        let a = run_experiment(&cfg).unwrap();
        assert_eq!(a.trials.len(), 6);
        assert_eq!(a.aggregate, Aggregate::from_rows(&a.trials));
        let TrialRows::Tester(rows) = &a.trials else { panic!("tester rows") };
        assert_eq!(rows[0].label, Label::Close);
        assert_eq!(rows[1].label, Label::Far);
        assert!(rows.iter().all(|r| r.queries == 20_000));
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        let header = a.to_csv().unwrap().lines().next().unwrap().to_string();
        assert_eq!(header, TESTER_COLUMNS.join(","));
    }

    #[test]
    fn learner_record_columns() {
        let rec = run_experiment(&small_learner()).unwrap();
        let csv = rec.to_csv().unwrap();
        assert_eq!(csv.lines().next().unwrap(), LEARNER_COLUMNS.join(","));
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(rec.aggregate.trials, 4);
    }

    #[test]
    fn writes_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig { gnuplot_stub: true, ..small_tester() };
        let rec = run_experiment(&cfg).unwrap();
        let paths = rec.write(dir.path()).unwrap();
        assert_eq!(paths.len(), 3);
        let back: ExperimentRecord =
            serde_json::from_str(&fs::read_to_string(&paths[0]).unwrap()).unwrap();
        assert_eq!(back.trials, rec.trials);
        assert!(rec.summary_table().contains("success rate"));
    }

    #[test]
    fn plan_report_worked_values() {
        let cfg = ExperimentConfig { k: 1, eps: 0.5, delta: 0.1, bh_const: 2.0, ..Default::default() };
        let report = PlanReport {
            tester: Some(tester_plan_report(&cfg).unwrap()),
            learner: Some(learner_plan_report(&cfg).unwrap()),
        };
        let l = &report.learner.as_ref().unwrap().plan;
        assert_eq!(l.alpha, 0.125);
        assert_eq!(l.gamma, 0.015625);
        assert!((l.beta - 9.765625e-4).abs() < 1e-18);
        let text = report.to_string();
        assert!(text.contains("alpha              0.1\n"), "{text}");
        assert!(text.contains("gamma              0.015625"));
    }

    #[test]
    fn config_json_round_trip_with_defaults() {
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"kind": "learner", "n": 3, "m1": 10}"#).unwrap();
        assert_eq!(cfg.kind, ExperimentKind::Learner);
        assert_eq!(cfg.n, 3);
        assert_eq!(cfg.m1, Some(10));
        assert_eq!(cfg.trials, 200);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
