//! Locality testing and learning of Hamiltonians from simulated queries to
//! their time-evolution operator `U(t) = exp(-iHt)`.
//!
//! Everything is exact linear algebra at small qubit counts, so every
//! inequality the algorithms rely on can be checked against brute force.
//!
//! ```
//! use pauliprobe::generate::{planted_instance, Label};
//! use pauliprobe::oracle::EvolutionOracle;
//! use pauliprobe::tester::{compute_plan, test_locality, Decision};
//!
//! # fn main() -> pauliprobe::Result<()> {
//! let inst = planted_instance(4, 1, 0.0, 0.3, Label::Far, 7)?;
//! let plan = compute_plan(0.0, 0.3, 1.0 / 3.0, 1, 1.0)?.with_sample_override(100_000);
//! let mut oracle = EvolutionOracle::new(inst.hamiltonian, 7);
//! let verdict = test_locality(&mut oracle, &plan)?;
//! assert_eq!(verdict.decision, Decision::FarFromLocal);
//! # Ok(())
//! # }
//! ```

// `!(x > 0.0)` is used on purpose so NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolution;
pub mod experiment;
pub mod generate;
pub mod learner;
pub mod oracle;
pub mod pauli;
pub mod stats;
pub mod tester;
pub mod verify;

pub use error::{Error, Result};
pub use pauli::{Hamiltonian, PauliSpectrum, PauliString};
