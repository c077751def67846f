//! A finite-valued logic engine for the Logics of Controlled Consistency
//! `L_n^k` and the five-valued LFI3.
//!
//! The crate decides finite-premise consequence over (restricted)
//! non-deterministic matrices built from swap and twist structures, checks
//! Hilbert-style proofs, and runs bounded executable checks of the
//! hierarchy's metatheorems.

pub mod error;
pub mod formula;
pub mod hilbert;
pub mod logics;
pub mod metalogic;
pub mod semantics;
pub mod structures;

pub use error::Error;
pub use formula::{parse, render, Formula};
pub use logics::{get_logic, LogicId, LogicSpec, Preference};
pub use semantics::{check_consequence, Nmatrix, RNmatrix, Semantics, Verdict};
