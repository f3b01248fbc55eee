//! Unitary spider diagrams: syntax, semantics, inference rules, proof
//! checking and search, plus the Greimas semiotic square built from them.
//!
//! Hot loops (model enumeration, search expansion, the square's independent
//! derivations) run on rayon when the `parallel` feature is on; see [`Exec`].

pub mod audit;
pub mod diagram;
pub mod exec;
pub mod greimas;
pub mod io;
pub mod proof;
pub mod rules;
pub mod search;
pub mod semantics;

pub use diagram::{
    canonical_form, validate_unitary, CompoundDiagram, DiagramError, Label, Position, Region,
    SpiderEntry, UnitaryDiagram, Violation, Zone,
};
pub use exec::Exec;
pub use proof::{check_proof, CheckReport, ProofTree};
pub use rules::{apply, Rule, RuleInstance, RuleName};
pub use search::{derive, SearchConfig, SearchOutcome};
pub use semantics::{count_models, entails, satisfies, EntailmentVerdict, Interpretation};
