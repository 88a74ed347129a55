//! Simulation preorders over finitary labelled transition systems.
//!
//! The crate decides plain simulation, covariant-contravariant simulation and
//! conformance simulation between states, evaluates the matching modal logics,
//! constructs distinguishing formulas for failed checks, and cross-validates
//! the behavioural preorders against brute-force logical preorders obtained by
//! enumerating formulas up to semantic saturation.

pub mod alphabet;
pub mod compare;
pub mod distinguish;
pub mod engine;
mod exec;
pub mod formula;
pub mod gen;
pub mod logic;
pub mod lts;
pub mod oracle;
pub mod relation;
pub mod syntax;

pub use alphabet::{ActionId, Alphabet, AlphabetError, Variance};
pub use compare::{distinguishing_formula, equiv, holds, CheckResult, CompareError, StateRef};
pub use distinguish::{distinguish, DistinguishError};
pub use engine::{greatest_relation, greatest_relation_seq, greatest_within};
pub use formula::{fragment_member, Formula, Fragment};
pub use gen::{random_formula, random_lts};
pub use logic::{eval, sat_vector, SatVector};
pub use lts::{disjoint_union, Lts, LtsError, StateId, Union};
pub use oracle::{
    agreement_report, default_max_level, logical_preorder, saturate, saturate_seq,
    AgreementReport, Evidence, LogicalPreorder, Mismatch, Pairing, Saturation, SemanticLevel,
};
pub use relation::{
    check_is_simulation, AnnotatedRelation, PreorderKind, Removal, SimulationDefect, Violation,
};
pub use syntax::{parse_formula, parse_model, Model, ParseError, ProcessTerm};

#[cfg(test)]
pub(crate) mod test_fixtures {
    use crate::syntax::{parse_model, Model};

    pub const MACHINES: &str =
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/machines.proc"));

    /// The vending-machine corpus used throughout the unit tests.
    pub fn machines() -> Model {
        parse_model(MACHINES).expect("fixture file parses")
    }
}
