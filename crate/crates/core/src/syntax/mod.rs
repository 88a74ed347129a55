//! Concrete syntax: model files (term definitions and/or flat transition
//! lists over a shared alphabet header) and modal formulas.

mod lexer;
mod parser;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::alphabet::{Alphabet, Variance};
use crate::formula::Formula;
use crate::lts::{Lts, StateId};

/// Syntax or binding error with a 1-based source position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

/// Process terms. References point at earlier definitions only; there is no
/// recursion, so every term unfolds to a finite acyclic system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessTerm {
    Nil,
    Prefix(String, Box<ProcessTerm>),
    Choice(Box<ProcessTerm>, Box<ProcessTerm>),
    Ref(String),
}

/// A parsed file: one LTS plus the user-visible names (definition roots and
/// declared flat states).
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub lts: Lts,
    pub names: BTreeMap<String, StateId>,
}

impl Model {
    /// Resolves a user-facing name: definition roots and declared states
    /// first, then raw internal state ids.
    pub fn state(&self, name: &str) -> Option<StateId> {
        self.names
            .get(name)
            .copied()
            .or_else(|| self.lts.state(name))
    }

    /// Canonical flat rendering. Reparsing the output reconstructs the same
    /// LTS (definitions are already compiled away, so everything is emitted
    /// as states and transitions).
    pub fn to_flat_text(&self) -> String {
        let alphabet = self.lts.alphabet();
        let mut out = String::from("alphabet {\n");
        for (label, variance) in [
            ("covariant", Variance::Covariant),
            ("contravariant", Variance::Contravariant),
            ("bivariant", Variance::Bivariant),
        ] {
            let names: Vec<&str> = alphabet
                .actions()
                .filter(|&a| alphabet.variance(a) == variance)
                .map(|a| alphabet.name(a))
                .collect();
            out.push_str(&format!("  {label}: {};\n", names.join(", ")));
        }
        out.push_str("}\n");
        if self.lts.n_states() > 0 {
            let names: Vec<&str> = self.lts.states().map(|s| self.lts.state_name(s)).collect();
            out.push_str(&format!("states: {};\n", names.join(", ")));
        }
        for (p, a, q) in self.lts.transitions() {
            out.push_str(&format!(
                "{} -{}-> {};\n",
                self.lts.state_name(p),
                alphabet.name(a),
                self.lts.state_name(q)
            ));
        }
        out
    }
}

/// Parses a model file: alphabet header followed by any mix of process-term
/// definitions, state declarations and explicit transitions.
pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    parser::parse_model_text(text)
}

/// Parses a formula whose actions are resolved against `alphabet`.
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    parser::parse_formula_text(text, alphabet)
}
