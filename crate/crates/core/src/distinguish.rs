//! Distinguishing-formula construction from refinement annotations.
//!
//! A pair removed in round k cites a clause whose witnesses were all removed
//! in rounds < k, so recursing on those pairs terminates; round-1 removals
//! bottom out in `tt`/`ff` leaves. The result is always satisfied by the
//! left state and refuted by the right one, inside the fragment matching the
//! relation's kind.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::Formula;
use crate::lts::{Lts, StateId};
use crate::relation::{AnnotatedRelation, PreorderKind, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistinguishError {
    /// Plain simulation is not wired to a fragment here.
    #[error("no distinguishing formulas for plain simulation")]
    PlainSimulation,
    /// The relation does not track the pair (it was computed from a partial
    /// seed), so there is no violation to recurse on.
    #[error("pair ({0}, {1}) is not tracked by the relation")]
    UntrackedPair(String, String),
}

/// Builds a formula separating `left` from `right`: true at `left`, false at
/// `right`, within L_CC or L_CS according to the relation's kind. Returns
/// `None` when the pair is alive, i.e. the preorder holds and no such
/// formula exists.
///
/// `relation` must come from a full-product refinement of this `lts` (as
/// produced by [`crate::engine::greatest_relation`]).
pub fn distinguish(
    lts: &Lts,
    relation: &AnnotatedRelation,
    left: StateId,
    right: StateId,
) -> Result<Option<Formula>, DistinguishError> {
    if relation.kind() == PreorderKind::Sim {
        return Err(DistinguishError::PlainSimulation);
    }
    if relation.contains(left, right) {
        return Ok(None);
    }
    let mut memo = BTreeMap::new();
    build(lts, relation, left, right, &mut memo).map(Some)
}

fn build(
    lts: &Lts,
    relation: &AnnotatedRelation,
    left: StateId,
    right: StateId,
    memo: &mut BTreeMap<(StateId, StateId), Formula>,
) -> Result<Formula, DistinguishError> {
    if let Some(known) = memo.get(&(left, right)) {
        return Ok(known.clone());
    }
    let removal = relation.removal(left, right).ok_or_else(|| {
        DistinguishError::UntrackedPair(
            lts.state_name(left).to_owned(),
            lts.state_name(right).to_owned(),
        )
    })?;

    let formula = match removal.violation {
        // left —a→ target is unmatchable: after a, pin down a property of
        // `target` that every right a-derivative lacks.
        Violation::Covariant { action, left_target } => {
            let mut parts = Vec::new();
            for &q in lts.successors(right, action) {
                parts.push(build(lts, relation, left_target, q, memo)?);
            }
            Formula::diamond(action, Formula::and(parts))
        }
        // right —a→ target is unmatchable: every left a-derivative has some
        // property `target` lacks.
        Violation::Contravariant { action, right_target } => {
            let mut parts = Vec::new();
            for &p in lts.successors(left, action) {
                parts.push(build(lts, relation, p, right_target, memo)?);
            }
            Formula::boxed(action, Formula::or(parts))
        }
        Violation::Initials { action } => Formula::conf(action, Formula::Tt),
        Violation::Matching { action, right_target } => {
            let mut parts = Vec::new();
            for &p in lts.successors(left, action) {
                parts.push(build(lts, relation, p, right_target, memo)?);
            }
            Formula::conf(action, Formula::or(parts))
        }
    };
    memo.insert((left, right), formula.clone());
    Ok(formula)
}
