//! Relations between states, annotated with why each dropped pair dropped.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::ActionId;
use crate::lts::{Lts, StateId};

/// Which preorder a relation was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreorderKind {
    /// Plain simulation: every action is matched left-to-right.
    Sim,
    /// Covariant-contravariant simulation: matching direction per action
    /// follows the alphabet's variance assignment.
    Cc,
    /// Conformance simulation: the left initials must be offered on the
    /// right, and right moves on actions the left enables are matched
    /// right-to-left.
    Conf,
}

/// The first clause of the defining condition a pair failed, under a fixed
/// scan order: direction clauses in definition order, actions in name order,
/// candidate transitions in target order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `left` has an `action`-move to `left_target` that no right move
    /// matches.
    Covariant { action: ActionId, left_target: StateId },
    /// `right` has an `action`-move to `right_target` that no left move
    /// matches.
    Contravariant { action: ActionId, right_target: StateId },
    /// `left` enables `action` but `right` does not.
    Initials { action: ActionId },
    /// `right` has an `action`-move to `right_target`, `left` enables
    /// `action`, yet no left `action`-move is below `right_target`.
    Matching { action: ActionId, right_target: StateId },
}

/// When and why a pair left the relation during refinement. Rounds count
/// from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Removal {
    pub round: u32,
    pub violation: Violation,
}

/// Result of a greatest-fixed-point computation: the surviving pairs plus a
/// removal record for everything else.
#[derive(Debug, Clone)]
pub struct AnnotatedRelation {
    kind: PreorderKind,
    alive: BTreeSet<(StateId, StateId)>,
    removed: BTreeMap<(StateId, StateId), Removal>,
    rounds: u32,
}

impl AnnotatedRelation {
    pub(crate) fn new(
        kind: PreorderKind,
        alive: BTreeSet<(StateId, StateId)>,
        removed: BTreeMap<(StateId, StateId), Removal>,
        rounds: u32,
    ) -> Self {
        AnnotatedRelation { kind, alive, removed, rounds }
    }

    pub fn kind(&self) -> PreorderKind {
        self.kind
    }

    pub fn contains(&self, left: StateId, right: StateId) -> bool {
        self.alive.contains(&(left, right))
    }

    /// Surviving pairs in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.alive.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.alive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    pub fn removal(&self, left: StateId, right: StateId) -> Option<&Removal> {
        self.removed.get(&(left, right))
    }

    /// Number of refinement rounds performed, including the final round that
    /// removed nothing.
    pub fn rounds(&self) -> u32 {
        self.rounds
    }
}

/// Finds the first violated clause of `kind`'s defining condition for
/// `(left, right)`, reading "below" from `contains`. `None` means every
/// clause passes.
pub(crate) fn find_violation(
    lts: &Lts,
    kind: PreorderKind,
    left: StateId,
    right: StateId,
    contains: &impl Fn(StateId, StateId) -> bool,
) -> Option<Violation> {
    let alphabet = lts.alphabet();
    match kind {
        PreorderKind::Sim | PreorderKind::Cc => {
            for action in alphabet.actions() {
                if kind == PreorderKind::Cc && !alphabet.requires_covariant(action) {
                    continue;
                }
                let candidates = lts.successors(right, action);
                for &target in lts.successors(left, action) {
                    if !candidates.iter().any(|&q| contains(target, q)) {
                        return Some(Violation::Covariant { action, left_target: target });
                    }
                }
            }
            if kind == PreorderKind::Cc {
                for action in alphabet.actions() {
                    if !alphabet.requires_contravariant(action) {
                        continue;
                    }
                    let candidates = lts.successors(left, action);
                    for &target in lts.successors(right, action) {
                        if !candidates.iter().any(|&p| contains(p, target)) {
                            return Some(Violation::Contravariant { action, right_target: target });
                        }
                    }
                }
            }
            None
        }
        PreorderKind::Conf => {
            for action in alphabet.actions() {
                if lts.enabled(left, action) && !lts.enabled(right, action) {
                    return Some(Violation::Initials { action });
                }
            }
            for action in alphabet.actions() {
                let candidates = lts.successors(left, action);
                if candidates.is_empty() {
                    continue;
                }
                for &target in lts.successors(right, action) {
                    if !candidates.iter().any(|&p| contains(p, target)) {
                        return Some(Violation::Matching { action, right_target: target });
                    }
                }
            }
            None
        }
    }
}

/// A pair of a candidate relation that breaks the defining condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationDefect {
    pub pair: (StateId, StateId),
    pub violation: Violation,
}

/// Checks whether `pairs` is a `kind`-simulation on `lts`, i.e. every pair
/// satisfies the defining condition with "below" read as membership in
/// `pairs` itself. Returns the first defect in canonical pair order.
pub fn check_is_simulation(
    lts: &Lts,
    kind: PreorderKind,
    pairs: &BTreeSet<(StateId, StateId)>,
) -> Result<(), SimulationDefect> {
    let contains = |p: StateId, q: StateId| pairs.contains(&(p, q));
    for &(left, right) in pairs {
        if let Some(violation) = find_violation(lts, kind, left, right, &contains) {
            return Err(SimulationDefect { pair: (left, right), violation });
        }
    }
    Ok(())
}
