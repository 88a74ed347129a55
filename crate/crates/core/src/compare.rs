//! State-to-state comparison across systems.
//!
//! Two states of one LTS are compared directly; states of different systems
//! are compared inside their disjoint union (both preorder definitions are
//! insensitive to unreachable extra states, so the union changes nothing).

use std::ptr;

use thiserror::Error;

use crate::distinguish::{distinguish, DistinguishError};
use crate::engine::greatest_relation;
use crate::formula::Formula;
use crate::lts::{disjoint_union, Lts, LtsError, StateId};
use crate::relation::{AnnotatedRelation, PreorderKind};

/// A state inside a specific system.
#[derive(Debug, Clone, Copy)]
pub struct StateRef<'a> {
    pub lts: &'a Lts,
    pub state: StateId,
}

impl<'a> StateRef<'a> {
    pub fn new(lts: &'a Lts, state: StateId) -> Self {
        StateRef { lts, state }
    }

    pub fn resolve(lts: &'a Lts, name: &str) -> Option<Self> {
        lts.state(name).map(|state| StateRef { lts, state })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompareError {
    #[error("alphabets disagree (action `{0}`)")]
    AlphabetMismatch(String),
    #[error("no distinguishing formulas for plain simulation")]
    PlainSimulation,
}

/// Outcome of a preorder check. `Holds` carries the full greatest relation
/// (by state name) as a checkable witness; `Fails` carries a distinguishing
/// formula except under plain simulation, which has no fragment wired up.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckResult {
    Holds { witness: Vec<(String, String)> },
    Fails { formula: Option<Formula> },
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        matches!(self, CheckResult::Holds { .. })
    }
}

/// The comparison arena: either the shared system or a disjoint union, with
/// the two queried states mapped into it.
struct Arena {
    lts: Lts,
    left: StateId,
    right: StateId,
}

fn arena(left: StateRef<'_>, right: StateRef<'_>) -> Result<Arena, CompareError> {
    if ptr::eq(left.lts, right.lts) {
        return Ok(Arena {
            lts: left.lts.clone(),
            left: left.state,
            right: right.state,
        });
    }
    let union = disjoint_union(left.lts, right.lts).map_err(|e| match e {
        LtsError::AlphabetMismatch(name) => CompareError::AlphabetMismatch(name),
        other => unreachable!("disjoint_union only fails on alphabets: {other}"),
    })?;
    Ok(Arena {
        left: union.left[left.state.0 as usize],
        right: union.right[right.state.0 as usize],
        lts: union.lts,
    })
}

fn separating_formula(
    lts: &Lts,
    relation: &AnnotatedRelation,
    left: StateId,
    right: StateId,
) -> Option<Formula> {
    if relation.kind() == PreorderKind::Sim {
        return None;
    }
    match distinguish(lts, relation, left, right) {
        Ok(formula) => formula,
        Err(DistinguishError::PlainSimulation | DistinguishError::UntrackedPair(_, _)) => {
            unreachable!("full-product relations track every pair")
        }
    }
}

/// Decides `left ≲ right` for the given preorder kind.
pub fn holds(
    kind: PreorderKind,
    left: StateRef<'_>,
    right: StateRef<'_>,
) -> Result<CheckResult, CompareError> {
    let arena = arena(left, right)?;
    let relation = greatest_relation(&arena.lts, kind);
    if relation.contains(arena.left, arena.right) {
        let witness = relation
            .pairs()
            .map(|(p, q)| {
                (
                    arena.lts.state_name(p).to_owned(),
                    arena.lts.state_name(q).to_owned(),
                )
            })
            .collect();
        Ok(CheckResult::Holds { witness })
    } else {
        Ok(CheckResult::Fails {
            formula: separating_formula(&arena.lts, &relation, arena.left, arena.right),
        })
    }
}

/// Decides whether `left` and `right` are `kind`-equivalent (the preorder in
/// both directions), over a single refinement run.
pub fn equiv(
    kind: PreorderKind,
    left: StateRef<'_>,
    right: StateRef<'_>,
) -> Result<bool, CompareError> {
    let arena = arena(left, right)?;
    let relation = greatest_relation(&arena.lts, kind);
    Ok(relation.contains(arena.left, arena.right)
        && relation.contains(arena.right, arena.left))
}

/// Directly asks for a separating formula; `None` means the preorder holds.
pub fn distinguishing_formula(
    kind: PreorderKind,
    left: StateRef<'_>,
    right: StateRef<'_>,
) -> Result<Option<Formula>, CompareError> {
    if kind == PreorderKind::Sim {
        return Err(CompareError::PlainSimulation);
    }
    let arena = arena(left, right)?;
    let relation = greatest_relation(&arena.lts, kind);
    Ok(separating_formula(&arena.lts, &relation, arena.left, arena.right))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::logic::eval;
    use crate::relation::check_is_simulation;
    use crate::syntax::parse_model;
    use crate::test_fixtures::machines;

    fn at<'a>(m: &'a crate::syntax::Model, name: &str) -> StateRef<'a> {
        StateRef::new(&m.lts, m.state(name).unwrap())
    }

    #[test]
    fn conf_facts_from_the_machines() {
        let m = machines();
        assert!(holds(PreorderKind::Conf, at(&m, "onecoke"), at(&m, "cokeorlemonade"))
            .unwrap()
            .holds());
        assert!(holds(PreorderKind::Conf, at(&m, "zero"), at(&m, "onecoke"))
            .unwrap()
            .holds());
        assert!(equiv(PreorderKind::Conf, at(&m, "slot_machine"), at(&m, "pluff_machine")).unwrap());
    }

    #[test]
    fn cc_failure_carries_a_sound_formula() {
        let m = machines();
        let result =
            holds(PreorderKind::Cc, at(&m, "onecoke"), at(&m, "cokeorlemonade")).unwrap();
        let CheckResult::Fails { formula: Some(formula) } = result else {
            panic!("expected a failing check with a formula, got {result:?}");
        };
        assert_eq!(formula.display(m.lts.alphabet()).to_string(), "<coin>[lemonade]ff");
        assert!(eval(&m.lts, m.state("onecoke").unwrap(), &formula));
        assert!(!eval(&m.lts, m.state("cokeorlemonade").unwrap(), &formula));
    }

    #[test]
    fn sim_failure_has_no_formula() {
        let m = machines();
        let result =
            holds(PreorderKind::Sim, at(&m, "cokeorlemonade"), at(&m, "onecoke")).unwrap();
        assert_eq!(result, CheckResult::Fails { formula: None });
        assert_eq!(
            distinguishing_formula(PreorderKind::Sim, at(&m, "onecoke"), at(&m, "zero")),
            Err(CompareError::PlainSimulation)
        );
    }

    #[test]
    fn the_witness_revalidates() {
        let m = machines();
        let result = holds(PreorderKind::Cc, at(&m, "cokeorlemonade"), at(&m, "onecoke")).unwrap();
        let CheckResult::Holds { witness } = result else {
            panic!("expected the check to hold");
        };
        let pairs: BTreeSet<_> = witness
            .iter()
            .map(|(p, q)| (m.lts.state(p).unwrap(), m.lts.state(q).unwrap()))
            .collect();
        assert!(pairs.contains(&(
            m.state("cokeorlemonade").unwrap(),
            m.state("onecoke").unwrap()
        )));
        assert_eq!(check_is_simulation(&m.lts, PreorderKind::Cc, &pairs), Ok(()));
    }

    #[test]
    fn cross_system_comparison_goes_through_the_union() {
        let m1 = machines();
        let m2 = parse_model(crate::test_fixtures::MACHINES).unwrap();
        let left = at(&m1, "onecoke");
        let right = at(&m2, "cokeorlemonade");
        let result = holds(PreorderKind::Conf, left, right).unwrap();
        let CheckResult::Holds { witness } = result else {
            panic!("conformance holds across copies");
        };
        // names come from the union, so both sides are visibly tagged
        assert!(witness.iter().any(|(p, q)| p == "l:onecoke" && q == "r:cokeorlemonade"));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let m = machines();
        let other = parse_model(
            "alphabet { covariant: coin; contravariant: tea; bivariant: ; }\np = coin.tea.0;\n",
        )
        .unwrap();
        let err = holds(PreorderKind::Cc, at(&m, "onecoke"), at(&other, "p")).unwrap_err();
        assert!(matches!(err, CompareError::AlphabetMismatch(_)));
    }

    #[test]
    fn distinguishing_formula_agrees_with_holds() {
        let m = machines();
        let f = distinguishing_formula(
            PreorderKind::Conf,
            at(&m, "onecoke"),
            at(&m, "choice_coke_lemonade"),
        )
        .unwrap()
        .expect("the pair fails");
        assert_eq!(f.display(m.lts.alphabet()).to_string(), "{coin}{coke}tt");
        assert_eq!(
            distinguishing_formula(PreorderKind::Conf, at(&m, "onecoke"), at(&m, "cokeorlemonade"))
                .unwrap(),
            None
        );
    }
}
