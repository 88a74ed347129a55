//! Finitary labelled transition systems.
//!
//! States are interned strings; [`StateId`]s follow the lexicographic order of
//! the names, successor lists are sorted and duplicate-free, so structurally
//! equal inputs produce identical values no matter the input order.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::alphabet::{ActionId, Alphabet};

/// Index of a state in its [`Lts`], in lexicographic name order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtsError {
    #[error("duplicate state id `{0}`")]
    DuplicateState(String),
    #[error("state ids must be nonempty")]
    EmptyStateId,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("alphabets disagree (left has `{0}`, right does not match)")]
    AlphabetMismatch(String),
}

/// A labelled transition system over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    alphabet: Alphabet,
    states: Vec<String>,
    /// Indexed by `state * |alphabet| + action`; each list sorted, no dups.
    succ: Vec<Vec<StateId>>,
}

impl Lts {
    /// Builds an LTS from explicit state names and `(from, action, to)`
    /// triples. Triples referring to undeclared states or actions are
    /// rejected; duplicate triples collapse to one transition.
    pub fn new<S, T>(
        alphabet: Alphabet,
        states: impl IntoIterator<Item = S>,
        transitions: impl IntoIterator<Item = (T, T, T)>,
    ) -> Result<Self, LtsError>
    where
        S: Into<String>,
        T: AsRef<str>,
    {
        let mut names: Vec<String> = states.into_iter().map(Into::into).collect();
        names.sort();
        for window in names.windows(2) {
            if window[0] == window[1] {
                return Err(LtsError::DuplicateState(window[0].clone()));
            }
        }
        if names.iter().any(String::is_empty) {
            return Err(LtsError::EmptyStateId);
        }
        let index: BTreeMap<&str, StateId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), StateId(i as u32)))
            .collect();

        let width = alphabet.len();
        let mut succ: Vec<BTreeSet<StateId>> = vec![BTreeSet::new(); names.len() * width];
        for (from, action, to) in transitions {
            let from = *index
                .get(from.as_ref())
                .ok_or_else(|| LtsError::UnknownState(from.as_ref().to_owned()))?;
            let action = alphabet
                .action(action.as_ref())
                .ok_or_else(|| LtsError::UnknownAction(action.as_ref().to_owned()))?;
            let to = *index
                .get(to.as_ref())
                .ok_or_else(|| LtsError::UnknownState(to.as_ref().to_owned()))?;
            succ[from.0 as usize * width + action.0 as usize].insert(to);
        }

        Ok(Lts {
            alphabet,
            states: names,
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len() as u32).map(StateId)
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.states
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| StateId(i as u32))
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.states[state.0 as usize]
    }

    /// The `action`-successors of `state`, sorted by id.
    pub fn successors(&self, state: StateId, action: ActionId) -> &[StateId] {
        &self.succ[state.0 as usize * self.alphabet.len() + action.0 as usize]
    }

    pub fn enabled(&self, state: StateId, action: ActionId) -> bool {
        !self.successors(state, action).is_empty()
    }

    /// Actions with at least one outgoing transition from `state`.
    pub fn initials(&self, state: StateId) -> Vec<ActionId> {
        self.alphabet
            .actions()
            .filter(|&a| self.enabled(state, a))
            .collect()
    }

    /// All transitions as id triples, in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, ActionId, StateId)> + '_ {
        self.states().flat_map(move |p| {
            self.alphabet.actions().flat_map(move |a| {
                self.successors(p, a).iter().map(move |&q| (p, a, q))
            })
        })
    }

    /// Same transition structure under a different variance assignment. The
    /// new alphabet must carry exactly the same action names.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Lts, LtsError> {
        if !self.alphabet.names().eq(alphabet.names()) {
            let name = self
                .alphabet
                .names()
                .find(|n| alphabet.action(n).is_none())
                .or_else(|| alphabet.names().find(|n| self.alphabet.action(n).is_none()))
                .unwrap_or("");
            return Err(LtsError::AlphabetMismatch(name.to_owned()));
        }
        Ok(Lts {
            alphabet,
            states: self.states.clone(),
            succ: self.succ.clone(),
        })
    }
}

/// Disjoint union of two systems over one alphabet, for cross-system
/// comparisons.
#[derive(Debug, Clone)]
pub struct Union {
    pub lts: Lts,
    /// Old left state id -> id in the union.
    pub left: Vec<StateId>,
    /// Old right state id -> id in the union.
    pub right: Vec<StateId>,
}

/// Combines two systems into one LTS; states are renamed `l:x` / `r:x`, which
/// keeps the two sides apart without colliding with user names. Errors unless
/// the alphabets agree exactly (names and variances).
pub fn disjoint_union(left: &Lts, right: &Lts) -> Result<Union, LtsError> {
    if left.alphabet != right.alphabet {
        let name = left
            .alphabet
            .names()
            .find(|n| {
                right.alphabet.action(n).map(|a| right.alphabet.variance(a))
                    != left.alphabet.action(n).map(|a| left.alphabet.variance(a))
            })
            .or_else(|| right.alphabet.names().find(|n| left.alphabet.action(n).is_none()))
            .unwrap_or("");
        return Err(LtsError::AlphabetMismatch(name.to_owned()));
    }

    let rename = |side: &str, lts: &Lts| -> Vec<String> {
        lts.states
            .iter()
            .map(|n| format!("{side}:{n}"))
            .collect()
    };
    let mut names = rename("l", left);
    names.extend(rename("r", right));

    let mut triples: Vec<(String, String, String)> = Vec::new();
    for (side, lts) in [("l", left), ("r", right)] {
        for (p, a, q) in lts.transitions() {
            triples.push((
                format!("{side}:{}", lts.state_name(p)),
                lts.alphabet.name(a).to_owned(),
                format!("{side}:{}", lts.state_name(q)),
            ));
        }
    }

    let lts = Lts::new(left.alphabet.clone(), names, triples)
        .expect("renamed states are unique and every triple refers to them");
    let map = |side: &str, source: &Lts| -> Vec<StateId> {
        source
            .states
            .iter()
            .map(|n| lts.state(&format!("{side}:{n}")).expect("state present"))
            .collect()
    };
    Ok(Union {
        left: map("l", left),
        right: map("r", right),
        lts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Variance;

    fn ab() -> Alphabet {
        Alphabet::new([("a", Variance::Covariant), ("b", Variance::Contravariant)]).unwrap()
    }

    #[test]
    fn duplicate_triples_collapse() {
        let lts = Lts::new(
            ab(),
            ["s0", "s1"],
            [("s0", "a", "s1"), ("s0", "a", "s1")],
        )
        .unwrap();
        let s0 = lts.state("s0").unwrap();
        let s1 = lts.state("s1").unwrap();
        assert_eq!(lts.successors(s0, ActionId(0)), &[s1]);
        assert_eq!(lts.transitions().count(), 1);
    }

    #[test]
    fn unknown_names_are_rejected() {
        let err = Lts::new(ab(), ["s0"], [("s0", "a", "s9")]).unwrap_err();
        assert_eq!(err, LtsError::UnknownState("s9".into()));
        let err = Lts::new(ab(), ["s0"], [("s0", "c", "s0")]).unwrap_err();
        assert_eq!(err, LtsError::UnknownAction("c".into()));
    }

    #[test]
    fn self_loops_are_fine() {
        let lts = Lts::new(ab(), ["s"], [("s", "a", "s")]).unwrap();
        let s = lts.state("s").unwrap();
        assert_eq!(lts.successors(s, ActionId(0)), &[s]);
        assert_eq!(lts.initials(s), vec![ActionId(0)]);
    }

    #[test]
    fn construction_is_canonical_in_input_order() {
        let fwd = Lts::new(
            ab(),
            ["x", "y", "z"],
            [("x", "a", "y"), ("x", "a", "z"), ("y", "b", "z")],
        )
        .unwrap();
        let rev = Lts::new(
            ab(),
            ["z", "y", "x"],
            [("y", "b", "z"), ("x", "a", "z"), ("x", "a", "y")],
        )
        .unwrap();
        assert_eq!(fwd, rev);
    }

    #[test]
    fn initials_reflect_enabledness_only() {
        let lts = Lts::new(ab(), ["p", "q"], [("p", "b", "q")]).unwrap();
        let p = lts.state("p").unwrap();
        let q = lts.state("q").unwrap();
        assert_eq!(lts.initials(p), vec![ActionId(1)]);
        assert!(lts.initials(q).is_empty());
    }

    #[test]
    fn union_keeps_sides_apart() {
        let left = Lts::new(ab(), ["s"], [("s", "a", "s")]).unwrap();
        let right = Lts::new(ab(), ["s", "t"], [("s", "a", "t")]).unwrap();
        let union = disjoint_union(&left, &right).unwrap();
        assert_eq!(union.lts.n_states(), 3);
        let ls = union.left[0];
        assert_eq!(union.lts.state_name(ls), "l:s");
        assert_eq!(union.lts.successors(ls, ActionId(0)), &[ls]);
        let rs = union.right[0];
        let rt = union.right[1];
        assert_eq!(union.lts.successors(rs, ActionId(0)), &[rt]);
    }

    #[test]
    fn union_rejects_variance_mismatch() {
        let none: [(&str, &str, &str); 0] = [];
        let left = Lts::new(ab(), ["s"], none).unwrap();
        let other = Alphabet::new([("a", Variance::Covariant), ("b", Variance::Bivariant)]).unwrap();
        let right = Lts::new(other, ["s"], none).unwrap();
        assert!(matches!(
            disjoint_union(&left, &right),
            Err(LtsError::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn with_alphabet_swaps_variances_in_place() {
        let lts = Lts::new(ab(), ["s", "t"], [("s", "b", "t")]).unwrap();
        let flipped = lts.with_alphabet(lts.alphabet().uniform(Variance::Bivariant)).unwrap();
        assert_eq!(flipped.n_states(), 2);
        assert!(flipped.alphabet().requires_covariant(ActionId(1)));
        let bad = Alphabet::new([("a", Variance::Covariant), ("c", Variance::Covariant)]).unwrap();
        assert!(lts.with_alphabet(bad).is_err());
    }
}
