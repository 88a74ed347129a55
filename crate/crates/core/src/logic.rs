//! Satisfaction of modal formulas: per-state evaluation and whole-system
//! satisfaction vectors.

use crate::alphabet::ActionId;
use crate::formula::Formula;
use crate::lts::{Lts, StateId};

/// Does `state` satisfy `formula`? Plain structural recursion; the evaluator
/// is total over all formula constructors regardless of fragment.
pub fn eval(lts: &Lts, state: StateId, formula: &Formula) -> bool {
    match formula {
        Formula::Tt => true,
        Formula::Ff => false,
        Formula::And(fs) => fs.iter().all(|f| eval(lts, state, f)),
        Formula::Or(fs) => fs.iter().any(|f| eval(lts, state, f)),
        Formula::Diamond(a, f) => lts
            .successors(state, *a)
            .iter()
            .any(|&next| eval(lts, next, f)),
        Formula::Box(a, f) => lts
            .successors(state, *a)
            .iter()
            .all(|&next| eval(lts, next, f)),
        Formula::Conf(a, f) => {
            let succ = lts.successors(state, *a);
            !succ.is_empty() && succ.iter().all(|&next| eval(lts, next, f))
        }
    }
}

/// Bitset over the states of one LTS: bit `p` says whether `p` satisfies some
/// fixed formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SatVector {
    len: u32,
    bits: Vec<u64>,
}

impl SatVector {
    pub fn empty(len: usize) -> SatVector {
        SatVector {
            len: len as u32,
            bits: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> SatVector {
        let mut v = SatVector::empty(len);
        for i in 0..len {
            v.set(StateId(i as u32), true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, state: StateId) -> bool {
        let i = state.0 as usize;
        debug_assert!(i < self.len());
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, state: StateId, value: bool) {
        let i = state.0 as usize;
        debug_assert!(i < self.len());
        if value {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn and(&self, other: &SatVector) -> SatVector {
        debug_assert_eq!(self.len, other.len);
        SatVector {
            len: self.len,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &SatVector) -> SatVector {
        debug_assert_eq!(self.len, other.len);
        SatVector {
            len: self.len,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }
}

/// Satisfaction vector of `formula`, computed bottom-up so every subformula
/// is evaluated once for all states.
pub fn sat_vector(lts: &Lts, formula: &Formula) -> SatVector {
    let n = lts.n_states();
    match formula {
        Formula::Tt => SatVector::full(n),
        Formula::Ff => SatVector::empty(n),
        Formula::And(fs) => fs
            .iter()
            .map(|f| sat_vector(lts, f))
            .fold(SatVector::full(n), |acc, v| acc.and(&v)),
        Formula::Or(fs) => fs
            .iter()
            .map(|f| sat_vector(lts, f))
            .fold(SatVector::empty(n), |acc, v| acc.or(&v)),
        Formula::Diamond(a, f) => diamond_image(lts, *a, &sat_vector(lts, f)),
        Formula::Box(a, f) => box_image(lts, *a, &sat_vector(lts, f)),
        Formula::Conf(a, f) => conf_image(lts, *a, &sat_vector(lts, f)),
    }
}

/// States with some `action`-successor inside `body`.
pub(crate) fn diamond_image(lts: &Lts, action: ActionId, body: &SatVector) -> SatVector {
    let mut v = SatVector::empty(lts.n_states());
    for p in lts.states() {
        if lts.successors(p, action).iter().any(|&q| body.get(q)) {
            v.set(p, true);
        }
    }
    v
}

/// States whose `action`-successors all lie inside `body`.
pub(crate) fn box_image(lts: &Lts, action: ActionId, body: &SatVector) -> SatVector {
    let mut v = SatVector::empty(lts.n_states());
    for p in lts.states() {
        if lts.successors(p, action).iter().all(|&q| body.get(q)) {
            v.set(p, true);
        }
    }
    v
}

/// States that enable `action` and whose `action`-successors all lie inside
/// `body`.
pub(crate) fn conf_image(lts: &Lts, action: ActionId, body: &SatVector) -> SatVector {
    let mut v = SatVector::empty(lts.n_states());
    for p in lts.states() {
        let succ = lts.successors(p, action);
        if !succ.is_empty() && succ.iter().all(|&q| body.get(q)) {
            v.set(p, true);
        }
    }
    v
}
