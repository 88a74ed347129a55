//! Greatest-fixed-point computation of the simulation preorders.
//!
//! Each round evaluates every live pair against a frozen snapshot of the
//! relation and only then merges the verdicts, so results are identical
//! whether the per-pair work runs sequentially or in parallel.

use std::collections::{BTreeMap, BTreeSet};

use crate::exec;
use crate::lts::{Lts, StateId};
use crate::relation::{find_violation, AnnotatedRelation, PreorderKind, Removal};

/// The greatest `kind`-simulation over all state pairs of `lts`, with every
/// discarded pair annotated by its removal round and violated clause.
pub fn greatest_relation(lts: &Lts, kind: PreorderKind) -> AnnotatedRelation {
    refine(lts, kind, full_product(lts), false)
}

/// Same as [`greatest_relation`] but forced onto the sequential path, for
/// differential tests and benches.
pub fn greatest_relation_seq(lts: &Lts, kind: PreorderKind) -> AnnotatedRelation {
    refine(lts, kind, full_product(lts), true)
}

/// The greatest `kind`-simulation contained in `seed`. Only seed pairs are
/// tracked, so removal records cover exactly `seed` minus the result.
pub fn greatest_within(
    lts: &Lts,
    kind: PreorderKind,
    seed: impl IntoIterator<Item = (StateId, StateId)>,
) -> AnnotatedRelation {
    let seed: BTreeSet<(StateId, StateId)> = seed.into_iter().collect();
    refine(lts, kind, seed.into_iter().collect(), false)
}

fn full_product(lts: &Lts) -> Vec<(StateId, StateId)> {
    let mut pairs = Vec::with_capacity(lts.n_states() * lts.n_states());
    for p in lts.states() {
        for q in lts.states() {
            pairs.push((p, q));
        }
    }
    pairs
}

/// `alive` must be sorted and duplicate-free.
fn refine(
    lts: &Lts,
    kind: PreorderKind,
    mut alive: Vec<(StateId, StateId)>,
    sequential: bool,
) -> AnnotatedRelation {
    let n = lts.n_states();
    let mut mask = vec![false; n * n];
    for &(p, q) in &alive {
        assert!(
            (p.0 as usize) < n && (q.0 as usize) < n,
            "seed pair refers to a state outside the system"
        );
        mask[p.0 as usize * n + q.0 as usize] = true;
    }

    let mut removed: BTreeMap<(StateId, StateId), Removal> = BTreeMap::new();
    let mut round = 0u32;
    loop {
        round += 1;
        let verdicts = exec::dispatch(sequential, &alive, |&(p, q)| {
            find_violation(lts, kind, p, q, &|x: StateId, y: StateId| {
                mask[x.0 as usize * n + y.0 as usize]
            })
        });

        let mut survivors = Vec::with_capacity(alive.len());
        let mut dropped = false;
        for (pair, verdict) in alive.iter().copied().zip(verdicts) {
            match verdict {
                None => survivors.push(pair),
                Some(violation) => {
                    let (p, q) = pair;
                    mask[p.0 as usize * n + q.0 as usize] = false;
                    removed.insert(pair, Removal { round, violation });
                    dropped = true;
                }
            }
        }
        alive = survivors;
        if !dropped {
            break;
        }
    }
    AnnotatedRelation::new(kind, alive.into_iter().collect(), removed, round)
}
