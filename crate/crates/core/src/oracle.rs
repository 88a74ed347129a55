//! Brute-force logical preorders, independent of the refinement engine.
//!
//! Formulas of a fragment are enumerated level by level and deduplicated by
//! satisfaction vector, which quotients the infinite formula set to a finite
//! one for a fixed finite system. When a level contributes no new vector the
//! enumeration is saturated: every fragment formula is semantically equal to
//! an enumerated one, so the induced preorder is exact and can be compared
//! against the fixed-point relations.

use std::collections::BTreeSet;

use crate::alphabet::ActionId;
use crate::engine::greatest_relation;
use crate::exec;
use crate::formula::{Formula, Fragment};
use crate::logic::{box_image, conf_image, diamond_image, sat_vector, SatVector};
use crate::lts::{Lts, StateId};
use crate::relation::{PreorderKind, Removal};

/// Refinement needs at most `|states|²` productive rounds, so doubling that
/// leaves generous slack for the logical side to stabilize.
pub fn default_max_level(lts: &Lts) -> u32 {
    let n = lts.n_states() as u32;
    2 * n * n
}

/// The formulas first realizing each new satisfaction vector at one level.
#[derive(Debug, Clone)]
pub struct SemanticLevel {
    pub level: u32,
    pub entries: Vec<(Formula, SatVector)>,
}

/// Result of leveled enumeration. `saturated` is true when some level ran
/// dry before the cap, i.e. the entries exhaust the fragment's expressible
/// vectors on this system.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub levels: Vec<SemanticLevel>,
    pub saturated: bool,
}

impl Saturation {
    /// All entries across levels, in discovery order.
    pub fn entries(&self) -> impl Iterator<Item = &(Formula, SatVector)> {
        self.levels.iter().flat_map(|l| l.entries.iter())
    }

    pub fn vector_count(&self) -> usize {
        self.levels.iter().map(|l| l.entries.len()).sum()
    }
}

fn leaves(fragment: Fragment) -> Vec<Formula> {
    match fragment {
        Fragment::S | Fragment::Cs => vec![Formula::Tt],
        Fragment::SBar | Fragment::Cc | Fragment::Any => vec![Formula::Tt, Formula::Ff],
    }
}

#[derive(Clone, Copy)]
enum Cand {
    Diamond(ActionId, usize),
    Box(ActionId, usize),
    Conf(ActionId, usize),
    And(usize, usize),
    Or(usize, usize),
}

/// Deterministic candidate order for the level built on top of
/// `all[top_start..]`: per new entry, diamonds then boxes then the
/// conformance modality (actions ascending), then conjunctions and
/// disjunctions with every strictly earlier entry.
fn candidates(lts: &Lts, fragment: Fragment, all_len: usize, top_start: usize) -> Vec<Cand> {
    let alphabet = lts.alphabet();
    let mut cands = Vec::new();
    for gi in top_start..all_len {
        for a in alphabet.actions() {
            let allowed = match fragment {
                Fragment::S | Fragment::SBar => true,
                Fragment::Cc => alphabet.requires_covariant(a),
                Fragment::Cs => false,
                Fragment::Any => true,
            };
            if allowed {
                cands.push(Cand::Diamond(a, gi));
            }
        }
        for a in alphabet.actions() {
            let allowed = match fragment {
                Fragment::Cc => alphabet.requires_contravariant(a),
                Fragment::Any => true,
                _ => false,
            };
            if allowed {
                cands.push(Cand::Box(a, gi));
            }
        }
        if matches!(fragment, Fragment::Cs | Fragment::Any) {
            for a in alphabet.actions() {
                cands.push(Cand::Conf(a, gi));
            }
        }
        for gj in 0..gi {
            cands.push(Cand::And(gi, gj));
        }
        if !matches!(fragment, Fragment::S) {
            for gj in 0..gi {
                cands.push(Cand::Or(gi, gj));
            }
        }
    }
    cands
}

fn saturate_impl(lts: &Lts, fragment: Fragment, max_level: u32, sequential: bool) -> Saturation {
    let mut all: Vec<(Formula, SatVector)> = Vec::new();
    let mut seen: BTreeSet<SatVector> = BTreeSet::new();

    let mut base = Vec::new();
    for formula in leaves(fragment) {
        let vector = sat_vector(lts, &formula);
        if seen.insert(vector.clone()) {
            base.push((formula, vector));
        }
    }
    all.extend(base.iter().cloned());
    let mut levels = vec![SemanticLevel { level: 0, entries: base }];
    let mut saturated = false;
    let mut top_start = 0usize;

    for level in 1..=max_level {
        let top_end = all.len();
        let cands = candidates(lts, fragment, top_end, top_start);
        let vectors = exec::dispatch(sequential, &cands, |c| match *c {
            Cand::Diamond(a, gi) => diamond_image(lts, a, &all[gi].1),
            Cand::Box(a, gi) => box_image(lts, a, &all[gi].1),
            Cand::Conf(a, gi) => conf_image(lts, a, &all[gi].1),
            Cand::And(gi, gj) => all[gi].1.and(&all[gj].1),
            Cand::Or(gi, gj) => all[gi].1.or(&all[gj].1),
        });

        let mut entries = Vec::new();
        for (cand, vector) in cands.iter().zip(vectors) {
            if seen.insert(vector.clone()) {
                let formula = match *cand {
                    Cand::Diamond(a, gi) => Formula::diamond(a, all[gi].0.clone()),
                    Cand::Box(a, gi) => Formula::boxed(a, all[gi].0.clone()),
                    Cand::Conf(a, gi) => Formula::conf(a, all[gi].0.clone()),
                    Cand::And(gi, gj) => {
                        Formula::and(vec![all[gj].0.clone(), all[gi].0.clone()])
                    }
                    Cand::Or(gi, gj) => Formula::or(vec![all[gj].0.clone(), all[gi].0.clone()]),
                };
                entries.push((formula, vector));
            }
        }
        if entries.is_empty() {
            saturated = true;
            break;
        }
        top_start = top_end;
        all.extend(entries.iter().cloned());
        levels.push(SemanticLevel { level, entries });
    }
    Saturation { levels, saturated }
}

/// Enumerates the fragment on `lts` up to `max_level` or saturation.
pub fn saturate(lts: &Lts, fragment: Fragment, max_level: u32) -> Saturation {
    saturate_impl(lts, fragment, max_level, false)
}

/// Sequential twin of [`saturate`], for differential tests and benches.
pub fn saturate_seq(lts: &Lts, fragment: Fragment, max_level: u32) -> Saturation {
    saturate_impl(lts, fragment, max_level, true)
}

/// `(p, q)` is included iff every enumerated formula satisfied by `p` is
/// satisfied by `q`. Exact when `saturated` holds; otherwise an
/// over-approximation of the true logical preorder.
#[derive(Debug, Clone)]
pub struct LogicalPreorder {
    pub pairs: BTreeSet<(StateId, StateId)>,
    pub saturated: bool,
}

impl LogicalPreorder {
    pub fn contains(&self, left: StateId, right: StateId) -> bool {
        self.pairs.contains(&(left, right))
    }
}

pub fn logical_preorder(lts: &Lts, fragment: Fragment, max_level: u32) -> LogicalPreorder {
    let saturation = saturate(lts, fragment, max_level);
    let mut pairs = BTreeSet::new();
    for p in lts.states() {
        'next: for q in lts.states() {
            for (_, vector) in saturation.entries() {
                if vector.get(p) && !vector.get(q) {
                    continue 'next;
                }
            }
            pairs.insert((p, q));
        }
    }
    LogicalPreorder { pairs, saturated: saturation.saturated }
}

/// The kind↔fragment pairings whose agreement the characterization theorems
/// assert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    SimS,
    SimSBar,
    CcCc,
    ConfCs,
}

impl Pairing {
    pub fn all() -> [Pairing; 4] {
        [Pairing::SimS, Pairing::SimSBar, Pairing::CcCc, Pairing::ConfCs]
    }

    pub fn kind(self) -> PreorderKind {
        match self {
            Pairing::SimS | Pairing::SimSBar => PreorderKind::Sim,
            Pairing::CcCc => PreorderKind::Cc,
            Pairing::ConfCs => PreorderKind::Conf,
        }
    }

    pub fn fragment(self) -> Fragment {
        match self {
            Pairing::SimS => Fragment::S,
            Pairing::SimSBar => Fragment::SBar,
            Pairing::CcCc => Fragment::Cc,
            Pairing::ConfCs => Fragment::Cs,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pairing::SimS => "sim-s",
            Pairing::SimSBar => "sim-sbar",
            Pairing::CcCc => "cc-cc",
            Pairing::ConfCs => "conf-cs",
        }
    }
}

/// Why the two sides of a mismatch disagree: either an enumerated formula
/// separates a behaviorally related pair, or the refinement removed a
/// logically related one.
#[derive(Debug, Clone)]
pub enum Evidence {
    SeparatingFormula(Formula),
    ViolatedClause(Removal),
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub left: StateId,
    pub right: StateId,
    pub behavioral: bool,
    pub logical: bool,
    pub evidence: Evidence,
}

#[derive(Debug, Clone)]
pub struct AgreementReport {
    pub pairing: Pairing,
    pub saturated: bool,
    pub mismatches: Vec<Mismatch>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the fixed-point preorder with the enumeration-based logical one
/// over every state pair. An empty mismatch list at saturation certifies the
/// characterization theorem on this system.
pub fn agreement_report(lts: &Lts, pairing: Pairing, max_level: u32) -> AgreementReport {
    let relation = greatest_relation(lts, pairing.kind());
    let saturation = saturate(lts, pairing.fragment(), max_level);

    let mut mismatches = Vec::new();
    for p in lts.states() {
        for q in lts.states() {
            let behavioral = relation.contains(p, q);
            let separating = saturation
                .entries()
                .find(|(_, v)| v.get(p) && !v.get(q));
            let logical = separating.is_none();
            if behavioral == logical {
                continue;
            }
            let evidence = match separating {
                Some((formula, _)) => Evidence::SeparatingFormula(formula.clone()),
                None => Evidence::ViolatedClause(
                    *relation.removal(p, q).expect("pair is not alive"),
                ),
            };
            mismatches.push(Mismatch { left: p, right: q, behavioral, logical, evidence });
        }
    }
    AgreementReport { pairing, saturated: saturation.saturated, mismatches }
}
