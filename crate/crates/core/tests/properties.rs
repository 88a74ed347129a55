//! Randomized invariants over construction, parsing, evaluation and the
//! refinement engine. Everything here is a law the implementation must obey
//! for arbitrary inputs, not a pinned example.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand_core::{RngCore, SeedableRng};

use simcheck_core::{
    check_is_simulation, default_max_level, equiv, eval, greatest_relation, greatest_within,
    parse_formula, parse_model, random_formula, random_lts, sat_vector, saturate, ActionId,
    Alphabet, Formula, Fragment, Lts, Model, PreorderKind, StateId, StateRef, Variance,
};

fn mixed_alphabet(k: usize, salt: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"][..k].iter().enumerate().map(|(j, n)| {
        let variance = match (salt + j) % 3 {
            0 => Variance::Covariant,
            1 => Variance::Contravariant,
            _ => Variance::Bivariant,
        };
        (*n, variance)
    }))
    .unwrap()
}

fn instance(seed: u64, n: usize, k: usize, salt: usize, density: f64) -> Lts {
    random_lts(seed, n, &mixed_alphabet(k, salt), density)
}

/// Closed process terms over actions a and b, sums always parenthesized.
fn term() -> impl Strategy<Value = String> {
    let leaf = Just("0".to_string());
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["a", "b"]), inner.clone())
                .prop_map(|(action, body)| format!("{action}.{body}")),
            (inner.clone(), inner).prop_map(|(x, y)| format!("({x} + {y})")),
        ]
    })
}

fn kind_fragment(kind: PreorderKind) -> Fragment {
    match kind {
        PreorderKind::Sim => Fragment::S,
        PreorderKind::Cc => Fragment::Cc,
        PreorderKind::Conf => Fragment::Cs,
    }
}

fn any_kind() -> impl Strategy<Value = PreorderKind> {
    prop::sample::select(vec![PreorderKind::Sim, PreorderKind::Cc, PreorderKind::Conf])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The constructor canonicalizes: transition order and duplicates are
    /// irrelevant to the resulting system.
    #[test]
    fn construction_ignores_order_and_duplicates(
        edges in prop::collection::vec((0..5u8, 0..2u8, 0..5u8), 0..15),
        salt in 0..3usize,
    ) {
        let states: Vec<String> = (0..5).map(|i| format!("s{i}")).collect();
        let named: Vec<(String, String, String)> = edges
            .iter()
            .map(|&(p, a, q)| {
                (format!("s{p}"), if a == 0 { "a".into() } else { "b".into() }, format!("s{q}"))
            })
            .collect();
        let mut shuffled = named.clone();
        shuffled.reverse();
        shuffled.extend(named.clone());

        let alphabet = mixed_alphabet(2, salt);
        let one = Lts::new(alphabet.clone(), states.clone(), named).unwrap();
        let two = Lts::new(alphabet, states, shuffled).unwrap();
        prop_assert_eq!(one, two);
    }

    /// `initials` is exactly the set of enabled actions.
    #[test]
    fn initials_match_enabledness(seed in any::<u64>(), n in 1..6usize, k in 1..4usize,
                                  salt in 0..3usize, density in 0.0..2.0f64) {
        let lts = instance(seed, n, k, salt, density);
        for p in lts.states() {
            let declared: BTreeSet<ActionId> = lts.initials(p).into_iter().collect();
            for a in lts.alphabet().actions() {
                prop_assert_eq!(lts.enabled(p, a), declared.contains(&a));
                prop_assert_eq!(!lts.successors(p, a).is_empty(), declared.contains(&a));
            }
        }
    }

    /// Printing a formula and reparsing it reproduces the same tree.
    #[test]
    fn formula_print_parse_roundtrip(seed in any::<u64>(), k in 1..4usize, salt in 0..3usize,
                                     depth in 0..4u32) {
        let alphabet = mixed_alphabet(k, salt);
        for fragment in [Fragment::S, Fragment::SBar, Fragment::Cc, Fragment::Cs, Fragment::Any] {
            let formula = random_formula(seed, fragment, &alphabet, depth, 3);
            let text = formula.display(&alphabet).to_string();
            let reparsed = parse_formula(&text, &alphabet).unwrap();
            prop_assert_eq!(reparsed, formula, "text was {}", text);
        }
    }

    /// Flattening a model to text and reparsing reproduces the same system.
    #[test]
    fn model_flat_text_roundtrip(seed in any::<u64>(), n in 1..7usize, k in 1..4usize,
                                 salt in 0..3usize, density in 0.0..2.0f64) {
        let lts = instance(seed, n, k, salt, density);
        let model = Model { lts: lts.clone(), names: Default::default() };
        let reparsed = parse_model(&model.to_flat_text()).unwrap();
        prop_assert_eq!(reparsed.lts, lts);
    }

    /// Summation is commutative up to bisimulation (all actions bivariant,
    /// under which the variance-aware preorder is bisimilarity).
    #[test]
    fn summation_commutes(x in term(), y in term()) {
        let text = format!(
            "alphabet {{ covariant: ; contravariant: ; bivariant: a, b; }}\n\
             p = {x} + {y};\n\
             q = {y} + {x};\n"
        );
        let model = parse_model(&text).unwrap();
        let p = StateRef::new(&model.lts, model.state("p").unwrap());
        let q = StateRef::new(&model.lts, model.state("q").unwrap());
        prop_assert!(equiv(PreorderKind::Cc, p, q).unwrap());
    }

    /// Batch evaluation agrees with the single-state evaluator pointwise.
    #[test]
    fn sat_vector_matches_eval(seed in any::<u64>(), n in 1..6usize, k in 1..4usize,
                               salt in 0..3usize, density in 0.0..2.0f64, depth in 0..4u32) {
        let lts = instance(seed, n, k, salt, density);
        let formula = random_formula(seed ^ 0x9e37, Fragment::Any, lts.alphabet(), depth, 3);
        let vector = sat_vector(&lts, &formula);
        for p in lts.states() {
            prop_assert_eq!(vector.get(p), eval(&lts, p, &formula));
        }
    }

    /// The conformance modality decomposes into its diamond and box halves.
    #[test]
    fn conf_modality_decomposes(seed in any::<u64>(), n in 1..6usize, k in 1..4usize,
                                salt in 0..3usize, density in 0.0..2.0f64, depth in 0..3u32) {
        let lts = instance(seed, n, k, salt, density);
        let body = random_formula(seed ^ 0x517c, Fragment::Any, lts.alphabet(), depth, 3);
        for a in lts.alphabet().actions() {
            let whole = sat_vector(&lts, &Formula::conf(a, body.clone()));
            let dia = sat_vector(&lts, &Formula::diamond(a, body.clone()));
            let bx = sat_vector(&lts, &Formula::boxed(a, body.clone()));
            prop_assert_eq!(whole, dia.and(&bx));
        }
    }

    /// Refinement terminates within the trivial bound: at most one round per
    /// removable pair, plus the final sweep that observes no change.
    #[test]
    fn refinement_round_bound(seed in any::<u64>(), n in 1..7usize, k in 1..3usize,
                              salt in 0..3usize, density in 0.0..2.0f64, kind in any_kind()) {
        let lts = instance(seed, n, k, salt, density);
        let relation = greatest_relation(&lts, kind);
        prop_assert!(relation.rounds() <= (n * n + 1) as u32);
        for p in lts.states() {
            for q in lts.states() {
                if let Some(removal) = relation.removal(p, q) {
                    prop_assert!(removal.round < relation.rounds());
                }
            }
        }
    }

    /// Valid relations are closed under union, so the greatest one is a join.
    #[test]
    fn union_of_valid_relations_is_valid(seed in any::<u64>(), n in 1..6usize, k in 1..3usize,
                                         salt in 0..3usize, density in 0.0..2.0f64,
                                         kind in any_kind()) {
        let lts = instance(seed, n, k, salt, density);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut subset = || {
            let mut pairs = Vec::new();
            for p in lts.states() {
                for q in lts.states() {
                    if rng.next_u64() % 2 == 0 {
                        pairs.push((p, q));
                    }
                }
            }
            pairs
        };
        let one: BTreeSet<(StateId, StateId)> =
            greatest_within(&lts, kind, subset()).pairs().collect();
        let two: BTreeSet<(StateId, StateId)> =
            greatest_within(&lts, kind, subset()).pairs().collect();
        let union: BTreeSet<_> = one.union(&two).copied().collect();
        prop_assert_eq!(check_is_simulation(&lts, kind, &union), Ok(()));
    }

    /// Brute-force enumeration always saturates within the default budget.
    #[test]
    fn saturation_reached_at_default_budget(seed in any::<u64>(), n in 1..6usize, k in 1..3usize,
                                            salt in 0..3usize, density in 0.0..2.0f64) {
        let lts = instance(seed, n, k, salt, density);
        for fragment in [Fragment::S, Fragment::SBar, Fragment::Cc, Fragment::Cs] {
            prop_assert!(saturate(&lts, fragment, default_max_level(&lts)).saturated);
        }
    }

    /// Soundness half of the characterizations: truth of a fragment formula
    /// transfers along the matching preorder.
    #[test]
    fn fragment_truth_transfers_along_preorder(seed in any::<u64>(), n in 1..5usize,
                                               k in 1..3usize, salt in 0..3usize,
                                               density in 0.0..2.0f64, kind in any_kind(),
                                               depth in 0..4u32) {
        let lts = instance(seed, n, k, salt, density);
        let relation = greatest_relation(&lts, kind);
        let formula =
            random_formula(seed ^ 0xabcd, kind_fragment(kind), lts.alphabet(), depth, 3);
        let truths = sat_vector(&lts, &formula);
        for (p, q) in relation.pairs() {
            prop_assert!(!truths.get(p) || truths.get(q));
        }
    }
}

/// The fixture file itself survives the flat-text round trip.
#[test]
fn fixture_flat_text_roundtrip() {
    let model = parse_model(include_str!("data/machines.proc")).unwrap();
    let reparsed = parse_model(&model.to_flat_text()).unwrap();
    assert_eq!(reparsed.lts, model.lts);
}
