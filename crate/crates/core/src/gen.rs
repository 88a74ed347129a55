//! Seeded random systems and formulas.
//!
//! Everything here is a pure function of its seed and parameters, using a
//! fixed, portable stream cipher generator, so test corpora never shift
//! between platforms or releases.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::alphabet::Alphabet;
use crate::formula::{Formula, Fragment};
use crate::lts::Lts;

/// A random system with `n_states` states; each `(state, action)` pair gets
/// `density` successors in expectation (per-target Bernoulli draws, so the
/// result is always finitary and may exceed the expectation locally).
pub fn random_lts(seed: u64, n_states: usize, alphabet: &Alphabet, density: f64) -> Lts {
    assert!(n_states >= 1, "a system needs at least one state");
    assert!(density >= 0.0, "density must be non-negative");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let width = (n_states - 1).to_string().len();
    let names: Vec<String> = (0..n_states).map(|i| format!("s{i:0width$}")).collect();

    let prob = (density / n_states as f64).clamp(0.0, 1.0);
    let mut triples: Vec<(String, String, String)> = Vec::new();
    for from in &names {
        for action in alphabet.names() {
            for to in &names {
                let take = if prob >= 1.0 {
                    true
                } else if prob <= 0.0 {
                    false
                } else {
                    // threshold comparison on the raw 64-bit draw
                    (rng.next_u64() as f64) < prob * (u64::MAX as f64)
                };
                if take {
                    triples.push((from.clone(), action.to_owned(), to.clone()));
                }
            }
        }
    }
    Lts::new(alphabet.clone(), names, triples)
        .expect("generated names are unique and triples refer only to them")
}

/// A random formula of the fragment: deterministic in the seed, always a
/// fragment member. Connectives take between 2 and `max_width` children;
/// `max_depth` bounds the syntax tree height.
pub fn random_formula(
    seed: u64,
    fragment: Fragment,
    alphabet: &Alphabet,
    max_depth: u32,
    max_width: usize,
) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build(&mut rng, fragment, alphabet, max_depth, max_width.max(2))
}

#[derive(Clone, Copy)]
enum Op {
    Leaf,
    Modal,
    And,
    Or,
}

fn build(
    rng: &mut ChaCha8Rng,
    fragment: Fragment,
    alphabet: &Alphabet,
    depth: u32,
    width: usize,
) -> Formula {
    let modals = modal_ops(fragment, alphabet);
    let mut choices: Vec<(Op, u64)> = vec![(Op::Leaf, 1)];
    if depth > 0 {
        if !modals.is_empty() {
            choices.push((Op::Modal, 3));
        }
        choices.push((Op::And, 1));
        if !matches!(fragment, Fragment::S) {
            choices.push((Op::Or, 1));
        }
    }
    let total: u64 = choices.iter().map(|(_, w)| w).sum();
    let mut roll = rng.next_u64() % total;
    let op = choices
        .iter()
        .find(|(_, w)| {
            if roll < *w {
                true
            } else {
                roll -= w;
                false
            }
        })
        .expect("weights cover the roll")
        .0;

    match op {
        Op::Leaf => {
            let allow_ff = matches!(fragment, Fragment::SBar | Fragment::Cc | Fragment::Any);
            if allow_ff && rng.next_u64() % 2 == 1 {
                Formula::Ff
            } else {
                Formula::Tt
            }
        }
        Op::Modal => {
            let pick = modals[(rng.next_u64() % modals.len() as u64) as usize];
            let body = build(rng, fragment, alphabet, depth - 1, width);
            match pick {
                ModalOp::Diamond(a) => Formula::diamond(a, body),
                ModalOp::Box(a) => Formula::boxed(a, body),
                ModalOp::Conf(a) => Formula::conf(a, body),
            }
        }
        Op::And | Op::Or => {
            let count = 2 + (rng.next_u64() % (width as u64 - 1)) as usize;
            let children = (0..count)
                .map(|_| build(rng, fragment, alphabet, depth - 1, width))
                .collect();
            match op {
                Op::And => Formula::and(children),
                _ => Formula::or(children),
            }
        }
    }
}

#[derive(Clone, Copy)]
enum ModalOp {
    Diamond(crate::alphabet::ActionId),
    Box(crate::alphabet::ActionId),
    Conf(crate::alphabet::ActionId),
}

fn modal_ops(fragment: Fragment, alphabet: &Alphabet) -> Vec<ModalOp> {
    let mut ops = Vec::new();
    for a in alphabet.actions() {
        let diamond = match fragment {
            Fragment::S | Fragment::SBar | Fragment::Any => true,
            Fragment::Cc => alphabet.requires_covariant(a),
            Fragment::Cs => false,
        };
        if diamond {
            ops.push(ModalOp::Diamond(a));
        }
        let boxed = match fragment {
            Fragment::Cc => alphabet.requires_contravariant(a),
            Fragment::Any => true,
            _ => false,
        };
        if boxed {
            ops.push(ModalOp::Box(a));
        }
        if matches!(fragment, Fragment::Cs | Fragment::Any) {
            ops.push(ModalOp::Conf(a));
        }
    }
    ops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Variance;
    use crate::engine::greatest_relation;
    use crate::formula::fragment_member;
    use crate::relation::{check_is_simulation, PreorderKind};

    fn ab() -> Alphabet {
        Alphabet::new([
            ("a", Variance::Covariant),
            ("b", Variance::Contravariant),
        ])
        .unwrap()
    }

    #[test]
    fn generation_is_reproducible() {
        let alphabet = ab();
        for seed in 0..20 {
            assert_eq!(
                random_lts(seed, 5, &alphabet, 1.2),
                random_lts(seed, 5, &alphabet, 1.2)
            );
            assert_eq!(
                random_formula(seed, Fragment::Cc, &alphabet, 3, 3),
                random_formula(seed, Fragment::Cc, &alphabet, 3, 3)
            );
        }
    }

    #[test]
    fn zero_density_single_state_is_a_deadlock() {
        let lts = random_lts(1, 1, &ab(), 0.0);
        assert_eq!(lts.n_states(), 1);
        assert_eq!(lts.transitions().count(), 0);
    }

    #[test]
    fn saturating_density_yields_the_complete_graph() {
        let lts = random_lts(3, 3, &ab(), 10.0);
        assert_eq!(lts.transitions().count(), 3 * 3 * 2);
    }

    #[test]
    fn formulas_stay_inside_their_fragment() {
        let alphabet = ab();
        for fragment in [
            Fragment::S,
            Fragment::SBar,
            Fragment::Cc,
            Fragment::Cs,
            Fragment::Any,
        ] {
            for seed in 0..60 {
                let f = random_formula(seed, fragment, &alphabet, 4, 3);
                assert!(
                    fragment_member(&f, fragment, &alphabet),
                    "seed {seed}: {f:?} escapes {fragment:?}"
                );
            }
        }
    }

    #[test]
    fn depth_zero_is_a_constant() {
        for seed in 0..10 {
            let f = random_formula(seed, Fragment::Cs, &ab(), 0, 3);
            assert_eq!(f, Formula::Tt);
            let f = random_formula(seed, Fragment::Cc, &ab(), 0, 3);
            assert!(matches!(f, Formula::Tt | Formula::Ff));
        }
    }

    #[test]
    fn generated_systems_feed_the_engine() {
        let lts = random_lts(7, 4, &ab(), 1.5);
        let rel = greatest_relation(&lts, PreorderKind::Cc);
        let pairs = rel.pairs().collect();
        assert_eq!(check_is_simulation(&lts, PreorderKind::Cc, &pairs), Ok(()));
    }

    #[test]
    fn state_names_are_padded_for_canonical_order() {
        let lts = random_lts(0, 12, &ab(), 0.0);
        let names: Vec<_> = lts.states().map(|s| lts.state_name(s).to_owned()).collect();
        assert_eq!(names[0], "s00");
        assert_eq!(names[11], "s11");
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
