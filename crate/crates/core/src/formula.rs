//! Modal formulas: abstract syntax, logic fragments, printing.

use std::fmt;

use crate::alphabet::{ActionId, Alphabet};

/// A modal formula. `Diamond` asks for some successor, `Box` constrains all
/// successors, `Conf` additionally requires the action to be enabled
/// (`Conf(a, f)` holds iff `Diamond(a, f)` and `Box(a, f)` both hold).
///
/// `And`/`Or` are n-ary; the empty conjunction is `tt`, the empty disjunction
/// `ff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Tt,
    Ff,
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Diamond(ActionId, Box<Formula>),
    Box(ActionId, Box<Formula>),
    Conf(ActionId, Box<Formula>),
}

impl Formula {
    /// Conjunction in flattened normal form: nested `And`s are spliced,
    /// an empty list collapses to `tt`, a singleton to its element.
    pub fn and(children: Vec<Formula>) -> Formula {
        let mut flat = Vec::with_capacity(children.len());
        for child in children {
            match child {
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::Tt,
            1 => flat.pop().expect("len checked"),
            _ => Formula::And(flat),
        }
    }

    /// Disjunction in flattened normal form; empty collapses to `ff`.
    pub fn or(children: Vec<Formula>) -> Formula {
        let mut flat = Vec::with_capacity(children.len());
        for child in children {
            match child {
                Formula::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::Ff,
            1 => flat.pop().expect("len checked"),
            _ => Formula::Or(flat),
        }
    }

    pub fn diamond(action: ActionId, body: Formula) -> Formula {
        Formula::Diamond(action, Box::new(body))
    }

    pub fn boxed(action: ActionId, body: Formula) -> Formula {
        Formula::Box(action, Box::new(body))
    }

    pub fn conf(action: ActionId, body: Formula) -> Formula {
        Formula::Conf(action, Box::new(body))
    }

    /// Maximum nesting depth of modalities.
    pub fn modal_depth(&self) -> u32 {
        match self {
            Formula::Tt | Formula::Ff => 0,
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(Formula::modal_depth).max().unwrap_or(0)
            }
            Formula::Diamond(_, f) | Formula::Box(_, f) | Formula::Conf(_, f) => {
                1 + f.modal_depth()
            }
        }
    }

    /// Printer tied to the alphabet the action ids refer to.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayFormula<'a> {
        DisplayFormula { formula: self, alphabet }
    }
}

/// Wrapper implementing [`fmt::Display`] in the concrete grammar: `tt`, `ff`,
/// `<a>f`, `[a]f`, `{a}f`, `f & g`, `f | g`, with `&` binding tighter than
/// `|` and modalities tightest.
pub struct DisplayFormula<'a> {
    formula: &'a Formula,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayFormula<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.formula, self.alphabet, 0)
    }
}

/// `level`: 0 accepts anything, 1 requires at least `&` binding, 2 requires a
/// unary (modality or atom).
fn write_formula(
    out: &mut fmt::Formatter<'_>,
    formula: &Formula,
    alphabet: &Alphabet,
    level: u8,
) -> fmt::Result {
    let own = match formula {
        Formula::Or(_) => 0,
        Formula::And(_) => 1,
        _ => 2,
    };
    if own < level {
        out.write_str("(")?;
        write_formula(out, formula, alphabet, 0)?;
        return out.write_str(")");
    }
    match formula {
        Formula::Tt => out.write_str("tt"),
        Formula::Ff => out.write_str("ff"),
        Formula::And(fs) => {
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    out.write_str(" & ")?;
                }
                write_formula(out, g, alphabet, 2)?;
            }
            Ok(())
        }
        Formula::Or(fs) => {
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    out.write_str(" | ")?;
                }
                write_formula(out, g, alphabet, 1)?;
            }
            Ok(())
        }
        Formula::Diamond(a, g) => {
            write!(out, "<{}>", alphabet.name(*a))?;
            write_formula(out, g, alphabet, 2)
        }
        Formula::Box(a, g) => {
            write!(out, "[{}]", alphabet.name(*a))?;
            write_formula(out, g, alphabet, 2)
        }
        Formula::Conf(a, g) => {
            write!(out, "{{{}}}", alphabet.name(*a))?;
            write_formula(out, g, alphabet, 2)
        }
    }
}

/// The logic fragments the checker works with.
///
/// `S` is tt/&/<a>; `SBar` adds ff and |; `Cc` restricts `<a>` to
/// covariant-or-bivariant actions and `[a]` to contravariant-or-bivariant
/// ones; `Cs` is tt/&/|/{a} (no ff); `Any` imposes nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fragment {
    S,
    SBar,
    Cc,
    Cs,
    Any,
}

/// Syntactic membership of `formula` in `fragment` over `alphabet`.
pub fn fragment_member(formula: &Formula, fragment: Fragment, alphabet: &Alphabet) -> bool {
    let sub = |fs: &[Formula]| fs.iter().all(|g| fragment_member(g, fragment, alphabet));
    match (fragment, formula) {
        (Fragment::Any, _) => true,
        (_, Formula::Tt) => true,
        (Fragment::S, Formula::And(fs)) => sub(fs),
        (Fragment::S, Formula::Diamond(_, g)) => fragment_member(g, fragment, alphabet),
        (Fragment::S, _) => false,
        (Fragment::SBar, Formula::Ff) => true,
        (Fragment::SBar, Formula::And(fs)) | (Fragment::SBar, Formula::Or(fs)) => sub(fs),
        (Fragment::SBar, Formula::Diamond(_, g)) => fragment_member(g, fragment, alphabet),
        (Fragment::SBar, _) => false,
        (Fragment::Cc, Formula::Ff) => true,
        (Fragment::Cc, Formula::And(fs)) | (Fragment::Cc, Formula::Or(fs)) => sub(fs),
        (Fragment::Cc, Formula::Diamond(a, g)) => {
            alphabet.requires_covariant(*a) && fragment_member(g, fragment, alphabet)
        }
        (Fragment::Cc, Formula::Box(a, g)) => {
            alphabet.requires_contravariant(*a) && fragment_member(g, fragment, alphabet)
        }
        (Fragment::Cc, _) => false,
        (Fragment::Cs, Formula::And(fs)) | (Fragment::Cs, Formula::Or(fs)) => sub(fs),
        (Fragment::Cs, Formula::Conf(_, g)) => fragment_member(g, fragment, alphabet),
        (Fragment::Cs, _) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Variance;

    fn alphabet() -> Alphabet {
        Alphabet::new([
            ("coin", Variance::Covariant),
            ("coke", Variance::Contravariant),
            ("both", Variance::Bivariant),
        ])
        .unwrap()
    }

    fn a(name: &str, alphabet: &Alphabet) -> ActionId {
        alphabet.action(name).unwrap()
    }

    #[test]
    fn smart_constructors_flatten_and_collapse() {
        assert_eq!(Formula::and(vec![]), Formula::Tt);
        assert_eq!(Formula::or(vec![]), Formula::Ff);
        assert_eq!(Formula::and(vec![Formula::Ff]), Formula::Ff);
        let nested = Formula::and(vec![
            Formula::And(vec![Formula::Tt, Formula::Ff]),
            Formula::Tt,
        ]);
        assert_eq!(
            nested,
            Formula::And(vec![Formula::Tt, Formula::Ff, Formula::Tt])
        );
    }

    #[test]
    fn printing_follows_precedence() {
        let ab = alphabet();
        let coin = a("coin", &ab);
        let coke = a("coke", &ab);
        let f = Formula::diamond(coin, Formula::boxed(coke, Formula::Ff));
        assert_eq!(f.display(&ab).to_string(), "<coin>[coke]ff");

        let or_in_and = Formula::And(vec![
            Formula::Or(vec![Formula::Tt, Formula::Ff]),
            Formula::Tt,
        ]);
        assert_eq!(or_in_and.display(&ab).to_string(), "(tt | ff) & tt");

        let and_in_or = Formula::Or(vec![
            Formula::And(vec![Formula::Tt, Formula::Ff]),
            Formula::Ff,
        ]);
        assert_eq!(and_in_or.display(&ab).to_string(), "tt & ff | ff");

        let modal_group = Formula::conf(coin, Formula::Or(vec![Formula::Tt, Formula::Ff]));
        assert_eq!(modal_group.display(&ab).to_string(), "{coin}(tt | ff)");
    }

    #[test]
    fn fragment_membership_respects_variance() {
        let ab = alphabet();
        let coin = a("coin", &ab);
        let coke = a("coke", &ab);
        let both = a("both", &ab);

        let dia_cov = Formula::diamond(coin, Formula::Tt);
        let dia_contra = Formula::diamond(coke, Formula::Tt);
        let box_contra = Formula::boxed(coke, Formula::Ff);
        let box_bi = Formula::boxed(both, Formula::Ff);

        assert!(fragment_member(&dia_cov, Fragment::Cc, &ab));
        assert!(!fragment_member(&dia_contra, Fragment::Cc, &ab));
        assert!(fragment_member(&box_contra, Fragment::Cc, &ab));
        assert!(fragment_member(&box_bi, Fragment::Cc, &ab));

        // S has no ff / or / box; SBar adds ff and or but still no box.
        assert!(fragment_member(&dia_contra, Fragment::S, &ab));
        assert!(!fragment_member(&Formula::Ff, Fragment::S, &ab));
        assert!(fragment_member(&Formula::Ff, Fragment::SBar, &ab));
        assert!(!fragment_member(&box_contra, Fragment::SBar, &ab));

        // Cs: conf modality and no ff.
        let conf = Formula::conf(coke, Formula::Tt);
        assert!(fragment_member(&conf, Fragment::Cs, &ab));
        assert!(!fragment_member(&Formula::Ff, Fragment::Cs, &ab));
        assert!(!fragment_member(&dia_cov, Fragment::Cs, &ab));
        assert!(fragment_member(&Formula::conf(coke, conf.clone()), Fragment::Cs, &ab));

        assert!(fragment_member(&box_contra, Fragment::Any, &ab));
    }

    #[test]
    fn modal_depth_counts_nesting() {
        let ab = alphabet();
        let coin = a("coin", &ab);
        let f = Formula::and(vec![
            Formula::diamond(coin, Formula::diamond(coin, Formula::Tt)),
            Formula::diamond(coin, Formula::Tt),
        ]);
        assert_eq!(f.modal_depth(), 2);
        assert_eq!(Formula::Tt.modal_depth(), 0);
    }
}
