//! Recursive-descent parser for model files and formulas, plus the
//! process-term compiler (one state per continuation point, references reuse
//! the referenced root).

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{Alphabet, Variance};
use crate::formula::Formula;
use crate::lts::Lts;

use super::lexer::{lex, Tok, Token};
use super::{Model, ParseError, ProcessTerm};

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (u32, u32),
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        let (tokens, end) = lex(text)?;
        Ok(Parser { tokens, pos: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_second(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.tok)
    }

    fn advance(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn here(&self) -> (u32, u32) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError { line, col, message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        match self.peek() {
            Some(found) if *found == tok => Ok(self.advance().expect("peeked")),
            Some(found) => {
                let found = found.describe();
                self.fail(format!("expected {}, found {found}", tok.describe()))
            }
            None => self.fail(format!("expected {}, found end of input", tok.describe())),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, u32, u32), ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let token = self.advance().expect("peeked");
                match token.tok {
                    Tok::Ident(name) => Ok((name, token.line, token.col)),
                    _ => unreachable!(),
                }
            }
            Some(found) => {
                let found = found.describe();
                self.fail(format!("expected {what}, found {found}"))
            }
            None => self.fail(format!("expected {what}, found end of input")),
        }
    }
}

// ---------------------------------------------------------------------------
// model files

struct Transition {
    from: (String, u32, u32),
    action: String,
    to: (String, u32, u32),
}

pub(super) fn parse_model_text(text: &str) -> Result<Model, ParseError> {
    let mut parser = Parser::new(text)?;
    let alphabet = parse_header(&mut parser)?;

    let mut seen: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    let mut defs: Vec<(String, ProcessTerm)> = Vec::new();
    let mut def_names: BTreeSet<String> = BTreeSet::new();
    let mut declared: Vec<String> = Vec::new();
    let mut declared_set: BTreeSet<String> = BTreeSet::new();
    let mut transitions: Vec<Transition> = Vec::new();

    let mut claim = |name: String, line: u32, col: u32| -> Result<String, ParseError> {
        if seen.insert(name.clone(), (line, col)).is_some() {
            return Err(ParseError {
                line,
                col,
                message: format!("duplicate name `{name}`"),
            });
        }
        Ok(name)
    };

    while parser.peek().is_some() {
        match (parser.peek(), parser.peek_second()) {
            (Some(Tok::Ident(name)), Some(Tok::Colon)) if name == "states" => {
                parser.advance();
                parser.advance();
                loop {
                    let (name, line, col) = parser.expect_ident("a state name")?;
                    declared.push(claim(name.clone(), line, col)?);
                    declared_set.insert(name);
                    if parser.peek() == Some(&Tok::Comma) {
                        parser.advance();
                    } else {
                        break;
                    }
                }
                parser.expect(Tok::Semi)?;
            }
            (Some(Tok::Ident(_)), Some(Tok::Eq)) => {
                let (name, line, col) = parser.expect_ident("a name")?;
                parser.advance(); // `=`
                let term = parse_proc(&mut parser, &alphabet, &def_names)?;
                parser.expect(Tok::Semi)?;
                let name = claim(name, line, col)?;
                def_names.insert(name.clone());
                defs.push((name, term));
            }
            (Some(Tok::Ident(_)), Some(Tok::Dash)) => {
                let from = parser.expect_ident("a state name")?;
                parser.advance(); // `-`
                let (action, line, col) = parser.expect_ident("an action name")?;
                if alphabet.action(&action).is_none() {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("undeclared action `{action}`"),
                    });
                }
                parser.expect(Tok::Arrow)?;
                let to = parser.expect_ident("a state name")?;
                parser.expect(Tok::Semi)?;
                transitions.push(Transition {
                    from: (from.0, from.1, from.2),
                    action,
                    to: (to.0, to.1, to.2),
                });
            }
            (Some(Tok::Ident(_)), _) => {
                let (_, line, col) = parser.expect_ident("a name")?;
                let found = parser
                    .peek()
                    .map(|t| t.describe())
                    .unwrap_or_else(|| "end of input".into());
                return Err(ParseError {
                    line,
                    col,
                    message: format!(
                        "expected `=` (definition), `:` (state declaration) or `-` (transition) after the name, found {found}"
                    ),
                });
            }
            _ => {
                return parser
                    .fail("expected a definition, a `states:` declaration or a transition")
            }
        }
    }

    // Compile the definitions in file order, then resolve flat transitions.
    let mut compiler = Compiler {
        used: seen.keys().cloned().collect(),
        roots: BTreeMap::new(),
        states: Vec::new(),
        moves: BTreeMap::new(),
    };
    for (name, term) in &defs {
        compiler.compile_def(name, term);
    }

    let mut states: Vec<String> = declared.clone();
    states.extend(compiler.states.iter().cloned());
    let mut triples: Vec<(String, String, String)> = Vec::new();
    for state in &compiler.states {
        for (action, target) in &compiler.moves[state] {
            triples.push((state.clone(), action.clone(), target.clone()));
        }
    }
    for t in &transitions {
        let resolve = |(name, line, col): &(String, u32, u32)| -> Result<String, ParseError> {
            if declared_set.contains(name) {
                Ok(name.clone())
            } else if let Some(root) = compiler.roots.get(name) {
                Ok(root.clone())
            } else {
                Err(ParseError {
                    line: *line,
                    col: *col,
                    message: format!("unknown state `{name}`"),
                })
            }
        };
        triples.push((resolve(&t.from)?, t.action.clone(), resolve(&t.to)?));
    }

    let lts = Lts::new(alphabet, states, triples)
        .expect("all names and actions were validated during parsing");
    let mut names = BTreeMap::new();
    for name in &declared {
        names.insert(name.clone(), lts.state(name).expect("declared state exists"));
    }
    for (name, root) in &compiler.roots {
        names.insert(name.clone(), lts.state(root).expect("compiled root exists"));
    }
    Ok(Model { lts, names })
}

fn parse_header(parser: &mut Parser) -> Result<Alphabet, ParseError> {
    match parser.peek() {
        Some(Tok::Ident(name)) if name == "alphabet" => {
            parser.advance();
        }
        _ => return parser.fail("expected `alphabet` header"),
    }
    parser.expect(Tok::LBrace)?;
    let mut entries: Vec<(String, Variance)> = Vec::new();
    let mut positions: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    for (label, variance) in [
        ("covariant", Variance::Covariant),
        ("contravariant", Variance::Contravariant),
        ("bivariant", Variance::Bivariant),
    ] {
        match parser.peek() {
            Some(Tok::Ident(name)) if name == label => {
                parser.advance();
            }
            _ => return parser.fail(format!("expected `{label}:` section")),
        }
        parser.expect(Tok::Colon)?;
        if matches!(parser.peek(), Some(Tok::Ident(_))) {
            loop {
                let (name, line, col) = parser.expect_ident("an action name")?;
                if positions.insert(name.clone(), (line, col)).is_some() {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("duplicate action name `{name}`"),
                    });
                }
                entries.push((name, variance));
                if parser.peek() == Some(&Tok::Comma) {
                    parser.advance();
                } else {
                    break;
                }
            }
        }
        parser.expect(Tok::Semi)?;
    }
    parser.expect(Tok::RBrace)?;
    Ok(Alphabet::new(entries).expect("duplicates and empties ruled out above"))
}

/// choice level: `prefix ("+" prefix)*`, left-associative.
fn parse_proc(
    parser: &mut Parser,
    alphabet: &Alphabet,
    defs: &BTreeSet<String>,
) -> Result<ProcessTerm, ParseError> {
    let mut term = parse_prefix(parser, alphabet, defs)?;
    while parser.peek() == Some(&Tok::Plus) {
        parser.advance();
        let rhs = parse_prefix(parser, alphabet, defs)?;
        term = ProcessTerm::Choice(Box::new(term), Box::new(rhs));
    }
    Ok(term)
}

/// prefix level: `0`, `ACTION "." prefix`, `NAME`, `( proc )`.
fn parse_prefix(
    parser: &mut Parser,
    alphabet: &Alphabet,
    defs: &BTreeSet<String>,
) -> Result<ProcessTerm, ParseError> {
    match parser.peek() {
        Some(Tok::Zero) => {
            parser.advance();
            Ok(ProcessTerm::Nil)
        }
        Some(Tok::LParen) => {
            parser.advance();
            let term = parse_proc(parser, alphabet, defs)?;
            parser.expect(Tok::RParen)?;
            Ok(term)
        }
        Some(Tok::Ident(_)) => {
            let (name, line, col) = parser.expect_ident("a term")?;
            if parser.peek() == Some(&Tok::Dot) {
                if alphabet.action(&name).is_none() {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("undeclared action `{name}`"),
                    });
                }
                parser.advance(); // `.`
                let rest = parse_prefix(parser, alphabet, defs)?;
                Ok(ProcessTerm::Prefix(name, Box::new(rest)))
            } else {
                if !defs.contains(&name) {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!(
                            "undefined reference `{name}` (references target earlier definitions only)"
                        ),
                    });
                }
                Ok(ProcessTerm::Ref(name))
            }
        }
        _ => parser.fail("expected a process term"),
    }
}

/// Compiles definitions into states and moves. Each continuation point (the
/// definition root and every prefix target) becomes one state; references,
/// wherever they occur, reuse the referenced root. A choice contributes the
/// union of its operands' initial moves to the enclosing state.
struct Compiler {
    used: BTreeSet<String>,
    roots: BTreeMap<String, String>,
    states: Vec<String>,
    moves: BTreeMap<String, Vec<(String, String)>>,
}

impl Compiler {
    fn compile_def(&mut self, def: &str, term: &ProcessTerm) {
        let root = match term {
            ProcessTerm::Ref(name) => self.roots[name].clone(),
            _ => {
                let mut counter = 0u32;
                self.states.push(def.to_owned());
                let moves = self.initial_moves(term, def, &mut counter);
                self.moves.insert(def.to_owned(), moves);
                def.to_owned()
            }
        };
        self.roots.insert(def.to_owned(), root);
    }

    fn fresh(&mut self, def: &str, counter: &mut u32) -> String {
        loop {
            *counter += 1;
            let name = format!("{def}_{counter}");
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }

    fn continuation(&mut self, term: &ProcessTerm, def: &str, counter: &mut u32) -> String {
        match term {
            ProcessTerm::Ref(name) => self.roots[name].clone(),
            _ => {
                let state = self.fresh(def, counter);
                self.states.push(state.clone());
                let moves = self.initial_moves(term, def, counter);
                self.moves.insert(state.clone(), moves);
                state
            }
        }
    }

    fn initial_moves(
        &mut self,
        term: &ProcessTerm,
        def: &str,
        counter: &mut u32,
    ) -> Vec<(String, String)> {
        match term {
            ProcessTerm::Nil => Vec::new(),
            ProcessTerm::Prefix(action, rest) => {
                vec![(action.clone(), self.continuation(rest, def, counter))]
            }
            ProcessTerm::Choice(left, right) => {
                let mut moves = self.initial_moves(left, def, counter);
                moves.extend(self.initial_moves(right, def, counter));
                moves
            }
            // A reference used inside a choice copies the finalized moves of
            // the referenced root (the root itself would be unreachable from
            // the choice state).
            ProcessTerm::Ref(name) => {
                let root = self.roots[name].clone();
                self.moves.get(&root).cloned().unwrap_or_default()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// formulas

pub(super) fn parse_formula_text(text: &str, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    let mut parser = Parser::new(text)?;
    let formula = parse_or(&mut parser, alphabet)?;
    if parser.peek().is_some() {
        let found = parser.peek().expect("peeked").describe();
        return parser.fail(format!("unexpected {found} after the formula"));
    }
    Ok(formula)
}

fn parse_or(parser: &mut Parser, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    let mut parts = vec![parse_and(parser, alphabet)?];
    while parser.peek() == Some(&Tok::Pipe) {
        parser.advance();
        parts.push(parse_and(parser, alphabet)?);
    }
    Ok(Formula::or(parts))
}

fn parse_and(parser: &mut Parser, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    let mut parts = vec![parse_unary(parser, alphabet)?];
    while parser.peek() == Some(&Tok::Amp) {
        parser.advance();
        parts.push(parse_unary(parser, alphabet)?);
    }
    Ok(Formula::and(parts))
}

fn parse_unary(parser: &mut Parser, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    let modality = match parser.peek() {
        Some(Tok::Lt) => Some((Tok::Gt, 0u8)),
        Some(Tok::LBracket) => Some((Tok::RBracket, 1)),
        Some(Tok::LBrace) => Some((Tok::RBrace, 2)),
        _ => None,
    };
    if let Some((closing, kind)) = modality {
        parser.advance();
        let (name, line, col) = parser.expect_ident("an action name")?;
        let action = alphabet.action(&name).ok_or_else(|| ParseError {
            line,
            col,
            message: format!("undeclared action `{name}`"),
        })?;
        parser.expect(closing)?;
        let body = parse_unary(parser, alphabet)?;
        return Ok(match kind {
            0 => Formula::diamond(action, body),
            1 => Formula::boxed(action, body),
            _ => Formula::conf(action, body),
        });
    }
    match parser.peek() {
        Some(Tok::Ident(name)) if name == "tt" => {
            parser.advance();
            Ok(Formula::Tt)
        }
        Some(Tok::Ident(name)) if name == "ff" => {
            parser.advance();
            Ok(Formula::Ff)
        }
        Some(Tok::LParen) => {
            parser.advance();
            let inner = parse_or(parser, alphabet)?;
            parser.expect(Tok::RParen)?;
            Ok(inner)
        }
        _ => parser.fail("expected a formula"),
    }
}
