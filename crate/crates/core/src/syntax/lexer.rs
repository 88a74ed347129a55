//! Tokenizer shared by the model-file and formula grammars. `#` starts a
//! line comment; whitespace is free.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Zero,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Semi,
    Comma,
    Colon,
    Eq,
    Plus,
    Dot,
    Dash,
    Arrow,
    Amp,
    Pipe,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("`{name}`"),
            Tok::Zero => "`0`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Dash => "`-`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
}

pub(crate) fn lex(text: &str) -> Result<(Vec<Token>, (u32, u32)), ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();

    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Token { tok: Tok::Ident(name), line: tok_line, col: tok_col });
            }
            '0' => {
                chars.next();
                col += 1;
                if let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        return Err(ParseError {
                            line: tok_line,
                            col: tok_col,
                            message: "`0` is the only literal; names must start with a letter or `_`".into(),
                        });
                    }
                }
                tokens.push(Token { tok: Tok::Zero, line: tok_line, col: tok_col });
            }
            '-' => {
                chars.next();
                col += 1;
                let tok = if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    Tok::Arrow
                } else {
                    Tok::Dash
                };
                tokens.push(Token { tok, line: tok_line, col: tok_col });
            }
            _ => {
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    '=' => Tok::Eq,
                    '+' => Tok::Plus,
                    '.' => Tok::Dot,
                    '&' => Tok::Amp,
                    '|' => Tok::Pipe,
                    other => {
                        return Err(ParseError {
                            line: tok_line,
                            col: tok_col,
                            message: format!("unexpected character `{other}`"),
                        })
                    }
                };
                chars.next();
                col += 1;
                tokens.push(Token { tok, line: tok_line, col: tok_col });
            }
        }
    }
    Ok((tokens, (line, col)))
}
