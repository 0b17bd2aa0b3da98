//! Parser for the formula grammar:
//!
//! ```text
//! formula := quant | disj
//! quant   := ("forall" | "exists") ident+ "." formula
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "~" unary | primary
//! primary := "(" formula ")" | quant
//!          | ident "(" ident ("," ident)* ")"
//!          | ident "=" ident | ident "!=" ident
//! ```
//!
//! Identifiers match `[A-Za-z][A-Za-z0-9_]*`; `#` starts a comment. A
//! quantifier's scope extends as far to the right as possible.

use crate::error::{Error, Result};
use crate::structure::Signature;

use super::formula::{Formula, Quantifier};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Not,
    Eq,
    Neq,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Not => "`~`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Neq => "`!=`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Token>, tok| {
                out.push(Token {
                    tok,
                    line: li + 1,
                    column,
                })
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => Tok::Ident(word),
                };
                push(&mut out, tok);
                continue;
            }
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '~' | '¬' => Tok::Not,
                '=' => Tok::Eq,
                '≠' => Tok::Neq,
                '∀' => Tok::Forall,
                '∃' => Tok::Exists,
                '!' if chars.get(i + 1) == Some(&'=') => {
                    i += 1;
                    Tok::Neq
                }
                _ => {
                    return Err(Error::Syntax {
                        line: li + 1,
                        column,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            push(&mut out, tok);
            i += 1;
        }
    }
    let (line, column) = out.last().map_or((1, 1), |t| (t.line, t.column + 1));
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!(
                "expected {}, found {}",
                describe(&want),
                describe(self.peek())
            )))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            other => {
                Err(self.error_here(format!("expected a variable, found {}", describe(&other))))
            }
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Forall | Tok::Exists => self.quant(),
            _ => self.disj(),
        }
    }

    fn quant(&mut self) -> Result<Formula> {
        let q = match self.next().tok {
            Tok::Forall => Quantifier::Forall,
            _ => Quantifier::Exists,
        };
        let mut vars = vec![self.ident()?];
        while let Tok::Ident(_) = self.peek() {
            vars.push(self.ident()?);
        }
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(vars
            .into_iter()
            .rev()
            .fold(body, |acc, v| Formula::quantify(q, v, acc)))
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Or {
            self.next();
            parts.push(self.conj()?);
        }
        Ok(Formula::or(parts))
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.next();
            parts.push(self.unary()?);
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::Not {
            self.next();
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Forall | Tok::Exists => self.quant(),
            Tok::Ident(name) => {
                self.next();
                match self.peek() {
                    Tok::LParen => {
                        self.next();
                        let mut args = vec![self.ident()?];
                        while *self.peek() == Tok::Comma {
                            self.next();
                            args.push(self.ident()?);
                        }
                        self.expect(Tok::RParen)?;
                        Ok(Formula::atom_owned(name, args))
                    }
                    Tok::Eq => {
                        self.next();
                        Ok(Formula::Eq(name, self.ident()?))
                    }
                    Tok::Neq => {
                        self.next();
                        Ok(Formula::Neq(name, self.ident()?))
                    }
                    other => Err(self.error_here(format!(
                        "expected `(`, `=` or `!=` after `{name}`, found {}",
                        describe(other)
                    ))),
                }
            }
            other => {
                Err(self.error_here(format!("expected a formula, found {}", describe(&other))))
            }
        }
    }
}

/// Parses a formula without checking it against a signature.
pub fn parse_formula_untyped(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here(format!("unexpected {}", describe(p.peek()))));
    }
    Ok(f)
}

/// Parses a formula and checks its atoms against `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let f = parse_formula_untyped(text)?;
    f.check(sig)?;
    Ok(f)
}
