//! LTL formulas: parsing, printing and negation normal form.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! formula := or (("->" | "<->") formula)?        right associative
//! or      := and ("|" and)*                       left associative
//! and     := binary ("&" binary)*                 left associative
//! binary  := unary (("U" | "R") binary)?          right associative
//! unary   := ("!" | "X" | "G" | "F") unary
//!          | "true" | "false" | atom | "(" formula ")"
//! atom    := [a-z][A-Za-z0-9_]*
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Always(Box<Formula>),
    Eventually(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Next(Box::new(f))
    }

    pub fn always(f: Formula) -> Formula {
        Always(Box::new(f))
    }

    pub fn eventually(f: Formula) -> Formula {
        Eventually(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        Release(Box::new(a), Box::new(b))
    }

    /// An atom or a negated atom.
    pub fn is_literal(&self) -> bool {
        match self {
            Atom(_) => true,
            Not(inner) => matches!(**inner, Atom(_)),
            _ => false,
        }
    }

    /// Negation only directly above atoms; no constants below the root, no
    /// implications or equivalences.
    pub fn is_nnf(&self) -> bool {
        match self {
            True | False => true,
            _ => self.is_nnf_body(),
        }
    }

    fn is_nnf_body(&self) -> bool {
        match self {
            True | False | Implies(..) | Iff(..) => false,
            Atom(_) => true,
            Not(inner) => matches!(**inner, Atom(_)),
            Next(a) | Always(a) | Eventually(a) => a.is_nnf_body(),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => a.is_nnf_body() && b.is_nnf_body(),
        }
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        fn walk(f: &Formula, out: &mut Vec<String>) {
            match f {
                True | False => {}
                Atom(name) => {
                    if !out.contains(name) {
                        out.push(name.clone());
                    }
                }
                Not(a) | Next(a) | Always(a) | Eventually(a) => walk(a, out),
                And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Until(a, b) | Release(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// Number of nodes in the syntax tree.
pub fn node_count(f: &Formula) -> usize {
    match f {
        True | False | Atom(_) => 1,
        Not(a) | Next(a) | Always(a) | Eventually(a) => 1 + node_count(a),
        And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Until(a, b) | Release(a, b) => {
            1 + node_count(a) + node_count(b)
        }
    }
}

/// Fully parenthesized text: every operand that is not an atom or a
/// constant is wrapped in parentheses.
pub fn render(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(inner: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match inner {
                True | False | Atom(_) => write!(f, "{inner}"),
                _ => write!(f, "({inner})"),
            }
        }
        let (op, a, b) = match self {
            True => return write!(f, "true"),
            False => return write!(f, "false"),
            Atom(name) => return write!(f, "{name}"),
            Not(a) => ("!", a, None),
            Next(a) => ("X", a, None),
            Always(a) => ("G", a, None),
            Eventually(a) => ("F", a, None),
            And(a, b) => ("&", a, Some(b)),
            Or(a, b) => ("|", a, Some(b)),
            Implies(a, b) => ("->", a, Some(b)),
            Iff(a, b) => ("<->", a, Some(b)),
            Until(a, b) => ("U", a, Some(b)),
            Release(a, b) => ("R", a, Some(b)),
        };
        match b {
            None => {
                write!(f, "{op} ")?;
                operand(a, f)
            }
            Some(b) => {
                operand(a, f)?;
                write!(f, " {op} ")?;
                operand(b, f)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Always,
    Eventually,
    Until,
    Release,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("atom `{name}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Next => "`X`".into(),
            Tok::Always => "`G`".into(),
            Tok::Eventually => "`F`".into(),
            Tok::Until => "`U`".into(),
            Tok::Release => "`R`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let err = |line, column, found: String| ParseError {
        line,
        column,
        expected: vec!["a formula token".into()],
        found,
    };
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = match c {
            '!' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Implies, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => (Tok::Iff, 3),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "X" => Tok::Next,
                    "G" => Tok::Always,
                    "F" => Tok::Eventually,
                    "U" => Tok::Until,
                    "R" => Tok::Release,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    w if w.starts_with(|ch: char| ch.is_ascii_lowercase()) => Tok::Ident(word.clone()),
                    _ => return Err(err(start_line, start_col, format!("`{word}`"))),
                };
                (tok, j - i)
            }
            other => return Err(err(start_line, start_col, format!("`{other}`"))),
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let at = &self.toks[self.pos];
        ParseError {
            line: at.line,
            column: at.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: at.tok.describe(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        match self.peek() {
            Tok::Implies => {
                self.bump();
                Ok(Formula::implies(lhs, self.formula()?))
            }
            Tok::Iff => {
                self.bump();
                Ok(Formula::iff(lhs, self.formula()?))
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.binary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.binary()?);
        }
        Ok(lhs)
    }

    fn binary(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                self.bump();
                Ok(Formula::until(lhs, self.binary()?))
            }
            Tok::Release => {
                self.bump();
                Ok(Formula::release(lhs, self.binary()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Next => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Always => {
                self.bump();
                Ok(Formula::always(self.unary()?))
            }
            Tok::Eventually => {
                self.bump();
                Ok(Formula::eventually(self.unary()?))
            }
            Tok::True => {
                self.bump();
                Ok(True)
            }
            Tok::False => {
                self.bump();
                Ok(False)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Atom(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&["atom", "`true`", "`false`", "`(`", "unary operator"])),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.formula()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error(&["binary operator", "end of input"]));
    }
    Ok(f)
}

/// Negation normal form with implications and equivalences expanded and
/// constants simplified away. The result is either `true`, `false`, or a
/// constant-free formula with negation only above atoms.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, true)
}

fn nnf(f: &Formula, positive: bool) -> Formula {
    match (f, positive) {
        (True, true) | (False, false) => True,
        (True, false) | (False, true) => False,
        (Atom(_), true) => f.clone(),
        (Atom(_), false) => Formula::not(f.clone()),
        (Not(a), _) => nnf(a, !positive),
        (And(a, b), true) | (Or(a, b), false) => mk_and(nnf(a, positive), nnf(b, positive)),
        (Or(a, b), true) | (And(a, b), false) => mk_or(nnf(a, positive), nnf(b, positive)),
        // a -> b == !a | b
        (Implies(a, b), true) => mk_or(nnf(a, false), nnf(b, true)),
        (Implies(a, b), false) => mk_and(nnf(a, true), nnf(b, false)),
        // a <-> b == (!a | b) & (!b | a)
        (Iff(a, b), true) => mk_and(mk_or(nnf(a, false), nnf(b, true)), mk_or(nnf(b, false), nnf(a, true))),
        (Iff(a, b), false) => mk_or(mk_and(nnf(a, true), nnf(b, false)), mk_and(nnf(b, true), nnf(a, false))),
        (Next(a), _) => mk_next(nnf(a, positive)),
        (Always(a), true) | (Eventually(a), false) => mk_always(nnf(a, positive)),
        (Eventually(a), true) | (Always(a), false) => mk_eventually(nnf(a, positive)),
        (Until(a, b), true) | (Release(a, b), false) => mk_until(nnf(a, positive), nnf(b, positive)),
        (Release(a, b), true) | (Until(a, b), false) => mk_release(nnf(a, positive), nnf(b, positive)),
    }
}

fn mk_and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (False, _) | (_, False) => False,
        (True, x) | (x, True) => x,
        (a, b) => Formula::and(a, b),
    }
}

fn mk_or(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (True, _) | (_, True) => True,
        (False, x) | (x, False) => x,
        (a, b) => Formula::or(a, b),
    }
}

fn mk_next(a: Formula) -> Formula {
    match a {
        True | False => a,
        a => Formula::next(a),
    }
}

fn mk_always(a: Formula) -> Formula {
    match a {
        True | False => a,
        a => Formula::always(a),
    }
}

fn mk_eventually(a: Formula) -> Formula {
    match a {
        True | False => a,
        a => Formula::eventually(a),
    }
}

fn mk_until(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (_, True) => True,
        (_, False) => False,
        (True, b) => mk_eventually(b),
        (False, b) => b,
        (a, b) => Formula::until(a, b),
    }
}

fn mk_release(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (_, True) => True,
        (_, False) => False,
        (True, b) => b,
        (False, b) => mk_always(b),
        (a, b) => Formula::release(a, b),
    }
}
