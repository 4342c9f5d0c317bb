//! Concrete syntax for types and terms.
//!
//! Types: `0`, numerals `n`, bracket lists `[A,B,...]` with `A^k` for `k`
//! copies, and right-associative arrows `A -> B`.
//! Terms: `\x:T. M`, application by juxtaposition, parentheses and
//! identifiers `[A-Za-z][A-Za-z0-9_]*`. Unbound identifiers become context
//! variables.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::term::{Name, Term};
use crate::types::SimpleType;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Lambda,
    Colon,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Caret,
    Arrow,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '\\' | 'λ' => toks.push((off, Tok::Lambda)),
            ':' => toks.push((off, Tok::Colon)),
            '.' => toks.push((off, Tok::Dot)),
            '(' => toks.push((off, Tok::LParen)),
            ')' => toks.push((off, Tok::RParen)),
            '[' => toks.push((off, Tok::LBracket)),
            ']' => toks.push((off, Tok::RBracket)),
            ',' => toks.push((off, Tok::Comma)),
            '^' => toks.push((off, Tok::Caret)),
            '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                toks.push((off, Tok::Arrow));
                i += 2;
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().map(|p| p.1).collect();
                let n = text.parse().map_err(|_| ParseError {
                    offset: off,
                    message: format!("numeral `{text}` out of range"),
                })?;
                toks.push((off, Tok::Num(n)));
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                toks.push((off, Tok::Ident(chars[i..j].iter().map(|p| p.1).collect())));
                i = j;
                continue;
            }
            other => {
                return Err(ParseError {
                    offset: off,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(Lexer {
        toks,
        pos: 0,
        len: src.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|p| &p.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |p| p.0)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|p| p.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn ty(&mut self) -> Result<SimpleType, ParseError> {
        let from = self.ty_atom()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let to = self.ty()?;
            Ok(SimpleType::arrow(from, &to))
        } else {
            Ok(from)
        }
    }

    fn ty_atom(&mut self) -> Result<SimpleType, ParseError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(SimpleType::nat(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let mut cs = Vec::new();
                if self.peek() != Some(&Tok::RBracket) {
                    loop {
                        let c = self.ty()?;
                        if self.peek() == Some(&Tok::Caret) {
                            self.pos += 1;
                            match self.next() {
                                Some(Tok::Num(k)) => cs.extend(std::iter::repeat_n(c, k)),
                                _ => {
                                    self.pos -= 1;
                                    return self.error("expected a repetition count after `^`");
                                }
                            }
                        } else {
                            cs.push(c);
                        }
                        if self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBracket, "`]`")?;
                Ok(SimpleType::new(cs))
            }
            _ => self.error("expected a type"),
        }
    }

    fn term(&mut self, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        if self.peek() == Some(&Tok::Lambda) {
            return self.lambda(scope);
        }
        let mut t = match self.term_atom(scope)? {
            Some(t) => t,
            None => return self.error("expected a term"),
        };
        loop {
            if self.peek() == Some(&Tok::Lambda) {
                let arg = self.lambda(scope)?;
                return Ok(Term::app(t, arg));
            }
            match self.term_atom(scope)? {
                Some(arg) => t = Term::app(t, arg),
                None => return Ok(t),
            }
        }
    }

    fn lambda(&mut self, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        self.expect(Tok::Lambda, "`\\`")?;
        let name = match self.next() {
            Some(Tok::Ident(s)) => s,
            _ => {
                self.pos -= 1;
                return self.error("expected a binder name");
            }
        };
        self.expect(Tok::Colon, "`:`")?;
        let ty = self.ty()?;
        self.expect(Tok::Dot, "`.`")?;
        scope.push(name);
        let body = self.term(scope);
        scope.pop();
        Ok(Term::Lam(ty, std::sync::Arc::new(body?)))
    }

    fn term_atom(&mut self, scope: &mut Vec<String>) -> Result<Option<Term>, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                let t = match scope.iter().rev().position(|b| *b == s) {
                    Some(i) => Term::Bound(i as u32),
                    None => Term::Free(Name::from(s)),
                };
                Ok(Some(t))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term(scope)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Some(t))
            }
            _ => Ok(None),
        }
    }
}

pub fn parse_type(src: &str) -> Result<SimpleType, ParseError> {
    let mut lx = lex(src)?;
    let t = lx.ty()?;
    lx.finish()?;
    Ok(t)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut lx = lex(src)?;
    let t = lx.term(&mut Vec::new())?;
    lx.finish()?;
    Ok(t)
}

/// Prints with binders named `x0, x1, ...` by depth, skipping any name
/// that is also a free variable of the term.
pub fn print_term(t: &Term) -> String {
    let free: BTreeSet<String> = t.free_names().iter().map(|n| n.to_string()).collect();
    let mut out = String::new();
    let mut names = Vec::new();
    write_term(t, &free, &mut names, &mut out, false);
    out
}

fn binder_name(depth: usize, free: &BTreeSet<String>) -> String {
    let mut name = format!("x{depth}");
    while free.contains(&name) {
        name.push('_');
    }
    name
}

fn write_term(t: &Term, free: &BTreeSet<String>, names: &mut Vec<String>, out: &mut String, arg: bool) {
    match t {
        Term::Bound(i) => match names.len().checked_sub(1 + *i as usize) {
            Some(k) => out.push_str(&names[k]),
            None => {
                let _ = write!(out, "#{i}");
            }
        },
        Term::Free(n) => out.push_str(n.as_str()),
        Term::Lam(ty, b) => {
            if arg {
                out.push('(');
            }
            let name = binder_name(names.len(), free);
            let _ = write!(out, "\\{name}:{ty}. ");
            names.push(name);
            write_term(b, free, names, out, false);
            names.pop();
            if arg {
                out.push(')');
            }
        }
        Term::App(..) => {
            if arg {
                out.push('(');
            }
            let (head, args) = t.spine();
            write_term(head, free, names, out, true);
            for a in args {
                out.push(' ');
                write_term(a, free, names, out, true);
            }
            if arg {
                out.push(')');
            }
        }
    }
}
