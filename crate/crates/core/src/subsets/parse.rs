//! Recursive-descent parser for the subset DSL.
//!
//! ```text
//! spec := term { "|" term }
//! term := INT "mod" INT | "kfree" INT INT | "all"
//! ```

use super::SubsetSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Int(&'a str),
    Word(&'a str),
    Bar,
}

#[derive(Debug, Clone)]
struct Spanned<'a> {
    token: Token<'a>,
    position: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned<'_>>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let token = if c == b'|' {
            i += 1;
            Token::Bar
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Token::Int(&text[start..i])
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            Token::Word(&text[start..i])
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(Error::Syntax { position: start, message: format!("unexpected character {ch:?}") });
        };
        tokens.push(Spanned { token, position: start });
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Spanned<'a>>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned<'a>> {
        self.tokens.get(self.pos)
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.position(), message: message.into() })
    }

    fn next(&mut self) -> Option<Spanned<'a>> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        match self.peek().map(|t| t.token.clone()) {
            Some(Token::Int(digits)) => {
                let value = digits
                    .parse::<u64>()
                    .or_else(|_| self.error(format!("{what} {digits} does not fit in 64 bits")))?;
                self.pos += 1;
                Ok(value)
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        match self.peek().map(|t| t.token.clone()) {
            Some(Token::Word(w)) if w.eq_ignore_ascii_case(word) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected '{word}'")),
        }
    }

    fn term(&mut self) -> Result<SubsetSpec> {
        match self.peek().map(|t| t.token.clone()) {
            Some(Token::Int(_)) => {
                let r = self.int("residue")?;
                self.keyword("mod")?;
                let t = self.int("modulus")?;
                SubsetSpec::progression(r, t)
            }
            Some(Token::Word(w)) if w.eq_ignore_ascii_case("kfree") => {
                self.next();
                let k = self.int("power")?;
                let n = self.int("prime bound")?;
                let k = u32::try_from(k).map_err(|_| Error::Semantic(format!("kfree power {k} is too large")))?;
                SubsetSpec::kfree(k, n)
            }
            Some(Token::Word(w)) if w.eq_ignore_ascii_case("all") => {
                self.next();
                Ok(SubsetSpec::AllPositive)
            }
            Some(_) => self.error("expected 'r mod t', 'kfree k N' or 'all'"),
            None => self.error("unexpected end of input"),
        }
    }

    fn spec(&mut self) -> Result<SubsetSpec> {
        let mut terms = vec![self.term()?];
        while let Some(t) = self.peek() {
            if t.token != Token::Bar {
                return self.error("expected '|' or end of input");
            }
            self.next();
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { SubsetSpec::UnionOf(terms) })
    }
}

/// Parse a subset description such as `"1 mod 2"`, `"kfree 2 5"` or
/// `"0 mod 4 | 3 mod 4"`.
pub fn parse(text: &str) -> Result<SubsetSpec> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len() };
    parser.spec()
}
