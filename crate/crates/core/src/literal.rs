//! Element literals: integers, tuples `(a,b)` and bracketed lists `[[a,b],[0,c]]`.
//!
//! Literals are untyped; each ring interprets them against its own encoding.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Literal {
    Int(i64),
    Tuple(Vec<Literal>),
    List(Vec<Literal>),
}

impl Literal {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Literal::Int(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, items: &[Literal]) -> fmt::Result {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{item}")?;
            }
            Ok(())
        }
        match self {
            Literal::Int(v) => write!(f, "{v}"),
            Literal::Tuple(items) => {
                f.write_str("(")?;
                join(f, items)?;
                f.write_str(")")
            }
            Literal::List(items) => {
                f.write_str("[")?;
                join(f, items)?;
                f.write_str("]")
            }
        }
    }
}

/// Character cursor over whitespace-stripped input that remembers original offsets.
#[derive(Debug, Clone)]
pub(crate) struct Cursor {
    chars: Vec<(char, usize)>,
    spaced: Vec<bool>,
    at: usize,
    end_pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Self {
        let mut chars = Vec::new();
        let mut spaced = Vec::new();
        let mut gap = false;
        for (i, c) in text.char_indices() {
            if c.is_whitespace() {
                gap = true;
            } else if !is_invisible(c) {
                chars.push((c, i));
                spaced.push(gap);
                gap = false;
            }
        }
        Cursor {
            chars,
            spaced,
            at: 0,
            end_pos: text.len(),
        }
    }

    pub(crate) fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end_pos, |&(_, p)| p)
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(c, _)| c)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.at >= self.chars.len()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        if self.at + n > self.chars.len() {
            return false;
        }
        let matches = kw
            .chars()
            .zip(&self.chars[self.at..self.at + n])
            .all(|(a, &(b, _))| a == b);
        if matches {
            self.at += n;
        }
        matches
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> Error {
        let mut msg = msg.into();
        match self.peek() {
            Some(c) => msg.push_str(&format!(", found `{c}`")),
            None => msg.push_str(", found end of input"),
        }
        Error::Syntax {
            pos: self.pos(),
            msg,
        }
    }

    pub(crate) fn unsigned(&mut self) -> Result<u64> {
        let start = self.at;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            // Whitespace ends a number rather than being skipped inside it.
            if self.at > start && self.spaced[self.at] {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| self.error("integer too large"))?;
            self.at += 1;
        }
        if self.at == start {
            return Err(self.error("expected an integer"));
        }
        Ok(value)
    }

    pub(crate) fn name(&mut self) -> Result<String> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.' {
                out.push(c);
                self.at += 1;
            } else {
                break;
            }
        }
        if out.is_empty() {
            return Err(self.error("expected a name"));
        }
        Ok(out)
    }

    pub(crate) fn literal(&mut self) -> Result<Literal> {
        match self.peek() {
            Some('(') | Some('[') => {
                let open = self.bump().unwrap();
                let close = if open == '(' { ')' } else { ']' };
                let mut items = vec![self.literal()?];
                while self.eat(',') {
                    items.push(self.literal()?);
                }
                self.expect(close)?;
                Ok(if open == '(' {
                    Literal::Tuple(items)
                } else {
                    Literal::List(items)
                })
            }
            _ => {
                let negative = self.eat('-');
                let v = self.unsigned()?;
                let v = i64::try_from(v).map_err(|_| self.error("integer too large"))?;
                Ok(Literal::Int(if negative { -v } else { v }))
            }
        }
    }
}

fn is_invisible(c: char) -> bool {
    matches!(c, '\u{200B}' | '\u{200C}' | '\u{200D}' | '\u{FEFF}')
}

/// Parses a single element literal.
pub fn parse_literal(text: &str) -> Result<Literal> {
    let mut cur = Cursor::new(text);
    let lit = cur.literal()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after element"));
    }
    Ok(lit)
}

/// Parses a comma-separated list of element literals; empty input yields no literals.
pub fn parse_literal_list(text: &str) -> Result<Vec<Literal>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    out.push(cur.literal()?);
    while cur.eat(',') {
        out.push(cur.literal()?);
    }
    if !cur.at_end() {
        return Err(cur.error("expected `,` between elements"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_literals() {
        let lit = parse_literal("[[1, -1], [0, (2,3)]]").unwrap();
        assert_eq!(lit.to_string(), "[[1,-1],[0,(2,3)]]");
    }

    #[test]
    fn list_splits_only_top_level_commas() {
        let lits = parse_literal_list("(1,0), [[0,1],[0,0]], 3").unwrap();
        assert_eq!(lits.len(), 3);
        assert!(parse_literal_list("  ").unwrap().is_empty());
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_literal("(1,,2)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_literal("1 2").is_err());
    }
}
