//! Shared cursor for the hand-rolled recursive-descent parsers.
//!
//! Both the formula grammar and the ordinal grammar are pure ASCII, so the
//! cursor works on bytes and error positions are byte offsets into the input.

use thiserror::Error;

/// Syntax error with the byte offset at which parsing failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

pub(crate) struct Cursor<'a> {
    input: &'a [u8],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        Cursor {
            input: text.as_bytes(),
            pos: 0,
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Peek the next byte after whitespace.
    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    /// Consume `b` if it is next (after whitespace).
    pub fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Consume the literal `s` if it is next (after whitespace). No partial consumption.
    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, b: u8, what: &str) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn error(&mut self, msg: impl Into<String>) -> ParseError {
        self.skip_ws();
        let msg = if self.pos >= self.input.len() {
            format!("{} (at end of input)", msg.into())
        } else {
            msg.into()
        };
        ParseError::new(self.pos, msg)
    }

    /// Parse a decimal natural number literal.
    pub fn nat(&mut self) -> Result<num_bigint::BigUint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}
