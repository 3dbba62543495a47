//! Directive sequences: eventually periodic sequences of substitution
//! indices, with the text grammar used by the CLI.
//!
//! The grammar accepts a finite prefix, an optional parenthesized period,
//! and `^` powers, e.g. `"1^3 2 3:(123)"` for the sequence
//! `11123 123 123 ...`. A bare `"(123)"` is purely periodic and a spec
//! without parentheses is a finite directive.

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectiveSequence {
    alphabet: Alphabet,
    prefix: Vec<Letter>,
    period: Vec<Letter>,
}

impl DirectiveSequence {
    pub fn new(alphabet: Alphabet, prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        for &c in prefix.iter().chain(&period) {
            alphabet.check_letter(c)?;
        }
        Ok(DirectiveSequence {
            alphabet,
            prefix,
            period,
        })
    }

    /// Parses the directive grammar. Whitespace is ignored everywhere.
    pub fn parse(spec: &str, alphabet: Alphabet) -> Result<Self> {
        Parser {
            bytes: spec.as_bytes(),
            pos: 0,
            alphabet,
        }
        .parse()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Total for every `m >= 0` when the period is nonempty; `None` past the
    /// end of a finite directive.
    pub fn letter_at(&self, m: usize) -> Option<Letter> {
        if m < self.prefix.len() {
            Some(self.prefix[m])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(m - self.prefix.len()) % self.period.len()])
        }
    }

    pub fn is_eventually_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// Number of letters available, `None` meaning unbounded.
    pub fn horizon(&self) -> Option<usize> {
        if self.period.is_empty() {
            Some(self.prefix.len())
        } else {
            None
        }
    }

    /// Valid as the directive of an Arnoux-Rauzy word: the period must
    /// contain every letter, so that every letter occurs infinitely often.
    pub fn is_valid(&self) -> bool {
        self.alphabet
            .letters()
            .all(|c| self.period.contains(&c))
    }

    pub fn check_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDirective {
                d: self.alphabet.size(),
            })
        }
    }

    /// The directive of the shifted word: drop the first `m` letters,
    /// rotating the period when the shift runs past the prefix.
    pub fn shift(&self, m: usize) -> DirectiveSequence {
        if m <= self.prefix.len() {
            return DirectiveSequence {
                alphabet: self.alphabet,
                prefix: self.prefix[m..].to_vec(),
                period: self.period.clone(),
            };
        }
        if self.period.is_empty() {
            return DirectiveSequence {
                alphabet: self.alphabet,
                prefix: Vec::new(),
                period: Vec::new(),
            };
        }
        let k = (m - self.prefix.len()) % self.period.len();
        let mut period = self.period[k..].to_vec();
        period.extend_from_slice(&self.period[..k]);
        DirectiveSequence {
            alphabet: self.alphabet,
            prefix: Vec::new(),
            period,
        }
    }

    /// Canonical text form, without power compression.
    pub fn to_spec(&self) -> String {
        let digits = |letters: &[Letter]| -> String {
            letters.iter().map(|c| (b'0' + c) as char).collect()
        };
        match (self.prefix.is_empty(), self.period.is_empty()) {
            (_, true) => digits(&self.prefix),
            (true, false) => format!("({})", digits(&self.period)),
            (false, false) => format!("{}:({})", digits(&self.prefix), digits(&self.period)),
        }
    }
}

impl std::fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_spec())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    alphabet: Alphabet,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<DirectiveSequence> {
        let prefix = self.blocks(true)?;
        let mut period = Vec::new();
        self.skip_ws();
        match self.peek() {
            Some(b':') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() != Some(b'(') {
                    return Err(self.err("expected '(' after ':'"));
                }
                period = self.parenthesized()?;
            }
            Some(b'(') => {
                period = self.parenthesized()?;
            }
            Some(other) => {
                return Err(self.err(&format!("unexpected character {:?}", other as char)));
            }
            None => {}
        }
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.err("trailing input after period"));
        }
        if prefix.is_empty() && period.is_empty() {
            return Err(self.err("empty directive"));
        }
        DirectiveSequence::new(self.alphabet, prefix, period)
    }

    fn parenthesized(&mut self) -> Result<Vec<Letter>> {
        debug_assert_eq!(self.peek(), Some(b'('));
        self.pos += 1;
        let blocks = self.blocks(false)?;
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.err("expected ')'"));
        }
        if blocks.is_empty() {
            return Err(self.err("empty period"));
        }
        self.pos += 1;
        Ok(blocks)
    }

    /// `block+` where `block := letter ['^' count]`. Stops at `:`, `(`, `)`.
    fn blocks(&mut self, top_level: bool) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let at = self.pos;
                    let letter = c - b'0';
                    self.pos += 1;
                    if !self.alphabet.contains(letter) {
                        return Err(Error::DirectiveSyntax {
                            position: at,
                            message: format!(
                                "letter {} exceeds alphabet 1..={}",
                                letter,
                                self.alphabet.size()
                            ),
                        });
                    }
                    let count = self.power()?;
                    out.extend(std::iter::repeat(letter).take(count));
                }
                Some(b':') | Some(b'(') if top_level => break,
                Some(b')') if !top_level => break,
                Some(other) => {
                    return Err(self.err(&format!("unexpected character {:?}", other as char)));
                }
                None => break,
            }
        }
        Ok(out)
    }

    fn power(&mut self) -> Result<usize> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected count after '^'"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let count: usize = text
            .parse()
            .map_err(|_| self.err_at(start, "count too large"))?;
        if count == 0 {
            return Err(self.err_at(start, "count must be >= 1"));
        }
        Ok(count)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: &str) -> Error {
        self.err_at(self.pos, message)
    }

    fn err_at(&self, position: usize, message: &str) -> Error {
        Error::DirectiveSyntax {
            position,
            message: message.to_string(),
        }
    }
}
