//! Words over `{x0, x1}` and their text grammar.
//!
//! ```text
//! word := term*
//! term := atom ("^" int)?
//! atom := "x" digits | "X" digits | "(" word ")"
//! ```
//!
//! Whitespace and `*` separate terms. A capital `X` is the inverse letter, so
//! `X0^2` and `x0^-2` are the same word. Generators `x_i` for `i >= 2` are
//! expanded to `x0^(1-i) x1 x0^(i-1)` while parsing; the core alphabet only
//! has the four letters of [`Letter`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Upper bound on the number of letters a parsed word may expand to.
pub const MAX_EXPANDED_LETTERS: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X0,
    X0Inv,
    X1,
    X1Inv,
}

impl Letter {
    /// Deterministic iteration order used throughout: x0, x0^-1, x1, x1^-1.
    pub const ALL: [Letter; 4] = [Letter::X0, Letter::X0Inv, Letter::X1, Letter::X1Inv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::X0 => Letter::X0Inv,
            Letter::X0Inv => Letter::X0,
            Letter::X1 => Letter::X1Inv,
            Letter::X1Inv => Letter::X1,
        }
    }

    pub fn generator(self) -> u8 {
        match self {
            Letter::X0 | Letter::X0Inv => 0,
            Letter::X1 | Letter::X1Inv => 1,
        }
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Letter::X0Inv | Letter::X1Inv)
    }

    fn from_parts(generator: u8, inverse: bool) -> Letter {
        match (generator, inverse) {
            (0, false) => Letter::X0,
            (0, true) => Letter::X0Inv,
            (1, false) => Letter::X1,
            _ => Letter::X1Inv,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X0 => "x0",
            Letter::X0Inv => "x0^-1",
            Letter::X1 => "x1",
            Letter::X1Inv => "x1^-1",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("higher generator x{0} needs an index of at least 2")]
    Domain(u64),
    #[error("word expands to more than {MAX_EXPANDED_LETTERS} letters")]
    TooLong,
}

/// A finite sequence of letters. As an element it is the product of its
/// letters, so it acts on a vertex by applying the rightmost letter first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn new() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    /// The formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    /// `letter^exp`, with negative exponents giving the inverse letter.
    pub fn power(letter: Letter, exp: i64) -> GroupWord {
        let l = if exp < 0 { letter.inverse() } else { letter };
        GroupWord(vec![l; exp.unsigned_abs() as usize])
    }

    /// Cancel adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl From<Vec<Letter>> for GroupWord {
    fn from(v: Vec<Letter>) -> Self {
        GroupWord(v)
    }
}

impl FromIterator<Letter> for GroupWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        GroupWord(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a GroupWord {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// `x_i = x0^(1-i) x1 x0^(i-1)`.
pub fn expand_higher_generator(i: u64) -> Result<GroupWord, WordError> {
    if i < 2 {
        return Err(WordError::Domain(i));
    }
    if 2 * i > MAX_EXPANDED_LETTERS as u64 {
        return Err(WordError::TooLong);
    }
    let shift = (i - 1) as i64;
    let mut w = GroupWord::power(Letter::X0, -shift);
    w.push(Letter::X1);
    Ok(w.concat(&GroupWord::power(Letter::X0, shift)))
}

/// Format with exponent runs, e.g. `x0^-2 x1 x0^3 x1^-2`. The empty word
/// formats as the empty string.
pub fn format_word(w: &GroupWord) -> String {
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let run = (j - i) as i64;
        let exp = if l.is_inverse() { -run } else { run };
        let g = l.generator();
        parts.push(if exp == 1 {
            format!("x{g}")
        } else {
            format!("x{g}^{exp}")
        });
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

pub fn parse_word(text: &str) -> Result<GroupWord, WordError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let w = p.word()?;
    p.skip_separators();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(w)
}

impl FromStr for GroupWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> WordError {
        WordError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace() || c == b'*') {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<GroupWord, WordError> {
        let mut out = GroupWord::new();
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(b')') => return Ok(out),
                _ => {
                    let t = self.term()?;
                    if out.len() + t.len() > MAX_EXPANDED_LETTERS {
                        return Err(WordError::TooLong);
                    }
                    out.0.extend(t.0);
                }
            }
        }
    }

    fn term(&mut self) -> Result<GroupWord, WordError> {
        let base = self.atom()?;
        self.skip_whitespace();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_whitespace();
        let exp = self.int()?;
        let reps = exp.unsigned_abs();
        if reps.saturating_mul(base.len() as u64) > MAX_EXPANDED_LETTERS as u64 {
            return Err(WordError::TooLong);
        }
        let unit = if exp < 0 { base.inverse() } else { base };
        let mut out = Vec::with_capacity(unit.len() * reps as usize);
        for _ in 0..reps {
            out.extend_from_slice(&unit.0);
        }
        Ok(GroupWord(out))
    }

    fn skip_whitespace(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<GroupWord, WordError> {
        match self.peek() {
            Some(c @ (b'x' | b'X')) => {
                self.pos += 1;
                let start = self.pos;
                let idx = self.digits()?;
                let inverse = c == b'X';
                let w = match idx {
                    0 | 1 => GroupWord(vec![Letter::from_parts(idx as u8, inverse)]),
                    i => {
                        let w = expand_higher_generator(i).map_err(|e| match e {
                            WordError::TooLong => WordError::TooLong,
                            _ => WordError::Syntax { pos: start, msg: e.to_string() },
                        })?;
                        if inverse {
                            w.inverse()
                        } else {
                            w
                        }
                    }
                };
                Ok(w)
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(WordError::Syntax {
                        pos: open,
                        msg: "unclosed '('".into(),
                    });
                }
                self.pos += 1;
                Ok(w)
            }
            Some(c) => Err(self.error(format!("expected generator or '(', found '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<u64, WordError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| WordError::Syntax { pos: start, msg: "number too large".into() })
    }

    fn int(&mut self) -> Result<i64, WordError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let v = self.digits()?;
        let v = i64::try_from(v)
            .map_err(|_| WordError::Syntax { pos: start, msg: "exponent too large".into() })?;
        Ok(if negative { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn w(text: &str) -> GroupWord {
        parse_word(text).unwrap()
    }

    #[test]
    fn exponents_expand() {
        let parsed = w("x0^-2 x1 x0^3 x1^-2");
        assert_eq!(parsed.len(), 8);
        assert_eq!(
            parsed.letters(),
            &[X0Inv, X0Inv, X1, X0, X0, X0, X1Inv, X1Inv]
        );
        assert_eq!(w("x0^-2"), w("X0^2"));
        assert_eq!(w("x0^0"), GroupWord::new());
        assert_eq!(w("x1^+2"), w("x1 x1"));
    }

    #[test]
    fn higher_generators() {
        assert_eq!(w("x2"), w("x0^-1 x1 x0"));
        assert_eq!(expand_higher_generator(2).unwrap(), w("x0^-1 x1 x0"));
        assert_eq!(expand_higher_generator(3).unwrap(), w("x0^-2 x1 x0^2"));
        assert_eq!(w("X3"), w("x0^-2 x1^-1 x0^2"));
        assert_eq!(expand_higher_generator(1), Err(WordError::Domain(1)));
        assert_eq!(expand_higher_generator(0), Err(WordError::Domain(0)));
    }

    #[test]
    fn groups_and_separators() {
        assert_eq!(w("(x1 x0^3) (x1^-1 x0^-2)").len(), 7);
        assert_eq!(w("x0*x1 * x0"), w("x0 x1 x0"));
        assert_eq!(w("(x0 x1)^-1"), w("x1^-1 x0^-1"));
        assert_eq!(w("(x0 (x1)^2)^2").len(), 6);
        assert_eq!(w(""), GroupWord::new());
        assert_eq!(w("  "), GroupWord::new());
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(parse_word("x0 y1"), Err(WordError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_word("x"), Err(WordError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_word("(x0"), Err(WordError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_word("x0)"), Err(WordError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_word("x0^"), Err(WordError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_word("x0^99999999999"), Err(WordError::TooLong)));
    }

    #[test]
    fn format_runs() {
        assert_eq!(format_word(&w("X0 X0 x1 x0 x0 x0 X1 X1")), "x0^-2 x1 x0^3 x1^-2");
        assert_eq!(format_word(&GroupWord::new()), "");
        assert_eq!(format_word(&w("X1")), "x1^-1");
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w("x0 x1 X1 X0 x1").free_reduce(), w("x1"));
        assert_eq!(w("x0 x1").inverse(), w("X1 X0"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn letters() -> impl Strategy<Value = GroupWord> {
            proptest::collection::vec(proptest::sample::select(Letter::ALL.to_vec()), 0..40)
                .prop_map(GroupWord::from)
        }

        proptest! {
            #[test]
            fn format_parse_round_trip(word in letters()) {
                prop_assert_eq!(parse_word(&format_word(&word)).unwrap(), word);
            }

            #[test]
            fn inverse_involution(word in letters()) {
                prop_assert_eq!(word.inverse().inverse(), word.clone());
                prop_assert!(word.concat(&word.inverse()).free_reduce().is_empty());
            }
        }
    }
}
