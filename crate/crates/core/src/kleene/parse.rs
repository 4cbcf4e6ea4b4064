//! Recursive-descent parser.
//!
//! ```text
//! or   := and ('|' and)*
//! and  := not ('&' not)*
//! not  := '!' not | atom
//! atom := 'p' digits | '0' | '1' | 'n' | '(' or ')'
//! ```

use super::Formula;
use crate::error::{Error, Result};

/// Parses `text` as a formula whose variables must lie in `p1..p{arity}`.
pub fn parse(text: &str, arity: usize) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, arity };
    let f = p.or()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.not()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            lhs = Formula::and(lhs, self.not()?);
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Formula> {
        if self.peek() == Some(b'!') {
            self.pos += 1;
            return Ok(Formula::not(self.not()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        let start = self.pos;
        self.pos += 1;
        match c {
            b'0' => Ok(Formula::Zero),
            b'1' => Ok(Formula::One),
            b'n' => Ok(Formula::Neutral),
            b'(' => {
                let f = self.or()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            b'p' => {
                let digits = self.src[self.pos..].iter().take_while(|b| b.is_ascii_digit()).count();
                if digits == 0 {
                    return Err(self.error("expected variable index after `p`"));
                }
                let text = std::str::from_utf8(&self.src[self.pos..self.pos + digits]).expect("ascii digits");
                self.pos += digits;
                let index: usize = text
                    .parse()
                    .map_err(|_| Error::Syntax { pos: start, msg: "variable index too large".into() })?;
                if index == 0 {
                    return Err(Error::Syntax { pos: start, msg: "variables start at p1".into() });
                }
                if index > self.arity {
                    return Err(Error::VarOutOfRange { index, arity: self.arity });
                }
                Ok(Formula::Var(index))
            }
            other => {
                self.pos = start;
                Err(self.error(format!("unexpected `{}`", other as char)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula as F;

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("p1 & !p2", 2).unwrap(), F::and(F::var(1), F::not(F::var(2))));
        assert_eq!(parse("p1 | p2 & p3", 3).unwrap(), F::or(F::var(1), F::and(F::var(2), F::var(3))));
        assert!(matches!(parse("p3", 2), Err(Error::VarOutOfRange { index: 3, arity: 2 })));
    }

    #[test]
    fn associativity_and_constants() {
        assert_eq!(parse("p1 & p2 & p1", 2).unwrap(), F::and(F::and(F::var(1), F::var(2)), F::var(1)));
        assert_eq!(
            parse(" !!( 1|n ) |0", 0).unwrap(),
            F::or(F::not(F::not(F::or(F::One, F::Neutral))), F::Zero)
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(parse("p1 & ", 1), Err(Error::Syntax { pos: 5, msg: "unexpected end of input".into() }));
        assert!(matches!(parse("(p1", 1), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("p1 p1", 1), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("p0", 1), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("q", 1), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("p", 1), Err(Error::Syntax { pos: 1, .. })));
    }

    #[test]
    fn display_parses_back() {
        for s in ["p1 & (p2 | p3)", "p1 & (p2 & p3)", "!(p1 | n)", "(p1 | p2) | p3", "p1 | (p2 | p3)"] {
            let f = parse(s, 3).unwrap();
            assert_eq!(parse(&f.to_string(), 3).unwrap(), f, "{s}");
        }
        assert_eq!(parse("p1 | (p2 | p3)", 3).unwrap().to_string(), "p1 | (p2 | p3)");
        assert_eq!(parse("(p1 | p2) | p3", 3).unwrap().to_string(), "p1 | p2 | p3");
    }
}
