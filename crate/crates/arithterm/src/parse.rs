//! Parser for the canonical term syntax.
//!
//! Grammar (byte-exact, single spaces):
//! `term := NAT | "(var" SP INDEX ")" | "(" OP SP term SP term ")" | "(hw" SP term ")"`
//! with `OP` one of `+ monus div pow * mod max gcd`, and `NAT` a decimal
//! natural with no leading zeros except `"0"` itself.

use num_bigint::BigUint;

use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown operator `{name}` at byte {pos}")]
    UnknownOperator { pos: usize, name: String },
}

// Far deeper than any real term (the compiled counters stay around depth
// 100) while comfortably inside a test thread's stack for the recursive
// descent.
const MAX_DEPTH: usize = 2_000;

pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let bytes = input.as_bytes();
    let mut p = Parser {
        bytes,
        pos: 0,
        depth: 0,
    };
    let t = p.term()?;
    if p.pos != bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("term is nested too deeply"));
        }
        let t = match self.peek() {
            Some(b'(') => self.compound(),
            Some(c) if c.is_ascii_digit() => Ok(Term::nat(self.natural()?)),
            Some(c) => Err(self.err(&format!("expected term, found `{}`", c as char))),
            None => Err(self.err("expected term, found end of input")),
        };
        self.depth -= 1;
        t
    }

    fn natural(&mut self) -> Result<BigUint, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.bytes[start..self.pos];
        if digits.is_empty() {
            return Err(self.err("expected a decimal natural"));
        }
        if digits.len() > 1 && digits[0] == b'0' {
            return Err(ParseError::Syntax {
                pos: start,
                msg: "leading zero".to_string(),
            });
        }
        Ok(BigUint::parse_bytes(digits, 10).expect("digits are ascii decimal"))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let n = self.natural()?;
        use num_traits::ToPrimitive;
        n.to_usize().ok_or(ParseError::Syntax {
            pos: start,
            msg: "variable index too large".to_string(),
        })
    }

    fn compound(&mut self) -> Result<Term, ParseError> {
        self.expect(b'(')?;
        let name_start = self.pos;
        while matches!(self.peek(), Some(c) if c != b' ' && c != b'(' && c != b')') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[name_start..self.pos])
            .map_err(|_| self.err("operator name is not utf-8"))?
            .to_string();
        self.expect(b' ')?;
        let t = match name.as_str() {
            "var" => Term::var(self.index()?),
            "hw" => Term::hw(self.term()?),
            "+" | "monus" | "div" | "pow" | "*" | "mod" | "max" | "gcd" => {
                let a = self.term()?;
                self.expect(b' ')?;
                let b = self.term()?;
                match name.as_str() {
                    "+" => Term::add(a, b),
                    "monus" => Term::monus(a, b),
                    "div" => Term::div(a, b),
                    "pow" => Term::pow(a, b),
                    "*" => Term::mul(a, b),
                    "mod" => Term::modulo(a, b),
                    "max" => Term::max(a, b),
                    "gcd" => Term::gcd(a, b),
                    _ => unreachable!(),
                }
            }
            _ => {
                return Err(ParseError::UnknownOperator {
                    pos: name_start,
                    name,
                })
            }
        };
        self.expect(b')')?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse_term("(+ (var 0) 1)").unwrap(),
            Term::add(Term::var(0), Term::nat(1u32))
        );
        assert_eq!(
            parse_term("(pow 2 (var 0))").unwrap(),
            Term::pow(Term::nat(2u32), Term::var(0))
        );
    }

    #[test]
    fn deep_nesting_is_rejected_not_crashed() {
        let mut text = String::new();
        for _ in 0..5_000 {
            text.push_str("(hw ");
        }
        text.push('1');
        for _ in 0..5_000 {
            text.push(')');
        }
        assert!(matches!(parse_term(&text), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(parse_term("(+ 1"), Err(ParseError::Syntax { .. })));
        assert!(
            matches!(parse_term("(frob 1 2)"), Err(ParseError::UnknownOperator { name, .. }) if name == "frob")
        );
        assert!(matches!(parse_term("01"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_term("(+ 1 2) "),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("(+  1 2)"),
            Err(ParseError::Syntax { .. })
        ));
    }
}
