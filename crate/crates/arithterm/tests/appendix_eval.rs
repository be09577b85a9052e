//! Semantic check of the appendix-compatible print format: a small evaluator
//! for the printed `floor`/`irem`/`^` syntax with ordinary (signed)
//! subtraction, the way the reference environment would read it. The printed
//! divisor-count term must reproduce tau on 1..=10 under those semantics,
//! which also confirms that none of its subtractions rely on truncation.

use arithterm::gallery::{oracles, term_of, GalleryFn};
use arithterm::print::{print_term, PrintFormat};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

struct P<'a> {
    b: &'a [u8],
    pos: usize,
    binding: i64,
}

impl<'a> P<'a> {
    fn peek(&self) -> u8 {
        *self.b.get(self.pos).unwrap_or(&0)
    }

    fn eat(&mut self, s: &str) {
        assert!(
            self.b[self.pos..].starts_with(s.as_bytes()),
            "expected {s:?} at byte {} of {:?}...",
            self.pos,
            String::from_utf8_lossy(&self.b[self.pos..self.b.len().min(self.pos + 40)])
        );
        self.pos += s.len();
    }

    fn starts(&self, s: &str) -> bool {
        self.b[self.pos..].starts_with(s.as_bytes())
    }

    fn expr(&mut self) -> BigInt {
        if self.peek().is_ascii_digit() {
            let start = self.pos;
            while self.peek().is_ascii_digit() {
                self.pos += 1;
            }
            return BigInt::parse_bytes(&self.b[start..self.pos], 10).unwrap();
        }
        if self.starts("n") {
            self.eat("n");
            let start = self.pos;
            while self.peek().is_ascii_digit() {
                self.pos += 1;
            }
            assert_eq!(&self.b[start..self.pos], b"0", "single-variable term");
            return BigInt::from(self.binding);
        }
        if self.starts("floor(") {
            self.eat("floor(");
            let a = self.expr();
            self.eat("/");
            let b = self.expr();
            self.eat(")");
            return floor_div(&a, &b);
        }
        if self.starts("irem(") {
            self.eat("irem(");
            let a = self.expr();
            self.eat(", ");
            let b = self.expr();
            self.eat(")");
            return if b.is_zero() {
                a
            } else {
                &a - floor_div(&a, &b) * &b
            };
        }
        if self.starts("max(") {
            self.eat("max(");
            let a = self.expr();
            self.eat(", ");
            let b = self.expr();
            self.eat(")");
            return a.max(b);
        }
        if self.starts("gcd(") {
            self.eat("gcd(");
            let a = self.expr();
            self.eat(", ");
            let b = self.expr();
            self.eat(")");
            return num_integer::Integer::gcd(&a, &b);
        }
        if self.starts("HW(") {
            self.eat("HW(");
            let a = self.expr();
            self.eat(")");
            assert!(!a.is_negative());
            return BigInt::from(a.to_biguint().unwrap().count_ones());
        }
        self.eat("(");
        let a = self.expr();
        match self.peek() {
            b'+' | b'-' | b'*' => {
                let op = self.peek();
                self.pos += 1;
                let b = self.expr();
                self.eat(")");
                match op {
                    b'+' => a + b,
                    b'-' => a - b,
                    _ => a * b,
                }
            }
            b')' => {
                self.eat(")");
                if self.starts("^(") {
                    self.eat("^(");
                    let e = self.expr();
                    self.eat(")");
                    let e = e.to_u64().expect("exponent fits u64");
                    if e == 0 {
                        return BigInt::from(1u32);
                    }
                    num_traits::Pow::pow(&a, e)
                } else {
                    a
                }
            }
            other => panic!("unexpected byte {:?} at {}", other as char, self.pos),
        }
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    assert!(
        !a.is_negative() && !b.is_negative(),
        "printed terms stay nonnegative"
    );
    num_integer::Integer::div_floor(a, b)
}

#[test]
fn printed_appendix_tau_evaluates_correctly() {
    let tau = term_of(GalleryFn::Tau);
    let text = print_term(&tau, PrintFormat::Appendix);
    for n in 1..=10u64 {
        let mut p = P {
            b: text.as_bytes(),
            pos: 0,
            binding: n as i64,
        };
        let got = p.expr();
        assert_eq!(p.pos, text.len(), "trailing input");
        assert_eq!(got, BigInt::from(oracles::tau(n)), "n={n}");
    }
}

#[test]
fn printed_appendix_hw_chain_evaluates_correctly() {
    // The extended-node Hamming-weight chain prints with gcd/irem spelling
    // and evaluates under the same signed semantics.
    let hw = arithterm::combinators::hw_arith_term();
    let text = print_term(&hw, PrintFormat::Appendix);
    for n in 0..=6u64 {
        let mut p = P {
            b: text.as_bytes(),
            pos: 0,
            binding: n as i64,
        };
        assert_eq!(p.expr(), BigInt::from(n.count_ones()), "n={n}");
    }
}
