//! Term printers. Canonical output is the byte-exact serialization grammar;
//! infix and latex are display conveniences; the appendix format spells
//! operations `irem`/`floor`/`^` so printed terms load directly in a Maple
//! session.

use std::collections::HashMap;

use crate::term::{Term, TermNode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintFormat {
    Canonical,
    Infix,
    Latex,
    Appendix,
}

impl PrintFormat {
    pub fn parse(name: &str) -> Option<PrintFormat> {
        match name {
            "canonical" => Some(PrintFormat::Canonical),
            "infix" => Some(PrintFormat::Infix),
            "latex" => Some(PrintFormat::Latex),
            "appendix" | "appendix-compatible" => Some(PrintFormat::Appendix),
            _ => None,
        }
    }
}

pub fn print_term(term: &Term, format: PrintFormat) -> String {
    // Shared subterms expand at every occurrence; memoize their strings so
    // heavily shared terms print in time linear in the output size.
    let mut memo: HashMap<*const TermNode, String> = HashMap::new();
    match format {
        PrintFormat::Canonical => canonical(term, &mut memo),
        PrintFormat::Infix => infix(term, &mut memo),
        PrintFormat::Latex => latex(term, &mut memo),
        PrintFormat::Appendix => appendix(term, &mut memo),
    }
}

fn canonical(t: &Term, memo: &mut HashMap<*const TermNode, String>) -> String {
    if let Some(s) = memo.get(&t.as_ptr()) {
        return s.clone();
    }
    let s = match t.node() {
        TermNode::Const(c) => c.to_string(),
        TermNode::Var(i) => format!("(var {i})"),
        TermNode::Add(a, b) => format!("(+ {} {})", canonical(a, memo), canonical(b, memo)),
        TermNode::Monus { lhs, rhs, .. } => {
            format!("(monus {} {})", canonical(lhs, memo), canonical(rhs, memo))
        }
        TermNode::FloorDiv { lhs, rhs, .. } => {
            format!("(div {} {})", canonical(lhs, memo), canonical(rhs, memo))
        }
        TermNode::Pow(a, b) => format!("(pow {} {})", canonical(a, memo), canonical(b, memo)),
        TermNode::Mul(a, b) => format!("(* {} {})", canonical(a, memo), canonical(b, memo)),
        TermNode::Mod(a, b) => format!("(mod {} {})", canonical(a, memo), canonical(b, memo)),
        TermNode::Max(a, b) => format!("(max {} {})", canonical(a, memo), canonical(b, memo)),
        TermNode::Gcd(a, b) => format!("(gcd {} {})", canonical(a, memo), canonical(b, memo)),
        TermNode::Hw(a) => format!("(hw {})", canonical(a, memo)),
    };
    memo.insert(t.as_ptr(), s.clone());
    s
}

fn infix(t: &Term, memo: &mut HashMap<*const TermNode, String>) -> String {
    if let Some(s) = memo.get(&t.as_ptr()) {
        return s.clone();
    }
    let s = match t.node() {
        TermNode::Const(c) => c.to_string(),
        TermNode::Var(i) => format!("n{i}"),
        TermNode::Add(a, b) => format!("({} + {})", infix(a, memo), infix(b, memo)),
        TermNode::Monus { lhs, rhs, .. } => {
            format!("({} \u{2238} {})", infix(lhs, memo), infix(rhs, memo))
        }
        TermNode::FloorDiv { lhs, rhs, .. } => {
            format!(
                "\u{230a}{} / {}\u{230b}",
                infix(lhs, memo),
                infix(rhs, memo)
            )
        }
        TermNode::Pow(a, b) => format!("({} ^ {})", infix(a, memo), infix(b, memo)),
        TermNode::Mul(a, b) => format!("({} \u{b7} {})", infix(a, memo), infix(b, memo)),
        TermNode::Mod(a, b) => format!("({} mod {})", infix(a, memo), infix(b, memo)),
        TermNode::Max(a, b) => format!("max({}, {})", infix(a, memo), infix(b, memo)),
        TermNode::Gcd(a, b) => format!("gcd({}, {})", infix(a, memo), infix(b, memo)),
        TermNode::Hw(a) => format!("HW({})", infix(a, memo)),
    };
    memo.insert(t.as_ptr(), s.clone());
    s
}

fn latex(t: &Term, memo: &mut HashMap<*const TermNode, String>) -> String {
    if let Some(s) = memo.get(&t.as_ptr()) {
        return s.clone();
    }
    let s = match t.node() {
        TermNode::Const(c) => c.to_string(),
        TermNode::Var(i) => format!("n_{{{i}}}"),
        TermNode::Add(a, b) => format!("\\left({} + {}\\right)", latex(a, memo), latex(b, memo)),
        TermNode::Monus { lhs, rhs, .. } => {
            format!(
                "\\left({} \\dotdiv {}\\right)",
                latex(lhs, memo),
                latex(rhs, memo)
            )
        }
        TermNode::FloorDiv { lhs, rhs, .. } => format!(
            "\\left\\lfloor {} / {} \\right\\rfloor",
            latex(lhs, memo),
            latex(rhs, memo)
        ),
        TermNode::Pow(a, b) => format!("{{{}}}^{{{}}}", latex(a, memo), latex(b, memo)),
        TermNode::Mul(a, b) => {
            format!(
                "\\left({} \\cdot {}\\right)",
                latex(a, memo),
                latex(b, memo)
            )
        }
        TermNode::Mod(a, b) => {
            format!(
                "\\left({} \\bmod {}\\right)",
                latex(a, memo),
                latex(b, memo)
            )
        }
        TermNode::Max(a, b) => format!("\\max({}, {})", latex(a, memo), latex(b, memo)),
        TermNode::Gcd(a, b) => format!("\\gcd({}, {})", latex(a, memo), latex(b, memo)),
        TermNode::Hw(a) => format!("\\mathrm{{HW}}({})", latex(a, memo)),
    };
    memo.insert(t.as_ptr(), s.clone());
    s
}

fn appendix(t: &Term, memo: &mut HashMap<*const TermNode, String>) -> String {
    if let Some(s) = memo.get(&t.as_ptr()) {
        return s.clone();
    }
    let s = match t.node() {
        TermNode::Const(c) => c.to_string(),
        TermNode::Var(i) => format!("n{i}"),
        TermNode::Add(a, b) => format!("({}+{})", appendix(a, memo), appendix(b, memo)),
        // Ordinary subtraction; sound for terms whose subtractions never
        // truncate, which checked-monus evaluation can confirm.
        TermNode::Monus { lhs, rhs, .. } => {
            format!("({}-{})", appendix(lhs, memo), appendix(rhs, memo))
        }
        TermNode::FloorDiv { lhs, rhs, .. } => {
            format!("floor({}/{})", appendix(lhs, memo), appendix(rhs, memo))
        }
        TermNode::Pow(a, b) => format!("({})^({})", appendix(a, memo), appendix(b, memo)),
        TermNode::Mul(a, b) => format!("({}*{})", appendix(a, memo), appendix(b, memo)),
        TermNode::Mod(a, b) => format!("irem({}, {})", appendix(a, memo), appendix(b, memo)),
        TermNode::Max(a, b) => format!("max({}, {})", appendix(a, memo), appendix(b, memo)),
        TermNode::Gcd(a, b) => format!("gcd({}, {})", appendix(a, memo), appendix(b, memo)),
        TermNode::Hw(a) => format!("HW({})", appendix(a, memo)),
    };
    memo.insert(t.as_ptr(), s.clone());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    #[test]
    fn canonical_examples() {
        let t = Term::add(Term::var(0), Term::nat(1u32));
        assert_eq!(print_term(&t, PrintFormat::Canonical), "(+ (var 0) 1)");
    }

    #[test]
    fn infix_and_appendix_examples() {
        let t = Term::monus(Term::var(0), Term::nat(1u32));
        assert_eq!(print_term(&t, PrintFormat::Infix), "(n0 \u{2238} 1)");
        let t = Term::modulo(Term::var(0), Term::nat(2u32));
        assert_eq!(print_term(&t, PrintFormat::Appendix), "irem(n0, 2)");
    }

    #[test]
    fn canonical_print_parses_back() {
        let t = Term::hw(Term::monus(
            Term::pow(Term::nat(2u32), Term::var(3)),
            Term::gcd(
                Term::max(Term::var(0), Term::nat(17u32)),
                Term::mul(Term::var(1), Term::var(2)),
            ),
        ));
        let s = print_term(&t, PrintFormat::Canonical);
        assert_eq!(parse_term(&s).unwrap(), t);
    }
}
