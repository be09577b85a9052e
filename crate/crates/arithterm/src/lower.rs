//! Lowering of extended nodes to the four-operation kernel.
//!
//! Product goes through Marchenkov's formula, mod through
//! `x monus y*div(x, y)`, max through the averaging identity, gcd through
//! Mazzanti's closed form and Hamming weight through the binomial/valuation
//! chain. The lowered forms are value-preserving but numerically explosive,
//! so they are practical only at tiny arguments.

use std::collections::HashMap;

use crate::combinators;
use crate::term::{Term, TermNode};

/// Rewrite a term to kernel-only form. Kernel nodes map to themselves; a term
/// that is already kernel-only is returned structurally unchanged.
pub fn lower(term: &Term) -> Term {
    let mut memo: HashMap<*const TermNode, Term> = HashMap::new();
    walk(term, &mut memo)
}

fn walk(t: &Term, memo: &mut HashMap<*const TermNode, Term>) -> Term {
    if let Some(r) = memo.get(&t.as_ptr()) {
        return r.clone();
    }
    let r = match t.node() {
        TermNode::Const(_) | TermNode::Var(_) => t.clone(),
        TermNode::Add(a, b) => Term::add(walk(a, memo), walk(b, memo)),
        TermNode::Monus { lhs, rhs, exact } => {
            let (a, b) = (walk(lhs, memo), walk(rhs, memo));
            if *exact {
                Term::monus_exact(a, b)
            } else {
                Term::monus(a, b)
            }
        }
        TermNode::FloorDiv { lhs, rhs, exact } => {
            let (a, b) = (walk(lhs, memo), walk(rhs, memo));
            if *exact {
                Term::div_exact(a, b)
            } else {
                Term::div(a, b)
            }
        }
        TermNode::Pow(a, b) => Term::pow(walk(a, memo), walk(b, memo)),
        TermNode::Mul(a, b) => combinators::product_term(walk(a, memo), walk(b, memo)),
        TermNode::Mod(a, b) => combinators::mod_term(walk(a, memo), walk(b, memo)),
        TermNode::Max(a, b) => combinators::max_term(walk(a, memo), walk(b, memo)),
        TermNode::Gcd(a, b) => {
            let g = combinators::gcd_arith_term(walk(a, memo), walk(b, memo));
            // The builder itself uses extended product/mod nodes; expand them.
            walk(&g, &mut HashMap::new())
        }
        TermNode::Hw(a) => {
            let h = combinators::hw_arith_term().substitute(&[walk(a, memo)]);
            walk(&h, &mut HashMap::new())
        }
    };
    memo.insert(t.as_ptr(), r.clone());
    r
}
