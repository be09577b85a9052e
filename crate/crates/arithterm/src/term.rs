//! The arithmetic-term AST.
//!
//! Kernel nodes are the four base operations (`+`, truncated subtraction,
//! floor division, exponentiation) plus naturals and variables; extended
//! nodes (`*`, `mod`, `max`, `gcd`, `hw`) are first-class here but every one
//! of them lowers to the kernel (see [`crate::lower`]).

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;

/// Shared, immutable arithmetic term. Cloning is cheap (`Arc`), and shared
/// subterms are evaluated once per evaluation pass.
#[derive(Clone, Debug)]
pub struct Term(Arc<TermNode>);

#[derive(Debug)]
pub enum TermNode {
    Const(BigUint),
    Var(usize),
    Add(Term, Term),
    /// Truncated subtraction. `exact` marks sites the producer asserts never
    /// truncate; checked-monus evaluation reports violations.
    Monus {
        lhs: Term,
        rhs: Term,
        exact: bool,
    },
    /// Floor division with the convention `x div 0 = 0`. `exact` marks sites
    /// the producer asserts leave no remainder.
    FloorDiv {
        lhs: Term,
        rhs: Term,
        exact: bool,
    },
    Pow(Term, Term),
    Mul(Term, Term),
    Mod(Term, Term),
    Max(Term, Term),
    Gcd(Term, Term),
    Hw(Term),
}

/// Node count, depth and largest constant width of a term, as a tree
/// (shared subterms count once per occurrence).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeMetrics {
    pub nodes: u64,
    pub depth: u64,
    pub max_const_bits: u64,
}

impl Term {
    pub fn node(&self) -> &TermNode {
        &self.0
    }

    pub fn as_ptr(&self) -> *const TermNode {
        Arc::as_ptr(&self.0)
    }

    pub fn ptr_eq(a: &Term, b: &Term) -> bool {
        Arc::ptr_eq(&a.0, &b.0)
    }

    pub fn nat<T: Into<BigUint>>(v: T) -> Term {
        Term(Arc::new(TermNode::Const(v.into())))
    }

    pub fn var(index: usize) -> Term {
        Term(Arc::new(TermNode::Var(index)))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Add(a, b)))
    }

    pub fn monus(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Monus {
            lhs: a,
            rhs: b,
            exact: false,
        }))
    }

    /// Monus the producer asserts never truncates.
    pub fn monus_exact(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Monus {
            lhs: a,
            rhs: b,
            exact: true,
        }))
    }

    pub fn div(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::FloorDiv {
            lhs: a,
            rhs: b,
            exact: false,
        }))
    }

    /// Floor division the producer asserts is remainder-free.
    pub fn div_exact(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::FloorDiv {
            lhs: a,
            rhs: b,
            exact: true,
        }))
    }

    pub fn pow(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Pow(a, b)))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Mul(a, b)))
    }

    pub fn modulo(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Mod(a, b)))
    }

    pub fn max(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Max(a, b)))
    }

    pub fn gcd(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Gcd(a, b)))
    }

    pub fn hw(a: Term) -> Term {
        Term(Arc::new(TermNode::Hw(a)))
    }

    pub fn is_const(&self, v: u64) -> bool {
        matches!(self.node(), TermNode::Const(c) if *c == BigUint::from(v))
    }

    /// True when the term contains no extended node.
    pub fn is_kernel_only(&self) -> bool {
        let mut seen: HashMap<*const TermNode, ()> = HashMap::new();
        fn walk(t: &Term, seen: &mut HashMap<*const TermNode, ()>) -> bool {
            if seen.insert(t.as_ptr(), ()).is_some() {
                return true;
            }
            match t.node() {
                TermNode::Const(_) | TermNode::Var(_) => true,
                TermNode::Add(a, b) | TermNode::Pow(a, b) => walk(a, seen) && walk(b, seen),
                TermNode::Monus { lhs, rhs, .. } | TermNode::FloorDiv { lhs, rhs, .. } => {
                    walk(lhs, seen) && walk(rhs, seen)
                }
                TermNode::Mul(..)
                | TermNode::Mod(..)
                | TermNode::Max(..)
                | TermNode::Gcd(..)
                | TermNode::Hw(..) => false,
            }
        }
        walk(self, &mut seen)
    }

    /// Minimum number of bindings the term needs (1 + largest var index).
    pub fn arity(&self) -> usize {
        let mut memo: HashMap<*const TermNode, usize> = HashMap::new();
        fn walk(t: &Term, memo: &mut HashMap<*const TermNode, usize>) -> usize {
            if let Some(&a) = memo.get(&t.as_ptr()) {
                return a;
            }
            let a = match t.node() {
                TermNode::Const(_) => 0,
                TermNode::Var(i) => i + 1,
                TermNode::Add(a, b)
                | TermNode::Pow(a, b)
                | TermNode::Mul(a, b)
                | TermNode::Mod(a, b)
                | TermNode::Max(a, b)
                | TermNode::Gcd(a, b) => walk(a, memo).max(walk(b, memo)),
                TermNode::Monus { lhs, rhs, .. } | TermNode::FloorDiv { lhs, rhs, .. } => {
                    walk(lhs, memo).max(walk(rhs, memo))
                }
                TermNode::Hw(a) => walk(a, memo),
            };
            memo.insert(t.as_ptr(), a);
            a
        }
        walk(self, &mut memo)
    }

    /// Replace `Var(i)` with `map[i]`. Panics if a variable has no image.
    /// Sharing is preserved: a subterm substituted once is reused everywhere.
    pub fn substitute(&self, map: &[Term]) -> Term {
        let mut memo: HashMap<*const TermNode, Term> = HashMap::new();
        fn walk(t: &Term, map: &[Term], memo: &mut HashMap<*const TermNode, Term>) -> Term {
            if let Some(r) = memo.get(&t.as_ptr()) {
                return r.clone();
            }
            let r = match t.node() {
                TermNode::Const(_) => t.clone(),
                TermNode::Var(i) => map[*i].clone(),
                TermNode::Add(a, b) => Term::add(walk(a, map, memo), walk(b, map, memo)),
                TermNode::Monus { lhs, rhs, exact } => {
                    let (a, b) = (walk(lhs, map, memo), walk(rhs, map, memo));
                    if *exact {
                        Term::monus_exact(a, b)
                    } else {
                        Term::monus(a, b)
                    }
                }
                TermNode::FloorDiv { lhs, rhs, exact } => {
                    let (a, b) = (walk(lhs, map, memo), walk(rhs, map, memo));
                    if *exact {
                        Term::div_exact(a, b)
                    } else {
                        Term::div(a, b)
                    }
                }
                TermNode::Pow(a, b) => Term::pow(walk(a, map, memo), walk(b, map, memo)),
                TermNode::Mul(a, b) => Term::mul(walk(a, map, memo), walk(b, map, memo)),
                TermNode::Mod(a, b) => Term::modulo(walk(a, map, memo), walk(b, map, memo)),
                TermNode::Max(a, b) => Term::max(walk(a, map, memo), walk(b, map, memo)),
                TermNode::Gcd(a, b) => Term::gcd(walk(a, map, memo), walk(b, map, memo)),
                TermNode::Hw(a) => Term::hw(walk(a, map, memo)),
            };
            memo.insert(t.as_ptr(), r.clone());
            r
        }
        walk(self, map, &mut memo)
    }

    /// Occurrences of each operation, counted as a tree.
    pub fn op_census(&self) -> std::collections::BTreeMap<&'static str, u64> {
        let mut memo: HashMap<*const TermNode, std::collections::BTreeMap<&'static str, u64>> =
            HashMap::new();
        fn merge(
            mut a: std::collections::BTreeMap<&'static str, u64>,
            b: &std::collections::BTreeMap<&'static str, u64>,
        ) -> std::collections::BTreeMap<&'static str, u64> {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        }
        fn walk(
            t: &Term,
            memo: &mut HashMap<*const TermNode, std::collections::BTreeMap<&'static str, u64>>,
        ) -> std::collections::BTreeMap<&'static str, u64> {
            if let Some(m) = memo.get(&t.as_ptr()) {
                return m.clone();
            }
            let (name, kids): (&'static str, Vec<&Term>) = match t.node() {
                TermNode::Const(_) => ("const", vec![]),
                TermNode::Var(_) => ("var", vec![]),
                TermNode::Add(a, b) => ("+", vec![a, b]),
                TermNode::Monus { lhs, rhs, .. } => ("monus", vec![lhs, rhs]),
                TermNode::FloorDiv { lhs, rhs, .. } => ("div", vec![lhs, rhs]),
                TermNode::Pow(a, b) => ("pow", vec![a, b]),
                TermNode::Mul(a, b) => ("*", vec![a, b]),
                TermNode::Mod(a, b) => ("mod", vec![a, b]),
                TermNode::Max(a, b) => ("max", vec![a, b]),
                TermNode::Gcd(a, b) => ("gcd", vec![a, b]),
                TermNode::Hw(a) => ("hw", vec![a]),
            };
            let mut acc = std::collections::BTreeMap::new();
            acc.insert(name, 1);
            for kid in kids {
                let sub = walk(kid, memo);
                acc = merge(acc, &sub);
            }
            memo.insert(t.as_ptr(), acc.clone());
            acc
        }
        walk(self, &mut memo)
    }

    pub fn size_metrics(&self) -> SizeMetrics {
        let mut memo: HashMap<*const TermNode, SizeMetrics> = HashMap::new();
        fn walk(t: &Term, memo: &mut HashMap<*const TermNode, SizeMetrics>) -> SizeMetrics {
            if let Some(&m) = memo.get(&t.as_ptr()) {
                return m;
            }
            let leaf = |bits: u64| SizeMetrics {
                nodes: 1,
                depth: 1,
                max_const_bits: bits,
            };
            let join1 = |a: SizeMetrics| SizeMetrics {
                nodes: a.nodes.saturating_add(1),
                depth: a.depth + 1,
                max_const_bits: a.max_const_bits,
            };
            let join2 = |a: SizeMetrics, b: SizeMetrics| SizeMetrics {
                nodes: a.nodes.saturating_add(b.nodes).saturating_add(1),
                depth: a.depth.max(b.depth) + 1,
                max_const_bits: a.max_const_bits.max(b.max_const_bits),
            };
            let m = match t.node() {
                TermNode::Const(c) => leaf(c.bits()),
                TermNode::Var(_) => leaf(0),
                TermNode::Add(a, b)
                | TermNode::Pow(a, b)
                | TermNode::Mul(a, b)
                | TermNode::Mod(a, b)
                | TermNode::Max(a, b)
                | TermNode::Gcd(a, b) => join2(walk(a, memo), walk(b, memo)),
                TermNode::Monus { lhs, rhs, .. } | TermNode::FloorDiv { lhs, rhs, .. } => {
                    join2(walk(lhs, memo), walk(rhs, memo))
                }
                TermNode::Hw(a) => join1(walk(a, memo)),
            };
            memo.insert(t.as_ptr(), m);
            m
        }
        walk(self, &mut memo)
    }
}

// Structural equality; the exactness flags are evaluation metadata and do not
// survive serialization, so they are ignored here.
impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        if Term::ptr_eq(self, other) {
            return true;
        }
        match (self.node(), other.node()) {
            (TermNode::Const(a), TermNode::Const(b)) => a == b,
            (TermNode::Var(a), TermNode::Var(b)) => a == b,
            (TermNode::Add(a1, b1), TermNode::Add(a2, b2))
            | (TermNode::Pow(a1, b1), TermNode::Pow(a2, b2))
            | (TermNode::Mul(a1, b1), TermNode::Mul(a2, b2))
            | (TermNode::Mod(a1, b1), TermNode::Mod(a2, b2))
            | (TermNode::Max(a1, b1), TermNode::Max(a2, b2))
            | (TermNode::Gcd(a1, b1), TermNode::Gcd(a2, b2)) => a1 == a2 && b1 == b2,
            (
                TermNode::Monus {
                    lhs: a1, rhs: b1, ..
                },
                TermNode::Monus {
                    lhs: a2, rhs: b2, ..
                },
            ) => a1 == a2 && b1 == b2,
            (
                TermNode::FloorDiv {
                    lhs: a1, rhs: b1, ..
                },
                TermNode::FloorDiv {
                    lhs: a2, rhs: b2, ..
                },
            ) => a1 == a2 && b1 == b2,
            (TermNode::Hw(a), TermNode::Hw(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.node() {
            TermNode::Const(c) => {
                state.write_u8(0);
                c.hash(state);
            }
            TermNode::Var(i) => {
                state.write_u8(1);
                i.hash(state);
            }
            TermNode::Add(a, b) => {
                state.write_u8(2);
                a.hash(state);
                b.hash(state);
            }
            TermNode::Monus { lhs, rhs, .. } => {
                state.write_u8(3);
                lhs.hash(state);
                rhs.hash(state);
            }
            TermNode::FloorDiv { lhs, rhs, .. } => {
                state.write_u8(4);
                lhs.hash(state);
                rhs.hash(state);
            }
            TermNode::Pow(a, b) => {
                state.write_u8(5);
                a.hash(state);
                b.hash(state);
            }
            TermNode::Mul(a, b) => {
                state.write_u8(6);
                a.hash(state);
                b.hash(state);
            }
            TermNode::Mod(a, b) => {
                state.write_u8(7);
                a.hash(state);
                b.hash(state);
            }
            TermNode::Max(a, b) => {
                state.write_u8(8);
                a.hash(state);
                b.hash(state);
            }
            TermNode::Gcd(a, b) => {
                state.write_u8(9);
                a.hash(state);
                b.hash(state);
            }
            TermNode::Hw(a) => {
                state.write_u8(10);
                a.hash(state);
            }
        }
    }
}
