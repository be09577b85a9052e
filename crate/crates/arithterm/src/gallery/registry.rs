//! The function registry: every surfaced closed form with its arity, domain
//! predicate, naive oracle, and construction route.

use std::sync::LazyLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::compiler::CountingSpec;
use crate::eval::{eval, EvalContext, EvalError};
use crate::term::Term;
use crate::DomainError;

use super::composite::{cantor_x_term, cantor_y_term, rsa_factor_term};
use super::oracles;
use super::specs::{spec_of, GalleryFn};
use super::terms::{nu_p_term, term_of, NuVariant};

type DomainFn = fn(&[u64]) -> Result<(), DomainError>;
type OracleFn = fn(&[u64]) -> u64;

pub struct FunctionEntry {
    pub name: &'static str,
    pub arity: usize,
    /// Argument names, space separated, for help and reports.
    pub args: &'static str,
    pub summary: &'static str,
    pub domain: DomainFn,
    /// Naive reference value of the function itself.
    pub oracle: OracleFn,
    pub kind: EntryKind,
}

pub enum EntryKind {
    /// Compiled counting spec plus the theorem's final offset.
    Counter {
        f: GalleryFn,
        /// The quantity the set characterizes (the raw box count).
        count_oracle: OracleFn,
    },
    /// A directly built closed form.
    Direct { build: fn() -> Term },
    /// Defined by comparing a base entry's value against a target.
    Predicate { base: GalleryFn, target: OracleFn },
}

impl FunctionEntry {
    pub fn term(&self) -> Term {
        match &self.kind {
            EntryKind::Counter { f, .. } => term_of(*f),
            EntryKind::Direct { build } => build(),
            EntryKind::Predicate { base, .. } => term_of(*base),
        }
    }

    pub fn spec(&self) -> Option<CountingSpec> {
        match &self.kind {
            EntryKind::Counter { f, .. } => Some(spec_of(*f)),
            _ => None,
        }
    }

    pub fn count_oracle(&self) -> Option<OracleFn> {
        match &self.kind {
            EntryKind::Counter { count_oracle, .. } => Some(*count_oracle),
            _ => None,
        }
    }

    /// Evaluate the closed form at `args` under the usual checked context.
    /// Predicates come back as 0/1.
    pub fn eval_term(
        &self,
        term: &Term,
        args: &[u64],
        bit_budget: u64,
        modpow: bool,
    ) -> Result<TermOutcome, EvalError> {
        let mut ctx = EvalContext::of_u64(args).checked().with_budget(bit_budget);
        if modpow {
            ctx = ctx.with_modpow();
        }
        let report = eval(term, &ctx)?;
        let checks_ok = report.all_checks_passed();
        let value = match &self.kind {
            EntryKind::Predicate { target, .. } => {
                let hit = report.result == BigUint::from(target(args));
                BigUint::from(u32::from(hit))
            }
            _ => report.result,
        };
        Ok(TermOutcome {
            value,
            peak_bits: report.peak_bits,
            checks_ok,
        })
    }
}

pub struct TermOutcome {
    pub value: BigUint,
    pub peak_bits: u64,
    pub checks_ok: bool,
}

fn ok(_: &[u64]) -> Result<(), DomainError> {
    Ok(())
}

fn need(cond: bool, msg: &str) -> Result<(), DomainError> {
    if cond {
        Ok(())
    } else {
        Err(DomainError(msg.to_string()))
    }
}

fn positive(args: &[u64]) -> Result<(), DomainError> {
    need(args[0] >= 1, "argument must be positive")
}

fn dom_phi(args: &[u64]) -> Result<(), DomainError> {
    need(args[0] >= 2, "totient closed form needs n >= 2")
}

fn dom_inv(args: &[u64]) -> Result<(), DomainError> {
    let (m, n) = (args[0], args[1]);
    need(
        n >= 2 && (1..n).contains(&m) && oracles::gcd(m, n) == 1,
        "modular inverse needs n >= 2 and m in 1..n coprime with n",
    )
}

fn dom_base_arg(args: &[u64]) -> Result<(), DomainError> {
    need(args[0] >= 2 && args[1] >= 1, "needs base m >= 2 and n >= 1")
}

fn dom_ord(args: &[u64]) -> Result<(), DomainError> {
    let (m, n) = (args[0], args[1]);
    need(
        n >= 3 && (2..n).contains(&m) && oracles::gcd(m, n) == 1,
        "order needs n >= 3 and m in 2..n coprime with n",
    )
}

fn dom_dlog(args: &[u64]) -> Result<(), DomainError> {
    let (m, g, n) = (args[0], args[1], args[2]);
    need(
        n >= 3
            && (2..n).contains(&m)
            && oracles::gcd(m, n) == 1
            && g >= 2
            && oracles::is_primitive_root(g, n),
        "discrete log needs n >= 3, m in 2..n coprime, and g >= 2 a primitive root mod n",
    )
}

fn dom_nu(args: &[u64]) -> Result<(), DomainError> {
    need(
        oracles::is_prime(args[0]) && args[1] >= 1,
        "valuation needs p prime and n >= 1",
    )
}

fn dom_rsa(args: &[u64]) -> Result<(), DomainError> {
    need(
        oracles::semiprime_factors(args[0]).is_some(),
        "factor recovery needs N = pq with p < q primes",
    )
}

static REGISTRY: LazyLock<Vec<FunctionEntry>> = LazyLock::new(|| {
    vec![
        FunctionEntry {
            name: "tau",
            arity: 1,
            args: "n",
            summary: "number of divisors",
            domain: positive,
            oracle: |a| oracles::tau(a[0]),
            kind: EntryKind::Counter {
                f: GalleryFn::Tau,
                count_oracle: |a| oracles::tau(a[0]),
            },
        },
        FunctionEntry {
            name: "sigma",
            arity: 1,
            args: "n",
            summary: "sum of divisors",
            domain: positive,
            oracle: |a| oracles::sigma(a[0]),
            kind: EntryKind::Counter {
                f: GalleryFn::Sigma,
                count_oracle: |a| oracles::sigma(a[0]),
            },
        },
        FunctionEntry {
            name: "phi",
            arity: 1,
            args: "n",
            summary: "Euler's totient",
            domain: dom_phi,
            oracle: |a| oracles::phi(a[0]),
            kind: EntryKind::Counter {
                f: GalleryFn::Phi,
                count_oracle: |a| oracles::phi(a[0]),
            },
        },
        FunctionEntry {
            name: "inv",
            arity: 2,
            args: "m n",
            summary: "modular inverse of m mod n",
            domain: dom_inv,
            oracle: |a| oracles::inv(a[0], a[1]).expect("domain checked"),
            kind: EntryKind::Counter {
                f: GalleryFn::Inv,
                count_oracle: |a| oracles::inv(a[0], a[1]).expect("domain checked"),
            },
        },
        FunctionEntry {
            name: "sqrt",
            arity: 1,
            args: "n",
            summary: "floor square root",
            domain: positive,
            oracle: |a| oracles::isqrt(a[0]),
            kind: EntryKind::Counter {
                f: GalleryFn::Sqrt,
                count_oracle: |a| oracles::isqrt(a[0]) + 1,
            },
        },
        FunctionEntry {
            name: "root2",
            arity: 1,
            args: "n",
            summary: "floor square root, fixed-exponent schema",
            domain: positive,
            oracle: |a| oracles::iroot(2, a[0]),
            kind: EntryKind::Counter {
                f: GalleryFn::Root(2),
                count_oracle: |a| oracles::iroot(2, a[0]) + 1,
            },
        },
        FunctionEntry {
            name: "root3",
            arity: 1,
            args: "n",
            summary: "floor cube root, fixed-exponent schema",
            domain: positive,
            oracle: |a| oracles::iroot(3, a[0]),
            kind: EntryKind::Counter {
                f: GalleryFn::Root(3),
                count_oracle: |a| oracles::iroot(3, a[0]) + 1,
            },
        },
        FunctionEntry {
            name: "uroot",
            arity: 2,
            args: "m n",
            summary: "floor m-th root with m as an input (construction only at desk scale)",
            domain: dom_base_arg,
            // floor(n^(1/m)) is constant for m >= 64 on 64-bit inputs, so the
            // clamp loses nothing and keeps the exponent in range.
            oracle: |a| oracles::iroot(a[0].min(64) as u32, a[1]),
            kind: EntryKind::Counter {
                f: GalleryFn::UniformRoot,
                count_oracle: |a| oracles::iroot(a[0].min(64) as u32, a[1]) + 1,
            },
        },
        FunctionEntry {
            name: "log",
            arity: 2,
            args: "m n",
            summary: "floor logarithm base m",
            domain: dom_base_arg,
            oracle: |a| oracles::ilog(a[0], a[1]),
            kind: EntryKind::Counter {
                f: GalleryFn::Log,
                count_oracle: |a| oracles::ilog(a[0], a[1]) + 1,
            },
        },
        FunctionEntry {
            name: "ord",
            arity: 2,
            args: "m n",
            summary: "multiplicative order of m mod n",
            domain: dom_ord,
            oracle: |a| oracles::ord(a[0], a[1]).expect("domain checked"),
            kind: EntryKind::Counter {
                f: GalleryFn::Ord,
                count_oracle: |a| {
                    oracles::phi(a[1]) / oracles::ord(a[0], a[1]).expect("domain checked")
                },
            },
        },
        FunctionEntry {
            name: "dlog",
            arity: 3,
            args: "m g n",
            summary: "discrete logarithm of m base g mod n",
            domain: dom_dlog,
            oracle: |a| oracles::dlog(a[0], a[1], a[2]).expect("domain checked"),
            kind: EntryKind::Counter {
                f: GalleryFn::Dlog,
                count_oracle: |a| oracles::dlog(a[0], a[1], a[2]).expect("domain checked"),
            },
        },
        FunctionEntry {
            name: "nu",
            arity: 2,
            args: "p n",
            summary: "p-adic valuation (efficient form)",
            domain: dom_nu,
            oracle: |a| oracles::nu_p(a[0], a[1]),
            kind: EntryKind::Direct {
                build: || nu_p_term(NuVariant::Efficient),
            },
        },
        FunctionEntry {
            name: "nu-basic",
            arity: 2,
            args: "p n",
            summary: "p-adic valuation (basic form)",
            domain: dom_nu,
            oracle: |a| oracles::nu_p(a[0], a[1]),
            kind: EntryKind::Direct {
                build: || nu_p_term(NuVariant::Basic),
            },
        },
        FunctionEntry {
            name: "hw",
            arity: 1,
            args: "n",
            summary: "Hamming weight",
            domain: ok,
            oracle: |a| oracles::popcount(a[0]),
            kind: EntryKind::Direct {
                build: crate::combinators::hw_arith_term,
            },
        },
        FunctionEntry {
            name: "rsa",
            arity: 1,
            args: "N",
            summary: "larger prime factor of a squarefree semiprime",
            domain: dom_rsa,
            oracle: |a| oracles::semiprime_factors(a[0]).expect("domain checked").1,
            kind: EntryKind::Direct {
                build: rsa_factor_term,
            },
        },
        FunctionEntry {
            name: "cantor-x",
            arity: 1,
            args: "n",
            summary: "first coordinate of the Cantor unpairing",
            domain: ok,
            oracle: |a| super::composite::cantor_unpair(a[0]).0,
            kind: EntryKind::Direct {
                build: cantor_x_term,
            },
        },
        FunctionEntry {
            name: "cantor-y",
            arity: 1,
            args: "n",
            summary: "second coordinate of the Cantor unpairing",
            domain: ok,
            oracle: |a| super::composite::cantor_unpair(a[0]).1,
            kind: EntryKind::Direct {
                build: cantor_y_term,
            },
        },
        FunctionEntry {
            name: "prime",
            arity: 1,
            args: "n",
            summary: "primality predicate, tau(n) = 2",
            domain: positive,
            oracle: |a| u64::from(oracles::is_prime(a[0])),
            kind: EntryKind::Predicate {
                base: GalleryFn::Tau,
                target: |_| 2,
            },
        },
        FunctionEntry {
            name: "perfect",
            arity: 1,
            args: "n",
            summary: "perfect-number predicate, sigma(n) = 2n",
            domain: positive,
            oracle: |a| u64::from(oracles::is_perfect(a[0])),
            kind: EntryKind::Predicate {
                base: GalleryFn::Sigma,
                target: |a| 2 * a[0],
            },
        },
    ]
});

pub fn registry() -> &'static [FunctionEntry] {
    &REGISTRY
}

pub fn find(name: &str) -> Option<&'static FunctionEntry> {
    registry().iter().find(|e| e.name == name)
}

/// Oracle value of an entry with the domain enforced; the `oracle_eval`
/// surface of the module.
pub fn oracle_eval(entry: &FunctionEntry, args: &[u64]) -> Result<u64, DomainError> {
    if args.len() != entry.arity {
        return Err(DomainError(format!(
            "{} takes {} argument(s), got {}",
            entry.name,
            entry.arity,
            args.len()
        )));
    }
    (entry.domain)(args)?;
    Ok((entry.oracle)(args))
}

/// Convenience used by tests: evaluate an entry's closed form to a u64.
pub fn term_value_u64(
    entry: &FunctionEntry,
    args: &[u64],
    bit_budget: u64,
) -> Result<u64, EvalError> {
    let term = entry.term();
    let out = entry.eval_term(&term, args, bit_budget, false)?;
    Ok(out.value.to_u64().expect("gallery values fit u64"))
}
