//! Final closed-form assembly: each gallery function's term is its compiled
//! counter plus the offset or quotient its theorem prescribes.

use crate::combinators;
use crate::compiler::{compile_count, CompiledCounter};
use crate::term::Term;

use super::specs::{phi_term_at, spec_of, GalleryFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuVariant {
    /// Valuation through `gcd(n, p^n)^(n+1)`; exponent far too big in
    /// general but the simplest form.
    Basic,
    /// Valuation through `gcd(n, p^(L+1))^(L+3)` with `L` the floor
    /// logarithm, itself a compiled counter.
    Efficient,
}

pub fn compiled(f: GalleryFn) -> CompiledCounter {
    compile_count(&spec_of(f)).expect("gallery specs compile")
}

/// The closed form computing the function itself (count, count minus one, or
/// the totient quotient, per the corresponding theorem).
pub fn term_of(f: GalleryFn) -> Term {
    let count = compiled(f).count_term;
    match f {
        GalleryFn::Tau | GalleryFn::Sigma | GalleryFn::Phi | GalleryFn::Inv | GalleryFn::Dlog => {
            count
        }
        GalleryFn::Sqrt | GalleryFn::Root(_) | GalleryFn::Log | GalleryFn::UniformRoot => {
            Term::monus_exact(count, Term::nat(1u32))
        }
        // ord(m, n) = phi(n) / (hw(M)/w - t^4); the count divides phi exactly.
        GalleryFn::Ord => Term::div_exact(phi_term_at(1, 2), count),
    }
}

/// p-adic valuation closed forms over variables `(p, n)`.
pub fn nu_p_term(variant: NuVariant) -> Term {
    match variant {
        NuVariant::Basic => combinators::nu_p_basic_term(),
        NuVariant::Efficient => {
            let p = Term::var(0);
            let n = Term::var(1);
            // L = floor(log_p n) as the compiled logarithm term at (p, n).
            let log = term_of(GalleryFn::Log);
            let l3 = Term::add(log, Term::nat(3u32));
            let q = Term::monus_exact(Term::pow(p.clone(), l3.clone()), Term::nat(1u32));
            Term::div(
                Term::modulo(
                    Term::pow(
                        Term::gcd(
                            n.clone(),
                            Term::pow(p, Term::monus_exact(l3.clone(), Term::nat(2u32))),
                        ),
                        l3,
                    ),
                    Term::pow(q.clone(), Term::nat(2u32)),
                ),
                q,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval, eval_value, EvalContext};
    use crate::gallery::oracles;
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;

    #[test]
    fn tau_term_small_range() {
        let t = term_of(GalleryFn::Tau);
        for n in 1u64..=10 {
            let ctx = EvalContext::of_u64(&[n]).checked();
            let report = eval(&t, &ctx).unwrap();
            assert!(report.all_checks_passed());
            assert_eq!(report.result.to_u64().unwrap(), oracles::tau(n), "n={n}");
        }
    }

    #[test]
    fn sqrt_term_small_range() {
        let t = term_of(GalleryFn::Sqrt);
        for n in 1u64..=8 {
            assert_eq!(
                eval_value(&t, &[n]).unwrap().to_u64().unwrap(),
                oracles::isqrt(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn log_term_small_range() {
        let t = term_of(GalleryFn::Log);
        for m in 2u64..=3 {
            for n in 1u64..=10 {
                assert_eq!(
                    eval_value(&t, &[m, n]).unwrap().to_u64().unwrap(),
                    oracles::ilog(m, n),
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn nu_terms_match_repeated_division() {
        let basic = nu_p_term(NuVariant::Basic);
        let eff = nu_p_term(NuVariant::Efficient);
        for p in [2u64, 3] {
            for n in 1u64..=12 {
                let want = BigUint::from(oracles::nu_p(p, n));
                assert_eq!(
                    eval_value(&basic, &[p, n]).unwrap(),
                    want,
                    "basic p={p} n={n}"
                );
                assert_eq!(
                    eval_value(&eff, &[p, n]).unwrap(),
                    want,
                    "efficient p={p} n={n}"
                );
            }
        }
    }
}
