//! Value-level and term-level constructors for the building blocks: the
//! delta gadget, Hamming weight, and the primitive closed forms (product,
//! mod, max, the power identity, Mazzanti's gcd, central binomials).

use num_bigint::BigUint;
use num_traits::One;

use crate::term::Term;
use crate::DomainError;

/// `delta(a, w) = (2^w - 1)(2^w - a + 1)` for `0 <= a < 2^w`. Its Hamming
/// weight is `2w` exactly when `a = 0` and `w` otherwise, which is what makes
/// it a zero detector.
pub fn delta(a: &BigUint, w: u64) -> Result<BigUint, DomainError> {
    let p = BigUint::one() << w;
    if *a >= p {
        return Err(DomainError(format!(
            "delta needs a < 2^w, got a with {} bits, w = {w}",
            a.bits()
        )));
    }
    let ones = &p - BigUint::one();
    Ok(&ones * (&p - a + BigUint::one()))
}

/// Term form of the delta gadget. The inner monus truncates only when the
/// `a < 2^w` precondition is violated, so it is flagged exact.
pub fn delta_term(a: Term, w: Term) -> Term {
    let p = Term::pow(Term::nat(2u32), w);
    Term::mul(
        Term::monus_exact(p.clone(), Term::nat(1u32)),
        Term::add(Term::monus_exact(p, a), Term::nat(1u32)),
    )
}

pub fn hamming_weight(n: &BigUint) -> u64 {
    n.count_ones()
}

/// Marchenkov's product term:
/// `x*y = div(2^(x+y+4), div(div(2^(x+y+4), x+1), y+1)) monus (x+y+1)`.
pub fn product_term(x: Term, y: Term) -> Term {
    let p = Term::pow(
        Term::nat(2u32),
        Term::add(Term::add(x.clone(), y.clone()), Term::nat(4u32)),
    );
    Term::monus(
        Term::div(
            p.clone(),
            Term::div(
                Term::div(p, Term::add(x.clone(), Term::nat(1u32))),
                Term::add(y.clone(), Term::nat(1u32)),
            ),
        ),
        Term::add(Term::add(x, y), Term::nat(1u32)),
    )
}

/// `x mod y = x monus y*div(x, y)`, with the product expanded through
/// [`product_term`] so the result stays kernel-only.
pub fn mod_term(x: Term, y: Term) -> Term {
    Term::monus(x.clone(), product_term(y.clone(), Term::div(x, y)))
}

/// `max(x, y) = div(x + y + (x monus y) + (y monus x), 2)`.
pub fn max_term(x: Term, y: Term) -> Term {
    Term::div(
        Term::add(
            Term::add(
                Term::add(x.clone(), y.clone()),
                Term::monus(x.clone(), y.clone()),
            ),
            Term::monus(y, x),
        ),
        Term::nat(2u32),
    )
}

/// The power identity `n^m = 2^((nm+n+1)m) mod (2^(nm+n+1) monus n)`,
/// built with extended product and mod nodes.
pub fn pow_ident_term(n: Term, m: Term) -> Term {
    let e = Term::add(
        Term::add(Term::mul(n.clone(), m.clone()), n.clone()),
        Term::nat(1u32),
    );
    Term::modulo(
        Term::pow(Term::nat(2u32), Term::mul(e.clone(), m)),
        Term::monus(Term::pow(Term::nat(2u32), e), n),
    )
}

/// Mazzanti's gcd term, with extended product and mod nodes. Lowering it
/// expands every product through Marchenkov's formula, which is numerically
/// explosive; accelerated evaluation handles desk-scale arguments.
/// Requires `m, n >= 1` at evaluation for a meaningful gcd.
pub fn gcd_arith_term(m: Term, n: Term) -> Term {
    let two = || Term::nat(2u32);
    let m2 = Term::pow(m.clone(), Term::nat(2u32));
    let n2 = Term::pow(n.clone(), Term::nat(2u32));
    let m2n = Term::mul(m2.clone(), n.clone());
    // 2^(m^2 n (n+1)) monus 2^(m^2 n)
    let top = Term::monus_exact(
        Term::pow(
            two(),
            Term::mul(m2n.clone(), Term::add(n.clone(), Term::nat(1u32))),
        ),
        Term::pow(two(), m2n.clone()),
    );
    let m2n2 = Term::mul(m2, n2.clone());
    let p_m2n2 = Term::pow(two(), m2n2);
    let numer = Term::mul(top, Term::monus_exact(p_m2n2.clone(), Term::nat(1u32)));
    let denom = Term::mul(
        Term::mul(
            Term::monus_exact(Term::pow(two(), m2n), Term::nat(1u32)),
            Term::monus_exact(Term::pow(two(), Term::mul(m.clone(), n2)), Term::nat(1u32)),
        ),
        p_m2n2,
    );
    Term::modulo(Term::div(numer, denom), Term::pow(two(), Term::mul(m, n)))
}

/// Central binomial coefficients:
/// `binom(2n, n) = div((1 + 2^(2n))^(2n), 2^(2n^2)) mod 2^(2n)`.
/// Meaningful for `n >= 1`; at `n = 0` the outer `mod 2^0` collapses to 0.
pub fn central_binomial_term(n: Term) -> Term {
    let two_n = Term::mul(Term::nat(2u32), n.clone());
    let p2n = Term::pow(Term::nat(2u32), two_n.clone());
    Term::modulo(
        Term::div(
            Term::pow(Term::add(Term::nat(1u32), p2n.clone()), two_n),
            Term::pow(
                Term::nat(2u32),
                Term::mul(Term::nat(2u32), Term::pow(n, Term::nat(2u32))),
            ),
        ),
        p2n,
    )
}

/// The Hamming-weight arithmetic term: the central binomial coefficient fed
/// through the dyadic valuation, by Kummer's theorem. The gcd stays a native
/// node here; lowering inlines Mazzanti's formula and matches the fully
/// expanded form, which is only desk-evaluable for the smallest arguments.
pub fn hw_arith_term() -> Term {
    let n = Term::var(0);
    let b = central_binomial_term(n);
    // nu2(b) = div(gcd(b, 2^b)^(b+1) mod (2^(b+1) monus 1)^2, 2^(b+1) monus 1)
    let pb1 = Term::monus_exact(
        Term::pow(Term::nat(2u32), Term::add(b.clone(), Term::nat(1u32))),
        Term::nat(1u32),
    );
    Term::div(
        Term::modulo(
            Term::pow(
                Term::gcd(b.clone(), Term::pow(Term::nat(2u32), b.clone())),
                Term::add(b, Term::nat(1u32)),
            ),
            Term::pow(pb1.clone(), Term::nat(2u32)),
        ),
        pb1,
    )
}

/// The basic p-adic valuation term of the gcd/binomial chain:
/// `nu_p(n) = div(gcd(n, p^n)^(n+1) mod (p^(n+1) monus 1)^2, p^(n+1) monus 1)`.
/// Variables: `p` is var 0, `n` is var 1.
pub fn nu_p_basic_term() -> Term {
    let p = Term::var(0);
    let n = Term::var(1);
    let q = Term::monus_exact(
        Term::pow(p.clone(), Term::add(n.clone(), Term::nat(1u32))),
        Term::nat(1u32),
    );
    Term::div(
        Term::modulo(
            Term::pow(
                Term::gcd(n.clone(), Term::pow(p, n.clone())),
                Term::add(n, Term::nat(1u32)),
            ),
            Term::pow(q.clone(), Term::nat(2u32)),
        ),
        q,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_value;
    use num_traits::Zero;

    #[test]
    fn delta_cases_from_the_gadget_lemma() {
        // a = 0 packs 2w ones; a != 0 packs exactly w ones.
        assert_eq!(delta(&BigUint::zero(), 3).unwrap(), BigUint::from(63u32));
        assert_eq!(delta(&BigUint::one(), 3).unwrap(), BigUint::from(56u32));
        assert_eq!(
            delta(&BigUint::from(5u32), 3).unwrap(),
            BigUint::from(28u32)
        );
        assert_eq!(hamming_weight(&BigUint::from(63u32)), 6);
        assert_eq!(hamming_weight(&BigUint::from(56u32)), 3);
        assert_eq!(hamming_weight(&BigUint::from(28u32)), 3);
        assert!(delta(&BigUint::from(8u32), 3).is_err());
    }

    #[test]
    fn delta_term_matches_value_level() {
        for w in 1u64..=6 {
            for a in 0..(1u64 << w) {
                let t = delta_term(Term::var(0), Term::var(1));
                let got = eval_value(&t, &[a, w]).unwrap();
                assert_eq!(got, delta(&BigUint::from(a), w).unwrap());
            }
        }
    }

    #[test]
    fn product_term_small_cases() {
        let t = product_term(Term::var(0), Term::var(1));
        assert_eq!(eval_value(&t, &[3, 4]).unwrap(), BigUint::from(12u32));
        assert_eq!(eval_value(&t, &[0, 20]).unwrap(), BigUint::zero());
        assert_eq!(eval_value(&t, &[1, 1]).unwrap(), BigUint::one());
    }

    #[test]
    fn pow_ident_term_follows_conventions() {
        let t = pow_ident_term(Term::var(0), Term::var(1));
        assert_eq!(eval_value(&t, &[3, 4]).unwrap(), BigUint::from(81u32));
        // 0^0 = 1 survives the identity.
        assert_eq!(eval_value(&t, &[0, 0]).unwrap(), BigUint::one());
        assert_eq!(eval_value(&t, &[7, 0]).unwrap(), BigUint::one());
    }

    #[test]
    fn gcd_term_small_cases() {
        let t = gcd_arith_term(Term::var(0), Term::var(1));
        assert_eq!(eval_value(&t, &[6, 4]).unwrap(), BigUint::from(2u32));
        assert_eq!(eval_value(&t, &[1, 12]).unwrap(), BigUint::one());
        assert_eq!(eval_value(&t, &[12, 8]).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn central_binomial_small_cases() {
        let t = central_binomial_term(Term::var(0));
        assert_eq!(eval_value(&t, &[1]).unwrap(), BigUint::from(2u32));
        assert_eq!(eval_value(&t, &[2]).unwrap(), BigUint::from(6u32));
        assert_eq!(eval_value(&t, &[5]).unwrap(), BigUint::from(252u32));
    }

    #[test]
    fn hw_term_agrees_with_popcount_on_small_args() {
        let t = hw_arith_term();
        for n in 0u64..=8 {
            let got = eval_value(&t, &[n]).unwrap();
            assert_eq!(got, BigUint::from(n.count_ones()), "n = {n}");
        }
    }

    #[test]
    fn single_bit_weights() {
        for k in 0..=20u64 {
            assert_eq!(hamming_weight(&(BigUint::one() << k)), 1);
        }
    }

    // Kummer's step: the dyadic valuation of the central binomial coefficient
    // is the Hamming weight. Binomials by Pascal's rule, valuation by
    // repeated division; independent of every term built here.
    #[test]
    fn kummer_cross_check() {
        use crate::gallery::oracles;
        for n in 1u64..=64 {
            let b = oracles::binomial_pascal(2 * n, n);
            let mut v = 0u64;
            let mut b = b;
            let two = BigUint::from(2u32);
            while (&b % &two).is_zero() {
                b /= &two;
                v += 1;
            }
            assert_eq!(v, n.count_ones() as u64, "n = {n}");
        }
    }
}
