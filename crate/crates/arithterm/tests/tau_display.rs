//! The explicitly displayed divisor-count `M(n)`, transcribed with exact
//! rational arithmetic, against the emitted term. This pins the emission to
//! the reference shape, inverse powers and all.

use arithterm::eval::{eval, EvalContext};
use arithterm::gallery::{spec_of, GalleryFn};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};

fn p2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// The display, as a sum of three products over exact rationals
/// (numerator, denominator kept separate).
fn tau_m_display(n: u64) -> BigUint {
    let n2 = n * n;
    let w = n + 4;
    // (2^(n+4) - n^2 + 1) (2^(n+4) + 1)^-1 (2^(2(n+4)(n+1)^2) - 1)
    let a_num = (p2(w) - n2 + 1u32) * (p2(2 * w * (n + 1) * (n + 1)) - 1);
    let a_den = p2(w) + 1;
    // 2^(2(n+4)(n+2)+1) n (2^(n+4) - 1) (2^(2(n+4)) - 1)^-2 (2^(2(n+4)(n+1)) - 1)^-2
    //   (2^(2(n+4)(n+1)) n - 2^(2(n+4)n) (n+1) + 1)
    //   (2^(2(n+4)(n+1)^2) n - 2^(2(n+4)(n+1)n) (n+1) + 1)
    let b_num = p2(2 * w * (n + 2) + 1)
        * n
        * (p2(w) - 1)
        * (p2(2 * w * (n + 1)) * n - p2(2 * w * n) * (n + 1) + 1)
        * (p2(2 * w * (n + 1) * (n + 1)) * n - p2(2 * w * (n + 1) * n) * (n + 1) + 1);
    let b_den = Pow::pow(&(p2(2 * w) - 1), 2u32) * Pow::pow(&(p2(2 * w * (n + 1)) - 1), 2u32);
    // 2^(2(n+4)(n+2)) (2^(n+4) - 1) (2^(2(n+4)) - 1)^-3 (2^(2(n+4)(n+1)) - 1)^-3
    //   (2^(2(n+4)(n+2)) n^2 - 2^(2(n+4)(n+1)) (2n^2+2n-1) + 2^(2(n+4)n) (n+1)^2 - 2^(2(n+4)) - 1)
    //   (2^(2(n+4)(n+1)(n+2)) n^2 - 2^(2(n+4)(n+1)^2) (2n^2+2n-1) + 2^(2(n+4)(n+1)n) (n+1)^2
    //      - 2^(2(n+4)(n+1)) - 1)
    let c_num = p2(2 * w * (n + 2))
        * (p2(w) - 1)
        * (p2(2 * w * (n + 2)) * n2 - p2(2 * w * (n + 1)) * (2 * n2 + 2 * n - 1)
            + p2(2 * w * n) * (n + 1) * (n + 1)
            - p2(2 * w)
            - 1)
        * (p2(2 * w * (n + 1) * (n + 2)) * n2
            - p2(2 * w * (n + 1) * (n + 1)) * (2 * n2 + 2 * n - 1)
            + p2(2 * w * (n + 1) * n) * (n + 1) * (n + 1)
            - p2(2 * w * (n + 1))
            - 1);
    let c_den = Pow::pow(&(p2(2 * w) - 1), 3u32) * Pow::pow(&(p2(2 * w * (n + 1)) - 1), 3u32);

    // Common denominator, exact integer at the end.
    let num: BigInt =
        &a_num * &b_den * &c_den + &b_num * &a_den * &c_den - &c_num * &a_den * &b_den;
    let den: BigInt = a_den * b_den * c_den;
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(
        r.is_zero() && !q.is_negative(),
        "display must be an exact natural"
    );
    q.to_biguint().unwrap()
}

#[test]
fn emitted_m_matches_the_explicit_display() {
    let compiled = arithterm::compiler::compile_count(&spec_of(GalleryFn::Tau)).unwrap();
    for n in 1u64..=6 {
        let got = eval(&compiled.m_term, &EvalContext::of_u64(&[n]).checked()).unwrap();
        assert!(got.all_checks_passed());
        assert_eq!(got.result, tau_m_display(n), "n={n}");
    }
}
