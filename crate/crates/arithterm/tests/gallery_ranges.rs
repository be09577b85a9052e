//! Verified ranges of the gallery beyond what the acceptance criteria pin:
//! the fixed-exponent root schemas, the Hamming-weight closed form past the
//! gadget range, domain enforcement, and graceful budget refusal for the
//! uniform-root construction.

use arithterm::eval::{eval, EvalContext, EvalError};
use arithterm::gallery::{self, oracles, term_of, GalleryFn};
use num_traits::ToPrimitive;

fn value(term: &arithterm::Term, args: &[u64]) -> u64 {
    let r = eval(term, &EvalContext::of_u64(args).checked()).unwrap();
    assert!(r.all_checks_passed());
    r.result.to_u64().unwrap()
}

#[test]
fn fixed_exponent_roots_match_search() {
    let root2 = term_of(GalleryFn::Root(2));
    let root3 = term_of(GalleryFn::Root(3));
    for n in 1..=10u64 {
        assert_eq!(value(&root2, &[n]), oracles::iroot(2, n), "root2({n})");
        assert_eq!(value(&root3, &[n]), oracles::iroot(3, n), "root3({n})");
    }
}

#[test]
fn hamming_weight_term_past_the_gadget_range() {
    let hw = gallery::find("hw").unwrap().term();
    for n in 0..=13u64 {
        assert_eq!(value(&hw, &[n]), n.count_ones() as u64, "hw({n})");
    }
    // The binomial argument grows like binom(2n, n) bits; n = 14 passes the
    // default budget.
    match eval(&hw, &EvalContext::of_u64(&[14])) {
        Err(EvalError::BitBudgetExceeded { .. }) => {}
        other => panic!("expected budget refusal at 14, got {other:?}"),
    }
}

#[test]
fn uniform_root_term_evaluation_refuses_gracefully() {
    let entry = gallery::find("uroot").unwrap();
    let term = entry.term();
    match eval(&term, &EvalContext::of_u64(&[2, 4])) {
        Err(EvalError::BitBudgetExceeded { .. }) => {}
        other => panic!("expected budget refusal, got {other:?}"),
    }
}

#[test]
fn domain_predicates_reject_out_of_domain_arguments() {
    let cases: &[(&str, &[u64])] = &[
        ("tau", &[0]),
        ("phi", &[1]),
        ("inv", &[4, 8]),
        ("inv", &[3, 1]),
        ("ord", &[1, 5]),
        ("ord", &[2, 4]),
        ("dlog", &[3, 4, 5]), // 4 is not a primitive root mod 5
        ("dlog", &[2, 2, 8]), // 8 has no primitive roots among 2..8 coprime
        ("nu", &[4, 10]),     // 4 is not prime
        ("rsa", &[9]),
        ("rsa", &[30]),
    ];
    for (name, args) in cases {
        let entry = gallery::find(name).unwrap();
        assert!(
            gallery::oracle_eval(entry, args).is_err(),
            "{name} {args:?} should be rejected"
        );
    }
    // And in-domain calls succeed.
    let entry = gallery::find("ord").unwrap();
    assert_eq!(gallery::oracle_eval(entry, &[2, 5]).unwrap(), 4);
}

#[test]
fn predicate_entries_evaluate_through_their_base_terms() {
    let prime = gallery::find("prime").unwrap();
    let term = prime.term();
    for n in [2u64, 3, 4, 9, 13, 25] {
        let out = prime.eval_term(&term, &[n], 1 << 25, false).unwrap();
        assert_eq!(
            out.value.to_u64().unwrap(),
            u64::from(oracles::is_prime(n)),
            "prime({n})"
        );
    }
}

// The defining property of the inverse: the closed form's value actually
// inverts m modulo n.
#[test]
fn inverse_terms_invert() {
    let inv = term_of(GalleryFn::Inv);
    for n in 2..=10u64 {
        for m in 1..n {
            if oracles::gcd(m, n) == 1 {
                let x = value(&inv, &[m, n]);
                assert_eq!(m * x % n, 1, "inv({m},{n}) = {x}");
            }
        }
    }
}

#[test]
fn report_peak_covers_result_width() {
    let sigma = term_of(GalleryFn::Sigma);
    let r = eval(&sigma, &EvalContext::of_u64(&[12])).unwrap();
    assert!(r.peak_bits >= r.result.bits());
}

// One shared term, many concurrent evaluators: terms are immutable and every
// evaluation owns its context.
#[test]
fn shared_terms_evaluate_concurrently() {
    let phi = std::sync::Arc::new(term_of(GalleryFn::Phi));
    let handles: Vec<_> = (2..=9u64)
        .map(|n| {
            let phi = phi.clone();
            std::thread::spawn(move || {
                let r = eval(&phi, &EvalContext::of_u64(&[n]).checked()).unwrap();
                assert!(r.all_checks_passed());
                assert_eq!(r.result.to_u64().unwrap(), oracles::phi(n), "phi({n})");
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
}
