//! Counting specifications for the gallery functions, built from each
//! function's defining equation system and squared through the compiler
//! pipeline, with box and width bounds generous enough for the packing
//! hypothesis on the whole box.

use crate::compiler::{
    compile_count, gamma_reduce, square_expand, CountingSpec, EquationSystem, ExpMonomial,
};
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GalleryFn {
    /// Number of divisors; count of `n - ab = 0` on `{0..n}^2`.
    Tau,
    /// Sum of divisors; count of `n - (a+b+1)c = 0` on `{0..n}^3`.
    Sigma,
    /// Euler's totient; count of `ab - cn - 1 = 0` on `{0..n}^3`.
    Phi,
    /// Modular inverse; count of `(ma-nb-1)^2 + (a-c-d-1)^2 = 0` on `{0..n}^4`.
    Inv,
    /// Floor square root (plus one) via the chain-reduced system.
    Sqrt,
    /// Floor m-th root (plus one) for a fixed exponent, `a + b^m - n = 0`.
    Root(u32),
    /// Floor logarithm (plus one), `a + m^b - n = 0`.
    Log,
    /// phi(n)/ord(m,n) as a count over `{0..m^phi(n)}^4`.
    Ord,
    /// Discrete log as a count over `{0..g^phi(n)}^4`.
    Dlog,
    /// Floor m-th root with m as an input, over a seven-variable box.
    UniformRoot,
}

fn nat(v: u64) -> Term {
    Term::nat(v)
}

fn add(a: Term, b: Term) -> Term {
    Term::add(a, b)
}

fn mul(a: Term, b: Term) -> Term {
    Term::mul(a, b)
}

/// The totient closed form as a term over one variable, then re-pointed at
/// `var` within an `arity`-variable context. Embedded textually wherever the
/// source formulas write phi(n).
pub fn phi_term_at(var: usize, arity: usize) -> Term {
    let compiled = compile_count(&spec_of(GalleryFn::Phi)).expect("phi spec compiles");
    let mut map: Vec<Term> = (0..arity.max(1)).map(Term::var).collect();
    map[0] = Term::var(var);
    compiled.count_term.substitute(&map)
}

pub fn spec_of(f: GalleryFn) -> CountingSpec {
    match f {
        GalleryFn::Tau => {
            let n = Term::var(0);
            let mut sys = EquationSystem::new(2);
            sys.push(vec![
                ExpMonomial::new(2).coeff(n.clone()),
                ExpMonomial::new(2).gamma(0, 1).gamma(1, 1).neg(),
            ]);
            CountingSpec::new(
                vec!["n".into()],
                add(n.clone(), nat(1)),
                add(n, nat(4)),
                square_expand(&sys),
            )
        }
        GalleryFn::Sigma => {
            let n = Term::var(0);
            let mut sys = EquationSystem::new(3);
            sys.push(vec![
                ExpMonomial::new(3).coeff(n.clone()),
                ExpMonomial::new(3).gamma(0, 1).gamma(2, 1).neg(),
                ExpMonomial::new(3).gamma(1, 1).gamma(2, 1).neg(),
                ExpMonomial::new(3).gamma(2, 1).neg(),
            ]);
            CountingSpec::new(
                vec!["n".into()],
                add(n.clone(), nat(1)),
                add(n, nat(7)),
                square_expand(&sys),
            )
        }
        GalleryFn::Phi => {
            let n = Term::var(0);
            let mut sys = EquationSystem::new(3);
            sys.push(vec![
                ExpMonomial::new(3).gamma(0, 1).gamma(1, 1),
                ExpMonomial::new(3).coeff(n.clone()).gamma(2, 1).neg(),
                ExpMonomial::new(3).neg(),
            ]);
            CountingSpec::new(
                vec!["n".into()],
                add(n.clone(), nat(1)),
                add(n, nat(5)),
                square_expand(&sys),
            )
        }
        GalleryFn::Inv => {
            let m = Term::var(0);
            let n = Term::var(1);
            let mut sys = EquationSystem::new(4);
            sys.push(vec![
                ExpMonomial::new(4).coeff(m).gamma(0, 1),
                ExpMonomial::new(4).coeff(n.clone()).gamma(1, 1).neg(),
                ExpMonomial::new(4).neg(),
            ]);
            sys.push(vec![
                ExpMonomial::new(4).gamma(0, 1),
                ExpMonomial::new(4).gamma(2, 1).neg(),
                ExpMonomial::new(4).gamma(3, 1).neg(),
                ExpMonomial::new(4).neg(),
            ]);
            CountingSpec::new(
                vec!["m".into(), "n".into()],
                add(n.clone(), nat(1)),
                add(n, nat(5)),
                square_expand(&sys),
            )
        }
        GalleryFn::Sqrt => {
            // Chain-reduce the fixed-exponent system for m = 2 so the
            // expansion stays within G_0..G_2.
            let n = Term::var(0);
            let mut sys = EquationSystem::new(2);
            sys.push(vec![
                ExpMonomial::new(2).gamma(0, 1),
                ExpMonomial::new(2).gamma(1, 2),
                ExpMonomial::new(2).coeff(n.clone()).neg(),
            ]);
            let (reduced, map) = gamma_reduce(&sys);
            let mut spec = CountingSpec::new(
                vec!["n".into()],
                add(n.clone(), nat(1)),
                add(n, nat(5)),
                square_expand(&reduced),
            );
            for (_, ys) in &map.chains {
                for &y in ys {
                    spec.aux_box[y] = true;
                }
            }
            spec
        }
        GalleryFn::Root(m) => {
            assert!(m >= 2, "fixed root exponent must be at least 2");
            let n = Term::var(0);
            let mut sys = EquationSystem::new(2);
            sys.push(vec![
                ExpMonomial::new(2).gamma(0, 1),
                ExpMonomial::new(2).gamma(1, m),
                ExpMonomial::new(2).coeff(n.clone()).neg(),
            ]);
            CountingSpec::new(
                vec!["n".into()],
                add(n.clone(), nat(1)),
                mul(nat(2 * m as u64), n),
                square_expand(&sys),
            )
        }
        GalleryFn::Log => {
            let m = Term::var(0);
            let n = Term::var(1);
            let mut sys = EquationSystem::new(2);
            sys.push(vec![
                ExpMonomial::new(2).gamma(0, 1),
                ExpMonomial::new(2).factor(1, m.clone(), nat(1)),
                ExpMonomial::new(2).coeff(n.clone()).neg(),
            ]);
            CountingSpec::new(
                vec!["m".into(), "n".into()],
                add(n.clone(), nat(1)),
                mul(mul(nat(2), m), n),
                square_expand(&sys),
            )
        }
        GalleryFn::Ord => {
            let m = Term::var(0);
            let n = Term::var(1);
            let phi = phi_term_at(1, 2);
            let mut sys = EquationSystem::new(4);
            // m^a - nb - 1
            sys.push(vec![
                ExpMonomial::new(4).factor(0, m.clone(), nat(1)),
                ExpMonomial::new(4).coeff(n.clone()).gamma(1, 1).neg(),
                ExpMonomial::new(4).neg(),
            ]);
            // a - c - 1
            sys.push(vec![
                ExpMonomial::new(4).gamma(0, 1),
                ExpMonomial::new(4).gamma(2, 1).neg(),
                ExpMonomial::new(4).neg(),
            ]);
            // phi(n) - d - a
            sys.push(vec![
                ExpMonomial::new(4).coeff(phi.clone()),
                ExpMonomial::new(4).gamma(3, 1).neg(),
                ExpMonomial::new(4).gamma(0, 1).neg(),
            ]);
            CountingSpec::new(
                vec!["m".into(), "n".into()],
                add(Term::pow(m.clone(), phi.clone()), nat(1)),
                add(mul(nat(2), Term::pow(m, add(phi, nat(1)))), nat(2)),
                square_expand(&sys),
            )
        }
        GalleryFn::Dlog => {
            let m = Term::var(0);
            let g = Term::var(1);
            let n = Term::var(2);
            let phi = phi_term_at(2, 3);
            let mut sys = EquationSystem::new(4);
            // a + b + c + 1 - phi(n)
            sys.push(vec![
                ExpMonomial::new(4).gamma(0, 1),
                ExpMonomial::new(4).gamma(1, 1),
                ExpMonomial::new(4).gamma(2, 1),
                ExpMonomial::new(4),
                ExpMonomial::new(4).coeff(phi.clone()).neg(),
            ]);
            // g^(a+b+1) - nd - m
            sys.push(vec![
                ExpMonomial::new(4)
                    .coeff(g.clone())
                    .factor(0, g.clone(), nat(1))
                    .factor(1, g.clone(), nat(1)),
                ExpMonomial::new(4).coeff(n.clone()).gamma(3, 1).neg(),
                ExpMonomial::new(4).coeff(m).neg(),
            ]);
            let t = add(Term::pow(g.clone(), phi.clone()), nat(1));
            // 5 + 2n + 2g(2 g^phi(n) + 1)
            let w = add(
                add(nat(5), mul(nat(2), n)),
                mul(
                    mul(nat(2), g.clone()),
                    add(mul(nat(2), Term::pow(g, phi)), nat(1)),
                ),
            );
            CountingSpec::new(
                vec!["m".into(), "g".into(), "n".into()],
                t,
                w,
                square_expand(&sys),
            )
        }
        GalleryFn::UniformRoot => {
            let m = Term::var(0);
            let n = Term::var(1);
            let two = || nat(2);
            let mut sys = EquationSystem::new(7);
            // x1 - (m+1) x7 - 1
            sys.push(vec![
                ExpMonomial::new(7).gamma(0, 1),
                ExpMonomial::new(7)
                    .coeff(add(m.clone(), nat(1)))
                    .gamma(6, 1)
                    .neg(),
                ExpMonomial::new(7).neg(),
            ]);
            // x2 - m x1
            sys.push(vec![
                ExpMonomial::new(7).gamma(1, 1),
                ExpMonomial::new(7).coeff(m.clone()).gamma(0, 1).neg(),
            ]);
            // 2^x2 - x3 2^x1 + x3 x7 - x4
            sys.push(vec![
                ExpMonomial::new(7).factor(1, two(), nat(1)),
                ExpMonomial::new(7)
                    .gamma(2, 1)
                    .factor(0, two(), nat(1))
                    .neg(),
                ExpMonomial::new(7).gamma(2, 1).gamma(6, 1),
                ExpMonomial::new(7).gamma(3, 1).neg(),
            ]);
            // x4 + x5 - 2^x1 + x7 + 1
            sys.push(vec![
                ExpMonomial::new(7).gamma(3, 1),
                ExpMonomial::new(7).gamma(4, 1),
                ExpMonomial::new(7).factor(0, two(), nat(1)).neg(),
                ExpMonomial::new(7).gamma(6, 1),
                ExpMonomial::new(7),
            ]);
            // x4 + x6 - n
            sys.push(vec![
                ExpMonomial::new(7).gamma(3, 1),
                ExpMonomial::new(7).gamma(5, 1),
                ExpMonomial::new(7).coeff(n.clone()).neg(),
            ]);
            // s = n m^2 + n m; t = 2^(s+1); w = 2^(s+2) + 2 s + 9.
            let s = add(mul(n.clone(), Term::pow(m.clone(), nat(2))), mul(n, m));
            let t = Term::pow(two(), add(s.clone(), nat(1)));
            let w = add(
                add(Term::pow(two(), add(s.clone(), nat(2))), mul(nat(2), s)),
                nat(9),
            );
            CountingSpec::new(vec!["m".into(), "n".into()], t, w, square_expand(&sys))
        }
    }
}
