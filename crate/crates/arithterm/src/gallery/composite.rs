//! Composite constructions on top of the gallery closed forms: recovery of
//! the larger prime factor of a squarefree semiprime, and inversion of
//! Cantor's pairing function.

use crate::term::Term;
use crate::DomainError;

use super::oracles;
use super::specs::{phi_term_at, GalleryFn};
use super::terms::term_of;

/// `q` from `N = pq` with `p < q` primes:
/// `q = (N - phi(N) + 1 + isqrt((N - phi(N) + 1)^2 - 4N)) / 2`.
pub fn rsa_factor(n: u64) -> Result<u64, DomainError> {
    let (p, q) = oracles::semiprime_factors(n)
        .ok_or_else(|| DomainError(format!("{n} is not a squarefree semiprime with p < q")))?;
    let phi = oracles::phi(n);
    let u = n - phi + 1;
    let s = u * u - 4 * n;
    let got = (u + oracles::isqrt(s)) / 2;
    debug_assert_eq!((p, got), (n / got, q));
    Ok(got)
}

/// The factor-recovery closed form over one variable `N`, composing the
/// totient term with the square-root term.
pub fn rsa_factor_term() -> Term {
    rsa_factor_term_impl(phi_term_at(0, 1))
}

/// The same composition with the totient subterm replaced by a known value:
/// the accelerated path for arguments whose embedded totient counter would
/// pass the bit budget. Only valid at inputs with that totient.
pub fn rsa_factor_term_with_phi(phi_value: u64) -> Term {
    rsa_factor_term_impl(Term::nat(phi_value))
}

fn rsa_factor_term_impl(phi: Term) -> Term {
    let n = Term::var(0);
    // u = N - phi(N) + 1; s = u^2 - 4N = (q - p)^2; q = (u + sqrt(s)) / 2.
    let u = Term::add(Term::monus_exact(n.clone(), phi), Term::nat(1u32));
    let s = Term::monus_exact(
        Term::pow(u.clone(), Term::nat(2u32)),
        Term::mul(Term::nat(4u32), n),
    );
    let sqrt_s = term_of(GalleryFn::Sqrt).substitute(&[s]);
    Term::div_exact(Term::add(u, sqrt_s), Term::nat(2u32))
}

/// Invert Cantor's pairing: the `(x, y)` with `(x+y)(x+y+1)/2 + x = n`.
pub fn cantor_unpair(n: u64) -> (u64, u64) {
    let root = oracles::isqrt(8 * n + 1);
    let w = (root + root % 2 - 2) / 2;
    let t = (w * w + w) / 2;
    let x = n - t;
    let y = w - x;
    (x, y)
}

fn cantor_w_term() -> Term {
    let n = Term::var(0);
    let root = term_of(GalleryFn::Sqrt)
        .substitute(&[Term::add(Term::mul(Term::nat(8u32), n), Term::nat(1u32))]);
    // w = (root - 2 + root mod 2) / 2; the floor absorbs the n = 0 case.
    Term::div(
        Term::add(
            Term::monus(root.clone(), Term::nat(2u32)),
            Term::modulo(root, Term::nat(2u32)),
        ),
        Term::nat(2u32),
    )
}

fn cantor_t_term(w: &Term) -> Term {
    Term::div_exact(
        Term::add(Term::pow(w.clone(), Term::nat(2u32)), w.clone()),
        Term::nat(2u32),
    )
}

/// First coordinate of the unpairing, `x(n) = n - (w^2 + w)/2`.
pub fn cantor_x_term() -> Term {
    let w = cantor_w_term();
    Term::monus_exact(Term::var(0), cantor_t_term(&w))
}

/// Second coordinate, `y(n) = w - x(n)`.
pub fn cantor_y_term() -> Term {
    let w = cantor_w_term();
    Term::monus_exact(
        w.clone(),
        Term::monus_exact(Term::var(0), cantor_t_term(&w)),
    )
}
