//! Squaring and expansion of an equation system into a merged exponential
//! polynomial: `sum_i S_i^2`, like monomials combined.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::blocks::Sign;
use crate::term::{Term, TermNode};

use super::{EquationSystem, ExpFactor, ExpMonomial, ExpPolynomial};

/// Expand `sum_i S_i^2` into a simple exponential polynomial. Monomials with
/// the same sign, variable powers and exponential factors merge by adding
/// coefficients; opposite-sign pairs with equal shape are kept apart, which
/// only costs term size. Constant monomials fold into `epsilon`, emitted as
/// `pos monus neg`; the sum-of-squares origin keeps that difference
/// nonnegative.
pub fn square_expand(system: &EquationSystem) -> ExpPolynomial {
    let k = system.k;
    let mut order: Vec<ExpMonomial> = Vec::new();
    let mut index: HashMap<(Sign, Vec<u32>, Vec<Option<ExpFactor>>), usize> = HashMap::new();

    let push = |m: ExpMonomial, order: &mut Vec<ExpMonomial>, index: &mut HashMap<_, usize>| {
        if m.coeff.is_const(0) {
            return;
        }
        let key = (m.sign, m.gammas.clone(), m.factors.clone());
        match index.get(&key) {
            Some(&i) => {
                let merged = coeff_add(&order[i].coeff, &m.coeff);
                order[i].coeff = merged;
            }
            None => {
                index.insert(key, order.len());
                order.push(m);
            }
        }
    };

    for eq in &system.equations {
        let n = eq.atoms.len();
        for i in 0..n {
            push(mono_square(&eq.atoms[i]), &mut order, &mut index);
            for j in i + 1..n {
                push(
                    mono_cross(&eq.atoms[i], &eq.atoms[j]),
                    &mut order,
                    &mut index,
                );
            }
        }
    }

    // Split off the constant part as epsilon.
    let mut pos: Option<Term> = None;
    let mut neg: Option<Term> = None;
    let mut monomials = Vec::new();
    for m in order {
        if m.is_constant() {
            let slot = if m.sign == Sign::Plus {
                &mut pos
            } else {
                &mut neg
            };
            *slot = Some(match slot.take() {
                None => m.coeff,
                Some(acc) => coeff_add(&acc, &m.coeff),
            });
        } else {
            monomials.push(m);
        }
    }
    let epsilon = match (pos, neg) {
        (None, None) => Term::nat(0u32),
        (Some(p), None) => p,
        (None, Some(_)) => unreachable!("a sum of squares has no negative constant part"),
        (Some(p), Some(n)) => match (const_of(&p), const_of(&n)) {
            // The constant part of a sum of squares is itself a sum of
            // squares of the equations' constant subsums, so pos >= neg.
            (Some(pv), Some(nv)) => {
                assert!(pv >= nv, "sum-of-squares constant part is nonnegative");
                Term::nat(pv - nv)
            }
            _ => Term::monus_exact(p, n),
        },
    };

    ExpPolynomial {
        k,
        epsilon,
        monomials,
    }
}

fn mono_square(m: &ExpMonomial) -> ExpMonomial {
    let gammas = m.gammas.iter().map(|g| g * 2).collect();
    let factors = m
        .factors
        .iter()
        .map(|f| {
            f.as_ref().map(|f| ExpFactor {
                base: f.base.clone(),
                mult: coeff_double_term(&f.mult),
            })
        })
        .collect();
    ExpMonomial {
        sign: Sign::Plus,
        coeff: coeff_square(&m.coeff),
        gammas,
        factors,
    }
}

fn mono_cross(a: &ExpMonomial, b: &ExpMonomial) -> ExpMonomial {
    let gammas = a.gammas.iter().zip(&b.gammas).map(|(x, y)| x + y).collect();
    let factors = a
        .factors
        .iter()
        .zip(&b.factors)
        .map(|(x, y)| merge_factors(x.as_ref(), y.as_ref()))
        .collect();
    ExpMonomial {
        sign: a.sign.product(b.sign),
        coeff: coeff_double(&coeff_mul(&a.coeff, &b.coeff)),
        gammas,
        factors,
    }
}

/// Combine the exponential factors of one variable: equal bases add their
/// multipliers; distinct bases collapse into a single product base with
/// multiplier one.
fn merge_factors(a: Option<&ExpFactor>, b: Option<&ExpFactor>) -> Option<ExpFactor> {
    match (a, b) {
        (None, None) => None,
        (Some(f), None) | (None, Some(f)) => Some(f.clone()),
        (Some(x), Some(y)) => {
            if x.base == y.base {
                Some(ExpFactor {
                    base: x.base.clone(),
                    mult: coeff_add(&x.mult, &y.mult),
                })
            } else {
                let base = Term::mul(pow_or_base(&x.base, &x.mult), pow_or_base(&y.base, &y.mult));
                Some(ExpFactor {
                    base,
                    mult: Term::nat(1u32),
                })
            }
        }
    }
}

fn pow_or_base(base: &Term, mult: &Term) -> Term {
    if mult.is_const(1) {
        base.clone()
    } else {
        Term::pow(base.clone(), mult.clone())
    }
}

fn const_of(t: &Term) -> Option<BigUint> {
    match t.node() {
        TermNode::Const(c) => Some(c.clone()),
        _ => None,
    }
}

pub(crate) fn coeff_add(a: &Term, b: &Term) -> Term {
    match (const_of(a), const_of(b)) {
        (Some(x), Some(y)) => Term::nat(x + y),
        _ => Term::add(a.clone(), b.clone()),
    }
}

pub(crate) fn coeff_mul(a: &Term, b: &Term) -> Term {
    if a.is_const(1) {
        return b.clone();
    }
    if b.is_const(1) {
        return a.clone();
    }
    match (const_of(a), const_of(b)) {
        (Some(x), Some(y)) => Term::nat(x * y),
        _ => Term::mul(a.clone(), b.clone()),
    }
}

fn coeff_double(c: &Term) -> Term {
    coeff_mul(&Term::nat(2u32), c)
}

fn coeff_double_term(c: &Term) -> Term {
    match const_of(c) {
        Some(v) => Term::nat(v * 2u32),
        None => Term::mul(Term::nat(2u32), c.clone()),
    }
}

fn coeff_square(c: &Term) -> Term {
    match const_of(c) {
        Some(v) => Term::nat(&v * &v),
        None => Term::pow(c.clone(), Term::nat(2u32)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_value;

    // (n - x1 x2)^2 = n^2 - 2n x1 x2 + x1^2 x2^2.
    #[test]
    fn divisor_count_square() {
        let mut sys = EquationSystem::new(2);
        sys.push(vec![
            ExpMonomial::new(2).coeff(Term::var(0)),
            ExpMonomial::new(2).gamma(0, 1).gamma(1, 1).neg(),
        ]);
        let poly = square_expand(&sys);
        assert_eq!(poly.epsilon, Term::pow(Term::var(0), Term::nat(2u32)));
        assert_eq!(poly.monomials.len(), 2);
        assert_eq!(poly.monomials[0].sign, Sign::Minus);
        assert_eq!(poly.monomials[0].gammas, vec![1, 1]);
        assert_eq!(
            eval_value(&poly.monomials[0].coeff, &[7]).unwrap(),
            BigUint::from(14u32)
        );
        assert_eq!(poly.monomials[1].sign, Sign::Plus);
        assert_eq!(poly.monomials[1].gammas, vec![2, 2]);
    }

    #[test]
    fn empty_system_is_the_zero_polynomial() {
        let sys = EquationSystem::new(1);
        let poly = square_expand(&sys);
        assert!(poly.epsilon.is_const(0));
        assert!(poly.monomials.is_empty());
    }

    #[test]
    fn expansion_agrees_with_direct_squaring_pointwise() {
        // Two equations with exponential factors and mixed signs.
        let mut sys = EquationSystem::new(2);
        sys.push(vec![
            ExpMonomial::new(2)
                .coeff_u(1)
                .factor(0, Term::nat(2u32), Term::nat(1u32)),
            ExpMonomial::new(2).coeff(Term::var(0)).gamma(1, 1).neg(),
            ExpMonomial::new(2).coeff_u(1).neg(),
        ]);
        sys.push(vec![
            ExpMonomial::new(2).coeff_u(1).gamma(0, 1),
            ExpMonomial::new(2).coeff_u(1).gamma(1, 1).neg(),
        ]);
        let poly = square_expand(&sys);
        for n in 0u64..4 {
            for x1 in 0u64..4 {
                for x2 in 0u64..4 {
                    let direct = sys.eval_sum_of_squares(&[n], &[x1, x2]).unwrap();
                    let expanded = poly.eval_signed(&[n], &[x1, x2]).unwrap();
                    assert_eq!(direct, expanded, "n={n} x=({x1},{x2})");
                }
            }
        }
    }
}
