//! The two block shapes the counting compiler emits: the constant block
//! `C(eps, k) = (2^w - eps + 1)(2^(2w t^k) - 1) / (2^w + 1)` and one
//! `A(m, k) = -(2^w - 1) a G_g1(b1^v1 2^(2w), t-1) ... G_gk(bk^vk 2^(2w t^(k-1)), t-1)`
//! per monomial. Both come with an exact value-level twin used by the
//! box-enumeration oracles.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::geom::{gen_g_formula, geom_sum};
use crate::term::Term;
use crate::DomainError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn product(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn apply(self, mag: BigUint) -> BigInt {
        let v = BigInt::from(mag);
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }
}

/// Shared subterms for emitting the blocks of one compiled counter: `2^w`,
/// `t - 1`, and the concatenation strides `2 w t^i` for `i = 0..=k`.
pub struct BlockCx {
    pub t: Term,
    pub w: Term,
    pub tau: Term,
    pub pow2w: Term,
    strides: Vec<Term>,
}

impl BlockCx {
    pub fn new(t: &Term, w: &Term, k: usize) -> BlockCx {
        let two_w = Term::mul(Term::nat(2u32), w.clone());
        let strides = (0..=k)
            .map(|i| match i {
                0 => two_w.clone(),
                1 => Term::mul(two_w.clone(), t.clone()),
                _ => Term::mul(two_w.clone(), Term::pow(t.clone(), Term::nat(i as u64))),
            })
            .collect();
        BlockCx {
            t: t.clone(),
            w: w.clone(),
            tau: Term::monus_exact(t.clone(), Term::nat(1u32)),
            pow2w: Term::pow(Term::nat(2u32), w.clone()),
            strides,
        }
    }

    /// `2 w t^i`, the bit offset stride of box variable `i`.
    pub fn stride(&self, i: usize) -> &Term {
        &self.strides[i]
    }

    /// The constant block. The monus `2^w - eps` is exact whenever the
    /// `eps < 2^w` width hypothesis holds; checked evaluation flags the rest.
    pub fn c_block(&self, eps: &Term) -> Term {
        let k = self.strides.len() - 1;
        let numerator = Term::mul(
            Term::add(
                Term::monus_exact(self.pow2w.clone(), eps.clone()),
                Term::nat(1u32),
            ),
            Term::monus_exact(
                Term::pow(Term::nat(2u32), self.stride(k).clone()),
                Term::nat(1u32),
            ),
        );
        Term::div_exact(numerator, Term::add(self.pow2w.clone(), Term::nat(1u32)))
    }

    /// One monomial block. Returns the sign of the block's value together
    /// with its magnitude term; the sign is the flip of the coefficient's.
    pub fn a_block(
        &self,
        coeff_sign: Sign,
        coeff: &Term,
        gammas: &[u32],
        factors: &[Option<(Term, Term)>],
    ) -> (Sign, Term) {
        let mut product = Term::monus_exact(self.pow2w.clone(), Term::nat(1u32));
        if !coeff.is_const(1) {
            product = Term::mul(product, coeff.clone());
        }
        for (i, (&gamma, factor)) in gammas.iter().zip(factors).enumerate() {
            let base = Term::pow(Term::nat(2u32), self.stride(i).clone());
            let q = match factor {
                None => base,
                Some((b, m)) => Term::mul(Term::pow(b.clone(), m.clone()), base),
            };
            let g = gen_g_formula(gamma).as_term(&q, &self.tau);
            product = Term::mul(product, g);
        }
        (coeff_sign.flip(), product)
    }
}

/// Standalone constant block, `C(eps, k, t, w)`.
pub fn c_block(eps: &Term, k: usize, t: &Term, w: &Term) -> Term {
    BlockCx::new(t, w, k).c_block(eps)
}

/// Standalone monomial block, `A(a, U, B, V, k, t, w)`.
pub fn a_block(
    coeff_sign: Sign,
    coeff: &Term,
    gammas: &[u32],
    factors: &[Option<(Term, Term)>],
    t: &Term,
    w: &Term,
) -> (Sign, Term) {
    BlockCx::new(t, w, gammas.len()).a_block(coeff_sign, coeff, gammas, factors)
}

/// Exact value of the constant block.
pub fn c_value(eps: &BigUint, k: u32, t: &BigUint, w: u64) -> Result<BigUint, DomainError> {
    let pw = BigUint::one() << w;
    if *eps >= pw {
        return Err(DomainError("c block needs eps < 2^w".to_string()));
    }
    let mut tk = BigUint::one();
    for _ in 0..k {
        tk *= t;
    }
    use num_traits::ToPrimitive;
    let e = (BigUint::from(2u32) * w * &tk)
        .to_u64()
        .ok_or_else(|| DomainError("c block stride too large to evaluate".to_string()))?;
    let numerator = (&pw - eps + BigUint::one()) * ((BigUint::one() << e) - BigUint::one());
    let den = &pw + BigUint::one();
    let (q, r) = num_integer::Integer::div_rem(&numerator, &den);
    if !r.is_zero() {
        return Err(DomainError("c block division was not exact".to_string()));
    }
    Ok(q)
}

/// Exact signed value of one monomial block.
pub fn a_value(
    coeff: &BigInt,
    gammas: &[u32],
    factors: &[Option<(BigUint, BigUint)>],
    t: &BigUint,
    w: u64,
) -> Result<BigInt, DomainError> {
    use num_traits::ToPrimitive;
    let pw = (BigUint::one() << w) - BigUint::one();
    let tau = t - BigUint::one();
    let mut acc = BigInt::from(pw) * -coeff;
    let mut stride = BigUint::from(2u32) * w;
    for (&gamma, factor) in gammas.iter().zip(factors) {
        let e = stride
            .to_u64()
            .ok_or_else(|| DomainError("a block stride too large to evaluate".to_string()))?;
        let mut q = BigUint::one() << e;
        if let Some((b, m)) = factor {
            let me = m
                .to_u64()
                .ok_or_else(|| DomainError("factor multiplier too large".to_string()))?;
            q *= num_traits::Pow::pow(b, me);
        }
        acc *= BigInt::from(geom_sum(gamma, &q, &tau)?);
        stride *= t;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::delta;
    use crate::eval::eval_value;

    // Direct box sum: sum over the box of 2^(2 w v(a)) * delta(P(a), w),
    // with P given pointwise. The independent oracle for both block shapes.
    fn box_sum(k: u32, t: u64, w: u64, poly: impl Fn(&[u64]) -> BigInt) -> BigUint {
        let mut acc = BigUint::zero();
        let mut point = vec![0u64; k as usize];
        loop {
            let v: u64 = point
                .iter()
                .enumerate()
                .map(|(i, &a)| a * t.pow(i as u32))
                .sum();
            let p = poly(&point);
            let p = p.to_biguint().expect("poly must be nonnegative on the box");
            acc += delta(&p, w).expect("poly must fit the width") << (2 * w * v);
            let mut dim = 0;
            loop {
                if dim == k as usize {
                    return acc;
                }
                point[dim] += 1;
                if point[dim] < t {
                    break;
                }
                point[dim] = 0;
                dim += 1;
            }
        }
    }

    #[test]
    fn c_block_with_zero_eps_collapses() {
        // Full cancellation: C(0, k) = 2^(2 w t^k) - 1.
        let t = BigUint::from(3u32);
        let got = c_value(&BigUint::zero(), 2, &t, 5).unwrap();
        assert_eq!(got, (BigUint::one() << (2 * 5 * 9)) - BigUint::one());
    }

    #[test]
    fn c_block_matches_box_sum() {
        // eps = 1, k = 3, t = 3, w = 6 against direct box enumeration.
        let got = c_value(&BigUint::one(), 3, &BigUint::from(3u32), 6).unwrap();
        let want = box_sum(3, 3, 6, |_| BigInt::one());
        assert_eq!(got, want);
        // And the term route agrees.
        let term = c_block(&Term::nat(1u32), 3, &Term::nat(3u32), &Term::nat(6u32));
        assert_eq!(eval_value(&term, &[]).unwrap(), want);
    }

    #[test]
    fn a_block_matches_signed_box_sum() {
        // The tau monomial -2n x1 x2 at n = 1, t = 2, w = 5: the block value
        // must equal the box sum of -(2^w - 1) * (-2n) * a1 a2 * 2^(2 w v).
        let n = 1i64;
        let t = BigUint::from(2u32);
        let coeff = BigInt::from(-2 * n);
        let got = a_value(&coeff, &[1, 1], &[None, None], &t, 5).unwrap();
        let mut want = BigInt::zero();
        for a1 in 0u64..2 {
            for a2 in 0u64..2 {
                let v = a1 + 2 * a2;
                let contrib = BigInt::from((BigUint::one() << 5u32) - BigUint::one())
                    * -&coeff
                    * BigInt::from(a1 * a2)
                    * BigInt::from(BigUint::one() << (2 * 5 * v));
                want += contrib;
            }
        }
        assert_eq!(got, want);
        // Term route, same numbers.
        let (sign, mag) = a_block(
            Sign::Minus,
            &Term::nat(2u32),
            &[1, 1],
            &[None, None],
            &Term::nat(2u32),
            &Term::nat(5u32),
        );
        assert_eq!(sign, Sign::Plus);
        assert_eq!(BigInt::from(eval_value(&mag, &[]).unwrap()), want);
    }

    #[test]
    fn sum_to_product_identity_on_small_boxes() {
        // sum over the box of a1^u1 v1^a1 ... equals the product of G's,
        // for up to three variables with exponents <= 2.
        fn weight(a: u64, u: u32, v: u64) -> BigUint {
            let mut x = BigUint::one();
            for _ in 0..u {
                x *= a;
            }
            x * num_traits::Pow::pow(&BigUint::from(v), a)
        }
        let cases: Vec<(Vec<u32>, Vec<u64>)> = vec![
            (vec![0, 1], vec![2, 3]),
            (vec![2, 1], vec![2, 2]),
            (vec![1, 2], vec![3, 2]),
            (vec![0, 1, 2], vec![2, 3, 2]),
            (vec![2, 2, 2], vec![2, 2, 3]),
            (vec![1, 0, 1], vec![4, 2, 2]),
        ];
        for t in 2u64..=4 {
            for (u, v) in &cases {
                let k = u.len();
                let mut brute = BigUint::zero();
                let mut point = vec![0u64; k];
                'outer: loop {
                    let mut w = BigUint::one();
                    for i in 0..k {
                        w *= weight(point[i], u[i], v[i]);
                    }
                    brute += w;
                    let mut dim = 0;
                    loop {
                        if dim == k {
                            break 'outer;
                        }
                        point[dim] += 1;
                        if point[dim] < t {
                            break;
                        }
                        point[dim] = 0;
                        dim += 1;
                    }
                }
                let tau = BigUint::from(t - 1);
                let mut prod = BigUint::one();
                for i in 0..k {
                    prod *= geom_sum(u[i], &BigUint::from(v[i]), &tau).unwrap();
                }
                assert_eq!(brute, prod, "t={t} u={u:?} v={v:?}");
            }
        }
    }
}
