//! The brute-force counting oracle: walk every box point and count the zeros
//! of the polynomial directly. Independent of the emission path; every
//! compiled counter is tested against it.
//!
//! Points are screened with wrapping 64-bit arithmetic first; only residues
//! that vanish mod 2^64 get the exact big-integer recheck, so the count is
//! exact at a fraction of the bignum cost.

use num_traits::Zero;
use rayon::prelude::*;

use super::{big_pow_u128, CompilerError, CountingSpec, GroundPoly};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

pub fn enumerate_count(
    spec: &CountingSpec,
    bindings: &[u64],
    budget: u64,
) -> Result<u64, CompilerError> {
    use num_traits::ToPrimitive;
    let (poly, t, _w) = spec.ground(bindings)?;
    let t = t
        .to_u64()
        .ok_or_else(|| CompilerError::TooLarge("box bound does not fit u64".to_string()))?;
    let points = big_pow_u128(t, spec.k);
    if points > budget as u128 {
        return Err(CompilerError::EnumerationBudget { points, budget });
    }
    if poly.monomials.is_empty() {
        // Only the constant part: either everything or nothing vanishes.
        return Ok(if poly.epsilon.is_zero() {
            points as u64
        } else {
            0
        });
    }

    let screen = Screen::new(&poly, t)?;
    let k = spec.k;
    // Fan out over the last coordinate; each worker owns a sub-box.
    let count: u64 = (0..t)
        .into_par_iter()
        .map(|last| {
            let mut point = vec![0u64; k];
            point[k - 1] = last;
            let mut partials: Vec<u64> = screen.coeffs.clone();
            for (m, p) in partials.iter_mut().enumerate() {
                *p = p.wrapping_mul(screen.tables[m][k - 1][last as usize]);
            }
            count_rec(&poly, &screen, &mut point, partials, k - 1)
        })
        .sum();
    Ok(count)
}

// Recurse over dimensions 0..limit with per-monomial running products.
fn count_rec(
    poly: &GroundPoly,
    screen: &Screen,
    point: &mut [u64],
    partials: Vec<u64>,
    limit: usize,
) -> u64 {
    if limit == 0 {
        let mut acc = screen.epsilon;
        for (m, p) in partials.iter().enumerate() {
            if screen.negative[m] {
                acc = acc.wrapping_sub(*p);
            } else {
                acc = acc.wrapping_add(*p);
            }
        }
        if acc == 0 && poly.eval_point(point).is_zero() {
            return 1;
        }
        return 0;
    }
    let dim = limit - 1;
    let mut total = 0;
    for a in 0..screen.t {
        point[dim] = a;
        let next: Vec<u64> = partials
            .iter()
            .enumerate()
            .map(|(m, p)| p.wrapping_mul(screen.tables[m][dim][a as usize]))
            .collect();
        total += count_rec(poly, screen, point, next, dim);
    }
    total
}

/// Per-monomial, per-dimension tables of `(base^mult)^a * a^gamma mod 2^64`.
struct Screen {
    t: u64,
    epsilon: u64,
    coeffs: Vec<u64>,
    negative: Vec<bool>,
    tables: Vec<Vec<Vec<u64>>>,
}

impl Screen {
    fn new(poly: &GroundPoly, t: u64) -> Result<Screen, CompilerError> {
        use crate::blocks::Sign;
        use num_traits::ToPrimitive;
        let low64 = |v: &num_bigint::BigUint| -> u64 {
            let digits = v.to_u64_digits();
            digits.first().copied().unwrap_or(0)
        };
        let mut coeffs = Vec::new();
        let mut negative = Vec::new();
        let mut tables = Vec::new();
        for m in &poly.monomials {
            coeffs.push(low64(&m.coeff));
            negative.push(m.sign == Sign::Minus);
            let mut per_dim = Vec::with_capacity(poly.k);
            for i in 0..poly.k {
                let step = match &m.factors[i] {
                    None => 1u64,
                    Some((base, mult)) => {
                        let e = mult.to_u64().ok_or_else(|| {
                            CompilerError::TooLarge(
                                "factor multiplier does not fit u64".to_string(),
                            )
                        })?;
                        wrapping_pow(low64(base), e)
                    }
                };
                let gamma = m.gammas[i];
                let mut col = Vec::with_capacity(t as usize);
                let mut exp_part = 1u64;
                for a in 0..t {
                    let mut v = exp_part;
                    for _ in 0..gamma {
                        v = v.wrapping_mul(a);
                    }
                    col.push(v);
                    exp_part = exp_part.wrapping_mul(step);
                }
                per_dim.push(col);
            }
            tables.push(per_dim);
        }
        Ok(Screen {
            t,
            epsilon: low64(&poly.epsilon),
            coeffs,
            negative,
            tables,
        })
    }
}

fn wrapping_pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.wrapping_mul(base);
        }
        base = base.wrapping_mul(base);
        exp >>= 1;
    }
    acc
}
