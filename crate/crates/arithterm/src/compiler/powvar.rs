//! Elimination of a variable exponent `x_i^(x_j)` through the power identity
//! `n^m = 2^((nm+n+1)m) mod (2^(nm+n+1) monus n)`: five fresh variables and
//! four equations pin the power down as a division with a bounded remainder,
//! and `y_1` substitutes for the occurrence. Each solution of the original
//! equation lifts uniquely.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::term::Term;

use super::{Equation, ExpMonomial};

#[derive(Clone, Debug)]
pub struct PowVarGadget {
    /// The four gadget equations over the widened variable set.
    pub equations: Vec<Equation>,
    /// Box index of the variable that now stands for `x_i^(x_j)`.
    pub y1: usize,
    pub new_k: usize,
}

/// Emit the gadget for an occurrence of `x_i^(x_j)` in a system of arity `k`.
/// Fresh variables are `y1..y5 = k..k+4`, constrained by
/// `y2 = x_i x_j + x_i + 1`, `y3 = y2 x_j`,
/// `(2^y2 - x_i) y4 + y1 = 2^y3`, `y1 + y5 + 1 = 2^y2 - x_i`.
pub fn pow_var_eliminate(k: usize, xi: usize, xj: usize) -> PowVarGadget {
    let new_k = k + 5;
    let (y1, y2, y3, y4, y5) = (k, k + 1, k + 2, k + 3, k + 4);
    let atom = || ExpMonomial::new(new_k);
    let two = || Term::nat(2u32);

    let mut equations = Vec::new();
    // y2 - x_i x_j - x_i - 1
    equations.push(Equation {
        atoms: vec![
            atom().gamma(y2, 1),
            atom().gamma(xi, 1).gamma(xj, 1).neg(),
            atom().gamma(xi, 1).neg(),
            atom().neg(),
        ],
    });
    // y3 - y2 x_j
    equations.push(Equation {
        atoms: vec![atom().gamma(y3, 1), atom().gamma(y2, 1).gamma(xj, 1).neg()],
    });
    // 2^y2 y4 - x_i y4 + y1 - 2^y3
    equations.push(Equation {
        atoms: vec![
            atom().gamma(y4, 1).factor(y2, two(), Term::nat(1u32)),
            atom().gamma(xi, 1).gamma(y4, 1).neg(),
            atom().gamma(y1, 1),
            atom().factor(y3, two(), Term::nat(1u32)).neg(),
        ],
    });
    // y1 + y5 + 1 - 2^y2 + x_i
    equations.push(Equation {
        atoms: vec![
            atom().gamma(y1, 1),
            atom().gamma(y5, 1),
            atom(),
            atom().factor(y2, two(), Term::nat(1u32)).neg(),
            atom().gamma(xi, 1),
        ],
    });

    PowVarGadget {
        equations,
        y1,
        new_k,
    }
}

/// Count gadget solutions at a fixed `(x_i, x_j)` and return the `y1` of the
/// lift if there is exactly one. Any zero of the squared gadget determines
/// `y2` and `y3` outright, bounds `y1` below `2^y2 - x_i` and determines `y4`
/// and `y5` from `y1`, so sweeping `y1` alone enumerates every solution.
pub fn count_gadget_solutions(xi: u64, xj: u64) -> (u64, Option<BigUint>) {
    let y2 = xi * xj + xi + 1;
    let y3 = y2 * xj;
    let d = (BigUint::one() << y2) - BigUint::from(xi);
    let p3 = BigUint::one() << y3;
    let mut count = 0u64;
    let mut witness = None;
    let mut y1 = BigUint::zero();
    while y1 < d {
        // y4 must make (2^y2 - x_i) y4 + y1 = 2^y3 hold exactly.
        if p3 >= y1 {
            let (q, r) = (&p3 - &y1).div_rem(&d);
            let _ = q;
            if r.is_zero() {
                count += 1;
                witness = Some(y1.clone());
            }
        }
        y1 += BigUint::one();
    }
    (count, if count == 1 { witness } else { None })
}

/// Direct power under the `0^0 = 1` convention, for oracle checks.
pub fn pow_convention(x: u64, y: u64) -> BigUint {
    if y == 0 {
        return BigUint::one();
    }
    num_traits::Pow::pow(&BigUint::from(x), y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn gadget_has_unique_lift_matching_the_power() {
        for xi in 0u64..=3 {
            for xj in 0u64..=3 {
                let (count, y1) = count_gadget_solutions(xi, xj);
                assert_eq!(count, 1, "x=({xi},{xj})");
                assert_eq!(y1.unwrap(), pow_convention(xi, xj), "x=({xi},{xj})");
            }
        }
    }

    #[test]
    fn lift_values_satisfy_every_equation() {
        use super::super::EquationSystem;
        let gadget = pow_var_eliminate(2, 0, 1);
        let sys = EquationSystem {
            k: gadget.new_k,
            equations: gadget.equations.clone(),
        };
        for (xi, xj) in [(2u64, 3u64), (0, 0), (1, 4), (3, 2)] {
            let y2 = xi * xj + xi + 1;
            let y3 = y2 * xj;
            let d = (1u64 << y2) - xi;
            let y1 = pow_convention(xi, xj).to_u64().unwrap();
            let y4 = ((1u128 << y3) - y1 as u128) as u64 / d;
            let y5 = d - 1 - y1;
            let point = [xi, xj, y1, y2, y3, y4, y5];
            let q = sys.eval_sum_of_squares(&[], &point).unwrap();
            assert!(q.is_zero(), "x=({xi},{xj}) point={point:?} gives {q}");
        }
    }
}
