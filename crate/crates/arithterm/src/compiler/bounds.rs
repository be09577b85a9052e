//! Width-bound validation for counting specs: a sound plus-substitution
//! majorant (every sign made positive, evaluated at the box corner) and an
//! optional exhaustive maximum over small boxes.

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive};

use super::{big_pow_u128, CompilerError, CountingSpec};

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub bindings: Vec<u64>,
    /// Plus-substitution majorant of |poly| at the corner (t-1, ..., t-1).
    pub majorant_bits: u64,
    pub width: u64,
    /// Conservative check: majorant < 2^w. May fail where the true bound holds.
    pub majorant_ok: bool,
    /// Exhaustive max of |poly| over the box, when the box fits the budget.
    pub exhaustive_max: Option<BigUint>,
    pub exhaustive_ok: Option<bool>,
}

pub fn validate_bounds(
    spec: &CountingSpec,
    bindings: &[u64],
    exhaustive_budget: u64,
) -> Result<BoundsReport, CompilerError> {
    let (poly, t, w) = spec.ground(bindings)?;
    let w = w
        .to_u64()
        .ok_or_else(|| CompilerError::TooLarge("width bound does not fit u64".to_string()))?;
    let t64 = t
        .to_u64()
        .ok_or_else(|| CompilerError::TooLarge("box bound does not fit u64".to_string()))?;
    let corner = t64 - 1;

    // Majorant: sum of |coeff| * (base^mult)^(t-1) * (t-1)^gamma, plus epsilon.
    // Monotone in every coordinate, so the corner dominates the whole box.
    let mut majorant = poly.epsilon.clone();
    for m in &poly.monomials {
        let mut v = m.coeff.clone();
        for (i, f) in m.factors.iter().enumerate() {
            for _ in 0..m.gammas[i] {
                v *= corner;
            }
            if let Some((base, mult)) = f {
                let e = (mult * corner).to_u64().ok_or_else(|| {
                    CompilerError::TooLarge("majorant exponent does not fit u64".to_string())
                })?;
                if e.saturating_mul(base.bits()) > 1 << 28 {
                    return Err(CompilerError::TooLarge(
                        "majorant value too large to materialize".to_string(),
                    ));
                }
                v *= num_traits::Pow::pow(base, e);
            }
        }
        majorant += v;
    }
    // majorant < 2^w exactly when it has at most w bits.
    let majorant_ok = majorant.bits() <= w;

    let points = big_pow_u128(t64, spec.k);
    let (exhaustive_max, exhaustive_ok) = if points <= exhaustive_budget as u128 {
        let mut max = BigUint::from(0u32);
        let mut point = vec![0u64; spec.k];
        'outer: loop {
            let v = poly
                .eval_point(&point)
                .abs()
                .to_biguint()
                .expect("abs of signed");
            if v > max {
                max = v;
            }
            let mut dim = 0;
            loop {
                if dim == spec.k {
                    break 'outer;
                }
                point[dim] += 1;
                if point[dim] < t64 {
                    break;
                }
                point[dim] = 0;
                dim += 1;
            }
        }
        let ok = max.bits() <= w;
        (Some(max), Some(ok))
    } else {
        (None, None)
    };

    Ok(BoundsReport {
        bindings: bindings.to_vec(),
        majorant_bits: majorant.bits(),
        width: w,
        majorant_ok,
        exhaustive_max,
        exhaustive_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{square_expand, CountingSpec, EquationSystem, ExpMonomial};
    use crate::term::Term;

    fn tau_spec_with_w(w: Term) -> CountingSpec {
        let mut sys = EquationSystem::new(2);
        sys.push(vec![
            ExpMonomial::new(2).coeff(Term::var(0)),
            ExpMonomial::new(2).gamma(0, 1).gamma(1, 1).neg(),
        ]);
        CountingSpec::new(
            vec!["n".to_string()],
            Term::add(Term::var(0), Term::nat(1u32)),
            w,
            square_expand(&sys),
        )
    }

    #[test]
    fn exhaustive_max_matches_the_paper_bound_at_five() {
        let spec = tau_spec_with_w(Term::add(Term::var(0), Term::nat(4u32)));
        let report = validate_bounds(&spec, &[5], 1 << 20).unwrap();
        // max |5 - ab| on {0..5}^2 is 20, squared 400, below 2^9.
        assert_eq!(report.exhaustive_max, Some(BigUint::from(400u32)));
        assert_eq!(report.exhaustive_ok, Some(true));
        // The plus-substitution majorant overshoots here; that is expected.
        assert!(!report.majorant_ok);
    }

    #[test]
    fn zero_width_fails_majorant() {
        let spec = tau_spec_with_w(Term::nat(0u32));
        let report = validate_bounds(&spec, &[3], 1 << 20).unwrap();
        assert!(!report.majorant_ok);
        assert_eq!(report.exhaustive_ok, Some(false));
    }

    #[test]
    fn majorant_holds_for_generous_widths() {
        let spec = tau_spec_with_w(Term::nat(64u32));
        let report = validate_bounds(&spec, &[5], 1 << 20).unwrap();
        assert!(report.majorant_ok);
    }

    // Exhaustive maximum of the modular-inverse polynomial at n = 4:
    // n^4 + 6 n^2 + 4 n + 2 = 370, inside 2^(n+5).
    #[test]
    fn inv_exhaustive_max_matches_the_bound_lemma() {
        use crate::gallery::{spec_of, GalleryFn};
        let spec = spec_of(GalleryFn::Inv);
        for m in 1u64..=3 {
            let report = validate_bounds(&spec, &[m, 4], 1 << 20).unwrap();
            assert_eq!(report.exhaustive_max, Some(BigUint::from(370u32)), "m={m}");
            assert_eq!(report.exhaustive_ok, Some(true));
        }
    }
}
