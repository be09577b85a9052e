//! The counting compiler: given a simple exponential polynomial `P` in box
//! variables `x_1..x_k`, a box bound `t > 1` and a width bound `w` with
//! `0 <= P < 2^w` on the box, emit one closed-form term whose value is the
//! number of box points where `P` vanishes.
//!
//! The pipeline mirrors the representation method: equation systems are
//! squared and expanded into an [`ExpPolynomial`], non-exponential exponents
//! above two are rewritten away by chain variables, variable exponents
//! `x^y` are eliminated through the power-identity gadget, and emission packs
//! one delta block per box point into the term `M` with
//! `count = hw(M)/w - t^k`.

mod bounds;
mod emit;
mod enumerate;
mod expand;
mod gamma;
mod powvar;
mod specfile;

pub use bounds::{validate_bounds, BoundsReport};
pub use emit::compile_count;
pub use enumerate::{enumerate_count, DEFAULT_ENUMERATION_BUDGET};
pub use expand::square_expand;
pub use gamma::{gamma_reduce, GammaMap};
pub use powvar::{count_gadget_solutions, pow_convention, pow_var_eliminate, PowVarGadget};
pub use specfile::{read_spec, write_spec};

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, ToPrimitive, Zero};

use crate::blocks::Sign;
use crate::eval::{eval, EvalContext, EvalError};
use crate::term::{SizeMetrics, Term};
use crate::DomainError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompilerError {
    #[error("{0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Domain(#[from] DomainError),
    #[error("malformed counting spec: {0}")]
    Schema(String),
    #[error("enumeration budget exceeded: box has {points} points, budget is {budget}")]
    EnumerationBudget { points: u128, budget: u64 },
    #[error("value too large to evaluate here: {0}")]
    TooLarge(String),
}

/// One exponential factor `base^(mult * x_i)` attached to a box variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpFactor {
    pub base: Term,
    pub mult: Term,
}

/// A simple exponential monomial
/// `sign * coeff(n) * prod_i base_i(n)^(mult_i(n) x_i) * prod_i x_i^gamma_i`.
/// `coeff` is the magnitude; the sign is explicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpMonomial {
    pub sign: Sign,
    pub coeff: Term,
    pub gammas: Vec<u32>,
    pub factors: Vec<Option<ExpFactor>>,
}

impl ExpMonomial {
    pub fn new(k: usize) -> ExpMonomial {
        ExpMonomial {
            sign: Sign::Plus,
            coeff: Term::nat(1u32),
            gammas: vec![0; k],
            factors: vec![None; k],
        }
    }

    pub fn neg(mut self) -> Self {
        self.sign = self.sign.flip();
        self
    }

    pub fn coeff(mut self, c: Term) -> Self {
        self.coeff = c;
        self
    }

    pub fn coeff_u(self, c: u64) -> Self {
        self.coeff(Term::nat(c))
    }

    pub fn gamma(mut self, var: usize, g: u32) -> Self {
        self.gammas[var] = g;
        self
    }

    pub fn factor(mut self, var: usize, base: Term, mult: Term) -> Self {
        self.factors[var] = normalize_factor(ExpFactor { base, mult });
        self
    }

    pub fn is_constant(&self) -> bool {
        self.gammas.iter().all(|&g| g == 0) && self.factors.iter().all(|f| f.is_none())
    }
}

fn normalize_factor(f: ExpFactor) -> Option<ExpFactor> {
    if f.mult.is_const(0) || f.base.is_const(1) {
        None
    } else {
        Some(f)
    }
}

/// An algebraic sum of simple exponential monomials, with the constant part
/// split off as `epsilon` (a nonnegative term over the input variables).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolynomial {
    pub k: usize,
    pub epsilon: Term,
    pub monomials: Vec<ExpMonomial>,
}

/// One equation `S = 0`, written as a signed sum of monomial atoms. Squaring
/// the full system and expanding yields the polynomial the compiler counts
/// zeros of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub atoms: Vec<ExpMonomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    pub k: usize,
    pub equations: Vec<Equation>,
}

impl EquationSystem {
    pub fn new(k: usize) -> EquationSystem {
        EquationSystem {
            k,
            equations: Vec::new(),
        }
    }

    pub fn push(&mut self, atoms: Vec<ExpMonomial>) {
        debug_assert!(atoms.iter().all(|a| a.gammas.len() == self.k));
        self.equations.push(Equation { atoms });
    }

    /// Signed value of equation `eq` at an input binding and box point.
    pub fn eval_equation(
        &self,
        eq: usize,
        bindings: &[u64],
        point: &[u64],
    ) -> Result<BigInt, CompilerError> {
        let mut acc = BigInt::zero();
        for atom in &self.equations[eq].atoms {
            acc += ground_monomial(atom, bindings)?.eval_point(point);
        }
        Ok(acc)
    }

    /// Sum of squares of all equations at a binding and point.
    pub fn eval_sum_of_squares(
        &self,
        bindings: &[u64],
        point: &[u64],
    ) -> Result<BigInt, CompilerError> {
        let mut acc = BigInt::zero();
        for i in 0..self.equations.len() {
            let v = self.eval_equation(i, bindings, point)?;
            acc += &v * &v;
        }
        Ok(acc)
    }
}

/// The compiler's input: polynomial, box bound, width bound, input names.
/// `aux_box` marks box variables introduced by reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingSpec {
    pub k: usize,
    pub vars: Vec<String>,
    pub t: Term,
    pub w: Term,
    pub poly: ExpPolynomial,
    pub aux_box: Vec<bool>,
}

impl CountingSpec {
    pub fn new(vars: Vec<String>, t: Term, w: Term, poly: ExpPolynomial) -> CountingSpec {
        let k = poly.k;
        CountingSpec {
            k,
            vars,
            t,
            w,
            poly,
            aux_box: vec![false; k],
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompiledCounter {
    pub m_term: Term,
    pub count_term: Term,
    pub block_count: usize,
    pub m_metrics: SizeMetrics,
    pub count_metrics: SizeMetrics,
}

/// A monomial with every input-dependent term evaluated at a binding.
#[derive(Clone, Debug)]
pub struct GroundMonomial {
    pub sign: Sign,
    pub coeff: BigUint,
    pub gammas: Vec<u32>,
    pub factors: Vec<Option<(BigUint, BigUint)>>,
}

impl GroundMonomial {
    pub fn eval_point(&self, point: &[u64]) -> BigInt {
        let mut mag = self.coeff.clone();
        if mag.is_zero() {
            return BigInt::zero();
        }
        for (i, &a) in point.iter().enumerate() {
            for _ in 0..self.gammas[i] {
                mag *= a;
            }
            if let Some((base, mult)) = &self.factors[i] {
                let e = mult * a;
                let e = e
                    .to_u64()
                    .expect("factor exponent fits u64 at oracle scale");
                mag *= Pow::pow(base, e);
            }
        }
        self.sign.apply(mag)
    }
}

#[derive(Clone, Debug)]
pub struct GroundPoly {
    pub k: usize,
    pub epsilon: BigUint,
    pub monomials: Vec<GroundMonomial>,
}

impl GroundPoly {
    pub fn eval_point(&self, point: &[u64]) -> BigInt {
        let mut acc = BigInt::from(self.epsilon.clone());
        for m in &self.monomials {
            acc += m.eval_point(point);
        }
        acc
    }
}

fn ground_term(term: &Term, bindings: &[u64]) -> Result<BigUint, CompilerError> {
    // Grounding evaluates coefficient/bound terms over the inputs only; these
    // stay small even when they embed other compiled counters.
    Ok(eval(term, &EvalContext::of_u64(bindings))?.result)
}

fn ground_monomial(m: &ExpMonomial, bindings: &[u64]) -> Result<GroundMonomial, CompilerError> {
    Ok(GroundMonomial {
        sign: m.sign,
        coeff: ground_term(&m.coeff, bindings)?,
        gammas: m.gammas.clone(),
        factors: m
            .factors
            .iter()
            .map(|f| {
                f.as_ref()
                    .map(|f| {
                        Ok((
                            ground_term(&f.base, bindings)?,
                            ground_term(&f.mult, bindings)?,
                        ))
                    })
                    .transpose()
            })
            .collect::<Result<_, CompilerError>>()?,
    })
}

impl CountingSpec {
    /// Evaluate every input-dependent piece at a binding.
    pub fn ground(
        &self,
        bindings: &[u64],
    ) -> Result<(GroundPoly, BigUint, BigUint), CompilerError> {
        let t = ground_term(&self.t, bindings)?;
        let w = ground_term(&self.w, bindings)?;
        if t < BigUint::from(2u32) {
            return Err(CompilerError::Schema(format!(
                "box bound must exceed one, got {t}"
            )));
        }
        let poly = GroundPoly {
            k: self.k,
            epsilon: ground_term(&self.poly.epsilon, bindings)?,
            monomials: self
                .poly
                .monomials
                .iter()
                .map(|m| ground_monomial(m, bindings))
                .collect::<Result<_, _>>()?,
        };
        Ok((poly, t, w))
    }
}

impl ExpPolynomial {
    /// Signed value at a binding and box point; the reference semantics for
    /// everything the compiler does with the polynomial.
    pub fn eval_signed(&self, bindings: &[u64], point: &[u64]) -> Result<BigInt, CompilerError> {
        let mut acc = BigInt::from(ground_term(&self.epsilon, bindings)?);
        for m in &self.monomials {
            acc += ground_monomial(m, bindings)?.eval_point(point);
        }
        Ok(acc)
    }

    pub fn max_gamma(&self) -> u32 {
        self.monomials
            .iter()
            .flat_map(|m| m.gammas.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

pub(crate) fn big_pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
