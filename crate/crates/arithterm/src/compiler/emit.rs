//! Emission of the compiled counter: the term `M` packing one delta block
//! per box point, and the count term `hw(M)/w - t^k`.

use crate::blocks::{BlockCx, Sign};
use crate::term::Term;

use super::{CompiledCounter, CompilerError, CountingSpec};

/// Compile a counting spec into its closed-form counter.
///
/// `M` is assembled as `PosPart monus NegPart`: the constant block plus the
/// blocks of negative monomials are positive-valued, the blocks of positive
/// monomials negative-valued. Under the spec's width hypothesis the monus
/// never truncates and both divisions (`w | hw(M)` and the constant block's)
/// are exact; checked evaluation asserts all of it. Emission is
/// deterministic: constant block first, then monomial blocks in input order.
///
/// `M` is built over the kernel plus first-class products; `lower` rewrites
/// the products through Marchenkov's identity for the literal four-operation
/// form, which is structurally exact but far beyond any evaluation budget.
///
/// For hand-written systems with auxiliary variables, unique lifting of
/// solutions is the caller's obligation; the enumeration oracle
/// ([`super::enumerate_count`]) is the spot check, and every bundled spec is
/// held to it.
pub fn compile_count(spec: &CountingSpec) -> Result<CompiledCounter, CompilerError> {
    if spec.k == 0 {
        return Err(CompilerError::Schema(
            "counting spec needs k >= 1".to_string(),
        ));
    }
    for (i, m) in spec.poly.monomials.iter().enumerate() {
        if m.gammas.len() != spec.k || m.factors.len() != spec.k {
            return Err(CompilerError::Schema(format!(
                "monomial {i} has arity {} but the spec has k = {}",
                m.gammas.len(),
                spec.k
            )));
        }
        // Each variable power gamma needs the closed form G_gamma; the
        // generator is quadratic in gamma, so cap it well past any use.
        if let Some(&g) = m.gammas.iter().find(|&&g| g > 256) {
            return Err(CompilerError::Schema(format!(
                "monomial {i} has variable power {g}; chain-reduce powers above 256"
            )));
        }
    }

    let cx = BlockCx::new(&spec.t, &spec.w, spec.k);
    let mut pos = cx.c_block(&spec.poly.epsilon);
    let mut neg: Option<Term> = None;
    for m in &spec.poly.monomials {
        let factors: Vec<Option<(Term, Term)>> = m
            .factors
            .iter()
            .map(|f| f.as_ref().map(|f| (f.base.clone(), f.mult.clone())))
            .collect();
        let (sign, block) = cx.a_block(m.sign, &m.coeff, &m.gammas, &factors);
        match sign {
            Sign::Plus => pos = Term::add(pos, block),
            Sign::Minus => {
                neg = Some(match neg.take() {
                    None => block,
                    Some(acc) => Term::add(acc, block),
                });
            }
        }
    }
    let m_term = match neg {
        None => pos,
        Some(neg) => Term::monus_exact(pos, neg),
    };

    let tk = if spec.k == 1 {
        spec.t.clone()
    } else {
        Term::pow(spec.t.clone(), Term::nat(spec.k as u64))
    };
    let count_term = Term::monus_exact(
        Term::div_exact(Term::hw(m_term.clone()), spec.w.clone()),
        tk,
    );

    Ok(CompiledCounter {
        block_count: 1 + spec.poly.monomials.len(),
        m_metrics: m_term.size_metrics(),
        count_metrics: count_term.size_metrics(),
        m_term,
        count_term,
    })
}
