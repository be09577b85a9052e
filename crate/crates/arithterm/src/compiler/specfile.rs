//! On-disk counting-spec schema: a TOML document with fields `k`, `vars`,
//! `t`, `w`, `epsilon` and a `monomials` list of `{sign, coeff, gammas,
//! factors}`, every term in canonical syntax. `factors` always carries one
//! `{base, mult}` entry per box variable; `base = "1", mult = "0"` marks an
//! absent exponential.

use serde::Deserialize;

use crate::blocks::Sign;
use crate::parse::parse_term;
use crate::print::{print_term, PrintFormat};
use crate::term::Term;

use super::{CompilerError, CountingSpec, ExpMonomial, ExpPolynomial};

#[derive(Deserialize)]
struct SpecFile {
    k: usize,
    vars: Vec<String>,
    t: String,
    w: String,
    epsilon: String,
    #[serde(default)]
    monomials: Vec<MonomialFile>,
}

#[derive(Deserialize)]
struct MonomialFile {
    sign: String,
    coeff: String,
    gammas: Vec<u32>,
    #[serde(default)]
    factors: Vec<FactorFile>,
}

#[derive(Deserialize)]
struct FactorFile {
    base: String,
    mult: String,
}

pub fn read_spec(text: &str) -> Result<CountingSpec, CompilerError> {
    let file: SpecFile = toml::from_str(text).map_err(|e| CompilerError::Schema(e.to_string()))?;
    if file.k == 0 {
        return Err(CompilerError::Schema("k must be at least 1".to_string()));
    }
    if file.vars.is_empty() {
        return Err(CompilerError::Schema(
            "vars must name at least one input".to_string(),
        ));
    }
    let arity = file.vars.len();
    let term = |field: &str, text: &str| -> Result<Term, CompilerError> {
        let t = parse_term(text).map_err(|e| CompilerError::Schema(format!("{field}: {e}")))?;
        if t.arity() > arity {
            return Err(CompilerError::Schema(format!(
                "{field} references variable {} but only {arity} inputs are named",
                t.arity() - 1
            )));
        }
        Ok(t)
    };
    let t = term("t", &file.t)?;
    let w = term("w", &file.w)?;
    let epsilon = term("epsilon", &file.epsilon)?;
    let mut monomials = Vec::new();
    for (i, m) in file.monomials.iter().enumerate() {
        let sign = match m.sign.as_str() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => {
                return Err(CompilerError::Schema(format!(
                    "monomial {i}: sign must be \"+\" or \"-\", got {other:?}"
                )))
            }
        };
        if m.gammas.len() != file.k {
            return Err(CompilerError::Schema(format!(
                "monomial {i}: gammas has length {}, expected k = {}",
                m.gammas.len(),
                file.k
            )));
        }
        if m.factors.len() != file.k {
            return Err(CompilerError::Schema(format!(
                "monomial {i}: factors has length {}, expected k = {}",
                m.factors.len(),
                file.k
            )));
        }
        let mut mono = ExpMonomial::new(file.k);
        mono.sign = sign;
        mono.coeff = term(&format!("monomial {i} coeff"), &m.coeff)?;
        mono.gammas = m.gammas.clone();
        for (v, f) in m.factors.iter().enumerate() {
            let base = term(&format!("monomial {i} factor {v} base"), &f.base)?;
            let mult = term(&format!("monomial {i} factor {v} mult"), &f.mult)?;
            mono = mono.factor(v, base, mult);
        }
        monomials.push(mono);
    }
    let poly = ExpPolynomial {
        k: file.k,
        epsilon,
        monomials,
    };
    Ok(CountingSpec::new(file.vars, t, w, poly))
}

/// Deterministic writer; `read_spec(write_spec(s))` reproduces `s`.
pub fn write_spec(spec: &CountingSpec) -> String {
    let mut out = String::new();
    let canon = |t: &Term| print_term(t, PrintFormat::Canonical);
    out.push_str(&format!("k = {}\n", spec.k));
    let vars = spec
        .vars
        .iter()
        .map(|v| format!("{v:?}"))
        .collect::<Vec<_>>()
        .join(", ");
    out.push_str(&format!("vars = [{vars}]\n"));
    out.push_str(&format!("t = {:?}\n", canon(&spec.t)));
    out.push_str(&format!("w = {:?}\n", canon(&spec.w)));
    out.push_str(&format!("epsilon = {:?}\n", canon(&spec.poly.epsilon)));
    for m in &spec.poly.monomials {
        out.push_str("\n[[monomials]]\n");
        out.push_str(&format!(
            "sign = \"{}\"\n",
            if m.sign == Sign::Plus { "+" } else { "-" }
        ));
        out.push_str(&format!("coeff = {:?}\n", canon(&m.coeff)));
        let gammas = m
            .gammas
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!("gammas = [{gammas}]\n"));
        for f in &m.factors {
            out.push_str("\n[[monomials.factors]]\n");
            match f {
                None => {
                    out.push_str("base = \"1\"\n");
                    out.push_str("mult = \"0\"\n");
                }
                Some(f) => {
                    out.push_str(&format!("base = {:?}\n", canon(&f.base)));
                    out.push_str(&format!("mult = {:?}\n", canon(&f.mult)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{square_expand, EquationSystem};

    fn sample_spec() -> CountingSpec {
        let mut sys = EquationSystem::new(2);
        sys.push(vec![
            ExpMonomial::new(2).coeff_u(1).gamma(0, 1),
            ExpMonomial::new(2)
                .coeff_u(1)
                .factor(1, Term::var(0), Term::nat(1u32))
                .neg(),
        ]);
        CountingSpec::new(
            vec!["m".to_string(), "n".to_string()],
            Term::add(Term::var(1), Term::nat(1u32)),
            Term::mul(Term::mul(Term::nat(2u32), Term::var(0)), Term::var(1)),
            square_expand(&sys),
        )
    }

    #[test]
    fn writer_and_reader_round_trip() {
        let spec = sample_spec();
        let text = write_spec(&spec);
        let back = read_spec(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(write_spec(&back), text);
    }

    #[test]
    fn schema_violations_are_reported() {
        assert!(matches!(
            read_spec("k = 0\n"),
            Err(CompilerError::Schema(_))
        ));
        let bad_sign = r#"
k = 1
vars = ["n"]
t = "2"
w = "4"
epsilon = "0"
[[monomials]]
sign = "?"
coeff = "1"
gammas = [1]
[[monomials.factors]]
base = "1"
mult = "0"
"#;
        assert!(matches!(read_spec(bad_sign), Err(CompilerError::Schema(_))));
        let bad_arity = r#"
k = 1
vars = ["n"]
t = "(+ (var 1) 1)"
w = "4"
epsilon = "0"
"#;
        assert!(matches!(
            read_spec(bad_arity),
            Err(CompilerError::Schema(_))
        ));
    }
}
