//! Generalized geometric progressions `G_r(q, t) = sum_{k=0..t} k^r q^k`.
//!
//! `G_0..G_2` are fixed closed forms; every further kind is generated from
//! the recurrence `G_{r+1}(q, t) = d/dq G_r(q, t+1) - sum_j C(r+1, j) G_j(q, t)`,
//! carried out symbolically on numerators over the denominator `(q-1)^(r+1)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::term::Term;
use crate::DomainError;

/// One numerator monomial: either `c * t^tpow * q^(t + qoff)` or a pure
/// `c * q^qpow` with no occurrence of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GKey {
    WithT { qoff: i64, tpow: u32 },
    Pure { qpow: i64 },
}

/// Exact rational closed form for `G_r`: a numerator in the two monomial
/// shapes above over the denominator `(q - 1)^(r + 1)`. Evaluating at
/// integers `q >= 2`, `t >= 0` always yields an exact integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFormula {
    pub r: u32,
    terms: BTreeMap<GKey, BigInt>,
}

impl RationalFormula {
    fn new(r: u32) -> Self {
        RationalFormula {
            r,
            terms: BTreeMap::new(),
        }
    }

    fn put(&mut self, key: GKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GKey, &BigInt)> {
        self.terms.iter()
    }

    /// Numerator with `t := t + 1` substituted.
    fn shift_t(&self) -> Self {
        let mut out = RationalFormula::new(self.r);
        for (key, c) in &self.terms {
            match *key {
                GKey::Pure { qpow } => out.put(GKey::Pure { qpow }, c.clone()),
                GKey::WithT { qoff, tpow } => {
                    // (t+1)^tpow expands binomially; q^(t+1+qoff) shifts qoff.
                    for l in 0..=tpow {
                        let b = binomial(tpow, l);
                        out.put(
                            GKey::WithT {
                                qoff: qoff + 1,
                                tpow: l,
                            },
                            c * BigInt::from(b),
                        );
                    }
                }
            }
        }
        out
    }

    /// Numerator of d/dq of `numerator / (q-1)^(r+1)`, i.e.
    /// `N'(q-1) - (r+1) N` over `(q-1)^(r+2)`.
    fn derivative_numerator(&self) -> Self {
        let mut dn = RationalFormula::new(self.r + 1);
        for (key, c) in &self.terms {
            match *key {
                GKey::Pure { qpow } => {
                    if qpow != 0 {
                        dn.put(GKey::Pure { qpow: qpow - 1 }, c * BigInt::from(qpow));
                    }
                }
                GKey::WithT { qoff, tpow } => {
                    // d/dq of t^i q^(t+j) is (t + j) t^i q^(t+j-1).
                    dn.put(
                        GKey::WithT {
                            qoff: qoff - 1,
                            tpow: tpow + 1,
                        },
                        c.clone(),
                    );
                    dn.put(
                        GKey::WithT {
                            qoff: qoff - 1,
                            tpow,
                        },
                        c * BigInt::from(qoff),
                    );
                }
            }
        }
        let mut out = dn.mul_q_minus_one();
        for (key, c) in &self.terms {
            out.put(*key, c * -BigInt::from(self.r + 1));
        }
        out.r = self.r + 1;
        out
    }

    fn mul_q_minus_one(&self) -> Self {
        let mut out = RationalFormula::new(self.r);
        for (key, c) in &self.terms {
            match *key {
                GKey::Pure { qpow } => {
                    out.put(GKey::Pure { qpow: qpow + 1 }, c.clone());
                    out.put(GKey::Pure { qpow }, -c);
                }
                GKey::WithT { qoff, tpow } => {
                    out.put(
                        GKey::WithT {
                            qoff: qoff + 1,
                            tpow,
                        },
                        c.clone(),
                    );
                    out.put(GKey::WithT { qoff, tpow }, -c);
                }
            }
        }
        out
    }

    /// Exact evaluation. Fails if `q < 2` or if a `q` exponent would be
    /// negative (which never happens for the generated formulas).
    pub fn eval(&self, q: &BigUint, t: &BigUint) -> Result<BigUint, DomainError> {
        if *q < BigUint::from(2u32) {
            return Err(DomainError(
                "geometric progressions need q >= 2".to_string(),
            ));
        }
        let qi = BigInt::from(q.clone());
        let ti = BigInt::from(t.clone());
        let mut num = BigInt::zero();
        for (key, c) in &self.terms {
            match *key {
                GKey::Pure { qpow } => {
                    let e = u64::try_from(qpow)
                        .map_err(|_| DomainError("negative q exponent".to_string()))?;
                    num += c * pow_bigint(&qi, e);
                }
                GKey::WithT { qoff, tpow } => {
                    let e = (&ti + BigInt::from(qoff))
                        .to_u64()
                        .ok_or_else(|| DomainError("negative q exponent".to_string()))?;
                    num += c * pow_bigint(&ti, tpow as u64) * pow_bigint(&qi, e);
                }
            }
        }
        let den = pow_bigint(&(qi - BigInt::one()), self.r as u64 + 1);
        let (quot, rem) = num.div_rem(&den);
        if !rem.is_zero() || quot.is_negative() {
            return Err(DomainError(format!(
                "G_{} formula did not divide exactly; formula bug",
                self.r
            )));
        }
        Ok(quot.to_biguint().expect("non-negative"))
    }

    /// Emit `G_r(q, t)` as a term, as `div(pos monus neg, (q monus 1)^(r+1))`
    /// with both the monus and the division exact by construction. Terms are
    /// laid out leading q-power first, pure powers last, the way the closed
    /// forms are usually displayed.
    pub fn as_term(&self, q: &Term, t: &Term) -> Term {
        let mut keys: Vec<(&GKey, &BigInt)> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| {
            let rank = |k: &GKey| match *k {
                GKey::WithT { qoff, tpow } => (0, std::cmp::Reverse(qoff), std::cmp::Reverse(tpow)),
                GKey::Pure { qpow } => (1, std::cmp::Reverse(qpow), std::cmp::Reverse(0)),
            };
            rank(a).cmp(&rank(b))
        });
        let mut pos: Option<Term> = None;
        let mut neg: Option<Term> = None;
        for (key, c) in keys {
            let mag = c.magnitude();
            let mut factors: Vec<Term> = Vec::new();
            if !mag.is_one() {
                factors.push(Term::nat(mag.clone()));
            }
            match *key {
                GKey::Pure { qpow } => {
                    debug_assert!(qpow >= 0);
                    if qpow > 0 {
                        factors.push(pow_term(q, qpow as u64));
                    } else if mag.is_one() {
                        factors.push(Term::nat(1u32));
                    }
                }
                GKey::WithT { qoff, tpow } => {
                    debug_assert!(qoff >= 0);
                    if tpow > 0 {
                        factors.push(pow_term(t, tpow as u64));
                    }
                    let exp = if qoff == 0 {
                        t.clone()
                    } else {
                        Term::add(t.clone(), Term::nat(qoff as u64))
                    };
                    factors.push(Term::pow(q.clone(), exp));
                }
            }
            let term = factors
                .into_iter()
                .reduce(Term::mul)
                .expect("at least one factor");
            let slot = if c.is_negative() { &mut neg } else { &mut pos };
            *slot = Some(match slot.take() {
                None => term,
                Some(acc) => Term::add(acc, term),
            });
        }
        let pos = pos.expect("numerator has a positive part");
        let numerator = match neg {
            None => pos,
            Some(neg) => Term::monus_exact(pos, neg),
        };
        let qm1 = Term::monus_exact(q.clone(), Term::nat(1u32));
        let denominator = if self.r == 0 {
            qm1
        } else {
            Term::pow(qm1, Term::nat(self.r as u64 + 1))
        };
        Term::div_exact(numerator, denominator)
    }
}

fn pow_term(base: &Term, e: u64) -> Term {
    match e {
        1 => base.clone(),
        _ => Term::pow(base.clone(), Term::nat(e)),
    }
}

fn pow_bigint(b: &BigInt, e: u64) -> BigInt {
    use num_traits::Pow;
    Pow::pow(b, e)
}

fn binomial(n: u32, k: u32) -> u64 {
    let mut res = 1u64;
    for i in 0..k.min(n - k) {
        res = res * (n - i) as u64 / (i + 1) as u64;
    }
    res
}

/// Fixed closed forms for `r <= 2`:
/// `G_1 = (t q^(t+2) - (t+1) q^(t+1) + q) / (q-1)^2`,
/// `G_2 = (t^2 q^(t+3) - (2t^2+2t-1) q^(t+2) + (t+1)^2 q^(t+1) - q^2 - q) / (q-1)^3`.
pub fn hardcoded_formula(r: u32) -> Option<RationalFormula> {
    let mut f = RationalFormula::new(r);
    let c = |v: i64| BigInt::from(v);
    match r {
        0 => {
            f.put(GKey::WithT { qoff: 1, tpow: 0 }, c(1));
            f.put(GKey::Pure { qpow: 0 }, c(-1));
        }
        1 => {
            f.put(GKey::WithT { qoff: 2, tpow: 1 }, c(1));
            f.put(GKey::WithT { qoff: 1, tpow: 1 }, c(-1));
            f.put(GKey::WithT { qoff: 1, tpow: 0 }, c(-1));
            f.put(GKey::Pure { qpow: 1 }, c(1));
        }
        2 => {
            f.put(GKey::WithT { qoff: 3, tpow: 2 }, c(1));
            f.put(GKey::WithT { qoff: 2, tpow: 2 }, c(-2));
            f.put(GKey::WithT { qoff: 2, tpow: 1 }, c(-2));
            f.put(GKey::WithT { qoff: 2, tpow: 0 }, c(1));
            f.put(GKey::WithT { qoff: 1, tpow: 2 }, c(1));
            f.put(GKey::WithT { qoff: 1, tpow: 1 }, c(2));
            f.put(GKey::WithT { qoff: 1, tpow: 0 }, c(1));
            f.put(GKey::Pure { qpow: 2 }, c(-1));
            f.put(GKey::Pure { qpow: 1 }, c(-1));
        }
        _ => return None,
    }
    Some(f)
}

/// Closed form for `G_r`: hard-coded for `r <= 2`, generated by the
/// derivative recurrence beyond that.
pub fn gen_g_formula(r: u32) -> RationalFormula {
    if let Some(f) = hardcoded_formula(r) {
        return f;
    }
    let mut known: Vec<RationalFormula> = vec![hardcoded_formula(0).expect("base case")];
    for s in 0..r {
        let prev = &known[s as usize];
        let mut next = prev.shift_t().derivative_numerator();
        // Common denominator (q-1)^(s+2): lift each G_j by (q-1)^(s+1-j).
        for j in 0..=s {
            let mut lifted = known[j as usize].clone();
            for _ in 0..(s + 1 - j) {
                lifted = lifted.mul_q_minus_one();
            }
            let b = BigInt::from(binomial(s + 1, j));
            for (key, c) in lifted.terms.clone() {
                next.put(key, -&b * c);
            }
        }
        next.r = s + 1;
        known.push(next);
    }
    known.swap_remove(r as usize)
}

/// `sum_{k=0..t} k^r q^k`, by the exact closed formula.
pub fn geom_sum(r: u32, q: &BigUint, t: &BigUint) -> Result<BigUint, DomainError> {
    gen_g_formula(r).eval(q, t)
}

/// The independent brute-force oracle for the closed forms.
pub fn geom_sum_brute(r: u32, q: &BigUint, t: u64) -> BigUint {
    let mut acc = BigUint::zero();
    let mut qk = BigUint::one();
    for k in 0..=t {
        let mut term = BigUint::from(k);
        let mut kr = BigUint::one();
        for _ in 0..r {
            kr *= &term;
        }
        term = kr;
        if r == 0 {
            term = BigUint::one();
        }
        acc += &term * &qk;
        qk *= q;
    }
    acc
}
