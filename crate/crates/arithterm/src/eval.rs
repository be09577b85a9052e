//! Exact evaluation of arithmetic terms over the naturals.
//!
//! Semantics: `monus(x, y) = max(x - y, 0)`, `div(x, 0) = 0`, `pow(0, 0) = 1`,
//! `mod(x, 0) = x`, `mod(x, 1) = 0`, `gcd(0, 0) = 0`, `hw` counts one bits.
//! Every intermediate value is tracked against a bit budget so that terms
//! which are intractable at an argument fail gracefully instead of exhausting
//! memory.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::lower::lower;
use crate::term::{Term, TermNode};

pub const DEFAULT_BIT_BUDGET: u64 = 1 << 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// Extended nodes evaluate natively (fast bignum product, gcd, popcount).
    Accelerated,
    /// Extended nodes are lowered to the four-operation kernel first; only
    /// kernel semantics execute. Intended for lemma-level fidelity checks at
    /// tiny arguments.
    KernelStrict,
}

#[derive(Clone, Debug)]
pub struct EvalContext {
    pub bindings: Vec<BigUint>,
    pub mode: EvalMode,
    /// Record an assertion for every exact-flagged monus that truncates.
    pub checked_monus: bool,
    /// Treat a nonzero remainder at an exact-flagged division as a hard error.
    pub exact_division: bool,
    /// Evaluate `mod(pow(b, e), m)` by modular exponentiation. Off by default
    /// so terms evaluate exactly as written; turn on for oracle cross-checks
    /// past the bit budget.
    pub accel_modpow: bool,
    pub bit_budget: u64,
}

impl EvalContext {
    pub fn new(bindings: Vec<BigUint>) -> Self {
        EvalContext {
            bindings,
            mode: EvalMode::Accelerated,
            checked_monus: false,
            exact_division: false,
            accel_modpow: false,
            bit_budget: DEFAULT_BIT_BUDGET,
        }
    }

    pub fn of_u64(bindings: &[u64]) -> Self {
        Self::new(bindings.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn kernel_strict(mut self) -> Self {
        self.mode = EvalMode::KernelStrict;
        self
    }

    /// Turn on both checked monus and exact-division enforcement.
    pub fn checked(mut self) -> Self {
        self.checked_monus = true;
        self.exact_division = true;
        self
    }

    pub fn with_budget(mut self, bits: u64) -> Self {
        self.bit_budget = bits;
        self
    }

    pub fn with_modpow(mut self) -> Self {
        self.accel_modpow = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssertKind {
    MonusTruncated,
    InexactDivision,
}

/// One exercised exactness check. `site` is the preorder visit index of the
/// node, stable across repeated evaluations of the same term.
#[derive(Clone, Debug)]
pub struct AssertRecord {
    pub site: usize,
    pub kind: AssertKind,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct EvalReport {
    pub result: BigUint,
    pub peak_bits: u64,
    pub assertions: Vec<AssertRecord>,
}

impl EvalReport {
    pub fn failed_assertions(&self) -> impl Iterator<Item = &AssertRecord> {
        self.assertions.iter().filter(|a| !a.ok)
    }

    pub fn all_checks_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("arity mismatch: term uses variable {index} but {bound} bindings were given")]
    ArityMismatch { index: usize, bound: usize },
    #[error("bit budget exceeded: an intermediate needs ~{bits} bits, budget is {budget}")]
    BitBudgetExceeded { bits: u64, budget: u64 },
    #[error("exact division violated at site {site}: nonzero remainder")]
    ExactDivisionViolation { site: usize },
}

pub fn eval(term: &Term, ctx: &EvalContext) -> Result<EvalReport, EvalError> {
    if ctx.mode == EvalMode::KernelStrict && !term.is_kernel_only() {
        let lowered = lower(term);
        let mut ev = Evaluator::new(ctx);
        let result = ev.run(&lowered)?;
        return Ok(ev.finish(result));
    }
    let mut ev = Evaluator::new(ctx);
    let result = ev.run(term)?;
    Ok(ev.finish(result))
}

/// Evaluate with a default accelerated context; convenience for tests.
pub fn eval_value(term: &Term, bindings: &[u64]) -> Result<BigUint, EvalError> {
    Ok(eval(term, &EvalContext::of_u64(bindings))?.result)
}

struct Evaluator<'a> {
    ctx: &'a EvalContext,
    memo: HashMap<*const TermNode, Arc<BigUint>>,
    peak: u64,
    asserts: Vec<AssertRecord>,
    next_site: usize,
}

impl<'a> Evaluator<'a> {
    fn new(ctx: &'a EvalContext) -> Self {
        Evaluator {
            ctx,
            memo: HashMap::new(),
            peak: 0,
            asserts: Vec::new(),
            next_site: 0,
        }
    }

    fn finish(self, result: Arc<BigUint>) -> EvalReport {
        EvalReport {
            result: Arc::try_unwrap(result).unwrap_or_else(|a| (*a).clone()),
            peak_bits: self.peak,
            assertions: self.asserts,
        }
    }

    fn note(&mut self, v: &BigUint) -> Result<(), EvalError> {
        let bits = v.bits();
        if bits > self.peak {
            self.peak = bits;
        }
        if bits > self.ctx.bit_budget {
            return Err(EvalError::BitBudgetExceeded {
                bits,
                budget: self.ctx.bit_budget,
            });
        }
        Ok(())
    }

    fn run(&mut self, term: &Term) -> Result<Arc<BigUint>, EvalError> {
        if let Some(v) = self.memo.get(&term.as_ptr()) {
            return Ok(v.clone());
        }
        let site = self.next_site;
        self.next_site += 1;
        let value = match term.node() {
            TermNode::Const(c) => c.clone(),
            TermNode::Var(i) => {
                self.ctx
                    .bindings
                    .get(*i)
                    .cloned()
                    .ok_or(EvalError::ArityMismatch {
                        index: *i,
                        bound: self.ctx.bindings.len(),
                    })?
            }
            TermNode::Add(a, b) => {
                let (x, y) = (self.run(a)?, self.run(b)?);
                &*x + &*y
            }
            TermNode::Monus { lhs, rhs, exact } => {
                let (x, y) = (self.run(lhs)?, self.run(rhs)?);
                if self.ctx.checked_monus && *exact {
                    self.asserts.push(AssertRecord {
                        site,
                        kind: AssertKind::MonusTruncated,
                        ok: *y <= *x,
                    });
                }
                if *y >= *x {
                    BigUint::zero()
                } else {
                    &*x - &*y
                }
            }
            TermNode::FloorDiv { lhs, rhs, exact } => {
                let (x, y) = (self.run(lhs)?, self.run(rhs)?);
                let (q, r_zero) = self.floor_div(&x, &y, rhs);
                if *exact {
                    if self.ctx.checked_monus || self.ctx.exact_division {
                        self.asserts.push(AssertRecord {
                            site,
                            kind: AssertKind::InexactDivision,
                            ok: r_zero,
                        });
                    }
                    if self.ctx.exact_division && !r_zero {
                        return Err(EvalError::ExactDivisionViolation { site });
                    }
                }
                q
            }
            TermNode::Pow(a, b) => {
                let (x, y) = (self.run(a)?, self.run(b)?);
                self.pow(&x, &y)?
            }
            TermNode::Mul(a, b) => {
                let (x, y) = (self.run(a)?, self.run(b)?);
                mul_fast(&x, &y)
            }
            TermNode::Mod(a, b) => {
                if self.ctx.accel_modpow {
                    if let TermNode::Pow(base, exp) = a.node() {
                        let (bv, ev, m) = (self.run(base)?, self.run(exp)?, self.run(b)?);
                        if !m.is_zero() {
                            let r = bv.modpow(&ev, &m);
                            self.note(&r)?;
                            let out = Arc::new(r);
                            self.memo.insert(term.as_ptr(), out.clone());
                            return Ok(out);
                        }
                    }
                }
                let (x, y) = (self.run(a)?, self.run(b)?);
                modulo(&x, &y)
            }
            TermNode::Max(a, b) => {
                let (x, y) = (self.run(a)?, self.run(b)?);
                if *x >= *y {
                    (*x).clone()
                } else {
                    (*y).clone()
                }
            }
            TermNode::Gcd(a, b) => {
                let (x, y) = (self.run(a)?, self.run(b)?);
                x.gcd(&y)
            }
            TermNode::Hw(a) => {
                let x = self.run(a)?;
                BigUint::from(x.count_ones())
            }
        };
        self.note(&value)?;
        let out = Arc::new(value);
        self.memo.insert(term.as_ptr(), out.clone());
        Ok(out)
    }

    fn pow(&mut self, base: &BigUint, exp: &BigUint) -> Result<BigUint, EvalError> {
        if exp.is_zero() {
            return Ok(BigUint::one()); // 0^0 = 1
        }
        if base.is_zero() {
            return Ok(BigUint::zero());
        }
        if base.is_one() {
            return Ok(BigUint::one());
        }
        let budget = self.ctx.bit_budget;
        let e = match exp.to_u64() {
            Some(e) => e,
            // base >= 2, so the result needs at least `exp` bits.
            None => {
                return Err(EvalError::BitBudgetExceeded {
                    bits: u64::MAX,
                    budget,
                })
            }
        };
        let bbits = base.bits();
        if base.count_ones() == 1 {
            // Power of two: a plain shift.
            let shift = (bbits - 1)
                .checked_mul(e)
                .filter(|&s| s < u64::MAX - 1)
                .ok_or(EvalError::BitBudgetExceeded {
                    bits: u64::MAX,
                    budget,
                })?;
            if shift + 1 > budget {
                return Err(EvalError::BitBudgetExceeded {
                    bits: shift + 1,
                    budget,
                });
            }
            return Ok(BigUint::one() << shift);
        }
        // Sound lower bound on the result width before materializing it.
        let low = (bbits - 1).saturating_mul(e).saturating_add(1);
        if low > budget {
            return Err(EvalError::BitBudgetExceeded { bits: low, budget });
        }
        Ok(Pow::pow(base, e))
    }

    /// Floor division with `x div 0 = 0`. Returns the quotient and whether the
    /// remainder was zero. `divisor_term` lets structured divisors, such as
    /// powers of an all-ones number, take a linear-time path.
    fn floor_div(&mut self, x: &BigUint, y: &BigUint, divisor_term: &Term) -> (BigUint, bool) {
        if y.is_zero() {
            return (BigUint::zero(), x.is_zero());
        }
        if y.is_one() {
            return (x.clone(), true);
        }
        if x < y {
            return (BigUint::zero(), x.is_zero());
        }
        if y.count_ones() == 1 {
            let k = y.bits() - 1;
            let q = x >> k;
            let exact = x.trailing_zeros().unwrap_or(0) >= k;
            return (q, exact);
        }
        if is_all_ones(y) {
            let (q, r) = div_rem_all_ones(x, y.bits());
            return (q, r.is_zero());
        }
        if y.bits() > 4096 {
            // Divisor of the shape (2^k - 1)^e: e rounds of all-ones division.
            if let TermNode::Pow(b, e) = divisor_term.node() {
                if let (Some(bv), Some(ev)) =
                    (self.memo.get(&b.as_ptr()), self.memo.get(&e.as_ptr()))
                {
                    if is_all_ones(&bv) && bv.bits() > 1 {
                        if let Some(rounds) = ev.to_u64().filter(|&r| r >= 1 && r <= 64) {
                            let k = bv.bits();
                            let mut q = x.clone();
                            let mut exact = true;
                            for _ in 0..rounds {
                                let (q2, r) = div_rem_all_ones(&q, k);
                                exact &= r.is_zero();
                                q = q2;
                            }
                            return (q, exact);
                        }
                    }
                }
            }
        }
        let (q, r) = x.div_rem(y);
        (q, r.is_zero())
    }
}

fn mul_fast(x: &BigUint, y: &BigUint) -> BigUint {
    if x.is_zero() || y.is_zero() {
        return BigUint::zero();
    }
    if x.bits() > 64 && x.count_ones() == 1 {
        return y << (x.bits() - 1);
    }
    if y.bits() > 64 && y.count_ones() == 1 {
        return x << (y.bits() - 1);
    }
    x * y
}

/// `x mod y` with `x mod 0 = x`.
pub fn modulo(x: &BigUint, y: &BigUint) -> BigUint {
    if y.is_zero() {
        return x.clone();
    }
    if y.is_one() {
        return BigUint::zero();
    }
    if *x < *y {
        return x.clone();
    }
    if y.count_ones() == 1 {
        return low_bits(x, y.bits() - 1);
    }
    if is_all_ones(y) {
        return div_rem_all_ones(x, y.bits()).1;
    }
    x % y
}

fn is_all_ones(v: &BigUint) -> bool {
    !v.is_zero() && v.count_ones() == v.bits()
}

/// The low `k` bits of `x`.
fn low_bits(x: &BigUint, k: u64) -> BigUint {
    if x.bits() <= k {
        return x.clone();
    }
    let mut words = x.to_u32_digits();
    let full = (k / 32) as usize;
    let rem = (k % 32) as u32;
    if rem == 0 {
        words.truncate(full);
    } else {
        words.truncate(full + 1);
        if let Some(w) = words.last_mut() {
            *w &= (1u32 << rem) - 1;
        }
    }
    BigUint::new(words)
}

/// Division by the all-ones number `2^k - 1` in time linear in the size of
/// `x`: classic base-`2^k` long division where each quotient digit is the
/// running remainder, possibly plus one.
pub fn div_rem_all_ones(x: &BigUint, k: u64) -> (BigUint, BigUint) {
    debug_assert!(k >= 1);
    if k == 1 {
        return (x.clone(), BigUint::zero());
    }
    if x.bits() < k {
        return (BigUint::zero(), x.clone());
    }
    let words = x.to_u32_digits();
    let chunks = (x.bits() + k - 1) / k;
    let rwords = (k as usize + 31) / 32 + 1;
    let mut r = vec![0u32; rwords];
    let mut digit = vec![0u32; rwords];
    let mut tmp = vec![0u32; rwords];
    let mut q = vec![0u32; ((chunks * k + 31) / 32 + 1) as usize];
    for i in (0..chunks).rev() {
        extract_chunk(&words, i * k, k, &mut digit);
        // tmp = r + digit, compared against d = 2^k - 1
        let mut carry = 0u64;
        for j in 0..rwords {
            let s = r[j] as u64 + digit[j] as u64 + carry;
            tmp[j] = s as u32;
            carry = s >> 32;
        }
        debug_assert_eq!(carry, 0);
        let ge_d = chunk_ge_all_ones(&tmp, k);
        if ge_d {
            // q_i = r + 1; r = tmp - (2^k - 1) = tmp + 1 - 2^k
            add_one(&mut r);
            write_chunk(&mut q, i * k, k, &r);
            add_one(&mut tmp);
            clear_bit_from(&mut tmp, k);
            r.copy_from_slice(&tmp);
        } else {
            write_chunk(&mut q, i * k, k, &r);
            r.copy_from_slice(&tmp);
        }
    }
    (BigUint::new(q), BigUint::new(r))
}

/// Bits `[off, off+width)` of `words`, LSB-aligned into `out` (zero padded).
fn extract_chunk(words: &[u32], off: u64, width: u64, out: &mut [u32]) {
    out.iter_mut().for_each(|w| *w = 0);
    let word0 = (off / 32) as usize;
    let shift = (off % 32) as u32;
    let need = ((width + 31) / 32) as usize + 1;
    for j in 0..need.min(out.len()) {
        let lo = words.get(word0 + j).copied().unwrap_or(0) as u64;
        let hi = words.get(word0 + j + 1).copied().unwrap_or(0) as u64;
        let pair = lo | (hi << 32);
        out[j] = (pair >> shift) as u32;
    }
    // Mask to `width` bits.
    let full = (width / 32) as usize;
    let rem = (width % 32) as u32;
    for j in out.iter_mut().skip(full + usize::from(rem != 0)) {
        *j = 0;
    }
    if rem != 0 && full < out.len() {
        out[full] &= (1u32 << rem) - 1;
    }
}

/// Or `width` bits of `chunk` into `words` at bit offset `off`. Target bits
/// must be zero (chunks are disjoint).
fn write_chunk(words: &mut [u32], off: u64, width: u64, chunk: &[u32]) {
    let word0 = (off / 32) as usize;
    let shift = (off % 32) as u32;
    let n = ((width + 31) / 32) as usize;
    for j in 0..n {
        let v = chunk[j] as u64;
        words[word0 + j] |= (v << shift) as u32;
        if shift != 0 {
            words[word0 + j + 1] |= (v >> (32 - shift)) as u32;
        }
    }
}

/// Is the `k+1`-bit value in `v` at least `2^k - 1`?
fn chunk_ge_all_ones(v: &[u32], k: u64) -> bool {
    let full = (k / 32) as usize;
    let rem = (k % 32) as u32;
    // Any bit at position >= k set means v >= 2^k > d.
    if rem == 0 {
        if v[full..].iter().any(|&w| w != 0) {
            return true;
        }
    } else {
        if v[full] >> rem != 0 || v[full + 1..].iter().any(|&w| w != 0) {
            return true;
        }
    }
    // Otherwise v < 2^k; v >= d iff all low k bits are ones.
    if v[..full].iter().any(|&w| w != u32::MAX) {
        return false;
    }
    rem == 0 || v[full] & ((1u32 << rem) - 1) == (1u32 << rem) - 1
}

fn add_one(v: &mut [u32]) {
    for w in v.iter_mut() {
        let (s, c) = w.overflowing_add(1);
        *w = s;
        if !c {
            return;
        }
    }
}

/// Clear every bit at position >= k.
fn clear_bit_from(v: &mut [u32], k: u64) {
    let full = (k / 32) as usize;
    let rem = (k % 32) as u32;
    if rem != 0 && full < v.len() {
        v[full] &= (1u32 << rem) - 1;
    }
    let start = full + usize::from(rem != 0);
    for w in v.iter_mut().skip(start) {
        *w = 0;
    }
}
