//! Range verification: one row per argument tuple comparing the closed form
//! (or the spec's enumerated count) against the naive oracle, plus the
//! all-oracle identity suites.

use rayon::prelude::*;

use num_traits::ToPrimitive;

use crate::compiler::{enumerate_count, CompilerError, DEFAULT_ENUMERATION_BUDGET};
use crate::eval::{EvalError, DEFAULT_BIT_BUDGET};

use super::oracles;
use super::registry::FunctionEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    OracleVsTerm,
    OracleVsSpecCount,
    Identity,
}

impl Strategy {
    pub fn parse(name: &str) -> Option<Strategy> {
        match name {
            "oracle-vs-term" => Some(Strategy::OracleVsTerm),
            "oracle-vs-spec-count" => Some(Strategy::OracleVsSpecCount),
            "identity" => Some(Strategy::Identity),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOpts {
    pub bit_budget: u64,
    pub enum_budget: u64,
    pub modpow: bool,
}

impl Default for VerifyOpts {
    fn default() -> Self {
        VerifyOpts {
            bit_budget: DEFAULT_BIT_BUDGET,
            enum_budget: DEFAULT_ENUMERATION_BUDGET,
            modpow: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch,
    /// Out of budget at this argument; excluded rather than failed, so
    /// heavyweight cases drop out instead of poisoning a range run.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub args: Vec<u64>,
    pub expected: String,
    pub got: String,
    pub status: RowStatus,
    pub peak_bits: u64,
    pub note: String,
}

impl Row {
    pub fn matched(&self) -> bool {
        self.status == RowStatus::Match
    }
}

/// The argument tuples a range denotes for an entry: the range always drives
/// the final argument; secondary arguments sweep their natural domains.
pub fn arg_tuples(entry: &FunctionEntry, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        match (entry.name, entry.arity) {
            (_, 1) => out.push(vec![n]),
            ("inv", _) => {
                for m in 1..n.max(1) {
                    if oracles::gcd(m, n) == 1 {
                        out.push(vec![m, n]);
                    }
                }
            }
            ("ord", _) => {
                for m in 2..n.max(2) {
                    if oracles::gcd(m, n) == 1 {
                        out.push(vec![m, n]);
                    }
                }
            }
            ("dlog", _) => {
                for g in 2..n {
                    if !oracles::is_primitive_root(g, n) {
                        continue;
                    }
                    for m in 2..n {
                        if oracles::gcd(m, n) == 1 {
                            out.push(vec![m, g, n]);
                        }
                    }
                }
            }
            ("log", _) | ("uroot", _) => {
                for m in 2..=5u64 {
                    out.push(vec![m, n]);
                }
            }
            ("nu", _) | ("nu-basic", _) => {
                for p in [2u64, 3, 5] {
                    out.push(vec![p, n]);
                }
            }
            _ => out.push(vec![n]),
        }
    }
    out
}

pub fn verify_range(
    entry: &'static FunctionEntry,
    lo: u64,
    hi: u64,
    strategy: Strategy,
    opts: VerifyOpts,
) -> Vec<Row> {
    let tuples = arg_tuples(entry, lo, hi);
    match strategy {
        Strategy::OracleVsTerm => {
            let term = entry.term();
            tuples
                .par_iter()
                .map(|args| {
                    let expected = match (entry.domain)(args) {
                        Err(e) => {
                            return Row {
                                args: args.clone(),
                                expected: String::new(),
                                got: String::new(),
                                status: RowStatus::Mismatch,
                                peak_bits: 0,
                                note: e.to_string(),
                            }
                        }
                        Ok(()) => (entry.oracle)(args),
                    };
                    match entry.eval_term(&term, args, opts.bit_budget, opts.modpow) {
                        Ok(out) => {
                            let got = out.value.to_string();
                            let matched = out.value.to_u64() == Some(expected) && out.checks_ok;
                            Row {
                                args: args.clone(),
                                expected: expected.to_string(),
                                got,
                                status: if matched {
                                    RowStatus::Match
                                } else {
                                    RowStatus::Mismatch
                                },
                                peak_bits: out.peak_bits,
                                note: if out.checks_ok {
                                    String::new()
                                } else {
                                    "exactness check failed".into()
                                },
                            }
                        }
                        Err(e @ EvalError::BitBudgetExceeded { .. }) => Row {
                            args: args.clone(),
                            expected: expected.to_string(),
                            got: String::new(),
                            status: RowStatus::Skipped,
                            peak_bits: 0,
                            note: e.to_string(),
                        },
                        Err(e) => Row {
                            args: args.clone(),
                            expected: expected.to_string(),
                            got: String::new(),
                            status: RowStatus::Mismatch,
                            peak_bits: 0,
                            note: e.to_string(),
                        },
                    }
                })
                .collect()
        }
        Strategy::OracleVsSpecCount => {
            let spec = match entry.spec() {
                Some(s) => s,
                None => {
                    return vec![Row {
                        args: vec![],
                        expected: String::new(),
                        got: String::new(),
                        status: RowStatus::Mismatch,
                        peak_bits: 0,
                        note: format!("{} has no counting spec", entry.name),
                    }]
                }
            };
            let count_oracle = entry.count_oracle().expect("counters have a count oracle");
            tuples
                .par_iter()
                .map(|args| {
                    if let Err(e) = (entry.domain)(args) {
                        return Row {
                            args: args.clone(),
                            expected: String::new(),
                            got: String::new(),
                            status: RowStatus::Mismatch,
                            peak_bits: 0,
                            note: e.to_string(),
                        };
                    }
                    let expected = count_oracle(args);
                    match enumerate_count(&spec, args, opts.enum_budget) {
                        Ok(got) => Row {
                            args: args.clone(),
                            expected: expected.to_string(),
                            got: got.to_string(),
                            status: if got == expected {
                                RowStatus::Match
                            } else {
                                RowStatus::Mismatch
                            },
                            peak_bits: 0,
                            note: String::new(),
                        },
                        Err(e @ CompilerError::EnumerationBudget { .. })
                        | Err(e @ CompilerError::TooLarge(_)) => Row {
                            args: args.clone(),
                            expected: expected.to_string(),
                            got: String::new(),
                            status: RowStatus::Skipped,
                            peak_bits: 0,
                            note: e.to_string(),
                        },
                        Err(e) => Row {
                            args: args.clone(),
                            expected: expected.to_string(),
                            got: String::new(),
                            status: RowStatus::Mismatch,
                            peak_bits: 0,
                            note: e.to_string(),
                        },
                    }
                })
                .collect()
        }
        Strategy::Identity => identity_suite(entry.name, lo, hi),
    }
}

/// All-oracle identity suites. `prop45` is the valuation/divisor-count
/// identity `nu_p(n)(tau(pn) - tau(n)) = 2 tau(n) - tau(pn)`; `euler` is
/// `m^phi(n) = 1 mod n` for coprime m; `orddiv` checks that the order divides
/// the totient and that `n | m^r - 1` exactly at multiples of the order.
pub fn identity_suite(name: &str, lo: u64, hi: u64) -> Vec<Row> {
    let mut rows = Vec::new();
    match name {
        "prop45" => {
            for p in [2u64, 3, 5, 7] {
                for n in lo.max(1)..=hi {
                    let lhs = oracles::nu_p(p, n) as i128
                        * (oracles::tau(p * n) as i128 - oracles::tau(n) as i128);
                    let rhs = 2 * oracles::tau(n) as i128 - oracles::tau(p * n) as i128;
                    rows.push(Row {
                        args: vec![p, n],
                        expected: lhs.to_string(),
                        got: rhs.to_string(),
                        status: if lhs == rhs {
                            RowStatus::Match
                        } else {
                            RowStatus::Mismatch
                        },
                        peak_bits: 0,
                        note: String::new(),
                    });
                }
            }
        }
        "euler" => {
            for n in lo.max(2)..=hi {
                for m in 1..n {
                    if oracles::gcd(m, n) != 1 {
                        continue;
                    }
                    let mut acc = 1u64;
                    for _ in 0..oracles::phi(n) {
                        acc = acc * m % n;
                    }
                    rows.push(Row {
                        args: vec![m, n],
                        expected: "1".to_string(),
                        got: acc.to_string(),
                        status: if acc == 1 {
                            RowStatus::Match
                        } else {
                            RowStatus::Mismatch
                        },
                        peak_bits: 0,
                        note: String::new(),
                    });
                }
            }
        }
        "orddiv" => {
            for n in lo.max(2)..=hi {
                for m in 1..n {
                    if oracles::gcd(m, n) != 1 {
                        continue;
                    }
                    let ord = oracles::ord(m, n).expect("coprime");
                    let mut ok = oracles::phi(n) % ord == 0;
                    let mut acc = 1u64;
                    for r in 1..=2 * ord {
                        acc = acc * m % n;
                        ok &= (acc == 1) == (r % ord == 0);
                    }
                    rows.push(Row {
                        args: vec![m, n],
                        expected: "true".to_string(),
                        got: ok.to_string(),
                        status: if ok {
                            RowStatus::Match
                        } else {
                            RowStatus::Mismatch
                        },
                        peak_bits: 0,
                        note: String::new(),
                    });
                }
            }
        }
        other => rows.push(Row {
            args: vec![],
            expected: String::new(),
            got: String::new(),
            status: RowStatus::Mismatch,
            peak_bits: 0,
            note: format!("unknown identity suite `{other}`"),
        }),
    }
    rows
}

pub fn identity_suites() -> &'static [&'static str] {
    &["prop45", "euler", "orddiv"]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::registry::find;

    #[test]
    fn tau_rows_match_on_a_small_range() {
        let entry = find("tau").unwrap();
        let rows = verify_range(entry, 1, 8, Strategy::OracleVsTerm, VerifyOpts::default());
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(Row::matched));
    }

    #[test]
    fn domain_violation_is_a_failed_row() {
        let entry = find("tau").unwrap();
        let rows = verify_range(entry, 0, 0, Strategy::OracleVsTerm, VerifyOpts::default());
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].status, RowStatus::Mismatch);
    }

    #[test]
    fn identity_suites_hold_on_small_ranges() {
        assert!(identity_suite("prop45", 1, 40).iter().all(Row::matched));
        assert!(identity_suite("euler", 2, 20).iter().all(Row::matched));
        assert!(identity_suite("orddiv", 2, 15).iter().all(Row::matched));
    }
}
