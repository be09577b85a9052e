//! Subcommand implementations and the exit-code mapping.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use arithterm::compiler::{
    compile_count, enumerate_count, read_spec, validate_bounds, CompilerError,
    DEFAULT_ENUMERATION_BUDGET,
};
use arithterm::eval::{eval as eval_term_ctx, EvalContext, EvalError, DEFAULT_BIT_BUDGET};
use arithterm::gallery::{self, FunctionEntry, Row, RowStatus, Strategy, VerifyOpts};
use arithterm::print::{print_term, PrintFormat};
use num_traits::ToPrimitive;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn silent(code: u8) -> CliError {
        CliError {
            code,
            message: String::new(),
        }
    }
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_ASSERT: u8 = 4;
const EXIT_VALIDATION: u8 = 5;

pub fn resolve_bit_budget(flag: Option<u64>) -> u64 {
    if let Some(b) = flag {
        return b;
    }
    if let Ok(v) = std::env::var("ARITHTERM_BIT_BUDGET") {
        if let Ok(b) = v.trim().parse::<u64>() {
            return b;
        }
    }
    DEFAULT_BIT_BUDGET
}

fn lookup(name: &str) -> Result<&'static FunctionEntry, CliError> {
    gallery::find(name).ok_or_else(|| {
        CliError::new(
            EXIT_DOMAIN,
            format!("unknown function `{name}`; try `show --list`"),
        )
    })
}

fn eval_error(e: EvalError) -> CliError {
    match e {
        EvalError::BitBudgetExceeded { .. } => CliError::new(EXIT_BUDGET, e.to_string()),
        EvalError::ExactDivisionViolation { .. } => CliError::new(EXIT_ASSERT, e.to_string()),
        EvalError::ArityMismatch { .. } => CliError::new(EXIT_DOMAIN, e.to_string()),
    }
}

fn parse_range(text: &str) -> Result<(u64, u64), CliError> {
    let parts: Vec<&str> = text.split("..").collect();
    let bad = || {
        CliError::new(
            EXIT_DOMAIN,
            format!("range must look like `a..b`, got `{text}`"),
        )
    };
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo: u64 = parts[0].parse().map_err(|_| bad())?;
    let hi: u64 = parts[1].parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::new(EXIT_DOMAIN, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn eval(
    name: &str,
    args: &[u64],
    strategy: &str,
    report: bool,
    modpow: bool,
    kernel_strict: bool,
    bit_budget: u64,
) -> Result<(), CliError> {
    let entry = lookup(name)?;
    if args.len() != entry.arity {
        return Err(CliError::new(
            EXIT_DOMAIN,
            format!(
                "{name} takes {} argument(s) ({}), got {}",
                entry.arity,
                entry.args,
                args.len()
            ),
        ));
    }
    (entry.domain)(args).map_err(|e| CliError::new(EXIT_DOMAIN, e.to_string()))?;
    match strategy {
        "oracle" => {
            println!("{}", (entry.oracle)(args));
            Ok(())
        }
        "count" => {
            let spec = entry.spec().ok_or_else(|| {
                CliError::new(EXIT_DOMAIN, format!("{name} has no counting spec"))
            })?;
            let count =
                enumerate_count(&spec, args, DEFAULT_ENUMERATION_BUDGET).map_err(compiler_error)?;
            println!("{count}");
            Ok(())
        }
        "term" => {
            let term = entry.term();
            let mut ctx = EvalContext::of_u64(args).checked().with_budget(bit_budget);
            if modpow {
                ctx = ctx.with_modpow();
            }
            if kernel_strict {
                ctx = ctx.kernel_strict();
            }
            let out = eval_term_ctx(&term, &ctx).map_err(eval_error)?;
            let value = match &entry.kind {
                gallery::EntryKind::Predicate { target, .. } => {
                    let hit = out.result == target(args).into();
                    if hit {
                        "1".to_string()
                    } else {
                        "0".to_string()
                    }
                }
                _ => out.result.to_string(),
            };
            println!("{value}");
            if report {
                println!("peak_bits {}", out.peak_bits);
                let failed = out.failed_assertions().count();
                println!(
                    "assertions {} checked, {} failed",
                    out.assertions.len(),
                    failed
                );
            }
            if !out.all_checks_passed() {
                return Err(CliError::new(EXIT_ASSERT, "an exactness assertion failed"));
            }
            Ok(())
        }
        other => Err(CliError::new(
            EXIT_DOMAIN,
            format!("unknown strategy `{other}` (term, oracle, count)"),
        )),
    }
}

fn compiler_error(e: CompilerError) -> CliError {
    match e {
        CompilerError::EnumerationBudget { .. } | CompilerError::TooLarge(_) => {
            CliError::new(EXIT_BUDGET, e.to_string())
        }
        CompilerError::Eval(inner) => eval_error(inner),
        other => CliError::new(EXIT_DOMAIN, other.to_string()),
    }
}

pub fn show(name: Option<&str>, format: &str, metrics: bool, list: bool) -> Result<(), CliError> {
    if list {
        for e in gallery::registry() {
            println!("{:10} {:8} {}", e.name, e.args, e.summary);
        }
        return Ok(());
    }
    let name =
        name.ok_or_else(|| CliError::new(EXIT_DOMAIN, "show needs a function name or --list"))?;
    let entry = lookup(name)?;
    let fmt = PrintFormat::parse(format)
        .ok_or_else(|| CliError::new(EXIT_DOMAIN, format!("unknown format `{format}`")))?;
    let term = entry.term();
    println!("{}", print_term(&term, fmt));
    if metrics {
        let m = term.size_metrics();
        println!(
            "nodes {} depth {} max_const_bits {}",
            m.nodes, m.depth, m.max_const_bits
        );
        let census = term
            .op_census()
            .into_iter()
            .map(|(op, c)| format!("{op}:{c}"))
            .collect::<Vec<_>>()
            .join(" ");
        println!("ops {census}");
    }
    Ok(())
}

fn csv_of_rows(rows: &[Row]) -> String {
    let mut out = String::from("args,expected,got,match,peak_bits\n");
    for r in rows {
        let args = r
            .args
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let status = match r.status {
            RowStatus::Match => "true",
            RowStatus::Mismatch => "false",
            RowStatus::Skipped => "skip",
        };
        let _ = writeln!(
            out,
            "{args},{},{},{status},{}",
            r.expected, r.got, r.peak_bits
        );
    }
    out
}

pub fn verify(
    name: &str,
    range: &str,
    strategy: &str,
    out: Option<&Path>,
    parallel: Option<usize>,
    enum_budget: Option<u64>,
    bit_budget: u64,
) -> Result<(), CliError> {
    let strat = Strategy::parse(strategy)
        .ok_or_else(|| CliError::new(EXIT_DOMAIN, format!("unknown strategy `{strategy}`")))?;
    let (lo, hi) = parse_range(range)?;
    let opts = VerifyOpts {
        bit_budget,
        enum_budget: enum_budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET),
        modpow: false,
    };
    let rows = if strat == Strategy::Identity {
        if !gallery::identity_suites().contains(&name) {
            return Err(CliError::new(
                EXIT_DOMAIN,
                format!("identity suites are {:?}", gallery::identity_suites()),
            ));
        }
        gallery::identity_suite(name, lo, hi)
    } else {
        let entry = lookup(name)?;
        let run = || gallery::verify_range(entry, lo, hi, strat, opts);
        match parallel {
            Some(threads) if threads >= 1 => rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::new(EXIT_DOMAIN, e.to_string()))?
                .install(run),
            _ => run(),
        }
    };
    write_output(out, &csv_of_rows(&rows))?;
    let matched = rows.iter().filter(|r| r.status == RowStatus::Match).count();
    let skipped = rows
        .iter()
        .filter(|r| r.status == RowStatus::Skipped)
        .count();
    let checked = rows.len() - skipped;
    if skipped > 0 {
        println!("{matched}/{checked} match ({skipped} skipped)");
    } else {
        println!("{matched}/{checked} match");
    }
    if matched == checked {
        Ok(())
    } else {
        Err(CliError::silent(EXIT_MISMATCH))
    }
}

pub fn compile(
    spec_path: &Path,
    out: Option<&Path>,
    validate_w: Option<&str>,
    force: bool,
) -> Result<(), CliError> {
    let text = std::fs::read_to_string(spec_path).map_err(|e| {
        CliError::new(
            EXIT_DOMAIN,
            format!("cannot read {}: {e}", spec_path.display()),
        )
    })?;
    let spec = read_spec(&text).map_err(|e| CliError::new(EXIT_DOMAIN, e.to_string()))?;
    if let Some(range) = validate_w {
        let (lo, hi) = parse_range(range)?;
        let arity = spec.vars.len();
        let mut failures = Vec::new();
        for binding in bindings_product(lo, hi, arity, 4096) {
            match validate_bounds(&spec, &binding, 1 << 20) {
                Ok(report) => {
                    if !report.majorant_ok {
                        failures.push(format!(
                            "majorant needs {} bits but w = {} at {:?}{}",
                            report.majorant_bits,
                            report.width,
                            binding,
                            match report.exhaustive_ok {
                                Some(true) => " (exhaustive max fits; majorant is conservative)",
                                Some(false) => " (exhaustive max also exceeds the width)",
                                None => "",
                            }
                        ));
                    }
                }
                Err(e) => failures.push(format!("cannot validate at {binding:?}: {e}")),
            }
        }
        if !failures.is_empty() && !force {
            for f in &failures {
                eprintln!("arithterm: {f}");
            }
            return Err(CliError::new(
                EXIT_VALIDATION,
                format!(
                    "width validation failed at {} binding(s); use --force to emit anyway",
                    failures.len()
                ),
            ));
        }
    }
    let compiled = compile_count(&spec).map_err(|e| CliError::new(EXIT_DOMAIN, e.to_string()))?;
    let mut text = print_term(&compiled.count_term, PrintFormat::Canonical);
    text.push('\n');
    write_output(out, &text)
}

fn bindings_product(lo: u64, hi: u64, arity: usize, cap: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut b = prefix.clone();
                b.push(v);
                next.push(b);
                if next.len() > cap {
                    return next;
                }
            }
        }
        out = next;
    }
    out
}

pub fn bench(name: &str, range: &str, out: Option<&Path>, bit_budget: u64) -> Result<(), CliError> {
    let entry = lookup(name)?;
    let (lo, hi) = parse_range(range)?;
    let term = entry.term();
    let nodes = term.size_metrics().nodes;
    let mut csv = String::from("args,term_ms,oracle_ms,peak_bits,node_count\n");
    for args in gallery::arg_tuples(entry, lo, hi) {
        let args_s = args
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        if (entry.domain)(&args).is_err() {
            let _ = writeln!(csv, "{args_s},,,,{nodes}");
            continue;
        }
        let t0 = Instant::now();
        let oracle_value = (entry.oracle)(&args);
        let oracle_ms = t0.elapsed().as_secs_f64() * 1e3;
        let t0 = Instant::now();
        match entry.eval_term(&term, &args, bit_budget, false) {
            Ok(outc) => {
                let term_ms = t0.elapsed().as_secs_f64() * 1e3;
                debug_assert_eq!(outc.value.to_u64(), Some(oracle_value));
                let _ = writeln!(
                    csv,
                    "{args_s},{term_ms:.3},{oracle_ms:.3},{},{nodes}",
                    outc.peak_bits
                );
            }
            Err(_) => {
                let _ = writeln!(csv, "{args_s},,{oracle_ms:.3},,{nodes}");
            }
        }
    }
    write_output(out, &csv)
}

pub fn export(what: &str, name: &str, range: &str, out: Option<&Path>) -> Result<(), CliError> {
    if what != "bfile" {
        return Err(CliError::new(
            EXIT_DOMAIN,
            format!("unknown export kind `{what}`; only bfile"),
        ));
    }
    let entry = lookup(name)?;
    if entry.arity != 1 {
        return Err(CliError::new(
            EXIT_DOMAIN,
            format!(
                "bfile export needs a unary function; {name} takes {}",
                entry.arity
            ),
        ));
    }
    let (lo, hi) = parse_range(range)?;
    let mut text = String::new();
    for n in lo..=hi {
        (entry.domain)(&[n]).map_err(|e| CliError::new(EXIT_DOMAIN, e.to_string()))?;
        let _ = writeln!(text, "{n} {}", (entry.oracle)(&[n]));
    }
    write_output(out, &text)
}
