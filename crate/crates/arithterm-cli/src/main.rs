//! Command-line front end for the arithmetic-term gallery: evaluate closed
//! forms, display them, verify ranges against the naive oracles, compile
//! counting specs, benchmark, and export sequence files.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit codes: 0 success, 1 verification mismatch, 2 domain or usage error,
/// 3 budget exceeded, 4 internal assertion failure, 5 bound validation
/// refused emission.
#[derive(Parser)]
#[command(
    name = "arithterm",
    version,
    about = "Closed-form arithmetic terms for number-theoretic functions",
    max_term_width = 100
)]
struct Cli {
    /// Maximum bit width of any intermediate value. Overrides the
    /// ARITHTERM_BIT_BUDGET environment variable; defaults to 2^25.
    #[arg(long, global = true)]
    bit_budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at the given arguments.
    Eval {
        /// Function name; see `show --list`.
        function: String,
        /// Natural-number arguments.
        args: Vec<u64>,
        /// How to compute: term (the closed form), oracle (naive reference),
        /// or count (the raw enumerated box count behind the spec).
        #[arg(long, default_value = "term")]
        strategy: String,
        /// Also print peak bit size and the assertion log.
        #[arg(long)]
        report: bool,
        /// Evaluate mod-of-power subterms by modular exponentiation.
        #[arg(long)]
        modpow: bool,
        /// Lower extended nodes and evaluate kernel semantics only.
        #[arg(long)]
        kernel_strict: bool,
    },
    /// Print a function's closed form.
    Show {
        /// Function name, or nothing with --list.
        function: Option<String>,
        /// Output format: canonical, infix, latex, or appendix.
        #[arg(long, default_value = "canonical")]
        format: String,
        /// Append node count, depth and operation census.
        #[arg(long)]
        metrics: bool,
        /// List the registered functions.
        #[arg(long)]
        list: bool,
    },
    /// Compare a range of arguments against the naive oracle; write a CSV
    /// report and exit nonzero on any mismatch.
    Verify {
        function: String,
        /// Inclusive range `a..b` for the driving argument.
        #[arg(long)]
        range: String,
        /// oracle-vs-term, oracle-vs-spec-count, or identity.
        #[arg(long, default_value = "oracle-vs-term")]
        strategy: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Worker threads for the range.
        #[arg(long)]
        parallel: Option<usize>,
        /// Maximum box points for spec-count enumeration.
        #[arg(long)]
        enum_budget: Option<u64>,
    },
    /// Compile a counting-spec file into its closed-form counter.
    Compile {
        /// Path to the spec (TOML; see the bundled specs/ directory).
        #[arg(long)]
        spec: std::path::PathBuf,
        /// Write the canonical term here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Validate the width bound over this range of bindings before
        /// emitting; refuse emission on majorant failure.
        #[arg(long)]
        validate_w: Option<String>,
        /// Emit even if validation fails.
        #[arg(long)]
        force: bool,
    },
    /// Time closed-form evaluation against the oracle over a range.
    Bench {
        function: String,
        #[arg(long)]
        range: String,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Export a sequence file.
    Export {
        /// Export kind; only `bfile` (lines of `n value`).
        what: String,
        function: String,
        #[arg(long)]
        range: String,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = commands::resolve_bit_budget(cli.bit_budget);
    let result = match cli.command {
        Command::Eval {
            function,
            args,
            strategy,
            report,
            modpow,
            kernel_strict,
        } => commands::eval(
            &function,
            &args,
            &strategy,
            report,
            modpow,
            kernel_strict,
            budget,
        ),
        Command::Show {
            function,
            format,
            metrics,
            list,
        } => commands::show(function.as_deref(), &format, metrics, list),
        Command::Verify {
            function,
            range,
            strategy,
            out,
            parallel,
            enum_budget,
        } => commands::verify(
            &function,
            &range,
            &strategy,
            out.as_deref(),
            parallel,
            enum_budget,
            budget,
        ),
        Command::Compile {
            spec,
            out,
            validate_w,
            force,
        } => commands::compile(&spec, out.as_deref(), validate_w.as_deref(), force),
        Command::Bench {
            function,
            range,
            out,
        } => commands::bench(&function, &range, out.as_deref(), budget),
        Command::Export {
            what,
            function,
            range,
            out,
        } => commands::export(&what, &function, &range, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("arithterm: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
