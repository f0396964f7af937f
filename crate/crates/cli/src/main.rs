//! `codeloop`: construct code loops from doubly even binary codes (or from
//! explicit cubic structure constants), verify their algebraic structure,
//! and export Cayley tables in a text exchange format.
//!
//! Exit codes: 0 success, 1 operational error (missing file, malformed
//! input, capacity refusal), 2 validation failure (code not doubly even,
//! verification suite failure).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use codeloop_core::moufang::table::{TABLE_HARD_LIMIT, TABLE_SOFT_LIMIT};
use codeloop_core::moufang::verify as loop_verify;
use codeloop_core::triality::verify as group_verify;
use codeloop_core::{
    codes, validate_doubly_even, BitMatrix, CayleyTable, CodeLoop, CubicSpace, DoublyEvenCode,
    Error, Mode, Report, Result, TrialityGroup,
};

#[derive(Parser)]
#[command(
    name = "codeloop",
    version,
    about = "Code loops from doubly even binary codes: construction, verification, table export"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a binary code: doubly-even verdict and weight profile
    CheckCode {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Print the cubic structure constants induced by the input
    Constants {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Build the group and loop and run every verification suite
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Write the loop's Cayley table in the text exchange format
    ExportTable {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        config: ConfigArgs,
        /// Output file path
        #[arg(long)]
        out: PathBuf,
        /// Materialize tables up to the hard limit instead of the default cap
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Builtin code name: hamming8, hamming8_sub3, golay24, zero_<k>
    #[arg(long)]
    builtin: Option<String>,
    /// Generator matrix file: rows of 0/1, `#` comments
    #[arg(long)]
    code: Option<PathBuf>,
    /// Cubic structure-constant file: dim/sigma/kappa/alpha lines
    #[arg(long)]
    cubic: Option<PathBuf>,
}

#[derive(Args)]
struct ConfigArgs {
    /// Seed for sampled suites; each suite derives its own stream from
    /// (seed, suite name)
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of samples per sampled suite
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Largest enumeration a suite may run exhaustively
    #[arg(long, default_value_t = 1 << 24)]
    exhaustive_limit: u64,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// One human-readable line per suite
    Text,
    /// One JSON object per line
    Jsonl,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::CheckCode { input, config } => cmd_check_code(&input, &config),
        Command::Constants { input, .. } => cmd_constants(&input),
        Command::Verify { input, config } => cmd_verify(&input, &config),
        Command::ExportTable {
            input,
            config: _,
            out,
            force,
        } => cmd_export_table(&input, &out, force),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(classify(&e))
        }
    }
}

/// Validation failures exit 2; everything else (I/O, parse, capacity,
/// unknown names) is operational and exits 1.
fn classify(e: &Error) -> u8 {
    match e {
        Error::NotDoublyEven { .. } | Error::Structure(_) => 2,
        _ => 1,
    }
}

enum Input {
    Code(DoublyEvenCode),
    Cubic(CubicSpace),
}

fn read_file(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Context(format!("{}: {e}", path.display())))
}

fn load_input(args: &InputArgs) -> Result<Input> {
    if let Some(name) = &args.builtin {
        Ok(Input::Code(DoublyEvenCode::builtin(name)?))
    } else if let Some(path) = &args.code {
        Ok(Input::Code(DoublyEvenCode::parse(&read_file(path)?)?))
    } else {
        let path = args.cubic.as_ref().expect("clap guarantees one input");
        Ok(Input::Cubic(CubicSpace::parse(&read_file(path)?)?))
    }
}

fn emit_report(format: FormatArg, r: &Report) {
    match format {
        FormatArg::Text => println!("{}", r.text_line()),
        FormatArg::Jsonl => {
            println!("{}", serde_json::to_string(r).expect("report serializes"))
        }
    }
}

fn emit_kv(format: FormatArg, key: &str, value: impl std::fmt::Display + serde::Serialize) {
    match format {
        FormatArg::Text => println!("{key} {value}"),
        FormatArg::Jsonl => {
            let mut map = serde_json::Map::new();
            map.insert(
                key.to_string(),
                serde_json::to_value(&value).expect("value serializes"),
            );
            println!("{}", serde_json::Value::Object(map));
        }
    }
}

// -- check-code --------------------------------------------------------------

fn cmd_check_code(input: &InputArgs, cfg: &ConfigArgs) -> Result<u8> {
    if input.cubic.is_some() {
        return Err(Error::Context(
            "check-code takes a code input (--builtin or --code), not --cubic".into(),
        ));
    }
    // Parse rows without the doubly-even gate so invalid codes still get a
    // profile and a witness rather than a bare error.
    let rows = if let Some(name) = &input.builtin {
        DoublyEvenCode::builtin(name)?.basis().rows().to_vec()
    } else {
        let path = input.code.as_ref().expect("clap guarantees one input");
        codes::parse_generator_rows(&read_file(path)?)?
    };
    let basis = BitMatrix::from_rows(rows.clone())?;
    emit_kv(cfg.format, "length", basis.cols());
    emit_kv(cfg.format, "dimension", basis.rank());
    let verdict = validate_doubly_even(&basis);
    emit_report(cfg.format, &verdict);
    if !verdict.passed() {
        return Ok(2);
    }

    let code = DoublyEvenCode::from_rows(rows)?;
    let words = 1u128 << code.dim();
    if words <= u128::from(cfg.exhaustive_limit) {
        match code.weight_distribution() {
            Ok(dist) => match cfg.format {
                FormatArg::Text => {
                    let body: Vec<String> =
                        dist.iter().map(|(w, c)| format!("{w}:{c}")).collect();
                    println!("weight-distribution {}", body.join(" "));
                }
                FormatArg::Jsonl => println!(
                    "{}",
                    serde_json::json!({ "weight_distribution": dist })
                ),
            },
            Err(Error::Capacity { what, .. }) => {
                emit_kv(cfg.format, "weight-distribution", format!("skipped: {what}"))
            }
            Err(e) => return Err(e),
        }
    } else {
        emit_kv(
            cfg.format,
            "weight-distribution",
            format!(
                "skipped: 2^{} codewords exceed the exhaustive limit {}",
                code.dim(),
                cfg.exhaustive_limit
            ),
        );
    }
    Ok(0)
}

// -- constants ---------------------------------------------------------------

fn cmd_constants(input: &InputArgs) -> Result<u8> {
    let space = match load_input(input)? {
        Input::Code(code) => CubicSpace::from_code(&code)?,
        Input::Cubic(sp) => sp,
    };
    print!("{}", space.serialize());
    Ok(0)
}

// -- verify ------------------------------------------------------------------

struct SuiteRunner<'a> {
    cfg: &'a ConfigArgs,
    reports: Vec<Report>,
}

impl SuiteRunner<'_> {
    fn sampled(&self) -> Mode {
        Mode::Sampled {
            samples: self.cfg.samples,
            seed: self.cfg.seed,
        }
    }

    /// Exhaustive when the suite's natural enumeration fits the limit.
    fn mode_for(&self, natural_cost: u128) -> Mode {
        if natural_cost <= u128::from(self.cfg.exhaustive_limit) {
            Mode::Exhaustive
        } else {
            self.sampled()
        }
    }

    fn push(&mut self, r: Report) {
        emit_report(self.cfg.format, &r);
        self.reports.push(r);
    }

    /// Run a mode-taking suite; capacity overruns downgrade exhaustive to
    /// sampled with a notice, and a sampled overrun skips the suite.
    fn run(
        &mut self,
        suite: &'static str,
        natural_cost: u128,
        f: impl Fn(Mode) -> Result<Report>,
    ) -> Result<()> {
        let mode = self.mode_for(natural_cost);
        match f(mode) {
            Ok(r) => self.push(r),
            Err(Error::Capacity { what, .. }) if mode == Mode::Exhaustive => match f(self.sampled())
            {
                Ok(mut r) => {
                    r.note(format!("downgraded from exhaustive: {what} over capacity"));
                    self.push(r);
                }
                Err(Error::Capacity { what, needed, limit }) => self.push(Report::skipped(
                    suite,
                    format!("capacity: {what} needs {needed}, limit {limit}"),
                )),
                Err(e) => return Err(e),
            },
            Err(Error::Capacity { what, needed, limit }) => self.push(Report::skipped(
                suite,
                format!("capacity: {what} needs {needed}, limit {limit}"),
            )),
            Err(e) => return Err(e),
        }
        Ok(())
    }

    /// Run a suite with no mode parameter, skipping on capacity overruns.
    fn run_direct(&mut self, suite: &'static str, f: impl FnOnce() -> Result<Report>) -> Result<()> {
        match f() {
            Ok(r) => self.push(r),
            Err(Error::Capacity { what, needed, limit }) => self.push(Report::skipped(
                suite,
                format!("capacity: {what} needs {needed}, limit {limit}"),
            )),
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

fn cmd_verify(input: &InputArgs, cfg: &ConfigArgs) -> Result<u8> {
    let input = load_input(input)?;
    let mut runner = SuiteRunner {
        cfg,
        reports: Vec::new(),
    };

    let space = match &input {
        Input::Code(code) => {
            let mut valid = validate_doubly_even(code.basis());
            valid.suite = "code.doubly-even".into();
            runner.push(valid);
            let space = CubicSpace::from_code(code)?;
            let cost = 1u128 << (3 * space.dim());
            runner.run("code.form-consistency", cost, |m| {
                let mut r = space.consistency_with_code(code, m)?;
                r.suite = "code.form-consistency".into();
                Ok(r)
            })?;
            space
        }
        Input::Cubic(sp) => sp.clone(),
    };

    let n = space.dim() as u32;
    let g = TrialityGroup::new(space.clone());
    let group_order = if 3 * n + 2 < 128 {
        1u128 << (3 * n + 2)
    } else {
        u128::MAX
    };

    runner.push(group_verify::check_relations(&g));
    runner.run("presentation.associativity", group_order.saturating_pow(3), |m| {
        group_verify::check_associativity(&g, m)
    })?;
    runner.run("presentation.automorphisms", group_order, |m| {
        group_verify::check_automorphisms(&g, m)
    })?;
    runner.run("centralizer", group_order, |m| {
        group_verify::check_centralizer(&g, m)
    })?;
    runner.run("index", group_order, |m| group_verify::check_indices(&g, m))?;
    runner.run("triality-identity", group_order, |m| {
        group_verify::check_triality_identity(&g, m)
    })?;
    runner.run("parker", 6 * group_order.saturating_pow(2), |m| {
        group_verify::check_parker(&g, m)
    })?;

    match CodeLoop::from_space(space.clone()) {
        Ok(l) => {
            let loop_order = u128::from(l.order());
            runner.run("loop-latin", loop_order.pow(2), |m| {
                loop_verify::latin_check(&l, m)
            })?;
            runner.run("moufang-law", loop_order.pow(3), |m| {
                loop_verify::is_moufang(&l, m)
            })?;
            runner.run("small-frattini", loop_order.pow(2), |m| {
                loop_verify::small_frattini_check(&l, m)
            })?;
            runner.run("center", loop_order.pow(3), |m| {
                loop_verify::center_check(&l, m)
            })?;
            runner.run("structure-constants", loop_order.pow(3), |m| {
                loop_verify::structure_constants_check(&l, m)
            })?;

            let mut recovered = Report::new("recovered-constants", Mode::Exhaustive);
            let back = loop_verify::recovered_constants(&l)?;
            recovered.record(back == space, || {
                "recovered structure constants differ from the input space".into()
            });
            recovered.note(format!(
                "coefficients recovered from basis squares, commutators, associators: dim {}",
                back.dim()
            ));
            runner.push(recovered);

            runner.run("mult-identities", loop_order.pow(3), |m| {
                loop_verify::verify_mult_identities(&l, m)
            })?;
            runner.run_direct("mlt-bound", || loop_verify::mlt_bound_check(&l))?;
            runner.run_direct("dual-product", || loop_verify::dual_product_check(&l))?;
            runner.run("diassociativity", loop_order.pow(2), |m| {
                loop_verify::diassociativity_check(&l, m)
            })?;
        }
        Err(Error::Capacity { what, needed, limit }) => runner.push(Report::skipped(
            "loop",
            format!("capacity: {what} needs {needed}, limit {limit}"),
        )),
        Err(e) => return Err(e),
    }

    let suites = runner.reports.len();
    let failed = runner.reports.iter().filter(|r| !r.passed()).count();
    let skipped = runner.reports.iter().filter(|r| r.skipped).count();
    let passed = suites - failed - skipped;
    match cfg.format {
        FormatArg::Text => {
            println!("summary: {suites} suites, {passed} passed, {failed} failed, {skipped} skipped")
        }
        FormatArg::Jsonl => println!(
            "{}",
            serde_json::json!({
                "summary": {
                    "suites": suites,
                    "passed": passed,
                    "failed": failed,
                    "skipped": skipped,
                }
            })
        ),
    }
    Ok(if failed == 0 { 0 } else { 2 })
}

// -- export-table --------------------------------------------------------------

fn cmd_export_table(input: &InputArgs, out: &PathBuf, force: bool) -> Result<u8> {
    let l = match load_input(input)? {
        Input::Code(code) => CodeLoop::from_code(&code)?,
        Input::Cubic(sp) => CodeLoop::from_space(sp)?,
    };
    let limit = if force {
        TABLE_HARD_LIMIT
    } else {
        TABLE_SOFT_LIMIT
    };
    let table = CayleyTable::build(&l, limit)?;
    let mut file = fs::File::create(out)?;
    table.write_to(&mut file)?;
    println!("order {}", table.order());
    println!("wrote {}", out.display());
    Ok(0)
}
