//! Command-line front end. [`run_command`] does all the work so that tests
//! can drive it without spawning a process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ltlvce::eliminate::{simplify_specification, EliminationReport, Mode, SimplifyConfig};
use ltlvce::formula::{parse, to_nnf, Formula};
use ltlvce::oracle::{check, CheckOptions, Verdict};
use ltlvce::snf::{snf_transform, SnfMode};
use ltlvce::specification::{from_snf, parse_spec, render_spec, stats, Specification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "ltlvce", version, about = "Translate, simplify and check LTL specifications")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Translate an LTL formula into a specification.
    Translate {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        translation: TranslateFlags,
    },
    /// Eliminate variables and clauses from a specification.
    Simplify {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        simplification: SimplifyFlags,
    },
    /// Decide satisfiability of a specification; exit 10 if SAT, 20 if UNSAT.
    Check {
        input: PathBuf,
        #[command(flatten)]
        oracle: CheckFlags,
    },
    /// Translate, simplify and check an LTL formula.
    Run {
        input: PathBuf,
        #[command(flatten)]
        translation: TranslateFlags,
        #[command(flatten)]
        simplification: SimplifyFlags,
        #[command(flatten)]
        oracle: CheckFlags,
        /// Check the translated specification as is.
        #[arg(long)]
        no_simplify: bool,
    },
    /// Print variable and clause counts.
    Stats {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct TranslateFlags {
    /// Translate the negation of the formula.
    #[arg(long)]
    pub negate: bool,
    /// Use the unoptimised normal form translation.
    #[arg(long)]
    pub naive_snf: bool,
}

#[derive(Debug, Args)]
pub struct SimplifyFlags {
    /// Clauses an elimination may add.
    #[arg(long, default_value_t = 0)]
    pub grow: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Safe)]
    pub mode: ModeArg,
    /// Keep the variables of the input formula.
    #[arg(long)]
    pub protect_original: bool,
    /// Skip eliminations producing longer resolvents.
    #[arg(long)]
    pub max_resolvent_len: Option<usize>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Safe,
    Extended,
}

#[derive(Debug, Args)]
pub struct CheckFlags {
    /// Largest number of variables the oracle accepts.
    #[arg(long, default_value_t = 16)]
    pub max_vars: usize,
    /// Give up after this many reachable states.
    #[arg(long)]
    pub max_states: Option<usize>,
}

impl SimplifyFlags {
    pub fn config(&self) -> SimplifyConfig {
        SimplifyConfig {
            grow: self.grow,
            max_resolvent_len: self.max_resolvent_len,
            mode: match self.mode {
                ModeArg::Safe => Mode::Safe,
                ModeArg::Extended => Mode::Extended,
            },
            protect_original: self.protect_original,
            rounds_limit: None,
        }
    }
}

impl CheckFlags {
    pub fn options(&self) -> CheckOptions {
        CheckOptions {
            max_vars: self.max_vars,
            max_states: self.max_states,
            ..Default::default()
        }
    }
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Semantic(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Semantic(_) => EXIT_SEMANTIC,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Semantic(m) => m,
        }
    }
}

fn semantic(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Semantic(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to standard output: {e}"))),
    }
}

fn out(w: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(w, "{text}").map_err(|e| Failure::Io(e.to_string()))
}

fn translate(path: &Path, flags: &TranslateFlags) -> Result<Specification, Failure> {
    let text = read(path)?;
    let mut f = parse(&text).map_err(|e| semantic(path, e))?;
    if flags.negate {
        f = Formula::not(f);
    }
    let mode = if flags.naive_snf { SnfMode::Naive } else { SnfMode::Optimized };
    let snf = snf_transform(&to_nnf(&f), mode).map_err(|e| semantic(path, e))?;
    from_snf(&snf).map_err(|e| semantic(path, e))
}

fn load_spec(path: &Path) -> Result<Specification, Failure> {
    parse_spec(&read(path)?).map_err(|e| semantic(path, e))
}

fn report(r: &EliminationReport, json: bool, stderr: &mut dyn Write) -> Result<(), Failure> {
    let text = if json {
        serde_json::to_string(r).map_err(|e| Failure::Io(e.to_string()))?
    } else {
        r.to_string()
    };
    out(stderr, &text)
}

fn verdict(spec: &Specification, flags: &CheckFlags, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let v = check(spec, &flags.options()).map_err(|e| Failure::Semantic(e.to_string()))?;
    out(stdout, &v.to_string())?;
    match v {
        Verdict::Sat { lasso, .. } => {
            for state in lasso.stem.iter().chain(&lasso.cycle) {
                out(stdout, &state.render(&spec.signature))?;
            }
            Ok(EXIT_SAT)
        }
        Verdict::Unsat => Ok(EXIT_UNSAT),
    }
}

fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Translate {
            input,
            output,
            translation,
        } => {
            let spec = translate(input, translation)?;
            emit(output.as_deref(), &render_spec(&spec), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Simplify {
            input,
            output,
            simplification,
        } => {
            let spec = load_spec(input)?;
            let (simple, r) =
                simplify_specification(&spec, &simplification.config()).map_err(|e| semantic(input, e))?;
            emit(output.as_deref(), &render_spec(&simple), stdout)?;
            report(&r, simplification.json, stderr)?;
            Ok(EXIT_OK)
        }
        Command::Check { input, oracle } => verdict(&load_spec(input)?, oracle, stdout),
        Command::Run {
            input,
            translation,
            simplification,
            oracle,
            no_simplify,
        } => {
            let mut spec = translate(input, translation)?;
            if !no_simplify {
                let (simple, r) =
                    simplify_specification(&spec, &simplification.config()).map_err(|e| semantic(input, e))?;
                report(&r, simplification.json, stderr)?;
                spec = simple;
            }
            verdict(&spec, oracle, stdout)
        }
        Command::Stats { input, json } => {
            let s = stats(&load_spec(input)?);
            let text = if *json {
                serde_json::to_string(&s).map_err(|e| Failure::Io(e.to_string()))?
            } else {
                s.to_string()
            };
            out(stdout, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code.
pub fn run_command<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}
