//! The `twa` command line.
//!
//! Exit codes: `0` the decision holds or the construction succeeded, `1` the
//! decision fails (a witness is printed), `2` usage or I/O error, `3` a
//! resource cap was exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::automaton::WeightedAutomaton;
use crate::decisions::{self, Limits, Verdict};
use crate::disambiguation;
use crate::error::Error;
use crate::format;
use crate::oracle;
use crate::semiring::{parse_rational, SemiringTag};
use crate::spectral;
use crate::word::Word;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "twa", version, about = "Weighted automata over max-plus and min-plus semirings")]
struct Cli {
    /// Cap on the size of Boolean transition monoids.
    #[arg(long, global = true, default_value_t = Limits::default().monoid_cap)]
    monoid_cap: usize,
    /// Cap on the number of subsets in a determinization.
    #[arg(long, global = true, default_value_t = Limits::default().subset_cap)]
    subset_cap: usize,
    /// Write constructed automata here instead of standard output.
    #[arg(short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of the series on a word (`""` for the empty word).
    Eval { file: PathBuf, word: String },
    /// Remove states that are not both accessible and co-accessible.
    Trim { file: PathBuf },
    /// Maximum (min-plus: minimum) mean circuit weight of the letter-sum matrix.
    Rho { file: PathBuf },
    /// Decide whether every value is <= 0 (min-plus: >= 0).
    CheckNonpositive { file: PathBuf },
    /// Equivalent automaton with every weight <= 0 (min-plus: >= 0).
    Fatou { file: PathBuf },
    /// Decide whether the series is the constant c.
    EqualConst {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        c: String,
        /// Only compare on the support.
        #[arg(long)]
        on_support: bool,
    },
    /// Decide whether a max-plus and a min-plus automaton recognize the same series.
    Equal { max: PathBuf, min: PathBuf },
    /// Decide whether the max-plus series is below the min-plus one.
    Leq { max: PathBuf, min: PathBuf },
    /// Build a 1-valued automaton from an equivalent max-plus / min-plus pair.
    Onevalued {
        max: PathBuf,
        min: PathBuf,
        #[arg(long)]
        no_check: bool,
    },
    /// Build an unambiguous automaton from a 1-valued one.
    Disambiguate { file: PathBuf },
    /// Pair to 1-valued to unambiguous, in one go.
    Pipeline {
        max: PathBuf,
        min: PathBuf,
        #[arg(long)]
        no_check: bool,
    },
    /// Brute-force checks by word enumeration.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Compare two automata on every word up to a length.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        maxlen: usize,
    },
    /// Report the largest number of successful paths on a word up to a length.
    Ambiguity {
        file: PathBuf,
        #[arg(long)]
        maxlen: usize,
    },
}

enum Outcome {
    Holds(String),
    Fails(String),
    Automaton(WeightedAutomaton),
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(path: &Path) -> Result<WeightedAutomaton, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn verdict(v: Verdict, yes: &str, no: &str) -> Outcome {
    match v {
        Verdict::Holds => Outcome::Holds(yes.to_string()),
        Verdict::Fails { witness } => Outcome::Fails(format!("{no} witness={witness}")),
    }
}

/// Runs a max-plus question on `a`, or its dual on the negated series when
/// `a` is min-plus.
fn as_max_plus(a: &WeightedAutomaton) -> Result<(WeightedAutomaton, bool), Failure> {
    match a.tag() {
        SemiringTag::MaxPlus => Ok((a.clone(), false)),
        SemiringTag::MinPlus => Ok((a.negate_series()?, true)),
        other => Err(Failure::Lib(Error::TagMismatch {
            expected: "max-plus or min-plus".into(),
            found: other,
        })),
    }
}

fn execute(cli: &Cli, limits: &Limits) -> Result<Outcome, Failure> {
    Ok(match &cli.command {
        Command::Eval { file, word } => {
            let a = load(file)?;
            let word = if word == "\"\"" { Word::empty() } else { Word::from(word.as_str()) };
            let value = a.eval(&word)?;
            Outcome::Holds(a.tag().show(&value))
        }
        Command::Trim { file } => Outcome::Automaton(load(file)?.trim()),
        Command::Rho { file } => {
            let a = load(file)?;
            let (m, negated) = as_max_plus(&a)?;
            let rho = spectral::max_mean_cycle(&m.letter_sum()?)?;
            let rho = if negated { crate::semiring::negate_weight(&rho) } else { rho };
            Outcome::Holds(a.tag().show(&rho))
        }
        Command::CheckNonpositive { file } => {
            let (m, _) = as_max_plus(&load(file)?)?;
            verdict(decisions::decide_nonpositive(&m)?, "YES", "NO")
        }
        Command::Fatou { file } => {
            let (m, negated) = as_max_plus(&load(file)?)?;
            match decisions::fatou_normalize(&m) {
                Ok(n) if negated => Outcome::Automaton(n.negate_series()?),
                Ok(n) => Outcome::Automaton(n),
                Err(Error::NotNonpositive { witness }) => Outcome::Fails(format!("NO witness={witness}")),
                Err(e) => return Err(e.into()),
            }
        }
        Command::EqualConst { file, c, on_support } => {
            let (m, negated) = as_max_plus(&load(file)?)?;
            let c = parse_rational(c)?;
            let c = if negated { -c } else { c };
            let v = if *on_support {
                decisions::decide_equal_const_on_support(&m, &c)?
            } else {
                decisions::decide_equal_const(&m, &c, limits)?
            };
            verdict(v, "YES", "NO")
        }
        Command::Equal { max, min } => {
            verdict(decisions::decide_series_equal(&load(max)?, &load(min)?)?, "EQUAL", "NOT EQUAL")
        }
        Command::Leq { max, min } => {
            verdict(decisions::decide_series_leq(&load(max)?, &load(min)?)?, "LEQ", "NOT LEQ")
        }
        Command::Onevalued { max, min, no_check } => {
            match disambiguation::extract_one_valued(&load(max)?, &load(min)?, !no_check) {
                Ok(a) => Outcome::Automaton(a),
                Err(Error::NotEqual { witness }) => Outcome::Fails(format!("NOT EQUAL witness={witness}")),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Disambiguate { file } => Outcome::Automaton(disambiguation::disambiguate(&load(file)?, limits)?),
        Command::Pipeline { max, min, no_check } => {
            match disambiguation::unambiguous_from_pair(&load(max)?, &load(min)?, !no_check, limits) {
                Ok(a) => Outcome::Automaton(a),
                Err(Error::NotEqual { witness }) => Outcome::Fails(format!("NOT EQUAL witness={witness}")),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Oracle(OracleCommand::Compare { a, b, maxlen }) => {
            match oracle::equal_upto(&load(a)?, &load(b)?, *maxlen)? {
                Verdict::Holds => Outcome::Holds(format!("EQUAL UPTO {maxlen}")),
                Verdict::Fails { witness } => Outcome::Fails(format!("DIFFER witness={witness}")),
            }
        }
        Command::Oracle(OracleCommand::Ambiguity { file, maxlen }) => {
            let (count, witness) = oracle::max_ambiguity_upto(&load(file)?, *maxlen)?;
            if count <= 1 {
                Outcome::Holds(format!("UNAMBIGUOUS UPTO {maxlen}"))
            } else {
                Outcome::Fails(format!("AMBIGUOUS paths={count} witness={witness}"))
            }
        }
    })
}

/// Parses `args` (program name first) and runs the subcommand, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let limits = Limits {
        monoid_cap: cli.monoid_cap,
        subset_cap: cli.subset_cap,
    };
    match execute(&cli, &limits) {
        Ok(Outcome::Holds(msg)) => {
            let _ = writeln!(out, "{msg}");
            EXIT_HOLDS
        }
        Ok(Outcome::Fails(msg)) => {
            let _ = writeln!(out, "{msg}");
            EXIT_FAILS
        }
        Ok(Outcome::Automaton(a)) => {
            let text = format::serialize(&a);
            match &cli.output {
                Some(path) => match fs::write(path, text) {
                    Ok(()) => EXIT_HOLDS,
                    Err(e) => {
                        let _ = writeln!(err, "error: {}: {e}", path.display());
                        EXIT_USAGE
                    }
                },
                None => {
                    let _ = write!(out, "{text}");
                    EXIT_HOLDS
                }
            }
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } | Error::BoundExceeded { .. } => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}
