//! Command-line front end: `list`, `dim`, `build`, `verify`, `residues`.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::combinatorics::{
    classify, partitions, residue, CombinatoricsError, EnumMode, Partition, ShapeKind,
};
use crate::export;
use crate::field::{FieldCtx, FieldError};
use crate::sergeev::{self, ModuleType, SergeevError};
use crate::symrep::{self, SymRepError};
use crate::verify::{
    self, cross_check_suite, find_proper_graded_submodule, super_commutant_dim, Checkable,
    DEFAULT_COMMUTANT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_P: i32 = 3;
pub const EXIT_INVALID_SHAPE: i32 = 4;
pub const EXIT_MISSING_OUTPUT: i32 = 5;
pub const EXIT_IO: i32 = 6;

const DEFAULT_SEED: u64 = 0x5eed;
const DEFAULT_TRIALS: usize = 100;
const SUITE_PRIMES: [u32; 3] = [3, 5, 7];
const SUITE_N_MAX: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid p: {0}")]
    InvalidP(#[from] FieldError),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("missing output path: {0} needs --output")]
    MissingOutput(&'static str),
    #[error("missing shape: {0} needs --shape")]
    MissingShape(&'static str),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidP(_) => EXIT_INVALID_P,
            CliError::InvalidShape(_) => EXIT_INVALID_SHAPE,
            CliError::MissingOutput(_) => EXIT_MISSING_OUTPUT,
            CliError::MissingShape(_) | CliError::Verify(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<SymRepError> for CliError {
    fn from(e: SymRepError) -> Self {
        match e {
            SymRepError::Field(f) => CliError::InvalidP(f),
            other => CliError::InvalidShape(other.to_string()),
        }
    }
}

impl From<SergeevError> for CliError {
    fn from(e: SergeevError) -> Self {
        match e {
            SergeevError::Field(f) => CliError::InvalidP(f),
            other => CliError::InvalidShape(other.to_string()),
        }
    }
}

impl From<CombinatoricsError> for CliError {
    fn from(e: CombinatoricsError) -> Self {
        CliError::InvalidShape(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Sym,
    Sergeev,
}

#[derive(Debug, Parser)]
#[command(name = "modrep", version, about = "Completely splittable irreducible modules in characteristic p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "sym")]
    pub algebra: Algebra,
    /// Odd prime characteristic.
    #[arg(long)]
    pub p: u64,
    /// Comma-separated parts, e.g. `4,2,1`.
    #[arg(long)]
    pub shape: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every partition of n (default p) and tabulate dimensions.
    List {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Closed-form dimension of one irreducible.
    Dim {
        #[command(flatten)]
        common: Common,
    },
    /// Construct a representation and write its matrices as JSON.
    Build {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check relations, JM identities, commutant and irreducibility.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Size for the all-shapes mode when no shape is given (default p).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Largest dimension for the commutant solve.
        #[arg(long, default_value_t = DEFAULT_COMMUTANT_CAP)]
        cap: usize,
        /// Also run the classification cross-checks for p in {3,5,7}, n <= 12.
        #[arg(long)]
        suite: bool,
    },
    /// Print the residue-labelled diagram of a shape.
    Residues {
        #[command(flatten)]
        common: Common,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match run(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn field(p: u64) -> Result<FieldCtx, CliError> {
    Ok(FieldCtx::new(p)?)
}

fn shape(common: &Common, verb: &'static str) -> Result<Partition, CliError> {
    let raw = common.shape.as_deref().ok_or(CliError::MissingShape(verb))?;
    raw.parse::<Partition>().map_err(CliError::from)
}

pub fn run(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::List { common, n } => {
            let f = field(common.p)?;
            let n = n.unwrap_or(f.p() as usize);
            out.write_all(list_table(common.algebra, f.p(), n).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Dim { common } => {
            let f = field(common.p)?;
            let lambda = shape(common, "dim")?;
            let d = match common.algebra {
                Algebra::Sym => symrep::dim_d(&lambda, f.p())?,
                Algebra::Sergeev => sergeev::dim_m(&lambda, f.p())?.0,
            };
            writeln!(out, "{d}")?;
            Ok(EXIT_OK)
        }
        Command::Build { common, output } => {
            let f = field(common.p)?;
            let lambda = shape(common, "build")?;
            let path = output.as_ref().ok_or(CliError::MissingOutput("build"))?;
            let doc = match common.algebra {
                Algebra::Sym => export::sym_document(&symrep::build_d(&lambda, f.p())?),
                Algebra::Sergeev => export::sergeev_document(&sergeev::build_v(&lambda, f.p())?),
            };
            export::write_atomic(path, export::render(&doc).as_bytes())?;
            writeln!(out, "wrote {}", path.display())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            common,
            n,
            output,
            seed,
            trials,
            cap,
            suite,
        } => {
            let f = field(common.p)?;
            let opts = VerifyOptions {
                seed: *seed,
                trials: *trials,
                cap: *cap,
            };
            if *trials == 0 {
                return Err(verify::VerifyError::NoTrials.into());
            }
            let shapes = match &common.shape {
                Some(_) => vec![shape(common, "verify")?],
                None => {
                    let n = n.unwrap_or(f.p() as usize);
                    let mode = match common.algebra {
                        Algebra::Sym => EnumMode::All,
                        Algebra::Sergeev => EnumMode::Strict,
                    };
                    partitions(n, mode)
                        .into_iter()
                        .filter(|l| {
                            let c = classify(l, f.p());
                            match common.algebra {
                                Algebra::Sym => c.in_cp,
                                Algebra::Sergeev => c.in_cps,
                            }
                        })
                        .collect()
                }
            };
            let mut results = Vec::new();
            for lambda in &shapes {
                let entry = match common.algebra {
                    Algebra::Sym => verify_one(&symrep::build_d(lambda, f.p())?, None, &opts)?,
                    Algebra::Sergeev => {
                        let rep = sergeev::build_v(lambda, f.p())?;
                        let ty = rep.module_type;
                        verify_one(&rep, Some(ty), &opts)?
                    }
                };
                results.push((lambda.clone(), entry));
            }
            let suite_summary = suite.then(|| cross_check_suite(&SUITE_PRIMES, SUITE_N_MAX));

            let mut all_pass = results.iter().all(|(_, e)| e.pass());
            let mut text = String::new();
            let _ = writeln!(text, "{:<14} {:>5}  {:<9} {:<4} {:<12} {:<9} overall", "shape", "dim", "relations", "jm", "commutant", "submodule");
            for (lambda, e) in &results {
                let _ = writeln!(
                    text,
                    "{:<14} {:>5}  {:<9} {:<4} {:<12} {:<9} {}",
                    lambda.to_string(),
                    e.dim,
                    ok(e.relations.is_empty()),
                    ok(e.jm.is_empty()),
                    e.commutant_label(),
                    if e.submodule_found { "FOUND" } else { "none" },
                    ok(e.pass())
                );
            }
            if let Some(s) = &suite_summary {
                all_pass &= s.all_pass();
                let _ = writeln!(text, "\ncross-check suite: {} records, {}", s.records.len(), ok(s.all_pass()));
                for r in s.failures() {
                    let _ = writeln!(text, "  FAIL {:?} {} {} {}", r.p, r.algebra, r.shape, r.check);
                }
            }
            out.write_all(text.as_bytes())?;

            if let Some(path) = output {
                let doc = json!({
                    "p": f.p(),
                    "algebra": match common.algebra { Algebra::Sym => "sym", Algebra::Sergeev => "sergeev" },
                    "seed": seed,
                    "trials": trials,
                    "pass": all_pass,
                    "results": results.iter().map(|(l, e)| e.to_json(l)).collect::<Vec<_>>(),
                    "suite": suite_summary.as_ref().map(|s| serde_json::to_value(s).expect("serializable")),
                });
                export::write_atomic(path, export::render(&doc).as_bytes())?;
            }
            Ok(if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Residues { common } => {
            let f = field(common.p)?;
            let lambda = shape(common, "residues")?;
            let kind = match common.algebra {
                Algebra::Sym => ShapeKind::Straight,
                Algebra::Sergeev => ShapeKind::Shifted,
            };
            out.write_all(residue_diagram(&lambda, f.p(), kind)?.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

struct VerifyOptions {
    seed: u64,
    trials: usize,
    cap: usize,
}

struct VerifyEntry {
    dim: usize,
    relations: verify::ViolationReport,
    jm: verify::ViolationReport,
    commutant: Option<verify::CommutantResult>,
    expected: verify::CommutantResult,
    submodule_found: bool,
}

impl VerifyEntry {
    fn commutant_ok(&self) -> bool {
        self.commutant.is_none_or(|c| c == self.expected)
    }

    fn pass(&self) -> bool {
        self.relations.is_empty() && self.jm.is_empty() && self.commutant_ok() && !self.submodule_found
    }

    fn commutant_label(&self) -> String {
        match self.commutant {
            Some(c) => format!("({},{}) {}", c.even_dim, c.odd_dim, ok(self.commutant_ok())),
            None => "skipped".into(),
        }
    }

    fn to_json(&self, lambda: &Partition) -> Value {
        json!({
            "shape": lambda.parts(),
            "dim": self.dim,
            "relations": { "pass": self.relations.is_empty(), "violations": self.relations.violations },
            "jm": { "pass": self.jm.is_empty(), "violations": self.jm.violations },
            "commutant": match self.commutant {
                Some(c) => json!({ "pass": self.commutant_ok(), "even_dim": c.even_dim, "odd_dim": c.odd_dim,
                                   "expected": [self.expected.even_dim, self.expected.odd_dim] }),
                None => json!({ "skipped": true }),
            },
            "submodule": { "pass": !self.submodule_found, "found": self.submodule_found },
            "pass": self.pass(),
        })
    }
}

fn verify_one<R: Checkable>(rep: &R, ty: Option<ModuleType>, opts: &VerifyOptions) -> Result<VerifyEntry, CliError> {
    let commutant = match super_commutant_dim(rep, opts.cap) {
        Ok(c) => Some(c),
        Err(verify::VerifyError::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let expected = verify::CommutantResult {
        even_dim: 1,
        odd_dim: usize::from(ty == Some(ModuleType::Q)),
    };
    Ok(VerifyEntry {
        dim: rep.dim(),
        relations: rep.check_relations(),
        jm: rep.check_jm(),
        commutant,
        expected,
        submodule_found: find_proper_graded_submodule(rep, opts.trials, opts.seed)?.is_some(),
    })
}

/// Classification table for every partition (sym) or strict partition
/// (sergeev) of `n`.
pub fn list_table(algebra: Algebra, p: u32, n: usize) -> String {
    let mut s = String::new();
    match algebra {
        Algebra::Sym => {
            let _ = writeln!(s, "{:<16} {:>9} {:>5} {:>5} {:>6} {:>6}", "lambda", "p-regular", "chi", "in_CP", "dim", "rad");
            for lambda in partitions(n, EnumMode::All) {
                let c = classify(&lambda, p);
                let dim = symrep::dim_d(&lambda, p).map_or("-".into(), |d| d.to_string());
                let rad = symrep::radical_dim(&lambda, p).map_or("-".into(), |d| d.to_string());
                let _ = writeln!(
                    s,
                    "{:<16} {:>9} {:>5} {:>5} {:>6} {:>6}",
                    lambda.to_string(),
                    yes(c.p_regular),
                    c.chi,
                    yes(c.in_cp),
                    dim,
                    rad
                );
            }
        }
        Algebra::Sergeev => {
            let _ = writeln!(
                s,
                "{:<16} {:>8} {:>10} {:>5} {:>6} {:>3} {:>6} {:>4}",
                "xi", "p-strict", "restricted", "in_RP", "in_CPs", "b", "dim", "type"
            );
            for xi in partitions(n, EnumMode::Strict) {
                let c = classify(&xi, p);
                let (dim, ty) = match sergeev::dim_m(&xi, p) {
                    Ok((d, t)) => (d.to_string(), t.to_string()),
                    Err(_) => ("-".into(), "-".into()),
                };
                let _ = writeln!(
                    s,
                    "{:<16} {:>8} {:>10} {:>5} {:>6} {:>3} {:>6} {:>4}",
                    xi.to_string(),
                    yes(c.p_strict),
                    yes(c.p_restricted),
                    yes(c.in_rp),
                    yes(c.in_cps),
                    c.b,
                    dim,
                    ty
                );
            }
        }
    }
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One line per row; shifted rows are indented by their starting column.
pub fn residue_diagram(lambda: &Partition, p: u32, kind: ShapeKind) -> Result<String, CliError> {
    if kind == ShapeKind::Shifted && !lambda.is_strict() {
        return Err(CombinatoricsError::NotStrict(lambda.clone()).into());
    }
    let width = (p - 1).to_string().len();
    let mut s = String::new();
    for node_row in 1..=lambda.len() {
        let nodes: Vec<_> = lambda
            .nodes(kind)
            .into_iter()
            .filter(|node| node.row == node_row)
            .collect();
        let indent = match kind {
            ShapeKind::Straight => 0,
            ShapeKind::Shifted => (node_row - 1) * (width + 1),
        };
        let cells: Vec<String> = nodes
            .iter()
            .map(|&node| format!("{:>width$}", residue(node, p, kind)))
            .collect();
        let _ = writeln!(s, "{}{}", " ".repeat(indent), cells.join(" "));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["modrep"];
        full.extend_from_slice(args);
        let code = main_with_args(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dim_examples() {
        assert_eq!(run_args(&["dim", "--algebra", "sym", "--p", "5", "--shape", "4,1"]).1, "3\n");
        assert_eq!(run_args(&["dim", "--algebra", "sergeev", "--p", "5", "--shape", "3,2"]).1, "32\n");
    }

    #[test]
    fn error_codes_are_distinct() {
        let (code, _, err) = run_args(&["build", "--p", "5", "--shape", "1,1,1,1,1", "--output", "/dev/null"]);
        assert_eq!(code, EXIT_INVALID_SHAPE, "{err}");
        assert_eq!(run_args(&["dim", "--p", "4", "--shape", "2,1"]).0, EXIT_INVALID_P);
        assert_eq!(run_args(&["build", "--p", "5", "--shape", "3,2"]).0, EXIT_MISSING_OUTPUT);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn residue_diagrams() {
        let (code, out, _) = run_args(&["residues", "--p", "5", "--shape", "4,1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0 1 2 3\n4\n");
        let (_, out, _) = run_args(&["residues", "--algebra", "sergeev", "--p", "7", "--shape", "5,2,1"]);
        assert_eq!(out, "0 1 2 3 2\n  0 1\n    0\n");
    }

    #[test]
    fn list_marks_excluded_shapes() {
        let table = list_table(Algebra::Sym, 5, 5);
        let last = table.lines().last().unwrap();
        assert!(last.starts_with("(1,1,1,1,1)") && last.contains(" no "), "{last}");
    }

    #[test]
    fn verify_passes_and_reports() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let p = path.to_str().unwrap();
        let (code, out, _) = run_args(&["verify", "--algebra", "sergeev", "--p", "5", "--trials", "10", "--output", p]);
        assert_eq!(code, 0, "{out}");
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(doc["pass"], true);
        assert_eq!(doc["results"].as_array().unwrap().len(), 2);
    }
}
