//! Command-line front end: reads a recurrence, runs the decision procedure
//! and prints a report.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use lrspos::decide::{decide_positivity, decide_ultimate_positivity, verify_certificate, Config, Decision, Verdict};
use lrspos::lrs::{from_matrix, Lrs};
use lrspos::matrix::Matrix;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed document at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{0}")]
    Schema(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("zero trailing coefficient")]
    ZeroTrailing,
}

/// One of the three accepted document shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ProblemInput {
    Recurrence {
        #[serde(with = "strings")]
        recurrence: Vec<BigInt>,
        #[serde(with = "strings")]
        initial: Vec<BigInt>,
    },
    Rational {
        #[serde(with = "strings")]
        recurrence: Vec<BigRational>,
        #[serde(with = "strings")]
        initial: Vec<BigRational>,
    },
    Matrix {
        #[serde(with = "string_rows")]
        matrix: Vec<Vec<BigInt>>,
        #[serde(with = "strings")]
        v: Vec<BigInt>,
        #[serde(with = "strings")]
        w: Vec<BigInt>,
    },
}

mod strings {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

mod string_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| r.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

fn schema(msg: impl Into<String>) -> InputError {
    InputError::Schema(msg.into())
}

/// A number given as `"12"`, `"3/2"` or `["3", "2"]`.
fn number(v: &Value, what: &str) -> Result<BigRational, InputError> {
    let int = |s: &str| -> Result<BigInt, InputError> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| schema(format!("{what}: not an integer: {s:?}")))
    };
    let ratio = |n: BigInt, d: BigInt| -> Result<BigRational, InputError> {
        if d.is_zero() {
            return Err(schema(format!("{what}: zero denominator")));
        }
        Ok(BigRational::new(n, d))
    };
    match v {
        Value::String(s) => match s.split_once('/') {
            Some((n, d)) => ratio(int(n)?, int(d)?),
            None => Ok(BigRational::from_integer(int(s)?)),
        },
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(BigRational::from_integer(int(&n.to_string())?)),
        Value::Array(p) if p.len() == 2 => {
            let part = |x: &Value| match x {
                Value::String(s) => int(s),
                Value::Number(n) if n.is_i64() || n.is_u64() => int(&n.to_string()),
                _ => Err(schema(format!("{what}: bad numerator/denominator pair"))),
            };
            ratio(part(&p[0])?, part(&p[1])?)
        }
        _ => Err(schema(format!("{what}: expected a decimal string"))),
    }
}

fn list(doc: &Value, key: &str) -> Result<Vec<BigRational>, InputError> {
    let arr = doc
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| schema(format!("missing list {key:?}")))?;
    arr.iter().map(|x| number(x, key)).collect()
}

fn integers(v: Vec<BigRational>, key: &str) -> Result<Vec<BigInt>, InputError> {
    v.into_iter()
        .map(|q| {
            q.is_integer()
                .then(|| q.to_integer())
                .ok_or_else(|| schema(format!("{key}: expected integers")))
        })
        .collect()
}

pub fn parse_input(text: &str) -> Result<ProblemInput, InputError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    if !doc.is_object() {
        return Err(schema("expected an object"));
    }
    if let Some(rows) = doc.get("matrix") {
        let rows = rows.as_array().ok_or_else(|| schema("matrix: expected rows"))?;
        let matrix = rows
            .iter()
            .map(|r| {
                let r = r.as_array().ok_or_else(|| schema("matrix: expected rows"))?;
                integers(r.iter().map(|x| number(x, "matrix")).collect::<Result<_, _>>()?, "matrix")
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v = integers(list(&doc, "v")?, "v")?;
        let w = integers(list(&doc, "w")?, "w")?;
        let d = matrix.len();
        if d == 0 || matrix.iter().any(|r| r.len() != d) || v.len() != d || w.len() != d {
            return Err(InputError::LengthMismatch("matrix must be square and match v, w".into()));
        }
        return Ok(ProblemInput::Matrix { matrix, v, w });
    }
    let recurrence = list(&doc, "recurrence")?;
    let initial = list(&doc, "initial")?;
    if recurrence.is_empty() || recurrence.len() != initial.len() {
        return Err(InputError::LengthMismatch(format!(
            "{} recurrence coefficients, {} initial terms",
            recurrence.len(),
            initial.len()
        )));
    }
    if recurrence.last().is_some_and(Zero::is_zero) {
        return Err(InputError::ZeroTrailing);
    }
    if recurrence.iter().chain(&initial).all(BigRational::is_integer) {
        Ok(ProblemInput::Recurrence {
            recurrence: integers(recurrence, "recurrence")?,
            initial: integers(initial, "initial")?,
        })
    } else {
        Ok(ProblemInput::Rational { recurrence, initial })
    }
}

/// How the input was turned into an integer recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conversion {
    None,
    /// `v_n = l^(n+1) u_n`.
    Scaled {
        #[serde(with = "lrspos::serde_util::bigint")]
        l: BigInt,
    },
    /// Terms `v^T M^n w`; the recurrence describes them from `offset` on.
    Matrix {
        offset: usize,
        #[serde(with = "lrspos::serde_util::bigint_vec")]
        prefix: Vec<BigInt>,
    },
}

/// Integer recurrence equivalent (for the sign pattern) to the input.
pub fn to_lrs(input: &ProblemInput) -> Result<(Lrs, Conversion), InputError> {
    match input {
        ProblemInput::Recurrence { recurrence, initial } => Lrs::new(recurrence.clone(), initial.clone())
            .map(|s| (s, Conversion::None))
            .map_err(|e| schema(e.to_string())),
        ProblemInput::Rational { recurrence, initial } => {
            let l = recurrence
                .iter()
                .chain(initial)
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let lq = BigRational::from_integer(l.clone());
            let mut pw = lq.clone();
            let mut b = Vec::new();
            for c in recurrence {
                b.push((c * &pw).to_integer());
                pw = &pw * &lq;
            }
            let mut u = Vec::new();
            let mut pw = lq.clone();
            for x in initial {
                let v = x * &pw;
                debug_assert!(v.is_integer());
                u.push(v.to_integer());
                pw = &pw * &lq;
            }
            Lrs::new(b, u)
                .map(|s| (s, Conversion::Scaled { l }))
                .map_err(|e| schema(e.to_string()))
        }
        ProblemInput::Matrix { matrix, v, w } => {
            let m = Matrix::from_rows(matrix.clone());
            let ml = from_matrix(&m, v, w).map_err(|e| schema(e.to_string()))?;
            let prefix = (0..ml.offset)
                .map(|n| {
                    let mw = m.pow(n as u64).mul_vec(w);
                    v.iter().zip(&mw).map(|(a, b)| a * b).sum()
                })
                .collect();
            Ok((
                ml.lrs,
                Conversion::Matrix {
                    offset: ml.offset,
                    prefix,
                },
            ))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Decide,
    Ultimate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timings {
    pub analysis_ms: f64,
    pub verify_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: Command,
    pub config: Config,
    pub input: ProblemInput,
    pub conversion: Conversion,
    pub verdict: Verdict,
    /// Index into the input sequence.
    pub witness: Option<u64>,
    pub decision: Decision,
    pub verified: Option<bool>,
    pub timings: Timings,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verdict: {:?}\n", self.verdict);
        if let Some(w) = self.witness {
            out += &format!("witness: {w}\n");
        }
        let c = &self.decision.certificate;
        if let Some(t) = &c.threshold {
            out += &format!("threshold: {t}\n");
        }
        out += &format!("checked below: {}\n", c.checked_below);
        if let Conversion::Scaled { l } = &self.conversion {
            out += &format!("scaled by {l}^(n+1)\n");
        }
        if c.modulus > 1 {
            out += &format!("subsequences: {}\n", c.modulus);
        }
        for p in &c.parts {
            out += &format!("  r = {}: {:?}", p.residue, p.status);
            if let Some(t) = &p.threshold {
                out += &format!(", from index {t}");
            }
            if let Some(n) = &p.note {
                out += &format!(" ({n})");
            }
            out += "\n";
        }
        for n in &c.notes {
            out += &format!("note: {n}\n");
        }
        if let Some(v) = self.verified {
            out += &format!("verified: {v}\n");
        }
        out
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdict)
    }
}

pub fn exit_code(v: Verdict) -> i32 {
    match v.holds() {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    }
}

/// Applies the conversion back to a decision on the converted sequence.
fn lift(decision: Decision, conv: &Conversion, cmd: Command) -> Decision {
    let Conversion::Matrix { offset, prefix } = conv else {
        return decision;
    };
    let mut d = decision;
    if cmd == Command::Decide {
        if let Some(i) = prefix.iter().position(Signed::is_negative) {
            d.verdict = Verdict::NotPositive;
            d.witness = Some(i as u64);
            d.certificate.notes.push("negative term before the recurrence takes over".into());
            return d;
        }
    }
    d.witness = d.witness.map(|w| w + *offset as u64);
    if *offset > 0 {
        d.certificate.notes.push(format!("indices shifted by {offset}"));
    }
    d
}

pub fn run_problem(input: ProblemInput, cmd: Command, cfg: &Config, verify: bool) -> Result<Report, String> {
    let (s, conversion) = to_lrs(&input).map_err(|e| e.to_string())?;
    let t0 = Instant::now();
    let decision = match cmd {
        Command::Decide => decide_positivity(&s, cfg),
        Command::Ultimate => decide_ultimate_positivity(&s, cfg),
    }
    .map_err(|e| e.to_string())?;
    let analysis_ms = t0.elapsed().as_secs_f64() * 1e3;
    let (verified, verify_ms) = if verify {
        let t1 = Instant::now();
        let ok = verify_certificate(&s, &decision);
        (Some(ok), Some(t1.elapsed().as_secs_f64() * 1e3))
    } else {
        (None, None)
    };
    let decision = lift(decision, &conversion, cmd);
    Ok(Report {
        version: VERSION.to_string(),
        command: cmd,
        config: cfg.clone(),
        input,
        conversion,
        verdict: decision.verdict,
        witness: decision.witness,
        decision,
        verified,
        timings: Timings { analysis_ms, verify_ms },
    })
}

#[derive(Parser, Debug)]
#[command(name = "lrspos", version, about = "Positivity of linear recurrence sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(clap::Args, Debug)]
struct Opts {
    /// Input document; `-` or omitted reads standard input.
    file: Option<String>,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 256)]
    precision: u32,
    #[arg(long = "lattice-bound", default_value_t = 1000)]
    lattice_bound: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Re-check the certificate.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Decide positivity (every term non-negative).
    Decide(Opts),
    /// Decide ultimate positivity.
    Ultimate(Opts),
}

/// Output of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let fail = |msg: String| Outcome {
        code: 3,
        stdout: String::new(),
        stderr: msg,
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            return Outcome {
                code,
                stdout: if code == 0 { e.to_string() } else { String::new() },
                stderr: if code == 0 { String::new() } else { e.render().to_string() },
            };
        }
    };
    let (cmd, o) = match cli.cmd {
        Sub::Decide(o) => (Command::Decide, o),
        Sub::Ultimate(o) => (Command::Ultimate, o),
    };
    let text = match o.file.as_deref() {
        None | Some("-") => stdin(),
        Some(p) => std::fs::read_to_string(p),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read input: {e}\n")),
    };
    let input = match parse_input(&text) {
        Ok(i) => i,
        Err(e) => return fail(format!("{e}\n")),
    };
    let cfg = Config {
        budget: o.budget,
        precision: o.precision,
        lattice_bound: o.lattice_bound,
    };
    match run_problem(input, cmd, &cfg, o.verify) {
        Ok(r) => Outcome {
            code: if r.verified == Some(false) { 2 } else { r.exit_code() },
            stdout: match o.format {
                Format::Json => r.to_json() + "\n",
                Format::Text => r.to_text(),
            },
            stderr: if r.verified == Some(false) {
                "certificate verification failed\n".into()
            } else {
                String::new()
            },
        },
        Err(e) => fail(format!("{e}\n")),
    }
}
