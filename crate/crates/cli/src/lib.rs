//! Front end for the `nichols` command: job parsing, command execution,
//! reports and the stage cache.

pub mod cache;
pub mod job;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use nichols::oracle::{compare, nichols_truncation};
use nichols::{BraidedSpace, Error, Field};

use cache::{drive, Cache};
use job::{is_validation_failure, JobSpec, Space};
use report::{CheckJson, PrimitivesJson, RankJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_STABILIZED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub witness: Option<[usize; 3]>,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
            witness: None,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
            witness: None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let witness = match e {
            Error::YangBaxterViolation { witness: (a, b, c) } => Some([a, b, c]),
            _ => None,
        };
        CliError {
            code: if is_validation_failure(&e) {
                EXIT_VALIDATION
            } else {
                EXIT_PARSE
            },
            message: e.to_string(),
            witness,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Rank,
    Nichols,
    Primitives { stage: usize, degree: usize },
}

/// Command-line overrides of the job document.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub cutoff: Option<usize>,
    pub max_iter: Option<usize>,
    pub oracle: bool,
    pub cache: Option<PathBuf>,
    pub json: bool,
}

/// What the process prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn failed(e: CliError) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.code,
        }
    }
}

struct Params {
    cutoff: usize,
    max_iter: usize,
    oracle: bool,
    cache: Option<Cache>,
    json: bool,
}

impl Params {
    fn resolve(spec: &JobSpec, opts: &Options) -> Result<Self, CliError> {
        let cutoff = opts
            .cutoff
            .or(spec.degree_cutoff)
            .ok_or_else(|| CliError::parse("no degree cutoff given"))?;
        if cutoff == 0 || cutoff > nichols::braiding::MAX_DEGREE {
            return Err(CliError::parse(format!(
                "degree cutoff {cutoff} outside 1..={}",
                nichols::braiding::MAX_DEGREE
            )));
        }
        Ok(Params {
            cutoff,
            max_iter: opts.max_iter.or(spec.max_iter).unwrap_or(cutoff),
            oracle: opts.oracle || spec.oracle,
            cache: opts.cache.clone().map(Cache::new),
            json: opts.json,
        })
    }
}

/// Runs one command on the text of a job document.
pub fn execute(command: Command, input: &str, opts: &Options) -> Outcome {
    let spec = match JobSpec::parse(input) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(e),
    };
    if command == Command::Check {
        return check(&spec, opts.json);
    }
    let result = Params::resolve(&spec, opts).and_then(|params| {
        let header = format!(
            "field {}, dimension {}, cutoff {}",
            spec.field_spec(),
            spec.dimension,
            params.cutoff
        );
        match spec.build()? {
            Space::Rational(b) => dispatch(command, &b, &params, &header),
            Space::Modular(b) => dispatch(command, &b, &params, &header),
        }
    });
    result.unwrap_or_else(Outcome::failed)
}

fn check(spec: &JobSpec, json: bool) -> Outcome {
    match spec.build() {
        Ok(_) => {
            let stdout = if json {
                report::to_json(&CheckJson {
                    valid: true,
                    witness: None,
                    error: None,
                })
            } else {
                format!(
                    "valid braiding: dimension {} over {}\n",
                    spec.dimension,
                    spec.field_spec()
                )
            };
            Outcome::ok(stdout)
        }
        Err(e) if e.code == EXIT_VALIDATION => {
            let stdout = if json {
                report::to_json(&CheckJson {
                    valid: false,
                    witness: e.witness,
                    error: Some(e.message.clone()),
                })
            } else {
                match e.witness {
                    Some([a, b, c]) => format!("invalid braiding: witness triple ({a}, {b}, {c})\n"),
                    None => "invalid braiding\n".to_string(),
                }
            };
            Outcome {
                stdout,
                stderr: format!("error: {e}\n"),
                code: e.code,
            }
        }
        Err(e) => Outcome::failed(e),
    }
}

fn dispatch<F: Field>(
    command: Command,
    space: &BraidedSpace<F>,
    p: &Params,
    header: &str,
) -> Result<Outcome, CliError> {
    match command {
        Command::Check => unreachable!("handled before building the space"),
        Command::Rank => rank(space, p, header),
        Command::Nichols => nichols(space, p, header),
        Command::Primitives { stage, degree } => primitives(space, p, stage, degree),
    }
}

fn rank<F: Field>(space: &BraidedSpace<F>, p: &Params, header: &str) -> Result<Outcome, CliError> {
    let mut r = drive(space, p.cutoff, p.max_iter, p.cache.as_ref())?;
    if p.oracle && r.stabilized {
        r.oracle_match = Some(compare(&r.final_quotient, &nichols_truncation(space, p.cutoff)?)?);
    }
    let json = RankJson::new(&r);
    let stdout = if p.json {
        report::to_json(&json)
    } else {
        report::render_rank(&json, header, p.cutoff)
    };
    Ok(finish(stdout, &json))
}

fn nichols<F: Field>(space: &BraidedSpace<F>, p: &Params, header: &str) -> Result<Outcome, CliError> {
    let oracle = nichols_truncation(space, p.cutoff)?;
    let mut r = drive(space, p.cutoff, p.max_iter, p.cache.as_ref())?;
    r.oracle_match = Some(compare(&r.final_quotient, &oracle)?);
    let json = RankJson::new(&r);
    let stdout = if p.json {
        report::to_json(&json)
    } else {
        report::render_nichols(&json, &oracle.hilbert_series(), header, p.cutoff)
    };
    Ok(finish(stdout, &json))
}

fn finish(stdout: String, json: &RankJson) -> Outcome {
    let (code, stderr) = if !json.stabilized {
        (
            EXIT_NOT_STABILIZED,
            "not stabilized within the iteration limit\n".to_string(),
        )
    } else if json.oracle_match == Some(false) {
        (
            EXIT_VALIDATION,
            "stabilized tower differs from the symmetrizer oracle\n".to_string(),
        )
    } else {
        (EXIT_OK, String::new())
    };
    Outcome { stdout, stderr, code }
}

fn primitives<F: Field>(space: &BraidedSpace<F>, p: &Params, stage: usize, degree: usize) -> Result<Outcome, CliError> {
    if stage > p.max_iter {
        return Err(CliError::parse(format!(
            "stage {stage} exceeds max_iter {}",
            p.max_iter
        )));
    }
    if degree == 0 || degree > p.cutoff {
        return Err(CliError::parse(format!("degree {degree} outside 1..={}", p.cutoff)));
    }
    let r = drive(space, p.cutoff, stage, p.cache.as_ref())?;
    let quotient = r.stage_quotients.get(stage).unwrap_or(&r.final_quotient);
    let found = quotient.primitives(degree)?;
    let json = PrimitivesJson::new(stage, degree, space.dim(), &found.subspace);
    let stdout = if p.json {
        report::to_json(&json)
    } else {
        report::render_primitives(&json)
    };
    Ok(Outcome::ok(stdout))
}
