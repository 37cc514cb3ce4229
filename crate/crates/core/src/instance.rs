//! Job-shop instances and their text formats.
//!
//! Two formats are understood:
//!
//! * OR-Library: a header `n m`, then `n` lines of exactly `2m` integers,
//!   alternating 0-based machine index and duration.
//! * Extended: a header `n m`, then `n` lines `L machine dur machine dur ...`
//!   with `2L` tokens after `L`. Routes may have any length and revisit a
//!   machine. Durations may carry up to two decimals; if any does, every
//!   duration is stored in centiunits and the instance scale is 100.
//!
//! Blank lines and lines whose first non-blank character is `#` are ignored
//! in both formats.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Internal integer time unit. Display units are `time / scale`.
pub type Time = u64;

/// Scale used by the extended format when decimal durations are present.
pub const DECIMAL_SCALE: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperationSpec {
    pub machine: usize,
    pub duration: Time,
}

impl OperationSpec {
    pub fn new(machine: usize, duration: Time) -> Self {
        Self { machine, duration }
    }
}

/// A technological route: operations must run in this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Job {
    pub ops: Vec<OperationSpec>,
}

impl Job {
    pub fn new(ops: Vec<OperationSpec>) -> Self {
        Self { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn total_duration(&self) -> Time {
        self.ops.iter().map(|op| op.duration).sum()
    }
}

impl From<&[(usize, Time)]> for Job {
    fn from(ops: &[(usize, Time)]) -> Self {
        Job::new(ops.iter().map(|&(m, d)| OperationSpec::new(m, d)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("an instance needs at least one job")]
    NoJobs,
    #[error("an instance needs at least one machine")]
    NoMachines,
    #[error("job {job} has no operations")]
    EmptyJob { job: usize },
    #[error("job {job} operation {op} uses machine {machine}, but there are only {machines}")]
    MachineOutOfRange {
        job: usize,
        op: usize,
        machine: usize,
        machines: usize,
    },
    #[error("scale must be a positive power of ten, got {0}")]
    BadScale(u32),
}

/// An immutable job-shop instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    name: String,
    machines: usize,
    jobs: Vec<Job>,
    scale: u32,
}

impl Instance {
    pub fn new(name: impl Into<String>, machines: usize, jobs: Vec<Job>) -> Result<Self, InstanceError> {
        if jobs.is_empty() {
            return Err(InstanceError::NoJobs);
        }
        if machines == 0 {
            return Err(InstanceError::NoMachines);
        }
        for (j, job) in jobs.iter().enumerate() {
            if job.is_empty() {
                return Err(InstanceError::EmptyJob { job: j });
            }
            if let Some((op, spec)) = job.ops.iter().enumerate().find(|(_, s)| s.machine >= machines) {
                return Err(InstanceError::MachineOutOfRange {
                    job: j,
                    op,
                    machine: spec.machine,
                    machines,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            machines,
            jobs,
            scale: 1,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Sets the number of internal units per display unit.
    pub fn with_scale(mut self, scale: u32) -> Result<Self, InstanceError> {
        if decimal_digits(scale).is_none() {
            return Err(InstanceError::BadScale(scale));
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of jobs.
    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    /// Number of machines.
    pub fn m(&self) -> usize {
        self.machines
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, j: usize) -> &Job {
        &self.jobs[j]
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn total_ops(&self) -> usize {
        self.jobs.iter().map(Job::len).sum()
    }

    /// Longest route length (`l_max`).
    pub fn max_ops_per_job(&self) -> usize {
        self.jobs.iter().map(Job::len).max().unwrap_or(0)
    }

    /// Equality ignoring the name.
    pub fn structurally_eq(&self, other: &Instance) -> bool {
        self.machines == other.machines && self.scale == other.scale && self.jobs == other.jobs
    }

    /// Total processing time routed to each machine.
    pub fn machine_loads(&self) -> Vec<Time> {
        let mut loads = vec![0; self.machines];
        for op in self.jobs.iter().flat_map(|j| &j.ops) {
            loads[op.machine] += op.duration;
        }
        loads
    }

    /// Converts internal units to display units.
    pub fn to_display(&self, t: Time) -> f64 {
        t as f64 / f64::from(self.scale)
    }

    /// Serializes to the extended format. Parsing the result with
    /// [`parse_extended`] yields a structurally equal instance.
    pub fn to_extended(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(out, "# {}", self.name);
        }
        self.write_extended_body(&mut out);
        out
    }

    pub(crate) fn write_extended_body(&self, out: &mut String) {
        let _ = writeln!(out, "{} {}", self.n(), self.m());
        for job in &self.jobs {
            let _ = write!(out, "{}", job.len());
            for op in &job.ops {
                let _ = write!(out, " {} {}", op.machine, format_time(op.duration, self.scale));
            }
            out.push('\n');
        }
    }
}

/// Machine-load / job-length lower bound on the makespan.
pub fn lower_bound(inst: &Instance) -> Time {
    let machine = inst.machine_loads().into_iter().max().unwrap_or(0);
    let job = inst.jobs().iter().map(Job::total_duration).max().unwrap_or(0);
    machine.max(job)
}

fn decimal_digits(scale: u32) -> Option<usize> {
    let mut s = scale;
    let mut digits = 0;
    while s > 1 && s.is_multiple_of(10) {
        s /= 10;
        digits += 1;
    }
    (s == 1).then_some(digits)
}

/// Formats an internal time in display units with exactly as many decimals
/// as the scale implies.
pub fn format_time(t: Time, scale: u32) -> String {
    match decimal_digits(scale) {
        Some(0) | None => t.to_string(),
        Some(digits) => {
            let scale = u64::from(scale);
            format!("{}.{:0width$}", t / scale, t % scale, width = digits)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no header line found")]
    MissingHeader,
    #[error("line {line}: malformed header, expected two positive integers \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: expected {expected} tokens, found {found}")]
    WrongTokenCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid number {token:?}")]
    InvalidNumber { line: usize, token: String },
    #[error("line {line}: machine index {machine} out of range [0, {machines})")]
    MachineOutOfRange {
        line: usize,
        machine: i64,
        machines: usize,
    },
    #[error("line {line}: negative duration {duration}")]
    NegativeDuration { line: usize, duration: String },
    #[error("line {line}: bad operation count: {detail}")]
    BadOpCount { line: usize, detail: String },
    #[error("expected {expected} job lines, found {found}")]
    MissingJobs { expected: usize, found: usize },
    #[error("line {line}: unexpected data after the last job")]
    TrailingData { line: usize },
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::MalformedHeader { line }
            | ParseError::WrongTokenCount { line, .. }
            | ParseError::InvalidNumber { line, .. }
            | ParseError::MachineOutOfRange { line, .. }
            | ParseError::NegativeDuration { line, .. }
            | ParseError::BadOpCount { line, .. }
            | ParseError::TrailingData { line } => Some(*line),
            _ => None,
        }
    }
}

/// Non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn parse_header(line: usize, tokens: &[&str]) -> Result<(usize, usize), ParseError> {
    let bad = || ParseError::MalformedHeader { line };
    if tokens.len() != 2 {
        return Err(bad());
    }
    let n: usize = tokens[0].parse().map_err(|_| bad())?;
    let m: usize = tokens[1].parse().map_err(|_| bad())?;
    if n == 0 || m == 0 {
        return Err(bad());
    }
    Ok((n, m))
}

fn parse_machine(line: usize, token: &str, machines: usize) -> Result<usize, ParseError> {
    let value: i64 = token.parse().map_err(|_| ParseError::InvalidNumber {
        line,
        token: token.to_string(),
    })?;
    if value < 0 || value as u64 >= machines as u64 {
        return Err(ParseError::MachineOutOfRange {
            line,
            machine: value,
            machines,
        });
    }
    Ok(value as usize)
}

fn parse_integer_duration(line: usize, token: &str) -> Result<Time, ParseError> {
    let value: i64 = token.parse().map_err(|_| ParseError::InvalidNumber {
        line,
        token: token.to_string(),
    })?;
    if value < 0 {
        return Err(ParseError::NegativeDuration {
            line,
            duration: token.to_string(),
        });
    }
    Ok(value as Time)
}

/// Parses a duration with at most two decimals into centiunits. The flag
/// reports whether the token was written with a decimal point.
fn parse_decimal_duration(line: usize, token: &str) -> Result<(Time, bool), ParseError> {
    let invalid = || ParseError::InvalidNumber {
        line,
        token: token.to_string(),
    };
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    let (int_part, frac_part, dotted) = match body.split_once('.') {
        Some((i, f)) => (i, f, true),
        None => (body, "", false),
    };
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty())
        || !digits_ok(int_part)
        || !digits_ok(frac_part)
        || frac_part.len() > 2
    {
        return Err(invalid());
    }
    let whole: Time = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| invalid())?
    };
    let frac: Time = match frac_part.len() {
        0 => 0,
        1 => frac_part.parse::<Time>().map_err(|_| invalid())? * 10,
        _ => frac_part.parse().map_err(|_| invalid())?,
    };
    let centi = whole
        .checked_mul(Time::from(DECIMAL_SCALE))
        .and_then(|w| w.checked_add(frac))
        .ok_or_else(invalid)?;
    if negative && centi > 0 {
        return Err(ParseError::NegativeDuration {
            line,
            duration: token.to_string(),
        });
    }
    Ok((centi, dotted))
}

/// Parses an OR-Library job-shop file.
pub fn parse_orlib(text: &str) -> Result<Instance, ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_header(header_line, &header)?;

    let mut jobs = Vec::with_capacity(n);
    for (line, tokens) in lines.by_ref().take(n) {
        if tokens.len() != 2 * m {
            return Err(ParseError::WrongTokenCount {
                line,
                expected: 2 * m,
                found: tokens.len(),
            });
        }
        let ops = tokens
            .chunks_exact(2)
            .map(|pair| {
                Ok(OperationSpec::new(
                    parse_machine(line, pair[0], m)?,
                    parse_integer_duration(line, pair[1])?,
                ))
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        jobs.push(Job::new(ops));
    }
    if jobs.len() < n {
        return Err(ParseError::MissingJobs {
            expected: n,
            found: jobs.len(),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::TrailingData { line });
    }
    Ok(Instance::new("", m, jobs)?)
}

/// Parses the extended variable-length format.
pub fn parse_extended(text: &str) -> Result<Instance, ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_header(header_line, &header)?;

    // Durations are kept in centiunits until we know whether any was decimal.
    let mut raw: Vec<Vec<(usize, Time)>> = Vec::with_capacity(n);
    let mut any_decimal = false;
    for (line, tokens) in lines.by_ref().take(n) {
        let count: i64 = tokens[0].parse().map_err(|_| ParseError::BadOpCount {
            line,
            detail: format!("{:?} is not an integer", tokens[0]),
        })?;
        if count <= 0 {
            return Err(ParseError::BadOpCount {
                line,
                detail: format!("operation count {count} must be positive"),
            });
        }
        let rest = &tokens[1..];
        if rest.len() as u64 != 2 * count as u64 {
            return Err(ParseError::BadOpCount {
                line,
                detail: format!("{count} operations need {} tokens, found {}", 2 * count, rest.len()),
            });
        }
        let mut ops = Vec::with_capacity(count as usize);
        for pair in rest.chunks_exact(2) {
            let machine = parse_machine(line, pair[0], m)?;
            let (centi, dotted) = parse_decimal_duration(line, pair[1])?;
            any_decimal |= dotted;
            ops.push((machine, centi));
        }
        raw.push(ops);
    }
    if raw.len() < n {
        return Err(ParseError::MissingJobs {
            expected: n,
            found: raw.len(),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::TrailingData { line });
    }

    let divisor = if any_decimal { 1 } else { Time::from(DECIMAL_SCALE) };
    let jobs = raw
        .into_iter()
        .map(|ops| Job::new(ops.into_iter().map(|(mc, d)| OperationSpec::new(mc, d / divisor)).collect()))
        .collect();
    let inst = Instance::new("", m, jobs)?;
    Ok(if any_decimal {
        inst.with_scale(DECIMAL_SCALE)?
    } else {
        inst
    })
}

/// Instance file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    OrLib,
    Extended,
    /// OR-Library job lines hold an even number of tokens, extended ones an
    /// odd number; the first job line decides.
    #[default]
    Auto,
}

impl Format {
    pub fn detect(text: &str) -> Format {
        match data_lines(text).nth(1) {
            Some((_, tokens)) if tokens.len() % 2 == 1 => Format::Extended,
            _ => Format::OrLib,
        }
    }
}

pub fn parse(text: &str, format: Format) -> Result<Instance, ParseError> {
    match format {
        Format::OrLib => parse_orlib(text),
        Format::Extended => parse_extended(text),
        Format::Auto => parse(text, Format::detect(text)),
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
}

/// Reads an instance file, naming the instance after the file stem.
pub fn read_instance(path: &Path, format: Format) -> Result<Instance, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse(&text, format)
        .map(|inst| inst.with_name(name))
        .map_err(|source| LoadError::Parse {
            path: path.display().to_string(),
            source,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_orlib() {
        let inst = parse_orlib("1 1\n0 5\n").unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.m(), 1);
        assert_eq!(inst.job(0).ops, vec![OperationSpec::new(0, 5)]);
        assert_eq!(inst.scale(), 1);
    }

    #[test]
    fn orlib_skips_comments_and_blanks() {
        let inst = parse_orlib("# a comment\n\n   # indented comment\n2 1\n0 3\n\n0 4\n").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.total_ops(), 2);
    }

    #[test]
    fn orlib_errors() {
        assert_eq!(parse_orlib(""), Err(ParseError::MissingHeader));
        assert_eq!(parse_orlib("2\n"), Err(ParseError::MalformedHeader { line: 1 }));
        assert_eq!(parse_orlib("0 2\n"), Err(ParseError::MalformedHeader { line: 1 }));
        assert_eq!(parse_orlib("x 2\n"), Err(ParseError::MalformedHeader { line: 1 }));
        assert_eq!(
            parse_orlib("1 2\n0 1 1\n"),
            Err(ParseError::WrongTokenCount {
                line: 2,
                expected: 4,
                found: 3
            })
        );
        assert_eq!(
            parse_orlib("1 2\n0 1 2 1\n"),
            Err(ParseError::MachineOutOfRange {
                line: 2,
                machine: 2,
                machines: 2
            })
        );
        assert_eq!(
            parse_orlib("1 2\n0 1 -1 1\n"),
            Err(ParseError::MachineOutOfRange {
                line: 2,
                machine: -1,
                machines: 2
            })
        );
        assert_eq!(
            parse_orlib("1 2\n0 1 1 -4\n"),
            Err(ParseError::NegativeDuration {
                line: 2,
                duration: "-4".into()
            })
        );
        assert_eq!(
            parse_orlib("2 1\n0 1\n"),
            Err(ParseError::MissingJobs { expected: 2, found: 1 })
        );
        assert_eq!(parse_orlib("1 1\n0 1\n0 2\n"), Err(ParseError::TrailingData { line: 3 }));
        assert!(matches!(
            parse_orlib("1 1\n0 1.5\n"),
            Err(ParseError::InvalidNumber { line: 2, .. })
        ));
    }

    #[test]
    fn extended_recirculation() {
        let inst = parse_extended("1 1\n2 0 3 0 4\n").unwrap();
        assert_eq!(inst.job(0).ops, vec![OperationSpec::new(0, 3), OperationSpec::new(0, 4)]);
        assert_eq!(inst.scale(), 1);
    }

    #[test]
    fn extended_decimal_scaling() {
        let inst = parse_extended("1 2\n2 0 1.50 1 2.25\n").unwrap();
        assert_eq!(inst.scale(), 100);
        assert_eq!(inst.job(0).ops, vec![OperationSpec::new(0, 150), OperationSpec::new(1, 225)]);
        // One decimal token switches the whole instance to centiunits.
        let mixed = parse_extended("2 1\n1 0 3\n1 0 0.5\n").unwrap();
        assert_eq!(mixed.scale(), 100);
        assert_eq!(mixed.job(0).ops[0].duration, 300);
        assert_eq!(mixed.job(1).ops[0].duration, 50);
    }

    #[test]
    fn extended_errors() {
        assert!(matches!(parse_extended("1 1\n0\n"), Err(ParseError::BadOpCount { line: 2, .. })));
        assert!(matches!(parse_extended("1 1\n-1 0 3\n"), Err(ParseError::BadOpCount { .. })));
        assert!(matches!(parse_extended("1 1\n2 0 3\n"), Err(ParseError::BadOpCount { .. })));
        assert!(matches!(parse_extended("1 1\nx 0 3\n"), Err(ParseError::BadOpCount { .. })));
        assert!(matches!(
            parse_extended("1 1\n1 0 1.234\n"),
            Err(ParseError::InvalidNumber { .. })
        ));
        assert!(matches!(
            parse_extended("1 1\n1 0 -0.5\n"),
            Err(ParseError::NegativeDuration { .. })
        ));
        assert!(matches!(
            parse_extended("1 1\n1 3 1\n"),
            Err(ParseError::MachineOutOfRange { machine: 3, .. })
        ));
        assert_eq!(parse_extended("2 1\n1 0 1\n").unwrap_err().line(), None);
    }

    #[test]
    fn extended_sk_shaped_route() {
        let mut text = String::from("3 6\n");
        let long: Vec<String> = (0..23).map(|i| format!("{} {}.{:02}", i % 6, i + 1, i * 3 % 100)).collect();
        text.push_str(&format!("23 {}\n", long.join(" ")));
        text.push_str("2 0 1.5 1 2\n");
        text.push_str("1 5 10\n");
        let inst = parse_extended(&text).unwrap();
        assert_eq!((inst.n(), inst.m(), inst.max_ops_per_job()), (3, 6, 23));
        assert_eq!(inst.scale(), 100);
    }

    #[test]
    fn format_detection() {
        assert_eq!(Format::detect("1 2\n0 1 1 1\n"), Format::OrLib);
        assert_eq!(Format::detect("# c\n1 2\n2 0 1 1 1\n"), Format::Extended);
        assert_eq!(parse("1 1\n2 0 3 0 4\n", Format::Auto).unwrap().total_ops(), 2);
    }

    #[test]
    fn lower_bound_examples() {
        let one = Instance::new("", 2, vec![Job::from(&[(0, 3), (1, 4)][..])]).unwrap();
        assert_eq!(lower_bound(&one), 7);
        let two = Instance::new("", 1, vec![Job::from(&[(0, 3)][..]), Job::from(&[(0, 4)][..])]).unwrap();
        assert_eq!(lower_bound(&two), 7);
    }

    #[test]
    fn construction_invariants() {
        assert_eq!(Instance::new("", 1, vec![]), Err(InstanceError::NoJobs));
        assert_eq!(
            Instance::new("", 0, vec![Job::from(&[(0, 1)][..])]),
            Err(InstanceError::NoMachines)
        );
        assert_eq!(
            Instance::new("", 1, vec![Job::new(vec![])]),
            Err(InstanceError::EmptyJob { job: 0 })
        );
        let inst = Instance::new("", 1, vec![Job::from(&[(0, 1)][..])]).unwrap();
        assert_eq!(inst.clone().with_scale(30), Err(InstanceError::BadScale(30)));
        assert_eq!(inst.with_scale(100).unwrap().scale(), 100);
    }

    #[test]
    fn time_formatting() {
        assert_eq!(format_time(65755, 100), "657.55");
        assert_eq!(format_time(305, 100), "3.05");
        assert_eq!(format_time(42, 1), "42");
    }
}
