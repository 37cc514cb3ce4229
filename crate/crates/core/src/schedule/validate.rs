use std::collections::HashMap;
use std::fmt;

use super::{OpRef, Schedule, ScheduledOp};
use crate::instance::{Instance, Time};

/// A broken constraint of the job-shop model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The entry names an operation the instance does not have.
    UnknownOperation { op: OpRef },
    /// The operation appears more than once.
    Duplicate { op: OpRef },
    /// The operation is never scheduled.
    Missing { op: OpRef },
    MachineMismatch { op: OpRef, expected: usize, found: usize },
    /// `end - start` differs from the processing time.
    DurationMismatch { op: OpRef, expected: Time, start: Time, end: Time },
    /// `next` starts before `prev`, its job predecessor, ends.
    Precedence { prev: OpRef, next: OpRef },
    /// Two operations run on the same machine at the same time.
    MachineOverlap { machine: usize, first: OpRef, second: OpRef },
    MakespanMismatch { declared: Time, actual: Time },
}

impl Violation {
    pub fn class(&self) -> &'static str {
        match self {
            Violation::UnknownOperation { .. } | Violation::Duplicate { .. } | Violation::Missing { .. } => {
                "completeness"
            }
            Violation::MachineMismatch { .. } => "routing",
            Violation::DurationMismatch { .. } => "duration",
            Violation::Precedence { .. } => "precedence",
            Violation::MachineOverlap { .. } => "machine-exclusivity",
            Violation::MakespanMismatch { .. } => "makespan",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.class())?;
        match self {
            Violation::UnknownOperation { op } => write!(f, "{op} is not an operation of the instance"),
            Violation::Duplicate { op } => write!(f, "{op} is scheduled more than once"),
            Violation::Missing { op } => write!(f, "{op} is not scheduled"),
            Violation::MachineMismatch { op, expected, found } => {
                write!(f, "{op} runs on machine {found}, route says {expected}")
            }
            Violation::DurationMismatch {
                op,
                expected,
                start,
                end,
            } => write!(f, "{op} spans [{start}, {end}) but takes {expected}"),
            Violation::Precedence { prev, next } => write!(f, "{next} starts before {prev} ends"),
            Violation::MachineOverlap { machine, first, second } => {
                write!(f, "{first} and {second} overlap on machine {machine}")
            }
            Violation::MakespanMismatch { declared, actual } => {
                write!(f, "declared makespan {declared}, latest end is {actual}")
            }
        }
    }
}

/// Lists every violated constraint; an empty list means `sched` is a
/// feasible schedule of `inst`.
pub fn validate(inst: &Instance, sched: &Schedule) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen: HashMap<OpRef, &ScheduledOp> = HashMap::with_capacity(sched.entries.len());

    for entry in &sched.entries {
        let op = entry.op_ref();
        let Some(spec) = inst.jobs().get(entry.job).and_then(|j| j.ops.get(entry.op)) else {
            violations.push(Violation::UnknownOperation { op });
            continue;
        };
        if seen.insert(op, entry).is_some() {
            violations.push(Violation::Duplicate { op });
            continue;
        }
        if entry.machine != spec.machine {
            violations.push(Violation::MachineMismatch {
                op,
                expected: spec.machine,
                found: entry.machine,
            });
        }
        if entry.end < entry.start || entry.end - entry.start != spec.duration {
            violations.push(Violation::DurationMismatch {
                op,
                expected: spec.duration,
                start: entry.start,
                end: entry.end,
            });
        }
    }

    for (j, job) in inst.jobs().iter().enumerate() {
        for r in 0..job.len() {
            let op = OpRef { job: j, op: r };
            let Some(cur) = seen.get(&op) else {
                violations.push(Violation::Missing { op });
                continue;
            };
            if r > 0 {
                let prev = OpRef { job: j, op: r - 1 };
                if let Some(p) = seen.get(&prev) {
                    if cur.start < p.end {
                        violations.push(Violation::Precedence { prev, next: op });
                    }
                }
            }
        }
    }

    // Exclusivity over open intervals, using the route's machine.
    let mut lanes: Vec<Vec<&ScheduledOp>> = vec![Vec::new(); inst.m()];
    for (op, entry) in &seen {
        lanes[inst.job(op.job).ops[op.op].machine].push(entry);
    }
    for (machine, lane) in lanes.iter_mut().enumerate() {
        lane.retain(|e| e.end > e.start);
        lane.sort_by_key(|e| (e.start, e.end, e.job, e.op));
        for (i, a) in lane.iter().enumerate() {
            for b in &lane[i + 1..] {
                if b.start >= a.end {
                    break;
                }
                violations.push(Violation::MachineOverlap {
                    machine,
                    first: a.op_ref(),
                    second: b.op_ref(),
                });
            }
        }
    }

    let actual = sched.entries.iter().map(|e| e.end).max().unwrap_or(0);
    if actual != sched.makespan {
        violations.push(Violation::MakespanMismatch {
            declared: sched.makespan,
            actual,
        });
    }
    violations
}
