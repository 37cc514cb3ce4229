//! Solution encoding, decoding to semi-active schedules, validation and
//! Gantt rendering.

mod decode;
mod gantt;
mod json;
mod permutation;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::instance::Time;

pub use decode::{decode, makespan, Decoder};
pub use gantt::{render_gantt, render_gantt_scaled, EmptySchedule, GanttFormat};
pub use json::{ScheduleDocument, ScheduleEntry};
pub use permutation::{canonical_permutation, replicate, swap, OperationPermutation, PermutationError};
pub use validate::{validate, Violation};

/// Names operation `op` of job `job`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpRef {
    pub job: usize,
    pub op: usize,
}

impl fmt::Display for OpRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(job {}, op {})", self.job, self.op)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledOp {
    pub job: usize,
    pub op: usize,
    pub machine: usize,
    pub start: Time,
    pub end: Time,
}

impl ScheduledOp {
    pub fn op_ref(&self) -> OpRef {
        OpRef {
            job: self.job,
            op: self.op,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub entries: Vec<ScheduledOp>,
    pub makespan: Time,
}

impl Schedule {
    /// Builds a schedule whose makespan is the latest end time.
    pub fn from_entries(entries: Vec<ScheduledOp>) -> Self {
        let makespan = entries.iter().map(|e| e.end).max().unwrap_or(0);
        Self { entries, makespan }
    }

    /// Per-machine operation order, by start time.
    pub fn machine_sequences(&self) -> Vec<Vec<OpRef>> {
        let lanes = self.entries.iter().map(|e| e.machine + 1).max().unwrap_or(0);
        let mut seqs: Vec<Vec<&ScheduledOp>> = vec![Vec::new(); lanes];
        for e in &self.entries {
            seqs[e.machine].push(e);
        }
        seqs.into_iter()
            .map(|mut lane| {
                lane.sort_by_key(|e| (e.start, e.end, e.job, e.op));
                lane.into_iter().map(ScheduledOp::op_ref).collect()
            })
            .collect()
    }
}
