//! Semi-active decoding: each operation is appended at the earliest time
//! allowed by its job predecessor and by the last operation already placed
//! on its machine. Earlier idle gaps are never filled.

use super::permutation::{check_multiset, OperationPermutation, PermutationError};
use super::{Schedule, ScheduledOp};
use crate::instance::{Instance, Time};

/// Flattened instance data plus reusable scratch buffers, so repeated
/// decodes do not allocate.
#[derive(Debug, Clone)]
pub struct Decoder {
    offsets: Vec<usize>,
    ops: Vec<FlatOp>,
    /// Flat index of each job's next unscheduled operation.
    cursor: Vec<usize>,
    job_ready: Vec<Time>,
    machine_ready: Vec<Time>,
}

#[derive(Debug, Clone, Copy)]
struct FlatOp {
    machine: usize,
    duration: Time,
}

impl Decoder {
    pub fn new(inst: &Instance) -> Self {
        let mut offsets = Vec::with_capacity(inst.n() + 1);
        let mut ops = Vec::with_capacity(inst.total_ops());
        for job in inst.jobs() {
            offsets.push(ops.len());
            ops.extend(job.ops.iter().map(|op| FlatOp {
                machine: op.machine,
                duration: op.duration,
            }));
        }
        Self {
            cursor: offsets.clone(),
            offsets,
            ops,
            job_ready: vec![0; inst.n()],
            machine_ready: vec![0; inst.m()],
        }
    }

    fn reset(&mut self) {
        self.cursor.copy_from_slice(&self.offsets);
        self.job_ready.fill(0);
        self.machine_ready.fill(0);
    }

    /// Makespan of the semi-active schedule for `seq`. The sequence must be
    /// a valid permutation for the instance this decoder was built from.
    #[inline]
    pub fn makespan(&mut self, seq: &[usize]) -> Time {
        debug_assert_eq!(seq.len(), self.ops.len());
        self.reset();
        let mut makespan = 0;
        for &j in seq {
            let op = self.ops[self.cursor[j]];
            self.cursor[j] += 1;
            let end = self.job_ready[j].max(self.machine_ready[op.machine]) + op.duration;
            self.job_ready[j] = end;
            self.machine_ready[op.machine] = end;
            makespan = makespan.max(end);
        }
        makespan
    }

    /// Full schedule for `seq`, entries in job-major order.
    pub fn schedule(&mut self, seq: &[usize]) -> Schedule {
        self.reset();
        let mut entries = vec![
            ScheduledOp {
                job: 0,
                op: 0,
                machine: 0,
                start: 0,
                end: 0,
            };
            self.ops.len()
        ];
        let mut makespan = 0;
        for &j in seq {
            let idx = self.cursor[j];
            self.cursor[j] += 1;
            let FlatOp { machine: m, duration } = self.ops[idx];
            let start = self.job_ready[j].max(self.machine_ready[m]);
            let end = start + duration;
            self.job_ready[j] = end;
            self.machine_ready[m] = end;
            makespan = makespan.max(end);
            entries[idx] = ScheduledOp {
                job: j,
                op: idx - self.offsets[j],
                machine: m,
                start,
                end,
            };
        }
        Schedule { entries, makespan }
    }
}

/// Decodes a permutation into its semi-active schedule.
pub fn decode(inst: &Instance, perm: &OperationPermutation) -> Result<Schedule, PermutationError> {
    check_multiset(inst, perm.as_slice())?;
    Ok(Decoder::new(inst).schedule(perm.as_slice()))
}

pub fn makespan(inst: &Instance, perm: &OperationPermutation) -> Result<Time, PermutationError> {
    check_multiset(inst, perm.as_slice())?;
    Ok(Decoder::new(inst).makespan(perm.as_slice()))
}
