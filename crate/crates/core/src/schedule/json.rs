use serde::{Deserialize, Serialize};

use super::{Schedule, ScheduledOp};
use crate::cyclic::CyclicInstance;
use crate::instance::Time;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    /// Job index in the expanded instance.
    pub job: usize,
    pub base_job: usize,
    pub copy: usize,
    pub op: usize,
    pub machine: usize,
    pub start: Time,
    pub end: Time,
}

/// On-disk schedule. Times are internal units; divide by `scale` for
/// display units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleDocument {
    pub instance: String,
    pub order: usize,
    pub scale: u32,
    pub makespan: Time,
    pub entries: Vec<ScheduleEntry>,
}

impl ScheduleDocument {
    pub fn new(cyclic: &CyclicInstance, sched: &Schedule) -> Self {
        let entries = sched
            .entries
            .iter()
            .map(|e| {
                let origin = cyclic.copy_of(e.job);
                ScheduleEntry {
                    job: e.job,
                    base_job: origin.base_job,
                    copy: origin.copy,
                    op: e.op,
                    machine: e.machine,
                    start: e.start,
                    end: e.end,
                }
            })
            .collect();
        Self {
            instance: cyclic.base().name().to_string(),
            order: cyclic.order(),
            scale: cyclic.base().scale(),
            makespan: sched.makespan,
            entries,
        }
    }

    pub fn schedule(&self) -> Schedule {
        Schedule {
            entries: self
                .entries
                .iter()
                .map(|e| ScheduledOp {
                    job: e.job,
                    op: e.op,
                    machine: e.machine,
                    start: e.start,
                    end: e.end,
                })
                .collect(),
            makespan: self.makespan,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schedule documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
