//! The cyclic job-shop problem of order k: every job is produced k times.
//!
//! Copies are independent jobs. The expanded instance is copy-major, so
//! expanded job `base_job * k + copy` is copy `copy` of `base_job`.

use thiserror::Error;

use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the order of a cyclic instance must be at least 1")]
pub struct OrderZero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CopyOf {
    pub base_job: usize,
    pub copy: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CyclicInstance {
    base: Instance,
    order: usize,
    expanded: Instance,
}

impl CyclicInstance {
    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn expanded(&self) -> &Instance {
        &self.expanded
    }

    pub fn into_expanded(self) -> Instance {
        self.expanded
    }

    /// Maps an expanded job index back to its base job and copy number.
    pub fn copy_of(&self, expanded_job: usize) -> CopyOf {
        assert!(expanded_job < self.expanded.n(), "job {expanded_job} out of range");
        CopyOf {
            base_job: expanded_job / self.order,
            copy: expanded_job % self.order,
        }
    }

    pub fn expanded_index(&self, base_job: usize, copy: usize) -> usize {
        assert!(base_job < self.base.n() && copy < self.order);
        base_job * self.order + copy
    }

    /// The expanded instance in the extended format, with a comment line
    /// recording the base instance and the order.
    pub fn to_extended(&self) -> String {
        let mut out = format!("# {} expanded to order {}\n", self.base.name(), self.order);
        self.expanded.write_extended_body(&mut out);
        out
    }
}

/// Replicates every job of `inst` `k` times.
pub fn expand(inst: &Instance, k: usize) -> Result<CyclicInstance, OrderZero> {
    if k == 0 {
        return Err(OrderZero);
    }
    let jobs = inst
        .jobs()
        .iter()
        .flat_map(|job| std::iter::repeat_n(job, k).cloned())
        .collect();
    let name = if k == 1 {
        inst.name().to_string()
    } else {
        format!("{}x{}", inst.name(), k)
    };
    let expanded = crate::instance::Instance::new(name, inst.m(), jobs)
        .and_then(|e| e.with_scale(inst.scale()))
        .expect("replicating a valid instance keeps it valid");
    Ok(CyclicInstance {
        base: inst.clone(),
        order: k,
        expanded,
    })
}
