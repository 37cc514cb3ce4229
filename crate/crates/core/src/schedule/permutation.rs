use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic::OrderZero;
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("permutation does not match the instance: {0}")]
    Mismatch(String),
    #[error("position {index} out of range for a permutation of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Operation-based permutation with repetition.
///
/// Job `j` appears once per operation; its r-th occurrence stands for its
/// r-th operation. Any exchange of two positions yields another valid
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperationPermutation(Vec<usize>);

impl OperationPermutation {
    /// Checks that `seq` holds job `j` exactly `|jobs[j].ops|` times.
    pub fn new(inst: &Instance, seq: Vec<usize>) -> Result<Self, PermutationError> {
        check_multiset(inst, &seq)?;
        Ok(Self(seq))
    }

    /// Every job's occurrences contiguous, jobs ascending.
    pub fn canonical(inst: &Instance) -> Self {
        Self(
            inst.jobs()
                .iter()
                .enumerate()
                .flat_map(|(j, job)| std::iter::repeat_n(j, job.len()))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid_for(&self, inst: &Instance) -> bool {
        check_multiset(inst, &self.0).is_ok()
    }

    /// Exchanges two positions in place.
    pub fn swap(&mut self, r1: usize, r2: usize) -> Result<(), PermutationError> {
        let len = self.0.len();
        for index in [r1, r2] {
            if index >= len {
                return Err(PermutationError::IndexOutOfRange { index, len });
            }
        }
        self.0.swap(r1, r2);
        Ok(())
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [usize] {
        &mut self.0
    }

    pub(crate) fn from_vec_unchecked(seq: Vec<usize>) -> Self {
        Self(seq)
    }
}

pub(crate) fn check_multiset(inst: &Instance, seq: &[usize]) -> Result<(), PermutationError> {
    if seq.len() != inst.total_ops() {
        return Err(PermutationError::Mismatch(format!(
            "length {} but the instance has {} operations",
            seq.len(),
            inst.total_ops()
        )));
    }
    let mut counts = vec![0usize; inst.n()];
    for &j in seq {
        match counts.get_mut(j) {
            Some(c) => *c += 1,
            None => {
                return Err(PermutationError::Mismatch(format!(
                    "job {j} does not exist (instance has {} jobs)",
                    inst.n()
                )))
            }
        }
    }
    for (j, (&count, job)) in counts.iter().zip(inst.jobs()).enumerate() {
        if count != job.len() {
            return Err(PermutationError::Mismatch(format!(
                "job {j} appears {count} times but has {} operations",
                job.len()
            )));
        }
    }
    Ok(())
}

pub fn canonical_permutation(inst: &Instance) -> OperationPermutation {
    OperationPermutation::canonical(inst)
}

/// Returns `perm` with positions `r1` and `r2` exchanged.
pub fn swap(perm: &OperationPermutation, r1: usize, r2: usize) -> Result<OperationPermutation, PermutationError> {
    let mut out = perm.clone();
    out.swap(r1, r2)?;
    Ok(out)
}

/// The repetition baseline: `k` back-to-back copies of `perm`, block `c`
/// naming copy `c` of each job under copy-major indexing.
pub fn replicate(perm: &OperationPermutation, k: usize) -> Result<OperationPermutation, OrderZero> {
    if k == 0 {
        return Err(OrderZero);
    }
    let seq = (0..k)
        .flat_map(|copy| perm.0.iter().map(move |&j| j * k + copy))
        .collect();
    Ok(OperationPermutation(seq))
}
