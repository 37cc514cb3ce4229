//! Simulated annealing for the cyclic job-shop problem of order k.
//!
//! The cyclic problem of order k asks for a schedule that produces every job
//! of a job-shop instance k times. Solving it directly can beat repeating the
//! best order-1 schedule k times, because copies of different jobs may
//! interleave. This crate provides:
//!
//! * [`instance`]: instances, OR-Library and extended parsers, lower bound;
//! * [`cyclic`]: expansion of an instance to order k;
//! * [`schedule`]: permutation encoding, semi-active decoding, validation,
//!   Gantt output;
//! * [`sa`]: the annealer;
//! * [`bench`]: the repetition-versus-cyclic benchmark harness;
//! * [`exec`]: sequential or rayon-backed batch execution.

pub mod bench;
pub mod corpus;
pub mod cyclic;
pub mod exec;
pub mod instance;
pub mod sa;
pub mod schedule;

pub use cyclic::{expand, CyclicInstance};
pub use exec::Execution;
pub use instance::{lower_bound, Instance, Job, OperationSpec, Time};
pub use sa::{anneal, SaConfig, SaResult};
pub use schedule::{decode, OperationPermutation, Schedule};
