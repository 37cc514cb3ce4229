//! Simulated annealing over operation permutations.
//!
//! The control flow is the classic swap-move annealer: the temperature is
//! multiplied by the cooling fraction at the top of every outer step, a fixed
//! number of random swaps is tried at that temperature, and the decrement is
//! undone when the step ended below the value it started from. Uphill moves
//! are judged on the delta relative to the current makespan.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Instance, Time};
use crate::schedule::{Decoder, OperationPermutation};

/// Outer and inner step counts used for orders of 6 and above unless set
/// explicitly.
pub const HIGH_ORDER_STEPS: u64 = 6000;
pub const HIGH_ORDER_THRESHOLD: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SaError {
    #[error("invalid annealing configuration: {0}")]
    InvalidConfig(String),
    #[error("acceptance probability needs positive current value, temperature and kt")]
    NonPositiveDenominator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaConfig {
    pub initial_temperature: f64,
    pub cooling_steps: u64,
    pub cooling_fraction: f64,
    pub steps_per_temp: u64,
    pub kt: f64,
    pub seed: u64,
    /// Wall-clock budget in seconds.
    pub time_limit: Option<f64>,
    /// Record one trace row per outer step.
    pub trace: bool,
}

impl Default for SaConfig {
    fn default() -> Self {
        Self {
            initial_temperature: 1.0,
            cooling_steps: 3000,
            cooling_fraction: 0.97,
            steps_per_temp: 3000,
            kt: 0.01,
            seed: 0,
            time_limit: None,
            trace: false,
        }
    }
}

impl SaConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_steps(mut self, cooling_steps: u64, steps_per_temp: u64) -> Self {
        self.cooling_steps = cooling_steps;
        self.steps_per_temp = steps_per_temp;
        self
    }

    pub fn validate(&self) -> Result<(), SaError> {
        let fail = |msg: String| Err(SaError::InvalidConfig(msg));
        if !(self.cooling_fraction > 0.0 && self.cooling_fraction < 1.0) {
            return fail(format!("cooling_fraction must lie in (0, 1), got {}", self.cooling_fraction));
        }
        if self.cooling_steps == 0 {
            return fail("cooling_steps must be at least 1".into());
        }
        if self.steps_per_temp == 0 {
            return fail("steps_per_temp must be at least 1".into());
        }
        if !(self.kt > 0.0 && self.kt.is_finite()) {
            return fail(format!("kt must be positive, got {}", self.kt));
        }
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return fail(format!(
                "initial_temperature must be positive, got {}",
                self.initial_temperature
            ));
        }
        if let Some(limit) = self.time_limit {
            if !(limit > 0.0 && limit.is_finite()) {
                return fail(format!("time_limit must be positive, got {limit}"));
            }
        }
        Ok(())
    }
}

/// Partial configuration from a config file or command-line flags. Unset
/// fields fall back to the defaults, with the step counts raised for high
/// orders.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaOverrides {
    pub initial_temperature: Option<f64>,
    pub cooling_steps: Option<u64>,
    pub cooling_fraction: Option<f64>,
    pub steps_per_temp: Option<u64>,
    pub kt: Option<f64>,
    pub seed: Option<u64>,
    pub time_limit: Option<f64>,
}

impl SaOverrides {
    /// Parses `key = value` lines (TOML syntax).
    pub fn from_config_text(text: &str) -> Result<Self, SaError> {
        toml::from_str(text).map_err(|e| SaError::InvalidConfig(e.message().to_string()))
    }

    /// Fields set in `other` win.
    pub fn merge(self, other: SaOverrides) -> SaOverrides {
        SaOverrides {
            initial_temperature: other.initial_temperature.or(self.initial_temperature),
            cooling_steps: other.cooling_steps.or(self.cooling_steps),
            cooling_fraction: other.cooling_fraction.or(self.cooling_fraction),
            steps_per_temp: other.steps_per_temp.or(self.steps_per_temp),
            kt: other.kt.or(self.kt),
            seed: other.seed.or(self.seed),
            time_limit: other.time_limit.or(self.time_limit),
        }
    }

    pub fn resolve(&self, order: usize) -> SaConfig {
        let d = SaConfig::default();
        let steps_default = |v: u64| {
            if order >= HIGH_ORDER_THRESHOLD {
                HIGH_ORDER_STEPS
            } else {
                v
            }
        };
        SaConfig {
            initial_temperature: self.initial_temperature.unwrap_or(d.initial_temperature),
            cooling_steps: self.cooling_steps.unwrap_or_else(|| steps_default(d.cooling_steps)),
            cooling_fraction: self.cooling_fraction.unwrap_or(d.cooling_fraction),
            steps_per_temp: self.steps_per_temp.unwrap_or_else(|| steps_default(d.steps_per_temp)),
            kt: self.kt.unwrap_or(d.kt),
            seed: self.seed.unwrap_or(d.seed),
            time_limit: self.time_limit,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step: u64,
    pub temperature: f64,
    pub current: Time,
    pub best: Time,
}

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("step,temperature,current,best\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.step, r.temperature, r.current, r.best);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaResult {
    pub seed: u64,
    pub best_perm: OperationPermutation,
    pub best_makespan: Time,
    pub initial_makespan: Time,
    /// Makespan of the chain's last state.
    pub final_makespan: Time,
    pub evaluations: u64,
    pub trace: Option<Vec<TraceRow>>,
    pub elapsed: Duration,
    pub timed_out: bool,
}

/// `exp((-delta / current_value) / (kt * temperature))`, clamped to [0, 1].
pub fn acceptance_probability(delta: i64, current_value: Time, temperature: f64, kt: f64) -> Result<f64, SaError> {
    if current_value == 0 || temperature.is_nan() || temperature <= 0.0 || kt.is_nan() || kt <= 0.0 {
        return Err(SaError::NonPositiveDenominator);
    }
    Ok(raw_acceptance(delta, current_value, temperature, kt).clamp(0.0, 1.0))
}

#[inline]
fn raw_acceptance(delta: i64, current_value: Time, temperature: f64, kt: f64) -> f64 {
    ((-(delta as f64) / current_value as f64) / (kt * temperature)).exp()
}

#[inline]
fn distinct_positions(rng: &mut ChaCha8Rng, len: usize) -> (usize, usize) {
    if len < 2 {
        return (0, 0);
    }
    let r1 = rng.random_range(0..len);
    loop {
        let r2 = rng.random_range(0..len);
        if r2 != r1 {
            return (r1, r2);
        }
    }
}

/// Runs one annealing chain. Identical `(inst, cfg)` give identical results
/// (apart from `elapsed`).
pub fn anneal(inst: &Instance, cfg: &SaConfig) -> Result<SaResult, SaError> {
    cfg.validate()?;
    let started = Instant::now();
    let deadline = cfg.time_limit.map(|s| started + Duration::from_secs_f64(s));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut decoder = Decoder::new(inst);
    let mut perm = OperationPermutation::canonical(inst);
    perm.as_mut_slice().shuffle(&mut rng);
    let seq = perm.as_mut_slice();
    let len = seq.len();

    let mut current = decoder.makespan(seq);
    let initial = current;
    let mut best = current;
    let mut best_seq = seq.to_vec();
    let mut temperature = cfg.initial_temperature;
    let mut evaluations = 0u64;
    let mut trace = cfg.trace.then(|| Vec::with_capacity(cfg.cooling_steps as usize));
    let mut timed_out = false;

    'outer: for step in 0..cfg.cooling_steps {
        temperature *= cfg.cooling_fraction;
        let start_value = current;

        for inner in 0..cfg.steps_per_temp {
            if inner % 1024 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                timed_out = true;
                break 'outer;
            }
            let (r1, r2) = distinct_positions(&mut rng, len);
            seq.swap(r1, r2);
            let new_value = decoder.makespan(seq);
            evaluations += 1;
            let delta = new_value as i64 - current as i64;

            if delta < 0 {
                current = new_value;
                if current < best {
                    best = current;
                    best_seq.copy_from_slice(seq);
                }
            } else {
                // A zero makespan is already optimal; only sideways moves pass.
                let accept = if current == 0 {
                    delta == 0
                } else {
                    raw_acceptance(delta, current, temperature, cfg.kt) > rng.random::<f64>()
                };
                if accept {
                    current = new_value;
                } else {
                    seq.swap(r2, r1);
                }
            }
        }

        if current < start_value {
            temperature /= cfg.cooling_fraction;
        }
        if let Some(t) = trace.as_mut() {
            t.push(TraceRow {
                step,
                temperature,
                current,
                best,
            });
        }
    }

    Ok(SaResult {
        seed: cfg.seed,
        best_perm: OperationPermutation::from_vec_unchecked(best_seq),
        best_makespan: best,
        initial_makespan: initial,
        final_makespan: current,
        evaluations,
        trace,
        elapsed: started.elapsed(),
        timed_out,
    })
}
