mod common;

use common::*;
use cyclic_jobshop::cyclic::expand;
use cyclic_jobshop::instance::{lower_bound, parse_extended, parse_orlib, Instance, Job, OperationSpec, Time};
use cyclic_jobshop::sa::acceptance_probability;
use cyclic_jobshop::schedule::{
    decode, replicate, swap, validate, OperationPermutation, Schedule, ScheduledOp,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn instance_strategy() -> impl Strategy<Value = Instance> {
    (1usize..5, 1usize..5).prop_flat_map(|(n, m)| {
        let op = (0..m, 0u64..20).prop_map(|(mc, d)| OperationSpec::new(mc, d));
        prop::collection::vec(prop::collection::vec(op, 1..6).prop_map(Job::new), n)
            .prop_map(move |jobs| Instance::new("p", m, jobs).unwrap())
    })
}

fn orlib_strategy() -> impl Strategy<Value = (usize, usize, String)> {
    (1usize..5, 1usize..5).prop_flat_map(|(n, m)| {
        let line = prop::collection::vec((0..m, 0u64..100), m)
            .prop_map(|ops| ops.iter().map(|(a, b)| format!("{a} {b}")).collect::<Vec<_>>().join(" "));
        prop::collection::vec(line, n).prop_map(move |lines| (n, m, format!("{n} {m}\n{}\n", lines.join("\n"))))
    })
}

fn shuffle_seeded(inst: &Instance, seed: u64) -> OperationPermutation {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    OperationPermutation::new(inst, shuffled(&mut r, inst)).unwrap()
}

/// Decodes like the library but inserts random idle time before each
/// operation, which yields a feasible schedule with the same machine orders.
fn delayed_schedule(inst: &Instance, seq: &[usize], seed: u64) -> Vec<Vec<Time>> {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut next = vec![0usize; inst.n()];
    let mut job_ready = vec![0; inst.n()];
    let mut machine_ready = vec![0; inst.m()];
    let mut starts: Vec<Vec<Time>> = inst.jobs().iter().map(|j| vec![0; j.len()]).collect();
    for &j in seq {
        let op = inst.job(j).ops[next[j]];
        let start = job_ready[j].max(machine_ready[op.machine]) + r.random_range(0..5);
        starts[j][next[j]] = start;
        next[j] += 1;
        job_ready[j] = start + op.duration;
        machine_ready[op.machine] = start + op.duration;
    }
    starts
}

proptest! {
    #[test]
    fn extended_round_trip(inst in instance_strategy()) {
        let text = inst.to_extended();
        let back = parse_extended(&text).unwrap().with_name(inst.name());
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn decimal_round_trip(inst in instance_strategy()) {
        let scaled = inst.clone().with_scale(100).unwrap();
        let back = parse_extended(&scaled.to_extended()).unwrap();
        prop_assert!(back.structurally_eq(&scaled));
    }

    #[test]
    fn orlib_jobs_have_m_ops((n, m, text) in orlib_strategy()) {
        let inst = parse_orlib(&text).unwrap();
        prop_assert_eq!(inst.n(), n);
        prop_assert!(inst.jobs().iter().all(|j| j.len() == m));
    }

    #[test]
    fn decoded_schedules_are_feasible_and_bounded(inst in instance_strategy(), seed in any::<u64>()) {
        let perm = shuffle_seeded(&inst, seed);
        let s = decode(&inst, &perm).unwrap();
        prop_assert!(validate(&inst, &s).is_empty());
        prop_assert!(s.makespan >= lower_bound(&inst));
        prop_assert_eq!(s.makespan, reference_makespan(&inst, perm.as_slice()));
        prop_assert_eq!(decode(&inst, &perm).unwrap(), s);
    }

    #[test]
    fn semi_active_dominance(inst in instance_strategy(), seed in any::<u64>()) {
        let perm = shuffle_seeded(&inst, seed);
        let delayed = delayed_schedule(&inst, perm.as_slice(), seed ^ 0x5eed);
        let entries: Vec<ScheduledOp> = inst.jobs().iter().enumerate().flat_map(|(j, job)| {
            let delayed = &delayed;
            job.ops.iter().enumerate().map(move |(r, op)| ScheduledOp {
                job: j, op: r, machine: op.machine, start: delayed[j][r], end: delayed[j][r] + op.duration,
            })
        }).collect();
        let other = Schedule::from_entries(entries);
        prop_assert!(validate(&inst, &other).is_empty());
        let tight = decode(&inst, &perm).unwrap();
        for (a, b) in tight.entries.iter().zip(&other.entries) {
            prop_assert_eq!((a.job, a.op), (b.job, b.op));
            prop_assert!(a.start <= b.start);
        }
    }

    #[test]
    fn replication_bound(inst in instance_strategy(), seed in any::<u64>(), k in 1usize..5) {
        let perm = shuffle_seeded(&inst, seed);
        let single = decode(&inst, &perm).unwrap().makespan;
        let c = expand(&inst, k).unwrap();
        let rep = replicate(&perm, k).unwrap();
        prop_assert!(rep.is_valid_for(c.expanded()));
        prop_assert!(decode(c.expanded(), &rep).unwrap().makespan <= k as Time * single);
    }

    #[test]
    fn swap_is_an_involution(inst in instance_strategy(), seed in any::<u64>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let perm = shuffle_seeded(&inst, seed);
        let (r1, r2) = (a.index(perm.len()), b.index(perm.len()));
        let once = swap(&perm, r1, r2).unwrap();
        prop_assert!(once.is_valid_for(&inst));
        prop_assert_eq!(swap(&once, r1, r2).unwrap(), perm.clone());
        prop_assert_eq!(swap(&once, r2, r1).unwrap(), perm);
    }

    #[test]
    fn expand_is_deterministic_and_copy_major(inst in instance_strategy(), k in 1usize..5) {
        let a = expand(&inst, k).unwrap();
        let b = expand(&inst, k).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.expanded().n(), inst.n() * k);
        for i in 0..a.expanded().n() {
            prop_assert_eq!(a.expanded().job(i), inst.job(a.copy_of(i).base_job));
        }
        let loads = inst.machine_loads();
        prop_assert!(lower_bound(a.expanded()) >= k as Time * loads.iter().max().unwrap());
    }

    #[test]
    fn acceptance_is_monotone(
        current in 1u64..10_000,
        d1 in 0i64..5000,
        d2 in 0i64..5000,
        t1 in 1e-4f64..2.0,
        t2 in 1e-4f64..2.0,
        kt in 1e-3f64..1.0,
    ) {
        let (lo, hi) = (d1.min(d2), d1.max(d2));
        let p_lo = acceptance_probability(lo, current, t1, kt).unwrap();
        let p_hi = acceptance_probability(hi, current, t1, kt).unwrap();
        prop_assert!(p_hi <= p_lo);
        prop_assert!((0.0..=1.0).contains(&p_lo));
        if hi > 0 {
            let (cold, hot) = (t1.min(t2), t1.max(t2));
            prop_assert!(
                acceptance_probability(hi, current, cold, kt).unwrap()
                    <= acceptance_probability(hi, current, hot, kt).unwrap()
            );
        }
    }
}

#[test]
fn random_schedule_fuzz_over_corpus() {
    let mut r = rng(99);
    for name in ["ft06", "la01", "la20"] {
        let inst = corpus_instance(name);
        for _ in 0..200 {
            let perm = OperationPermutation::new(&inst, shuffled(&mut r, &inst)).unwrap();
            let s = decode(&inst, &perm).unwrap();
            assert!(validate(&inst, &s).is_empty());
            assert!(s.makespan >= lower_bound(&inst));
        }
    }
}
