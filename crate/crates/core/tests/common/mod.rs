#![allow(dead_code)]

use std::path::PathBuf;

use cyclic_jobshop::instance::{read_instance, Format, Instance, Job, OperationSpec, Time};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_instance(name: &str) -> Instance {
    read_instance(&corpus_dir().join(format!("{name}.jss")), Format::OrLib).unwrap()
}

/// Semi-active makespan computed straight from the instance, without the
/// library's decoder.
pub fn reference_makespan(inst: &Instance, seq: &[usize]) -> Time {
    let mut next = vec![0usize; inst.n()];
    let mut job_ready = vec![0; inst.n()];
    let mut machine_ready = vec![0; inst.m()];
    for &j in seq {
        let OperationSpec { machine, duration } = inst.job(j).ops[next[j]];
        next[j] += 1;
        let end = job_ready[j].max(machine_ready[machine]) + duration;
        job_ready[j] = end;
        machine_ready[machine] = end;
    }
    job_ready.into_iter().max().unwrap_or(0)
}

/// Every distinct permutation of the job multiset, in lexicographic order.
pub fn all_permutations(inst: &Instance) -> Vec<Vec<usize>> {
    fn rec(remaining: &mut [usize], prefix: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == total {
            out.push(prefix.clone());
            return;
        }
        for j in 0..remaining.len() {
            if remaining[j] > 0 {
                remaining[j] -= 1;
                prefix.push(j);
                rec(remaining, prefix, total, out);
                prefix.pop();
                remaining[j] += 1;
            }
        }
    }
    let mut remaining: Vec<usize> = inst.jobs().iter().map(Job::len).collect();
    let mut out = Vec::new();
    rec(&mut remaining, &mut Vec::new(), inst.total_ops(), &mut out);
    out
}

/// Exhaustive optimum over all permutations.
pub fn brute_force_optimum(inst: &Instance) -> Time {
    all_permutations(inst)
        .iter()
        .map(|p| reference_makespan(inst, p))
        .min()
        .unwrap()
}

/// Random instance with variable-length routes, recirculation allowed.
pub fn random_instance(rng: &mut ChaCha8Rng, max_jobs: usize, max_machines: usize, max_ops: usize, max_total: usize) -> Instance {
    loop {
        let n = rng.random_range(1..=max_jobs);
        let m = rng.random_range(1..=max_machines);
        let jobs: Vec<Job> = (0..n)
            .map(|_| {
                let len = rng.random_range(1..=max_ops);
                Job::new(
                    (0..len)
                        .map(|_| OperationSpec::new(rng.random_range(0..m), rng.random_range(0..=9)))
                        .collect(),
                )
            })
            .collect();
        let inst = Instance::new("random", m, jobs).unwrap();
        if inst.total_ops() <= max_total {
            return inst;
        }
    }
}

pub fn shuffled(rng: &mut ChaCha8Rng, inst: &Instance) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut seq: Vec<usize> = (0..inst.n()).flat_map(|j| std::iter::repeat_n(j, inst.job(j).len())).collect();
    seq.shuffle(rng);
    seq
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A published comparison row: best-known order-1 makespan, annealed
/// makespans at orders 1, 2 and 4, and the printed Dif% of order 4.
#[derive(Debug, Clone, Copy)]
pub struct PublishedRow {
    pub name: &'static str,
    pub machines: usize,
    pub best1: f64,
    pub sa1: f64,
    pub best2: f64,
    pub sa2: f64,
    pub best4: f64,
    pub sa4: f64,
    pub dif: f64,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    name: &'static str,
    machines: usize,
    best1: f64,
    sa1: f64,
    best2: f64,
    sa2: f64,
    best4: f64,
    sa4: f64,
    dif: f64,
) -> PublishedRow {
    PublishedRow {
        name,
        machines,
        best1,
        sa1,
        best2,
        sa2,
        best4,
        sa4,
        dif,
    }
}

/// Repetition baseline versus direct order-k solving, as published for the
/// corpus (machine counts from the instance dimensions table).
pub const PUBLISHED: [PublishedRow; 27] = [
    row("abz6", 10, 943.0, 943.0, 1886.0, 1810.0, 3772.0, 3482.0, 7.69),
    row("ft06", 6, 55.0, 55.0, 110.0, 103.0, 220.0, 197.0, 10.45),
    row("ft10", 10, 930.0, 937.0, 1860.0, 1661.0, 3720.0, 3112.0, 16.34),
    row("ft20", 5, 1165.0, 1178.0, 2330.0, 2280.0, 4660.0, 4484.0, 3.78),
    row("la01", 5, 666.0, 666.0, 1332.0, 1332.0, 2664.0, 2664.0, 0.0),
    row("la02", 5, 655.0, 655.0, 1310.0, 1290.0, 2620.0, 2560.0, 2.29),
    row("la03", 5, 597.0, 597.0, 1194.0, 1176.0, 2388.0, 2352.0, 1.51),
    row("la04", 5, 590.0, 590.0, 1180.0, 1115.0, 2360.0, 2186.0, 7.37),
    row("la05", 5, 593.0, 593.0, 1186.0, 1186.0, 2372.0, 2372.0, 0.0),
    row("la06", 5, 926.0, 926.0, 1852.0, 1852.0, 3704.0, 3704.0, 0.0),
    row("la07", 5, 890.0, 890.0, 1780.0, 1759.0, 3560.0, 3497.0, 1.77),
    row("la08", 5, 863.0, 863.0, 1726.0, 1726.0, 3452.0, 3452.0, 0.0),
    row("la09", 5, 951.0, 951.0, 1902.0, 1902.0, 3804.0, 3804.0, 0.0),
    row("la10", 5, 958.0, 958.0, 1916.0, 1916.0, 3832.0, 3832.0, 0.0),
    row("la11", 5, 1222.0, 1222.0, 2444.0, 2444.0, 4888.0, 4888.0, 0.0),
    row("la12", 5, 1039.0, 1039.0, 2078.0, 2078.0, 4156.0, 4156.0, 0.0),
    row("la13", 5, 1150.0, 1150.0, 2300.0, 2300.0, 4600.0, 4600.0, 0.0),
    row("la14", 5, 1292.0, 1292.0, 2584.0, 2584.0, 5168.0, 5168.0, 0.0),
    row("la15", 5, 1207.0, 1207.0, 2414.0, 2414.0, 4828.0, 4828.0, 0.0),
    row("la16", 10, 945.0, 946.0, 1890.0, 1712.0, 3780.0, 3272.0, 13.4),
    row("la17", 10, 784.0, 784.0, 1568.0, 1501.0, 3136.0, 2946.0, 6.06),
    row("la18", 10, 848.0, 848.0, 1696.0, 1621.0, 3392.0, 3156.0, 6.96),
    row("la19", 10, 842.0, 848.0, 1684.0, 1639.0, 3368.0, 3138.0, 6.83),
    row("la20", 10, 902.0, 907.0, 1804.0, 1722.0, 3608.0, 3338.0, 7.48),
    row("la21", 10, 1046.0, 1074.0, 2092.0, 2043.0, 4184.0, 4013.0, 4.27),
    row("Fig.1", 4, 31.0, 31.0, 62.0, 54.0, 124.0, 102.0, 17.8),
    row("sk", 6, 657.55, 657.55, 1315.1, 1284.05, 2630.2, 2539.4, 3.45),
];

/// Published order-scaling values for la20: (order, repeated, cyclic).
pub const LA20_SCALING: [(usize, f64, f64); 7] = [
    (1, 902.0, 907.0),
    (2, 1804.0, 1722.0),
    (4, 3608.0, 3338.0),
    (6, 5412.0, 4895.0),
    (8, 7216.0, 6497.0),
    (9, 8118.0, 7401.0),
    (10, 9020.0, 8113.0),
];
