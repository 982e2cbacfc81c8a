//! Exhaustive and sampled verification of the a-HR condition and a-resistance.
//!
//! Attack sets are the `a`-subsets of `0..n` in ascending lexicographic
//! order; the rank of a set is its position in that order. Witnesses are the
//! smallest failing ranks, which makes reports independent of how the
//! enumeration is split across threads.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::Multicoloring;
use crate::error::{Error, Result};
use crate::graph::{first_bit, full_words, Graph};
use crate::vertex_set::{BitIter, VertexSet};

/// Attack ranks handled by one work unit.
const CHUNK: u64 = 2048;
/// Trials per RNG stream in [`sample_check`].
pub const SAMPLE_CHUNK: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub attackers: usize,
    pub hr_holds: bool,
    pub hr_witness: Option<VertexSet>,
    pub resistant: bool,
    pub resistance_witness: Option<VertexSet>,
    pub highly_resistant: bool,
    /// Attack sets in lexicographic order up to the point where both
    /// verdicts were settled: `C(n, a)` whenever either condition holds.
    pub attack_sets_examined: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub attackers: usize,
    pub trials: u64,
    pub hr_failures: u64,
    pub resistance_failures: u64,
    pub first_hr_failure: Option<VertexSet>,
    pub first_resistance_failure: Option<VertexSet>,
    pub seed: u64,
}

pub(crate) fn validate(g: &Graph, kappa: &Multicoloring, a: usize) -> Result<()> {
    if kappa.palette_size() == 0 {
        return Err(Error::EmptyPalette);
    }
    if kappa.len() != g.num_vertices() {
        return Err(Error::LengthMismatch {
            coloring: kappa.len(),
            graph: g.num_vertices(),
        });
    }
    if a == 0 || a > g.num_vertices() {
        return Err(Error::invalid(format!(
            "attacker count must satisfy 1 <= a <= n = {}, got {a}",
            g.num_vertices()
        )));
    }
    Ok(())
}

/// `C(n, k)`, or an error when it does not fit in 64 bits.
pub fn binomial(n: usize, k: usize) -> Result<u64> {
    binomial_u128(n, k)
        .and_then(|c| u64::try_from(c).ok())
        .ok_or_else(|| Error::invalid(format!("C({n}, {k}) attack sets is too many to enumerate")))
}

fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// The `rank`-th `a`-subset of `0..n` in lexicographic order.
pub(crate) fn unrank(mut rank: u64, n: usize, a: usize) -> Vec<usize> {
    let mut comb = Vec::with_capacity(a);
    let mut x = 0;
    for i in 0..a {
        loop {
            let count = binomial_u128(n - x - 1, a - i - 1).unwrap_or(u128::MAX);
            if (rank as u128) < count {
                comb.push(x);
                x += 1;
                break;
            }
            rank -= count as u64;
            x += 1;
        }
    }
    comb
}

/// Advances to the next `a`-subset in lexicographic order; false after the last.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let a = comb.len();
    let Some(i) = (0..a).rev().find(|&i| comb[i] < n - a + i) else {
        return false;
    };
    comb[i] += 1;
    for j in i + 1..a {
        comb[j] = comb[j - 1] + 1;
    }
    true
}

struct Kernel<'a> {
    graph: &'a Graph,
    colors: Vec<u64>,
    full: u64,
    all: Vec<u64>,
}

struct Scratch {
    alive: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
}

impl<'a> Kernel<'a> {
    fn new(graph: &'a Graph, kappa: &Multicoloring) -> Self {
        Kernel {
            graph,
            colors: kappa.assignment().iter().map(|s| s.bits()).collect(),
            full: kappa.full_palette().bits(),
            all: full_words(graph.num_vertices()),
        }
    }

    fn scratch(&self) -> Scratch {
        let w = self.graph.stride();
        Scratch {
            alive: vec![0; w],
            frontier: vec![0; w],
            next: vec![0; w],
        }
    }

    fn covers_palette(&self, attack: &[usize]) -> bool {
        attack.iter().fold(0, |acc, &u| acc | self.colors[u]) == self.full
    }

    /// True when some component of `G \ M(attack)` holds every color.
    fn has_full_component(&self, attack: &[usize], s: &mut Scratch) -> bool {
        s.alive.copy_from_slice(&self.all);
        for &u in attack {
            for (x, c) in s.alive.iter_mut().zip(self.graph.closed_words(u)) {
                *x &= !c;
            }
        }
        let total = BitIter::new(&s.alive).fold(0, |acc, v| acc | self.colors[v]);
        if total != self.full {
            return false;
        }
        while let Some(start) = first_bit(&s.alive) {
            s.alive[start / 64] &= !(1 << (start % 64));
            s.frontier.iter_mut().for_each(|w| *w = 0);
            s.frontier[start / 64] |= 1 << (start % 64);
            let mut seen = self.colors[start];
            if seen == self.full {
                return true;
            }
            loop {
                s.next.iter_mut().for_each(|w| *w = 0);
                for v in BitIter::new(&s.frontier) {
                    for (x, c) in s.next.iter_mut().zip(self.graph.closed_words(v)) {
                        *x |= c;
                    }
                }
                let mut grew = false;
                for (x, alive) in s.next.iter_mut().zip(s.alive.iter_mut()) {
                    *x &= *alive;
                    *alive &= !*x;
                    grew |= *x != 0;
                }
                if !grew {
                    break;
                }
                seen = BitIter::new(&s.next).fold(seen, |acc, v| acc | self.colors[v]);
                if seen == self.full {
                    return true;
                }
                std::mem::swap(&mut s.frontier, &mut s.next);
            }
        }
        false
    }
}

pub(crate) fn run_with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Smallest failing ranks for the requested conditions.
fn scan(
    kernel: &Kernel<'_>,
    a: usize,
    need_hr: bool,
    need_res: bool,
    threads: usize,
) -> Result<(Option<u64>, Option<u64>, u64)> {
    let n = kernel.graph.num_vertices();
    let total = binomial(n, a)?;
    let best_hr = AtomicU64::new(u64::MAX);
    let best_res = AtomicU64::new(u64::MAX);
    let chunks = total.div_ceil(CHUNK);

    let run_chunk = |ci: u64| {
        let start = ci * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut want_hr = need_hr && start < best_hr.load(Ordering::Relaxed);
        let mut want_res = need_res && start < best_res.load(Ordering::Relaxed);
        if !want_hr && !want_res {
            return;
        }
        let mut comb = unrank(start, n, a);
        let mut scratch = kernel.scratch();
        for rank in start..end {
            if want_hr {
                if rank >= best_hr.load(Ordering::Relaxed) {
                    want_hr = false;
                } else if kernel.covers_palette(&comb) {
                    best_hr.fetch_min(rank, Ordering::Relaxed);
                    want_hr = false;
                }
            }
            if want_res {
                if rank >= best_res.load(Ordering::Relaxed) {
                    want_res = false;
                } else if !kernel.has_full_component(&comb, &mut scratch) {
                    best_res.fetch_min(rank, Ordering::Relaxed);
                    want_res = false;
                }
            }
            if !(want_hr || want_res) {
                break;
            }
            next_combination(&mut comb, n);
        }
    };

    if threads <= 1 {
        (0..chunks).for_each(run_chunk);
    } else {
        run_with_threads(threads, || (0..chunks).into_par_iter().for_each(run_chunk));
    }

    let found = |best: &AtomicU64| Some(best.load(Ordering::Relaxed)).filter(|&r| r != u64::MAX);
    Ok((found(&best_hr), found(&best_res), total))
}

fn witness(rank: u64, n: usize, a: usize) -> VertexSet {
    VertexSet::from_vertices(n, unrank(rank, n, a)).expect("unranked vertices are in range")
}

/// Checks the a-HR condition: no `a` vertices jointly hold every color.
/// On failure returns the lexicographically first covering set.
pub fn check_hr(
    g: &Graph,
    kappa: &Multicoloring,
    a: usize,
) -> Result<(bool, Option<VertexSet>)> {
    validate(g, kappa, a)?;
    let kernel = Kernel::new(g, kappa);
    let (hr, _, _) = scan(&kernel, a, true, false, 1)?;
    Ok((hr.is_none(), hr.map(|r| witness(r, g.num_vertices(), a))))
}

/// Checks a-resistance. On failure returns the lexicographically first
/// attack set after which no component holds every color.
pub fn check_resistant(
    g: &Graph,
    kappa: &Multicoloring,
    a: usize,
) -> Result<(bool, Option<VertexSet>)> {
    validate(g, kappa, a)?;
    let kernel = Kernel::new(g, kappa);
    let (_, res, _) = scan(&kernel, a, false, true, 1)?;
    Ok((res.is_none(), res.map(|r| witness(r, g.num_vertices(), a))))
}

pub fn check_highly(g: &Graph, kappa: &Multicoloring, a: usize) -> Result<CheckReport> {
    check_highly_with_threads(g, kappa, a, 1)
}

/// [`check_highly`] with the attack enumeration split across `threads`
/// workers (`0` = all cores). The report does not depend on `threads`.
pub fn check_highly_with_threads(
    g: &Graph,
    kappa: &Multicoloring,
    a: usize,
    threads: usize,
) -> Result<CheckReport> {
    validate(g, kappa, a)?;
    let threads = crate::resolve_threads(threads);
    let kernel = Kernel::new(g, kappa);
    let (hr, res, total) = scan(&kernel, a, true, true, threads)?;
    let n = g.num_vertices();
    let attack_sets_examined = match (hr, res) {
        (Some(h), Some(r)) => h.max(r) + 1,
        _ => total,
    };
    Ok(CheckReport {
        attackers: a,
        hr_holds: hr.is_none(),
        hr_witness: hr.map(|r| witness(r, n, a)),
        resistant: res.is_none(),
        resistance_witness: res.map(|r| witness(r, n, a)),
        highly_resistant: hr.is_none() && res.is_none(),
        attack_sets_examined,
    })
}

/// True when the vertices of `attack` jointly hold every color.
pub fn replay_hr_violation(kappa: &Multicoloring, attack: &VertexSet) -> bool {
    kappa.has_all_colors(attack)
}

/// True when no component of `G \ M(attack)` holds every color.
pub fn replay_resistance_failure(
    g: &Graph,
    kappa: &Multicoloring,
    attack: &VertexSet,
) -> Result<bool> {
    let removed = g.closed_neighborhood_set(attack)?;
    let comps = g.surviving_components(&removed)?;
    Ok(!comps.iter().any(|c| kappa.has_all_colors(c)))
}

/// `¬(a_hr-HR) ∨ ¬(r-resistant)`: true when the instance satisfies the
/// "HR fails or resistance fails" conclusion.
pub fn lemma_disjunction(
    g: &Graph,
    kappa: &Multicoloring,
    a_hr: usize,
    r: usize,
) -> Result<bool> {
    validate(g, kappa, a_hr)?;
    validate(g, kappa, r)?;
    let kernel = Kernel::new(g, kappa);
    let (hr, _, _) = scan(&kernel, a_hr, true, false, 1)?;
    if hr.is_some() {
        return Ok(true);
    }
    let (_, res, _) = scan(&kernel, r, false, true, 1)?;
    Ok(res.is_some())
}

pub fn sample_check(
    g: &Graph,
    kappa: &Multicoloring,
    a: usize,
    trials: u64,
    seed: u64,
) -> Result<SampleReport> {
    sample_check_with_threads(g, kappa, a, trials, seed, 1)
}

/// Samples `trials` attack sets uniformly. Trials are grouped in chunks of
/// [`SAMPLE_CHUNK`]; chunk `i` draws from ChaCha8 stream `i` of `seed`, so
/// the report is the same for every thread count.
pub fn sample_check_with_threads(
    g: &Graph,
    kappa: &Multicoloring,
    a: usize,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<SampleReport> {
    validate(g, kappa, a)?;
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let threads = crate::resolve_threads(threads);
    let n = g.num_vertices();
    let kernel = Kernel::new(g, kappa);

    struct ChunkResult {
        hr_failures: u64,
        res_failures: u64,
        first_hr: Option<Vec<usize>>,
        first_res: Option<Vec<usize>>,
    }

    let run_chunk = |ci: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ci);
        let count = SAMPLE_CHUNK.min(trials - ci * SAMPLE_CHUNK);
        let mut scratch = kernel.scratch();
        let mut out = ChunkResult {
            hr_failures: 0,
            res_failures: 0,
            first_hr: None,
            first_res: None,
        };
        for _ in 0..count {
            let mut attack = index::sample(&mut rng, n, a).into_vec();
            attack.sort_unstable();
            if kernel.covers_palette(&attack) {
                out.hr_failures += 1;
                out.first_hr.get_or_insert_with(|| attack.clone());
            }
            if !kernel.has_full_component(&attack, &mut scratch) {
                out.res_failures += 1;
                out.first_res.get_or_insert_with(|| attack.clone());
            }
        }
        out
    };

    let chunks = trials.div_ceil(SAMPLE_CHUNK);
    let results: Vec<ChunkResult> = if threads <= 1 {
        (0..chunks).map(run_chunk).collect()
    } else {
        run_with_threads(threads, || (0..chunks).into_par_iter().map(run_chunk).collect())
    };

    let to_set = |v: Vec<usize>| VertexSet::from_vertices(n, v).expect("sampled vertices are in range");
    let first_hr_failure = results.iter().find_map(|r| r.first_hr.clone()).map(to_set);
    let first_resistance_failure = results.iter().find_map(|r| r.first_res.clone()).map(to_set);
    if let Some(w) = &first_hr_failure {
        assert!(replay_hr_violation(kappa, w), "sampled HR failure {w} does not replay");
    }
    if let Some(w) = &first_resistance_failure {
        assert!(
            replay_resistance_failure(g, kappa, w)?,
            "sampled resistance failure {w} does not replay"
        );
    }
    Ok(SampleReport {
        attackers: a,
        trials,
        hr_failures: results.iter().map(|r| r.hr_failures).sum(),
        resistance_failures: results.iter().map(|r| r.res_failures).sum(),
        first_hr_failure,
        first_resistance_failure,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColorSet;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    fn k2() -> (Graph, Multicoloring) {
        (
            Graph::complete(2),
            Multicoloring::from_one_based(2, [vec![1], vec![2]]).unwrap(),
        )
    }

    fn two_k2() -> (Graph, Multicoloring) {
        (
            Graph::new(4, [(0, 1), (2, 3)]).unwrap(),
            Multicoloring::from_one_based(2, [vec![1], vec![2], vec![1], vec![2]]).unwrap(),
        )
    }

    #[test]
    fn combination_order() {
        let mut comb = vec![0, 1];
        let mut all = vec![comb.clone()];
        while next_combination(&mut comb, 4) {
            all.push(comb.clone());
        }
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        for (r, c) in all.iter().enumerate() {
            assert_eq!(&unrank(r as u64, 4, 2), c);
        }
        assert_eq!(binomial(14, 3).unwrap(), 364);
        assert_eq!(binomial(21, 4).unwrap(), 5985);
        assert_eq!(binomial(36, 5).unwrap(), 376_992);
        assert!(binomial(200, 100).is_err());
    }

    #[test]
    fn hr_examples() {
        let (g, kappa) = k2();
        assert_eq!(check_hr(&g, &kappa, 2).unwrap(), (false, Some(set(2, &[0, 1]))));
        let empty = Multicoloring::empty(1, 5).unwrap();
        let c5 = Graph::cycle(5).unwrap();
        for a in 1..=5 {
            assert_eq!(check_hr(&c5, &empty, a).unwrap(), (true, None));
        }
    }

    #[test]
    fn resistance_examples() {
        let (g, kappa) = two_k2();
        assert_eq!(check_resistant(&g, &kappa, 1).unwrap(), (true, None));
        let (g, kappa) = k2();
        assert_eq!(check_resistant(&g, &kappa, 1).unwrap(), (false, Some(set(2, &[0]))));
    }

    #[test]
    fn argument_errors() {
        let (g, kappa) = k2();
        assert!(matches!(check_hr(&g, &kappa, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(check_hr(&g, &kappa, 3), Err(Error::InvalidArgument(_))));
        let short = Multicoloring::from_one_based(2, [vec![1]]).unwrap();
        assert_eq!(
            check_resistant(&g, &short, 1),
            Err(Error::LengthMismatch { coloring: 1, graph: 2 })
        );
        let no_palette = Multicoloring::empty(0, 2).unwrap();
        assert_eq!(check_highly(&g, &no_palette, 1), Err(Error::EmptyPalette));
    }

    #[test]
    fn report_fields_when_both_fail() {
        let (g, kappa) = k2();
        let report = check_highly(&g, &kappa, 1).unwrap();
        // {0} and {1} each hold one color only, so HR holds for a = 1.
        assert!(report.hr_holds);
        assert!(!report.resistant);
        assert_eq!(report.attack_sets_examined, 2);

        let report = check_highly(&g, &kappa, 2).unwrap();
        assert!(!report.hr_holds && !report.resistant);
        assert_eq!(report.hr_witness, Some(set(2, &[0, 1])));
        assert_eq!(report.resistance_witness, Some(set(2, &[0, 1])));
        assert_eq!(report.attack_sets_examined, 1);
    }

    #[test]
    fn isolated_full_vertex() {
        // Vertex 2 holds every color and survives any attack on the edge.
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let kappa = Multicoloring::new(2, vec![ColorSet::EMPTY, ColorSet::EMPTY, ColorSet::full(2)])
            .unwrap();
        let report = check_highly(&g, &kappa, 1).unwrap();
        assert!(!report.hr_holds);
        assert_eq!(report.hr_witness, Some(set(3, &[2])));
        assert_eq!(report.resistance_witness, Some(set(3, &[2])));
    }

    #[test]
    fn lemma_disjunction_examples() {
        let c7 = Graph::cycle(7).unwrap();
        let empty = Multicoloring::empty(6, 7).unwrap();
        assert!(lemma_disjunction(&c7, &empty, 3, 1).unwrap());
        let mut lists = vec![vec![]; 7];
        lists[2] = (1..=6).collect();
        let rich = Multicoloring::from_one_based(6, lists).unwrap();
        assert!(!check_hr(&c7, &rich, 3).unwrap().0);
        assert!(lemma_disjunction(&c7, &rich, 3, 1).unwrap());
    }

    #[test]
    fn sample_examples() {
        let (g, kappa) = k2();
        let report = sample_check(&g, &kappa, 1, 10, 0).unwrap();
        assert_eq!(report.resistance_failures, 10);
        assert_eq!(report.hr_failures, 0);
        assert_eq!(report, sample_check(&g, &kappa, 1, 10, 0).unwrap());
        assert!(sample_check(&g, &kappa, 1, 0, 0).is_err());
    }

    #[test]
    fn sample_reports_ignore_thread_count() {
        let g = Graph::cycle(12).unwrap();
        let kappa =
            Multicoloring::from_one_based(3, (0..12).map(|v| vec![v % 3 + 1])).unwrap();
        let one = sample_check_with_threads(&g, &kappa, 3, 5000, 9, 1).unwrap();
        let four = sample_check_with_threads(&g, &kappa, 3, 5000, 9, 4).unwrap();
        assert_eq!(one, four);
        assert!(one.hr_failures > 0);
    }
}
