//! Randomized checks of "HR fails or resistance fails" statements.
//!
//! Each lemma id fixes a family of graphs, a palette size, the HR attacker
//! count `a_hr` and the resistance attacker count `r`. The statement claims
//! that every coloring of every graph in the family fails one of the two
//! conditions; [`verify_lemma`] samples instances and reports any that
//! satisfy both, which would be a counterexample.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::checker::{lemma_disjunction, run_with_threads};
use crate::coloring::{ColorSet, Multicoloring};
use crate::constructions::ColoredInstance;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Trials per RNG stream.
pub const LEMMA_CHUNK: u64 = 1024;

pub const LEMMA_IDS: [u32; 7] = [4, 5, 7, 9, 10, 11, 12];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    /// The cycle on `n` vertices.
    Cycle(usize),
    /// All graphs with `min_n..=max_n` vertices, optionally excluding the
    /// cycle on `max_n` vertices.
    UpTo {
        min_n: usize,
        max_n: usize,
        exclude_cycle: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaletteChoice {
    Fixed(usize),
    /// Uniform in `1..=k`.
    UpTo(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaScope {
    pub id: u32,
    pub family: GraphFamily,
    pub palette: PaletteChoice,
    pub a_hr: usize,
    pub r: usize,
}

impl fmt::Display for LemmaScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let graphs = match self.family {
            GraphFamily::Cycle(n) => format!("C{n}"),
            GraphFamily::UpTo {
                min_n,
                max_n,
                exclude_cycle,
            } => {
                let ex = if exclude_cycle { format!(" except C{max_n}") } else { String::new() };
                format!("graphs on {min_n}..={max_n} vertices{ex}")
            }
        };
        let k = match self.palette {
            PaletteChoice::Fixed(k) => format!("k={k}"),
            PaletteChoice::UpTo(k) => format!("k in 1..={k}"),
        };
        write!(
            f,
            "lemma {}: {graphs}, {k}: not {}-HR or not {}-resistant",
            self.id, self.a_hr, self.r
        )
    }
}

/// Scope bound to a lemma id. Graph sizes start at `max(a_hr, r)` so both
/// conditions are defined.
pub fn scope(id: u32) -> Result<LemmaScope> {
    let up_to = |max_n, exclude_cycle, a_hr: usize, r: usize| GraphFamily::UpTo {
        min_n: a_hr.max(r),
        max_n,
        exclude_cycle,
    };
    let (family, palette, a_hr, r) = match id {
        4 => (up_to(7, true, 3, 1), PaletteChoice::UpTo(8), 3, 1),
        5 => (GraphFamily::Cycle(7), PaletteChoice::Fixed(6), 3, 1),
        7 => (up_to(8, true, 4, 1), PaletteChoice::UpTo(9), 4, 1),
        9 => (GraphFamily::Cycle(8), PaletteChoice::Fixed(9), 4, 1),
        10 => (up_to(8, false, 4, 1), PaletteChoice::Fixed(9), 4, 1),
        11 => (up_to(12, false, 4, 2), PaletteChoice::Fixed(9), 4, 2),
        12 => (up_to(16, false, 4, 3), PaletteChoice::Fixed(9), 4, 3),
        _ => {
            return Err(Error::invalid(format!(
                "unknown lemma id {id}; valid ids: 4, 5, 7, 9, 10, 11, 12"
            )))
        }
    };
    Ok(LemmaScope {
        id,
        family,
        palette,
        a_hr,
        r,
    })
}

/// `G(n, 1/2)` on `n` vertices.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("random edges are simple")
}

/// Each (vertex, color) membership drawn independently with probability `density`.
pub fn random_coloring<R: Rng>(rng: &mut R, n: usize, k: usize, density: f64) -> Multicoloring {
    let assignment = (0..n)
        .map(|_| {
            (0..k).fold(ColorSet::EMPTY, |s, c| {
                if rng.random_bool(density) {
                    s.with(c)
                } else {
                    s
                }
            })
        })
        .collect();
    Multicoloring::new(k, assignment).expect("colors within palette")
}

impl LemmaScope {
    /// Draws one instance from the scope.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> (Graph, Multicoloring) {
        let graph = match self.family {
            GraphFamily::Cycle(n) => Graph::cycle(n).expect("cycle length >= 3"),
            GraphFamily::UpTo {
                min_n,
                max_n,
                exclude_cycle,
            } => loop {
                let n = rng.random_range(min_n..=max_n);
                let g = random_graph(rng, n, 0.5);
                if !(exclude_cycle && n == max_n && g.is_cycle()) {
                    break g;
                }
            },
        };
        let k = match self.palette {
            PaletteChoice::Fixed(k) => k,
            PaletteChoice::UpTo(k) => rng.random_range(1..=k),
        };
        // 10% of trials probe sparse and dense colorings.
        let density = if rng.random_bool(0.1) {
            if rng.random_bool(0.5) {
                0.25
            } else {
                0.75
            }
        } else {
            0.5
        };
        let coloring = random_coloring(rng, graph.num_vertices(), k, density);
        (graph, coloring)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: u32,
    pub trials: u64,
    pub seed: u64,
    /// Instances where the HR condition fails.
    pub hr_failures: u64,
    /// Instances where HR holds but resistance fails.
    pub resistance_failures: u64,
    /// Instances where both conditions hold.
    pub violations: u64,
    /// Trial index of the first violation.
    pub first_violation_trial: Option<u64>,
    #[serde(skip)]
    pub first_violation: Option<ColoredInstance>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Samples `trials` instances from the lemma's scope and evaluates the
/// disjunction on each. Trial chunks of [`LEMMA_CHUNK`] use ChaCha8 stream
/// `chunk index` of `seed`, so the report does not depend on `threads`.
pub fn verify_lemma(id: u32, trials: u64, seed: u64, threads: usize) -> Result<LemmaReport> {
    let scope = scope(id)?;
    let threads = crate::resolve_threads(threads);

    struct Partial {
        hr: u64,
        res: u64,
        violations: u64,
        first: Option<(u64, Graph, Multicoloring)>,
    }

    let run_chunk = |ci: u64| -> Result<Partial> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ci);
        let start = ci * LEMMA_CHUNK;
        let end = (start + LEMMA_CHUNK).min(trials);
        let mut p = Partial {
            hr: 0,
            res: 0,
            violations: 0,
            first: None,
        };
        for t in start..end {
            let (g, kappa) = scope.sample(&mut rng);
            let hr_fails = !crate::checker::check_hr(&g, &kappa, scope.a_hr)?.0;
            if hr_fails {
                p.hr += 1;
            } else if lemma_disjunction(&g, &kappa, scope.a_hr, scope.r)? {
                p.res += 1;
            } else {
                p.violations += 1;
                if p.first.is_none() {
                    p.first = Some((t, g, kappa));
                }
            }
        }
        Ok(p)
    };

    let chunks = trials.div_ceil(LEMMA_CHUNK);
    let partials: Vec<Partial> = if threads <= 1 {
        (0..chunks).map(run_chunk).collect::<Result<_>>()?
    } else {
        run_with_threads(threads, || {
            (0..chunks).into_par_iter().map(run_chunk).collect::<Result<_>>()
        })?
    };

    let first = partials.iter().find_map(|p| p.first.clone());
    let first_violation_trial = first.as_ref().map(|(t, _, _)| *t);
    let first_violation = first
        .map(|(t, g, kappa)| {
            ColoredInstance::new(
                Some(format!("lemma-{id}-seed-{seed}-trial-{t}")),
                g,
                kappa,
                Some(scope.a_hr),
            )
        })
        .transpose()?;
    Ok(LemmaReport {
        lemma: id,
        trials,
        seed,
        hr_failures: partials.iter().map(|p| p.hr).sum(),
        resistance_failures: partials.iter().map(|p| p.res).sum(),
        violations: partials.iter().map(|p| p.violations).sum(),
        first_violation_trial,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes() {
        for id in LEMMA_IDS {
            let s = scope(id).unwrap();
            assert!(s.a_hr >= s.r);
        }
        assert!(scope(6).is_err());
        assert_eq!(scope(5).unwrap().family, GraphFamily::Cycle(7));
        assert_eq!(
            scope(12).unwrap().to_string(),
            "lemma 12: graphs on 4..=16 vertices, k=9: not 4-HR or not 3-resistant"
        );
    }

    #[test]
    fn samples_respect_scope() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = scope(4).unwrap();
        for _ in 0..500 {
            let (g, kappa) = s.sample(&mut rng);
            assert!((3..=7).contains(&g.num_vertices()));
            assert!(!(g.num_vertices() == 7 && g.is_cycle()));
            assert!((1..=8).contains(&kappa.palette_size()));
            assert_eq!(kappa.len(), g.num_vertices());
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = verify_lemma(5, 3000, 1, 1).unwrap();
        let b = verify_lemma(5, 3000, 1, 3).unwrap();
        assert_eq!(
            (a.hr_failures, a.resistance_failures, a.violations),
            (b.hr_failures, b.resistance_failures, b.violations)
        );
        assert_eq!(a.hr_failures + a.resistance_failures + a.violations, 3000);
        assert!(a.passed());
    }
}
