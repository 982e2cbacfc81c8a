//! Bounded search for highly a-resistant k-multicolorings.
//!
//! A coloring is searched as a nondecreasing sequence of `k` color classes
//! (vertex masks compared numerically). Every coloring has exactly one such
//! sequence, its canonical form, so the `k!` color permutations are visited
//! once.
//!
//! Pruning uses resistance: if after some attack no surviving component meets
//! every class chosen so far, no choice of the remaining classes can repair
//! it. The HR condition only gets easier as classes are added, so it is
//! checked at full assignments.

mod table;

pub use table::{k_table, k_table_with, lookup, KEntry, KValue, Provenance, VertexRange};

use serde::Serialize;

use crate::checker::{check_highly, next_combination, validate};
use crate::coloring::{Multicoloring, MAX_PALETTE};
use crate::constructions::ColoredInstance;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest graph `decide` accepts; class values range over `2^n` masks.
pub const MAX_SEARCH_VERTICES: usize = 24;
/// Largest order for [`exhaustive_nonexistence`].
pub const MAX_ENUMERATION_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat(Multicoloring),
    Unsat,
    /// The node budget ran out before the search space was exhausted.
    Unknown,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Sat(_) => "sat",
            Outcome::Unsat => "unsat",
            Outcome::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    #[serde(serialize_with = "serialize_outcome")]
    pub outcome: Outcome,
    pub attackers: usize,
    pub palette_size: usize,
    /// Class choices tried, including pruned ones.
    pub nodes_expanded: u64,
    pub budget: u64,
    pub policy: &'static str,
}

fn serialize_outcome<S: serde::Serializer>(
    outcome: &Outcome,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Outcome", 2)?;
    st.serialize_field("verdict", outcome.label())?;
    match outcome {
        Outcome::Sat(w) => st.serialize_field("witness", w)?,
        _ => st.serialize_field("witness", &None::<()>)?,
    }
    st.end()
}

impl Decision {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, Outcome::Sat(_))
    }

    pub fn witness(&self) -> Option<&Multicoloring> {
        match &self.outcome {
            Outcome::Sat(w) => Some(w),
            _ => None,
        }
    }
}

/// Callbacks for [`walk_canonical`].
pub(crate) trait ClassVisitor {
    /// `value` was chosen for class `depth`; return false to prune the branch.
    fn push(&mut self, depth: usize, value: u64) -> bool;
    fn pop(&mut self, depth: usize);
    /// A full assignment; return true to stop the walk.
    fn leaf(&mut self, classes: &[u64]) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum WalkEnd {
    Exhausted,
    Stopped,
    BudgetExceeded,
}

struct Walk<'v, V> {
    values: u64,
    k: usize,
    budget: u64,
    nodes: u64,
    classes: Vec<u64>,
    visitor: &'v mut V,
}

impl<V: ClassVisitor> Walk<'_, V> {
    fn descend(&mut self, depth: usize, from: u64) -> WalkEnd {
        for value in from..self.values {
            if self.nodes >= self.budget {
                return WalkEnd::BudgetExceeded;
            }
            self.nodes += 1;
            if !self.visitor.push(depth, value) {
                continue;
            }
            self.classes.push(value);
            let end = if depth + 1 == self.k {
                if self.visitor.leaf(&self.classes) {
                    WalkEnd::Stopped
                } else {
                    WalkEnd::Exhausted
                }
            } else {
                self.descend(depth + 1, value)
            };
            self.classes.pop();
            self.visitor.pop(depth);
            if end != WalkEnd::Exhausted {
                return end;
            }
        }
        WalkEnd::Exhausted
    }
}

/// Visits nondecreasing sequences of `k` masks over `n` bits.
pub(crate) fn walk_canonical<V: ClassVisitor>(
    n: usize,
    k: usize,
    budget: u64,
    visitor: &mut V,
) -> (WalkEnd, u64) {
    let mut walk = Walk {
        values: 1u64 << n,
        k,
        budget,
        nodes: 0,
        classes: Vec::with_capacity(k),
        visitor,
    };
    let end = if k == 0 {
        if walk.visitor.leaf(&[]) {
            WalkEnd::Stopped
        } else {
            WalkEnd::Exhausted
        }
    } else {
        walk.descend(0, 0)
    };
    (end, walk.nodes)
}

/// Number of canonical class sequences for `n` vertices and `k` colors,
/// counted by walking them without pruning.
pub fn count_canonical_leaves(n: usize, k: usize) -> u64 {
    struct Count(u64);
    impl ClassVisitor for Count {
        fn push(&mut self, _: usize, _: u64) -> bool {
            true
        }
        fn pop(&mut self, _: usize) {}
        fn leaf(&mut self, _: &[u64]) -> bool {
            self.0 += 1;
            false
        }
    }
    assert!(n < 16, "leaf counting is meant for tiny n");
    let mut count = Count(0);
    walk_canonical(n, k, u64::MAX, &mut count);
    count.0
}

/// Search state: per attack, which surviving components still meet every
/// class chosen so far.
struct Pruner {
    /// Component masks per attack, in attack rank order.
    components: Vec<Vec<u64>>,
    /// Attack sets as vertex masks.
    attacks: Vec<u64>,
    /// `viable[d][i]`: bitmask over `components[i]` after `d` classes.
    viable: Vec<Vec<u64>>,
    found: Option<Vec<u64>>,
}

impl Pruner {
    fn new(g: &Graph, a: usize) -> Self {
        let n = g.num_vertices();
        let mut components = Vec::new();
        let mut attacks = Vec::new();
        let mut comb: Vec<usize> = (0..a).collect();
        loop {
            let attack = VertexSet::from_vertices(n, comb.iter().copied()).expect("in range");
            let removed = g.closed_neighborhood_set(&attack).expect("capacity matches");
            let comps = g.surviving_components(&removed).expect("capacity matches");
            components.push(comps.iter().map(VertexSet::low_mask).collect::<Vec<_>>());
            attacks.push(attack.low_mask());
            if !next_combination(&mut comb, n) {
                break;
            }
        }
        let root = components
            .iter()
            .map(|c| if c.len() == 64 { u64::MAX } else { (1u64 << c.len()) - 1 })
            .collect();
        Pruner {
            components,
            attacks,
            viable: vec![root],
            found: None,
        }
    }

    fn hr_holds(&self, classes: &[u64]) -> bool {
        !self
            .attacks
            .iter()
            .any(|&att| classes.iter().all(|&c| c & att != 0))
    }
}

impl ClassVisitor for Pruner {
    fn push(&mut self, depth: usize, value: u64) -> bool {
        let prev = &self.viable[depth];
        let mut next = Vec::with_capacity(prev.len());
        for (comps, &alive) in self.components.iter().zip(prev) {
            let mut keep = 0u64;
            let mut bits = alive;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if comps[i] & value != 0 {
                    keep |= 1 << i;
                }
            }
            if keep == 0 {
                return false;
            }
            next.push(keep);
        }
        self.viable.push(next);
        true
    }

    fn pop(&mut self, _: usize) {
        self.viable.pop();
    }

    fn leaf(&mut self, classes: &[u64]) -> bool {
        if self.hr_holds(classes) {
            self.found = Some(classes.to_vec());
            true
        } else {
            false
        }
    }
}

fn classes_to_coloring(n: usize, classes: &[u64]) -> Multicoloring {
    let mut lists = vec![Vec::new(); n];
    for (c, &mask) in classes.iter().enumerate() {
        for (v, list) in lists.iter_mut().enumerate() {
            if mask >> v & 1 == 1 {
                list.push(c + 1);
            }
        }
    }
    Multicoloring::from_one_based(classes.len(), lists).expect("classes fit the palette")
}

fn validate_search(g: &Graph, a: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::EmptyPalette);
    }
    if k > MAX_PALETTE {
        return Err(Error::PaletteTooLarge(k));
    }
    validate(g, &Multicoloring::empty(k, g.num_vertices())?, a)?;
    if g.num_vertices() > MAX_SEARCH_VERTICES {
        return Err(Error::invalid(format!(
            "search supports at most {MAX_SEARCH_VERTICES} vertices, got {}",
            g.num_vertices()
        )));
    }
    Ok(())
}

/// Decides whether `g` admits a highly a-resistant k-multicoloring, expanding
/// at most `budget` search nodes.
///
/// `k ≤ a` is answered Unsat without search: resistance needs every color
/// on some vertex, and then at most `k` vertices already cover the palette.
pub fn decide(g: &Graph, a: usize, k: usize, budget: u64) -> Result<Decision> {
    validate_search(g, a, k)?;
    let decision = |outcome, nodes_expanded| Decision {
        outcome,
        attackers: a,
        palette_size: k,
        nodes_expanded,
        budget,
        policy: "sequential",
    };
    if k <= a {
        return Ok(decision(Outcome::Unsat, 0));
    }
    let n = g.num_vertices();
    let mut pruner = Pruner::new(g, a);
    let (end, nodes) = walk_canonical(n, k, budget, &mut pruner);
    let outcome = match end {
        WalkEnd::Stopped => {
            let classes = pruner.found.expect("stopped walks record a witness");
            let witness = classes_to_coloring(n, &classes);
            let report = check_highly(g, &witness, a)?;
            assert!(
                report.highly_resistant,
                "search witness failed certification: {report:?}"
            );
            Outcome::Sat(witness)
        }
        WalkEnd::Exhausted => Outcome::Unsat,
        WalkEnd::BudgetExceeded => Outcome::Unknown,
    };
    Ok(decision(outcome, nodes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinColorsOutcome {
    Found(usize),
    /// Every `k` in `a+1..=k_max` was Unsat.
    NoneUpTo(usize),
    /// Some `k` ran out of budget before any Sat.
    Unknown,
}

#[derive(Debug, Clone)]
pub struct MinColors {
    pub outcome: MinColorsOutcome,
    /// One decision per `k` tried, in increasing `k`.
    pub trail: Vec<Decision>,
}

/// Smallest `k` in `a+1..=k_max` for which [`decide`] finds a coloring.
/// Each `k` gets its own `budget`.
pub fn min_colors(g: &Graph, a: usize, k_max: usize, budget: u64) -> Result<MinColors> {
    if k_max == 0 {
        return Err(Error::invalid("k_max must be at least 1"));
    }
    validate_search(g, a, 1)?;
    let mut trail = Vec::new();
    let mut saw_unknown = false;
    for k in a + 1..=k_max {
        let d = decide(g, a, k, budget)?;
        let outcome = d.outcome.clone();
        trail.push(d);
        match outcome {
            Outcome::Sat(_) if !saw_unknown => {
                return Ok(MinColors {
                    outcome: MinColorsOutcome::Found(k),
                    trail,
                })
            }
            Outcome::Sat(_) => break,
            Outcome::Unknown => saw_unknown = true,
            Outcome::Unsat => {}
        }
    }
    let outcome = if saw_unknown {
        MinColorsOutcome::Unknown
    } else {
        MinColorsOutcome::NoneUpTo(k_max)
    };
    Ok(MinColors { outcome, trail })
}

#[derive(Debug, Clone)]
pub enum NonexistenceOutcome {
    /// No labeled graph admits a coloring for any `k` in `a+1..=k_max`.
    AllUnsat,
    FoundSat(ColoredInstance),
    /// The budget ran out on this graph and palette size.
    Unknown { graph: Graph, k: usize },
}

#[derive(Debug, Clone)]
pub struct NonexistenceSummary {
    pub n: usize,
    pub attackers: usize,
    pub k_max: usize,
    pub graphs_examined: u64,
    pub decisions: u64,
    pub nodes_expanded: u64,
    pub outcome: NonexistenceOutcome,
}

/// Labeled graph number `index`: bit `i` selects the `i`-th pair of
/// `(u, v), u < v` in lexicographic order.
pub fn labeled_graph(n: usize, index: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs
        .enumerate()
        .filter(|(i, _)| index >> i & 1 == 1)
        .map(|(_, e)| e);
    Graph::new(n, edges).expect("pairs are distinct")
}

/// Runs [`decide`] on every labeled graph with `n` vertices and every
/// `k` in `a+1..=k_max`, stopping at the first Sat or Unknown.
pub fn exhaustive_nonexistence(
    n: usize,
    a: usize,
    k_max: usize,
    budget: u64,
) -> Result<NonexistenceSummary> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::invalid(format!(
            "labeled-graph enumeration is limited to n <= {MAX_ENUMERATION_VERTICES}, got {n}"
        )));
    }
    if a == 0 || a > n {
        return Err(Error::invalid(format!(
            "attacker count must satisfy 1 <= a <= n = {n}, got {a}"
        )));
    }
    if k_max < a + 1 {
        return Err(Error::invalid(format!("k_max must be at least a + 1 = {}", a + 1)));
    }
    let pairs = n * (n - 1) / 2;
    let mut summary = NonexistenceSummary {
        n,
        attackers: a,
        k_max,
        graphs_examined: 0,
        decisions: 0,
        nodes_expanded: 0,
        outcome: NonexistenceOutcome::AllUnsat,
    };
    for index in 0..1u64 << pairs {
        let g = labeled_graph(n, index);
        summary.graphs_examined += 1;
        for k in a + 1..=k_max {
            let d = decide(&g, a, k, budget)?;
            summary.decisions += 1;
            summary.nodes_expanded += d.nodes_expanded;
            match d.outcome {
                Outcome::Unsat => {}
                Outcome::Sat(coloring) => {
                    let name = format!("labeled-{n}-{index}");
                    let inst = ColoredInstance::new(Some(name), g, coloring, Some(a))?;
                    summary.outcome = NonexistenceOutcome::FoundSat(inst);
                    return Ok(summary);
                }
                Outcome::Unknown => {
                    summary.outcome = NonexistenceOutcome::Unknown { graph: g, k };
                    return Ok(summary);
                }
            }
        }
    }
    Ok(summary)
}
