//! Colored graphs that are highly a-resistant with few colors.
//!
//! Vertex numbering: components are laid out consecutively, each cycle in
//! traversal order, with any path appended last.

use crate::checker::{check_highly, CheckReport};
use crate::coloring::{ColorSet, Multicoloring, MAX_PALETTE};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph together with a multicoloring and, optionally, the attacker count
/// it is meant to withstand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredInstance {
    pub name: Option<String>,
    pub graph: Graph,
    pub coloring: Multicoloring,
    pub attackers: Option<usize>,
}

impl ColoredInstance {
    pub fn new(
        name: Option<String>,
        graph: Graph,
        coloring: Multicoloring,
        attackers: Option<usize>,
    ) -> Result<Self> {
        if coloring.len() != graph.num_vertices() {
            return Err(Error::LengthMismatch {
                coloring: coloring.len(),
                graph: graph.num_vertices(),
            });
        }
        Ok(ColoredInstance {
            name,
            graph,
            coloring,
            attackers,
        })
    }

    pub fn palette_size(&self) -> usize {
        self.coloring.palette_size()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    /// Runs the exhaustive check with the instance's own attacker count.
    pub fn certify(&self) -> Result<CheckReport> {
        let a = self
            .attackers
            .ok_or_else(|| Error::invalid("instance has no attacker count"))?;
        check_highly(&self.graph, &self.coloring, a)
    }
}

/// Where a catalog entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Graph and coloring given explicitly in the literature.
    PaperConstruction,
    /// Checker-certified instance matching published (a, n, k) parameters.
    DerivedRealization,
}

impl Origin {
    pub fn label(self) -> &'static str {
        match self {
            Origin::PaperConstruction => "paper construction",
            Origin::DerivedRealization => "derived realization",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub origin: Origin,
    pub instance: ColoredInstance,
}

/// `a + 1` disjoint copies of `K_{a+1}`; inside each clique the vertices get
/// the singleton colors `{1}, …, {a+1}` in order. Highly a-resistant with
/// `k = a + 1` on `n = (a+1)²` vertices.
pub fn clique_partition(a: usize) -> Result<ColoredInstance> {
    if a == 0 {
        return Err(Error::invalid("clique partition needs a >= 1"));
    }
    let k = a + 1;
    if k > MAX_PALETTE {
        return Err(Error::PaletteTooLarge(k));
    }
    let clique = Graph::complete(k);
    let graph = (1..k).fold(clique.clone(), |g, _| g.disjoint_union(&clique));
    let assignment = (0..k * k).map(|v| ColorSet::EMPTY.with(v % k)).collect();
    let coloring = Multicoloring::new(k, assignment)?;
    ColoredInstance::new(Some(format!("clique-partition:{a}")), graph, coloring, Some(a))
}

/// Maps `x` into the 1-based palette `1..=m`.
fn wrap(x: usize, m: usize) -> usize {
    (x - 1) % m + 1
}

/// Two disjoint 7-cycles; the `i`-th vertex of each (`i = 1..=7`) gets
/// `{i, i+3}` with colors taken modulo 7. Highly 3-resistant, `k = 7`.
pub fn paper_c7_pair() -> ColoredInstance {
    let c7 = Graph::cycle(7).expect("7-cycle");
    let graph = c7.disjoint_union(&c7);
    let lists = (0..14).map(|v| {
        let i = v % 7 + 1;
        [i, wrap(i + 3, 7)]
    });
    let coloring = Multicoloring::from_one_based(7, lists).expect("colors lie in 1..=7");
    ColoredInstance::new(Some("paper-14".into()), graph, coloring, Some(3))
        .expect("lengths agree")
}

/// Two 8-cycles and a 5-vertex path. The `j`-th vertex of every component
/// gets `{j, j+3}` (modulo 8) plus color 9 when `j` is odd, 10 when even.
/// Highly 4-resistant, `k = 10`, `n = 21`.
pub fn paper_c8c8p5() -> ColoredInstance {
    let c8 = Graph::cycle(8).expect("8-cycle");
    let graph = c8.disjoint_union(&c8).disjoint_union(&Graph::path(5));
    let color = |j: usize| [j, wrap(j + 3, 8), if j % 2 == 1 { 9 } else { 10 }];
    let lists = (1..=8)
        .chain(1..=8)
        .chain(1..=5)
        .map(color);
    let coloring = Multicoloring::from_one_based(10, lists).expect("colors lie in 1..=10");
    ColoredInstance::new(Some("paper-21".into()), graph, coloring, Some(4))
        .expect("lengths agree")
}

/// Every named construction: `clique_partition(1..=5)`, the 14-vertex and
/// the 21-vertex instances.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (1..=5)
        .map(|a| CatalogEntry {
            origin: Origin::DerivedRealization,
            instance: clique_partition(a).expect("small clique partition"),
        })
        .collect();
    out.push(CatalogEntry {
        origin: Origin::PaperConstruction,
        instance: paper_c7_pair(),
    });
    out.push(CatalogEntry {
        origin: Origin::PaperConstruction,
        instance: paper_c8c8p5(),
    });
    out
}

/// Family names accepted by [`by_name`].
pub const FAMILY_NAMES: &str = "clique-partition:<a>, paper-14, paper-21";

/// Looks up a construction by its stable identifier.
pub fn by_name(name: &str) -> Result<ColoredInstance> {
    match name {
        "paper-14" => Ok(paper_c7_pair()),
        "paper-21" => Ok(paper_c8c8p5()),
        _ => {
            let a = name
                .strip_prefix("clique-partition:")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| {
                    Error::invalid(format!(
                        "unknown construction family '{name}'; valid names: {FAMILY_NAMES}"
                    ))
                })?;
            clique_partition(a)
        }
    }
}
