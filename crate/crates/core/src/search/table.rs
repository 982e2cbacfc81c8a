//! Known values of `K(a, n)`, the fewest colors any `n`-vertex graph needs
//! for a highly a-resistant multicoloring, tagged with what backs each row.

use std::fmt;

use serde::Serialize;

use super::{exhaustive_nonexistence, NonexistenceOutcome};
use crate::constructions::by_name;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexRange {
    pub min: usize,
    pub max: Option<usize>,
}

impl VertexRange {
    fn at_most(max: usize) -> Self {
        VertexRange { min: 1, max: Some(max) }
    }

    fn at_least(min: usize) -> Self {
        VertexRange { min, max: None }
    }

    fn between(min: usize, max: usize) -> Self {
        VertexRange { min, max: Some(max) }
    }

    pub fn contains(&self, n: usize) -> bool {
        n >= self.min && self.max.is_none_or(|m| n <= m)
    }
}

impl fmt::Display for VertexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.min, self.max) {
            (1, Some(max)) => write!(f, "n≤{max}"),
            (min, None) => write!(f, "n≥{min}"),
            (min, Some(max)) if min == max => write!(f, "n={min}"),
            (min, Some(max)) => {
                let all: Vec<String> = (min..=max).map(|n| n.to_string()).collect();
                write!(f, "n={}", all.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KValue {
    Finite(usize),
    Infinite,
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KValue::Finite(k) => write!(f, "{k}"),
            KValue::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// Upper bound from a named instance, re-checked when the table is built.
    Construction { name: String, certified: bool },
    /// Larger `n` follow by adding isolated, uncolored vertices.
    IsolatedVertexExtension,
    /// Lower bound `k > a`: with `k ≤ a` colors, `a` vertices cover the palette.
    PaletteBound,
    /// Every labeled graph with `n_min..=n_max` vertices was searched for all
    /// `k ≤ k_max` and none works.
    ExhaustiveSearch { n_min: usize, n_max: usize, k_max: usize },
    /// Claimed in the literature, not re-verified here.
    PaperCitation,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Construction { name, certified: true } => write!(f, "construction ({name})"),
            Provenance::Construction { name, certified: false } => {
                write!(f, "construction ({name}, CERTIFICATION FAILED)")
            }
            Provenance::IsolatedVertexExtension => write!(f, "isolated-vertex extension"),
            Provenance::PaletteBound => write!(f, "palette bound k>a"),
            Provenance::ExhaustiveSearch { n_min, n_max, k_max } => {
                write!(f, "exhaustive-search (n={n_min}..{n_max}, k≤{k_max})")
            }
            Provenance::PaperCitation => write!(f, "paper-citation"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KEntry {
    pub attackers: usize,
    pub vertices: VertexRange,
    pub value: KValue,
    pub proven_by: Vec<Provenance>,
}

impl KEntry {
    pub fn provenance_label(&self) -> String {
        self.proven_by
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for KEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K({},{})={}  proven-by: {}",
            self.attackers,
            self.vertices,
            self.value,
            self.provenance_label()
        )
    }
}

/// Default palette bound and per-decision budget for the search-backed rows.
pub const TABLE_K_MAX: usize = 4;
pub const TABLE_BUDGET: u64 = 1_000_000;
/// Infinite rows are searched exhaustively up to this order.
pub const TABLE_SEARCH_N_MAX: usize = 4;

/// `(a, largest n with no coloring, [(range, k, construction)])`.
type Row<'a> = (usize, usize, &'a [(VertexRange, usize, &'static str)]);

pub fn k_table(max_a: usize) -> Result<Vec<KEntry>> {
    k_table_with(max_a, TABLE_K_MAX, TABLE_BUDGET)
}

/// Builds the rows for `a = 1..=max_a` (`max_a ≤ 4`). Construction rows are
/// certified by the exhaustive checker and infinite rows are backed by
/// labeled-graph search for small `n` and `k ≤ k_max`; nothing else is
/// claimed beyond a citation.
pub fn k_table_with(max_a: usize, k_max: usize, budget: u64) -> Result<Vec<KEntry>> {
    if max_a == 0 || max_a > 4 {
        return Err(Error::invalid(format!("max_a must be in 1..=4, got {max_a}")));
    }
    let rows: [Row<'_>; 4] = [
        (1, 3, &[(VertexRange::at_least(4), 2, "clique-partition:1")]),
        (2, 8, &[(VertexRange::at_least(9), 3, "clique-partition:2")]),
        (
            3,
            13,
            &[
                (VertexRange::between(14, 15), 7, "paper-14"),
                (VertexRange::at_least(16), 4, "clique-partition:3"),
            ],
        ),
        (4, 20, &[(VertexRange::between(21, 21), 10, "paper-21")]),
    ];

    let mut out = Vec::new();
    for &(a, none_up_to, finite) in rows.iter().take(max_a) {
        let mut proven_by = Vec::new();
        let search_max = none_up_to.min(TABLE_SEARCH_N_MAX);
        if k_max > a && search_max >= a {
            let all_unsat = (a..=search_max).try_fold(true, |acc, n| {
                let s = exhaustive_nonexistence(n, a, k_max, budget)?;
                Ok::<_, Error>(acc && matches!(s.outcome, NonexistenceOutcome::AllUnsat))
            })?;
            if all_unsat {
                proven_by.push(Provenance::ExhaustiveSearch {
                    n_min: a,
                    n_max: search_max,
                    k_max,
                });
            }
        }
        proven_by.push(Provenance::PaperCitation);
        out.push(KEntry {
            attackers: a,
            vertices: VertexRange::at_most(none_up_to),
            value: KValue::Infinite,
            proven_by,
        });

        for &(range, k, name) in finite {
            let inst = by_name(name)?;
            let certified = inst.certify()?.highly_resistant
                && inst.palette_size() == k
                && inst.num_vertices() == range.min;
            let mut proven_by = vec![Provenance::Construction {
                name: name.to_string(),
                certified,
            }];
            if range.max != Some(range.min) {
                proven_by.push(Provenance::IsolatedVertexExtension);
            }
            proven_by.push(if k == a + 1 {
                Provenance::PaletteBound
            } else {
                Provenance::PaperCitation
            });
            out.push(KEntry {
                attackers: a,
                vertices: range,
                value: KValue::Finite(k),
                proven_by,
            });
        }
    }
    Ok(out)
}

/// The row covering `(a, n)`, if any.
pub fn lookup(table: &[KEntry], a: usize, n: usize) -> Option<&KEntry> {
    table
        .iter()
        .find(|e| e.attackers == a && e.vertices.contains(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let table = k_table(4).unwrap();
        let e = lookup(&table, 3, 14).unwrap();
        assert_eq!(e.value, KValue::Finite(7));
        assert!(matches!(
            &e.proven_by[0],
            Provenance::Construction { name, certified: true } if name == "paper-14"
        ));
        assert_eq!(e.to_string().split("  ").next(), Some("K(3,n=14,15)=7"));

        let e = lookup(&table, 4, 20).unwrap();
        assert_eq!(e.value, KValue::Infinite);
        assert!(e.proven_by.contains(&Provenance::PaperCitation));

        let e = lookup(&table, 1, 3).unwrap();
        assert_eq!(e.value, KValue::Infinite);
        assert_eq!(
            e.proven_by,
            vec![
                Provenance::ExhaustiveSearch { n_min: 1, n_max: 3, k_max: 4 },
                Provenance::PaperCitation
            ]
        );

        let e = lookup(&table, 4, 21).unwrap();
        assert_eq!(e.to_string(), "K(4,n=21)=10  proven-by: construction (paper-21) + paper-citation");
        assert_eq!(lookup(&table, 3, 16).unwrap().value, KValue::Finite(4));
        assert!(lookup(&table, 4, 22).is_none());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(k_table(5).is_err());
        assert!(k_table(0).is_err());
        assert_eq!(k_table(1).unwrap().len(), 2);
    }
}
