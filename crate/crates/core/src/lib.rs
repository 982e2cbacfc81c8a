//! Highly a-resistant vertex multicolorings.
//!
//! A vertex k-multicoloring assigns every vertex a (possibly empty) subset of
//! the palette `{1..k}`. It is *a-resistant* when, for every set `A` of `a`
//! attacking vertices, removing the closed neighborhood `M(A)` still leaves a
//! connected component that holds all `k` colors. It is *highly* a-resistant
//! when, in addition, no `a` vertices together hold every color (the a-HR
//! condition).
//!
//! The crate provides exhaustive and sampled checkers with deterministic
//! counterexample witnesses, the known extremal constructions, a bounded
//! existence search, and text codecs for graphs and colored instances.

pub mod checker;
pub mod codec;
pub mod coloring;
pub mod constructions;
mod error;
pub mod graph;
pub mod lemmas;
pub mod search;
mod vertex_set;

pub use checker::{
    check_highly, check_highly_with_threads, check_hr, check_resistant, lemma_disjunction,
    sample_check, sample_check_with_threads, CheckReport, SampleReport,
};
pub use coloring::{ColorClasses, ColorSet, Multicoloring};
pub use constructions::ColoredInstance;
pub use error::{Error, Result};
pub use graph::{ComponentList, Graph};
pub use search::{decide, exhaustive_nonexistence, min_colors, Decision, Outcome};
pub use vertex_set::VertexSet;

/// Resolves a requested worker count; `0` means all available cores.
pub fn resolve_threads(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}
