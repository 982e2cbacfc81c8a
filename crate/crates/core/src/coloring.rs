//! Vertex multicolorings and their color-class view.
//!
//! Colors are 0-based internally: bit `c` of a [`ColorSet`] stands for the
//! external color `c + 1`. The codec performs the shift.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::check_permutation;
use crate::vertex_set::VertexSet;

/// Largest supported palette.
pub const MAX_PALETTE: usize = 64;

/// A subset of the palette, one bit per color.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// All colors of a palette of size `k` (`k ≤ 64`).
    pub fn full(k: usize) -> ColorSet {
        assert!(k <= MAX_PALETTE);
        if k == MAX_PALETTE {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1 << k) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> ColorSet {
        ColorSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based color numbers, each of which must lie in `1..=k`.
    pub fn from_one_based<I>(colors: I, k: usize) -> Result<ColorSet>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u64;
        for c in colors {
            if c == 0 || c > k || c > MAX_PALETTE {
                return Err(Error::ColorOutOfRange { color: c, k });
            }
            bits |= 1 << (c - 1);
        }
        Ok(ColorSet(bits))
    }

    /// Ascending 1-based color numbers.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|c| c + 1).collect()
    }

    /// Ascending 0-based colors.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    pub fn contains(self, color: usize) -> bool {
        color < MAX_PALETTE && self.0 >> color & 1 == 1
    }

    pub fn with(self, color: usize) -> ColorSet {
        ColorSet(self.0 | 1 << color)
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_one_based()).finish()
    }
}

/// The multicoloring `κ`: one color set per vertex over the palette `{1..k}`.
///
/// Empty color sets are allowed. The value is not tied to a graph; length is
/// validated against the graph when a check runs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multicoloring {
    palette_size: usize,
    assignment: Vec<ColorSet>,
}

impl Multicoloring {
    pub fn new(palette_size: usize, assignment: Vec<ColorSet>) -> Result<Self> {
        if palette_size > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(palette_size));
        }
        let full = ColorSet::full(palette_size);
        if let Some(bad) = assignment.iter().find(|s| !s.is_subset(full)) {
            let color = 64 - bad.0.leading_zeros() as usize;
            return Err(Error::ColorOutOfRange {
                color,
                k: palette_size,
            });
        }
        Ok(Multicoloring {
            palette_size,
            assignment,
        })
    }

    /// Builds a coloring from per-vertex lists of 1-based colors.
    pub fn from_one_based<L, I>(palette_size: usize, lists: L) -> Result<Self>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if palette_size > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(palette_size));
        }
        let assignment = lists
            .into_iter()
            .map(|l| ColorSet::from_one_based(l, palette_size))
            .collect::<Result<Vec<_>>>()?;
        Self::new(palette_size, assignment)
    }

    /// Every vertex gets the empty set.
    pub fn empty(palette_size: usize, n: usize) -> Result<Self> {
        Self::new(palette_size, vec![ColorSet::EMPTY; n])
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn get(&self, v: usize) -> ColorSet {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[ColorSet] {
        &self.assignment
    }

    pub fn full_palette(&self) -> ColorSet {
        ColorSet::full(self.palette_size)
    }

    /// Union of `κ(u)` over `u ∈ vs`. Panics if `vs` reaches past the assignment.
    pub fn union_over(&self, vs: &VertexSet) -> ColorSet {
        vs.iter()
            .fold(ColorSet::EMPTY, |acc, v| acc.union(self.assignment[v]))
    }

    pub fn has_all_colors(&self, vs: &VertexSet) -> bool {
        self.union_over(vs) == self.full_palette()
    }

    /// True when each palette color appears on at least one vertex.
    pub fn uses_every_color(&self) -> bool {
        self.assignment
            .iter()
            .fold(ColorSet::EMPTY, |acc, &s| acc.union(s))
            == self.full_palette()
    }

    /// Adds color `k + 1` to every vertex.
    pub fn extend_palette(&self) -> Result<Multicoloring> {
        let new = self.palette_size;
        if new + 1 > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(new + 1));
        }
        Ok(Multicoloring {
            palette_size: new + 1,
            assignment: self.assignment.iter().map(|s| s.with(new)).collect(),
        })
    }

    /// Appends one vertex colored with the empty set.
    pub fn extend_vertex(&self) -> Multicoloring {
        let mut assignment = self.assignment.clone();
        assignment.push(ColorSet::EMPTY);
        Multicoloring {
            palette_size: self.palette_size,
            assignment,
        }
    }

    pub fn classes(&self) -> ColorClasses {
        let n = self.len();
        let mut classes = vec![VertexSet::new(n); self.palette_size];
        for (v, set) in self.assignment.iter().enumerate() {
            for c in set.iter() {
                classes[c].insert(v);
            }
        }
        ColorClasses { n, classes }
    }

    /// Color classes sorted by the numeric value of their vertex masks.
    ///
    /// Colorings that differ only by a permutation of colors have equal
    /// canonical forms.
    pub fn canonical_form(&self) -> Vec<VertexSet> {
        let mut classes = self.classes().classes;
        classes.sort();
        classes
    }

    /// Renames color `c` to `perm[c]` (0-based).
    pub fn permute_colors(&self, perm: &[usize]) -> Result<Multicoloring> {
        check_permutation(perm, self.palette_size)?;
        let assignment = self
            .assignment
            .iter()
            .map(|s| s.iter().fold(ColorSet::EMPTY, |acc, c| acc.with(perm[c])))
            .collect();
        Ok(Multicoloring {
            palette_size: self.palette_size,
            assignment,
        })
    }

    /// Moves vertex `v`'s colors to vertex `perm[v]`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Result<Multicoloring> {
        check_permutation(perm, self.len())?;
        let mut assignment = vec![ColorSet::EMPTY; self.len()];
        for (v, &s) in self.assignment.iter().enumerate() {
            assignment[perm[v]] = s;
        }
        Ok(Multicoloring {
            palette_size: self.palette_size,
            assignment,
        })
    }

    /// Restriction to `keep`, renumbered in ascending order (matches
    /// [`Graph::induced_subgraph`](crate::Graph::induced_subgraph)).
    pub fn restrict(&self, keep: &VertexSet) -> Multicoloring {
        Multicoloring {
            palette_size: self.palette_size,
            assignment: keep.iter().map(|v| self.assignment[v]).collect(),
        }
    }
}

impl fmt::Debug for Multicoloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multicoloring")
            .field("k", &self.palette_size)
            .field("colors", &self.assignment)
            .finish()
    }
}

/// Serialized as `{"k": k, "colors": [[1-based colors], ...]}`.
impl Serialize for Multicoloring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let colors: Vec<Vec<usize>> = self.assignment.iter().map(|s| s.to_one_based()).collect();
        let mut st = serializer.serialize_struct("Multicoloring", 2)?;
        st.serialize_field("k", &self.palette_size)?;
        st.serialize_field("colors", &colors)?;
        st.end()
    }
}

/// Dual view of a coloring: `class(c) = { v : c ∈ κ(v) }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClasses {
    n: usize,
    classes: Vec<VertexSet>,
}

impl ColorClasses {
    /// Every class must have capacity `n`.
    pub fn new(n: usize, classes: Vec<VertexSet>) -> Result<Self> {
        if classes.len() > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(classes.len()));
        }
        if let Some(bad) = classes.iter().find(|c| c.capacity() != n) {
            return Err(Error::LengthMismatch {
                coloring: bad.capacity(),
                graph: n,
            });
        }
        Ok(ColorClasses { n, classes })
    }

    /// Class of the 0-based color `c`.
    pub fn class(&self, c: usize) -> &VertexSet {
        &self.classes[c]
    }

    pub fn palette_size(&self) -> usize {
        self.classes.len()
    }

    pub fn as_slice(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn to_multicoloring(&self) -> Multicoloring {
        let mut assignment = vec![ColorSet::EMPTY; self.n];
        for (c, class) in self.classes.iter().enumerate() {
            for v in class {
                assignment[v] = assignment[v].with(c);
            }
        }
        Multicoloring {
            palette_size: self.classes.len(),
            assignment,
        }
    }
}
