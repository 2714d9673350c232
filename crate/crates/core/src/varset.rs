//! Subsets of the variable set `V` as bitmasks.
//!
//! Variables are identified by their index `0..|V|`; a [`VarSet`] packs a
//! subset into a `u32`. All interaction sets, graph vertex sets, cliques
//! and separators in this crate are `VarSet`s. That caps `|V|` at 32,
//! comfortably above the intended scale (≤ 16 binary variables, ≤ 8
//! general-arity variables).

use std::fmt;

/// A subset of variables, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarSet(pub u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> VarSet {
        debug_assert!(n <= 32);
        if n == 32 {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    /// The singleton `{v}`.
    pub fn singleton(v: usize) -> VarSet {
        VarSet(1 << v)
    }

    pub fn from_indices(vs: &[usize]) -> VarSet {
        let mut m = 0u32;
        for &v in vs {
            m |= 1 << v;
        }
        VarSet(m)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 & (1 << v) != 0
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn minus(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> VarSet {
        VarSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> VarSet {
        VarSet(self.0 & !(1 << v))
    }

    /// Iterates over the member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(v)
            }
        })
    }

    /// Iterates over all subsets of `self`, including `∅` and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            current: 0,
            done: false,
        }
    }

    /// Iterates over the nonempty subsets of `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = VarSet> {
        self.subsets().filter(|s| !s.is_empty())
    }

    /// Colexicographic order: compare the largest element on which the
    /// two sets differ. This is the order in which generating classes
    /// are conventionally listed (`bc` before `ace` before `ade`).
    pub fn colex_cmp(self, other: VarSet) -> std::cmp::Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return std::cmp::Ordering::Equal;
        }
        let top = 31 - diff.leading_zeros();
        if other.0 & (1 << top) != 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }
}

/// Subset iterator in increasing numeric (mask) order.
pub struct Subsets {
    mask: u32,
    current: u32,
    done: bool,
}

impl Iterator for Subsets {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        if self.done {
            return None;
        }
        let out = VarSet(self.current);
        if self.current == self.mask {
            self.done = true;
        } else {
            // Standard submask enumeration step.
            self.current = (self.current.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Renders a set using variable names; single-character names are
/// concatenated (`ace`), longer names comma-separated.
pub fn format_with_names(set: VarSet, names: &[String]) -> String {
    let parts: Vec<&str> = set.iter().map(|v| names[v].as_str()).collect();
    if parts.iter().all(|p| p.chars().count() == 1) {
        parts.concat()
    } else {
        parts.join(",")
    }
}
