//! Contingency-table storage, cell indexing, marginalization and CSV
//! ingestion.
//!
//! Cells are stored in lexicographic order with the *last* variable
//! varying fastest, so the baseline cell `i* = (0,..,0)` always sits at
//! index 0. Counts are 64-bit integers; tables are immutable after
//! construction and safe to share across threads.

use std::io::Read;

use crate::varset::VarSet;
use crate::{Error, Result};

/// A multi-way contingency table over variables with arities `levels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    names: Vec<String>,
    levels: Vec<usize>,
    counts: Vec<u64>,
}

impl Table {
    /// Builds a table from per-variable names, arities and a dense count
    /// vector in lexicographic cell order (last variable fastest).
    pub fn new(names: Vec<String>, levels: Vec<usize>, counts: Vec<u64>) -> Result<Table> {
        if names.len() != levels.len() {
            return Err(Error::domain("names and levels length mismatch"));
        }
        if levels.len() > 32 {
            return Err(Error::domain("at most 32 variables supported"));
        }
        if let Some(l) = levels.iter().find(|&&l| l < 2) {
            return Err(Error::domain(format!("every arity must be >= 2, got {l}")));
        }
        let ncells: usize = levels.iter().product();
        if counts.len() != ncells {
            return Err(Error::domain(format!(
                "count vector has {} entries, table has {} cells",
                counts.len(),
                ncells
            )));
        }
        Ok(Table {
            names,
            levels,
            counts,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn num_vars(&self) -> usize {
        self.levels.len()
    }

    pub fn num_cells(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Grand total `N`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, cell: &[usize]) -> Result<u64> {
        Ok(self.counts[lexicographic_index(cell, &self.levels)?])
    }

    /// Marginal count `n(i_E)`: the sum over all cells agreeing with
    /// `margin_cell` on the variables of `subset`. The empty margin
    /// returns `N`.
    pub fn marginal_count(&self, subset: VarSet, margin_cell: &[usize]) -> Result<u64> {
        let vars: Vec<usize> = subset.iter().collect();
        if vars.iter().any(|&v| v >= self.num_vars()) {
            return Err(Error::domain("subset references unknown variable"));
        }
        if margin_cell.len() != vars.len() {
            return Err(Error::domain(format!(
                "margin cell has {} coordinates, subset has {} variables",
                margin_cell.len(),
                vars.len()
            )));
        }
        for (k, &v) in vars.iter().enumerate() {
            if margin_cell[k] >= self.levels[v] {
                return Err(Error::domain(format!(
                    "margin level {} out of range for variable {}",
                    margin_cell[k], self.names[v]
                )));
            }
        }
        let mut sum = 0u64;
        for (idx, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coords = coords_of(idx, &self.levels);
            if vars.iter().enumerate().all(|(k, &v)| coords[v] == margin_cell[k]) {
                sum += c;
            }
        }
        Ok(sum)
    }

    /// Parses a table from CSV per the input contract: a header with one
    /// column per variable plus a final `count` column; body rows carry
    /// integer levels and a nonnegative count. Unlisted cells get count
    /// 0; a duplicate cell row is an error. Arities are inferred as
    /// `max observed level + 1` unless the header annotates `name:K`.
    pub fn from_csv<R: Read>(reader: R) -> Result<Table> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let headers = rdr
            .headers()
            .map_err(|e| Error::parse(1, format!("bad header: {e}")))?
            .clone();
        if headers.len() < 2 {
            return Err(Error::parse(1, "need at least one variable column and `count`"));
        }
        let last = headers.len() - 1;
        if headers.get(last) != Some("count") {
            return Err(Error::parse(1, "last column must be named `count`"));
        }

        let mut names: Vec<String> = Vec::new();
        let mut fixed_arity: Vec<Option<usize>> = Vec::new();
        for h in headers.iter().take(last) {
            match h.split_once(':') {
                Some((name, k)) => {
                    let arity: usize = k
                        .parse()
                        .map_err(|_| Error::parse(1, format!("bad arity annotation `{h}`")))?;
                    names.push(name.to_string());
                    fixed_arity.push(Some(arity));
                }
                None => {
                    names.push(h.to_string());
                    fixed_arity.push(None);
                }
            }
        }
        let nv = names.len();

        let mut rows: Vec<(Vec<usize>, u64)> = Vec::new();
        let mut max_level = vec![0usize; nv];
        for (k, record) in rdr.records().enumerate() {
            let row = k + 2; // 1-based, after the header
            let record = record.map_err(|e| Error::parse(row, e.to_string()))?;
            if record.len() != nv + 1 {
                return Err(Error::parse(row, format!("expected {} fields", nv + 1)));
            }
            let mut coords = Vec::with_capacity(nv);
            for (v, field) in record.iter().take(nv).enumerate() {
                let lvl: usize = field.parse().map_err(|_| {
                    Error::parse(row, format!("non-integer level `{field}` for {}", names[v]))
                })?;
                max_level[v] = max_level[v].max(lvl);
                coords.push(lvl);
            }
            let count_field = record.get(nv).unwrap();
            let count: u64 = count_field.parse().map_err(|_| {
                Error::parse(row, format!("invalid count `{count_field}` (nonnegative integer required)"))
            })?;
            rows.push((coords, count));
        }
        if rows.is_empty() {
            return Err(Error::parse(2, "no data rows"));
        }

        let mut levels = Vec::with_capacity(nv);
        for v in 0..nv {
            let inferred = max_level[v] + 1;
            let arity = match fixed_arity[v] {
                Some(k) => {
                    if inferred > k {
                        return Err(Error::parse(
                            1,
                            format!("variable {} annotated arity {k} but level {} observed", names[v], inferred - 1),
                        ));
                    }
                    k
                }
                None => inferred,
            };
            if arity < 2 {
                return Err(Error::parse(
                    1,
                    format!("variable {} has a single observed level; annotate `{}:K` to fix its arity", names[v], names[v]),
                ));
            }
            levels.push(arity);
        }

        let ncells: usize = levels.iter().product();
        let mut counts = vec![0u64; ncells];
        let mut seen = vec![false; ncells];
        for (k, (coords, count)) in rows.into_iter().enumerate() {
            let row = k + 2;
            let idx = lexicographic_index(&coords, &levels)
                .map_err(|e| Error::parse(row, e.to_string()))?;
            if seen[idx] {
                return Err(Error::parse(row, format!("duplicate cell {coords:?}")));
            }
            seen[idx] = true;
            counts[idx] = count;
        }
        Table::new(names, levels, counts)
    }
}

/// Bijective cell index with the last variable varying fastest;
/// index 0 is the baseline cell `i*`.
pub fn lexicographic_index(cell: &[usize], levels: &[usize]) -> Result<usize> {
    if cell.len() != levels.len() {
        return Err(Error::domain(format!(
            "cell has {} coordinates, table has {} variables",
            cell.len(),
            levels.len()
        )));
    }
    let mut idx = 0usize;
    for (c, l) in cell.iter().zip(levels) {
        if c >= l {
            return Err(Error::domain(format!("coordinate {c} out of range [0,{l})")));
        }
        idx = idx * l + c;
    }
    Ok(idx)
}

/// Inverse of [`lexicographic_index`].
pub fn coords_of(mut idx: usize, levels: &[usize]) -> Vec<usize> {
    let mut coords = vec![0usize; levels.len()];
    for v in (0..levels.len()).rev() {
        coords[v] = idx % levels[v];
        idx /= levels[v];
    }
    coords
}

/// Iterates all cells of the lattice `×_γ I_γ` in lexicographic order.
pub fn iter_cells(levels: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let ncells: usize = levels.iter().product();
    (0..ncells).map(move |i| coords_of(i, levels))
}
