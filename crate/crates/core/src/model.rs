//! Hierarchical interaction sets `D`, the baseline-constrained θ
//! parametrization, θ ↔ p conversions and the multinomial
//! log-likelihood in exponential-family form.
//!
//! A hierarchical model is a downward-closed family `D` of nonempty
//! subsets of `V` containing every singleton. The free parameters are
//! `θ(i_D)` for `D ∈ D` and `i_D ∈ I*_D`, the marginal cells with no
//! coordinate at the baseline level 0; every other interaction term is
//! constrained to zero. Cell probabilities follow by
//!
//! `p(i) ∝ exp Σ{ θ(i_F) : F ⊆ supp(i), F ∈ D }`,
//!
//! normalized over all cells, and conversely θ is the alternating sum
//! of log-probabilities over the subset lattice.

use std::fmt;

use crate::graph::Graph;
use crate::table::{coords_of, iter_cells, lexicographic_index, Table};
use crate::varset::{format_with_names, VarSet};
use crate::{Error, Result};

/// Largest variable count for which interaction sets are supported; the
/// dense subset index and the full cell lattice both grow as `2^|V|`.
pub const MAX_MODEL_VARS: usize = 16;

/// A downward-closed interaction set with its parameter layout.
///
/// Parameters are laid out member by member (members in colexicographic
/// order); within a member `D` the cells of `I*_D` are enumerated
/// lexicographically with the last variable fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionSet {
    names: Vec<String>,
    levels: Vec<usize>,
    members: Vec<VarSet>,
    member_pos: Vec<i32>,
    offsets: Vec<usize>,
    dim: usize,
}

/// Free log-linear parameters aligned to an [`InteractionSet`] layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaVector {
    pub values: Vec<f64>,
}

impl ThetaVector {
    pub fn zeros(iset: &InteractionSet) -> ThetaVector {
        ThetaVector {
            values: vec![0.0; iset.dim()],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A strictly positive probability table over the full cell lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    levels: Vec<usize>,
    probs: Vec<f64>,
}

impl ProbTable {
    pub fn new(levels: Vec<usize>, probs: Vec<f64>) -> Result<ProbTable> {
        let ncells: usize = levels.iter().product();
        if probs.len() != ncells {
            return Err(Error::domain("probability vector length mismatch"));
        }
        if probs.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
            return Err(Error::domain("probabilities must be strictly positive"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "probabilities sum to {total:.15}, expected 1 within 1e-12"
            )));
        }
        Ok(ProbTable { levels, probs })
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, cell: &[usize]) -> Result<f64> {
        Ok(self.probs[lexicographic_index(cell, &self.levels)?])
    }

    /// `p_∅`, the baseline-cell probability.
    pub fn baseline(&self) -> f64 {
        self.probs[0]
    }
}

impl InteractionSet {
    /// Downward closure of a generator list, always including every
    /// main effect. Generators are reduced to inclusion-maximal
    /// elements.
    pub fn from_generators(
        names: Vec<String>,
        levels: Vec<usize>,
        generators: &[VarSet],
    ) -> Result<InteractionSet> {
        let nv = names.len();
        if nv != levels.len() {
            return Err(Error::domain("names and levels length mismatch"));
        }
        if nv == 0 || nv > MAX_MODEL_VARS {
            return Err(Error::domain(format!(
                "interaction sets support 1..={MAX_MODEL_VARS} variables"
            )));
        }
        if let Some(l) = levels.iter().find(|&&l| l < 2) {
            return Err(Error::domain(format!("every arity must be >= 2, got {l}")));
        }
        let full = VarSet::full(nv);
        let mut present = vec![false; 1usize << nv];
        for &g in generators {
            if !g.is_subset_of(full) {
                return Err(Error::domain("generator mentions unknown variable"));
            }
            for s in g.nonempty_subsets() {
                present[s.0 as usize] = true;
            }
        }
        for v in 0..nv {
            present[VarSet::singleton(v).0 as usize] = true;
        }
        let mut members: Vec<VarSet> = (1..(1usize << nv))
            .filter(|&m| present[m])
            .map(|m| VarSet(m as u32))
            .collect();
        members.sort_by(|a, b| a.colex_cmp(*b));

        let mut member_pos = vec![-1i32; 1usize << nv];
        let mut offsets = Vec::with_capacity(members.len());
        let mut dim = 0usize;
        for (k, &m) in members.iter().enumerate() {
            member_pos[m.0 as usize] = k as i32;
            offsets.push(dim);
            dim += m.iter().map(|v| levels[v] - 1).product::<usize>();
        }
        Ok(InteractionSet {
            names,
            levels,
            members,
            member_pos,
            offsets,
            dim,
        })
    }

    /// The graphical interaction set of `graph`: all nonempty complete
    /// vertex subsets, i.e. the downward closure of the clique list.
    pub fn graphical(graph: &Graph, levels: Vec<usize>) -> Result<InteractionSet> {
        InteractionSet::from_generators(graph.names().to_vec(), levels, &graph.cliques())
    }

    /// Parses a model formula: generators joined by `|`, variables
    /// concatenated within a generator when all names are single
    /// characters, comma-separated otherwise (`bc|ace|ade|f`).
    pub fn from_formula(
        names: Vec<String>,
        levels: Vec<usize>,
        formula: &str,
    ) -> Result<InteractionSet> {
        let single = names.iter().all(|n| n.chars().count() == 1);
        let lookup = |token: &str| -> Result<usize> {
            names
                .iter()
                .position(|n| n == token)
                .ok_or_else(|| Error::domain(format!("unknown variable `{token}`")))
        };
        let mut generators = Vec::new();
        for gen in formula.split('|') {
            let gen = gen.trim();
            if gen.is_empty() {
                return Err(Error::domain("empty generator in formula"));
            }
            let mut set = VarSet::EMPTY;
            if gen.contains(',') {
                for token in gen.split(',') {
                    set = set.with(lookup(token.trim())?);
                }
            } else if single {
                for ch in gen.chars() {
                    set = set.with(lookup(&ch.to_string())?);
                }
            } else {
                set = set.with(lookup(gen)?);
            }
            generators.push(set);
        }
        InteractionSet::from_generators(names, levels, &generators)
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
        self.levels.iter().product()
    }

    pub fn is_binary(&self) -> bool {
        self.levels.iter().all(|&l| l == 2)
    }

    /// Parameter-space dimension `d_D = Σ_D Π_{γ∈D}(|I_γ|-1)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Members of `D` in colexicographic order.
    pub fn members(&self) -> &[VarSet] {
        &self.members
    }

    pub fn contains(&self, set: VarSet) -> bool {
        !set.is_empty() && self.member_pos[set.0 as usize] >= 0
    }

    /// Offset of member `d`'s parameter block.
    pub fn block_offset(&self, d: VarSet) -> Option<usize> {
        let pos = self.member_pos[d.0 as usize];
        if set_is_empty_or_missing(pos, d) {
            None
        } else {
            Some(self.offsets[pos as usize])
        }
    }

    /// Index of the parameter `θ(i_D)`; `i_d` holds the coordinates of
    /// the variables of `d` in ascending order, all nonzero.
    pub fn param_index(&self, d: VarSet, i_d: &[usize]) -> Result<usize> {
        let offset = self
            .block_offset(d)
            .ok_or_else(|| Error::domain(format!("{d:?} is not a member of the model")))?;
        let vars: Vec<usize> = d.iter().collect();
        if i_d.len() != vars.len() {
            return Err(Error::domain("margin cell arity mismatch"));
        }
        let mut idx = 0usize;
        for (k, &v) in vars.iter().enumerate() {
            let c = i_d[k];
            if c == 0 || c >= self.levels[v] {
                return Err(Error::domain(format!(
                    "margin coordinate {c} out of I*_D range for variable {}",
                    self.names[v]
                )));
            }
            idx = idx * (self.levels[v] - 1) + (c - 1);
        }
        Ok(offset + idx)
    }

    /// `(D, i_D)` labels for every parameter, in layout order.
    pub fn param_labels(&self) -> Vec<(VarSet, Vec<usize>)> {
        let mut out = Vec::with_capacity(self.dim);
        for &d in &self.members {
            let vars: Vec<usize> = d.iter().collect();
            let radices: Vec<usize> = vars.iter().map(|&v| self.levels[v] - 1).collect();
            let block: usize = radices.iter().product();
            for k in 0..block {
                let mut cell = vec![0usize; vars.len()];
                let mut rem = k;
                for j in (0..vars.len()).rev() {
                    cell[j] = rem % radices[j] + 1;
                    rem /= radices[j];
                }
                out.push((d, cell));
            }
        }
        out
    }

    /// Inclusion-maximal members (the generating class), colex order.
    pub fn generators(&self) -> Vec<VarSet> {
        self.members
            .iter()
            .copied()
            .filter(|&d| {
                !self
                    .members
                    .iter()
                    .any(|&e| e != d && d.is_subset_of(e))
            })
            .collect()
    }

    /// Inclusion-minimal nonempty subsets of `V` absent from `D`, colex
    /// order. By downward-closedness it suffices to test co-atoms.
    pub fn dual_generators(&self) -> Vec<VarSet> {
        let nv = self.num_vars();
        let mut out = Vec::new();
        for m in 1..(1usize << nv) {
            let t = VarSet(m as u32);
            if self.contains(t) {
                continue;
            }
            if t.iter().all(|v| {
                let sub = t.without(v);
                sub.is_empty() || self.contains(sub)
            }) {
                out.push(t);
            }
        }
        out.sort_by(|a, b| a.colex_cmp(*b));
        out
    }

    /// Canonical formula string: generators in colex order joined by
    /// `|`.
    pub fn formula(&self) -> String {
        self.generators()
            .iter()
            .map(|&g| format_with_names(g, &self.names))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub(crate) fn format_set(&self, set: VarSet) -> String {
        format_with_names(set, &self.names)
    }

    /// If `D` is the complete-subset family of some graph, returns that
    /// graph (its edges are exactly the 2-subsets in `D`).
    pub fn as_graph(&self) -> Option<Graph> {
        let edges: Vec<(usize, usize)> = self
            .members
            .iter()
            .filter(|d| d.len() == 2)
            .map(|d| {
                let mut it = d.iter();
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        let graph = Graph::new(self.names.clone(), &edges).ok()?;
        let closure =
            InteractionSet::from_generators(self.names.clone(), self.levels.clone(), &graph.cliques())
                .ok()?;
        if closure.members == self.members {
            Some(graph)
        } else {
            None
        }
    }

    /// For each cell of the lattice, the parameters whose margin event
    /// the cell belongs to: `(D, i_D)` matches cell `j` iff `j_D = i_D`,
    /// i.e. `D ⊆ supp(j)` with the matching coordinates. The same lists
    /// drive `Σ_{F ⊆_D supp(i)} θ(i_F)` in the cell scores.
    pub fn cell_param_lists(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.num_cells());
        for cell in iter_cells(&self.levels) {
            let supp = support(&cell);
            let mut list = Vec::new();
            for &d in &self.members {
                if d.is_subset_of(supp) {
                    let i_d: Vec<usize> = d.iter().map(|v| cell[v]).collect();
                    list.push(self.param_index(d, &i_d).unwrap() as u32);
                }
            }
            out.push(list);
        }
        out
    }

    /// Unnormalized log-scores `t(i) = Σ_{F ⊆_D supp(i)} θ(i_F)` per
    /// cell (baseline cell scores 0).
    pub fn cell_scores(&self, theta: &ThetaVector) -> Result<Vec<f64>> {
        if theta.len() != self.dim {
            return Err(Error::domain("theta length does not match model dimension"));
        }
        Ok(self
            .cell_param_lists()
            .iter()
            .map(|list| list.iter().map(|&k| theta.values[k as usize]).sum())
            .collect())
    }

    /// Data margins `n(i_D)` aligned to the parameter layout.
    pub fn data_margins(&self, table: &Table) -> Result<Vec<f64>> {
        if table.levels() != self.levels {
            return Err(Error::domain("table levels do not match the model"));
        }
        let mut margins = vec![0.0; self.dim];
        let lists = self.cell_param_lists();
        for (idx, &c) in table.counts().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &k in &lists[idx] {
                margins[k as usize] += c as f64;
            }
        }
        Ok(margins)
    }
}

fn set_is_empty_or_missing(pos: i32, d: VarSet) -> bool {
    pos < 0 || d.is_empty()
}

fn support(cell: &[usize]) -> VarSet {
    let mut s = VarSet::EMPTY;
    for (v, &c) in cell.iter().enumerate() {
        if c != 0 {
            s = s.with(v);
        }
    }
    s
}

/// Numerically stable `log Σ exp`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + values.iter().map(|&v| (v - m).exp()).sum::<f64>().ln()
}

/// The log-partition `k(θ) = log(1 + Σ exp Σ θ)`, i.e. `-log p_∅`.
pub fn log_partition(theta: &ThetaVector, iset: &InteractionSet) -> Result<f64> {
    Ok(log_sum_exp(&iset.cell_scores(theta)?))
}

/// Evaluates the alternating sum
/// `θ_E(i_E) = Σ_{F⊆E} (-1)^{|E∖F|} log p(i_F, i*_{F^c})`
/// for an arbitrary subset `E`, housed in the model or not.
pub fn theta_entry(p: &ProbTable, e: VarSet, i_e: &[usize]) -> Result<f64> {
    let vars: Vec<usize> = e.iter().collect();
    if vars.len() != i_e.len() {
        return Err(Error::domain("margin cell arity mismatch"));
    }
    let nv = p.levels().len();
    let mut acc = 0.0;
    for f in e.subsets() {
        let mut cell = vec![0usize; nv];
        for (k, &v) in vars.iter().enumerate() {
            if f.contains(v) {
                cell[v] = i_e[k];
            }
        }
        let prob = p.prob(&cell)?;
        if !(prob > 0.0) {
            return Err(Error::domain("nonpositive probability in theta transform"));
        }
        let sign = if (e.len() - f.len()) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * prob.ln();
    }
    Ok(acc)
}

/// Log-linear parameters of `p` on the model's housed entries.
pub fn theta_from_probs(p: &ProbTable, iset: &InteractionSet) -> Result<ThetaVector> {
    if p.levels() != iset.levels() {
        return Err(Error::domain("probability table levels do not match the model"));
    }
    let mut values = Vec::with_capacity(iset.dim());
    for (d, i_d) in iset.param_labels() {
        values.push(theta_entry(p, d, &i_d)?);
    }
    Ok(ThetaVector { values })
}

/// Cell probabilities implied by θ, normalized in log space.
pub fn probs_from_theta(theta: &ThetaVector, iset: &InteractionSet) -> Result<ProbTable> {
    if theta.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("theta entries must be finite"));
    }
    let scores = iset.cell_scores(theta)?;
    let log_z = log_sum_exp(&scores);
    if !log_z.is_finite() {
        return Err(Error::numeric("overflow normalizing cell probabilities"));
    }
    let probs: Vec<f64> = scores.iter().map(|&s| (s - log_z).exp()).collect();
    ProbTable::new(iset.levels().to_vec(), probs)
}

/// Exponential-family log-likelihood
/// `Σ_D Σ_{i_D} θ(i_D) n(i_D) − N·k(θ)`.
pub fn log_likelihood(theta: &ThetaVector, table: &Table, iset: &InteractionSet) -> Result<f64> {
    let margins = iset.data_margins(table)?;
    let dot: f64 = theta
        .values
        .iter()
        .zip(&margins)
        .map(|(t, m)| t * m)
        .sum();
    let k = log_partition(theta, iset)?;
    Ok(dot - table.total() as f64 * k)
}

/// Zeta transform over the subset lattice for binary models: given one
/// value per member of `D`, returns `out[E] = Σ_{F⊆E, F∈D} in[F]` for
/// every subset mask `E`, in `O(2^|V|·|V|)` additions.
pub fn subset_sum_transform(iset: &InteractionSet, values: &[f64]) -> Result<Vec<f64>> {
    if !iset.is_binary() {
        return Err(Error::domain(
            "subset_sum_transform requires a binary model; general arities use direct summation",
        ));
    }
    if values.len() != iset.members().len() {
        return Err(Error::domain("one input value per member of D required"));
    }
    let nv = iset.num_vars();
    let mut arr = vec![0.0f64; 1usize << nv];
    for (k, &m) in iset.members().iter().enumerate() {
        arr[m.0 as usize] = values[k];
    }
    for v in 0..nv {
        let bit = 1usize << v;
        for mask in 0..arr.len() {
            if mask & bit != 0 {
                arr[mask] += arr[mask ^ bit];
            }
        }
    }
    Ok(arr)
}

impl fmt::Display for InteractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.formula())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn letters(n: usize) -> Vec<String> {
        (0..n)
            .map(|v| ((b'a' + v as u8) as char).to_string())
            .collect()
    }

    fn binary(n: usize) -> Vec<usize> {
        vec![2; n]
    }

    fn set(vs: &[usize]) -> VarSet {
        VarSet::from_indices(vs)
    }

    #[test]
    fn closure_of_four_cycle_generators() {
        let iset = InteractionSet::from_generators(
            letters(4),
            binary(4),
            &[set(&[0, 1]), set(&[1, 2]), set(&[2, 3]), set(&[0, 3])],
        )
        .unwrap();
        let expected: Vec<VarSet> = vec![
            set(&[0]),
            set(&[1]),
            set(&[0, 1]),
            set(&[2]),
            set(&[1, 2]),
            set(&[3]),
            set(&[0, 3]),
            set(&[2, 3]),
        ];
        let mut want = expected.clone();
        want.sort_by(|a, b| a.colex_cmp(*b));
        assert_eq!(iset.members(), &want[..]);
        assert_eq!(iset.dim(), 8);
    }

    #[test]
    fn closure_of_saturated_three_vars() {
        let iset =
            InteractionSet::from_generators(letters(3), binary(3), &[set(&[0, 1, 2])]).unwrap();
        assert_eq!(iset.members().len(), 7);
        assert_eq!(iset.dim(), 7);
    }

    #[test]
    fn closure_enumerates_generator_subsets() {
        let iset =
            InteractionSet::from_generators(letters(3), binary(3), &[set(&[0, 1]), set(&[2])])
                .unwrap();
        let mut members: Vec<VarSet> = iset.members().to_vec();
        members.sort();
        assert_eq!(
            members,
            vec![set(&[0]), set(&[1]), set(&[0, 1]), set(&[2])]
        );
    }

    #[test]
    fn unknown_variable_rejected() {
        assert!(
            InteractionSet::from_generators(letters(2), binary(2), &[set(&[0, 2])]).is_err()
        );
        assert!(InteractionSet::from_formula(letters(2), binary(2), "ab|ac").is_err());
    }

    #[test]
    fn graphical_matches_closure_of_cliques() {
        let g = Graph::new(letters(4), &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let iset = InteractionSet::graphical(&g, binary(4)).unwrap();
        assert_eq!(iset.members().len(), 8);
        let edgeless = Graph::empty(letters(2));
        let iset2 = InteractionSet::graphical(&edgeless, binary(2)).unwrap();
        assert_eq!(iset2.members(), &[set(&[0]), set(&[1])]);
        let k3 = Graph::new(letters(3), &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let iset3 = InteractionSet::graphical(&k3, binary(3)).unwrap();
        assert_eq!(iset3.members().len(), 7);
    }

    #[test]
    fn generators_and_duals() {
        let iset =
            InteractionSet::from_generators(letters(3), binary(3), &[set(&[0, 1]), set(&[2])])
                .unwrap();
        assert_eq!(iset.generators(), vec![set(&[0, 1]), set(&[2])]);
        assert_eq!(iset.dual_generators(), vec![set(&[0, 2]), set(&[1, 2])]);

        let saturated =
            InteractionSet::from_generators(letters(3), binary(3), &[set(&[0, 1, 2])]).unwrap();
        assert!(saturated.dual_generators().is_empty());

        let main_only =
            InteractionSet::from_generators(letters(2), binary(2), &[set(&[0]), set(&[1])])
                .unwrap();
        assert_eq!(main_only.generators(), vec![set(&[0]), set(&[1])]);
        assert_eq!(main_only.dual_generators(), vec![set(&[0, 1])]);
    }

    #[test]
    fn formula_round_trip_uses_colex_order() {
        let names: Vec<String> = letters(6);
        let iset = InteractionSet::from_formula(names.clone(), binary(6), "ade|ace|f|bc").unwrap();
        assert_eq!(iset.formula(), "bc|ace|ade|f");
        let back =
            InteractionSet::from_formula(names, binary(6), &iset.formula()).unwrap();
        assert_eq!(back, iset);
    }

    #[test]
    fn uniform_theta_gives_uniform_probs() {
        let iset =
            InteractionSet::from_generators(letters(3), binary(3), &[set(&[0, 1, 2])]).unwrap();
        let p = probs_from_theta(&ThetaVector::zeros(&iset), &iset).unwrap();
        for &pr in p.probs() {
            assert!((pr - 0.125).abs() < 1e-14);
        }
    }

    #[test]
    fn saturated_two_by_two_from_known_theta() {
        // θ(a)=θ(b)=log 2, θ(ab)=0 → p = (1,2,2,4)/9 by direct
        // evaluation over the four cells.
        let iset =
            InteractionSet::from_generators(letters(2), binary(2), &[set(&[0, 1])]).unwrap();
        let mut theta = ThetaVector::zeros(&iset);
        let ia = iset.param_index(set(&[0]), &[1]).unwrap();
        let ib = iset.param_index(set(&[1]), &[1]).unwrap();
        theta.values[ia] = 2.0f64.ln();
        theta.values[ib] = 2.0f64.ln();
        let p = probs_from_theta(&theta, &iset).unwrap();
        let expect = [1.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0, 4.0 / 9.0];
        for (got, want) in p.probs().iter().zip(expect) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn two_by_two_interaction_is_log_cross_ratio() {
        let iset =
            InteractionSet::from_generators(letters(2), binary(2), &[set(&[0, 1])]).unwrap();
        let p = ProbTable::new(vec![2, 2], vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        let theta = theta_from_probs(&p, &iset).unwrap();
        let iab = iset.param_index(set(&[0, 1]), &[1, 1]).unwrap();
        let want = (0.1f64 * 0.4 / (0.2 * 0.3)).ln();
        assert!((theta.values[iab] - want).abs() < 1e-12);
    }

    #[test]
    fn baseline_touching_terms_vanish() {
        // Lemma 2.1: any E-term with some coordinate at level 0 is zero.
        let iset =
            InteractionSet::from_generators(letters(3), vec![2, 3, 2], &[set(&[0, 1, 2])])
                .unwrap();
        let mut theta = ThetaVector::zeros(&iset);
        for (k, v) in theta.values.iter_mut().enumerate() {
            *v = 0.1 * (k as f64 + 1.0) - 0.3;
        }
        let p = probs_from_theta(&theta, &iset).unwrap();
        let t = theta_entry(&p, set(&[0, 1]), &[1, 0]).unwrap();
        assert!(t.abs() < 1e-10, "got {t}");
        let t2 = theta_entry(&p, set(&[0, 1, 2]), &[0, 2, 1]).unwrap();
        assert!(t2.abs() < 1e-10);
    }

    #[test]
    fn graphical_constraint_on_four_cycle() {
        // p(ac)·p_∅ = p(a)·p(c) for the four-cycle model; the model's
        // absent terms evaluate to zero under Eq (2.3).
        let g = Graph::new(letters(4), &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let iset = InteractionSet::graphical(&g, binary(4)).unwrap();
        let mut theta = ThetaVector::zeros(&iset);
        for (k, v) in theta.values.iter_mut().enumerate() {
            *v = 0.07 * (k as f64) - 0.25;
        }
        let p = probs_from_theta(&theta, &iset).unwrap();
        let pa = p.prob(&[1, 0, 0, 0]).unwrap();
        let pc = p.prob(&[0, 0, 1, 0]).unwrap();
        let pac = p.prob(&[1, 0, 1, 0]).unwrap();
        assert!((pac * p.baseline() - pa * pc).abs() < 1e-14);
        let tac = theta_entry(&p, set(&[0, 2]), &[1, 1]).unwrap();
        assert!(tac.abs() < 1e-9);
        let tabcd = theta_entry(&p, set(&[0, 1, 2, 3]), &[1, 1, 1, 1]).unwrap();
        assert!(tabcd.abs() < 1e-9);
    }

    #[test]
    fn round_trip_theta_probs_theta() {
        let iset = InteractionSet::from_generators(
            letters(3),
            vec![2, 3, 2],
            &[set(&[0, 1]), set(&[1, 2])],
        )
        .unwrap();
        let mut theta = ThetaVector::zeros(&iset);
        for (k, v) in theta.values.iter_mut().enumerate() {
            *v = (0.17 * (k as f64 + 1.0)).sin();
        }
        let p = probs_from_theta(&theta, &iset).unwrap();
        let back = theta_from_probs(&p, &iset).unwrap();
        for (a, b) in theta.values.iter().zip(&back.values) {
            assert!((a - b).abs() < 1e-10);
        }
        let total: f64 = p.probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn likelihood_matches_direct_sum() {
        let iset = InteractionSet::from_generators(
            letters(3),
            binary(3),
            &[set(&[0, 1]), set(&[1, 2])],
        )
        .unwrap();
        let mut theta = ThetaVector::zeros(&iset);
        for (k, v) in theta.values.iter_mut().enumerate() {
            *v = 0.05 * (k as f64) - 0.1;
        }
        let table = Table::new(letters(3), binary(3), vec![3, 1, 4, 1, 5, 9, 2, 6]).unwrap();
        let ll = log_likelihood(&theta, &table, &iset).unwrap();
        let p = probs_from_theta(&theta, &iset).unwrap();
        let direct: f64 = table
            .counts()
            .iter()
            .zip(p.probs())
            .map(|(&n, &pr)| n as f64 * pr.ln())
            .sum();
        assert!((ll - direct).abs() < 1e-9, "ll={ll} direct={direct}");
    }

    #[test]
    fn zero_theta_likelihood_is_uniform() {
        let iset =
            InteractionSet::from_generators(letters(3), binary(3), &[set(&[0, 1, 2])]).unwrap();
        let table = Table::new(letters(3), binary(3), vec![1; 8]).unwrap();
        let ll = log_likelihood(&ThetaVector::zeros(&iset), &table, &iset).unwrap();
        assert!((ll - (-(8.0) * 3.0 * 2.0f64.ln())).abs() < 1e-12);

        let single = Table::new(
            letters(2),
            binary(2),
            vec![1, 0, 0, 0],
        )
        .unwrap();
        let sat =
            InteractionSet::from_generators(letters(2), binary(2), &[set(&[0, 1])]).unwrap();
        let ll2 = log_likelihood(&ThetaVector::zeros(&sat), &single, &sat).unwrap();
        assert!((ll2 + 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn zeta_transform_matches_brute_force() {
        let iset = InteractionSet::from_generators(
            letters(4),
            binary(4),
            &[set(&[0, 1, 2]), set(&[2, 3])],
        )
        .unwrap();
        let values: Vec<f64> = (0..iset.members().len())
            .map(|k| ((k * 37 + 11) % 17) as f64 - 8.0)
            .collect();
        let fast = subset_sum_transform(&iset, &values).unwrap();
        for mask in 0..(1usize << 4) {
            let e = VarSet(mask as u32);
            let mut want = 0.0;
            for (k, &m) in iset.members().iter().enumerate() {
                if m.is_subset_of(e) {
                    want += values[k];
                }
            }
            assert!((fast[mask] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zeta_transform_counts_subsets_on_saturated() {
        let iset =
            InteractionSet::from_generators(letters(3), binary(3), &[set(&[0, 1, 2])]).unwrap();
        let ones = vec![1.0; iset.members().len()];
        let out = subset_sum_transform(&iset, &ones).unwrap();
        assert_eq!(out[0b111] as i64, 7);
        // Singleton-only inputs propagate to their supersets.
        let mut vals = vec![0.0; iset.members().len()];
        for (k, &m) in iset.members().iter().enumerate() {
            if m.len() == 1 {
                vals[k] = (m.iter().next().unwrap() + 1) as f64;
            }
        }
        let out2 = subset_sum_transform(&iset, &vals).unwrap();
        assert_eq!(out2[0b101], 1.0 + 3.0);
    }
}
