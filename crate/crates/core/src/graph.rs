//! Undirected-graph machinery: chordality, cliques, prime-component
//! decomposition with perfect sequences, and single-edge neighborhoods
//! for model search.

use std::fmt;

use crate::varset::{format_with_names, VarSet};
use crate::{Error, Result};

/// An undirected graph on named vertices, adjacency stored as one
/// bitmask row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<VarSet>,
}

/// A perfect sequence of the prime components of a graph.
///
/// `separators[l]` is `P_{l+1} ∩ (P_0 ∪ … ∪ P_l)`, complete by
/// construction; `residuals[l] = P_{l+1} ∖ separators[l]`. Empty
/// separators appear between connected components.
#[derive(Debug, Clone)]
pub struct PrimeDecomposition {
    pub components: Vec<VarSet>,
    pub separators: Vec<VarSet>,
    pub residuals: Vec<VarSet>,
    pub complete: Vec<bool>,
}

impl Graph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = names.len();
        if n > 32 {
            return Err(Error::domain("at most 32 vertices supported"));
        }
        let mut adj = vec![VarSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain("edge references unknown vertex"));
            }
            if u == v {
                return Err(Error::domain("self-loops not allowed"));
            }
            adj[u] = adj[u].with(v);
            adj[v] = adj[v].with(u);
        }
        Ok(Graph { names, adj })
    }

    pub fn empty(names: Vec<String>) -> Graph {
        let n = names.len();
        Graph {
            names,
            adj: vec![VarSet::EMPTY; n],
        }
    }

    /// Parses the edge-list literal used by the CLI and tests:
    /// `a-b,b-c,c-d,d-a`, optionally with `;isolated:f,g` for edgeless
    /// vertices. Vertices are ordered alphabetically by name.
    pub fn parse(literal: &str) -> Result<Graph> {
        let mut edge_names: Vec<(String, String)> = Vec::new();
        let mut vertex_names: Vec<String> = Vec::new();
        let mut push_name = |names: &mut Vec<String>, n: &str| {
            if !names.iter().any(|x| x == n) {
                names.push(n.to_string());
            }
        };
        for (k, part) in literal.split(';').enumerate() {
            let part = part.trim();
            if k == 0 {
                if part.is_empty() {
                    continue;
                }
                for e in part.split(',') {
                    let e = e.trim();
                    let (u, v) = e
                        .split_once('-')
                        .ok_or_else(|| Error::domain(format!("bad edge `{e}`")))?;
                    let (u, v) = (u.trim(), v.trim());
                    if u.is_empty() || v.is_empty() {
                        return Err(Error::domain(format!("bad edge `{e}`")));
                    }
                    push_name(&mut vertex_names, u);
                    push_name(&mut vertex_names, v);
                    edge_names.push((u.to_string(), v.to_string()));
                }
            } else if let Some(list) = part.strip_prefix("isolated:") {
                for n in list.split(',') {
                    let n = n.trim();
                    if n.is_empty() {
                        return Err(Error::domain("empty isolated vertex name"));
                    }
                    push_name(&mut vertex_names, n);
                }
            } else {
                return Err(Error::domain(format!("unrecognized graph clause `{part}`")));
            }
        }
        if vertex_names.is_empty() {
            return Err(Error::domain("graph literal names no vertices"));
        }
        vertex_names.sort();
        let index = |n: &str| vertex_names.iter().position(|x| x == n).unwrap();
        let edges: Vec<(usize, usize)> =
            edge_names.iter().map(|(u, v)| (index(u), index(v))).collect();
        Graph::new(vertex_names, &edges)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_set(&self) -> VarSet {
        VarSet::full(self.num_vertices())
    }

    pub fn neighbors(&self, v: usize) -> VarSet {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.num_vertices() {
            for v in (u + 1)..self.num_vertices() {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The graph with edge `{u,v}` added if absent, removed if present.
    pub fn edge_toggled(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.adj[u] = g.adj[u].without(v);
            g.adj[v] = g.adj[v].without(u);
        } else {
            g.adj[u] = g.adj[u].with(v);
            g.adj[v] = g.adj[v].with(u);
        }
        g
    }

    pub fn is_complete(&self, set: VarSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset_of(self.adj[v]))
    }

    /// Whether the subgraph induced by `set` is connected (true for the
    /// empty set and singletons).
    pub fn is_connected_subset(&self, set: VarSet) -> bool {
        if set.is_empty() {
            return true;
        }
        let start = set.iter().next().unwrap();
        let mut reached = VarSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let mut next = VarSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v].intersect(set).minus(reached));
            }
            reached = reached.union(next);
            frontier = next;
        }
        reached == set
    }

    /// Connected components of the subgraph induced by `set`, ordered by
    /// smallest contained vertex.
    pub fn components_of(&self, set: VarSet) -> Vec<VarSet> {
        let mut out = Vec::new();
        let mut rest = set;
        while !rest.is_empty() {
            let start = rest.iter().next().unwrap();
            let mut reached = VarSet::singleton(start);
            let mut frontier = reached;
            while !frontier.is_empty() {
                let mut next = VarSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v].intersect(set).minus(reached));
                }
                reached = reached.union(next);
                frontier = next;
            }
            out.push(reached);
            rest = rest.minus(reached);
        }
        out
    }

    /// Chordality test by maximum-cardinality search with the standard
    /// parent check.
    pub fn is_decomposable(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let order = self.mcs_order(self.vertex_set());
        let mut rank = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            rank[v] = k;
        }
        let mut numbered = VarSet::EMPTY;
        for &v in &order {
            let earlier = self.adj[v].intersect(numbered);
            if !earlier.is_empty() {
                let parent = earlier.iter().max_by_key(|&u| rank[u]).unwrap();
                if !earlier.without(parent).is_subset_of(self.adj[parent]) {
                    return false;
                }
            }
            numbered = numbered.with(v);
        }
        true
    }

    /// Maximum-cardinality search order over `set` (ties broken by
    /// vertex index for determinism).
    fn mcs_order(&self, set: VarSet) -> Vec<usize> {
        let mut order = Vec::with_capacity(set.len());
        let mut numbered = VarSet::EMPTY;
        let mut remaining = set;
        while !remaining.is_empty() {
            let v = remaining
                .iter()
                .max_by_key(|&v| (self.adj[v].intersect(numbered).len(), usize::MAX - v))
                .unwrap();
            order.push(v);
            numbered = numbered.with(v);
            remaining = remaining.without(v);
        }
        order
    }

    /// All inclusion-maximal cliques, in colexicographic order.
    pub fn cliques(&self) -> Vec<VarSet> {
        self.cliques_within(self.vertex_set())
    }

    fn cliques_within(&self, set: VarSet) -> Vec<VarSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(VarSet::EMPTY, set, VarSet::EMPTY, &mut out);
        out.sort_by(|a, b| a.colex_cmp(*b));
        out
    }

    fn bron_kerbosch(&self, r: VarSet, p: VarSet, x: VarSet, out: &mut Vec<VarSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        // Pivot on the vertex of P ∪ X with most neighbors in P.
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| self.adj[u].intersect(p).len())
            .unwrap();
        let mut candidates = p.minus(self.adj[pivot]);
        while !candidates.is_empty() {
            let v = candidates.iter().next().unwrap();
            candidates = candidates.without(v);
            self.bron_kerbosch(
                r.with(v),
                p.intersect(self.adj[v]),
                x.intersect(self.adj[v]),
                out,
            );
        }
    }

    /// Whether the subgraph induced by `set` has no complete separating
    /// set (so it is a prime graph). Brute force over candidate
    /// separators; connected singletons and the empty graph count as
    /// prime.
    pub fn is_prime_subset(&self, set: VarSet) -> bool {
        if !self.is_connected_subset(set) {
            return false;
        }
        self.find_complete_separator(set).is_none()
    }

    /// Smallest complete subset of `set` whose removal disconnects the
    /// induced subgraph, if any. Candidates are scanned by size then
    /// colex order, so the result is deterministic.
    fn find_complete_separator(&self, set: VarSet) -> Option<VarSet> {
        let members: Vec<usize> = set.iter().collect();
        let k = members.len();
        if k < 2 {
            return None;
        }
        for size in 0..=(k - 2) {
            let mut best: Option<VarSet> = None;
            for sub in set.subsets() {
                if sub.len() != size || !self.is_complete(sub) {
                    continue;
                }
                let rest = set.minus(sub);
                if self.components_of(rest).len() > 1 {
                    best = match best {
                        None => Some(sub),
                        Some(b) => {
                            if sub.colex_cmp(b) == std::cmp::Ordering::Less {
                                Some(sub)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            if best.is_some() {
                return best;
            }
        }
        None
    }

    /// The (unordered, unique) maximal prime subgraphs of the subgraph
    /// induced by `set`.
    fn prime_atoms(&self, set: VarSet) -> Vec<VarSet> {
        let mut out = Vec::new();
        for comp in self.components_of(set) {
            self.prime_atoms_connected(comp, &mut out);
        }
        out
    }

    fn prime_atoms_connected(&self, set: VarSet, out: &mut Vec<VarSet>) {
        if let Some(sep) = self.find_complete_separator(set) {
            for comp in self.components_of(set.minus(sep)) {
                self.prime_atoms_connected(comp.union(sep), out);
            }
        } else {
            out.push(set);
        }
    }

    /// A perfect sequence of prime components with separators and
    /// residuals. For a decomposable graph the components are exactly
    /// the cliques (clique-tree shortcut); disconnected graphs get an
    /// empty separator at each component boundary.
    pub fn prime_decomposition(&self) -> PrimeDecomposition {
        let atoms = if self.is_decomposable() {
            self.cliques()
        } else {
            let mut a = self.prime_atoms(self.vertex_set());
            a.sort_by(|x, y| x.colex_cmp(*y));
            a
        };
        self.perfect_order(atoms)
    }

    /// Orders prime atoms into a perfect sequence: each next component's
    /// intersection with the union so far must be complete and contained
    /// in an earlier component. Components with nonempty intersection
    /// are preferred, so connected runs come first.
    fn perfect_order(&self, mut atoms: Vec<VarSet>) -> PrimeDecomposition {
        let mut components: Vec<VarSet> = Vec::with_capacity(atoms.len());
        let mut separators = Vec::new();
        let mut residuals = Vec::new();
        if atoms.is_empty() {
            return PrimeDecomposition {
                components,
                separators,
                residuals,
                complete: Vec::new(),
            };
        }
        // Start from the atom containing the smallest vertex.
        let first = atoms
            .iter()
            .enumerate()
            .min_by_key(|(_, a)| a.iter().next().unwrap_or(usize::MAX))
            .map(|(i, _)| i)
            .unwrap();
        let mut union = atoms.remove(first);
        components.push(union);
        while !atoms.is_empty() {
            let pick = atoms
                .iter()
                .position(|a| {
                    let s = a.intersect(union);
                    !s.is_empty()
                        && self.is_complete(s)
                        && components.iter().any(|p| s.is_subset_of(*p))
                })
                .or_else(|| {
                    atoms
                        .iter()
                        .position(|a| a.intersect(union).is_empty())
                })
                .expect("prime atoms always admit a perfect order");
            let p = atoms.remove(pick);
            let s = p.intersect(union);
            separators.push(s);
            residuals.push(p.minus(s));
            components.push(p);
            union = union.union(p);
        }
        let complete = components.iter().map(|&c| self.is_complete(c)).collect();
        PrimeDecomposition {
            components,
            separators,
            residuals,
            complete,
        }
    }

    /// All single-edge toggles; the count is always `|V|(|V|-1)/2`.
    pub fn graphical_neighbors(&self) -> Vec<Graph> {
        let n = self.num_vertices();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                out.push(self.edge_toggled(u, v));
            }
        }
        out
    }

    /// The single-edge toggles whose result is again decomposable.
    pub fn decomposable_neighbors(&self) -> Result<Vec<Graph>> {
        if !self.is_decomposable() {
            return Err(Error::domain("graph is not decomposable"));
        }
        Ok(self
            .graphical_neighbors()
            .into_iter()
            .filter(|g| g.is_decomposable())
            .collect())
    }

    /// Number of legal moves for the decomposable class, without
    /// materializing the neighbor graphs.
    pub fn decomposable_neighbor_count(&self) -> Result<usize> {
        if !self.is_decomposable() {
            return Err(Error::domain("graph is not decomposable"));
        }
        let n = self.num_vertices();
        let mut count = 0usize;
        for u in 0..n {
            for v in (u + 1)..n {
                if self.edge_toggled(u, v).is_decomposable() {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// The subgraph induced by `set`, with vertices kept in their
    /// original relative order. Returns the graph and the original
    /// index of each retained vertex.
    pub fn induced(&self, set: VarSet) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = set.iter().collect();
        let names = kept.iter().map(|&v| self.names[v].clone()).collect();
        let mut edges = Vec::new();
        for (iu, &u) in kept.iter().enumerate() {
            for (iv, &v) in kept.iter().enumerate().skip(iu + 1) {
                if self.has_edge(u, v) {
                    edges.push((iu, iv));
                }
            }
        }
        (Graph::new(names, &edges).unwrap(), kept)
    }

    /// Edge-list literal matching [`Graph::parse`].
    pub fn literal(&self) -> String {
        let edges = self.edges();
        let mut covered = VarSet::EMPTY;
        let mut parts: Vec<String> = Vec::new();
        for &(u, v) in &edges {
            parts.push(format!("{}-{}", self.names[u], self.names[v]));
            covered = covered.with(u).with(v);
        }
        let isolated: Vec<&str> = (0..self.num_vertices())
            .filter(|&v| !covered.contains(v))
            .map(|v| self.names[v].as_str())
            .collect();
        let mut s = parts.join(",");
        if !isolated.is_empty() {
            s.push_str(";isolated:");
            s.push_str(&isolated.join(","));
        }
        s
    }

    pub(crate) fn format_set(&self, set: VarSet) -> String {
        format_with_names(set, &self.names)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}
