//! Finite DAGs, their reachability order and the lattice of downward-closed
//! vertex sets.
//!
//! Vertices are identified by their position in the label-sorted vertex list,
//! so vertex order and label order coincide everywhere downstream.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Position of a vertex in the label-sorted vertex list.
pub type Vertex = usize;

/// Largest supported vertex count; vertex sets are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of one DAG.
///
/// Ordered by cardinality first, then lexicographically on the sorted member
/// list. Restricted to closed sets this is the fixed well-order of the
/// closed-subgraph lattice used for every canonical choice in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, v| s.with(v))
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    #[must_use]
    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    #[must_use]
    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing vertex order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Rank of `v` among the members (number of smaller members).
    pub fn rank(self, v: Vertex) -> usize {
        (self.0 & ((1u64 << v) - 1)).count_ones() as usize
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self::from_vertices(iter)
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// A finite simple DAG stored as the transitive reduction of its
/// reachability order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dag {
    labels: Vec<String>,
    /// Strict predecessors of each vertex.
    below: Vec<VertexSet>,
    edges: Vec<(Vertex, Vertex)>,
    depth: Vec<usize>,
    topo: Vec<Vertex>,
}

/// Outcome of normalizing an edge list.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Reduction {
    /// Input edges dropped because a longer path implies them.
    pub removed: Vec<(String, String)>,
}

impl Reduction {
    pub fn changed(&self) -> bool {
        !self.removed.is_empty()
    }
}

impl Dag {
    /// Builds a DAG, replacing the edge list by its transitive reduction.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Dag> {
        build_dag(vertices, edges).map(|(d, _)| d)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownVertex(label.to_string()))
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.labels.len()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::from_vertices(self.vertices())
    }

    /// Transitive-reduction edges in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Vertices in a topological order (ties broken by label).
    pub fn topological_order(&self) -> &[Vertex] {
        &self.topo
    }

    /// `u ≺ v`: a nonempty directed path leads from `u` to `v`.
    pub fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        self.below[v].contains(u)
    }

    /// `u ⪯ v`.
    pub fn precedes_eq(&self, u: Vertex, v: Vertex) -> bool {
        u == v || self.precedes(u, v)
    }

    /// Strict predecessors of `v`, i.e. `C_v ∖ {v}`.
    pub fn strictly_below(&self, v: Vertex) -> VertexSet {
        self.below[v]
    }

    /// `C_v`: the smallest closed set containing `v`.
    pub fn closure(&self, v: Vertex) -> VertexSet {
        self.below[v].with(v)
    }

    /// Length of the longest path from a source to `v`.
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn closure_of(&self, label: &str) -> Result<VertexSet> {
        Ok(self.closure(self.vertex(label)?))
    }

    pub fn is_closed(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.below[v].is_subset(s))
    }

    /// Smallest closed superset of `s`.
    pub fn downward_closure(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(s, |acc, v| acc.union(self.below[v]))
    }

    /// Every closed vertex set, including the empty set and the full set,
    /// in the canonical well-order.
    pub fn closed_subgraphs(&self) -> Vec<VertexSet> {
        self.closed_subsets_of(self.all())
    }

    /// Closed subsets of the closed set `within`, in the canonical order.
    pub fn closed_subsets_of(&self, within: VertexSet) -> Vec<VertexSet> {
        let order: Vec<Vertex> = self
            .topo
            .iter()
            .copied()
            .filter(|&v| within.contains(v))
            .collect();
        let mut out = Vec::new();
        self.downsets_from(&order, VertexSet::EMPTY, &mut out);
        out.sort();
        out
    }

    fn downsets_from(&self, order: &[Vertex], cur: VertexSet, out: &mut Vec<VertexSet>) {
        match order.split_first() {
            None => out.push(cur),
            Some((&v, rest)) => {
                self.downsets_from(rest, cur, out);
                if self.below[v].is_subset(cur) {
                    self.downsets_from(rest, cur.with(v), out);
                }
            }
        }
    }

    /// Labels of a vertex set in vertex order.
    pub fn set_labels(&self, s: VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.label(v)).collect()
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|l| self.vertex(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(VertexSet::from_vertices)
    }
}

/// Builds a DAG from labelled vertices and edges and reports which input
/// edges the transitive reduction dropped.
pub fn build_dag<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<(Dag, Reduction)> {
    if vertices.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            got: vertices.len(),
            max: MAX_VERTICES,
        });
    }
    let mut labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    labels.sort();
    for w in labels.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateVertex(w[0].clone()));
        }
    }
    let n = labels.len();
    let find = |l: &str| {
        labels
            .binary_search_by(|x| x.as_str().cmp(l))
            .map_err(|_| Error::UnknownEndpoint(l.to_string()))
    };
    let mut input: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for (a, b) in edges {
        let (a, b) = (find(a.as_ref())?, find(b.as_ref())?);
        if a == b {
            return Err(Error::CycleDetected(labels[a].clone()));
        }
        input.insert((a, b));
    }

    let mut parents = alloc::vec![VertexSet::EMPTY; n];
    let mut indeg = alloc::vec![0usize; n];
    for &(a, b) in &input {
        parents[b] = parents[b].with(a);
        indeg[b] += 1;
    }

    // Kahn's algorithm, always taking the smallest ready label.
    let mut ready: BTreeSet<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        topo.push(v);
        for &(a, b) in input.range((v, 0)..(v + 1, 0)) {
            debug_assert_eq!(a, v);
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if topo.len() < n {
        let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
        return Err(Error::CycleDetected(labels[stuck].clone()));
    }

    let mut below = alloc::vec![VertexSet::EMPTY; n];
    let mut depth = alloc::vec![0usize; n];
    for &v in &topo {
        for p in parents[v].iter() {
            below[v] = below[v].union(below[p]).with(p);
            depth[v] = depth[v].max(depth[p] + 1);
        }
    }

    let mut kept = Vec::new();
    let mut report = Reduction::default();
    for &(a, b) in &input {
        let implied = below[b].without(a).iter().any(|mid| below[mid].contains(a));
        if implied {
            report.removed.push((labels[a].clone(), labels[b].clone()));
        } else {
            kept.push((a, b));
        }
    }

    Ok((
        Dag {
            labels,
            below,
            edges: kept,
            depth,
            topo,
        },
        report,
    ))
}
