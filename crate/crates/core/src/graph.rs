//! Rooted multigraphs.
//!
//! A [`RootedMultigraph`] is a finite, connected, loop-free multigraph with a
//! designated sink. Vertices are identified by their position in the declared
//! vertex list, and every ordering produced by this crate follows that
//! declaration order.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a vertex in declaration order.
pub type VertexId = usize;

/// Largest supported vertex count; vertex subsets are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex `{0}`")]
    Loop(String),
    #[error("graph is disconnected: `{0}` is not reachable from the sink")]
    Disconnected(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("a rooted graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("edge `{0}`-`{1}` has multiplicity 0")]
    ZeroMultiplicity(String, String),
    #[error("edge multiplicity overflow on `{0}`-`{1}`")]
    MultiplicityOverflow(String, String),
    #[error("the sink cannot be deleted")]
    DeleteSink,
    #[error("vertex subset must be a non-empty set of non-sink vertices")]
    InvalidSubset,
    #[error("invalid vertex parts: {0}")]
    InvalidParts(String),
    #[error("malformed graph file: {0}")]
    Parse(String),
}

/// A set of vertices of some graph, stored as a bit mask over [`VertexId`]s.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// All ids `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: VertexId) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(mut self, v: VertexId) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: VertexId) -> Self {
        self.remove(v);
        self
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement relative to `universe`.
    pub fn complement_in(self, universe: Self) -> Self {
        universe.difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in increasing id order.
    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Finite connected loop-free multigraph rooted at a sink.
///
/// Immutable after construction. Non-sink vertices additionally carry an
/// *ordinal*: their position among the non-sink vertices in declaration
/// order. Configurations and parking functions are vectors indexed by
/// ordinal.
#[derive(Clone, PartialEq, Eq)]
pub struct RootedMultigraph {
    names: Vec<String>,
    sink: VertexId,
    mult: Vec<u32>,
    degree: Vec<u64>,
    non_sink: Vec<VertexId>,
    ordinal: Vec<Option<usize>>,
    // symmetric parts, as lists of non-sink ordinals
    parts: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for RootedMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootedMultigraph")
            .field("vertices", &self.names)
            .field("sink", &self.names[self.sink])
            .field("edges", &self.named_edges())
            .finish()
    }
}

impl RootedMultigraph {
    /// Builds a graph from names, a sink name and `(v, w, multiplicity)`
    /// triples. Repeated pairs add up their multiplicities.
    pub fn build<S: AsRef<str>>(
        vertices: &[S],
        sink: &str,
        edges: &[(S, S, u32)],
    ) -> Result<Self, GraphError> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_owned()).collect();
        let n = names.len();
        if n < 2 {
            return Err(GraphError::TooFewVertices(n));
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
        };
        let sink = lookup(sink)?;
        let mut mult = vec![0u32; n * n];
        for (v, w, m) in edges {
            let (v, w) = (v.as_ref(), w.as_ref());
            let (a, b) = (lookup(v)?, lookup(w)?);
            if a == b {
                return Err(GraphError::Loop(v.to_owned()));
            }
            if *m == 0 {
                return Err(GraphError::ZeroMultiplicity(v.to_owned(), w.to_owned()));
            }
            let total = mult[a * n + b]
                .checked_add(*m)
                .ok_or_else(|| GraphError::MultiplicityOverflow(v.to_owned(), w.to_owned()))?;
            mult[a * n + b] = total;
            mult[b * n + a] = total;
        }
        Self::from_matrix(names, sink, mult, None)
    }

    fn from_matrix(
        names: Vec<String>,
        sink: VertexId,
        mult: Vec<u32>,
        parts: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        if n < 2 {
            return Err(GraphError::TooFewVertices(n));
        }
        let degree = (0..n)
            .map(|v| mult[v * n..(v + 1) * n].iter().map(|&m| m as u64).sum())
            .collect();
        let non_sink: Vec<VertexId> = (0..n).filter(|&v| v != sink).collect();
        let mut ordinal = vec![None; n];
        for (i, &v) in non_sink.iter().enumerate() {
            ordinal[v] = Some(i);
        }
        let graph = RootedMultigraph {
            names,
            sink,
            mult,
            degree,
            non_sink,
            ordinal,
            parts,
        };
        if let Some(v) = graph.first_unreachable() {
            return Err(GraphError::Disconnected(graph.names[v].clone()));
        }
        Ok(graph)
    }

    fn first_unreachable(&self) -> Option<VertexId> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.sink]);
        seen[self.sink] = true;
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if !seen[w] && self.mult(v, w) > 0 {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    /// Attaches symmetric parts (lists of non-sink vertex names). Parts must
    /// be disjoint and cover every non-sink vertex.
    pub fn with_parts<S: AsRef<str>>(mut self, parts: &[Vec<S>]) -> Result<Self, GraphError> {
        let mut covered = VertexSet::empty();
        let mut ordinal_parts = Vec::with_capacity(parts.len());
        for part in parts {
            if part.is_empty() {
                return Err(GraphError::InvalidParts("empty part".into()));
            }
            let mut ords = Vec::with_capacity(part.len());
            for name in part {
                let v = self.vertex(name.as_ref())?;
                if v == self.sink {
                    return Err(GraphError::InvalidParts("the sink cannot belong to a part".into()));
                }
                if covered.contains(v) {
                    return Err(GraphError::InvalidParts(format!(
                        "vertex `{}` appears twice",
                        name.as_ref()
                    )));
                }
                covered.insert(v);
                ords.push(self.ordinal[v].expect("non-sink"));
            }
            ordinal_parts.push(ords);
        }
        if covered != self.non_sink_set() {
            return Err(GraphError::InvalidParts(
                "parts must cover every non-sink vertex".into(),
            ));
        }
        self.parts = Some(ordinal_parts);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Number of non-sink vertices.
    pub fn size(&self) -> usize {
        self.non_sink.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    /// Non-sink vertices in declaration order.
    pub fn non_sink(&self) -> &[VertexId] {
        &self.non_sink
    }

    /// Position of `v` among the non-sink vertices, `None` for the sink.
    pub fn ordinal(&self, v: VertexId) -> Option<usize> {
        self.ordinal.get(v).copied().flatten()
    }

    /// Name of the non-sink vertex with the given ordinal.
    pub fn ordinal_name(&self, i: usize) -> &str {
        &self.names[self.non_sink[i]]
    }

    pub fn parts(&self) -> Option<&[Vec<usize>]> {
        self.parts.as_deref()
    }

    #[inline]
    pub fn mult(&self, v: VertexId, w: VertexId) -> u32 {
        self.mult[v * self.names.len() + w]
    }

    /// `mult(v, sink)`.
    #[inline]
    pub fn sink_mult(&self, v: VertexId) -> u32 {
        self.mult(v, self.sink)
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> u64 {
        self.degree[v]
    }

    /// Number of edges from `v` into `set`, counted with multiplicity.
    #[inline]
    pub fn deg_within(&self, v: VertexId, set: VertexSet) -> u64 {
        let n = self.names.len();
        let row = &self.mult[v * n..(v + 1) * n];
        set.iter().map(|w| row[w] as u64).sum()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn non_sink_set(&self) -> VertexSet {
        self.all_vertices().without(self.sink)
    }

    /// Vertex set from non-sink ordinals.
    pub fn set_from_ordinals(&self, ordinals: impl IntoIterator<Item = usize>) -> VertexSet {
        ordinals.into_iter().map(|i| self.non_sink[i]).collect()
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    /// Distinct adjacent pairs `(v, w, mult)` with `v < w`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |v| {
            (v + 1..n).filter_map(move |w| {
                let m = self.mult(v, w);
                (m > 0).then_some((v, w, m))
            })
        })
    }

    pub fn named_edges(&self) -> Vec<(String, String, u32)> {
        self.edges()
            .map(|(v, w, m)| (self.names[v].clone(), self.names[w].clone(), m))
            .collect()
    }

    /// Sum of all edge multiplicities.
    pub fn total_multiplicity(&self) -> u64 {
        self.edges().map(|(_, _, m)| m as u64).sum()
    }

    /// Largest multiplicity of an edge at the sink.
    pub fn max_sink_mult(&self) -> u32 {
        self.non_sink.iter().map(|&v| self.sink_mult(v)).max().unwrap_or(0)
    }

    /// `G[A ∪ {s}]` for a non-empty set `A` of non-sink vertices.
    ///
    /// Vertex names carry over; the result uses declaration order restricted
    /// to `A ∪ {s}`. Fails when the induced graph is disconnected.
    pub fn induced_with_sink(&self, subset: VertexSet) -> Result<Self, GraphError> {
        if subset.is_empty() || !subset.is_subset(self.non_sink_set()) {
            return Err(GraphError::InvalidSubset);
        }
        self.restrict_to(subset.with(self.sink), None)
    }

    /// `G \ {v}` for a non-sink vertex `v`. Symmetric parts, if any, are
    /// kept with `v` removed.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Self, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::UnknownVertex(format!("#{v}")));
        }
        if v == self.sink {
            return Err(GraphError::DeleteSink);
        }
        let removed = self.ordinal[v].expect("non-sink");
        let parts = self.parts.as_ref().map(|parts| {
            parts
                .iter()
                .map(|part| {
                    part.iter()
                        .filter(|&&o| o != removed)
                        .map(|&o| if o > removed { o - 1 } else { o })
                        .collect::<Vec<_>>()
                })
                .filter(|part| !part.is_empty())
                .collect()
        });
        self.restrict_to(self.all_vertices().without(v), parts)
    }

    fn restrict_to(
        &self,
        keep: VertexSet,
        parts: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, GraphError> {
        let kept: Vec<VertexId> = keep.iter().collect();
        let k = kept.len();
        let names = kept.iter().map(|&v| self.names[v].clone()).collect();
        let sink = kept.iter().position(|&v| v == self.sink).expect("sink kept");
        let mut mult = vec![0u32; k * k];
        for (i, &a) in kept.iter().enumerate() {
            for (j, &b) in kept.iter().enumerate() {
                mult[i * k + j] = self.mult(a, b);
            }
        }
        Self::from_matrix(names, sink, mult, parts)
    }

    /// True iff removing the sink disconnects the remaining vertices.
    pub fn sink_is_cut_vertex(&self) -> bool {
        let rest = self.non_sink_set();
        let start = self.non_sink[0];
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in rest.difference(seen).iter() {
                if self.mult(v, w) > 0 {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen != rest
    }

    /// Reduced Laplacian: rows and columns indexed by non-sink ordinals.
    pub fn reduced_laplacian(&self) -> Vec<Vec<i64>> {
        self.non_sink
            .iter()
            .map(|&v| {
                self.non_sink
                    .iter()
                    .map(|&w| {
                        if v == w {
                            self.degree(v) as i64
                        } else {
                            -(self.mult(v, w) as i64)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of spanning trees: the reduced Laplacian determinant, computed
    /// exactly with fraction-free (Bareiss) elimination.
    pub fn spanning_tree_count(&self) -> BigUint {
        let mut m: Vec<Vec<BigInt>> = self
            .reduced_laplacian()
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        let det = bareiss_determinant(&mut m);
        debug_assert!(det.is_positive());
        det.to_biguint().unwrap_or_default()
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.names.clone(),
            sink: self.names[self.sink].clone(),
            edges: self.named_edges(),
            parts: self.parts.as_ref().map(|parts| {
                parts
                    .iter()
                    .map(|part| part.iter().map(|&o| self.ordinal_name(o).to_owned()).collect())
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        file.into_graph()
    }
}

/// On-disk graph description.
///
/// `{"vertices": ["0","v1"], "sink": "0", "edges": [["0","v1",1]]}` with an
/// optional `"parts"` list of symmetric vertex classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub sink: String,
    pub edges: Vec<(String, String, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<String>>>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<RootedMultigraph, GraphError> {
        let graph = RootedMultigraph::build(&self.vertices, &self.sink, &self.edges)?;
        match self.parts {
            Some(parts) => graph.with_parts(&parts),
            None => Ok(graph),
        }
    }
}

fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
