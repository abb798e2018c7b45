//! Graphical parking functions, decompositions and primeness.
//!
//! A `G`-parking function is a positive function `p` on the non-sink
//! vertices such that every non-empty `S ⊆ Ṽ` contains a vertex with
//! `p(v) <= deg^{S^c}(v)`. It is *decomposable* along an ordered partition
//! `(A, B)` when `p|_A` parks on `G[A ∪ {s}]` and `p - deg^A` parks on
//! `G[B ∪ {s}]`; *prime* when no such partition exists.

use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, RootedMultigraph, VertexId, VertexSet};
use crate::io::tuple_string;
use crate::sandpile::{self, Configuration};

/// Default limit on non-sink vertices for the subset-based parking test.
pub const DEFAULT_SUBSET_CAP: usize = 20;
/// Default limit on non-sink vertices for partition searches.
pub const DEFAULT_PARTITION_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParkingError {
    #[error("parking function values must be positive")]
    NotPositive,
    #[error("{got} values given for {expected} non-sink vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{size} non-sink vertices exceeds the search cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("not a parking function on this graph")]
    NotParking,
    #[error("configuration is not recurrent")]
    NotRecurrent,
    #[error("invalid ordered partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A positive function on the non-sink vertices, in ordinal order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingCandidate(Vec<i64>);

impl ParkingCandidate {
    pub fn new(values: Vec<i64>) -> Result<Self, ParkingError> {
        if values.iter().any(|&x| x < 1) {
            return Err(ParkingError::NotPositive);
        }
        Ok(ParkingCandidate(values))
    }

    /// The constant function 1.
    pub fn ones(graph: &RootedMultigraph) -> Self {
        ParkingCandidate(vec![1; graph.size()])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, graph: &RootedMultigraph, v: VertexId) -> i64 {
        self.0[graph.ordinal(v).expect("non-sink vertex")]
    }

    fn check(&self, graph: &RootedMultigraph) -> Result<(), ParkingError> {
        if self.0.len() != graph.size() {
            return Err(ParkingError::LengthMismatch {
                expected: graph.size(),
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for ParkingCandidate {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for ParkingCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tuple_string(&self.0))
    }
}

impl fmt::Display for ParkingCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tuple_string(&self.0))
    }
}

/// Ordered sequence of disjoint non-empty blocks covering the non-sink
/// vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<VertexSet>,
}

impl OrderedPartition {
    pub fn new(graph: &RootedMultigraph, blocks: Vec<VertexSet>) -> Result<Self, ParkingError> {
        let mut covered = VertexSet::empty();
        for block in &blocks {
            if block.is_empty() {
                return Err(ParkingError::InvalidPartition("empty block".into()));
            }
            if !block.is_subset(graph.non_sink_set()) {
                return Err(ParkingError::InvalidPartition(
                    "blocks must contain non-sink vertices only".into(),
                ));
            }
            if !block.is_disjoint(covered) {
                return Err(ParkingError::InvalidPartition("blocks overlap".into()));
            }
            covered = covered.union(*block);
        }
        if covered != graph.non_sink_set() {
            return Err(ParkingError::InvalidPartition(
                "blocks do not cover every non-sink vertex".into(),
            ));
        }
        Ok(OrderedPartition { blocks })
    }

    /// Two-block partition `(A, Ṽ \ A)`.
    pub fn split(graph: &RootedMultigraph, a: VertexSet) -> Result<Self, ParkingError> {
        Self::new(graph, vec![a, graph.non_sink_set().difference(a)])
    }

    pub fn from_names<S: AsRef<str>>(
        graph: &RootedMultigraph,
        blocks: &[Vec<S>],
    ) -> Result<Self, ParkingError> {
        let sets = blocks
            .iter()
            .map(|b| graph.set_from_names(b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(graph, sets)
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block sizes, sorted.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Blocks as vertex-name lists.
    pub fn named(&self, graph: &RootedMultigraph) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|v| graph.name(v).to_owned()).collect())
            .collect()
    }

    /// `({v1},{v2,v3})`.
    pub fn display(&self, graph: &RootedMultigraph) -> String {
        let blocks: Vec<String> = self
            .named(graph)
            .into_iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect();
        format!("({})", blocks.join(","))
    }

    fn sort_key(&self) -> Vec<Vec<VertexId>> {
        self.blocks.iter().map(|b| b.iter().collect()).collect()
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

/// A non-empty `S ⊆ Ṽ` with `p(v) > deg^{S^c}(v)` for all `v ∈ S`, if one
/// exists. Checks every subset.
pub fn parking_violation(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<Option<VertexSet>, ParkingError> {
    parking_violation_with_cap(graph, p, DEFAULT_SUBSET_CAP)
}

/// [`parking_violation`] on graphs with at most `cap` non-sink vertices.
pub fn parking_violation_with_cap(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    cap: usize,
) -> Result<Option<VertexSet>, ParkingError> {
    p.check(graph)?;
    let n = graph.size();
    if n > cap {
        return Err(ParkingError::SizeCap { size: n, cap });
    }
    Ok(subset_violation(graph, p.values()))
}

fn subset_violation(graph: &RootedMultigraph, p: &[i64]) -> Option<VertexSet> {
    let all = graph.all_vertices();
    (1u64..1u64 << graph.size())
        .map(|mask| graph.set_from_ordinals((0..graph.size()).filter(|i| mask >> i & 1 == 1)))
        .find(|&s| {
            let complement = s.complement_in(all);
            s.iter()
                .all(|v| p[graph.ordinal(v).unwrap()] > graph.deg_within(v, complement) as i64)
        })
}

/// Parking test straight from the subset definition. Exponential in the
/// number of non-sink vertices.
pub fn is_g_parking_naive(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<bool, ParkingError> {
    Ok(parking_violation(graph, p)?.is_none())
}

/// Parking test through the recurrence of `deg - p` (Dhar's burning test).
pub fn is_g_parking_fast(graph: &RootedMultigraph, p: &ParkingCandidate) -> bool {
    assert_eq!(p.len(), graph.size(), "parking function length does not match the graph");
    parks_by_burning(graph, p.values())
}

fn parks_by_burning(graph: &RootedMultigraph, p: &[i64]) -> bool {
    let mut c = Vec::with_capacity(p.len());
    for (&v, &x) in graph.non_sink().iter().zip(p) {
        let d = graph.degree(v) as i64;
        if x < 1 || x > d {
            return false;
        }
        c.push(d - x);
    }
    sandpile::is_recurrent_burning(graph, &Configuration::new(c))
        .expect("deg - p is stable and non-negative")
        .is_some()
}

// Peel-based variant used inside searches.
fn parks(graph: &RootedMultigraph, p: &[i64]) -> bool {
    let mut c = Vec::with_capacity(p.len());
    for (&v, &x) in graph.non_sink().iter().zip(p) {
        let d = graph.degree(v) as i64;
        if x < 1 || x > d {
            return false;
        }
        c.push(d - x);
    }
    sandpile::max_forbidden_set(graph, &Configuration::new(c)).is_empty()
}

/// `deg - c` for a recurrent configuration.
pub fn pf_from_config(
    graph: &RootedMultigraph,
    c: &Configuration,
) -> Result<ParkingCandidate, ParkingError> {
    if c.len() != graph.size() {
        return Err(ParkingError::LengthMismatch {
            expected: graph.size(),
            got: c.len(),
        });
    }
    if !sandpile::is_recurrent(graph, c) {
        return Err(ParkingError::NotRecurrent);
    }
    Ok(ParkingCandidate(degree_minus(graph, c.values())))
}

/// `deg - p` for a parking function.
pub fn config_from_pf(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<Configuration, ParkingError> {
    p.check(graph)?;
    if !parks(graph, p.values()) {
        return Err(ParkingError::NotParking);
    }
    Ok(Configuration::new(degree_minus(graph, p.values())))
}

fn degree_minus(graph: &RootedMultigraph, values: &[i64]) -> Vec<i64> {
    graph
        .non_sink()
        .iter()
        .zip(values)
        .map(|(&v, &x)| graph.degree(v) as i64 - x)
        .collect()
}

/// `p^A` and `p^B` for a two-block partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub a: VertexSet,
    pub b: VertexSet,
    /// `p(v)` for `v ∈ A`, in declaration order.
    pub p_a: Vec<i64>,
    /// `p(v) - deg^A(v)` for `v ∈ B`, in declaration order. May be `<= 0`.
    pub p_b: Vec<i64>,
}

pub fn restrict_partition(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    partition: &OrderedPartition,
) -> Result<Restriction, ParkingError> {
    p.check(graph)?;
    let [a, b] = partition.blocks() else {
        return Err(ParkingError::InvalidPartition(format!(
            "expected 2 blocks, got {}",
            partition.len()
        )));
    };
    Ok(restrict(graph, p.values(), *a, *b))
}

fn restrict(graph: &RootedMultigraph, p: &[i64], a: VertexSet, b: VertexSet) -> Restriction {
    let at = |v: VertexId| p[graph.ordinal(v).unwrap()];
    Restriction {
        a,
        b,
        p_a: a.iter().map(at).collect(),
        p_b: b.iter().map(|v| at(v) - graph.deg_within(v, a) as i64).collect(),
    }
}

/// Decomposability along `(A, B)`, using the reduction that `p^B` parks on
/// `G^B` as soon as it is positive. A disconnected `G^A` or `G^B` admits no
/// parking function, so such partitions never decompose.
pub fn is_decomposable(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    partition: &OrderedPartition,
) -> Result<bool, ParkingError> {
    let r = restrict_partition(graph, p, partition)?;
    if !parks(graph, p.values()) {
        return Err(ParkingError::NotParking);
    }
    Ok(decomposes(graph, &r))
}

fn decomposes(graph: &RootedMultigraph, r: &Restriction) -> bool {
    if r.p_b.iter().any(|&x| x <= 0) {
        return false;
    }
    let Ok(g_a) = graph.induced_with_sink(r.a) else {
        return false;
    };
    if graph.induced_with_sink(r.b).is_err() {
        return false;
    }
    parks(&g_a, &r.p_a)
}

fn check_partition_cap(graph: &RootedMultigraph, cap: usize) -> Result<(), ParkingError> {
    if graph.size() > cap {
        return Err(ParkingError::SizeCap {
            size: graph.size(),
            cap,
        });
    }
    Ok(())
}

/// First two-block partition (by mask of `A` over ordinals) along which `p`
/// decomposes.
pub fn decomposing_partition(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<Option<OrderedPartition>, ParkingError> {
    decomposing_partition_with_cap(graph, p, DEFAULT_PARTITION_CAP)
}

pub fn decomposing_partition_with_cap(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    cap: usize,
) -> Result<Option<OrderedPartition>, ParkingError> {
    p.check(graph)?;
    check_partition_cap(graph, cap)?;
    if !parks(graph, p.values()) {
        return Err(ParkingError::NotParking);
    }
    let n = graph.size();
    let all = graph.non_sink_set();
    for mask in 1u64..(1u64 << n) - 1 {
        let a = graph.set_from_ordinals((0..n).filter(|i| mask >> i & 1 == 1));
        let b = all.difference(a);
        if decomposes(graph, &restrict(graph, p.values(), a, b)) {
            return Ok(Some(OrderedPartition { blocks: vec![a, b] }));
        }
    }
    Ok(None)
}

/// Primeness by trying every two-block ordered partition.
pub fn is_prime_bruteforce(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<bool, ParkingError> {
    Ok(decomposing_partition(graph, p)?.is_none())
}

/// `V_M(p)`: non-sink `v` with `p(v) <= mult(v, s)`.
pub fn v_m_parking(graph: &RootedMultigraph, p: &ParkingCandidate) -> VertexSet {
    graph
        .non_sink()
        .iter()
        .zip(p.values())
        .filter(|(&v, &x)| x <= graph.sink_mult(v) as i64)
        .map(|(&v, _)| v)
        .collect()
}

/// `p^{v+} = p + Σ_{w != v} mult(w, s)·1_w`.
pub fn add_off_sink(graph: &RootedMultigraph, p: &ParkingCandidate, v: VertexId) -> ParkingCandidate {
    ParkingCandidate(
        graph
            .non_sink()
            .iter()
            .zip(p.values())
            .map(|(&w, &x)| if w == v { x } else { x + graph.sink_mult(w) as i64 })
            .collect(),
    )
}

/// Vertices `v ∈ V_M(p)` with `p^{v+}` not a parking function.
pub fn prime_failures(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<Vec<VertexId>, ParkingError> {
    p.check(graph)?;
    if !parks(graph, p.values()) {
        return Err(ParkingError::NotParking);
    }
    Ok(prime_failures_unchecked(graph, p.values()))
}

fn prime_failures_unchecked(graph: &RootedMultigraph, p: &[i64]) -> Vec<VertexId> {
    let ns = graph.non_sink();
    let mut shifted = Vec::with_capacity(p.len());
    ns.iter()
        .zip(p)
        .filter(|(&v, &x)| x <= graph.sink_mult(v) as i64)
        .map(|(&v, _)| v)
        .filter(|&v| {
            shifted.clear();
            shifted.extend(ns.iter().zip(p).map(|(&w, &x)| {
                if w == v {
                    x
                } else {
                    x + graph.sink_mult(w) as i64
                }
            }));
            !parks(graph, &shifted)
        })
        .collect()
}

/// Primeness via `V_M(p)`: prime iff `p^{v+}` parks for every `v ∈ V_M(p)`.
pub fn is_prime_fast(graph: &RootedMultigraph, p: &ParkingCandidate) -> Result<bool, ParkingError> {
    Ok(prime_failures(graph, p)?.is_empty())
}

/// Total primeness predicate for filters: false unless `p` parks.
pub fn is_prime_parking(graph: &RootedMultigraph, p: &[i64]) -> bool {
    parks(graph, p) && prime_failures_unchecked(graph, p).is_empty()
}

/// Total parking predicate for filters.
pub fn is_parking(graph: &RootedMultigraph, p: &[i64]) -> bool {
    parks(graph, p)
}

/// Every prime decomposition `(A_1, …, A_k)` of `p`, sorted by blocks in
/// declaration order. Block `A_i` carries `p(v) - deg^{A_1 ∪ … ∪ A_{i-1}}(v)`,
/// which must be a prime parking function on `G[A_i ∪ {s}]`.
pub fn prime_decompositions(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<Vec<OrderedPartition>, ParkingError> {
    prime_decompositions_with_cap(graph, p, DEFAULT_PARTITION_CAP)
}

pub fn prime_decompositions_with_cap(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    cap: usize,
) -> Result<Vec<OrderedPartition>, ParkingError> {
    p.check(graph)?;
    check_partition_cap(graph, cap)?;
    if !parks(graph, p.values()) {
        return Err(ParkingError::NotParking);
    }
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    collect_decompositions(
        graph,
        p.values(),
        graph.non_sink_set(),
        VertexSet::empty(),
        &mut blocks,
        &mut out,
    );
    out.sort_by_key(OrderedPartition::sort_key);
    out.dedup();
    Ok(out)
}

fn collect_decompositions(
    graph: &RootedMultigraph,
    p: &[i64],
    remaining: VertexSet,
    placed: VertexSet,
    blocks: &mut Vec<VertexSet>,
    out: &mut Vec<OrderedPartition>,
) {
    if remaining.is_empty() {
        out.push(OrderedPartition {
            blocks: blocks.clone(),
        });
        return;
    }
    let bits = remaining.bits();
    let mut sub = bits;
    while sub != 0 {
        let block = VertexSet::from_bits(sub);
        sub = (sub - 1) & bits;
        if is_prime_block(graph, p, block, placed) {
            blocks.push(block);
            collect_decompositions(graph, p, remaining.difference(block), placed.union(block), blocks, out);
            blocks.pop();
        }
    }
}

fn is_prime_block(graph: &RootedMultigraph, p: &[i64], block: VertexSet, placed: VertexSet) -> bool {
    let values: Vec<i64> = block
        .iter()
        .map(|v| p[graph.ordinal(v).unwrap()] - graph.deg_within(v, placed) as i64)
        .collect();
    if values.iter().any(|&x| x < 1) {
        return false;
    }
    match graph.induced_with_sink(block) {
        Ok(sub) => is_prime_parking(&sub, &values),
        Err(_) => false,
    }
}

/// One prime decomposition, found by splitting along decomposing partitions
/// until every block is prime.
pub fn prime_decomposition(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
) -> Result<OrderedPartition, ParkingError> {
    prime_decomposition_with_cap(graph, p, DEFAULT_PARTITION_CAP)
}

pub fn prime_decomposition_with_cap(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    cap: usize,
) -> Result<OrderedPartition, ParkingError> {
    p.check(graph)?;
    check_partition_cap(graph, cap)?;
    if !parks(graph, p.values()) {
        return Err(ParkingError::NotParking);
    }
    let mut blocks = Vec::new();
    split_greedily(graph, p, &mut blocks, cap)?;
    Ok(OrderedPartition { blocks })
}

fn split_greedily(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    blocks: &mut Vec<VertexSet>,
    cap: usize,
) -> Result<(), ParkingError> {
    let Some(split) = decomposing_partition_with_cap(graph, p, cap)? else {
        blocks.push(graph.non_sink_set());
        return Ok(());
    };
    let r = restrict(graph, p.values(), split.blocks[0], split.blocks[1]);
    for (set, values) in [(r.a, r.p_a), (r.b, r.p_b)] {
        let sub = graph.induced_with_sink(set)?;
        let mut inner = Vec::new();
        split_greedily(&sub, &ParkingCandidate(values), &mut inner, cap)?;
        // inner blocks use the sub-graph's ids
        blocks.extend(inner.into_iter().map(|b| lift(graph, &sub, b)));
    }
    Ok(())
}

fn lift(parent: &RootedMultigraph, sub: &RootedMultigraph, set: VertexSet) -> VertexSet {
    set.iter()
        .map(|v| parent.vertex(sub.name(v)).expect("sub-graph vertex"))
        .collect()
}

/// `Del_v`: restriction of `p` to `G \ {v}`.
pub fn delete_one_vertex(
    graph: &RootedMultigraph,
    p: &ParkingCandidate,
    v: VertexId,
) -> Result<(RootedMultigraph, ParkingCandidate), ParkingError> {
    p.check(graph)?;
    let smaller = graph.delete_vertex(v)?;
    let i = graph.ordinal(v).expect("non-sink");
    let values = p
        .values()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &x)| x)
        .collect();
    Ok((smaller, ParkingCandidate(values)))
}

/// Whether `mult(w, s) = mult(w, v)` for every non-sink `w != v`, the
/// hypothesis under which deleting `v ∈ V_M(p)` from a prime `p` leaves a
/// parking function.
pub fn lemma31_applies(graph: &RootedMultigraph, v: VertexId) -> bool {
    v != graph.sink()
        && graph
            .non_sink()
            .iter()
            .filter(|&&w| w != v)
            .all(|&w| graph.sink_mult(w) == graph.mult(w, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> RootedMultigraph {
        complete(2)
    }

    fn complete(n: usize) -> RootedMultigraph {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for a in 0..=n {
            for b in a + 1..=n {
                edges.push((names[a].clone(), names[b].clone(), 1));
            }
        }
        RootedMultigraph::build(&names, "0", &edges).unwrap()
    }

    fn pf(v: &[i64]) -> ParkingCandidate {
        ParkingCandidate::new(v.to_vec()).unwrap()
    }

    #[test]
    fn candidate_validation() {
        assert_eq!(ParkingCandidate::new(vec![1, 0]), Err(ParkingError::NotPositive));
        assert!(matches!(
            is_g_parking_naive(&k2(), &pf(&[1])),
            Err(ParkingError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn naive_and_fast_examples() {
        for g in [k2(), complete(4)] {
            let ones = ParkingCandidate::ones(&g);
            assert!(is_g_parking_naive(&g, &ones).unwrap());
            assert!(is_g_parking_fast(&g, &ones));
        }
        assert!(!is_g_parking_naive(&k2(), &pf(&[1, 3])).unwrap());
        assert_eq!(
            parking_violation(&k2(), &pf(&[1, 3])).unwrap(),
            Some(VertexSet::singleton(2))
        );
        assert!(is_g_parking_naive(&complete(4), &pf(&[3, 1, 3, 1])).unwrap());
        assert!(is_g_parking_fast(&k2(), &pf(&[1, 1])));
        assert!(!is_g_parking_fast(&k2(), &pf(&[2, 2])));
    }

    #[test]
    fn naive_cap() {
        let g = complete(21);
        assert_eq!(
            is_g_parking_naive(&g, &ParkingCandidate::ones(&g)),
            Err(ParkingError::SizeCap { size: 21, cap: 20 })
        );
    }

    #[test]
    fn duality_maps() {
        let g = k2();
        assert_eq!(pf_from_config(&g, &Configuration::new(vec![1, 1])).unwrap(), pf(&[1, 1]));
        assert_eq!(pf_from_config(&g, &Configuration::new(vec![1, 0])).unwrap(), pf(&[1, 2]));
        assert_eq!(
            pf_from_config(&g, &Configuration::new(vec![0, 0])),
            Err(ParkingError::NotRecurrent)
        );
        assert_eq!(config_from_pf(&g, &pf(&[2, 2])), Err(ParkingError::NotParking));
        assert_eq!(config_from_pf(&g, &pf(&[1, 2])).unwrap(), Configuration::new(vec![1, 0]));
    }

    #[test]
    fn restrictions() {
        let k3 = complete(3);
        let part = OrderedPartition::from_names(&k3, &[vec!["1", "2"], vec!["3"]]).unwrap();
        let r = restrict_partition(&k3, &pf(&[1, 1, 2]), &part).unwrap();
        assert_eq!(r.p_a, vec![1, 1]);
        assert_eq!(r.p_b, vec![0]);
        assert!(!is_decomposable(&k3, &pf(&[1, 1, 2]), &part).unwrap());

        let g = k2();
        let part = OrderedPartition::from_names(&g, &[vec!["1"], vec!["2"]]).unwrap();
        assert_eq!(restrict_partition(&g, &pf(&[1, 1]), &part).unwrap().p_b, vec![0]);
        let three = OrderedPartition::new(&k3, vec![
            VertexSet::singleton(1),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
        ])
        .unwrap();
        assert!(matches!(
            restrict_partition(&k3, &pf(&[1, 1, 1]), &three),
            Err(ParkingError::InvalidPartition(_))
        ));
    }

    #[test]
    fn partition_validation() {
        let g = complete(3);
        assert!(OrderedPartition::new(&g, vec![VertexSet::singleton(1)]).is_err());
        assert!(OrderedPartition::new(&g, vec![VertexSet::empty(), g.non_sink_set()]).is_err());
        assert!(OrderedPartition::new(&g, vec![g.all_vertices()]).is_err());
        assert!(OrderedPartition::new(
            &g,
            vec![VertexSet::from_iter([1, 2]), VertexSet::from_iter([2, 3])]
        )
        .is_err());
    }

    #[test]
    fn decomposability_examples() {
        let g = k2();
        for a in [VertexSet::singleton(1), VertexSet::singleton(2)] {
            let part = OrderedPartition::split(&g, a).unwrap();
            assert!(!is_decomposable(&g, &pf(&[1, 1]), &part).unwrap());
        }
        let k4 = complete(4);
        let part = OrderedPartition::from_names(&k4, &[vec!["2", "4"], vec!["1", "3"]]).unwrap();
        assert!(is_decomposable(&k4, &pf(&[3, 1, 3, 1]), &part).unwrap());
        assert_eq!(is_decomposable(&g, &pf(&[2, 2]), &OrderedPartition::split(&g, VertexSet::singleton(1)).unwrap()), Err(ParkingError::NotParking));
    }

    #[test]
    fn primeness_examples() {
        let g = k2();
        assert!(is_prime_bruteforce(&g, &pf(&[1, 1])).unwrap());
        assert!(!is_prime_bruteforce(&g, &pf(&[1, 2])).unwrap());
        assert_eq!(
            decomposing_partition(&g, &pf(&[1, 2])).unwrap(),
            Some(OrderedPartition::split(&g, VertexSet::singleton(1)).unwrap())
        );
        assert!(is_prime_fast(&g, &pf(&[1, 1])).unwrap());
        assert!(!is_prime_fast(&g, &pf(&[1, 2])).unwrap());
        assert_eq!(prime_failures(&g, &pf(&[1, 2])).unwrap(), vec![1]);
        assert_eq!(v_m_parking(&g, &pf(&[1, 2])), VertexSet::singleton(1));
        assert_eq!(add_off_sink(&g, &pf(&[1, 1]), 1), pf(&[1, 2]));
    }

    #[test]
    fn decomposition_examples() {
        let g = k2();
        let all = prime_decompositions(&g, &pf(&[1, 1])).unwrap();
        assert_eq!(all, vec![OrderedPartition::new(&g, vec![g.non_sink_set()]).unwrap()]);
        let all = prime_decompositions(&g, &pf(&[1, 2])).unwrap();
        let expected =
            OrderedPartition::new(&g, vec![VertexSet::singleton(1), VertexSet::singleton(2)]).unwrap();
        assert!(all.contains(&expected));
        assert_eq!(prime_decomposition(&g, &pf(&[1, 2])).unwrap(), expected);
        assert_eq!(prime_decompositions(&g, &pf(&[2, 2])), Err(ParkingError::NotParking));
    }

    #[test]
    fn greedy_decomposition_is_listed() {
        let k4 = complete(4);
        let p = pf(&[3, 1, 3, 1]);
        let one = prime_decomposition(&k4, &p).unwrap();
        let all = prime_decompositions(&k4, &p).unwrap();
        assert!(all.contains(&one), "{one:?} not in {all:?}");
    }

    #[test]
    fn vertex_deletion() {
        let k4 = complete(4);
        let v = k4.vertex("2").unwrap();
        assert!(lemma31_applies(&k4, v));
        let (k3, p) = delete_one_vertex(&k4, &pf(&[3, 1, 3, 1]), v).unwrap();
        assert_eq!(k3.size(), 3);
        assert_eq!(p, pf(&[3, 3, 1]));
        assert!(matches!(
            delete_one_vertex(&k4, &pf(&[1, 1, 1, 1]), k4.sink()),
            Err(ParkingError::Graph(GraphError::DeleteSink))
        ));
    }
}
