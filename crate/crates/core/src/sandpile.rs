//! Abelian sandpile dynamics on a [`RootedMultigraph`].
//!
//! Configurations are integer vectors indexed by non-sink ordinal. Negative
//! values are allowed: grain removal can produce them, and any configuration
//! with a negative value is non-recurrent.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{RootedMultigraph, VertexId, VertexSet};
use crate::io::tuple_string;

/// Default cap on the number of topplings in a single stabilisation.
pub const DEFAULT_MAX_TOPPLINGS: u64 = 10_000_000;

/// Default cap on distinct edges between non-sink vertices for the
/// orientation oracle.
pub const DEFAULT_ORIENTATION_EDGE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SandpileError {
    #[error("configuration has {got} values but the graph has {expected} non-sink vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("`{0}` is not a non-sink vertex")]
    NotNonSink(String),
    #[error("cannot topple stable vertex `{0}`")]
    StableVertex(String),
    #[error("configuration is not stable")]
    Unstable,
    #[error("configuration has a negative value")]
    Negative,
    #[error("stabilisation exceeded {0} topplings")]
    TooManyTopplings(u64),
    #[error("orientation search limited to {cap} non-sink edges, graph has {edges}")]
    OrientationCap { edges: usize, cap: usize },
    #[error("`{0}` is not in V_M(c)")]
    NotInVm(String),
    #[error("vertex weights must be strictly positive")]
    NonPositiveWeight,
    #[error("vertex weights sum to {0}, expected 1")]
    WeightsNotNormalised(f64),
}

/// Grain counts on the non-sink vertices, in ordinal order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(Vec<i64>);

impl Configuration {
    pub fn new(values: Vec<i64>) -> Self {
        Configuration(values)
    }

    pub fn zeros(graph: &RootedMultigraph) -> Self {
        Configuration(vec![0; graph.size()])
    }

    /// `deg - 1` everywhere: the largest stable configuration.
    pub fn max_stable(graph: &RootedMultigraph) -> Self {
        Configuration(
            graph
                .non_sink()
                .iter()
                .map(|&v| graph.degree(v) as i64 - 1)
                .collect(),
        )
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

    /// Total number of grains.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Value at a non-sink vertex.
    pub fn at(&self, graph: &RootedMultigraph, v: VertexId) -> i64 {
        self.0[graph.ordinal(v).expect("non-sink vertex")]
    }

    pub fn is_non_negative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// `c + k·1_v` for a non-sink ordinal.
    pub fn add_at(&self, ordinal: usize, k: i64) -> Self {
        let mut out = self.clone();
        out.0[ordinal] += k;
        out
    }

    fn check(&self, graph: &RootedMultigraph) -> Result<(), SandpileError> {
        if self.0.len() != graph.size() {
            return Err(SandpileError::LengthMismatch {
                expected: graph.size(),
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for Configuration {
    fn from(values: Vec<i64>) -> Self {
        Configuration(values)
    }
}

impl std::ops::Index<usize> for Configuration {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tuple_string(&self.0))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tuple_string(&self.0))
    }
}

fn assert_len(graph: &RootedMultigraph, c: &Configuration) {
    assert_eq!(
        c.len(),
        graph.size(),
        "configuration length does not match the graph"
    );
}

fn non_sink_ordinal(graph: &RootedMultigraph, v: VertexId) -> Result<usize, SandpileError> {
    if v >= graph.vertex_count() {
        return Err(SandpileError::NotNonSink(format!("#{v}")));
    }
    graph
        .ordinal(v)
        .ok_or_else(|| SandpileError::NotNonSink(graph.name(v).to_owned()))
}

/// Every non-sink vertex holds fewer grains than its degree.
pub fn is_stable(graph: &RootedMultigraph, c: &Configuration) -> bool {
    assert_len(graph, c);
    graph
        .non_sink()
        .iter()
        .zip(c.values())
        .all(|(&v, &x)| x < graph.degree(v) as i64)
}

fn topple_in_place(graph: &RootedMultigraph, values: &mut [i64], ordinal: usize) {
    let v = graph.non_sink()[ordinal];
    values[ordinal] -= graph.degree(v) as i64;
    for (j, &w) in graph.non_sink().iter().enumerate() {
        values[j] += graph.mult(v, w) as i64;
    }
}

/// Topples an unstable non-sink vertex once.
pub fn topple(
    graph: &RootedMultigraph,
    c: &Configuration,
    v: VertexId,
) -> Result<Configuration, SandpileError> {
    c.check(graph)?;
    let i = non_sink_ordinal(graph, v)?;
    if c[i] < graph.degree(v) as i64 {
        return Err(SandpileError::StableVertex(graph.name(v).to_owned()));
    }
    let mut values = c.0.clone();
    topple_in_place(graph, &mut values, i);
    Ok(Configuration(values))
}

/// Result of stabilising a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilisationTrace {
    pub stable: Configuration,
    /// Topplings per non-sink ordinal.
    pub odometer: Vec<u64>,
    /// Toppled vertices in order.
    pub log: Vec<VertexId>,
}

impl StabilisationTrace {
    /// Applies the toppling log to `start`, returning the configuration it
    /// reaches. Fails if some logged toppling is illegal.
    pub fn replay(
        &self,
        graph: &RootedMultigraph,
        start: &Configuration,
    ) -> Result<Configuration, SandpileError> {
        self.log
            .iter()
            .try_fold(start.clone(), |c, &v| topple(graph, &c, v))
    }
}

/// Stabilises `c`, toppling the first unstable vertex in declaration order
/// at each step.
pub fn stabilize(
    graph: &RootedMultigraph,
    c: &Configuration,
) -> Result<StabilisationTrace, SandpileError> {
    stabilize_with(graph, c, DEFAULT_MAX_TOPPLINGS, |unstable| unstable[0])
}

/// Stabilises `c` with a caller-chosen toppling order. `pick` receives the
/// currently unstable vertices (sorted, as [`VertexId`]s) and returns the one
/// to topple next.
pub fn stabilize_with(
    graph: &RootedMultigraph,
    c: &Configuration,
    max_topplings: u64,
    mut pick: impl FnMut(&[VertexId]) -> VertexId,
) -> Result<StabilisationTrace, SandpileError> {
    c.check(graph)?;
    let ns = graph.non_sink();
    let mut values = c.0.clone();
    let mut odometer = vec![0u64; ns.len()];
    let mut log = Vec::new();
    let unstable_at = |values: &[i64], i: usize| values[i] >= graph.degree(ns[i]) as i64;
    let mut unstable: BTreeSet<usize> = (0..ns.len()).filter(|&i| unstable_at(&values, i)).collect();
    let mut scratch = Vec::new();
    while !unstable.is_empty() {
        if log.len() as u64 >= max_topplings {
            return Err(SandpileError::TooManyTopplings(max_topplings));
        }
        scratch.clear();
        scratch.extend(unstable.iter().map(|&i| ns[i]));
        let v = pick(&scratch);
        let i = graph
            .ordinal(v)
            .filter(|i| unstable.contains(i))
            .expect("picked vertex must be unstable");
        topple_in_place(graph, &mut values, i);
        odometer[i] += 1;
        log.push(v);
        for (j, &w) in ns.iter().enumerate() {
            if j == i || graph.mult(v, w) > 0 {
                if unstable_at(&values, j) {
                    unstable.insert(j);
                } else {
                    unstable.remove(&j);
                }
            }
        }
    }
    Ok(StabilisationTrace {
        stable: Configuration(values),
        odometer,
        log,
    })
}

/// `c + Σ mult(w, s)·1_w`: the configuration after "toppling the sink".
pub fn add_sink_toppling(graph: &RootedMultigraph, c: &Configuration) -> Configuration {
    assert_len(graph, c);
    Configuration(
        graph
            .non_sink()
            .iter()
            .zip(c.values())
            .map(|(&w, &x)| x + graph.sink_mult(w) as i64)
            .collect(),
    )
}

/// Dhar's burning test by stabilisation: topple the sink, stabilise, and
/// check every vertex toppled exactly once and `c` came back.
///
/// Returns the burning sequence (sink first) when `c` is recurrent, `None`
/// otherwise. Input must be stable and non-negative.
pub fn is_recurrent_burning(
    graph: &RootedMultigraph,
    c: &Configuration,
) -> Result<Option<Vec<VertexId>>, SandpileError> {
    c.check(graph)?;
    if !c.is_non_negative() {
        return Err(SandpileError::Negative);
    }
    if !is_stable(graph, c) {
        return Err(SandpileError::Unstable);
    }
    let trace = stabilize(graph, &add_sink_toppling(graph, c))?;
    if trace.stable == *c && trace.odometer.iter().all(|&k| k == 1) {
        let mut seq = Vec::with_capacity(graph.vertex_count());
        seq.push(graph.sink());
        seq.extend(trace.log);
        Ok(Some(seq))
    } else {
        Ok(None)
    }
}

/// Checks a candidate burning sequence against `c`: starts at the sink, is a
/// permutation of all vertices, and each `v_i` holds at least
/// `deg^{V \ {v_0..v_{i-1}}}(v_i)` grains.
pub fn is_burning_sequence(graph: &RootedMultigraph, c: &Configuration, seq: &[VertexId]) -> bool {
    assert_len(graph, c);
    if seq.len() != graph.vertex_count() || seq.first() != Some(&graph.sink()) {
        return false;
    }
    let mut remaining = graph.all_vertices().without(graph.sink());
    for &v in &seq[1..] {
        if !remaining.contains(v) {
            return false;
        }
        if c.at(graph, v) < graph.deg_within(v, remaining) as i64 {
            return false;
        }
        remaining.remove(v);
    }
    true
}

/// Largest forbidden subconfiguration of `c` (empty iff none exists).
///
/// Starts from all non-sink vertices and repeatedly drops any `v` with
/// `c(v) >= deg^F(v)`. Negative values are never dropped.
pub fn max_forbidden_set(graph: &RootedMultigraph, c: &Configuration) -> VertexSet {
    let order: Vec<usize> = (0..graph.size()).collect();
    max_forbidden_set_in_order(graph, c, &order)
}

/// [`max_forbidden_set`] scanning vertices in the given ordinal order on
/// every pass. The fixed point does not depend on the order.
pub fn max_forbidden_set_in_order(
    graph: &RootedMultigraph,
    c: &Configuration,
    order: &[usize],
) -> VertexSet {
    assert_len(graph, c);
    let ns = graph.non_sink();
    let mut inside = vec![true; ns.len()];
    let mut deg_f: Vec<i64> = ns
        .iter()
        .map(|&v| graph.deg_within(v, graph.non_sink_set()) as i64)
        .collect();
    loop {
        let mut changed = false;
        for &i in order {
            if inside[i] && c[i] >= deg_f[i] {
                inside[i] = false;
                changed = true;
                let v = ns[i];
                for (j, &w) in ns.iter().enumerate() {
                    deg_f[j] -= graph.mult(v, w) as i64;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..ns.len()).filter(|&i| inside[i]).map(|i| ns[i]).collect()
}

/// `true` iff `F` is a forbidden subconfiguration: non-empty, non-sink, and
/// `c(v) < deg^F(v)` on all of `F`.
pub fn is_forbidden(graph: &RootedMultigraph, c: &Configuration, f: VertexSet) -> bool {
    !f.is_empty()
        && f.is_subset(graph.non_sink_set())
        && f.iter().all(|v| c.at(graph, v) < graph.deg_within(v, f) as i64)
}

/// Total recurrence predicate: stable and no forbidden subconfiguration.
/// Accepts any integer configuration.
pub fn is_recurrent(graph: &RootedMultigraph, c: &Configuration) -> bool {
    is_stable(graph, c) && max_forbidden_set(graph, c).is_empty()
}

/// An orientation of every edge of a graph, multiplicities included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedAcyclicOrientation {
    /// `(from, to, multiplicity)` per adjacent pair.
    pub arcs: Vec<(VertexId, VertexId, u32)>,
}

impl RootedAcyclicOrientation {
    pub fn in_degree(&self, v: VertexId) -> u64 {
        self.arcs
            .iter()
            .filter(|a| a.1 == v)
            .map(|a| a.2 as u64)
            .sum()
    }

    pub fn out_degree(&self, v: VertexId) -> u64 {
        self.arcs
            .iter()
            .filter(|a| a.0 == v)
            .map(|a| a.2 as u64)
            .sum()
    }

    pub fn is_acyclic(&self, vertex_count: usize) -> bool {
        let mut indeg = vec![0usize; vertex_count];
        for a in &self.arcs {
            indeg[a.1] += 1;
        }
        let mut stack: Vec<VertexId> = (0..vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arcs.iter().filter(|a| a.0 == v) {
                indeg[a.1] -= 1;
                if indeg[a.1] == 0 {
                    stack.push(a.1);
                }
            }
        }
        seen == vertex_count
    }

    /// Acyclic with the sink as its only target (vertex without out-arcs).
    pub fn is_rooted_acyclic(&self, graph: &RootedMultigraph) -> bool {
        self.is_acyclic(graph.vertex_count())
            && (0..graph.vertex_count())
                .all(|v| (self.out_degree(v) == 0) == (v == graph.sink()))
    }

    /// `c(v) >= in(v)` on every non-sink vertex.
    pub fn is_compatible(&self, graph: &RootedMultigraph, c: &Configuration) -> bool {
        graph
            .non_sink()
            .iter()
            .all(|&v| c.at(graph, v) >= self.in_degree(v) as i64)
    }
}

/// All rooted acyclic orientations of a graph, reduced to the ones with
/// minimal in-degree vectors. A configuration is compatible with some
/// rooted acyclic orientation iff it dominates one of these.
#[derive(Debug, Clone)]
pub struct OrientationOracle {
    minimal: Vec<(Vec<u64>, RootedAcyclicOrientation)>,
    orientations_seen: u64,
}

impl OrientationOracle {
    pub fn new(graph: &RootedMultigraph) -> Result<Self, SandpileError> {
        Self::with_cap(graph, DEFAULT_ORIENTATION_EDGE_CAP)
    }

    /// Enumerates every direction assignment on the distinct non-sink
    /// edges. Parallel copies of an edge share a direction (opposite copies
    /// form a directed 2-cycle) and edges at the sink point into it, since
    /// the sink must be a target.
    pub fn with_cap(graph: &RootedMultigraph, cap: usize) -> Result<Self, SandpileError> {
        let sink = graph.sink();
        let inner: Vec<(VertexId, VertexId, u32)> =
            graph.edges().filter(|e| e.0 != sink && e.1 != sink).collect();
        if inner.len() > cap {
            return Err(SandpileError::OrientationCap {
                edges: inner.len(),
                cap,
            });
        }
        let to_sink: Vec<(VertexId, VertexId, u32)> = graph
            .edges()
            .filter(|e| e.0 == sink || e.1 == sink)
            .map(|(a, b, m)| if a == sink { (b, a, m) } else { (a, b, m) })
            .collect();
        let mut minimal: Vec<(Vec<u64>, RootedAcyclicOrientation)> = Vec::new();
        let mut seen = 0;
        for mask in 0u64..(1u64 << inner.len()) {
            let mut arcs = to_sink.clone();
            arcs.extend(inner.iter().enumerate().map(|(k, &(a, b, m))| {
                if mask >> k & 1 == 0 {
                    (a, b, m)
                } else {
                    (b, a, m)
                }
            }));
            let orientation = RootedAcyclicOrientation { arcs };
            if !orientation.is_rooted_acyclic(graph) {
                continue;
            }
            seen += 1;
            let indeg: Vec<u64> = graph
                .non_sink()
                .iter()
                .map(|&v| orientation.in_degree(v))
                .collect();
            let dominated = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x <= y);
            if minimal.iter().any(|(m, _)| dominated(m, &indeg)) {
                continue;
            }
            minimal.retain(|(m, _)| !dominated(&indeg, m));
            minimal.push((indeg, orientation));
        }
        Ok(OrientationOracle {
            minimal,
            orientations_seen: seen,
        })
    }

    /// Number of rooted acyclic orientations found.
    pub fn orientation_count(&self) -> u64 {
        self.orientations_seen
    }

    /// A rooted acyclic orientation compatible with `c`, if any.
    pub fn compatible(&self, c: &Configuration) -> Option<&RootedAcyclicOrientation> {
        self.minimal
            .iter()
            .find(|(indeg, _)| c.values().iter().zip(indeg).all(|(&x, &d)| x >= d as i64))
            .map(|(_, o)| o)
    }

    pub fn is_recurrent(&self, c: &Configuration) -> bool {
        self.compatible(c).is_some()
    }
}

/// Recurrence through compatible rooted acyclic orientations. Exhaustive,
/// so only for small graphs; see [`OrientationOracle`] to reuse the search.
pub fn is_recurrent_orientation(
    graph: &RootedMultigraph,
    c: &Configuration,
) -> Result<bool, SandpileError> {
    c.check(graph)?;
    Ok(OrientationOracle::new(graph)?.is_recurrent(c))
}

/// `V_M(c)`: sink neighbours `v` with `c(v) >= deg(v) - mult(v, s)`.
pub fn v_m_set(graph: &RootedMultigraph, c: &Configuration) -> VertexSet {
    assert_len(graph, c);
    graph
        .non_sink()
        .iter()
        .zip(c.values())
        .filter(|(&v, &x)| {
            let m = graph.sink_mult(v);
            m > 0 && x >= graph.degree(v) as i64 - m as i64
        })
        .map(|(&v, _)| v)
        .collect()
}

/// `c^{v-}`: removes `mult(w, s)` grains from every non-sink `w != v`.
pub fn remove_off_grains(
    graph: &RootedMultigraph,
    c: &Configuration,
    v: VertexId,
) -> Result<Configuration, SandpileError> {
    c.check(graph)?;
    non_sink_ordinal(graph, v)?;
    if !v_m_set(graph, c).contains(v) {
        return Err(SandpileError::NotInVm(graph.name(v).to_owned()));
    }
    Ok(Configuration(
        graph
            .non_sink()
            .iter()
            .zip(c.values())
            .map(|(&w, &x)| {
                if w == v {
                    x
                } else {
                    x - graph.sink_mult(w) as i64
                }
            })
            .collect(),
    ))
}

/// Quantifier over `V_M(c)` in the strong recurrence test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    ForAll,
    Exists,
}

/// Vertices `v ∈ V_M(c)` whose `c^{v-}` is not recurrent.
pub fn strong_recurrence_failures(graph: &RootedMultigraph, c: &Configuration) -> Vec<VertexId> {
    v_m_set(graph, c)
        .iter()
        .filter(|&v| {
            let reduced = remove_off_grains(graph, c, v).expect("v in V_M");
            !is_recurrent(graph, &reduced)
        })
        .collect()
}

/// Strong recurrence. Non-recurrent input gives `false`.
pub fn is_strongly_recurrent(
    graph: &RootedMultigraph,
    c: &Configuration,
    quantifier: Quantifier,
) -> bool {
    if !is_recurrent(graph, c) {
        return false;
    }
    let vm = v_m_set(graph, c);
    let failures = strong_recurrence_failures(graph, c).len();
    match quantifier {
        Quantifier::ForAll => failures == 0,
        Quantifier::Exists => failures < vm.len(),
    }
}

/// Recurrent, and removing any single grain breaks recurrence.
pub fn is_minimal_recurrent(graph: &RootedMultigraph, c: &Configuration) -> bool {
    is_recurrent(graph, c) && (0..c.len()).all(|i| !is_recurrent(graph, &c.add_at(i, -1)))
}

/// One transition of the sandpile Markov chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovStep {
    pub step: u64,
    pub dropped: VertexId,
    pub state: Configuration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovRun {
    pub start: Configuration,
    /// Visit counts, the start included.
    pub visits: BTreeMap<Configuration, u64>,
    pub trace: Vec<MarkovStep>,
}

impl MarkovRun {
    /// First step at which the chain sits in a recurrent state (0 if the
    /// start is recurrent).
    pub fn first_recurrent_step(&self, graph: &RootedMultigraph) -> Option<u64> {
        if is_recurrent(graph, &self.start) {
            return Some(0);
        }
        self.trace
            .iter()
            .find(|s| is_recurrent(graph, &s.state))
            .map(|s| s.step)
    }

    /// States visited from step `from` on (inclusive, step 0 is the start).
    pub fn states_from(&self, from: u64) -> BTreeSet<Configuration> {
        let mut out = BTreeSet::new();
        if from == 0 {
            out.insert(self.start.clone());
        }
        out.extend(
            self.trace
                .iter()
                .filter(|s| s.step >= from)
                .map(|s| s.state.clone()),
        );
        out
    }

    /// Writes `step,dropped_vertex,configuration` rows; the configuration
    /// column joins values with commas in declaration order.
    pub fn write_trace_csv<W: Write>(
        &self,
        graph: &RootedMultigraph,
        out: W,
    ) -> Result<(), csv::Error> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["step", "dropped_vertex", "configuration"])?;
        for s in &self.trace {
            let joined: Vec<String> = s.state.values().iter().map(i64::to_string).collect();
            writer.write_record([
                s.step.to_string(),
                graph.name(s.dropped).to_owned(),
                joined.join(","),
            ])?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Runs the chain "drop a grain at `v ~ mu`, then stabilise" for `steps`
/// steps from a stable start. `mu` defaults to uniform; it must be strictly
/// positive and sum to 1 within 1e-9, and is renormalised.
pub fn markov_run(
    graph: &RootedMultigraph,
    start: &Configuration,
    mu: Option<&[f64]>,
    steps: u64,
    seed: u64,
) -> Result<MarkovRun, SandpileError> {
    start.check(graph)?;
    if !is_stable(graph, start) {
        return Err(SandpileError::Unstable);
    }
    let n = graph.size();
    let weights: Vec<f64> = match mu {
        None => vec![1.0 / n as f64; n],
        Some(mu) => {
            if mu.len() != n {
                return Err(SandpileError::LengthMismatch {
                    expected: n,
                    got: mu.len(),
                });
            }
            if mu.iter().any(|&w| !w.is_finite() || w <= 0.0) {
                return Err(SandpileError::NonPositiveWeight);
            }
            let sum: f64 = mu.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(SandpileError::WeightsNotNormalised(sum));
            }
            mu.iter().map(|w| w / sum).collect()
        }
    };
    let dist = WeightedIndex::new(&weights).map_err(|_| SandpileError::NonPositiveWeight)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut visits = BTreeMap::new();
    visits.insert(start.clone(), 1);
    let mut trace = Vec::with_capacity(steps as usize);
    let mut state = start.clone();
    for step in 1..=steps {
        let i = dist.sample(&mut rng);
        state = stabilize(graph, &state.add_at(i, 1))?.stable;
        *visits.entry(state.clone()).or_insert(0) += 1;
        trace.push(MarkovStep {
            step,
            dropped: graph.non_sink()[i],
            state: state.clone(),
        });
    }
    Ok(MarkovRun {
        start: start.clone(),
        visits,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> RootedMultigraph {
        RootedMultigraph::build(
            &["0", "v1", "v2"],
            "0",
            &[("0", "v1", 1), ("0", "v2", 1), ("v1", "v2", 1)],
        )
        .unwrap()
    }

    // W_3^0 is K_4 with the hub as sink.
    fn w3() -> RootedMultigraph {
        RootedMultigraph::build(
            &["0", "1", "2", "3"],
            "0",
            &[
                ("0", "1", 1),
                ("0", "2", 1),
                ("0", "3", 1),
                ("1", "2", 1),
                ("2", "3", 1),
                ("3", "1", 1),
            ],
        )
        .unwrap()
    }

    fn c(v: &[i64]) -> Configuration {
        Configuration::new(v.to_vec())
    }

    #[test]
    fn stability() {
        assert!(is_stable(&k2(), &c(&[1, 1])));
        assert!(!is_stable(&k2(), &c(&[2, 0])));
        assert!(is_stable(&w3(), &c(&[2, 2, 2])));
    }

    #[test]
    fn toppling() {
        let g = k2();
        assert_eq!(topple(&g, &c(&[2, 0]), 1).unwrap(), c(&[0, 1]));
        assert_eq!(topple(&g, &c(&[2, 2]), 1).unwrap(), c(&[0, 3]));
        assert_eq!(
            topple(&g, &c(&[1, 1]), 1),
            Err(SandpileError::StableVertex("v1".into()))
        );
        assert!(matches!(topple(&g, &c(&[3, 3]), 0), Err(SandpileError::NotNonSink(_))));
        // grain accounting
        let before = c(&[5, 2]);
        let after = topple(&g, &before, 1).unwrap();
        assert_eq!(after.total(), before.total() - g.sink_mult(1) as i64);
    }

    #[test]
    fn stabilisation_examples() {
        let g = k2();
        let t = stabilize(&g, &c(&[2, 2])).unwrap();
        assert_eq!(t.stable, c(&[1, 1]));
        assert_eq!(t.odometer, vec![1, 1]);
        assert_eq!(t.log, vec![1, 2]);
        assert_eq!(t.replay(&g, &c(&[2, 2])).unwrap(), t.stable);

        let t = stabilize(&g, &c(&[1, 0])).unwrap();
        assert_eq!(t.stable, c(&[1, 0]));
        assert!(t.log.is_empty());

        let t = stabilize(&g, &c(&[2, 0])).unwrap();
        assert_eq!(t.stable, c(&[0, 1]));
        assert_eq!(t.odometer, vec![1, 0]);
    }

    #[test]
    fn toppling_guard_trips() {
        let g = k2();
        let err = stabilize_with(&g, &c(&[1000, 1000]), 10, |u| u[0]);
        assert_eq!(err, Err(SandpileError::TooManyTopplings(10)));
    }

    #[test]
    fn burning_examples() {
        let g = k2();
        let seq = is_recurrent_burning(&g, &c(&[1, 1])).unwrap().unwrap();
        assert!(seq == vec![0, 1, 2] || seq == vec![0, 2, 1]);
        assert!(is_burning_sequence(&g, &c(&[1, 1]), &seq));
        assert_eq!(is_recurrent_burning(&g, &c(&[0, 0])).unwrap(), None);
        assert_eq!(is_recurrent_burning(&w3(), &c(&[2, 0, 0])).unwrap(), None);
        assert_eq!(is_recurrent_burning(&g, &c(&[2, 0])), Err(SandpileError::Unstable));
        assert_eq!(is_recurrent_burning(&g, &c(&[1, -1])), Err(SandpileError::Negative));
    }

    #[test]
    fn forbidden_sets() {
        let g = k2();
        assert_eq!(max_forbidden_set(&g, &c(&[0, 0])), VertexSet::from_iter([1, 2]));
        assert!(max_forbidden_set(&g, &c(&[1, 0])).is_empty());
        let f = max_forbidden_set(&g, &c(&[1, -1]));
        assert!(f.contains(2));
        assert!(is_forbidden(&g, &c(&[1, -1]), f));
        assert!(is_forbidden(&g, &c(&[0, 0]), VertexSet::from_iter([1, 2])));
    }

    #[test]
    fn orientation_examples() {
        let g = k2();
        assert!(is_recurrent_orientation(&g, &c(&[1, 1])).unwrap());
        assert!(!is_recurrent_orientation(&g, &c(&[0, 0])).unwrap());
        let oracle = OrientationOracle::new(&g).unwrap();
        // triangle: 6 acyclic orientations, 2 with the sink as only target
        assert_eq!(oracle.orientation_count(), 2);
        let o = oracle.compatible(&c(&[1, 1])).unwrap();
        assert!(o.is_rooted_acyclic(&g));
        assert!(o.is_compatible(&g, &c(&[1, 1])));
        for g in [k2(), w3()] {
            assert!(is_recurrent_orientation(&g, &Configuration::max_stable(&g)).unwrap());
        }
    }

    #[test]
    fn orientation_cap() {
        let err = OrientationOracle::with_cap(&w3(), 2).unwrap_err();
        assert_eq!(err, SandpileError::OrientationCap { edges: 3, cap: 2 });
    }

    #[test]
    fn v_m_examples() {
        let g = k2();
        assert_eq!(v_m_set(&g, &c(&[1, 1])), VertexSet::from_iter([1, 2]));
        assert_eq!(v_m_set(&g, &c(&[1, 0])), VertexSet::from_iter([1]));
        assert!(v_m_set(&g, &c(&[0, 0])).is_empty());
    }

    #[test]
    fn off_grain_removal() {
        let g = k2();
        assert_eq!(remove_off_grains(&g, &c(&[1, 1]), 1).unwrap(), c(&[1, 0]));
        assert_eq!(remove_off_grains(&g, &c(&[1, 0]), 1).unwrap(), c(&[1, -1]));
        assert_eq!(remove_off_grains(&w3(), &c(&[2, 2, 2]), 1).unwrap(), c(&[2, 1, 1]));
        assert_eq!(
            remove_off_grains(&g, &c(&[1, 0]), 2),
            Err(SandpileError::NotInVm("v2".into()))
        );
    }

    #[test]
    fn strong_and_minimal_recurrence() {
        let g = k2();
        assert!(is_strongly_recurrent(&g, &c(&[1, 1]), Quantifier::ForAll));
        assert!(!is_strongly_recurrent(&g, &c(&[1, 0]), Quantifier::ForAll));
        assert!(!is_strongly_recurrent(&g, &c(&[0, 0]), Quantifier::Exists));
        assert!(!is_strongly_recurrent(&w3(), &c(&[2, 0, 2]), Quantifier::ForAll));
        assert_eq!(strong_recurrence_failures(&g, &c(&[1, 0])), vec![1]);

        assert!(is_minimal_recurrent(&g, &c(&[1, 0])));
        assert!(!is_minimal_recurrent(&g, &c(&[1, 1])));
        assert!(!is_minimal_recurrent(&g, &c(&[0, 0])));
    }

    #[test]
    fn markov_basics() {
        let g = k2();
        let run = markov_run(&g, &c(&[0, 0]), None, 0, 7).unwrap();
        assert_eq!(run.visits.len(), 1);
        assert_eq!(run.visits[&c(&[0, 0])], 1);

        let a = markov_run(&g, &c(&[0, 0]), None, 10_000, 42).unwrap();
        let b = markov_run(&g, &c(&[0, 0]), None, 10_000, 42).unwrap();
        assert_eq!(a, b);
        let rec: BTreeSet<_> = [c(&[1, 1]), c(&[1, 0]), c(&[0, 1])].into();
        assert!(a.states_from(101).is_subset(&rec));

        assert_eq!(
            markov_run(&g, &c(&[0, 0]), Some(&[1.0, 0.0]), 5, 1),
            Err(SandpileError::NonPositiveWeight)
        );
        assert!(matches!(
            markov_run(&g, &c(&[0, 0]), Some(&[0.3, 0.3]), 5, 1),
            Err(SandpileError::WeightsNotNormalised(_))
        ));
        assert!(markov_run(&g, &c(&[0, 0]), Some(&[0.25, 0.75]), 5, 1).is_ok());
    }

    #[test]
    fn trace_csv() {
        let g = k2();
        let run = markov_run(&g, &c(&[1, 1]), None, 3, 3).unwrap();
        let mut buf = Vec::new();
        run.write_trace_csv(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("step,dropped_vertex,configuration"));
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].starts_with("1,v"));
        assert!(rows[0].ends_with('"'));
    }
}
