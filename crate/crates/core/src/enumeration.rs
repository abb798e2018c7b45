//! Exhaustive enumeration of configuration and parking classes, count
//! verification against closed forms, oracle cross-validation, and seeded
//! witness searches.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::families::{binomial, closed_form_count, is_increasing, make_family, CountClass, FamilyError, FamilySpec};
use crate::graph::{GraphError, GraphFile, RootedMultigraph};
use crate::parking::{
    is_parking, is_prime_bruteforce, is_prime_fast, is_prime_parking, parking_violation, pf_from_config,
    prime_decompositions, OrderedPartition, ParkingCandidate, ParkingError,
};
use crate::sandpile::{
    is_minimal_recurrent, is_recurrent, is_recurrent_burning, is_strongly_recurrent, max_forbidden_set,
    v_m_set, Configuration, OrientationOracle, Quantifier, SandpileError,
};

/// Largest search space (number of candidates) enumerated by default.
pub const DEFAULT_SPACE_CAP: u128 = 100_000_000;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("search space of {size} candidates exceeds the cap of {cap}")]
    SpaceCap { size: u128, cap: u128 },
    #[error("class {0} needs a graph with declared parts")]
    NoParts(EnumClass),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sandpile(#[from] SandpileError),
    #[error(transparent)]
    Parking(#[from] ParkingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EnumClass {
    Stable,
    Recurrent,
    SrForall,
    SrExists,
    MinRecurrent,
    Pf,
    Ppf,
    PfInc,
    PpfInc,
}

impl EnumClass {
    pub const ALL: [EnumClass; 9] = [
        EnumClass::Stable,
        EnumClass::Recurrent,
        EnumClass::SrForall,
        EnumClass::SrExists,
        EnumClass::MinRecurrent,
        EnumClass::Pf,
        EnumClass::Ppf,
        EnumClass::PfInc,
        EnumClass::PpfInc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnumClass::Stable => "STABLE",
            EnumClass::Recurrent => "RECURRENT",
            EnumClass::SrForall => "SR_FORALL",
            EnumClass::SrExists => "SR_EXISTS",
            EnumClass::MinRecurrent => "MINRECURRENT",
            EnumClass::Pf => "PF",
            EnumClass::Ppf => "PPF",
            EnumClass::PfInc => "PF_INC",
            EnumClass::PpfInc => "PPF_INC",
        }
    }

    /// Configuration classes range over `{0..deg-1}`, parking classes over
    /// `{1..deg}`.
    pub fn is_configuration_class(self) -> bool {
        matches!(
            self,
            EnumClass::Stable
                | EnumClass::Recurrent
                | EnumClass::SrForall
                | EnumClass::SrExists
                | EnumClass::MinRecurrent
        )
    }

    pub fn is_increasing(self) -> bool {
        matches!(self, EnumClass::PfInc | EnumClass::PpfInc)
    }

    fn accepts(self, graph: &RootedMultigraph, values: &[i64]) -> bool {
        let config = || Configuration::new(values.to_vec());
        match self {
            EnumClass::Stable => true,
            EnumClass::Recurrent => is_recurrent(graph, &config()),
            EnumClass::SrForall => is_strongly_recurrent(graph, &config(), Quantifier::ForAll),
            EnumClass::SrExists => is_strongly_recurrent(graph, &config(), Quantifier::Exists),
            EnumClass::MinRecurrent => is_minimal_recurrent(graph, &config()),
            EnumClass::Pf => is_parking(graph, values),
            EnumClass::Ppf => is_prime_parking(graph, values),
            EnumClass::PfInc => is_increasing(graph, values) && is_parking(graph, values),
            EnumClass::PpfInc => is_increasing(graph, values) && is_prime_parking(graph, values),
        }
    }
}

impl fmt::Display for EnumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnumClass {
    type Err = EnumerationError;

    /// Case-insensitive; `-` and `_` are interchangeable.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        EnumClass::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| EnumerationError::UnknownClass(s.to_owned()))
    }
}

/// Lexicographic odometer over per-vertex ranges, optionally forcing values
/// to be non-decreasing along each part.
#[derive(Debug, Clone)]
struct Odometer {
    lo: Vec<i64>,
    hi: Vec<i64>,
    pred: Vec<Option<usize>>,
    current: Option<Vec<i64>>,
}

impl Odometer {
    fn new(lo: Vec<i64>, hi: Vec<i64>, pred: Vec<Option<usize>>) -> Self {
        let mut odo = Odometer {
            current: Some(lo.clone()),
            lo,
            hi,
            pred,
        };
        if let Some(bad) = odo.fill_from(0) {
            if !odo.advance(bad) {
                odo.current = None;
            }
        }
        odo
    }

    fn lower(&self, cur: &[i64], j: usize) -> i64 {
        match self.pred[j] {
            Some(k) if k < j => self.lo[j].max(cur[k]),
            _ => self.lo[j],
        }
    }

    /// Resets positions `from..` to their lower bounds; returns the first
    /// position with an empty range.
    fn fill_from(&mut self, from: usize) -> Option<usize> {
        let mut cur = self.current.take().expect("active");
        let mut bad = None;
        for j in from..cur.len() {
            let lb = self.lower(&cur, j);
            if lb > self.hi[j] {
                bad = Some(j);
                break;
            }
            cur[j] = lb;
        }
        self.current = Some(cur);
        bad
    }

    /// Steps to the next valid tuple, changing only positions `< end` and
    /// refilling the suffix.
    fn advance(&mut self, mut end: usize) -> bool {
        loop {
            let cur = self.current.as_mut().expect("active");
            let Some(i) = (0..end).rev().find(|&i| cur[i] < self.hi[i]) else {
                return false;
            };
            cur[i] += 1;
            match self.fill_from(i + 1) {
                None => return true,
                Some(bad) => end = bad,
            }
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.clone()?;
        let n = out.len();
        if n == 0 || !self.advance(n) {
            self.current = None;
        }
        Some(out)
    }
}

/// Lazy stream of the members of a class, in lexicographic order of the
/// values in declaration order.
pub struct Enumeration<'g> {
    graph: &'g RootedMultigraph,
    class: EnumClass,
    odometer: Odometer,
}

impl Iterator for Enumeration<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let (graph, class) = (self.graph, self.class);
        self.odometer.by_ref().find(|v| class.accepts(graph, v))
    }
}

fn ranges(graph: &RootedMultigraph, class: EnumClass) -> (Vec<i64>, Vec<i64>) {
    let shift = if class.is_configuration_class() { 1 } else { 0 };
    let lo = vec![1 - shift; graph.size()];
    let hi = graph
        .non_sink()
        .iter()
        .map(|&v| graph.degree(v) as i64 - shift)
        .collect();
    (lo, hi)
}

fn predecessors(graph: &RootedMultigraph, class: EnumClass) -> Result<Vec<Option<usize>>, EnumerationError> {
    let mut pred = vec![None; graph.size()];
    if class.is_increasing() {
        let parts = graph.parts().ok_or(EnumerationError::NoParts(class))?;
        for part in parts {
            for w in part.windows(2) {
                pred[w[1]] = Some(w[0]);
            }
        }
    }
    Ok(pred)
}

/// Number of candidates the enumerator will visit: a plain product, or the
/// number of multisets per part for increasing classes.
pub fn search_space_size(graph: &RootedMultigraph, class: EnumClass) -> Result<u128, EnumerationError> {
    let (lo, hi) = ranges(graph, class);
    let width = |i: usize| (hi[i] - lo[i] + 1).max(0) as usize;
    let size = if class.is_increasing() {
        let parts = graph.parts().ok_or(EnumerationError::NoParts(class))?;
        let mut total = BigUint::one();
        for part in parts {
            let r = part.iter().map(|&i| width(i)).max().unwrap_or(0);
            let k = part.len();
            total *= if r == 0 { BigUint::zero() } else { binomial(r + k - 1, k) };
        }
        total
    } else {
        (0..graph.size()).map(|i| BigUint::from(width(i))).product()
    };
    Ok(u128::try_from(size).unwrap_or(u128::MAX))
}

pub fn enumerate_class(graph: &RootedMultigraph, class: EnumClass) -> Result<Enumeration<'_>, EnumerationError> {
    enumerate_class_with_cap(graph, class, DEFAULT_SPACE_CAP)
}

pub fn enumerate_class_with_cap(
    graph: &RootedMultigraph,
    class: EnumClass,
    cap: u128,
) -> Result<Enumeration<'_>, EnumerationError> {
    let size = search_space_size(graph, class)?;
    if size > cap {
        return Err(EnumerationError::SpaceCap { size, cap });
    }
    let (lo, hi) = ranges(graph, class);
    let pred = predecessors(graph, class)?;
    Ok(Enumeration {
        graph,
        class,
        odometer: Odometer::new(lo, hi, pred),
    })
}

/// Shards of the search space: contiguous slices of the first vertex's
/// range, one per worker, in lexicographic order.
fn shards(graph: &RootedMultigraph, class: EnumClass, jobs: usize) -> Result<Vec<Odometer>, EnumerationError> {
    let (lo, hi) = ranges(graph, class);
    let pred = predecessors(graph, class)?;
    if graph.size() == 0 {
        return Ok(vec![Odometer::new(lo, hi, pred)]);
    }
    let (first_lo, first_hi) = (lo[0], hi[0]);
    let span = (first_hi - first_lo + 1).max(1) as usize;
    let jobs = jobs.clamp(1, span);
    let mut out = Vec::with_capacity(jobs);
    let mut start = first_lo;
    for k in 0..jobs {
        let len = (span / jobs + usize::from(k < span % jobs)) as i64;
        let (mut l, mut h) = (lo.clone(), hi.clone());
        l[0] = start;
        h[0] = start + len - 1;
        start += len;
        out.push(Odometer::new(l, h, pred.clone()));
    }
    Ok(out)
}

fn check_cap(graph: &RootedMultigraph, class: EnumClass, cap: u128) -> Result<(), EnumerationError> {
    let size = search_space_size(graph, class)?;
    if size > cap {
        return Err(EnumerationError::SpaceCap { size, cap });
    }
    Ok(())
}

/// Collects the class with `jobs` worker threads. Output order is identical
/// to [`enumerate_class`] for every worker count.
pub fn collect_class(
    graph: &RootedMultigraph,
    class: EnumClass,
    jobs: usize,
    cap: u128,
) -> Result<Vec<Vec<i64>>, EnumerationError> {
    check_cap(graph, class, cap)?;
    let shards = shards(graph, class, jobs)?;
    let parts: Vec<Vec<Vec<i64>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = shards
            .into_iter()
            .map(|odo| scope.spawn(move || odo.filter(|v| class.accepts(graph, v)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Counts the class with `jobs` worker threads, without storing members.
pub fn count_class(
    graph: &RootedMultigraph,
    class: EnumClass,
    jobs: usize,
    cap: u128,
) -> Result<BigUint, EnumerationError> {
    check_cap(graph, class, cap)?;
    let shards = shards(graph, class, jobs)?;
    let counts: Vec<u64> = std::thread::scope(|scope| {
        let handles: Vec<_> = shards
            .into_iter()
            .map(|mut odo| scope.spawn(move || odo.by_ref().filter(|v| class.accepts(graph, v)).count() as u64))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(counts.into_iter().map(BigUint::from).sum())
}

mod big_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| t.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    /// Family name, or `graph` for file graphs.
    pub family: String,
    pub params: String,
    pub class: EnumClass,
    #[serde(with = "big_string")]
    pub count: BigUint,
    #[serde(with = "big_string::option")]
    pub expected: Option<BigUint>,
    pub expected_source: Option<String>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub millis: u128,
}

impl EnumerationReport {
    pub fn new(
        family: impl Into<String>,
        params: impl Into<String>,
        class: EnumClass,
        count: BigUint,
        expected: Option<(BigUint, String)>,
        millis: u128,
    ) -> Self {
        let matches = expected.as_ref().is_none_or(|(e, _)| *e == count);
        let (expected, expected_source) = match expected {
            Some((e, s)) => (Some(e), Some(s)),
            None => (None, None),
        };
        EnumerationReport {
            family: family.into(),
            params: params.into(),
            class,
            count,
            expected,
            expected_source,
            matches,
            millis,
        }
    }
}

/// Reference count for a class on an arbitrary graph: degree products and
/// spanning trees only.
pub fn graph_expected_count(graph: &RootedMultigraph, class: EnumClass) -> Option<(BigUint, String)> {
    match class {
        EnumClass::Stable => Some((
            graph
                .non_sink()
                .iter()
                .map(|&v| BigUint::from(graph.degree(v)))
                .product(),
            "product of degrees".to_owned(),
        )),
        EnumClass::Recurrent | EnumClass::Pf => {
            Some((graph.spanning_tree_count(), "spanning trees".to_owned()))
        }
        _ => None,
    }
}

/// Reference count for a class on a family graph, with where it comes from.
pub fn expected_count(spec: FamilySpec, class: EnumClass) -> Result<Option<(BigUint, String)>, EnumerationError> {
    let graph = make_family(spec)?;
    let closed = |c: CountClass| {
        closed_form_count(spec, c)
            .ok()
            .map(|n| (n, format!("closed form {c}")))
    };
    Ok(match class {
        EnumClass::SrForall | EnumClass::Ppf => match spec {
            FamilySpec::Wheel { .. } => closed(CountClass::SrWheel),
            _ => closed(CountClass::Ppf),
        },
        EnumClass::PpfInc => match spec {
            FamilySpec::Complete { .. } => closed(CountClass::Catalan),
            _ => closed(CountClass::PpfInc),
        },
        _ => graph_expected_count(&graph, class),
    })
}

/// Where a suite entry takes its expected count from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedSource {
    ClosedForm(CountClass),
    SpanningTrees,
    /// Whatever [`expected_count`] knows for the class.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyCase {
    pub spec: FamilySpec,
    pub class: EnumClass,
    pub source: ExpectedSource,
}

impl VerifyCase {
    pub fn new(spec: FamilySpec, class: EnumClass, source: ExpectedSource) -> Self {
        VerifyCase { spec, class, source }
    }
}

/// Enumerates each case and compares against its reference count.
pub fn verify_counts(suite: &[VerifyCase], jobs: usize, cap: u128) -> Result<Vec<EnumerationReport>, EnumerationError> {
    suite
        .iter()
        .map(|case| {
            let graph = make_family(case.spec)?;
            let start = Instant::now();
            let count = count_class(&graph, case.class, jobs, cap)?;
            let millis = start.elapsed().as_millis();
            let expected = match case.source {
                ExpectedSource::ClosedForm(c) => {
                    Some((closed_form_count(case.spec, c)?, format!("closed form {c}")))
                }
                ExpectedSource::SpanningTrees => {
                    Some((graph.spanning_tree_count(), "spanning trees".to_owned()))
                }
                ExpectedSource::Auto => expected_count(case.spec, case.class)?,
            };
            Ok(EnumerationReport::new(
                case.spec.family_name(),
                case.spec.params(),
                case.class,
                count,
                expected,
                millis,
            ))
        })
        .collect()
}

/// The family instances used throughout the checks.
pub fn standard_instances() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    specs.extend((2..=5).map(|n| FamilySpec::Complete { n }));
    specs.extend((3..=7).map(|n| FamilySpec::Wheel { n }));
    specs.extend([(2, 2), (2, 3), (3, 2), (3, 3)].map(|(p, q)| FamilySpec::Tripartite { p, q }));
    specs.extend([(2, 2), (3, 2), (2, 3), (3, 3)].map(|(p, q)| FamilySpec::Bipartite { p, q }));
    specs.extend([(2, 1), (2, 2), (3, 2)].map(|(m, n)| FamilySpec::Split { m, n }));
    specs
}

/// Closed-form and matrix-tree checks over [`standard_instances`].
pub fn standard_suite() -> Vec<VerifyCase> {
    let mut suite = Vec::new();
    for spec in standard_instances() {
        suite.push(VerifyCase::new(spec, EnumClass::Recurrent, ExpectedSource::SpanningTrees));
        let class = match spec {
            FamilySpec::Complete { .. } | FamilySpec::Tripartite { .. } => EnumClass::Ppf,
            FamilySpec::Wheel { .. } => EnumClass::SrForall,
            FamilySpec::Bipartite { .. } | FamilySpec::Split { .. } => EnumClass::PpfInc,
        };
        suite.push(VerifyCase::new(spec, class, ExpectedSource::Auto));
    }
    suite.extend((2..=8).map(|n| {
        VerifyCase::new(
            FamilySpec::Complete { n },
            EnumClass::PpfInc,
            ExpectedSource::ClosedForm(CountClass::Catalan),
        )
    }));
    suite
}

pub fn write_reports_csv<W: Write>(reports: &[EnumerationReport], writer: W) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["family", "params", "class", "count", "expected", "match", "millis"])?;
    for r in reports {
        out.write_record([
            r.family.clone(),
            r.params.clone(),
            r.class.to_string(),
            r.count.to_string(),
            r.expected.as_ref().map(ToString::to_string).unwrap_or_default(),
            r.matches.to_string(),
            r.millis.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn reports_to_json(reports: &[EnumerationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialise")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub check: String,
    pub witness: Vec<i64>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub configurations: u64,
    pub candidates: u64,
    pub parking_functions: u64,
    pub discrepancies: Vec<Discrepancy>,
}

/// Runs every recurrence and primeness oracle against each other over all
/// stable configurations and all parking candidates of `graph`.
pub fn cross_validate_oracles(graph: &RootedMultigraph) -> Result<CrossValidation, EnumerationError> {
    let mut report = CrossValidation::default();
    let oracle = OrientationOracle::new(graph)?;
    let flag = |report: &mut CrossValidation, check: &str, witness: &[i64], detail: String| {
        report.discrepancies.push(Discrepancy {
            check: check.to_owned(),
            witness: witness.to_vec(),
            detail,
        });
    };

    for values in enumerate_class(graph, EnumClass::Stable)? {
        report.configurations += 1;
        let c = Configuration::new(values.clone());
        let burning = is_recurrent_burning(graph, &c)?.is_some();
        let forbidden = max_forbidden_set(graph, &c).is_empty();
        let orientation = oracle.is_recurrent(&c);
        if burning != forbidden || burning != orientation {
            flag(
                &mut report,
                "recurrence",
                &values,
                format!("burning={burning} forbidden={forbidden} orientation={orientation}"),
            );
        }
        if burning {
            let sr = is_strongly_recurrent(graph, &c, Quantifier::ForAll);
            let p = pf_from_config(graph, &c)?;
            let prime = is_prime_fast(graph, &p)?;
            if sr != prime {
                flag(&mut report, "strong recurrence", &values, format!("sr={sr} prime(deg-c)={prime}"));
            }
        }
    }

    let (lo, hi) = ranges(graph, EnumClass::Pf);
    for values in Odometer::new(lo, hi, vec![None; graph.size()]) {
        report.candidates += 1;
        let p = ParkingCandidate::new(values.clone())?;
        let naive = parking_violation(graph, &p)?.is_none();
        let fast = crate::parking::is_g_parking_fast(graph, &p);
        if naive != fast {
            flag(&mut report, "parking", &values, format!("naive={naive} fast={fast}"));
        }
        if !fast {
            continue;
        }
        report.parking_functions += 1;
        let brute = is_prime_bruteforce(graph, &p)?;
        let fast_prime = is_prime_fast(graph, &p)?;
        if brute != fast_prime {
            flag(&mut report, "primeness", &values, format!("bruteforce={brute} fast={fast_prime}"));
        }
    }
    Ok(report)
}

/// Connected multigraph on 3 to 6 vertices (sink `s`, others `v1..`):
/// a random spanning tree with multiplicities 1-2, plus multiplicities 0-2
/// on every other pair.
pub fn random_multigraph(rng: &mut impl Rng) -> RootedMultigraph {
    let n = rng.gen_range(3..=6);
    random_multigraph_on(rng, n)
}

pub fn random_multigraph_on(rng: &mut impl Rng, n: usize) -> RootedMultigraph {
    let names: Vec<String> = std::iter::once("s".to_owned())
        .chain((1..n).map(|i| format!("v{i}")))
        .collect();
    let mut mult = vec![vec![0u32; n]; n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let m = rng.gen_range(1..=2);
        mult[i][j] = m;
        mult[j][i] = m;
    }
    for i in 0..n {
        for j in i + 1..n {
            if mult[i][j] == 0 {
                let m = rng.gen_range(0..=2);
                mult[i][j] = m;
                mult[j][i] = m;
            }
        }
    }
    let edges: Vec<(String, String, u32)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| mult[i][j] > 0)
        .map(|(i, j)| (names[i].clone(), names[j].clone(), mult[i][j]))
        .collect();
    RootedMultigraph::build(&names, "s", &edges).expect("spanning tree keeps the graph connected")
}

/// `count` seeded random multigraphs.
pub fn random_multigraphs(seed: u64, count: usize) -> Vec<RootedMultigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_multigraph(&mut rng)).collect()
}

/// A graph plus a configuration or parking function on it, as stored in
/// regression fixtures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessFixture {
    pub description: String,
    pub seed: u64,
    pub graph: GraphFile,
    pub values: Map<String, Value>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl WitnessFixture {
    fn new(description: &str, seed: u64, graph: &RootedMultigraph, values: &[i64], notes: Vec<String>) -> Self {
        let values = values
            .iter()
            .enumerate()
            .map(|(i, &x)| (graph.ordinal_name(i).to_owned(), Value::from(x)))
            .collect();
        WitnessFixture {
            description: description.to_owned(),
            seed,
            graph: graph.to_file(),
            values,
            notes,
        }
    }

    pub fn graph(&self) -> Result<RootedMultigraph, GraphError> {
        self.graph.clone().into_graph()
    }

    /// Values in the graph's ordinal order.
    pub fn values_in_order(&self) -> Result<Vec<i64>, EnumerationError> {
        let graph = self.graph()?;
        let text = serde_json::json!({ "values": self.values }).to_string();
        crate::io::parse_values(&graph, &text).map_err(|e| EnumerationError::Graph(GraphError::Parse(e.to_string())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serialises")
    }
}

/// Recurrent configuration that is strongly recurrent under "exists" but
/// not under "for all".
#[derive(Debug, Clone)]
pub struct QuantifierGap {
    pub seed: u64,
    pub graph: RootedMultigraph,
    pub configuration: Configuration,
}

impl QuantifierGap {
    pub fn fixture(&self) -> WitnessFixture {
        let g = &self.graph;
        let c = &self.configuration;
        let vm: Vec<String> = v_m_set(g, c).iter().map(|v| g.name(v).to_owned()).collect();
        let failing: Vec<String> = crate::sandpile::strong_recurrence_failures(g, c)
            .into_iter()
            .map(|v| g.name(v).to_owned())
            .collect();
        WitnessFixture::new(
            "recurrent configuration in SR_EXISTS but not SR_FORALL",
            self.seed,
            g,
            c.values(),
            vec![
                format!("V_M = {{{}}}", vm.join(",")),
                format!("c^(v-) not recurrent for v in {{{}}}", failing.join(",")),
            ],
        )
    }
}

/// Searches seeded random multigraphs on at most `max_vertices` vertices
/// for a quantifier gap. Tries `attempts` graphs.
pub fn find_quantifier_gap(seed: u64, attempts: usize, max_vertices: usize) -> Option<QuantifierGap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let n = rng.gen_range(3..=max_vertices.max(3));
        let graph = random_multigraph_on(&mut rng, n);
        let Ok(stream) = enumerate_class(&graph, EnumClass::SrExists) else {
            continue;
        };
        let hit = stream
            .map(Configuration::new)
            .find(|c| !is_strongly_recurrent(&graph, c, Quantifier::ForAll));
        if let Some(configuration) = hit {
            return Some(QuantifierGap {
                seed,
                graph,
                configuration,
            });
        }
    }
    None
}

/// Parking function with prime decompositions of different block-size
/// multisets.
#[derive(Debug, Clone)]
pub struct NonUniqueDecomposition {
    pub seed: u64,
    pub graph: RootedMultigraph,
    pub parking: ParkingCandidate,
    pub decompositions: Vec<OrderedPartition>,
}

impl NonUniqueDecomposition {
    pub fn fixture(&self) -> WitnessFixture {
        let notes = self
            .decompositions
            .iter()
            .map(|d| d.display(&self.graph))
            .collect();
        WitnessFixture::new(
            "parking function with prime decompositions of different block sizes",
            self.seed,
            &self.graph,
            self.parking.values(),
            notes,
        )
    }
}

/// Searches seeded random multigraphs on exactly `vertices` vertices.
pub fn find_nonunique_decomposition(seed: u64, attempts: usize, vertices: usize) -> Option<NonUniqueDecomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let graph = random_multigraph_on(&mut rng, vertices);
        let Ok(stream) = enumerate_class(&graph, EnumClass::Pf) else {
            continue;
        };
        for values in stream {
            let p = ParkingCandidate::new(values).expect("positive");
            let Ok(decompositions) = prime_decompositions(&graph, &p) else {
                continue;
            };
            let mut shapes: Vec<Vec<usize>> = decompositions.iter().map(OrderedPartition::size_multiset).collect();
            shapes.sort();
            shapes.dedup();
            if shapes.len() >= 2 {
                return Some(NonUniqueDecomposition {
                    seed,
                    graph,
                    parking: p,
                    decompositions,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> RootedMultigraph {
        make_family(FamilySpec::Complete { n: 2 }).unwrap()
    }

    #[test]
    fn class_names() {
        assert_eq!("sr-forall".parse::<EnumClass>().unwrap(), EnumClass::SrForall);
        assert_eq!("PPF_INC".parse::<EnumClass>().unwrap(), EnumClass::PpfInc);
        assert!("nope".parse::<EnumClass>().is_err());
        for c in EnumClass::ALL {
            assert_eq!(c.name().parse::<EnumClass>().unwrap(), c);
        }
    }

    #[test]
    fn k2_classes() {
        let g = k2();
        let rec: Vec<_> = enumerate_class(&g, EnumClass::Recurrent).unwrap().collect();
        assert_eq!(rec, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let sr: Vec<_> = enumerate_class(&g, EnumClass::SrForall).unwrap().collect();
        assert_eq!(sr, vec![vec![1, 1]]);
        assert_eq!(enumerate_class(&g, EnumClass::Stable).unwrap().count(), 4);
        let pf: Vec<_> = enumerate_class(&g, EnumClass::Pf).unwrap().collect();
        assert_eq!(pf, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        let inc: Vec<_> = enumerate_class(&g, EnumClass::PfInc).unwrap().collect();
        assert_eq!(inc, vec![vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn increasing_needs_parts() {
        let g = make_family(FamilySpec::Wheel { n: 4 }).unwrap();
        assert!(matches!(
            enumerate_class(&g, EnumClass::PpfInc),
            Err(EnumerationError::NoParts(EnumClass::PpfInc))
        ));
    }

    #[test]
    fn caps() {
        let g = make_family(FamilySpec::Complete { n: 5 }).unwrap();
        assert_eq!(search_space_size(&g, EnumClass::Pf).unwrap(), 3125);
        assert_eq!(search_space_size(&g, EnumClass::PfInc).unwrap(), 126);
        assert!(matches!(
            enumerate_class_with_cap(&g, EnumClass::Pf, 100),
            Err(EnumerationError::SpaceCap { size: 3125, cap: 100 })
        ));
    }

    #[test]
    fn odometer_respects_parts() {
        let g = make_family(FamilySpec::Bipartite { p: 2, q: 2 }).unwrap();
        let all: Vec<_> = Odometer::new(vec![1; 4], vec![2, 2, 3, 3], predecessors(&g, EnumClass::PfInc).unwrap()).collect();
        assert_eq!(all.len(), 3 * 6);
        assert!(all.iter().all(|v| v[0] <= v[1] && v[2] <= v[3]));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
        let empty = Odometer::new(vec![2, 1], vec![1, 1], vec![None, None]);
        assert_eq!(empty.count(), 0);
    }

    #[test]
    fn parallel_matches_serial() {
        let g = make_family(FamilySpec::Tripartite { p: 2, q: 3 }).unwrap();
        for class in [EnumClass::Ppf, EnumClass::Recurrent, EnumClass::PpfInc] {
            let serial: Vec<_> = enumerate_class(&g, class).unwrap().collect();
            for jobs in [1, 2, 3, 8] {
                assert_eq!(collect_class(&g, class, jobs, DEFAULT_SPACE_CAP).unwrap(), serial);
                assert_eq!(
                    count_class(&g, class, jobs, DEFAULT_SPACE_CAP).unwrap(),
                    BigUint::from(serial.len())
                );
            }
        }
    }

    #[test]
    fn wheel_six() {
        let g = make_family(FamilySpec::Wheel { n: 6 }).unwrap();
        assert_eq!(enumerate_class(&g, EnumClass::SrForall).unwrap().count(), 7);
    }

    #[test]
    fn reports_round_trip() {
        let reports = verify_counts(
            &[
                VerifyCase::new(FamilySpec::Complete { n: 4 }, EnumClass::Ppf, ExpectedSource::Auto),
                VerifyCase::new(FamilySpec::Wheel { n: 3 }, EnumClass::MinRecurrent, ExpectedSource::Auto),
            ],
            2,
            DEFAULT_SPACE_CAP,
        )
        .unwrap();
        assert_eq!(reports[0].count, BigUint::from(27u32));
        assert!(reports[0].matches);
        assert_eq!(reports[1].expected, None);
        assert!(reports[1].matches);
        let json = reports_to_json(&reports);
        assert!(json.contains("\"count\": \"27\""));
        let back: Vec<EnumerationReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, reports);
        let mut csv_out = Vec::new();
        write_reports_csv(&reports, &mut csv_out).unwrap();
        let text = String::from_utf8(csv_out).unwrap();
        assert!(text.starts_with("family,params,class,count,expected,match,millis\n"));
        assert!(text.contains("complete,n=4,PPF,27,27,true,"));
    }

    #[test]
    fn cross_validation_small() {
        let report = cross_validate_oracles(&k2()).unwrap();
        assert_eq!(report.configurations, 4);
        assert_eq!(report.parking_functions, 3);
        assert!(report.discrepancies.is_empty());
        let w3 = make_family(FamilySpec::Wheel { n: 3 }).unwrap();
        let report = cross_validate_oracles(&w3).unwrap();
        assert_eq!(report.configurations, 27);
        assert!(report.discrepancies.is_empty());
    }

    #[test]
    fn random_graphs_are_seeded() {
        let a = random_multigraphs(7, 5);
        let b = random_multigraphs(7, 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.to_json(), y.to_json());
            assert!((3..=6).contains(&x.vertex_count()));
            assert!(x.edges().all(|(_, _, m)| (1..=2).contains(&m)));
        }
    }
}
