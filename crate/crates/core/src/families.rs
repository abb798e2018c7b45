//! Symmetric graph families and their family-specific theory: wheel
//! characterisations, (p,q)-parking lattice paths, the bipartite and split
//! bijections, and closed-form counts.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classical::polyline_svg;
use crate::graph::{GraphError, RootedMultigraph};
use crate::parking::{is_parking, is_prime_parking};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value {value} at position {index} is out of range")]
    OutOfRange { index: usize, value: i64 },
    #[error("vector is not non-decreasing")]
    NotMonotone,
    #[error("class {class} has no closed form for {spec}")]
    ClassMismatch { spec: FamilySpec, class: CountClass },
    #[error("values are not non-decreasing within each part")]
    NotIncreasing,
    #[error("not a parking function on {0}")]
    NotParking(FamilySpec),
    #[error("not a prime parking function on {0}")]
    NotPrime(FamilySpec),
    #[error("{0} has no smaller family member to map to")]
    TooSmall(FamilySpec),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    /// `K_n^0`: complete graph on `{0, …, n}`, sink 0.
    Complete { n: usize },
    /// `W_n^0`: rim cycle `1..n` plus a hub sink 0.
    Wheel { n: usize },
    /// `K_{p,q}^0`: complete tripartite on `{v0}`, `P` (size `p`), `Q` (size
    /// `q`).
    Tripartite { p: usize, q: usize },
    /// `K_{p*,q}`: complete bipartite with `P = {p0, …, pp}` (sink `p0`) and
    /// `Q` of size `q`.
    Bipartite { p: usize, q: usize },
    /// `S_{m*,n}`: clique `c0..cm` (sink `c0`) plus `n` independent vertices
    /// joined to the whole clique.
    Split { m: usize, n: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        let ok = match *self {
            FamilySpec::Complete { n } => n >= 1,
            FamilySpec::Wheel { n } => n >= 3,
            FamilySpec::Tripartite { p, q } | FamilySpec::Bipartite { p, q } => p >= 1 && q >= 1,
            FamilySpec::Split { m, n } => m >= 1 && n >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(FamilyError::InvalidParameters(self.to_string()))
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Wheel { .. } => "wheel",
            FamilySpec::Tripartite { .. } => "tripartite",
            FamilySpec::Bipartite { .. } => "bipartite",
            FamilySpec::Split { .. } => "split",
        }
    }

    /// `n=4`, `p=2 q=3`, `m=2 n=1`.
    pub fn params(&self) -> String {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::Wheel { n } => format!("n={n}"),
            FamilySpec::Tripartite { p, q } | FamilySpec::Bipartite { p, q } => {
                format!("p={p} q={q}")
            }
            FamilySpec::Split { m, n } => format!("m={m} n={n}"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Complete { n } => write!(f, "COMPLETE({n})"),
            FamilySpec::Wheel { n } => write!(f, "WHEEL({n})"),
            FamilySpec::Tripartite { p, q } => write!(f, "TRIPARTITE({p},{q})"),
            FamilySpec::Bipartite { p, q } => write!(f, "BIPARTITE({p},{q})"),
            FamilySpec::Split { m, n } => write!(f, "SPLIT({m},{n})"),
        }
    }
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn join_all(edges: &mut Vec<(String, String, u32)>, xs: &[String], ys: &[String]) {
    for x in xs {
        for y in ys {
            edges.push((x.clone(), y.clone(), 1));
        }
    }
}

/// Builds the family graph, with its symmetric parts attached where the
/// family has them (all but the wheel).
pub fn make_family(spec: FamilySpec) -> Result<RootedMultigraph, FamilyError> {
    spec.validate()?;
    let mut edges = Vec::new();
    let graph = match spec {
        FamilySpec::Complete { n } => {
            let all = names("", 0..=n);
            for a in 0..=n {
                for b in a + 1..=n {
                    edges.push((all[a].clone(), all[b].clone(), 1));
                }
            }
            RootedMultigraph::build(&all, "0", &edges)?.with_parts(&[all[1..].to_vec()])?
        }
        FamilySpec::Wheel { n } => {
            let all = names("", 0..=n);
            for i in 1..=n {
                edges.push((all[0].clone(), all[i].clone(), 1));
                edges.push((all[i].clone(), all[i % n + 1].clone(), 1));
            }
            RootedMultigraph::build(&all, "0", &edges)?
        }
        FamilySpec::Tripartite { p, q } => {
            let sink = vec!["v0".to_owned()];
            let ps = names("p", 1..=p);
            let qs = names("q", 1..=q);
            join_all(&mut edges, &sink, &ps);
            join_all(&mut edges, &sink, &qs);
            join_all(&mut edges, &ps, &qs);
            let all: Vec<String> = sink.iter().chain(&ps).chain(&qs).cloned().collect();
            RootedMultigraph::build(&all, "v0", &edges)?.with_parts(&[ps, qs])?
        }
        FamilySpec::Bipartite { p, q } => {
            let ps = names("p", 0..=p);
            let qs = names("q", 1..=q);
            join_all(&mut edges, &ps, &qs);
            let all: Vec<String> = ps.iter().chain(&qs).cloned().collect();
            RootedMultigraph::build(&all, "p0", &edges)?.with_parts(&[ps[1..].to_vec(), qs])?
        }
        FamilySpec::Split { m, n } => {
            let cs = names("c", 0..=m);
            let is = names("i", 1..=n);
            for a in 0..=m {
                for b in a + 1..=m {
                    edges.push((cs[a].clone(), cs[b].clone(), 1));
                }
            }
            join_all(&mut edges, &cs, &is);
            let all: Vec<String> = cs.iter().chain(&is).cloned().collect();
            RootedMultigraph::build(&all, "c0", &edges)?.with_parts(&[cs[1..].to_vec(), is])?
        }
    };
    Ok(graph)
}

fn check_wheel_len(n: usize, c: &[i64]) -> Result<(), FamilyError> {
    if c.len() != n {
        return Err(FamilyError::LengthMismatch { expected: n, got: c.len() });
    }
    Ok(())
}

/// Recurrence on `W_n^0` for `c ∈ {0,1,2}^n`: some `c_i = 2`, and for every
/// ordered pair `i != j` of zeros the cyclic interval `(i,j)` holds a 2.
pub fn wheel_recurrent_char(n: usize, c: &[i64]) -> Result<bool, FamilyError> {
    check_wheel_len(n, c)?;
    if let Some(index) = c.iter().position(|&x| !(0..=2).contains(&x)) {
        return Err(FamilyError::OutOfRange { index: index + 1, value: c[index] });
    }
    if !c.contains(&2) {
        return Ok(false);
    }
    let zeros: Vec<usize> = (0..n).filter(|&i| c[i] == 0).collect();
    let has_two_between = |i: usize, j: usize| {
        let mut k = (i + 1) % n;
        while k != j {
            if c[k] == 2 {
                return true;
            }
            k = (k + 1) % n;
        }
        false
    };
    Ok(zeros
        .iter()
        .all(|&i| zeros.iter().all(|&j| i == j || has_two_between(i, j))))
}

/// Strong recurrence on `W_n^0`: `c ∈ {1,2}^n` with at most one 1.
pub fn wheel_sr_char(n: usize, c: &[i64]) -> bool {
    c.len() == n
        && c.iter().all(|&x| x == 1 || x == 2)
        && c.iter().filter(|&&x| x == 1).count() <= 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    E,
    N,
}

/// A monotone lattice path from `(0,0)` made of unit `E` and `N` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotonePath {
    steps: Vec<Step>,
}

impl MonotonePath {
    pub fn new(steps: Vec<Step>) -> Self {
        MonotonePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn width(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::E).count()
    }

    pub fn height(&self) -> usize {
        self.steps.len() - self.width()
    }

    /// Every lattice point visited, starting at `(0,0)`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut pts = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = (0, 0);
        pts.push((x, y));
        for s in &self.steps {
            match s {
                Step::E => x += 1,
                Step::N => y += 1,
            }
            pts.push((x, y));
        }
        pts
    }

    /// y-coordinate of each `E` step, in order.
    pub fn e_step_heights(&self) -> Vec<usize> {
        let mut y = 0;
        let mut out = Vec::with_capacity(self.width());
        for s in &self.steps {
            match s {
                Step::E => out.push(y),
                Step::N => y += 1,
            }
        }
        out
    }

    /// For each `i`, the i-th `E` step of `self` is at least as high as the
    /// i-th `E` step of `other`.
    pub fn weakly_above(&self, other: &MonotonePath) -> bool {
        self.width() == other.width()
            && self
                .e_step_heights()
                .iter()
                .zip(other.e_step_heights())
                .all(|(&a, b)| a >= b)
    }

    pub fn common_points(&self, other: &MonotonePath) -> Vec<(usize, usize)> {
        let mine = self.points();
        let theirs: std::collections::BTreeSet<_> = other.points().into_iter().collect();
        let mut common: Vec<_> = mine.into_iter().filter(|p| theirs.contains(p)).collect();
        common.sort_unstable();
        common.dedup();
        common
    }

    pub fn render(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::E => 'E',
                Step::N => 'N',
            })
            .collect()
    }
}

fn check_non_decreasing(v: &[usize], max: usize) -> Result<(), FamilyError> {
    if let Some(index) = v.iter().position(|&x| x > max) {
        return Err(FamilyError::OutOfRange { index: index + 1, value: v[index] as i64 });
    }
    if v.windows(2).any(|w| w[0] > w[1]) {
        return Err(FamilyError::NotMonotone);
    }
    Ok(())
}

/// `L_a^⊥ = N^{a_1} E N^{a_2 - a_1} E … N^{q - a_p}`: its i-th `E` step is at
/// height `a_i`.
pub fn path_from_a(a: &[usize], q: usize) -> Result<MonotonePath, FamilyError> {
    check_non_decreasing(a, q)?;
    Ok(MonotonePath::new(interleave(a, q, Step::N, Step::E)))
}

/// `L_b = E^{b_1} N E^{b_2 - b_1} N … E^{p - b_q}`: its j-th `N` step is at
/// x-coordinate `b_j`.
pub fn path_from_b(b: &[usize], p: usize) -> Result<MonotonePath, FamilyError> {
    check_non_decreasing(b, p)?;
    Ok(MonotonePath::new(interleave(b, p, Step::E, Step::N)))
}

fn interleave(levels: &[usize], end: usize, filler: Step, marker: Step) -> Vec<Step> {
    let mut steps = Vec::with_capacity(levels.len() + end);
    let mut at = 0;
    for &level in levels {
        steps.extend(std::iter::repeat_n(filler, level - at));
        steps.push(marker);
        at = level;
    }
    steps.extend(std::iter::repeat_n(filler, end - at));
    steps
}

/// The two paths of a candidate pair `(p^P; p^Q)` on `K_{p,q}^0`, or `None`
/// if some entry lies outside `[q+1]` (resp. `[p+1]`).
pub fn pq_paths(
    p: usize,
    q: usize,
    pp: &[i64],
    pq: &[i64],
) -> Result<Option<(MonotonePath, MonotonePath)>, FamilyError> {
    if pp.len() != p {
        return Err(FamilyError::LengthMismatch { expected: p, got: pp.len() });
    }
    if pq.len() != q {
        return Err(FamilyError::LengthMismatch { expected: q, got: pq.len() });
    }
    let in_range = |v: &[i64], hi: usize| v.iter().all(|&x| x >= 1 && x <= hi as i64);
    if !in_range(pp, q + 1) || !in_range(pq, p + 1) {
        return Ok(None);
    }
    let shifted = |v: &[i64]| {
        let mut s: Vec<usize> = v.iter().map(|&x| x as usize - 1).collect();
        s.sort_unstable();
        s
    };
    let la = path_from_a(&shifted(pp), q)?;
    let lb = path_from_b(&shifted(pq), p)?;
    Ok(Some((la, lb)))
}

/// `(p,q)`-parking: `L_b` lies weakly above `L_a^⊥`.
pub fn is_pq_parking(p: usize, q: usize, pp: &[i64], pq: &[i64]) -> Result<bool, FamilyError> {
    Ok(pq_paths(p, q, pp, pq)?.is_some_and(|(la, lb)| lb.weakly_above(&la)))
}

/// Prime `(p,q)`-parking: the two paths meet only at `(0,0)` and `(p,q)`.
pub fn is_prime_pq(p: usize, q: usize, pp: &[i64], pq: &[i64]) -> Result<bool, FamilyError> {
    let spec = FamilySpec::Tripartite { p, q };
    match pq_paths(p, q, pp, pq)? {
        Some((la, lb)) if lb.weakly_above(&la) => {
            Ok(lb.common_points(&la) == vec![(0, 0), (p, q)])
        }
        _ => Err(FamilyError::NotParking(spec)),
    }
}

/// Both paths as an SVG document; `L_a^⊥` first.
pub fn pq_svg(la: &MonotonePath, lb: &MonotonePath) -> String {
    let scale = 20.0;
    let line = |m: &MonotonePath| {
        m.points()
            .into_iter()
            .map(|(x, y)| (x as f64 * scale, y as f64 * scale))
            .collect::<Vec<_>>()
    };
    polyline_svg(&[line(la), line(lb)])
}

/// Classes with a closed-form count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CountClass {
    Ppf,
    PpfInc,
    SrWheel,
    Catalan,
}

impl fmt::Display for CountClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountClass::Ppf => "PPF",
            CountClass::PpfInc => "PPF_INC",
            CountClass::SrWheel => "SR_WHEEL",
            CountClass::Catalan => "CATALAN",
        })
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `x^e` with `0^0 = 1`.
fn power(x: usize, e: usize) -> BigInt {
    BigInt::from(x).pow(e as u32)
}

pub fn catalan(k: usize) -> BigUint {
    binomial(2 * k, k) / (k + 1)
}

pub fn closed_form_count(spec: FamilySpec, class: CountClass) -> Result<BigUint, FamilyError> {
    spec.validate()?;
    let count = match (spec, class) {
        (FamilySpec::Wheel { n }, CountClass::Ppf | CountClass::SrWheel) => BigUint::from(n + 1),
        (FamilySpec::Complete { n }, CountClass::Ppf) => power(n - 1, n - 1).to_biguint().unwrap(),
        (FamilySpec::Complete { n }, CountClass::PpfInc | CountClass::Catalan) => catalan(n - 1),
        (FamilySpec::Tripartite { p, q }, CountClass::Ppf) => {
            let value = power(p, q) * power(q - 1, p - 1) + power(q, p) * power(p - 1, q - 1)
                - BigInt::from(p + q - 1) * power(p - 1, q - 1) * power(q - 1, p - 1);
            value.to_biguint().expect("count is non-negative")
        }
        (FamilySpec::Bipartite { p, q }, CountClass::PpfInc) => {
            binomial(p + q - 1, p) * binomial(p + q - 1, p - 1) / (p + q - 1)
        }
        (FamilySpec::Split { m, n }, CountClass::PpfInc) => {
            binomial(2 * m - 2, m - 1) * binomial(2 * m + n - 2, n) / m
        }
        _ => return Err(FamilyError::ClassMismatch { spec, class }),
    };
    Ok(count)
}

/// Whether `values` (ordinal order) is non-decreasing within every part.
pub fn is_increasing(graph: &RootedMultigraph, values: &[i64]) -> bool {
    graph.parts().is_some_and(|parts| {
        parts
            .iter()
            .all(|part| part.windows(2).all(|w| values[w[0]] <= values[w[1]]))
    })
}

/// Shared body of the bipartite and split bijections: drops the first
/// vertex of the first part (which carries value 1).
fn delete_first(big: FamilySpec, small: FamilySpec, values: &[i64]) -> Result<Vec<i64>, FamilyError> {
    let graph = make_family(big)?;
    if values.len() != graph.size() {
        return Err(FamilyError::LengthMismatch { expected: graph.size(), got: values.len() });
    }
    if !is_increasing(&graph, values) {
        return Err(FamilyError::NotIncreasing);
    }
    if !is_prime_parking(&graph, values) {
        return Err(FamilyError::NotPrime(big));
    }
    small.validate().map_err(|_| FamilyError::TooSmall(big))?;
    debug_assert_eq!(values[0], 1);
    Ok(values[1..].to_vec())
}

fn insert_first(big: FamilySpec, small: FamilySpec, values: &[i64]) -> Result<Vec<i64>, FamilyError> {
    small.validate().map_err(|_| FamilyError::TooSmall(big))?;
    let graph = make_family(small)?;
    if values.len() != graph.size() {
        return Err(FamilyError::LengthMismatch { expected: graph.size(), got: values.len() });
    }
    if !is_increasing(&graph, values) {
        return Err(FamilyError::NotIncreasing);
    }
    if !is_parking(&graph, values) {
        return Err(FamilyError::NotParking(small));
    }
    let mut out = Vec::with_capacity(values.len() + 1);
    out.push(1);
    out.extend_from_slice(values);
    if !is_prime_parking(&make_family(big)?, &out) {
        return Err(FamilyError::NotPrime(big));
    }
    Ok(out)
}

/// Increasing prime parking function on `K_{p*,q}` to an increasing parking
/// function on `K_{(p-1)*,q}`, by deleting `p1`.
pub fn bipartite_prime_bijection(p: usize, q: usize, values: &[i64]) -> Result<Vec<i64>, FamilyError> {
    delete_first(
        FamilySpec::Bipartite { p, q },
        FamilySpec::Bipartite { p: p.saturating_sub(1), q },
        values,
    )
}

/// Inverse of [`bipartite_prime_bijection`]: inserts a `P`-vertex with value
/// 1. `(p, q)` are the parameters of the larger graph.
pub fn bipartite_prime_bijection_inverse(
    p: usize,
    q: usize,
    values: &[i64],
) -> Result<Vec<i64>, FamilyError> {
    insert_first(
        FamilySpec::Bipartite { p, q },
        FamilySpec::Bipartite { p: p.saturating_sub(1), q },
        values,
    )
}

/// Increasing prime parking function on `S_{m*,n}` to an increasing parking
/// function on `S_{(m-1)*,n}`, by deleting `c1`.
pub fn split_prime_bijection(m: usize, n: usize, values: &[i64]) -> Result<Vec<i64>, FamilyError> {
    delete_first(
        FamilySpec::Split { m, n },
        FamilySpec::Split { m: m.saturating_sub(1), n },
        values,
    )
}

/// Inverse of [`split_prime_bijection`]. `(m, n)` are the parameters of the
/// larger graph.
pub fn split_prime_bijection_inverse(m: usize, n: usize, values: &[i64]) -> Result<Vec<i64>, FamilyError> {
    insert_first(
        FamilySpec::Split { m, n },
        FamilySpec::Split { m: m.saturating_sub(1), n },
        values,
    )
}

/// Count as `u64` where it fits, for quick comparisons in tests.
pub fn count_u64(count: &BigUint) -> Option<u64> {
    count.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::{
        is_g_parking_fast, is_prime_fast, lemma31_applies, v_m_parking, ParkingCandidate,
    };
    use crate::sandpile::{is_recurrent_burning, is_strongly_recurrent, Configuration, Quantifier};

    #[test]
    fn family_degrees() {
        let g = make_family(FamilySpec::Tripartite { p: 2, q: 2 }).unwrap();
        assert!(g.non_sink().iter().all(|&v| g.degree(v) == 3));
        assert_eq!(g.degree(g.sink()), 4);
        let g = make_family(FamilySpec::Bipartite { p: 3, q: 2 }).unwrap();
        assert_eq!(g.degree(g.vertex("p1").unwrap()), 2);
        assert_eq!(g.degree(g.vertex("q1").unwrap()), 4);
        let g = make_family(FamilySpec::Split { m: 4, n: 3 }).unwrap();
        assert_eq!(g.degree(g.vertex("c2").unwrap()), 7);
        assert_eq!(g.degree(g.vertex("i3").unwrap()), 5);
        let g = make_family(FamilySpec::Wheel { n: 5 }).unwrap();
        assert!(g.non_sink().iter().all(|&v| g.degree(v) == 3));
        assert!(g.parts().is_none());
        assert!(make_family(FamilySpec::Wheel { n: 2 }).is_err());
        assert!(make_family(FamilySpec::Split { m: 0, n: 2 }).is_err());
        assert_eq!(FamilySpec::Split { m: 2, n: 1 }.to_string(), "SPLIT(2,1)");
    }

    #[test]
    fn lemma31_on_families() {
        let g = make_family(FamilySpec::Split { m: 3, n: 2 }).unwrap();
        for c in ["c1", "c2", "c3"] {
            assert!(lemma31_applies(&g, g.vertex(c).unwrap()));
        }
        let g = make_family(FamilySpec::Complete { n: 4 }).unwrap();
        assert!(g.non_sink().iter().all(|&v| lemma31_applies(&g, v)));
        // The multiplicity hypothesis holds for `p1`, but `p1` has no sink
        // edge, so it is never in `V_M(p)` and the lemma gives nothing.
        let g = make_family(FamilySpec::Bipartite { p: 2, q: 2 }).unwrap();
        let p1 = g.vertex("p1").unwrap();
        assert!(lemma31_applies(&g, p1));
        let p = ParkingCandidate::ones(&g);
        assert!(!v_m_parking(&g, &p).contains(p1));
    }

    #[test]
    fn wheel_examples() {
        assert!(!wheel_recurrent_char(3, &[2, 0, 0]).unwrap());
        assert!(wheel_recurrent_char(3, &[2, 0, 2]).unwrap());
        assert!(wheel_recurrent_char(3, &[2, 1, 2]).unwrap());
        assert!(!wheel_recurrent_char(3, &[1, 1, 1]).unwrap());
        assert!(wheel_recurrent_char(3, &[3, 0, 0]).is_err());
        assert!(wheel_sr_char(3, &[1, 2, 2]));
        assert!(!wheel_sr_char(4, &[1, 1, 2, 2]));
        assert!(!wheel_sr_char(4, &[2, 2, 2, 0]));
    }

    fn all_configs(n: usize, base: i64) -> impl Iterator<Item = Vec<i64>> {
        (0..base.pow(n as u32)).map(move |mut k| {
            let mut v = vec![0; n];
            for x in v.iter_mut() {
                *x = k % base;
                k /= base;
            }
            v
        })
    }

    #[test]
    fn wheel_characterisations_match_oracles() {
        for n in 3..=5 {
            let g = make_family(FamilySpec::Wheel { n }).unwrap();
            let mut sr = 0;
            for c in all_configs(n, 3) {
                let conf = Configuration::new(c.clone());
                let burning = is_recurrent_burning(&g, &conf).unwrap().is_some();
                assert_eq!(wheel_recurrent_char(n, &c).unwrap(), burning, "{c:?}");
                let strong = is_strongly_recurrent(&g, &conf, Quantifier::ForAll);
                assert_eq!(wheel_sr_char(n, &c), strong, "{c:?}");
                sr += strong as usize;
            }
            assert_eq!(sr, n + 1);
        }
    }

    #[test]
    fn lattice_paths() {
        let la = path_from_a(&[0, 0, 2, 2, 3], 4).unwrap();
        assert_eq!(la.render(), "EENNEENEN");
        let lb = path_from_b(&[0, 0, 1, 2], 5).unwrap();
        assert_eq!(lb.render(), "NNENENEEE");
        assert_eq!(path_from_a(&[0, 0, 0], 2).unwrap().render(), "EEENN");
        assert_eq!(path_from_a(&[1, 0], 2), Err(FamilyError::NotMonotone));
        assert!(path_from_a(&[3], 2).is_err());
        assert!(lb.weakly_above(&la));
        assert_eq!(lb.common_points(&la), vec![(0, 0), (5, 4)]);
        assert!(pq_svg(&la, &lb).matches("<polyline").count() == 2);
    }

    #[test]
    fn pq_examples() {
        let pp = [3, 4, 1, 1, 3];
        let pq = [1, 3, 2, 1];
        assert!(is_pq_parking(5, 4, &pp, &pq).unwrap());
        assert!(is_prime_pq(5, 4, &pp, &pq).unwrap());
        assert!(is_pq_parking(3, 2, &[1; 3], &[1; 2]).unwrap());
        assert!(is_prime_pq(3, 2, &[1; 3], &[1; 2]).unwrap());
        assert!(!is_pq_parking(2, 2, &[3, 3], &[3, 3]).unwrap());
        assert!(!is_pq_parking(2, 2, &[4, 1], &[1, 1]).unwrap());
        assert!(is_pq_parking(2, 2, &[1], &[1, 1]).is_err());
        assert!(is_prime_pq(2, 2, &[3, 3], &[3, 3]).is_err());
    }

    #[test]
    fn pq_agrees_with_graph_oracles() {
        for (p, q) in [(1, 1), (2, 2), (2, 3), (3, 2)] {
            let g = make_family(FamilySpec::Tripartite { p, q }).unwrap();
            let base_p = q as i64 + 1;
            let base_q = p as i64 + 1;
            let mut primes = 0u64;
            for a in all_configs(p, base_p) {
                for b in all_configs(q, base_q) {
                    let pp: Vec<i64> = a.iter().map(|x| x + 1).collect();
                    let pq: Vec<i64> = b.iter().map(|x| x + 1).collect();
                    let values: Vec<i64> = pp.iter().chain(&pq).copied().collect();
                    let cand = ParkingCandidate::new(values).unwrap();
                    let parks = is_g_parking_fast(&g, &cand);
                    assert_eq!(is_pq_parking(p, q, &pp, &pq).unwrap(), parks);
                    if parks {
                        let prime = is_prime_fast(&g, &cand).unwrap();
                        assert_eq!(is_prime_pq(p, q, &pp, &pq).unwrap(), prime);
                        primes += prime as u64;
                    }
                }
            }
            let expected = closed_form_count(FamilySpec::Tripartite { p, q }, CountClass::Ppf).unwrap();
            assert_eq!(BigUint::from(primes), expected, "({p},{q})");
        }
    }

    #[test]
    fn closed_forms() {
        let c = |spec, class| count_u64(&closed_form_count(spec, class).unwrap()).unwrap();
        assert_eq!(c(FamilySpec::Complete { n: 5 }, CountClass::Ppf), 256);
        assert_eq!(c(FamilySpec::Complete { n: 1 }, CountClass::Ppf), 1);
        assert_eq!(c(FamilySpec::Complete { n: 8 }, CountClass::Catalan), 429);
        assert_eq!(c(FamilySpec::Tripartite { p: 2, q: 2 }, CountClass::Ppf), 5);
        assert_eq!(c(FamilySpec::Tripartite { p: 1, q: 1 }, CountClass::Ppf), 1);
        assert_eq!(c(FamilySpec::Bipartite { p: 2, q: 2 }, CountClass::PpfInc), 3);
        assert_eq!(c(FamilySpec::Split { m: 2, n: 1 }, CountClass::PpfInc), 3);
        assert_eq!(c(FamilySpec::Split { m: 2, n: 2 }, CountClass::PpfInc), 6);
        assert_eq!(c(FamilySpec::Wheel { n: 6 }, CountClass::SrWheel), 7);
        assert!(matches!(
            closed_form_count(FamilySpec::Wheel { n: 4 }, CountClass::Catalan),
            Err(FamilyError::ClassMismatch { .. })
        ));
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn bipartite_bijection_small() {
        let primes = [vec![1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 2, 1, 1]];
        let images = [vec![1, 1, 1], vec![1, 1, 2], vec![2, 1, 1]];
        for (x, y) in primes.iter().zip(&images) {
            assert_eq!(&bipartite_prime_bijection(2, 2, x).unwrap(), y);
            assert_eq!(&bipartite_prime_bijection_inverse(2, 2, y).unwrap(), x);
        }
        assert_eq!(bipartite_prime_bijection(2, 2, &[2, 1, 1, 1]), Err(FamilyError::NotIncreasing));
        assert!(matches!(bipartite_prime_bijection(1, 2, &[1, 1, 1]), Err(FamilyError::TooSmall(_))));
        assert!(matches!(split_prime_bijection(2, 1, &[1, 2, 3]), Err(FamilyError::NotPrime(_))));
    }
}
