//! Classical parking functions: `n` cars with preferred spots in `[n]`
//! parking on a one-way street.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Condition 4 enumerates all `2^n` subsets of cars.
pub const SUBSET_CONDITION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("preference vector is empty")]
    Empty,
    #[error("preference {value} at position {index} is outside 1..={n}")]
    OutOfRange { index: usize, value: i64, n: usize },
    #[error("cannot parse preference vector: {0}")]
    Parse(String),
    #[error("not a parking function")]
    NotParking,
    #[error("{0} is not a breakpoint below n")]
    NotBreakpoint(usize),
    #[error("not a prime parking function")]
    NotPrime,
    #[error("preferences are not non-decreasing")]
    NotNonDecreasing,
    #[error("subset condition limited to n <= {cap}, got {n}")]
    SizeCap { n: usize, cap: usize },
    #[error("unknown condition {0}, expected 1-4")]
    UnknownCondition(u8),
    #[error("invalid lattice path: {0}")]
    InvalidPath(String),
    #[error("a size-1 parking function has no smaller counterpart")]
    TooShort,
}

/// `(p_1, …, p_n)` with every `p_i ∈ [n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceVector(Vec<usize>);

impl PreferenceVector {
    pub fn new(values: Vec<usize>) -> Result<Self, ClassicalError> {
        let n = values.len();
        if n == 0 {
            return Err(ClassicalError::Empty);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &x)| x < 1 || x > n) {
            return Err(ClassicalError::OutOfRange {
                index: index + 1,
                value: value as i64,
                n,
            });
        }
        Ok(PreferenceVector(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Non-decreasing rearrangement.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// `|{i : p_i <= j}|`.
    pub fn count_at_most(&self, j: usize) -> usize {
        self.0.iter().filter(|&&x| x <= j).count()
    }

    /// `q_j = |{i : p_i = j}|` for `j ∈ [n]`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut q = vec![0; self.len()];
        for &x in &self.0 {
            q[x - 1] += 1;
        }
        q
    }
}

impl FromStr for PreferenceVector {
    type Err = ClassicalError;

    /// Comma-separated values, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = trimmed
            .split(',')
            .map(|t| {
                let t = t.trim();
                let x: i64 = t.parse().map_err(|_| ClassicalError::Parse(format!("`{t}`")))?;
                Ok(x)
            })
            .collect::<Result<Vec<i64>, _>>()?;
        let n = values.len();
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &x)| x < 1) {
            return Err(ClassicalError::OutOfRange { index: index + 1, value, n });
        }
        Self::new(values.into_iter().map(|x| x as usize).collect())
    }
}

impl fmt::Debug for PreferenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PreferenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Where each car ended up; `None` if it drove off the street.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParkOutcome {
    pub spots: Vec<Option<usize>>,
}

impl ParkOutcome {
    pub fn success(&self) -> bool {
        self.spots.iter().all(Option::is_some)
    }
}

/// Runs the parking process: each car takes the first free spot at or
/// after its preference.
pub fn simulate_park(p: &PreferenceVector) -> ParkOutcome {
    let n = p.len();
    let mut taken = vec![false; n + 1];
    let spots = p
        .values()
        .iter()
        .map(|&pref| {
            let spot = (pref..=n).find(|&k| !taken[k])?;
            taken[spot] = true;
            Some(spot)
        })
        .collect();
    ParkOutcome { spots }
}

/// The four equivalent characterisations of classical parking functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Every car parks.
    Simulation,
    /// `inc(p)_i <= i`.
    Sorted,
    /// `|{j : p_j <= i}| >= i`.
    Counting,
    /// Every set `S` of cars has some `p_i <= n + 1 - |S|`.
    Subsets,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::Simulation,
        Condition::Sorted,
        Condition::Counting,
        Condition::Subsets,
    ];

    pub fn from_number(k: u8) -> Result<Self, ClassicalError> {
        match k {
            1 => Ok(Condition::Simulation),
            2 => Ok(Condition::Sorted),
            3 => Ok(Condition::Counting),
            4 => Ok(Condition::Subsets),
            _ => Err(ClassicalError::UnknownCondition(k)),
        }
    }
}

pub fn is_pf_by_condition(p: &PreferenceVector, condition: Condition) -> Result<bool, ClassicalError> {
    let n = p.len();
    Ok(match condition {
        Condition::Simulation => simulate_park(p).success(),
        Condition::Sorted => p.sorted().iter().enumerate().all(|(i, &x)| x <= i + 1),
        Condition::Counting => (1..=n).all(|i| p.count_at_most(i) >= i),
        Condition::Subsets => {
            if n > SUBSET_CONDITION_CAP {
                return Err(ClassicalError::SizeCap {
                    n,
                    cap: SUBSET_CONDITION_CAP,
                });
            }
            (1u32..1 << n).all(|mask| {
                let size = mask.count_ones() as usize;
                (0..n).any(|i| mask >> i & 1 == 1 && p.values()[i] <= n + 1 - size)
            })
        }
    })
}

pub fn is_parking_function(p: &PreferenceVector) -> bool {
    simulate_park(p).success()
}

/// Indices `j ∈ [n]` with exactly `j` preferences `<= j`. Always ends with
/// `n`.
pub fn breakpoints(p: &PreferenceVector) -> Result<Vec<usize>, ClassicalError> {
    if !is_parking_function(p) {
        return Err(ClassicalError::NotParking);
    }
    Ok((1..=p.len()).filter(|&j| p.count_at_most(j) == j).collect())
}

/// Only breakpoint is `n`.
pub fn is_prime(p: &PreferenceVector) -> Result<bool, ClassicalError> {
    Ok(breakpoints(p)? == vec![p.len()])
}

/// Splits `p` at breakpoint `j < n` into the preferences `<= j` (in car
/// order) and the remaining preferences shifted down by `j`.
pub fn split_at_breakpoint(
    p: &PreferenceVector,
    j: usize,
) -> Result<(PreferenceVector, PreferenceVector), ClassicalError> {
    if j == 0 || j >= p.len() || !breakpoints(p)?.contains(&j) {
        return Err(ClassicalError::NotBreakpoint(j));
    }
    let low = p.values().iter().copied().filter(|&x| x <= j).collect();
    let high = p.values().iter().filter(|&&x| x > j).map(|&x| x - j).collect();
    Ok((PreferenceVector::new(low)?, PreferenceVector::new(high)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Dyck,
    Lukasiewicz,
}

/// A lattice path of a parking function.
///
/// Dyck paths store `+1`/`-1` for `U = (1/2, 1/2)` and `D = (1/2, -1/2)`;
/// Łukasiewicz paths store the rise `q_k - 1` of each unit step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepPath {
    pub kind: PathKind,
    pub steps: Vec<i64>,
}

impl StepPath {
    /// Vertices of the path, scaled by 2 for Dyck paths so that all
    /// coordinates are integers.
    fn scaled_points(&self) -> Vec<(i64, i64)> {
        let mut points = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for &s in &self.steps {
            x += 1;
            y += s;
            points.push((x, y));
        }
        points
    }

    /// Positive integer x-coordinates where the path is on the x-axis.
    pub fn touch_points(&self) -> Vec<usize> {
        let points = self.scaled_points();
        match self.kind {
            PathKind::Dyck => points
                .iter()
                .filter(|&&(x, y)| x > 0 && x % 2 == 0 && y == 0)
                .map(|&(x, _)| (x / 2) as usize)
                .collect(),
            PathKind::Lukasiewicz => points
                .iter()
                .filter(|&&(x, y)| x > 0 && y == 0)
                .map(|&(x, _)| x as usize)
                .collect(),
        }
    }

    /// `UUDUDD` for Dyck paths, comma-separated rises otherwise.
    pub fn render(&self) -> String {
        match self.kind {
            PathKind::Dyck => self
                .steps
                .iter()
                .map(|&s| if s > 0 { 'U' } else { 'D' })
                .collect(),
            PathKind::Lukasiewicz => {
                let parts: Vec<String> = self.steps.iter().map(i64::to_string).collect();
                parts.join(",")
            }
        }
    }

    /// SVG document with the path as a single polyline.
    pub fn to_svg(&self) -> String {
        let (sx, sy) = match self.kind {
            PathKind::Dyck => (10.0, 10.0),
            PathKind::Lukasiewicz => (20.0, 20.0),
        };
        let points: Vec<(f64, f64)> = self
            .scaled_points()
            .into_iter()
            .map(|(x, y)| (x as f64 * sx, y as f64 * sy))
            .collect();
        polyline_svg(&[points])
    }
}

pub(crate) fn polyline_svg(lines: &[Vec<(f64, f64)>]) -> String {
    let margin = 10.0;
    let max_x = lines
        .iter()
        .flatten()
        .map(|p| p.0)
        .fold(0.0, f64::max);
    let max_y = lines
        .iter()
        .flatten()
        .map(|p| p.1)
        .fold(0.0, f64::max);
    let width = max_x + 2.0 * margin;
    let height = max_y + 2.0 * margin;
    let colours = ["black", "red", "blue"];
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    );
    for (k, line) in lines.iter().enumerate() {
        let pts: Vec<String> = line
            .iter()
            .map(|(x, y)| format!("{},{}", x + margin, height - margin - y))
            .collect();
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
            colours[k % colours.len()],
            pts.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Dyck path `U^{q_1} D U^{q_2} D … U^{q_n} D`, or the Łukasiewicz path
/// with steps `(1, q_k - 1)`.
pub fn to_path(p: &PreferenceVector, kind: PathKind) -> Result<StepPath, ClassicalError> {
    if !is_parking_function(p) {
        return Err(ClassicalError::NotParking);
    }
    let q = p.multiplicities();
    let steps = match kind {
        PathKind::Dyck => q
            .iter()
            .flat_map(|&k| std::iter::repeat_n(1, k).chain(std::iter::once(-1)))
            .collect(),
        PathKind::Lukasiewicz => q.iter().map(|&k| k as i64 - 1).collect(),
    };
    Ok(StepPath { kind, steps })
}

/// Inverse of [`to_path`] on non-decreasing parking functions.
pub fn from_path(path: &StepPath) -> Result<PreferenceVector, ClassicalError> {
    let q: Vec<usize> = match path.kind {
        PathKind::Dyck => {
            if path.steps.iter().any(|&s| s != 1 && s != -1) {
                return Err(ClassicalError::InvalidPath("steps must be U or D".into()));
            }
            if path.steps.last() != Some(&-1) {
                return Err(ClassicalError::InvalidPath("must end with D".into()));
            }
            let mut q = Vec::new();
            let mut run = 0;
            for &s in &path.steps {
                if s > 0 {
                    run += 1;
                } else {
                    q.push(run);
                    run = 0;
                }
            }
            q
        }
        PathKind::Lukasiewicz => path
            .steps
            .iter()
            .map(|&r| {
                usize::try_from(r + 1)
                    .map_err(|_| ClassicalError::InvalidPath("rises must be >= -1".into()))
            })
            .collect::<Result<_, _>>()?,
    };
    let n = q.len();
    if q.iter().sum::<usize>() != n {
        return Err(ClassicalError::InvalidPath("path does not end on the x-axis".into()));
    }
    let values: Vec<usize> = q
        .iter()
        .enumerate()
        .flat_map(|(j, &k)| std::iter::repeat_n(j + 1, k))
        .collect();
    let p = PreferenceVector::new(values)?;
    if !is_parking_function(&p) {
        return Err(ClassicalError::InvalidPath("path goes below the x-axis".into()));
    }
    Ok(p)
}

/// Drops the leading 1 of a non-decreasing prime parking function, giving a
/// non-decreasing parking function of size `n - 1`.
pub fn prime_bijection_classical(p: &PreferenceVector) -> Result<PreferenceVector, ClassicalError> {
    if !p.is_non_decreasing() {
        return Err(ClassicalError::NotNonDecreasing);
    }
    if !is_prime(p)? {
        return Err(ClassicalError::NotPrime);
    }
    if p.len() == 1 {
        return Err(ClassicalError::TooShort);
    }
    PreferenceVector::new(p.values()[1..].to_vec())
}

/// Prepends a 1 to a non-decreasing parking function.
pub fn prime_bijection_classical_inverse(
    p: &PreferenceVector,
) -> Result<PreferenceVector, ClassicalError> {
    if !p.is_non_decreasing() {
        return Err(ClassicalError::NotNonDecreasing);
    }
    if !is_parking_function(p) {
        return Err(ClassicalError::NotParking);
    }
    let mut values = Vec::with_capacity(p.len() + 1);
    values.push(1);
    values.extend_from_slice(p.values());
    PreferenceVector::new(values)
}

/// All preference vectors in `[n]^n`, lexicographically.
pub fn all_preferences(n: usize) -> impl Iterator<Item = PreferenceVector> {
    let total = (n as u64).pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![1; n];
        for slot in v.iter_mut().rev() {
            *slot = (k % n as u64) as usize + 1;
            k /= n as u64;
        }
        PreferenceVector(v)
    })
}

/// Non-decreasing vectors in `[n]^n` (multisets), lexicographically.
pub fn non_decreasing_preferences(n: usize) -> Vec<PreferenceVector> {
    fn rec(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<PreferenceVector>) {
        if prefix.len() == n {
            out.push(PreferenceVector(prefix.clone()));
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1);
        for x in lo..=n {
            prefix.push(x);
            rec(n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}
