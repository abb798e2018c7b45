//! Reference oracles for the integration tests, written straight from the
//! definitions on a plain multiplicity matrix. They share no code with the
//! library's algorithms beyond reading the graph.

#![allow(dead_code)]

use sandpile_parking::enumeration::{random_multigraphs, standard_instances};
use sandpile_parking::families::{make_family, FamilySpec};
use sandpile_parking::RootedMultigraph;

pub const RANDOM_SEED: u64 = 17;

/// Vertex `0` is the sink; non-sink vertices `1..n` follow the library's
/// ordinal order.
#[derive(Debug, Clone)]
pub struct Plain {
    pub n: usize,
    pub mult: Vec<Vec<u64>>,
}

impl Plain {
    pub fn from_graph(g: &RootedMultigraph) -> Self {
        let order: Vec<usize> = std::iter::once(g.sink()).chain(g.non_sink().iter().copied()).collect();
        let n = order.len();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| g.mult(order[i], order[j]) as u64).collect())
            .collect();
        Plain { n, mult }
    }

    /// Non-sink indices `1..n`.
    pub fn non_sink(&self) -> Vec<usize> {
        (1..self.n).collect()
    }

    pub fn deg(&self, v: usize) -> i64 {
        self.mult[v].iter().sum::<u64>() as i64
    }

    pub fn deg_into(&self, v: usize, set: &[usize]) -> i64 {
        set.iter().map(|&w| self.mult[v][w]).sum::<u64>() as i64
    }
}

/// Non-empty subsets of `items`.
pub fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn complement(universe: &[usize], s: &[usize]) -> Vec<usize> {
    universe.iter().copied().filter(|v| !s.contains(v)).collect()
}

/// Subset condition on the induced graph `G[verts ∪ {sink}]`: every
/// non-empty `S ⊆ verts` has `v ∈ S` with `p(v) <= deg^{S^c}(v)`. `value`
/// maps a non-sink index to `p(v)`. Values must be positive.
pub fn parks_on(g: &Plain, verts: &[usize], value: &dyn Fn(usize) -> i64) -> bool {
    if verts.iter().any(|&v| value(v) < 1) {
        return false;
    }
    let mut universe = vec![0];
    universe.extend_from_slice(verts);
    subsets(verts).all(|s| {
        let rest = complement(&universe, &s);
        s.iter().any(|&v| value(v) <= g.deg_into(v, &rest))
    })
}

/// `p` indexed by ordinal (so `p[v - 1]` for index `v`).
pub fn parks(g: &Plain, p: &[i64]) -> bool {
    parks_on(g, &g.non_sink(), &|v| p[v - 1])
}

/// Decomposable along `(A, B)`: `p^A` parks on `G^A` and `p^B = p - deg^A`
/// parks on `G^B` (positive values required).
pub fn decomposable(g: &Plain, p: &[i64], a: &[usize], b: &[usize]) -> bool {
    decomposable_on(g, &|v| p[v - 1], a, b)
}

fn decomposable_on(g: &Plain, value: &dyn Fn(usize) -> i64, a: &[usize], b: &[usize]) -> bool {
    parks_on(g, a, value) && parks_on(g, b, &|v| value(v) - g.deg_into(v, a))
}

pub fn prime(g: &Plain, p: &[i64]) -> bool {
    prime_on(g, &g.non_sink(), &|v| p[v - 1])
}

/// Primeness on `G[verts ∪ {sink}]`.
pub fn prime_on(g: &Plain, verts: &[usize], value: &dyn Fn(usize) -> i64) -> bool {
    parks_on(g, verts, value)
        && subsets(verts).all(|a| {
            let b = complement(verts, &a);
            b.is_empty() || !decomposable_on(g, value, &a, &b)
        })
}

/// Recurrent iff stable, non-negative, and no non-empty `F` has
/// `c(v) < deg^F(v)` for every `v ∈ F`.
pub fn recurrent(g: &Plain, c: &[i64]) -> bool {
    let all = g.non_sink();
    all.iter().all(|&v| c[v - 1] >= 0 && c[v - 1] < g.deg(v))
        && !subsets(&all).any(|f| f.iter().all(|&v| c[v - 1] < g.deg_into(v, &f)))
}

/// `V_M(c)`: sink neighbours with `c(v) >= deg(v) - mult(v, s)`.
pub fn v_m(g: &Plain, c: &[i64]) -> Vec<usize> {
    g.non_sink()
        .into_iter()
        .filter(|&v| g.mult[v][0] > 0 && c[v - 1] >= g.deg(v) - g.mult[v][0] as i64)
        .collect()
}

/// `c^{v-}`: remove `mult(w, s)` grains at every `w != v`.
pub fn minus(g: &Plain, c: &[i64], v: usize) -> Vec<i64> {
    (1..g.n)
        .map(|w| if w == v { c[w - 1] } else { c[w - 1] - g.mult[w][0] as i64 })
        .collect()
}

pub fn strongly_recurrent(g: &Plain, c: &[i64], forall: bool) -> bool {
    if !recurrent(g, c) {
        return false;
    }
    let vm = v_m(g, c);
    let ok = |v: &usize| recurrent(g, &minus(g, c, *v));
    if forall {
        vm.iter().all(ok)
    } else {
        vm.iter().any(ok)
    }
}

/// Spanning trees counted directly: every choice of `n - 1` adjacent pairs
/// that forms a tree, weighted by the product of multiplicities.
pub fn spanning_trees(g: &Plain) -> u128 {
    let pairs: Vec<(usize, usize, u64)> = (0..g.n)
        .flat_map(|i| (i + 1..g.n).map(move |j| (i, j)))
        .filter(|&(i, j)| g.mult[i][j] > 0)
        .map(|(i, j)| (i, j, g.mult[i][j]))
        .collect();
    let mut total = 0u128;
    let need = g.n - 1;
    let mut chosen = Vec::with_capacity(need);
    fn rec(
        pairs: &[(usize, usize, u64)],
        start: usize,
        need: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        total: &mut u128,
    ) {
        if chosen.len() == need {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(parent: &mut [usize], x: usize) -> usize {
                if parent[x] != x {
                    let r = find(parent, parent[x]);
                    parent[x] = r;
                }
                parent[x]
            }
            let mut weight = 1u128;
            for &k in chosen.iter() {
                let (a, b, m) = pairs[k];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return;
                }
                parent[ra] = rb;
                weight *= m as u128;
            }
            *total += weight;
            return;
        }
        for k in start..pairs.len() {
            chosen.push(k);
            rec(pairs, k + 1, need, n, chosen, total);
            chosen.pop();
        }
    }
    rec(&pairs, 0, need, g.n, &mut chosen, &mut total);
    total
}

/// Every tuple in `lo..=hi` per position, lexicographically.
pub fn product(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (&l, &h) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (l..=h).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn stable_configs(g: &Plain) -> Vec<Vec<i64>> {
    let hi: Vec<i64> = g.non_sink().iter().map(|&v| g.deg(v) - 1).collect();
    product(&vec![0; hi.len()], &hi)
}

pub fn candidates(g: &Plain) -> Vec<Vec<i64>> {
    let hi: Vec<i64> = g.non_sink().iter().map(|&v| g.deg(v)).collect();
    product(&vec![1; hi.len()], &hi)
}

/// Family instances plus seeded random multigraphs.
pub fn test_graphs() -> Vec<(String, RootedMultigraph)> {
    let mut out: Vec<(String, RootedMultigraph)> = standard_instances()
        .into_iter()
        .map(|spec| (spec.to_string(), make_family(spec).unwrap()))
        .collect();
    out.extend(
        random_multigraphs(RANDOM_SEED, 50)
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("random#{i}"), g)),
    );
    out
}

/// Test graphs with at most `max` non-sink vertices, plus `K_6^0`.
pub fn small_test_graphs(max: usize) -> Vec<(String, RootedMultigraph)> {
    let mut out: Vec<_> = test_graphs().into_iter().filter(|(_, g)| g.size() <= max).collect();
    if max >= 6 {
        out.push(("COMPLETE(6)".into(), make_family(FamilySpec::Complete { n: 6 }).unwrap()));
    }
    out
}
