//! Brute-force reference implementations for small graphs.
//!
//! Everything here works from the raw edge list on bitmask adjacency and
//! shares no code with the fast modules, so a bug has to be made twice to
//! go unnoticed.
//!
//! Restricted cuts are enumerated as vertex bipartitions `[X, X̄]`. A minimum
//! edge set `F` whose removal leaves components of order at least `k` never
//! contains an edge inside a component (dropping it from `F` keeps `F`
//! valid), so minimum such sets are exactly the valid bipartition cuts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::claims::Value;
use crate::graph::Graph;
use crate::matching::{mp1_number, mp_number, MatchingError};
use crate::restricted::{classify_super_lambda_k, lambda_k, Verdict};
use crate::topology::{complete_graph, cycle_graph, gen_dcell, gen_star, path_graph, star_k1};

pub const DEFAULT_SEED: u64 = 20190402;
pub const MAX_ORACLE_ORDER: usize = 24;
pub const MAX_SUBSETS: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} vertices is beyond the brute-force limit")]
    TooManyVertices(usize),
    #[error("edge-subset enumeration exceeds {0} sets")]
    TooManySubsets(u64),
    #[error("graph has odd order {0}")]
    OddOrder(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub instance: String,
    pub metric: String,
    pub oracle: Value,
    pub fast: Value,
    pub agree: bool,
}

impl OracleReport {
    pub fn new(instance: &str, metric: &str, oracle: Value, fast: Value) -> Self {
        let agree = oracle == fast;
        OracleReport { instance: instance.to_string(), metric: metric.to_string(), oracle, fast, agree }
    }
}

/// Outcome of the literal order-`q` check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderCheck {
    Proven,
    Refuted(Vec<(usize, usize)>),
}

struct Masks {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Masks {
    fn new(g: &Graph) -> Result<Self, OracleError> {
        let n = g.vertex_count();
        if n > MAX_ORACLE_ORDER {
            return Err(OracleError::TooManyVertices(n));
        }
        Ok(Masks { n, edges: g.edges().to_vec() })
    }

    fn adjacency(&self, skip: &[bool]) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if !skip.get(i).copied().unwrap_or(false) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        adj
    }
}

/// Component sizes of the graph on `within` with adjacency masks `adj`.
fn component_sizes(adj: &[u32], within: u32) -> Vec<usize> {
    let mut left = within;
    let mut sizes = Vec::new();
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & within & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
        sizes.push(comp.count_ones() as usize);
    }
    sizes
}

fn all_vertices(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Valid `k`-restricted bipartition cuts: `(cut size, component sizes)`.
fn restricted_cuts(g: &Graph, k: usize) -> Result<Vec<(usize, Vec<usize>)>, OracleError> {
    let m = Masks::new(g)?;
    if m.n < 2 {
        return Ok(Vec::new());
    }
    let adj = m.adjacency(&[]);
    let full = all_vertices(m.n);
    let mut out = Vec::new();
    // vertex 0 always on the X side
    for rest in 0..(1u32 << (m.n - 1)) {
        let x = (rest << 1) | 1;
        if x == full {
            continue;
        }
        let y = full & !x;
        let cut = m.edges.iter().filter(|&&(u, v)| ((x >> u) & 1) != ((x >> v) & 1)).count();
        let mut sizes = component_sizes(&adj, x);
        sizes.extend(component_sizes(&adj, y));
        if sizes.iter().all(|&s| s >= k) {
            out.push((cut, sizes));
        }
    }
    Ok(out)
}

/// Brute-force `λ_k`; `None` when no `k`-restricted cut exists.
pub fn brute_lambda_k(g: &Graph, k: usize) -> Result<Option<usize>, OracleError> {
    Ok(restricted_cuts(g, k)?.into_iter().map(|(c, _)| c).min())
}

/// Brute-force super-`λ_k`: every minimum `k`-restricted cut leaves a
/// component of order exactly `k`. `None` when `λ_k` is undefined.
pub fn brute_super_lambda_k(g: &Graph, k: usize) -> Result<Option<bool>, OracleError> {
    let cuts = restricted_cuts(g, k)?;
    let Some(best) = cuts.iter().map(|(c, _)| *c).min() else {
        return Ok(None);
    };
    Ok(Some(cuts.iter().filter(|(c, _)| *c == best).all(|(_, sizes)| sizes.contains(&k))))
}

fn has_pm(adj: &[u32], left: u32) -> bool {
    if left == 0 {
        return true;
    }
    let v = left.trailing_zeros() as usize;
    let rest = left & !(1 << v);
    let mut options = adj[v] & rest;
    while options != 0 {
        let w = options.trailing_zeros() as usize;
        options &= options - 1;
        if has_pm(adj, rest & !(1 << w)) {
            return true;
        }
    }
    false
}

pub fn brute_has_perfect_matching(g: &Graph) -> Result<bool, OracleError> {
    let m = Masks::new(g)?;
    Ok(m.n % 2 == 0 && has_pm(&m.adjacency(&[]), all_vertices(m.n)))
}

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Visits every `size`-subset of `0..m` in lexicographic order until `f`
/// returns `true`.
fn for_each_subset(m: usize, size: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(m: usize, size: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in from..=m - (size - cur.len()) {
            cur.push(i);
            if go(m, size, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(m, size, 0, &mut Vec::with_capacity(size), f)
}

/// Brute-force `mp` (or `mp_1` when `conditional`): the smallest edge set
/// whose removal leaves no perfect matching (and no isolated vertex).
/// `None` when no such set exists.
pub fn brute_mp(g: &Graph, conditional: bool) -> Result<Option<usize>, OracleError> {
    let m = Masks::new(g)?;
    if m.n % 2 == 1 {
        return Err(OracleError::OddOrder(m.n));
    }
    let e = m.edges.len();
    let full = all_vertices(m.n);
    let mut spent = 0u64;
    for size in 0..=e {
        spent = spent.saturating_add(choose(e as u64, size as u64));
        if spent > MAX_SUBSETS {
            return Err(OracleError::TooManySubsets(MAX_SUBSETS));
        }
        let mut skip = vec![false; e];
        let hit = for_each_subset(e, size, &mut |f| {
            f.iter().for_each(|&i| skip[i] = true);
            let adj = m.adjacency(&skip);
            f.iter().for_each(|&i| skip[i] = false);
            let isolated = adj.contains(&0);
            !(conditional && isolated) && !has_pm(&adj, full)
        });
        if hit {
            return Ok(Some(size));
        }
    }
    Ok(None)
}

/// Literal check over every `F` with `|F| <= m`: `G - F` is connected or has
/// one big component with the others totalling at most `q` vertices.
pub fn brute_super_order(g: &Graph, m_edges: usize, q: usize) -> Result<OrderCheck, OracleError> {
    let m = Masks::new(g)?;
    let e = m.edges.len();
    let full = all_vertices(m.n);
    let top = m_edges.min(e);
    let total = (0..=top).fold(0u64, |acc, s| acc.saturating_add(choose(e as u64, s as u64)));
    if total > MAX_SUBSETS {
        return Err(OracleError::TooManySubsets(MAX_SUBSETS));
    }
    let mut skip = vec![false; e];
    for size in 0..=top {
        let mut found = None;
        for_each_subset(e, size, &mut |f| {
            f.iter().for_each(|&i| skip[i] = true);
            let sizes = component_sizes(&m.adjacency(&skip), full);
            f.iter().for_each(|&i| skip[i] = false);
            let small = m.n - sizes.iter().max().copied().unwrap_or(0);
            if small > q {
                found = Some(f.iter().map(|&i| m.edges[i]).collect());
                return true;
            }
            false
        });
        if let Some(f) = found {
            return Ok(OrderCheck::Refuted(f));
        }
    }
    Ok(OrderCheck::Proven)
}

/// Brute-force independence number over all vertex subsets.
pub fn brute_alpha(g: &Graph) -> Result<usize, OracleError> {
    let m = Masks::new(g)?;
    let adj = m.adjacency(&[]);
    let mut best = 0;
    for s in 0..=all_vertices(m.n) {
        let ones = s.count_ones() as usize;
        if ones > best {
            let mut rest = s;
            let mut ok = true;
            while rest != 0 && ok {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                ok = adj[v] & s == 0;
            }
            if ok {
                best = ones;
            }
        }
        if s == all_vertices(m.n) {
            break;
        }
    }
    Ok(best)
}

/// Named small graphs used alongside the random corpus.
pub fn named_corpus() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("path-4".to_string(), path_graph(4)),
        ("path-5".to_string(), path_graph(5)),
        ("star-k1-4".to_string(), star_k1(4)),
    ];
    for n in 4..=8 {
        out.push((format!("cycle-{n}"), cycle_graph(n)));
    }
    for n in 4..=7 {
        out.push((format!("complete-{n}"), complete_graph(n)));
    }
    for (k, n) in [(1, 2), (1, 3)] {
        out.push((format!("dcell-{k}-{n}"), gen_dcell(k, n).expect("small dcell")));
    }
    out.push(("star-4-2".to_string(), gen_star(4, 2).expect("small star graph")));
    out
}

/// `count` seeded random connected graphs on 4 to 9 vertices with edge
/// probability drawn from `[0.3, 0.5)`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(4..=9usize);
        let p: f64 = rng.random_range(0.3..0.5);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).expect("generated edges are simple");
        if g.is_connected() {
            out.push((format!("random-{}-n{n}", out.len()), g));
        }
    }
    out
}

fn ladder_value(v: Option<usize>) -> Value {
    v.map_or(Value::not_defined(), |x| Value::Int(x as u64))
}

fn verdict_value(v: Verdict) -> Value {
    match v {
        Verdict::Proven => Value::Bool(true),
        Verdict::Refuted => Value::Bool(false),
        Verdict::Unknown => Value::not_defined(),
    }
}

fn preclusion_value(r: Result<crate::matching::PreclusionResult, MatchingError>) -> Value {
    match r {
        Ok(r) => Value::Int(r.number as u64),
        Err(MatchingError::NoPreclusionSet) => Value::not_defined(),
        Err(e) => Value::Tag(format!("error: {e}")),
    }
}

fn oracle_value<T>(r: Result<T, OracleError>, f: impl FnOnce(T) -> Value) -> Value {
    r.map_or_else(|e| Value::Tag(format!("error: {e}")), f)
}

/// Fast-versus-oracle comparison of λ, λ₂, λ₃, super-λ₁ and super-λ₂ on a
/// connected graph, plus mp and mp₁ when the order is even (mp₁ only with
/// minimum degree at least 2).
pub fn compare_instance(id: &str, g: &Graph) -> Vec<OracleReport> {
    let mut out = Vec::new();
    for (k, metric) in [(1, "lambda"), (2, "lambda2"), (3, "lambda3")] {
        let fast =
            lambda_k(g, k).map_or_else(|e| Value::Tag(format!("error: {e}")), |r| ladder_value(r.value.defined()));
        out.push(OracleReport::new(id, metric, oracle_value(brute_lambda_k(g, k), ladder_value), fast));
    }
    for (k, metric) in [(1, "super_lambda"), (2, "super_lambda2")] {
        let fast = classify_super_lambda_k(g, k)
            .map_or_else(|e| Value::Tag(format!("error: {e}")), |s| verdict_value(s.verdict));
        let oracle = oracle_value(brute_super_lambda_k(g, k), |v| v.map_or(Value::not_defined(), Value::Bool));
        out.push(OracleReport::new(id, metric, oracle, fast));
    }
    if g.vertex_count().is_multiple_of(2) {
        let oracle = oracle_value(brute_mp(g, false), ladder_value);
        out.push(OracleReport::new(id, "mp", oracle, preclusion_value(mp_number(g, false))));
        if g.min_degree() >= 2 {
            let oracle = oracle_value(brute_mp(g, true), ladder_value);
            out.push(OracleReport::new(id, "mp1", oracle, preclusion_value(mp1_number(g, false))));
        }
    }
    out
}

/// Runs [`compare_instance`] over every graph, in parallel, in input order.
pub fn compare_corpus(corpus: &[(String, Graph)]) -> Vec<OracleReport> {
    corpus.par_iter().flat_map_iter(|(id, g)| compare_instance(id, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        assert_eq!(brute_lambda_k(&cycle_graph(6), 2), Ok(Some(2)));
        assert_eq!(brute_lambda_k(&complete_graph(4), 2), Ok(Some(4)));
        assert_eq!(brute_lambda_k(&star_k1(4), 2), Ok(None));
        assert_eq!(brute_lambda_k(&complete_graph(6), 3), Ok(Some(9)));
        assert_eq!(brute_super_lambda_k(&gen_dcell(1, 3).unwrap(), 1), Ok(Some(false)));
        assert_eq!(brute_super_lambda_k(&complete_graph(5), 2), Ok(Some(true)));
    }

    #[test]
    fn mp_examples() {
        assert_eq!(brute_mp(&cycle_graph(6), false), Ok(Some(2)));
        assert_eq!(brute_mp(&complete_graph(4), false), Ok(Some(3)));
        assert_eq!(brute_mp(&cycle_graph(6), true), Ok(Some(2)));
        assert_eq!(brute_mp(&cycle_graph(4), true), Ok(None));
        assert_eq!(brute_mp(&path_graph(3), false), Err(OracleError::OddOrder(3)));
        assert_eq!(brute_mp(&gen_dcell(1, 3).unwrap(), false), Ok(Some(3)));
    }

    #[test]
    fn super_order_examples() {
        assert_eq!(brute_super_order(&cycle_graph(6), 1, 1), Ok(OrderCheck::Proven));
        assert!(matches!(brute_super_order(&cycle_graph(6), 2, 1), Ok(OrderCheck::Refuted(f)) if f.len() == 2));
        // D_{1,2} is C_6: two opposite deletions leave P_3 + P_3
        assert_eq!(brute_super_order(&gen_dcell(1, 2).unwrap(), 2, 2), Ok(OrderCheck::Refuted(vec![(0, 1), (3, 5)])));
        assert_eq!(brute_super_order(&gen_dcell(1, 2).unwrap(), 2, 3), Ok(OrderCheck::Proven));
    }

    #[test]
    fn alpha_and_pm() {
        assert_eq!(brute_alpha(&cycle_graph(6)), Ok(3));
        assert_eq!(brute_alpha(&complete_graph(5)), Ok(1));
        assert_eq!(brute_alpha(&gen_dcell(1, 3).unwrap()), Ok(4));
        assert_eq!(brute_has_perfect_matching(&cycle_graph(6)), Ok(true));
        assert_eq!(brute_has_perfect_matching(&star_k1(3)), Ok(false));
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = random_corpus(DEFAULT_SEED, 20);
        let b = random_corpus(DEFAULT_SEED, 20);
        assert_eq!(a.len(), 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x.1.edges() == y.1.edges()));
        assert!(a.iter().all(|(_, g)| g.is_connected() && (4..=9).contains(&g.vertex_count())));
    }

    #[test]
    fn named_graphs_agree() {
        let reports = compare_corpus(&named_corpus());
        let bad: Vec<_> = reports.iter().filter(|r| !r.agree).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
