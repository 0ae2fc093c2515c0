//! `k`-restricted edge-connectivity `λ_k`, minimum `k`-edge degree `ξ_k`,
//! super-`λ_k` classification and the "super `m`-edge-connected of order
//! `q`" check.
//!
//! `λ_k` is computed by sweeping pairs `(A, B)` of disjoint connected
//! `k`-sets and taking the minimum `A`-`B` cut. A minimum `A`-`B` cut leaves
//! exactly two components, the one holding `A` and the one holding `B`
//! (any other component could be moved across and strictly shrink the cut),
//! so every swept cut is itself `k`-restricted. Conversely both sides of an
//! optimal `k`-restricted cut contain a connected `k`-set, so the sweep
//! reaches the optimum.
//!
//! The sweep does not need every pair. If `A_1, ..., A_r` are pairwise
//! disjoint connected `k`-sets and `r > λ_k`, an optimal cut can split at most
//! `λ_k` of them (each split costs an edge inside `G[A_i]`), so some `A_i`
//! lies whole on one side and the pairs `(A_i, *)` already find the optimum.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{binomial, next_combination};
use crate::graph::Graph;
use crate::matching::PreclusionWitness;
use crate::mincut::{edge_connectivity, CutEngine, CutOutcome, CutWitness, MinCutError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RestrictedError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid subset size k = {k} for a graph on {n} vertices")]
    InvalidK { k: usize, n: usize },
    #[error("more than {cap} connected {k}-sets; instance too large for an exact sweep")]
    CapExceeded { k: usize, cap: usize },
    #[error("time budget exhausted")]
    Timeout,
    #[error("λ_{0} is not defined for this graph")]
    Undefined(usize),
    #[error("internal check failed: {0}")]
    WitnessInvalid(String),
    #[error(transparent)]
    MinCut(#[from] MinCutError),
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub max_sets: usize,
    pub deadline: Option<Instant>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { max_sets: 1_000_000, deadline: None }
    }
}

impl SweepOptions {
    fn check_time(&self) -> Result<(), RestrictedError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(RestrictedError::Timeout),
            _ => Ok(()),
        }
    }
}

/// `λ_k` of a graph, or the fact that no `k`-restricted cut exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LadderValue {
    Defined(usize),
    NotDefined,
}

impl LadderValue {
    pub fn defined(self) -> Option<usize> {
        match self {
            LadderValue::Defined(v) => Some(v),
            LadderValue::NotDefined => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PairSweep,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderResult {
    pub k: usize,
    pub value: LadderValue,
    pub witness: Option<CutWitness>,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Proven,
    Refuted,
    Unknown,
}

/// Why a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `λ_k` against `λ_{k+1}`; a refutation carries the `(k+1)`-restricted
    /// minimum cut, which is a minimum `k`-restricted cut with no order-`k`
    /// component.
    Ladder {
        k: usize,
        lambda_k: LadderValue,
        lambda_next: LadderValue,
        counterexample: Option<CutWitness>,
    },
    /// Every edge set of the given size was tried.
    Exhaustive {
        edges_removed: usize,
        checked: u64,
        counterexample: Option<Vec<(usize, usize)>>,
    },
    /// Small sides up to `max_side` vertices were tried.
    SubsetSweep {
        max_side: usize,
        complete: bool,
        counterexample: Option<Vec<usize>>,
    },
    /// Optimal (conditional) matching preclusion sets, enumerated.
    Preclusion {
        number: usize,
        target: usize,
        optimal_sets: usize,
        counterexample: Option<PreclusionWitness>,
    },
    Partial {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperStatus {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl SuperStatus {
    pub fn unknown(reason: impl Into<String>) -> Self {
        SuperStatus { verdict: Verdict::Unknown, evidence: Evidence::Partial { reason: reason.into() } }
    }
}

/// All vertex sets of size `k` inducing a connected subgraph, each exactly
/// once. Sets are grown from their smallest vertex (ESU enumeration), so the
/// order is deterministic; every set is returned sorted.
pub fn connected_subsets(g: &Graph, k: usize, cap: Option<usize>) -> Result<Vec<Vec<usize>>, RestrictedError> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(RestrictedError::InvalidK { k, n });
    }
    let cap = cap.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut sub = Vec::with_capacity(k);
    for root in 0..n {
        sub.push(root);
        let ext: Vec<usize> = g.neighbors(root).iter().map(|&(w, _)| w).filter(|&w| w > root).collect();
        esu_extend(g, k, root, &mut sub, ext, &mut out, cap)?;
        sub.pop();
    }
    Ok(out)
}

fn esu_extend(
    g: &Graph,
    k: usize,
    root: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<(), RestrictedError> {
    if sub.len() == k {
        if out.len() >= cap {
            return Err(RestrictedError::CapExceeded { k, cap });
        }
        let mut set = sub.clone();
        set.sort_unstable();
        out.push(set);
        return Ok(());
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &(u, _) in g.neighbors(w) {
            if u > root && !sub.contains(&u) && u != w && !sub.iter().any(|&s| g.has_edge(s, u)) {
                next.push(u);
            }
        }
        sub.push(w);
        esu_extend(g, k, root, sub, next, out, cap)?;
        sub.pop();
    }
    Ok(())
}

/// A minimizer of the `k`-edge degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiResult {
    pub k: usize,
    pub value: usize,
    pub set: Vec<usize>,
}

/// `ξ_k(G) = min |[X, X̄]|` over connected induced `k`-sets `X`.
pub fn xi_k(g: &Graph, k: usize) -> Result<XiResult, RestrictedError> {
    xi_k_with(g, k, &SweepOptions::default())
}

pub fn xi_k_with(g: &Graph, k: usize, opts: &SweepOptions) -> Result<XiResult, RestrictedError> {
    let sets = connected_subsets(g, k, Some(opts.max_sets))?;
    sets.into_iter()
        .map(|set| (g.boundary_of(&set).len(), set))
        .min()
        .map(|(value, set)| XiResult { k, value, set })
        .ok_or(RestrictedError::InvalidK { k, n: g.vertex_count() })
}

fn is_k_restricted(w: &CutWitness, k: usize) -> bool {
    w.component_sizes.len() >= 2 && w.component_sizes.iter().all(|&s| s >= k)
}

fn better(a: &(usize, CutWitness), b: &(usize, CutWitness)) -> bool {
    (a.0, &a.1.cut_edges) < (b.0, &b.1.cut_edges)
}

/// `λ_k(G)` with default options.
pub fn lambda_k(g: &Graph, k: usize) -> Result<LadderResult, RestrictedError> {
    lambda_k_with(g, k, &SweepOptions::default())
}

/// `λ_k(G)`: exact minimum over `k`-restricted edge cuts, with a witness.
/// `k = 1` is plain edge-connectivity.
pub fn lambda_k_with(g: &Graph, k: usize, opts: &SweepOptions) -> Result<LadderResult, RestrictedError> {
    let n = g.vertex_count();
    if k == 0 {
        return Err(RestrictedError::InvalidK { k, n });
    }
    if !g.is_connected() {
        return Err(RestrictedError::Disconnected);
    }
    let undefined = LadderResult { k, value: LadderValue::NotDefined, witness: None, method: Method::PairSweep };
    if n < 2 * k {
        return Ok(undefined);
    }
    if k == 1 {
        let (value, witness) = edge_connectivity(g)?;
        return Ok(LadderResult {
            k,
            value: LadderValue::Defined(value),
            witness: Some(witness),
            method: Method::PairSweep,
        });
    }

    let sets = connected_subsets(g, k, Some(opts.max_sets))?;
    let mut best: Option<(usize, CutWitness)> = None;

    // the boundary of a ξ_k minimizer is often already k-restricted
    if let Some((_, set)) = sets.iter().map(|s| (g.boundary_of(s).len(), s)).min() {
        let mut side = vec![false; n];
        for &v in set {
            side[v] = true;
        }
        let w = CutWitness::from_side(g, &side);
        if is_k_restricted(&w, k) {
            best = Some((w.value(), w));
        }
    }

    let mut taken = vec![false; n];
    let anchors: Vec<usize> = (0..sets.len())
        .filter(|&i| {
            if sets[i].iter().any(|&v| taken[v]) {
                return false;
            }
            sets[i].iter().for_each(|&v| taken[v] = true);
            true
        })
        .collect();

    let mut processed = vec![false; sets.len()];
    let mut settled = false;
    for (count, &ai) in anchors.iter().enumerate() {
        opts.check_time()?;
        sweep_anchor(g, &sets, ai, &processed, &mut best, opts)?;
        processed[ai] = true;
        if best.as_ref().is_some_and(|b| count + 1 > b.0) {
            settled = true;
            break;
        }
    }
    if !settled {
        for ai in 0..sets.len() {
            if !processed[ai] {
                opts.check_time()?;
                sweep_anchor(g, &sets, ai, &processed, &mut best, opts)?;
                processed[ai] = true;
            }
        }
    }

    let Some((value, witness)) = best else {
        return Ok(undefined);
    };
    if witness.value() != value || !is_k_restricted(&witness, k) || !witness.is_consistent(g) {
        return Err(RestrictedError::WitnessInvalid(format!("λ_{k} witness {witness:?}")));
    }
    Ok(LadderResult { k, value: LadderValue::Defined(value), witness: Some(witness), method: Method::PairSweep })
}

fn sweep_anchor(
    g: &Graph,
    sets: &[Vec<usize>],
    ai: usize,
    processed: &[bool],
    best: &mut Option<(usize, CutWitness)>,
    opts: &SweepOptions,
) -> Result<(), RestrictedError> {
    let a = &sets[ai];
    let mut in_a = vec![false; g.vertex_count()];
    for &v in a {
        in_a[v] = true;
    }
    let bound = AtomicUsize::new(best.as_ref().map_or(usize::MAX, |b| b.0));
    let timed_out = std::sync::atomic::AtomicBool::new(false);
    let found = (0..sets.len())
        .into_par_iter()
        .filter(|&j| j != ai && !processed[j] && !sets[j].iter().any(|&v| in_a[v]))
        .map_init(
            || (CutEngine::new(g), 0u32),
            |(engine, tick), j| {
                *tick = tick.wrapping_add(1);
                if *tick % 256 == 0 && opts.check_time().is_err() {
                    timed_out.store(true, Ordering::Relaxed);
                }
                if timed_out.load(Ordering::Relaxed) {
                    return None;
                }
                let b = bound.load(Ordering::Relaxed);
                // ties are kept so the witness choice does not depend on timing
                let ub = (b != usize::MAX).then(|| b + 1);
                match engine.min_cut(a, &sets[j], ub).expect("disjoint nonempty terminals") {
                    CutOutcome::Cut { value, witness } => {
                        bound.fetch_min(value, Ordering::Relaxed);
                        Some((value, witness))
                    }
                    CutOutcome::Pruned => None,
                }
            },
        )
        .flatten()
        .reduce_with(|x, y| if better(&y, &x) { y } else { x });
    if timed_out.load(Ordering::Relaxed) {
        return Err(RestrictedError::Timeout);
    }
    if let Some(cand) = found {
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            *best = Some(cand);
        }
    }
    Ok(())
}

/// Super-`λ_k` via the ladder: proven iff `λ_{k+1}` is undefined or exceeds
/// `λ_k`; refuted with the `(k+1)`-restricted minimum cut otherwise.
pub fn classify_super_lambda_k(g: &Graph, k: usize) -> Result<SuperStatus, RestrictedError> {
    classify_super_lambda_k_with(g, k, &SweepOptions::default())
}

pub fn classify_super_lambda_k_with(g: &Graph, k: usize, opts: &SweepOptions) -> Result<SuperStatus, RestrictedError> {
    let current = lambda_k_with(g, k, opts)?;
    let next = lambda_k_with(g, k + 1, opts)?;
    Ok(ladder_verdict(&current, &next))
}

/// Combines two consecutive ladder results into a super-`λ_k` verdict.
pub fn ladder_verdict(current: &LadderResult, next: &LadderResult) -> SuperStatus {
    let k = current.k;
    let Some(lk) = current.value.defined() else {
        return SuperStatus::unknown(format!("λ_{k} is not defined"));
    };
    let (verdict, counterexample) = match next.value {
        LadderValue::Defined(ln) if ln == lk => (Verdict::Refuted, next.witness.clone()),
        _ => (Verdict::Proven, None),
    };
    SuperStatus {
        verdict,
        evidence: Evidence::Ladder { k, lambda_k: current.value, lambda_next: next.value, counterexample },
    }
}

/// Search strategy for [`check_super_edge_connected`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperOrderMode {
    /// Every edge set of size `m` (deleting more edges never helps a graph
    /// pass, so size exactly `m` covers all `|F| <= m`).
    Oracle { max_subsets: u64 },
    /// Every small side `X` with `q < |X| <= max_side` and `|[X, X̄]| <= m`.
    SubsetSweep { max_side: Option<usize> },
}

impl SuperOrderMode {
    pub fn oracle() -> Self {
        SuperOrderMode::Oracle { max_subsets: 10_000_000 }
    }

    pub fn subset_sweep() -> Self {
        SuperOrderMode::SubsetSweep { max_side: None }
    }
}

/// Whether deleting any `m` edges leaves the graph connected, or one big
/// component plus small ones totalling at most `q` vertices.
pub fn check_super_edge_connected(
    g: &Graph,
    m: usize,
    q: usize,
    mode: SuperOrderMode,
) -> Result<SuperStatus, RestrictedError> {
    if q == 0 {
        return Err(RestrictedError::InvalidK { k: q, n: g.vertex_count() });
    }
    match mode {
        SuperOrderMode::Oracle { max_subsets } => Ok(super_order_exhaustive(g, m, q, max_subsets)),
        SuperOrderMode::SubsetSweep { max_side } => {
            super_order_sweep(g, m, q, max_side.unwrap_or(q + 4), &SweepOptions::default())
        }
    }
}

fn small_total(g: &Graph, removed: &[bool]) -> usize {
    let comps = g.components_masked(removed);
    g.vertex_count() - comps.first().map_or(0, Vec::len)
}

fn super_order_exhaustive(g: &Graph, m: usize, q: usize, max_subsets: u64) -> SuperStatus {
    let e = g.edge_count();
    let size = m.min(e);
    let total = binomial(e as u64, size as u64);
    if total > max_subsets {
        return SuperStatus::unknown(format!("C({e}, {size}) = {total} edge sets exceeds the cap of {max_subsets}"));
    }
    let bad = if size == 0 {
        (small_total(g, &[]) > q).then(Vec::new)
    } else {
        (0..=e - size)
            .into_par_iter()
            .filter_map(|first| {
                let mut comb: Vec<usize> = (first..first + size).collect();
                let mut removed = vec![false; e];
                loop {
                    if comb[0] != first {
                        return None;
                    }
                    comb.iter().for_each(|&x| removed[x] = true);
                    let hit = small_total(g, &removed) > q;
                    comb.iter().for_each(|&x| removed[x] = false);
                    if hit {
                        return Some(comb);
                    }
                    if !next_combination(&mut comb, e) {
                        return None;
                    }
                }
            })
            .min()
    };
    let counterexample = bad.map(|c| c.iter().map(|&x| g.edge(x)).collect::<Vec<_>>());
    SuperStatus {
        verdict: if counterexample.is_some() { Verdict::Refuted } else { Verdict::Proven },
        evidence: Evidence::Exhaustive { edges_removed: size, checked: total, counterexample },
    }
}

/// Looks for a side `X` with `q < |X| <= limit`, `|X| <= |V|/2` and
/// `|[X, X̄]| <= m`. Such an `X` exists iff the property fails, provided
/// `|V| > 3q`; the sweep is complete when `limit` reaches `|V|/2`.
fn super_order_sweep(
    g: &Graph,
    m: usize,
    q: usize,
    max_side: usize,
    opts: &SweepOptions,
) -> Result<SuperStatus, RestrictedError> {
    let n = g.vertex_count();
    let limit = max_side.min(n / 2);
    let complete = limit == n / 2 && n > 3 * q;
    // the components of G[X] are pairwise non-adjacent connected pieces and
    // |[X, X̄]| is the sum of their boundaries
    let mut pieces: Vec<(Vec<usize>, usize)> = Vec::new();
    for size in 1..=limit {
        for set in connected_subsets(g, size, Some(opts.max_sets))? {
            let b = g.boundary_of(&set).len();
            if b <= m {
                pieces.push((set, b));
            }
        }
    }
    pieces.sort();
    let mut blocked = vec![0u32; n];
    let mut chosen = Vec::new();
    let found = piece_search(g, &pieces, 0, &mut blocked, &mut chosen, 0, 0, m, q, limit);
    let verdict = match (&found, complete) {
        (Some(_), _) => Verdict::Refuted,
        (None, true) => Verdict::Proven,
        (None, false) => Verdict::Unknown,
    };
    Ok(SuperStatus { verdict, evidence: Evidence::SubsetSweep { max_side: limit, complete, counterexample: found } })
}

#[allow(clippy::too_many_arguments)]
fn piece_search(
    g: &Graph,
    pieces: &[(Vec<usize>, usize)],
    from: usize,
    blocked: &mut [u32],
    chosen: &mut Vec<usize>,
    size: usize,
    cut: usize,
    m: usize,
    q: usize,
    limit: usize,
) -> Option<Vec<usize>> {
    if size > q {
        let mut side = chosen.clone();
        side.sort_unstable();
        return Some(side);
    }
    for (i, (set, b)) in pieces.iter().enumerate().skip(from) {
        if size + set.len() > limit || cut + b > m || set.iter().any(|&v| blocked[v] > 0) {
            continue;
        }
        let mut touched = Vec::new();
        for &v in set {
            touched.push(v);
            touched.extend(g.neighbors(v).iter().map(|&(w, _)| w));
        }
        touched.iter().for_each(|&v| blocked[v] += 1);
        chosen.extend_from_slice(set);
        let hit = piece_search(g, pieces, i + 1, blocked, chosen, size + set.len(), cut + b, m, q, limit);
        chosen.truncate(chosen.len() - set.len());
        touched.iter().for_each(|&v| blocked[v] -= 1);
        if hit.is_some() {
            return hit;
        }
    }
    None
}
