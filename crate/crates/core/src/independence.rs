//! Exact independence number by branch and bound, and the α-inequality
//! checks that serve as sufficient conditions for matching robustness.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::matching::maximum_matching;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndependenceError {
    #[error("branch-and-bound exceeded {0} nodes")]
    BudgetExceeded(u64),
    #[error("graph is not {0}-regular")]
    NotRegular(usize),
    #[error("graph has odd order {0}")]
    OddOrder(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub alpha: usize,
    pub witness: Vec<usize>,
    /// `|V| - ν(G)`, an upper bound certified by a maximum matching.
    pub proof_bound: usize,
}

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        (0..n).for_each(|v| b.set(v));
        b
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn and_not(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a &= !b);
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + b
                })
            })
        })
    }
}

struct Search {
    adj: Vec<Bits>,
    closed: Vec<Bits>,
    best: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Search {
    /// Vertices coverable by greedily grown cliques; `α(G[cand])` is at most
    /// the number of cliques.
    fn clique_cover(&self, cand: &Bits) -> usize {
        let mut rest = cand.clone();
        let mut cliques = 0;
        while let Some(u) = rest.first() {
            cliques += 1;
            rest.clear(u);
            let mut common = rest.clone();
            common.0.iter_mut().zip(&self.adj[u].0).for_each(|(a, b)| *a &= b);
            while let Some(w) = common.first() {
                rest.clear(w);
                common.clear(w);
                common.0.iter_mut().zip(&self.adj[w].0).for_each(|(a, b)| *a &= b);
            }
        }
        cliques
    }

    fn run(&mut self, mut cand: Bits, current: &mut Vec<usize>) -> Result<(), IndependenceError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(IndependenceError::BudgetExceeded(self.cap));
        }
        let mark = current.len();
        // a vertex of degree at most one is always in some maximum set
        loop {
            let low = cand.iter().find(|&v| self.adj[v].and_count(&cand) <= 1);
            let Some(v) = low else { break };
            current.push(v);
            cand.and_not(&self.closed[v]);
        }
        if cand.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            current.truncate(mark);
            return Ok(());
        }
        if current.len() + self.clique_cover(&cand) <= self.best.len() {
            current.truncate(mark);
            return Ok(());
        }
        let v = cand.iter().max_by_key(|&v| (self.adj[v].and_count(&cand), std::cmp::Reverse(v))).unwrap();
        let mut with = cand.clone();
        with.and_not(&self.closed[v]);
        current.push(v);
        self.run(with, current)?;
        current.pop();
        cand.clear(v);
        self.run(cand, current)?;
        current.truncate(mark);
        Ok(())
    }
}

/// `α(G)` with a maximum independent set as witness. Fails once the search
/// tree exceeds `node_budget` nodes.
pub fn independence_number(g: &Graph, node_budget: u64) -> Result<AlphaResult, IndependenceError> {
    let n = g.vertex_count();
    let mut adj = vec![Bits::empty(n); n];
    for &(u, v) in g.edges() {
        adj[u].set(v);
        adj[v].set(u);
    }
    let closed = (0..n)
        .map(|v| {
            let mut c = adj[v].clone();
            c.set(v);
            c
        })
        .collect();
    let mut s = Search { adj, closed, best: Vec::new(), nodes: 0, cap: node_budget };
    s.run(Bits::full(n), &mut Vec::new())?;
    let mut witness = s.best;
    witness.sort_unstable();
    assert!(
        witness.iter().enumerate().all(|(i, &u)| witness[i + 1..].iter().all(|&v| !g.has_edge(u, v))),
        "witness is not independent"
    );
    let proof_bound = n - maximum_matching(g).len();
    assert!(witness.len() <= proof_bound, "α exceeds |V| - ν");
    Ok(AlphaResult { alpha: witness.len(), witness, proof_bound })
}

/// Upper bound on `α(G)` from a greedy clique cover of the whole graph.
pub fn clique_cover_bound(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut adj = vec![Bits::empty(n); n];
    for &(u, v) in g.edges() {
        adj[u].set(v);
        adj[v].set(u);
    }
    let s = Search { adj, closed: Vec::new(), best: Vec::new(), nodes: 0, cap: 0 };
    s.clique_cover(&Bits::full(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSource {
    Exact,
    /// `α(D_{k,2}) <= 19|V|/42` and `α(D_{k,n}) <= |V|/n` for `n >= 3`.
    DcellBound,
    CliqueCover,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    /// Right-hand side of `α < threshold`, as a reduced fraction.
    pub threshold: String,
    /// `None` when only an upper bound on α is known and it does not settle
    /// the inequality.
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub order: usize,
    pub degree: usize,
    pub alpha: usize,
    pub alpha_source: AlphaSource,
    pub triangle_free: bool,
    pub order_at_least_8: bool,
    pub checks: Vec<InequalityCheck>,
}

impl HypothesisReport {
    pub fn check(&self, name: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates the α-inequalities for an even-order `r`-regular graph. α is
/// exact when the search fits `node_budget`; otherwise the DCell bound for
/// `dcell = Some((k, n))`, else a clique-cover bound.
pub fn hypothesis_report(
    g: &Graph,
    r: usize,
    dcell: Option<(usize, usize)>,
    node_budget: u64,
) -> Result<HypothesisReport, IndependenceError> {
    let order = g.vertex_count();
    if (0..order).any(|v| g.degree(v) != r) {
        return Err(IndependenceError::NotRegular(r));
    }
    if order % 2 == 1 {
        return Err(IndependenceError::OddOrder(order));
    }
    let (alpha, alpha_source) = match independence_number(g, node_budget) {
        Ok(a) => (a.alpha, AlphaSource::Exact),
        Err(_) => match dcell {
            Some((_, 2)) => (19 * order / 42, AlphaSource::DcellBound),
            Some((_, n)) if n >= 3 => (order / n, AlphaSource::DcellBound),
            _ => (clique_cover_bound(g), AlphaSource::CliqueCover),
        },
    };
    let v = i64::try_from(order).expect("order fits i64");
    let r = i64::try_from(r).expect("degree fits i64");
    let half = Ratio::new(v - 2, 2);
    let thresholds = [
        ("half_order_less_1", half),
        ("half_order_less_1_less_2r_minus_8", half - Ratio::from(2 * r - 8)),
        ("min_half_order_less_2_and_less_2r_minus_6", Ratio::new(v - 4, 2).min(half - Ratio::from(2 * r - 6))),
        ("half_order_less_1_less_2r_minus_6", half - Ratio::from(2 * r - 6)),
        ("half_order_less_1_less_2r_minus_4", half - Ratio::from(2 * r - 4)),
    ];
    let a = Ratio::from(i64::try_from(alpha).expect("alpha fits i64"));
    let checks = thresholds
        .into_iter()
        .map(|(name, t)| {
            let below = a < t;
            let holds = match alpha_source {
                AlphaSource::Exact => Some(below),
                _ => below.then_some(true),
            };
            InequalityCheck { name: name.to_string(), threshold: t.to_string(), holds }
        })
        .collect();
    Ok(HypothesisReport {
        order,
        degree: r as usize,
        alpha,
        alpha_source,
        triangle_free: g.stats().triangle_free,
        order_at_least_8: order >= 8,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{complete_graph, cycle_graph, gen_dcell, path_graph};

    #[test]
    fn alpha_examples() {
        let d22 = independence_number(&gen_dcell(2, 2).unwrap(), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(d22.alpha, 19);
        assert_eq!(d22.proof_bound, 21);
        for n in 1..=8 {
            assert_eq!(independence_number(&complete_graph(n), 100).unwrap().alpha, 1);
        }
        assert_eq!(independence_number(&cycle_graph(6), 100).unwrap().alpha, 3);
        assert_eq!(independence_number(&path_graph(5), 100).unwrap().alpha, 3);
        assert_eq!(independence_number(&gen_dcell(1, 3).unwrap(), 1000).unwrap().alpha, 4);
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen_dcell(2, 3).unwrap();
        assert_eq!(independence_number(&g, 5), Err(IndependenceError::BudgetExceeded(5)));
    }

    #[test]
    fn hypothesis_examples() {
        let r = hypothesis_report(&gen_dcell(2, 2).unwrap(), 3, Some((2, 2)), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!((r.alpha, r.alpha_source), (19, AlphaSource::Exact));
        let c = r.check("half_order_less_1").unwrap();
        assert_eq!((c.threshold.as_str(), c.holds), ("20", Some(true)));
        assert!(r.triangle_free && r.order_at_least_8);

        let r = hypothesis_report(&gen_dcell(2, 3).unwrap(), 4, Some((2, 3)), 10).unwrap();
        assert_eq!((r.alpha, r.alpha_source), (52, AlphaSource::DcellBound));
        let c = r.check("half_order_less_1").unwrap();
        assert_eq!((c.threshold.as_str(), c.holds), ("77", Some(true)));

        let r = hypothesis_report(&complete_graph(4), 3, None, 100).unwrap();
        assert_eq!(r.check("half_order_less_1").unwrap().holds, Some(false));
        assert_eq!(hypothesis_report(&path_graph(4), 2, None, 100), Err(IndependenceError::NotRegular(2)));
    }
}
