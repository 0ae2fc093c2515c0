//! Catalog of published claims about DCell, complete and star graphs, and
//! the runner that measures each claim and records the outcome.
//!
//! Values outside every stated parameter range are `not_stated`. The runner
//! still measures them when cheap and attaches the result as a finding.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{binomial, Budget};
use crate::graph::Graph;
use crate::independence::independence_number;
use crate::matching::{
    cond_super_matched_status_with, has_perfect_matching_without, mp1_number_with, mp_number_with,
    super_matched_status_with, v_e, MatchingError, PreclusionWitness,
};
use crate::mincut::CutWitness;
use crate::oracle::{
    brute_alpha, brute_lambda_k, brute_mp, brute_super_lambda_k, compare_corpus, named_corpus, random_corpus,
    OracleReport,
};
use crate::restricted::{
    ladder_verdict, lambda_k_with, xi_k_with, Evidence, LadderResult, RestrictedError, SweepOptions, Verdict,
};
use crate::topology::{
    check_adjacency_preserving, complete_graph, dcell_order, dcell_star_map, gen_dcell_capped, gen_star,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_ORDER: usize = 500;
pub const DEFAULT_BUDGET_MS: u64 = 600_000;
pub const DEFAULT_CORPUS_SIZE: usize = 200;
/// Claims on graphs up to this order are also checked by the brute-force oracle.
pub const ORACLE_ORDER: usize = 12;
/// Estimated elementary steps above which a pair sweep is not attempted.
pub const SWEEP_WORK_LIMIT: f64 = 3e10;
const MATCHING_TEST_CAP: u64 = 10_000_000;
const ALPHA_NODE_BUDGET: u64 = 5_000_000;

/// A measured or stated value: an integer, a boolean, or a tag such as
/// `not_defined` / `not_stated`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(u64),
    Bool(bool),
    Tag(String),
}

impl Value {
    pub fn not_defined() -> Self {
        Value::Tag("not_defined".into())
    }

    pub fn not_stated() -> Self {
        Value::Tag("not_stated".into())
    }

    pub fn is_not_stated(&self) -> bool {
        matches!(self, Value::Tag(t) if t == "not_stated")
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Tag(t) => f.write_str(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Dcell,
    Star,
    Complete,
}

/// `(k, n)` for DCell, `(n', k')` for star graphs (`n` holds `n'`), `n`
/// alone for complete graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Lambda,
    Lambda2,
    Lambda3,
    Xi2,
    Xi3,
    Alpha,
    Mp,
    Mp1,
    SuperLambda,
    SuperLambda2,
    SuperLambda3,
    SuperMatched,
    CondSuperMatched,
    IsomorphicToStar,
}

impl Metric {
    pub const ALL: [Metric; 14] = [
        Metric::Lambda,
        Metric::Lambda2,
        Metric::Lambda3,
        Metric::Xi2,
        Metric::Xi3,
        Metric::Alpha,
        Metric::Mp,
        Metric::Mp1,
        Metric::SuperLambda,
        Metric::SuperLambda2,
        Metric::SuperLambda3,
        Metric::SuperMatched,
        Metric::CondSuperMatched,
        Metric::IsomorphicToStar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Lambda => "lambda",
            Metric::Lambda2 => "lambda2",
            Metric::Lambda3 => "lambda3",
            Metric::Xi2 => "xi2",
            Metric::Xi3 => "xi3",
            Metric::Alpha => "alpha",
            Metric::Mp => "mp",
            Metric::Mp1 => "mp1",
            Metric::SuperLambda => "super_lambda",
            Metric::SuperLambda2 => "super_lambda2",
            Metric::SuperLambda3 => "super_lambda3",
            Metric::SuperMatched => "super_matched",
            Metric::CondSuperMatched => "cond_super_matched",
            Metric::IsomorphicToStar => "isomorphic_to_star",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.replace('-', "_");
        Metric::ALL.into_iter().find(|m| m.as_str() == s).ok_or_else(|| format!("unknown metric {s}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub family: Family,
    pub params: Params,
    pub metric: Metric,
    pub expected: Value,
    /// The statement the expected value comes from.
    pub source: String,
    pub desk_verifiable: bool,
}

/// Size figures that drive the feasibility estimates.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub order: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl Shape {
    pub fn of(g: &Graph) -> Self {
        let s = g.stats();
        Shape { order: g.vertex_count(), edges: g.edge_count(), min_degree: s.min_degree, max_degree: s.max_degree }
    }

    fn regular(order: usize, degree: usize) -> Self {
        Shape { order, edges: order.saturating_mul(degree) / 2, min_degree: degree, max_degree: degree }
    }
}

fn cumulative(m: usize, upto: usize) -> u64 {
    (0..=upto.min(m)).fold(0u64, |acc, s| acc.saturating_add(binomial(m as u64, s as u64)))
}

/// Rough step count of the `λ_k` pair sweep.
fn sweep_work(shape: Shape, k: usize) -> f64 {
    let d = shape.max_degree.max(1) as f64;
    let sets = shape.order as f64 * d.powi(k as i32 - 1) / (1..k).product::<usize>().max(1) as f64;
    let bound = (k as f64) * d + 1.0;
    bound * bound * sets * (shape.order + shape.edges) as f64
}

/// Whether computing `metric` on a graph of this shape fits the desk budget.
pub fn feasibility(metric: Metric, shape: Shape, expected: &Value) -> Result<(), String> {
    let guess = |fallback: usize| match expected {
        Value::Int(v) => *v as usize,
        _ => fallback,
    };
    let sweep = |k: usize| {
        let w = sweep_work(shape, k);
        if w <= SWEEP_WORK_LIMIT {
            Ok(())
        } else {
            Err(format!("λ_{k} sweep estimated at {w:.1e} steps"))
        }
    };
    let tests = |needed: u64| {
        if needed <= MATCHING_TEST_CAP {
            Ok(())
        } else {
            Err(format!("{needed} matching tests needed, cap {MATCHING_TEST_CAP}"))
        }
    };
    match metric {
        Metric::Lambda | Metric::IsomorphicToStar => Ok(()),
        Metric::Lambda2 | Metric::Xi2 | Metric::SuperLambda => sweep(2),
        Metric::Lambda3 | Metric::Xi3 | Metric::SuperLambda2 => sweep(3),
        Metric::SuperLambda3 => sweep(4),
        Metric::Alpha => {
            if shape.order <= DEFAULT_MAX_ORDER {
                Ok(())
            } else {
                Err("independence search limited to 500 vertices".into())
            }
        }
        Metric::Mp => tests(cumulative(shape.edges, guess(shape.min_degree).saturating_sub(1)).saturating_add(1 << 16)),
        Metric::Mp1 => {
            tests(cumulative(shape.edges, guess(2 * shape.max_degree).saturating_sub(1)).saturating_add(1 << 16))
        }
        Metric::SuperMatched => tests(cumulative(shape.edges, shape.min_degree)),
        Metric::CondSuperMatched => tests(cumulative(shape.edges, 2 * shape.max_degree)),
    }
}

fn record(
    family: Family,
    params: Params,
    metric: Metric,
    stated: Option<(Value, &str)>,
    shape: Option<Shape>,
) -> ClaimRecord {
    let tag = match (family, params.k) {
        (Family::Dcell, Some(k)) => format!("dcell-k{k}-n{}", params.n),
        (Family::Star, Some(k)) => format!("star-n{}-k{k}", params.n),
        _ => format!("complete-n{}", params.n),
    };
    let (expected, source) = stated.map_or((Value::not_stated(), String::new()), |(v, s)| (v, s.to_string()));
    let desk_verifiable =
        shape.is_some_and(|s| s.order <= DEFAULT_MAX_ORDER && feasibility(metric, s, &expected).is_ok());
    ClaimRecord { id: format!("{tag}-{metric}"), family, params, metric, expected, source, desk_verifiable }
}

fn int(v: usize) -> Value {
    Value::Int(v as u64)
}

/// Every catalogued metric for `D_{k,n}`, with the stated value where a
/// published statement covers `(k, n)`.
pub fn claims_for(k: usize, n: usize) -> Vec<ClaimRecord> {
    let params = Params { k: Some(k), n };
    let shape = dcell_order(k, n).filter(|_| k >= 1).map(|t| Shape::regular(t, n + k - 1));
    let stated = |metric: Metric| -> Option<(Value, &'static str)> {
        if k == 0 || n < 2 {
            return None;
        }
        let (nn, kk) = (n as i64, k as i64);
        let v = |x: i64| int(x as usize);
        match metric {
            Metric::Lambda => Some((v(nn + kk - 1), "λ(D_{k,n}) = n+k-1")),
            Metric::Lambda2 if k >= 2 => Some((v(2 * nn + 2 * kk - 4), "λ_2(D_{k,n}) = 2n+2k-4 for n >= 2, k >= 2")),
            Metric::Xi2 if k >= 2 => Some((v(2 * nn + 2 * kk - 4), "D_{k,n} is λ_2-optimal: ξ_2 = λ_2 = 2n+2k-4")),
            Metric::Lambda3 | Metric::Xi3 if n >= 3 && k >= 3 => {
                Some((v(3 * nn + 3 * kk - 9), "λ_3(D_{k,n}) = ξ_3 = 3n+3k-9 for n >= 3, k >= 3"))
            }
            Metric::Lambda3 | Metric::Xi3 if n == 2 && k >= 2 => {
                Some((v(3 * nn + 3 * kk - 7), "λ_3(D_{k,2}) = ξ_3 = 3n+3k-7 for k >= 2"))
            }
            Metric::SuperLambda if k >= 2 => Some((Value::Bool(true), "D_{k,n} is super-λ for k >= 2, n >= 2")),
            Metric::SuperLambda => Some((Value::Bool(false), "D_{1,n} is not super-λ for n >= 2")),
            Metric::SuperLambda2 if k >= 3 || (k == 2 && n == 2) => {
                Some((Value::Bool(true), "D_{k,n} is super-λ_2 for k >= 3, n >= 2, or k = n = 2"))
            }
            Metric::SuperLambda2 if k == 2 => Some((Value::Bool(false), "D_{2,n} is not super-λ_2 for n >= 3")),
            Metric::SuperLambda2 => Some((Value::Bool(false), "D_{1,n} is not super-λ_2 for n >= 2")),
            Metric::SuperLambda3 if (k >= 4 && n >= 3) || (n == 2 && k >= 2) => {
                Some((Value::Bool(true), "D_{k,n} is super-λ_3 for k >= 4, n >= 3, and D_{k,2} for k >= 2"))
            }
            Metric::SuperLambda3 if k == 3 && n >= 4 => {
                Some((Value::Bool(false), "D_{3,n} is not super-λ_3 for n >= 4"))
            }
            Metric::Alpha if k == 2 && n == 2 => Some((int(19), "α(D_{2,2}) = 19")),
            Metric::Mp if k == 1 && n >= 3 => Some((int(n), "mp(D_{1,n}) = n for n >= 3")),
            Metric::Mp if k >= 2 => Some((v(nn + kk - 1), "mp(D_{k,n}) = n+k-1 for k >= 2, n >= 2")),
            Metric::Mp1 if k >= 3 && n >= 3 => {
                Some((v(2 * nn + 2 * kk - 5), "mp_1(D_{k,n}) = 2n+2k-5 for k >= 3, n >= 3"))
            }
            Metric::Mp1 if n == 2 && k >= 2 => Some((v(2 * nn + 2 * kk - 4), "mp_1(D_{k,2}) = 2n+2k-4 for k >= 2")),
            Metric::SuperMatched if k >= 2 => Some((Value::Bool(true), "D_{k,n} is super matched for k >= 2, n >= 2")),
            Metric::SuperMatched if n >= 4 && n.is_multiple_of(2) => {
                Some((Value::Bool(true), "D_{1,n} is super matched for even n"))
            }
            Metric::SuperMatched if n >= 3 => {
                Some((Value::Bool(false), "D_{1,n} has semi-trivial optimal solutions for odd n >= 3"))
            }
            Metric::SuperMatched => Some((Value::Bool(false), "D_{1,2} is a 6-cycle and not super matched")),
            Metric::CondSuperMatched if (k >= 4 && n >= 3) || (n == 2 && k >= 3) => Some((
                Value::Bool(true),
                "D_{k,n} is conditionally super matched for k >= 4, n >= 3, and D_{k,2} for k >= 3",
            )),
            Metric::IsomorphicToStar if k == 1 => Some((Value::Bool(true), "D_{1,n} is isomorphic to S_{n+1,2}")),
            _ => None,
        }
    };
    Metric::ALL
        .into_iter()
        .filter(|&m| m != Metric::IsomorphicToStar || k == 1)
        .map(|m| record(Family::Dcell, params, m, stated(m), shape))
        .collect()
}

/// Claims about `K_n`.
pub fn claims_for_complete(n: usize) -> Vec<ClaimRecord> {
    let params = Params { k: None, n };
    let shape = Some(Shape::regular(n, n.saturating_sub(1)));
    let stated = |metric: Metric| -> Option<(Value, &'static str)> {
        match metric {
            Metric::Lambda2 if n >= 4 => Some((int(2 * n - 4), "λ_2(K_n) = 2n-4 for n >= 4")),
            Metric::SuperLambda2 if n >= 4 => Some((Value::Bool(true), "K_n is super-λ_2 for n >= 4")),
            Metric::Lambda3 if n >= 6 => Some((int(3 * n - 9), "λ_3(K_n) = 3n-9 for n >= 6")),
            Metric::SuperLambda3 if n >= 6 => Some((Value::Bool(true), "K_n is super-λ_3 for n >= 6")),
            Metric::Alpha => Some((int(1), "α(K_n) = 1")),
            _ => None,
        }
    };
    [Metric::Lambda2, Metric::Lambda3, Metric::SuperLambda2, Metric::SuperLambda3, Metric::Alpha]
        .into_iter()
        .map(|m| record(Family::Complete, params, m, stated(m), shape))
        .collect()
}

/// Claims about `S_{n',2}`.
pub fn claims_for_star(n_prime: usize) -> Vec<ClaimRecord> {
    let params = Params { k: Some(2), n: n_prime };
    let shape = (n_prime >= 3).then(|| Shape::regular(n_prime * (n_prime - 1), n_prime - 1));
    let stated = |metric: Metric| -> Option<(Value, &'static str)> {
        match metric {
            Metric::Mp if n_prime >= 4 => Some((int(n_prime - 1), "mp(S_{n,2}) = n-1 for n >= 4")),
            Metric::SuperMatched if n_prime >= 4 && n_prime % 2 == 1 => {
                Some((Value::Bool(true), "S_{n,2} is super matched for odd n >= 4"))
            }
            Metric::SuperMatched if n_prime >= 4 => {
                Some((Value::Bool(false), "S_{n,2} has semi-trivial optimal solutions for even n >= 4"))
            }
            _ => None,
        }
    };
    [Metric::Mp, Metric::SuperMatched].into_iter().map(|m| record(Family::Star, params, m, stated(m), shape)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED-too-large")]
    SkippedTooLarge,
    #[serde(rename = "SKIPPED-not-stated")]
    SkippedNotStated,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedTooLarge => "SKIPPED-too-large",
            Status::SkippedNotStated => "SKIPPED-not-stated",
        })
    }
}

/// Replayable evidence for a computed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// An edge cut whose removal leaves at least two components, each of
    /// order at least `k`.
    Cut {
        k: usize,
        side: Vec<usize>,
        cut_edges: Vec<(usize, usize)>,
    },
    /// A connected vertex set with the given boundary size.
    ConnectedSet {
        vertices: Vec<usize>,
        boundary: usize,
    },
    IndependentSet {
        vertices: Vec<usize>,
    },
    /// An edge set whose removal leaves no perfect matching (and, when
    /// `conditional`, no isolated vertex).
    Preclusion {
        conditional: bool,
        edges: Vec<(usize, usize)>,
    },
    /// `forward[v]` is the image of DCell vertex `v` in the star graph.
    Isomorphism {
        forward: Vec<usize>,
    },
}

impl Witness {
    fn cut(k: usize, w: &CutWitness) -> Self {
        Witness::Cut { k, side: w.side.clone(), cut_edges: w.cut_edges.clone() }
    }

    fn preclusion(conditional: bool, w: &PreclusionWitness) -> Self {
        Witness::Preclusion { conditional, edges: w.edges.clone() }
    }

    /// The integer the witness certifies, where it certifies one.
    fn size(&self) -> Option<usize> {
        match self {
            Witness::Cut { cut_edges, .. } => Some(cut_edges.len()),
            Witness::ConnectedSet { boundary, .. } => Some(*boundary),
            Witness::IndependentSet { vertices } => Some(vertices.len()),
            Witness::Preclusion { edges, .. } => Some(edges.len()),
            Witness::Isomorphism { .. } => None,
        }
    }

    /// Checks the witness against `g` (and `star` for isomorphisms).
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let ids = |edges: &[(usize, usize)]| -> Result<Vec<usize>, String> {
            edges.iter().map(|&(u, v)| g.edge_id(u, v).ok_or(format!("({u}, {v}) is not an edge"))).collect()
        };
        match self {
            Witness::Cut { k, side, cut_edges } => {
                let mut mask = vec![false; g.vertex_count()];
                for &v in side {
                    *mask.get_mut(v).ok_or(format!("vertex {v} out of range"))? = true;
                }
                let mut expect = ids(cut_edges)?;
                expect.sort_unstable();
                if g.boundary(&mask) != expect {
                    return Err("cut edges are not the boundary of the side".into());
                }
                let comps = g.components_without(&expect);
                if comps.len() < 2 || comps.iter().any(|c| c.len() < *k) {
                    return Err(format!("cut is not {k}-restricted"));
                }
                Ok(())
            }
            Witness::ConnectedSet { vertices, boundary } => {
                if vertices.iter().any(|&v| v >= g.vertex_count()) || !g.induces_connected(vertices) {
                    return Err("set does not induce a connected subgraph".into());
                }
                if g.boundary_of(vertices).len() != *boundary {
                    return Err("boundary size mismatch".into());
                }
                Ok(())
            }
            Witness::IndependentSet { vertices } => {
                let ok = vertices.iter().all(|&v| v < g.vertex_count())
                    && vertices
                        .iter()
                        .enumerate()
                        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)));
                if ok {
                    Ok(())
                } else {
                    Err("set is not independent".into())
                }
            }
            Witness::Preclusion { conditional, edges } => {
                let f = ids(edges)?;
                if has_perfect_matching_without(g, &f) {
                    return Err("a perfect matching survives".into());
                }
                if *conditional {
                    let mut hits = vec![0usize; g.vertex_count()];
                    for &(u, v) in edges {
                        hits[u] += 1;
                        hits[v] += 1;
                    }
                    if (0..g.vertex_count()).any(|v| hits[v] == g.degree(v)) {
                        return Err("a vertex is isolated".into());
                    }
                }
                Ok(())
            }
            Witness::Isomorphism { forward } => {
                let n = (1..).find(|&n| n * (n + 1) >= g.vertex_count()).unwrap_or(2);
                let star = gen_star(n + 1, 2).map_err(|e| e.to_string())?;
                let map = crate::topology::VertexMap { forward: forward.clone() };
                match check_adjacency_preserving(g, &star, &map) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("map does not preserve adjacency".into()),
                    Err(e) => Err(e.to_string()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub value: Value,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub family: Family,
    pub params: Params,
    pub metric: Metric,
    pub expected: Value,
    pub computed: Option<Value>,
    pub status: Status,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub instances: usize,
    pub comparisons: usize,
    pub disagreements: Vec<OracleReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub claims: Vec<ClaimResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusSummary>,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.claims.iter().filter(|c| c.status == Status::Fail).count()
            + self.corpus.as_ref().map_or(0, |c| c.disagreements.len())
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }
}

/// Which instances to verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub dcell: Vec<(usize, usize)>,
    pub complete: Vec<usize>,
    pub star: Vec<usize>,
}

impl Plan {
    /// Every `D_{k,n}` with `k >= 1` and `t_{k,n} <= max_order`, the larger
    /// catalogue instances `D_{3,2}`, `D_{3,3}`, `D_{3,4}`, `D_{4,2}` (mostly
    /// reported as too large), `K_4..K_8` and `S_{4,2}..S_{7,2}`.
    pub fn default_for(max_order: usize) -> Self {
        let mut dcell = Vec::new();
        for k in 1.. {
            let row: Vec<_> =
                (2..).map_while(|n| dcell_order(k, n).filter(|&t| t <= max_order).map(|_| (k, n))).collect();
            if row.is_empty() {
                break;
            }
            dcell.extend(row);
        }
        for extra in [(3, 2), (3, 3), (3, 4), (4, 2)] {
            if !dcell.contains(&extra) {
                dcell.push(extra);
            }
        }
        Plan { dcell, complete: (4..=8).collect(), star: (4..=7).collect() }
    }

    pub fn dcell_only(pairs: &[(usize, usize)]) -> Self {
        Plan { dcell: pairs.to_vec(), complete: Vec::new(), star: Vec::new() }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub max_order: usize,
    /// Enables the `λ`/`λ_2`/super-`λ` claims on `D_{3,2}`.
    pub slow: bool,
    pub seed: u64,
    pub budget: Duration,
    /// Random graphs in the oracle cross-check stage; 0 disables the stage.
    pub corpus_size: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_order: DEFAULT_MAX_ORDER,
            slow: false,
            seed: crate::oracle::DEFAULT_SEED,
            budget: Duration::from_millis(DEFAULT_BUDGET_MS),
            corpus_size: DEFAULT_CORPUS_SIZE,
        }
    }
}

impl RunOptions {
    /// Defaults with the per-claim budget read from `NETROBUST_BUDGET_MS`.
    pub fn from_env() -> Self {
        let budget = std::env::var("NETROBUST_BUDGET_MS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map_or(Duration::from_millis(DEFAULT_BUDGET_MS), Duration::from_millis);
        RunOptions { budget, ..RunOptions::default() }
    }
}

/// Sizes the global thread pool from `NETROBUST_THREADS` when set. Returns
/// the pool size in effect.
pub fn init_threads_from_env() -> usize {
    if let Some(t) = std::env::var("NETROBUST_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    rayon::current_num_threads()
}

/// Rebuilds the graph a claim is about.
pub fn instance_graph(family: Family, params: Params) -> Result<Graph, String> {
    match family {
        Family::Dcell => gen_dcell_capped(params.k.unwrap_or(0), params.n, 100_000).map_err(|e| e.to_string()),
        Family::Star => gen_star(params.n, params.k.unwrap_or(2)).map_err(|e| e.to_string()),
        Family::Complete => Ok(complete_graph(params.n)),
    }
}

enum Failure {
    TooLarge(String),
    Error(String),
}

impl From<RestrictedError> for Failure {
    fn from(e: RestrictedError) -> Self {
        match e {
            RestrictedError::Timeout | RestrictedError::CapExceeded { .. } => Failure::TooLarge(e.to_string()),
            e => Failure::Error(e.to_string()),
        }
    }
}

impl From<MatchingError> for Failure {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::Timeout | MatchingError::CapExceeded { .. } => Failure::TooLarge(e.to_string()),
            e => Failure::Error(e.to_string()),
        }
    }
}

/// Per-graph memo of ladder values shared by several metrics.
struct Session<'g> {
    g: &'g Graph,
    ladder: HashMap<usize, LadderResult>,
}

impl Session<'_> {
    fn ladder(&mut self, k: usize, deadline: Instant) -> Result<LadderResult, Failure> {
        if let Some(r) = self.ladder.get(&k) {
            return Ok(r.clone());
        }
        let opts = SweepOptions { deadline: Some(deadline), ..SweepOptions::default() };
        let r = lambda_k_with(self.g, k, &opts)?;
        self.ladder.insert(k, r.clone());
        Ok(r)
    }

    fn compute(&mut self, metric: Metric, deadline: Instant) -> Result<(Value, Option<Witness>), Failure> {
        let g = self.g;
        let budget = Budget { max_work: MATCHING_TEST_CAP, deadline: Some(deadline) };
        let ladder = |r: &LadderResult| match (r.value.defined(), &r.witness) {
            (Some(v), Some(w)) => (int(v), Some(Witness::cut(r.k, w))),
            _ => (Value::not_defined(), None),
        };
        match metric {
            Metric::Lambda => Ok(ladder(&self.ladder(1, deadline)?)),
            Metric::Lambda2 => Ok(ladder(&self.ladder(2, deadline)?)),
            Metric::Lambda3 => Ok(ladder(&self.ladder(3, deadline)?)),
            Metric::Xi2 | Metric::Xi3 => {
                let k = if metric == Metric::Xi2 { 2 } else { 3 };
                let opts = SweepOptions { deadline: Some(deadline), ..SweepOptions::default() };
                let r = xi_k_with(g, k, &opts)?;
                Ok((int(r.value), Some(Witness::ConnectedSet { vertices: r.set, boundary: r.value })))
            }
            Metric::SuperLambda | Metric::SuperLambda2 | Metric::SuperLambda3 => {
                let k = match metric {
                    Metric::SuperLambda => 1,
                    Metric::SuperLambda2 => 2,
                    _ => 3,
                };
                let current = self.ladder(k, deadline)?;
                let next = self.ladder(k + 1, deadline)?;
                let status = ladder_verdict(&current, &next);
                let witness = match &status.evidence {
                    Evidence::Ladder { counterexample: Some(w), .. } => Some(Witness::cut(k + 1, w)),
                    _ => current.witness.as_ref().map(|w| Witness::cut(k, w)),
                };
                Ok((verdict_value(status.verdict), witness))
            }
            Metric::Alpha => {
                let r = independence_number(g, ALPHA_NODE_BUDGET).map_err(|e| Failure::TooLarge(e.to_string()))?;
                Ok((int(r.alpha), Some(Witness::IndependentSet { vertices: r.witness })))
            }
            Metric::Mp | Metric::Mp1 => {
                let conditional = metric == Metric::Mp1;
                let r =
                    if conditional { mp1_number_with(g, false, &budget) } else { mp_number_with(g, false, &budget) };
                match r {
                    Ok(r) => Ok((int(r.number), r.witnesses.first().map(|w| Witness::preclusion(conditional, w)))),
                    Err(MatchingError::NoPreclusionSet) => Ok((Value::not_defined(), None)),
                    Err(e) => Err(e.into()),
                }
            }
            Metric::SuperMatched | Metric::CondSuperMatched => {
                let conditional = metric == Metric::CondSuperMatched;
                let s = if conditional {
                    cond_super_matched_status_with(g, &budget)
                } else {
                    super_matched_status_with(g, &budget)
                };
                match (s.verdict, s.evidence) {
                    (Verdict::Unknown, Evidence::Partial { reason }) => Err(Failure::TooLarge(reason)),
                    (v, Evidence::Preclusion { counterexample, .. }) => {
                        Ok((verdict_value(v), counterexample.map(|w| Witness::preclusion(conditional, &w))))
                    }
                    (v, _) => Ok((verdict_value(v), None)),
                }
            }
            Metric::IsomorphicToStar => {
                let n = (2..).find(|&n| n * (n + 1) >= g.vertex_count()).unwrap_or(2);
                let map = dcell_star_map(n).map_err(|e| Failure::Error(e.to_string()))?;
                let star = gen_star(n + 1, 2).map_err(|e| Failure::Error(e.to_string()))?;
                let ok = check_adjacency_preserving(g, &star, &map).map_err(|e| Failure::Error(e.to_string()))?;
                Ok((Value::Bool(ok), ok.then_some(Witness::Isomorphism { forward: map.forward })))
            }
        }
    }
}

fn verdict_value(v: Verdict) -> Value {
    match v {
        Verdict::Proven => Value::Bool(true),
        Verdict::Refuted => Value::Bool(false),
        Verdict::Unknown => Value::not_defined(),
    }
}

/// Brute-force value for `metric`, when an oracle exists and fits its caps.
fn oracle_value(metric: Metric, g: &Graph) -> Option<Value> {
    let opt = |v: Option<usize>| v.map_or(Value::not_defined(), int);
    match metric {
        Metric::Lambda => brute_lambda_k(g, 1).ok().map(opt),
        Metric::Lambda2 => brute_lambda_k(g, 2).ok().map(opt),
        Metric::Lambda3 => brute_lambda_k(g, 3).ok().map(opt),
        Metric::SuperLambda => brute_super_lambda_k(g, 1).ok().map(|v| v.map_or(Value::not_defined(), Value::Bool)),
        Metric::SuperLambda2 => brute_super_lambda_k(g, 2).ok().map(|v| v.map_or(Value::not_defined(), Value::Bool)),
        Metric::SuperLambda3 => brute_super_lambda_k(g, 3).ok().map(|v| v.map_or(Value::not_defined(), Value::Bool)),
        Metric::Alpha => brute_alpha(g).ok().map(int),
        Metric::Mp => brute_mp(g, false).ok().map(opt),
        Metric::Mp1 if g.min_degree() >= 2 => brute_mp(g, true).ok().map(opt),
        _ => None,
    }
}

fn allowed_oversize(family: Family, params: Params, metric: Metric, slow: bool) -> bool {
    slow && family == Family::Dcell
        && params == (Params { k: Some(3), n: 2 })
        && matches!(metric, Metric::Lambda | Metric::Lambda2 | Metric::Xi2 | Metric::SuperLambda)
}

fn evaluate_instance(family: Family, params: Params, claims: &[ClaimRecord], opts: &RunOptions) -> Vec<ClaimResult> {
    let order = match family {
        Family::Dcell => params.k.and_then(|k| dcell_order(k, params.n)),
        Family::Star => Some(params.n * params.n.saturating_sub(1)),
        Family::Complete => Some(params.n),
    };
    let wanted = |c: &ClaimRecord| {
        order.is_some_and(|o| o <= opts.max_order) || allowed_oversize(family, params, c.metric, opts.slow)
    };
    let graph = if claims.iter().any(wanted) { instance_graph(family, params).ok() } else { None };
    let mut session = graph.as_ref().map(|g| Session { g, ladder: HashMap::new() });
    claims
        .iter()
        .map(|claim| {
            let start = Instant::now();
            let stated = !claim.expected.is_not_stated();
            let base = ClaimResult {
                claim_id: claim.id.clone(),
                family,
                params,
                metric: claim.metric,
                expected: claim.expected.clone(),
                computed: None,
                status: if stated { Status::SkippedTooLarge } else { Status::SkippedNotStated },
                runtime_ms: 0,
                witness: None,
                oracle: None,
                source: claim.source.clone(),
                note: None,
            };
            let Some(session) = session.as_mut().filter(|_| wanted(claim)) else {
                let note = order.map_or("order overflows".to_string(), |o| {
                    format!("order {o} above the limit of {}", opts.max_order)
                });
                return ClaimResult { note: Some(note), ..base };
            };
            let g = session.g;
            if let Err(reason) = feasibility(claim.metric, Shape::of(g), &claim.expected) {
                if !allowed_oversize(family, params, claim.metric, opts.slow) {
                    return ClaimResult { note: Some(reason), ..base };
                }
            }
            let outcome = session.compute(claim.metric, start + opts.budget);
            let runtime_ms = start.elapsed().as_millis() as u64;
            let (computed, witness) = match outcome {
                Ok(v) => v,
                Err(Failure::TooLarge(reason)) => return ClaimResult { runtime_ms, note: Some(reason), ..base },
                Err(Failure::Error(reason)) => {
                    return ClaimResult { runtime_ms, status: Status::Fail, note: Some(reason), ..base };
                }
            };
            let mut note = None;
            if let (Some(w), Value::Int(v)) = (&witness, &computed) {
                if w.size() != Some(*v as usize) {
                    note = Some("witness size differs from the computed value".to_string());
                }
            }
            if let Some(Err(e)) = witness.as_ref().map(|w| w.validate(g)) {
                note = Some(format!("witness rejected: {e}"));
            }
            let oracle = (g.vertex_count() <= ORACLE_ORDER)
                .then(|| oracle_value(claim.metric, g))
                .flatten()
                .map(|value| OracleCheck { agree: value == computed, value });
            let sound = note.is_none() && oracle.as_ref().is_none_or(|o| o.agree);
            let status = match (stated, sound) {
                (_, false) => Status::Fail,
                (false, true) => Status::SkippedNotStated,
                (true, true) if computed == claim.expected => Status::Pass,
                (true, true) => Status::Fail,
            };
            ClaimResult { computed: Some(computed), status, runtime_ms, witness, oracle, note, ..base }
        })
        .collect()
}

/// All claim records of a plan, in plan order.
pub fn plan_claims(plan: &Plan) -> Vec<ClaimRecord> {
    let mut out: Vec<ClaimRecord> = plan.dcell.iter().flat_map(|&(k, n)| claims_for(k, n)).collect();
    out.extend(plan.complete.iter().flat_map(|&n| claims_for_complete(n)));
    out.extend(plan.star.iter().flat_map(|&n| claims_for_star(n)));
    out
}

/// Measures every claim in the plan, then (unless disabled) cross-checks the
/// fast routines against the oracles on the seeded corpus.
pub fn run_verification(plan: &Plan, opts: &RunOptions) -> VerificationReport {
    let claims = plan_claims(plan);
    let mut groups: Vec<((Family, Params), Vec<ClaimRecord>)> = Vec::new();
    for c in claims {
        match groups.iter_mut().find(|(key, _)| *key == (c.family, c.params)) {
            Some((_, list)) => list.push(c),
            None => groups.push(((c.family, c.params), vec![c])),
        }
    }
    let mut results: Vec<ClaimResult> = groups
        .par_iter()
        .flat_map_iter(|((family, params), list)| evaluate_instance(*family, *params, list, opts))
        .collect();
    results.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    let corpus = (opts.corpus_size > 0).then(|| {
        let mut instances = named_corpus();
        instances.extend(random_corpus(opts.seed, opts.corpus_size));
        let reports = compare_corpus(&instances);
        CorpusSummary {
            seed: opts.seed,
            instances: instances.len(),
            comparisons: reports.len(),
            disagreements: reports.into_iter().filter(|r| !r.agree).collect(),
        }
    });
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: opts.seed,
        claims: results,
        corpus,
    }
}

/// Regenerates each graph and re-checks every embedded witness. Returns one
/// message per problem; empty means the report replays cleanly.
pub fn revalidate(report: &VerificationReport) -> Vec<String> {
    let mut cache: HashMap<(Family, Params), Result<Graph, String>> = HashMap::new();
    let mut issues = Vec::new();
    for c in &report.claims {
        let Some(w) = &c.witness else { continue };
        let g = cache.entry((c.family, c.params)).or_insert_with(|| instance_graph(c.family, c.params));
        match g {
            Ok(g) => {
                if let Err(e) = w.validate(g) {
                    issues.push(format!("{}: {e}", c.claim_id));
                }
                if let (Some(Value::Int(v)), Some(size)) = (&c.computed, w.size()) {
                    if *v as usize != size {
                        issues.push(format!("{}: witness size {size} but computed {v}", c.claim_id));
                    }
                }
            }
            Err(e) => issues.push(format!("{}: cannot rebuild graph: {e}", c.claim_id)),
        }
    }
    issues
}

/// Plain-text table of a report, one claim per line.
pub fn render_table(report: &VerificationReport) -> String {
    let mut out = format!("{:<36} {:>10} {:>12} {:>8}  {}\n", "claim", "expected", "computed", "ms", "status");
    for c in &report.claims {
        let computed = c.computed.as_ref().map_or("-".to_string(), Value::to_string);
        out.push_str(&format!(
            "{:<36} {:>10} {:>12} {:>8}  {}\n",
            c.claim_id,
            c.expected.to_string(),
            computed,
            c.runtime_ms,
            c.status
        ));
    }
    let tally = [Status::Pass, Status::Fail, Status::SkippedTooLarge, Status::SkippedNotStated]
        .map(|s| format!("{s}: {}", report.count(s)))
        .join(", ");
    out.push_str(&format!("{} claims; {tally}\n", report.claims.len()));
    if let Some(c) = &report.corpus {
        out.push_str(&format!(
            "oracle corpus (seed {}): {} instances, {} comparisons, {} disagreements\n",
            c.seed,
            c.instances,
            c.comparisons,
            c.disagreements.len()
        ));
    }
    out
}

/// `v_e` as a claim-style value, for callers that only want the number.
pub fn v_e_value(g: &Graph) -> Value {
    v_e(g).map_or(Value::not_defined(), int)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expected(claims: &[ClaimRecord], metric: Metric) -> Value {
        claims.iter().find(|c| c.metric == metric).unwrap().expected.clone()
    }

    #[test]
    fn catalog_examples() {
        let c = claims_for(2, 2);
        for (m, v) in [
            (Metric::Lambda, Value::Int(3)),
            (Metric::Lambda2, Value::Int(4)),
            (Metric::Lambda3, Value::Int(5)),
            (Metric::Mp, Value::Int(3)),
            (Metric::Mp1, Value::Int(4)),
            (Metric::SuperLambda, Value::Bool(true)),
            (Metric::SuperLambda2, Value::Bool(true)),
            (Metric::SuperLambda3, Value::Bool(true)),
            (Metric::SuperMatched, Value::Bool(true)),
            (Metric::Alpha, Value::Int(19)),
        ] {
            assert_eq!(expected(&c, m), v, "{m}");
        }
        let c = claims_for(3, 4);
        assert_eq!(expected(&c, Metric::Lambda3), Value::Int(12));
        assert_eq!(expected(&c, Metric::SuperLambda3), Value::Bool(false));
        let c = claims_for(1, 4);
        assert_eq!(expected(&c, Metric::Mp), Value::Int(4));
        assert_eq!(expected(&c, Metric::SuperMatched), Value::Bool(true));
        assert_eq!(expected(&c, Metric::IsomorphicToStar), Value::Bool(true));
        for m in [Metric::Lambda2, Metric::Lambda3, Metric::Mp1] {
            assert!(expected(&c, m).is_not_stated(), "{m}");
        }
        assert!(claims_for(0, 3).iter().all(|c| c.expected.is_not_stated()));
        assert_eq!(claims_for(2, 3), claims_for(2, 3));
    }

    #[test]
    fn value_json_shapes() {
        assert_eq!(serde_json::to_string(&Value::Int(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Value::Bool(true)).unwrap(), "true");
        assert_eq!(serde_json::to_string(&Value::not_stated()).unwrap(), "\"not_stated\"");
        assert_eq!(serde_json::to_string(&Status::SkippedTooLarge).unwrap(), "\"SKIPPED-too-large\"");
        assert_eq!("super-lambda2".parse::<Metric>(), Ok(Metric::SuperLambda2));
    }

    #[test]
    fn default_plan_covers_small_dcells() {
        let plan = Plan::default_for(DEFAULT_MAX_ORDER);
        assert!(plan.dcell.contains(&(1, 21)) && plan.dcell.contains(&(2, 4)) && plan.dcell.contains(&(3, 2)));
        assert!(!plan.dcell.contains(&(1, 22)) && !plan.dcell.contains(&(2, 5)));
    }

    #[test]
    fn small_plan_runs() {
        let opts = RunOptions { corpus_size: 0, ..RunOptions::default() };
        let report = run_verification(&Plan::dcell_only(&[(1, 2), (3, 3)]), &opts);
        let mp = report.claims.iter().find(|c| c.claim_id == "dcell-k1-n2-mp").unwrap();
        assert_eq!((mp.status, mp.computed.clone()), (Status::SkippedNotStated, Some(Value::Int(2))));
        let l3 = report.claims.iter().find(|c| c.claim_id == "dcell-k3-n3-lambda3").unwrap();
        assert_eq!(l3.status, Status::SkippedTooLarge);
        assert!(report.passed(), "{}", render_table(&report));
        assert!(revalidate(&report).is_empty());
    }
}
