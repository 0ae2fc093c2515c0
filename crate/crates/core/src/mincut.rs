//! Unit-capacity max-flow / min-cut between vertex sets, and global
//! edge-connectivity.
//!
//! Every undirected edge becomes a pair of opposite arcs of capacity 1 that
//! act as each other's residual. The source set is tied to a super-source
//! and the sink set to a super-sink with unbounded arcs, which is equivalent
//! to contracting each set into a single vertex.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinCutError {
    #[error("terminal set is empty")]
    EmptySet,
    #[error("terminal sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("edge-connectivity needs at least 2 vertices")]
    TooSmall,
}

/// An edge cut `[X, X̄]` together with the component orders of `G - cut`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    /// Sorted `(u, v)` pairs with `u < v`.
    pub cut_edges: Vec<(usize, usize)>,
    /// The side `X`, sorted.
    pub side: Vec<usize>,
    /// Component orders of `G - cut_edges`, largest first.
    pub component_sizes: Vec<usize>,
}

impl CutWitness {
    /// Witness for the cut `[X, X̄]` of an explicit side.
    pub fn from_side(g: &Graph, side: &[bool]) -> Self {
        let ids = g.boundary(side);
        let component_sizes = g.components_without(&ids).iter().map(Vec::len).collect();
        CutWitness {
            cut_edges: ids.iter().map(|&e| g.edge(e)).collect(),
            side: (0..g.vertex_count()).filter(|&v| side[v]).collect(),
            component_sizes,
        }
    }

    pub fn value(&self) -> usize {
        self.cut_edges.len()
    }

    pub fn edge_ids(&self, g: &Graph) -> Option<Vec<usize>> {
        self.cut_edges.iter().map(|&(u, v)| g.edge_id(u, v)).collect()
    }

    /// Re-derives the witness from `g` and checks every stored field.
    pub fn is_consistent(&self, g: &Graph) -> bool {
        let mut side = vec![false; g.vertex_count()];
        for &v in &self.side {
            if v >= side.len() {
                return false;
            }
            side[v] = true;
        }
        *self == CutWitness::from_side(g, &side)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutOutcome {
    Cut {
        value: usize,
        witness: CutWitness,
    },
    /// The flow reached the caller's upper bound; the true value is at least that bound.
    Pruned,
}

impl CutOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            CutOutcome::Cut { value, .. } => Some(*value),
            CutOutcome::Pruned => None,
        }
    }
}

const UNBOUNDED: u32 = u32::MAX / 4;

/// Reusable Dinic state for one graph. Cheap to call repeatedly; create one
/// per worker thread.
pub struct CutEngine<'g> {
    g: &'g Graph,
    to: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
    queue: Vec<usize>,
    tied: Vec<usize>,
    membership: Vec<u8>,
}

impl<'g> CutEngine<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut to = Vec::with_capacity(2 * m);
        let mut adj = vec![Vec::new(); n + 2];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            to.push(v);
            to.push(u);
            adj[u].push(2 * e);
            adj[v].push(2 * e + 1);
        }
        CutEngine {
            g,
            cap: vec![1; 2 * m],
            to,
            adj,
            level: vec![-1; n + 2],
            iter: vec![0; n + 2],
            queue: Vec::with_capacity(n + 2),
            tied: Vec::new(),
            membership: vec![0; n],
        }
    }

    fn source(&self) -> usize {
        self.g.vertex_count()
    }

    fn sink(&self) -> usize {
        self.g.vertex_count() + 1
    }

    fn prepare(&mut self, a: &[usize], b: &[usize]) -> Result<(), MinCutError> {
        if a.is_empty() || b.is_empty() {
            return Err(MinCutError::EmptySet);
        }
        let n = self.g.vertex_count();
        self.membership.iter_mut().for_each(|x| *x = 0);
        for (mark, set) in [(1u8, a), (2u8, b)] {
            for &v in set {
                if v >= n {
                    return Err(MinCutError::OutOfRange(v));
                }
                if self.membership[v] != 0 && self.membership[v] != mark {
                    return Err(MinCutError::Overlap(v));
                }
                self.membership[v] = mark;
            }
        }
        let m2 = 2 * self.g.edge_count();
        self.cap.truncate(m2);
        self.to.truncate(m2);
        self.cap.iter_mut().for_each(|c| *c = 1);
        let (s, t) = (self.source(), self.sink());
        self.adj[s].clear();
        self.adj[t].clear();
        self.tied.clear();
        for v in 0..n {
            let (from, into) = match self.membership[v] {
                1 => (s, v),
                2 => (v, t),
                _ => continue,
            };
            let arc = self.to.len();
            self.to.push(into);
            self.cap.push(UNBOUNDED);
            self.to.push(from);
            self.cap.push(0);
            if from == s {
                self.adj[s].push(arc);
                self.adj[v].push(arc + 1);
            } else {
                self.adj[v].push(arc);
                self.adj[t].push(arc + 1);
            }
            self.tied.push(v);
        }
        Ok(())
    }

    fn release(&mut self) {
        let m2 = 2 * self.g.edge_count();
        for &v in &self.tied {
            while self.adj[v].last().is_some_and(|&a| a >= m2) {
                self.adj[v].pop();
            }
        }
        self.tied.clear();
    }

    fn bfs(&mut self) -> bool {
        let (s, t) = (self.source(), self.sink());
        self.level.iter_mut().for_each(|l| *l = -1);
        self.queue.clear();
        self.level[s] = 0;
        self.queue.push(s);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &a in &self.adj[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    self.queue.push(w);
                }
            }
        }
        self.level[t] >= 0
    }

    /// Pushes one unit along a shortest residual path, if any.
    fn augment(&mut self, path: &mut Vec<usize>) -> bool {
        let (s, t) = (self.source(), self.sink());
        path.clear();
        let mut v = s;
        loop {
            if v == t {
                for &a in path.iter() {
                    self.cap[a] -= 1;
                    self.cap[a ^ 1] += 1;
                }
                return true;
            }
            let mut advanced = false;
            while self.iter[v] < self.adj[v].len() {
                let a = self.adj[v][self.iter[v]];
                let w = self.to[a];
                if self.cap[a] > 0 && self.level[w] == self.level[v] + 1 {
                    path.push(a);
                    v = w;
                    advanced = true;
                    break;
                }
                self.iter[v] += 1;
            }
            if !advanced {
                if v == s {
                    return false;
                }
                self.level[v] = -1;
                let a = path.pop().expect("non-source node has an entry arc");
                v = self.to[a ^ 1];
                self.iter[v] += 1;
            }
        }
    }

    /// Runs max-flow; returns the flow value, stopping early at `bound`.
    fn run(&mut self, bound: Option<usize>) -> usize {
        let mut flow = 0usize;
        let mut path = Vec::new();
        while self.bfs() {
            self.iter.iter_mut().for_each(|i| *i = 0);
            while self.augment(&mut path) {
                flow += 1;
                if bound.is_some_and(|b| flow >= b) {
                    return flow;
                }
            }
        }
        flow
    }

    fn source_side(&self) -> Vec<bool> {
        let n = self.g.vertex_count();
        let mut seen = vec![false; n + 2];
        let s = self.source();
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.truncate(n);
        seen
    }

    /// Minimum number of edges separating every vertex of `a` from every
    /// vertex of `b`. With `upper_bound`, returns [`CutOutcome::Pruned`] as
    /// soon as the flow reaches it.
    pub fn min_cut(&mut self, a: &[usize], b: &[usize], upper_bound: Option<usize>) -> Result<CutOutcome, MinCutError> {
        self.prepare(a, b)?;
        let flow = self.run(upper_bound);
        if upper_bound.is_some_and(|ub| flow >= ub) {
            self.release();
            return Ok(CutOutcome::Pruned);
        }
        let side = self.source_side();
        self.release();
        let witness = CutWitness::from_side(self.g, &side);
        debug_assert_eq!(witness.value(), flow);
        Ok(CutOutcome::Cut { value: flow, witness })
    }

    /// Maximum family of pairwise edge-disjoint `a`-`b` paths, read off the
    /// flow. Each path is a vertex sequence ending at the first vertex of `b`
    /// it reaches.
    pub fn disjoint_paths(&mut self, a: &[usize], b: &[usize]) -> Result<Vec<Vec<usize>>, MinCutError> {
        self.prepare(a, b)?;
        self.run(None);
        let m2 = 2 * self.g.edge_count();
        let mut supply: Vec<(usize, u32)> = Vec::new();
        for &arc in &self.adj[self.source()] {
            if arc >= m2 {
                supply.push((self.to[arc], UNBOUNDED - self.cap[arc]));
            }
        }
        self.release();
        let g = self.g;
        let n = g.vertex_count();
        // net unit flow per edge: +1 means u -> v, -1 means v -> u
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            match 1 - i64::from(self.cap[2 * e]) {
                1 => out[u].push(v),
                -1 => out[v].push(u),
                _ => {}
            }
        }
        let mut paths = Vec::new();
        for (start, units) in supply {
            for _ in 0..units {
                let mut path = vec![start];
                let mut v = start;
                while self.membership[v] != 2 {
                    let w = out[v].pop().expect("flow is conserved");
                    // drop a flow cycle when the walk revisits a vertex
                    if let Some(pos) = path.iter().position(|&x| x == w) {
                        path.truncate(pos + 1);
                    } else {
                        path.push(w);
                    }
                    v = w;
                }
                paths.push(path);
            }
        }
        Ok(paths)
    }
}

/// One-shot form of [`CutEngine::min_cut`].
pub fn min_cut_between(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    upper_bound: Option<usize>,
) -> Result<CutOutcome, MinCutError> {
    CutEngine::new(g).min_cut(a, b, upper_bound)
}

/// Global edge-connectivity `λ(G)` with a minimum cut witness.
///
/// Sweeps `min_cut({0}, {t})` over all `t`. Among minimum cuts the witness
/// with the lexicographically smallest edge list wins. A disconnected graph
/// yields 0 with an empty cut.
pub fn edge_connectivity(g: &Graph) -> Result<(usize, CutWitness), MinCutError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(MinCutError::TooSmall);
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut side = vec![false; n];
        let zero = comps.iter().find(|c| c.contains(&0)).expect("0 is somewhere");
        for &v in zero {
            side[v] = true;
        }
        return Ok((0, CutWitness::from_side(g, &side)));
    }
    // λ <= δ, so anything reaching δ + 1 cannot be the minimum
    let bound = g.min_degree() + 1;
    let best = (1..n)
        .into_par_iter()
        .map_init(
            || CutEngine::new(g),
            |engine, t| match engine.min_cut(&[0], &[t], Some(bound)).expect("valid terminals") {
                CutOutcome::Cut { value, witness } => Some((value, witness)),
                CutOutcome::Pruned => None,
            },
        )
        .flatten()
        .min_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cut_edges.cmp(&y.1.cut_edges)))
        .expect("some vertex attains the minimum degree bound");
    Ok(best)
}
