//! Immutable simple undirected graphs and the line-oriented text format.
//!
//! Vertices are dense `0..n` indices. Edges are stored once, as `(u, v)` with
//! `u < v`, sorted lexicographically; an edge's id is its position in that
//! order. Optional per-edge level tags and per-vertex labels ride along as
//! metadata.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    levels: Option<Vec<u32>>,
    labels: BTreeMap<usize, String>,
    // (neighbor, edge id), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from an unordered edge list. Endpoint order inside a
    /// pair does not matter.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::build(n, edges.into_iter().map(|(u, v)| (u, v, None)))
    }

    /// Builds a graph where every edge carries a level tag.
    pub fn with_levels(n: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self, GraphError> {
        Self::build(n, edges.into_iter().map(|(u, v, l)| (u, v, Some(l))))
    }

    fn build(n: usize, edges: impl Iterator<Item = (usize, usize, Option<u32>)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        let mut tagged = false;
        for (u, v, level) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            tagged |= level.is_some();
            list.push((u.min(v), u.max(v), level.unwrap_or(0)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let edges: Vec<(usize, usize)> = list.iter().map(|&(u, v, _)| (u, v)).collect();
        let levels = tagged.then(|| list.iter().map(|&(_, _, l)| l).collect());
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph { n, edges, levels, labels: BTreeMap::new(), adj })
    }

    /// Attaches vertex labels, replacing any existing ones.
    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self, GraphError> {
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.n) {
            return Err(GraphError::OutOfRange { vertex: v, n: self.n });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn has_levels(&self) -> bool {
        self.levels.is_some()
    }

    /// Level tag of an edge; 0 when the graph carries no levels.
    pub fn level(&self, id: usize) -> u32 {
        self.levels.as_ref().map_or(0, |l| l[id])
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// `(neighbor, edge id)` pairs, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let row = self.adj.get(u)?;
        row.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| row[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edge ids with exactly one endpoint in `side` (given as a membership mask).
    pub fn boundary(&self, side: &[bool]) -> Vec<usize> {
        self.edges.iter().enumerate().filter(|(_, &(u, v))| side[u] != side[v]).map(|(id, _)| id).collect()
    }

    pub fn boundary_of(&self, set: &[usize]) -> Vec<usize> {
        let mut side = vec![false; self.n];
        for &v in set {
            side[v] = true;
        }
        self.boundary(&side)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Components of the whole graph; see [`Graph::components_without`].
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    /// Components of `G - F`, where `F` is given as a list of edge ids.
    ///
    /// Ordered by decreasing size, then by smallest vertex. Each component is
    /// sorted.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut gone = vec![false; self.edges.len()];
        for &e in removed {
            gone[e] = true;
        }
        self.components_masked(&gone)
    }

    pub fn components_masked(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            queue.push_back(s);
            let mut members = vec![s];
            while let Some(x) = queue.pop_front() {
                for &(y, e) in &self.adj[x] {
                    if !removed.get(e).copied().unwrap_or(false) && comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        out
    }

    /// Whether `set` induces a connected subgraph.
    pub fn induces_connected(&self, set: &[usize]) -> bool {
        let Some(&first) = set.first() else { return false };
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        seen[first] = true;
        let mut stack = vec![first];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adj[x] {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == set.len()
    }

    pub fn stats(&self) -> StatsRecord {
        basic_stats(self)
    }
}

/// Degree and triangle summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StatsRecord {
    pub min_degree: usize,
    pub max_degree: usize,
    pub is_regular: bool,
    pub regular_degree: Option<usize>,
    pub triangle_free: bool,
}

pub fn basic_stats(g: &Graph) -> StatsRecord {
    let min_degree = g.min_degree();
    let max_degree = (0..g.n).map(|v| g.degree(v)).max().unwrap_or(0);
    let is_regular = min_degree == max_degree;
    let triangle_free = !g.edges.iter().any(|&(u, v)| {
        // sorted neighbor lists: merge to find a common neighbor
        let (a, b) = (&g.adj[u], &g.adj[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    });
    StatsRecord { min_degree, max_degree, is_regular, regular_degree: is_regular.then_some(min_degree), triangle_free }
}

/// Number of common neighbors of `u` and `v`.
pub fn common_neighbors(g: &Graph, u: usize, v: usize) -> usize {
    g.neighbors(u).iter().filter(|&&(w, _)| g.has_edge(v, w)).count()
}

/// Serializes a graph into the text format.
///
/// ```text
/// p <num_vertices> <num_edges>
/// v <index> <label>        (one per labeled vertex)
/// e <u> <v> [<level>]      (u < v; level omitted for untagged graphs)
/// ```
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.n, g.edges.len());
    for (v, label) in &g.labels {
        let _ = writeln!(out, "v {v} {label}");
    }
    for (id, &(u, v)) in g.edges.iter().enumerate() {
        match &g.levels {
            Some(levels) => {
                let _ = writeln!(out, "e {u} {v} {}", levels[id]);
            }
            None => {
                let _ = writeln!(out, "e {u} {v}");
            }
        }
    }
    out
}

/// Parses the text format. `#` starts a comment; blank lines are ignored.
///
/// A graph is level-tagged iff at least one `e` line carries a level; the
/// remaining edges then default to level 0.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let err = |line: usize, message: String| GraphError::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, Option<u32>)> = Vec::new();
    let mut labels = BTreeMap::new();
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let num = |s: Option<&str>, what: &str| -> Result<usize, GraphError> {
            s.ok_or_else(|| err(line_no, format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| err(line_no, format!("bad {what}: {e}")))
        };
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(err(line_no, "duplicate header".into()));
                }
                let n = num(fields.next(), "vertex count")?;
                let m = num(fields.next(), "edge count")?;
                if fields.next().is_some() {
                    return Err(err(line_no, "trailing fields in header".into()));
                }
                header = Some((n, m));
            }
            "v" | "e" => {
                let Some((n, _)) = header else {
                    return Err(err(line_no, "malformed header: expected 'p <n> <m>' first".into()));
                };
                if tag == "v" {
                    let v = num(fields.next(), "vertex index")?;
                    if v >= n {
                        return Err(err(line_no, format!("vertex {v} out of range (n = {n})")));
                    }
                    let rest: Vec<&str> = fields.collect();
                    if rest.is_empty() {
                        return Err(err(line_no, "missing label".into()));
                    }
                    labels.insert(v, rest.join(" "));
                } else {
                    let u = num(fields.next(), "endpoint")?;
                    let v = num(fields.next(), "endpoint")?;
                    let level = match fields.next() {
                        Some(s) => Some(s.parse::<u32>().map_err(|e| err(line_no, format!("bad level: {e}")))?),
                        None => None,
                    };
                    if fields.next().is_some() {
                        return Err(err(line_no, "trailing fields in edge line".into()));
                    }
                    for x in [u, v] {
                        if x >= n {
                            return Err(err(line_no, format!("vertex {x} out of range (n = {n})")));
                        }
                    }
                    if u == v {
                        return Err(err(line_no, format!("self-loop at vertex {u}")));
                    }
                    if u > v {
                        return Err(err(line_no, format!("edge endpoints must satisfy u < v, got {u} {v}")));
                    }
                    if !seen.insert((u, v)) {
                        return Err(err(line_no, format!("duplicate edge {u}-{v}")));
                    }
                    edges.push((u, v, level));
                }
            }
            other => return Err(err(line_no, format!("unknown line type '{other}'"))),
        }
    }

    let Some((n, m)) = header else {
        return Err(err(1, "malformed header: missing 'p <n> <m>' line".into()));
    };
    if edges.len() != m {
        return Err(err(
            text.lines().count().max(1),
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    let tagged = edges.iter().any(|e| e.2.is_some());
    let g = if tagged {
        Graph::with_levels(n, edges.into_iter().map(|(u, v, l)| (u, v, l.unwrap_or(0))))?
    } else {
        Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))?
    };
    g.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = parse_graph("p 3 3\ne 0 1 0\ne 1 2 0\ne 0 2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(g.has_levels());
    }

    #[test]
    fn self_loop_is_rejected_with_line() {
        let e = parse_graph("p 2 1\ne 0 0 0\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 2, ref message } if message.contains("self-loop")));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("e 0 1\n", 1, "header"),
            ("p 2 1\ne 0 5\n", 2, "out of range"),
            ("p 3 2\ne 0 1\ne 0 1\n", 3, "duplicate"),
            ("p 3 2\n# c\ne 0 1\n", 3, "declares 2 edges"),
            ("p x 1\n", 1, "vertex count"),
            ("p 3 1\ne 2 1\n", 2, "u < v"),
        ];
        for (text, line, needle) in cases {
            match parse_graph(text) {
                Err(GraphError::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn writes_header_and_edges() {
        let text = write_graph(&k3());
        assert!(text.starts_with("p 3 3\n"));
        assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 3);
        assert_eq!(write_graph(&Graph::new(0, []).unwrap()), "p 0 0\n");
    }

    #[test]
    fn untagged_graphs_round_trip_without_levels() {
        let g = k3();
        let back = parse_graph(&write_graph(&g)).unwrap();
        assert!(!back.has_levels());
        assert_eq!(back, g);
    }

    #[test]
    fn labels_round_trip() {
        let mut labels = BTreeMap::new();
        labels.insert(1, "(0, 1)".to_string());
        let g = k3().with_labels(labels).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::new(5, [(3, 4), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn stats_of_triangle() {
        let s = basic_stats(&k3());
        assert_eq!(s.regular_degree, Some(2));
        assert!(!s.triangle_free);
    }
}
