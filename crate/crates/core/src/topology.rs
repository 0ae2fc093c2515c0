//! DCell `D_{k,n}`, `(n',k')`-star graphs and the small named families.
//!
//! A DCell vertex carries the label `(a_k, ..., a_1, a_0)`. Its index in the
//! generated graph is `uid_k = a_0 + sum_{l=1..k} a_l * t_{l-1,n}`, so labels
//! and indices convert both ways without a lookup table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub const DEFAULT_VERTEX_CAP: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("DCell base n must be at least 2, got {0}")]
    BaseTooSmall(usize),
    #[error("digit a_{position} = {value} out of range (max {max})")]
    DigitOutOfRange { position: usize, value: usize, max: usize },
    #[error("suffix for uid_{level} needs {expected} digits, got {got}")]
    SuffixLength { level: usize, expected: usize, got: usize },
    #[error("graph would have {order} vertices, above the cap of {cap}")]
    CapExceeded { order: String, cap: usize },
    #[error("star graph needs 1 <= k' < n', got n' = {n}, k' = {k}")]
    StarParams { n: usize, k: usize },
    #[error("vertex map is not a bijection: {0}")]
    MapInvalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `t_{k,n}`: the order of `D_{k,n}`, exact.
pub fn size_t(k: usize, n: usize) -> Result<BigUint, TopologyError> {
    if n < 2 {
        return Err(TopologyError::BaseTooSmall(n));
    }
    let mut t = BigUint::from(n);
    for _ in 0..k {
        let next = &t + 1u32;
        t *= next;
    }
    Ok(t)
}

/// `t_{k,n}` when it fits in a `usize`.
pub fn dcell_order(k: usize, n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let mut t = n;
    for _ in 0..k {
        t = t.checked_mul(t.checked_add(1)?)?;
    }
    Some(t)
}

/// `[t_{0,n}, ..., t_{k,n}]`, all of which must fit in a `usize`.
fn t_table(k: usize, n: usize) -> Option<Vec<usize>> {
    let mut t = vec![n];
    for _ in 0..k {
        let last = *t.last()?;
        t.push(last.checked_mul(last.checked_add(1)?)?);
    }
    Some(t)
}

/// Computes `uid_j` of a label suffix `(a_j, ..., a_0)`, most significant first.
pub fn uid_j(suffix: &[usize], j: usize, n: usize) -> Result<usize, TopologyError> {
    if n < 2 {
        return Err(TopologyError::BaseTooSmall(n));
    }
    if suffix.len() != j + 1 {
        return Err(TopologyError::SuffixLength { level: j, expected: j + 1, got: suffix.len() });
    }
    let t =
        t_table(j, n).ok_or_else(|| TopologyError::CapExceeded { order: format!("t_{{{j},{n}}}"), cap: usize::MAX })?;
    let mut uid = 0usize;
    for (pos, &digit) in suffix.iter().rev().enumerate() {
        let (max, weight) = if pos == 0 { (n - 1, 1) } else { (t[pos - 1], t[pos - 1]) };
        if digit > max {
            return Err(TopologyError::DigitOutOfRange { position: pos, value: digit, max });
        }
        uid += digit * weight;
    }
    Ok(uid)
}

/// A DCell vertex name `(a_k, ..., a_0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DCellLabel {
    pub digits: Vec<usize>,
}

impl DCellLabel {
    /// Decodes the label of vertex `index` in `D_{k,n}`.
    pub fn from_index(index: usize, k: usize, n: usize) -> Option<Self> {
        let t = t_table(k, n)?;
        if index >= t[k] {
            return None;
        }
        let mut rem = index;
        let mut digits = Vec::with_capacity(k + 1);
        for j in (1..=k).rev() {
            digits.push(rem / t[j - 1]);
            rem %= t[j - 1];
        }
        digits.push(rem);
        Some(DCellLabel { digits })
    }

    pub fn level(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn uid(&self, n: usize) -> Result<usize, TopologyError> {
        uid_j(&self.digits, self.level(), n)
    }
}

impl fmt::Display for DCellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Builds `D_{k,n}` with the default vertex cap.
pub fn gen_dcell(k: usize, n: usize) -> Result<Graph, TopologyError> {
    gen_dcell_capped(k, n, DEFAULT_VERTEX_CAP)
}

/// Builds `D_{k,n}`. Level `j` edges are laid down block by block: inside
/// every `D_{j,n}` block, copy `a` vertex `uid_{j-1} = b-1` is joined to copy
/// `b` vertex `uid_{j-1} = a` for each `a < b`.
pub fn gen_dcell_capped(k: usize, n: usize, cap: usize) -> Result<Graph, TopologyError> {
    if n < 2 {
        return Err(TopologyError::BaseTooSmall(n));
    }
    let t = match t_table(k, n) {
        Some(t) if t[k] <= cap => t,
        _ => {
            return Err(TopologyError::CapExceeded { order: size_t(k, n)?.to_string(), cap });
        }
    };
    let order = t[k];
    let mut edges = Vec::with_capacity(order * (n + k - 1) / 2);
    for block in (0..order).step_by(n) {
        for x in 0..n {
            for y in x + 1..n {
                edges.push((block + x, block + y, 0));
            }
        }
    }
    for j in 1..=k {
        let sub = t[j - 1];
        for block in (0..order).step_by(t[j]) {
            for a in 0..=sub {
                for b in a + 1..=sub {
                    edges.push((block + a * sub + (b - 1), block + b * sub + a, j as u32));
                }
            }
        }
    }
    let labels: BTreeMap<usize, String> =
        (0..order).map(|v| (v, DCellLabel::from_index(v, k, n).expect("index below order").to_string())).collect();
    Ok(Graph::with_levels(order, edges)?.with_labels(labels)?)
}

/// A vertex of `S_{n',k'}`: a `k'`-permutation of `{1, ..., n'}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarLabel {
    pub symbols: Vec<usize>,
}

impl StarLabel {
    fn render(&self, n_prime: usize) -> String {
        let sep = if n_prime <= 9 { "" } else { "," };
        self.symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
    }
}

fn k_permutations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in 1..=n {
            if !used[s] {
                used[s] = true;
                cur.push(s);
                rec(n, k, cur, used, out);
                cur.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(k), &mut vec![false; n + 1], &mut out);
    out
}

/// Builds the `(n',k')`-star graph, vertices in lexicographic order of their
/// permutation strings.
pub fn gen_star(n_prime: usize, k_prime: usize) -> Result<Graph, TopologyError> {
    if k_prime < 1 || k_prime >= n_prime {
        return Err(TopologyError::StarParams { n: n_prime, k: k_prime });
    }
    let count = (n_prime - k_prime + 1..=n_prime).try_fold(1usize, |acc, x| acc.checked_mul(x));
    match count {
        Some(c) if c <= DEFAULT_VERTEX_CAP => {}
        _ => {
            return Err(TopologyError::CapExceeded {
                order: format!("{n_prime}!/({n_prime}-{k_prime})!"),
                cap: DEFAULT_VERTEX_CAP,
            })
        }
    }
    let perms = k_permutations(n_prime, k_prime);
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        // swap the first symbol with position r
        for r in 1..k_prime {
            let mut q = p.clone();
            q.swap(0, r);
            let j = index[q.as_slice()];
            if i < j {
                edges.push((i, j));
            }
        }
        // replace the first symbol by one not in the string
        for s in 1..=n_prime {
            if p.contains(&s) {
                continue;
            }
            let mut q = p.clone();
            q[0] = s;
            let j = index[q.as_slice()];
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let labels = perms.iter().enumerate().map(|(i, p)| (i, StarLabel { symbols: p.clone() }.render(n_prime))).collect();
    Ok(Graph::new(perms.len(), edges)?.with_labels(labels)?)
}

/// Index of a permutation string in [`gen_star`]'s vertex order.
pub fn star_index(symbols: &[usize], n_prime: usize) -> Option<usize> {
    let k = symbols.len();
    let mut used = vec![false; n_prime + 1];
    let mut index = 0usize;
    for (pos, &s) in symbols.iter().enumerate() {
        if s == 0 || s > n_prime || used[s] {
            return None;
        }
        let smaller_free = (1..s).filter(|&x| !used[x]).count();
        // permutations of the remaining positions
        let tail: usize = (n_prime - k + 1..n_prime - pos).product();
        index += smaller_free * tail;
        used[s] = true;
    }
    Some(index)
}

/// A bijection between the vertex sets of two graphs of equal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub forward: Vec<usize>,
}

impl VertexMap {
    pub fn apply(&self, v: usize) -> usize {
        self.forward[v]
    }

    pub fn is_bijection(&self) -> bool {
        let mut hit = vec![false; self.forward.len()];
        for &x in &self.forward {
            if x >= hit.len() || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        true
    }
}

/// The map from `D_{1,n}` to `S_{n+1,2}`: vertex `(a_1, a_0)` goes to the
/// string `b_1 b_2` with `b_2 = a_1 + 1` and `b_1` the `(a_0 + 1)`-th smallest
/// element of `{1, ..., n+1} \ {b_2}`.
pub fn dcell_star_map(n: usize) -> Result<VertexMap, TopologyError> {
    if n < 2 {
        return Err(TopologyError::BaseTooSmall(n));
    }
    let order = n * (n + 1);
    let mut forward = Vec::with_capacity(order);
    for v in 0..order {
        let label = DCellLabel::from_index(v, 1, n).expect("index below order");
        let (copy, pos) = (label.digits[0], label.digits[1]);
        let b2 = copy + 1;
        let b1 = (1..=n + 1).filter(|&s| s != b2).nth(pos).expect("pos < n");
        forward.push(star_index(&[b1, b2], n + 1).expect("valid 2-permutation"));
    }
    Ok(VertexMap { forward })
}

/// True iff `uv in E(g)  <=>  m(u)m(v) in E(h)` for every vertex pair.
pub fn check_adjacency_preserving(g: &Graph, h: &Graph, m: &VertexMap) -> Result<bool, TopologyError> {
    if g.vertex_count() != h.vertex_count() {
        return Err(TopologyError::MapInvalid(format!("orders differ: {} vs {}", g.vertex_count(), h.vertex_count())));
    }
    if m.forward.len() != g.vertex_count() || !m.is_bijection() {
        return Err(TopologyError::MapInvalid("map is not total and injective".into()));
    }
    if g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    // with a bijection and equal edge counts, mapping every edge onto an edge
    // is the same as preserving adjacency in both directions
    Ok(g.edges().iter().all(|&(u, v)| h.has_edge(m.apply(u), m.apply(v))))
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 0)));
    Graph::with_levels(n, edges).expect("complete graph is simple")
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

pub fn path_graph(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star_k1(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::basic_stats;

    #[test]
    fn sizes() {
        assert_eq!(size_t(1, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(size_t(2, 2).unwrap(), BigUint::from(42u32));
        assert_eq!(size_t(2, 3).unwrap(), BigUint::from(156u32));
        assert_eq!(size_t(3, 3).unwrap(), BigUint::from(24_492u32));
        assert_eq!(size_t(2, 1), Err(TopologyError::BaseTooSmall(1)));
        // far past u64
        assert_eq!(size_t(7, 2).unwrap().to_string(), "12864938683278671740537145998360961546653259485195806");
        assert_eq!(dcell_order(7, 2), None);
    }

    #[test]
    fn uid_examples() {
        assert_eq!(uid_j(&[1, 1], 1, 2).unwrap(), 3);
        assert_eq!(uid_j(&[0, 0, 0, 0], 3, 3).unwrap(), 0);
        assert_eq!(uid_j(&[2, 1, 0], 2, 2).unwrap(), 14);
        assert!(matches!(uid_j(&[0, 2], 1, 2), Err(TopologyError::DigitOutOfRange { .. })));
        assert!(matches!(uid_j(&[3, 0], 1, 2), Err(TopologyError::DigitOutOfRange { .. })));
    }

    #[test]
    fn labels_decode_to_their_uid() {
        for (k, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let order = dcell_order(k, n).unwrap();
            for v in 0..order {
                let label = DCellLabel::from_index(v, k, n).unwrap();
                assert_eq!(label.uid(n).unwrap(), v);
            }
        }
    }

    #[test]
    fn d12_is_a_six_cycle_with_alternating_levels() {
        let g = gen_dcell(1, 2).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(basic_stats(&g).regular_degree, Some(2));
        assert!(g.is_connected());
        // (0,1) = index 1, (2,0) = index 4
        let e = g.edge_id(1, 4).unwrap();
        assert_eq!(g.level(e), 1);
        for v in 0..6 {
            let mut levels: Vec<u32> = g.neighbors(v).iter().map(|&(_, e)| g.level(e)).collect();
            levels.sort();
            assert_eq!(levels, vec![0, 1]);
        }
    }

    #[test]
    fn d0_is_complete() {
        let g = gen_dcell(0, 4).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!((0..g.edge_count()).all(|e| g.level(e) == 0));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(gen_dcell(3, 3).unwrap().vertex_count(), 24_492);
        assert!(matches!(gen_dcell_capped(2, 3, 100), Err(TopologyError::CapExceeded { .. })));
        assert!(matches!(gen_dcell(4, 2), Err(TopologyError::CapExceeded { .. })));
    }

    #[test]
    fn star_graphs() {
        let k3 = gen_star(3, 1).unwrap();
        assert_eq!(k3.edge_count(), 3);
        let c6 = gen_star(3, 2).unwrap();
        assert_eq!(c6.vertex_count(), 6);
        assert_eq!(basic_stats(&c6).regular_degree, Some(2));
        assert!(c6.is_connected());
        let s42 = gen_star(4, 2).unwrap();
        assert_eq!(s42.vertex_count(), 12);
        assert_eq!(basic_stats(&s42).regular_degree, Some(3));
        assert!(gen_star(3, 3).is_err());
        assert_eq!(c6.label(0), Some("12"));
    }

    #[test]
    fn star_index_matches_generation_order() {
        let perms = k_permutations(5, 3);
        for (i, p) in perms.iter().enumerate() {
            assert_eq!(star_index(p, 5), Some(i));
        }
    }

    #[test]
    fn map_examples() {
        let m = dcell_star_map(2).unwrap();
        let s = gen_star(3, 2).unwrap();
        assert_eq!(s.label(m.apply(0)), Some("21"));
        // (1,1) is index 1*2 + 1
        assert_eq!(s.label(m.apply(3)), Some("32"));
        let m3 = dcell_star_map(3).unwrap();
        assert_eq!(gen_star(4, 2).unwrap().label(m3.apply(0)), Some("21"));
    }

    #[test]
    fn scrambled_map_is_rejected() {
        let g = gen_dcell(1, 2).unwrap();
        let h = gen_star(3, 2).unwrap();
        let mut m = dcell_star_map(2).unwrap();
        m.forward.swap(0, 1);
        assert!(!check_adjacency_preserving(&g, &h, &m).unwrap());
        let bad = VertexMap { forward: vec![0; 6] };
        assert!(check_adjacency_preserving(&g, &h, &bad).is_err());
    }
}
