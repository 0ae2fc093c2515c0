//! Browser front end. Every export takes plain numbers and returns a JSON
//! string; the page draws the graph as SVG and highlights witnesses.

use std::f64::consts::TAU;

use netrobust::budget::Budget;
use netrobust::matching::{mp1_number_with, mp_number_with, MatchingError};
use netrobust::topology::{gen_dcell_capped, gen_star};
use netrobust::{edge_connectivity, lambda_k, Graph, LadderValue};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Larger graphs are unreadable as a drawing anyway.
pub const MAX_ORDER: usize = 200;
/// Matching tests allowed per preclusion query, about a second of work.
pub const MATCHING_WORK: u64 = 2_000_000;

#[derive(Debug, Serialize)]
pub struct Node {
    pub id: usize,
    pub label: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub level: u32,
}

#[derive(Debug, Serialize)]
pub struct Layout {
    pub name: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub max_level: u32,
}

#[derive(Debug, Serialize)]
pub struct Rung {
    pub k: usize,
    pub value: Option<usize>,
    pub cut: Vec<(usize, usize)>,
    pub side: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Preclusion {
    pub conditional: bool,
    pub number: Option<usize>,
    pub edges: Vec<(usize, usize)>,
    pub kind: Option<String>,
    pub note: Option<String>,
}

/// `dcell` takes `(k, n)`; `star` takes `k = k'` and `n = n'`.
pub fn instance(family: &str, k: usize, n: usize) -> Result<(String, Graph), String> {
    let (name, g) = match family {
        "dcell" => (format!("D_{{{k},{n}}}"), gen_dcell_capped(k, n, MAX_ORDER)),
        "star" => (format!("S_{{{n},{k}}}"), gen_star(n, k)),
        other => return Err(format!("unknown family {other:?}")),
    };
    let g = g.map_err(|e| e.to_string())?;
    if g.vertex_count() > MAX_ORDER {
        return Err(format!("{name} has {} vertices; the demo draws at most {MAX_ORDER}", g.vertex_count()));
    }
    Ok((name, g))
}

pub fn layout_of(family: &str, k: usize, n: usize) -> Result<Layout, String> {
    let (name, g) = instance(family, k, n)?;
    let count = g.vertex_count();
    // vertex ids follow the recursive construction, so sub-cells land on
    // contiguous arcs of the circle
    let nodes = (0..count)
        .map(|id| {
            let a = TAU * id as f64 / count as f64;
            Node {
                id,
                label: g.label(id).unwrap_or_default().to_string(),
                x: 0.5 + 0.45 * a.cos(),
                y: 0.5 + 0.45 * a.sin(),
            }
        })
        .collect();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| Edge { u, v, level: if g.has_levels() { g.level(e) } else { 0 } })
        .collect();
    let max_level = edges.iter().map(|e| e.level).max().unwrap_or(0);
    Ok(Layout { name, nodes, edges, max_level })
}

/// `λ_1` up to `λ_top`, stopping at the first undefined rung.
pub fn ladder_of(family: &str, k: usize, n: usize, top: usize) -> Result<Vec<Rung>, String> {
    let (_, g) = instance(family, k, n)?;
    let mut out = Vec::new();
    for r in 1..=top {
        if r == 1 {
            let (value, w) = edge_connectivity(&g).map_err(|e| e.to_string())?;
            out.push(Rung { k: 1, value: Some(value), cut: w.cut_edges, side: w.side });
            continue;
        }
        let res = lambda_k(&g, r).map_err(|e| e.to_string())?;
        match (res.value, res.witness) {
            (LadderValue::Defined(v), Some(w)) => {
                out.push(Rung { k: r, value: Some(v), cut: w.cut_edges, side: w.side })
            }
            _ => {
                out.push(Rung { k: r, value: None, cut: Vec::new(), side: Vec::new() });
                break;
            }
        }
    }
    Ok(out)
}

pub fn preclusion_of(family: &str, k: usize, n: usize, conditional: bool) -> Result<Preclusion, String> {
    let (_, g) = instance(family, k, n)?;
    let budget = Budget::with_work(MATCHING_WORK);
    let r = if conditional { mp1_number_with(&g, false, &budget) } else { mp_number_with(&g, false, &budget) };
    let empty =
        |note: String| Preclusion { conditional, number: None, edges: Vec::new(), kind: None, note: Some(note) };
    match r {
        Ok(r) => {
            let w = r.witnesses.into_iter().next();
            Ok(Preclusion {
                conditional,
                number: Some(r.number),
                kind: w.as_ref().map(|w| format!("{:?}", w.kind)),
                edges: w.map(|w| w.edges).unwrap_or_default(),
                note: None,
            })
        }
        Err(MatchingError::NoPreclusionSet) => Ok(empty("no conditional preclusion set exists".into())),
        Err(MatchingError::CapExceeded { .. }) => Ok(empty("search too large for the browser".into())),
        Err(e) => Err(e.to_string()),
    }
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("plain data serializes")).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn layout(family: &str, k: usize, n: usize) -> Result<String, JsError> {
    to_js(layout_of(family, k, n))
}

#[wasm_bindgen]
pub fn ladder(family: &str, k: usize, n: usize, top: usize) -> Result<String, JsError> {
    to_js(ladder_of(family, k, n, top))
}

#[wasm_bindgen]
pub fn preclusion(family: &str, k: usize, n: usize, conditional: bool) -> Result<String, JsError> {
    to_js(preclusion_of(family, k, n, conditional))
}
