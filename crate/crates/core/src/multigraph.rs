//! Labeled directed multigraphs describing fixed-point data.
//!
//! An edge `p -> q` labeled `w` accounts for the weight `w` at `p` and the
//! weight `-w` at `q`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consistency::{check_hattori, names, FilterError, FilterReport};
use crate::fpdata::{DataError, FixedPoint, FixedPointData, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub w: Weight,
}

impl Edge {
    pub fn new(from: impl Into<String>, to: impl Into<String>, w: Weight) -> Self {
        Self {
            from: from.into(),
            to: to.into(),
            w,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [{}]", self.from, self.to, self.w)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0} has an endpoint that is not a vertex")]
    UnknownVertex(Edge),
    #[error("edge {0} has a non-positive label")]
    NonPositiveLabel(Edge),
    #[error("vertex {0:?} has degree {1}, expected {2}")]
    UnevenDegree(String, usize, usize),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Vertices are kept sorted and edges are kept as a sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphDocument")]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl TryFrom<GraphDocument> for Multigraph {
    type Error = GraphError;

    fn try_from(doc: GraphDocument) -> Result<Self, GraphError> {
        Multigraph::new(doc.vertices, doc.edges)
    }
}

impl Multigraph {
    pub fn new<I, S>(vertices: I, mut edges: Vec<Edge>) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertices: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        for e in &edges {
            if e.w < 1 {
                return Err(GraphError::NonPositiveLabel(e.clone()));
            }
            if !vertices.contains(&e.from) || !vertices.contains(&e.to) {
                return Err(GraphError::UnknownVertex(e.clone()));
            }
        }
        edges.sort();
        Ok(Self {
            vertices: vertices.into_iter().collect(),
            edges,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// The weight multiset each vertex receives.
    pub fn weights_by_vertex(&self) -> BTreeMap<&str, Vec<Weight>> {
        let mut out: BTreeMap<&str, Vec<Weight>> =
            self.vertices.iter().map(|v| (v.as_str(), Vec::new())).collect();
        for e in &self.edges {
            out.get_mut(e.from.as_str()).expect("validated").push(e.w);
            out.get_mut(e.to.as_str()).expect("validated").push(-e.w);
        }
        for ws in out.values_mut() {
            ws.sort_unstable();
        }
        out
    }

    /// The fixed-point data this graph describes. Every vertex must have
    /// the same total degree.
    pub fn reconstruct(&self) -> Result<FixedPointData, GraphError> {
        let by_vertex = self.weights_by_vertex();
        let n = by_vertex.values().map(Vec::len).next().unwrap_or(0);
        let mut points = Vec::with_capacity(by_vertex.len());
        for (label, weights) in by_vertex {
            if weights.len() != n {
                return Err(GraphError::UnevenDegree(label.to_string(), weights.len(), n));
            }
            points.push(FixedPoint {
                label: label.to_string(),
                weights,
            });
        }
        Ok(FixedPointData::new(n, points)?)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_stable_string(self)
    }
}

/// `g` describes `d` when the vertex set is the label set and every
/// vertex receives exactly the weights of its point.
pub fn describes(g: &Multigraph, d: &FixedPointData) -> bool {
    let labels: BTreeSet<&str> = d.points().iter().map(|p| p.label.as_str()).collect();
    let vertices: BTreeSet<&str> = g.vertices.iter().map(String::as_str).collect();
    if labels != vertices {
        return false;
    }
    let by_vertex = g.weights_by_vertex();
    d.points()
        .iter()
        .all(|p| by_vertex.get(p.label.as_str()) == Some(&p.sorted_weights()))
}

/// Edges labeled at most this value must go up exactly one level in the
/// negative-weight count; larger labels join points whose weights agree
/// modulo the label. The threshold is the second-smallest positive weight
/// counted with multiplicity, or the smallest when only one exists.
pub fn small_weight_threshold(d: &FixedPointData) -> Option<Weight> {
    crate::consistency::smallest_positive_weights(d).map(|(a, b)| b.unwrap_or(a))
}

fn residues(weights: &[Weight], w: Weight) -> Vec<Weight> {
    let mut r: Vec<Weight> = weights.iter().map(|x| x.rem_euclid(w)).collect();
    r.sort_unstable();
    r
}

/// Whether an edge `p -> q` labeled `w` is allowed by the edge rules.
fn edge_allowed(p: &FixedPoint, q: &FixedPoint, w: Weight, threshold: Weight) -> Result<(), String> {
    if p.label == q.label {
        return Err("loop".to_string());
    }
    if w <= threshold {
        let (np, nq) = (p.negative_weight_count(), q.negative_weight_count());
        if np + 1 != nq {
            return Err(format!(
                "label {w} is at most {threshold} but the edge goes from {np} to {nq} negative weights"
            ));
        }
    } else if residues(&p.weights, w) != residues(&q.weights, w) {
        return Err(format!(
            "label {w} exceeds {threshold} but the weights at {} and {} differ modulo {w}",
            p.label, q.label
        ));
    }
    Ok(())
}

/// Checks the three properties edge by edge.
pub fn verify_lemma28(g: &Multigraph, d: &FixedPointData) -> FilterReport {
    if !describes(g, d) {
        return FilterReport::fail(names::DESCRIBING_MULTIGRAPH, "graph does not describe the data");
    }
    let Some(threshold) = small_weight_threshold(d) else {
        return FilterReport::pass(names::DESCRIBING_MULTIGRAPH);
    };
    for e in g.edges() {
        let p = d.point(&e.from).expect("described");
        let q = d.point(&e.to).expect("described");
        if let Err(why) = edge_allowed(p, q, e.w, threshold) {
            return FilterReport::fail(names::DESCRIBING_MULTIGRAPH, format!("edge {e}: {why}"));
        }
    }
    FilterReport::pass(names::DESCRIBING_MULTIGRAPH)
}

/// Distributes each `supply[i]` over the `demand[j]` with `allowed(i, j)`,
/// exhausting both. Returns `(i, j, count)` triples.
fn transport(
    supply: &[usize],
    demand: &[usize],
    allowed: &[Vec<bool>],
) -> Option<Vec<(usize, usize, usize)>> {
    fn go(
        i: usize,
        j: usize,
        left: usize,
        supply: &[usize],
        demand: &mut [usize],
        allowed: &[Vec<bool>],
        plan: &mut Vec<(usize, usize, usize)>,
    ) -> bool {
        if left == 0 {
            let next = i + 1;
            if next == supply.len() {
                return true;
            }
            return go(next, 0, supply[next], supply, demand, allowed, plan);
        }
        if j == demand.len() {
            return false;
        }
        let reachable: usize = (j..demand.len()).filter(|&k| allowed[i][k]).map(|k| demand[k]).sum();
        if reachable < left {
            return false;
        }
        if allowed[i][j] {
            for k in (1..=left.min(demand[j])).rev() {
                demand[j] -= k;
                plan.push((i, j, k));
                if go(i, j + 1, left - k, supply, demand, allowed, plan) {
                    return true;
                }
                plan.pop();
                demand[j] += k;
            }
        }
        go(i, j + 1, left, supply, demand, allowed, plan)
    }

    if supply.is_empty() {
        return Some(Vec::new());
    }
    let mut demand = demand.to_vec();
    let mut plan = Vec::new();
    go(0, 0, supply[0], supply, &mut demand, allowed, &mut plan).then_some(plan)
}

/// Searches for a loop-free graph describing `d` that satisfies the edge rules.
/// Each label is matched independently, smallest first; `Ok(None)` means
/// no such graph exists, which certifies that `d` is not realizable.
pub fn find_describing_multigraph(d: &FixedPointData) -> Result<Option<Multigraph>, FilterError> {
    let hattori = check_hattori(d);
    if hattori.failed() {
        return Err(FilterError::PreconditionViolation(hattori.witness));
    }
    let Some(threshold) = small_weight_threshold(d) else {
        return Ok(Some(Multigraph::new(d.labels(), Vec::new()).expect("no edges")));
    };
    let pts = d.points();
    let labels: BTreeSet<Weight> = d.all_weights().filter(|w| *w > 0).collect();
    let mut edges = Vec::new();
    for w in labels {
        let supply: Vec<usize> = pts.iter().map(|p| p.count_weight(w)).collect();
        let demand: Vec<usize> = pts.iter().map(|p| p.count_weight(-w)).collect();
        let allowed: Vec<Vec<bool>> = pts
            .iter()
            .map(|p| pts.iter().map(|q| edge_allowed(p, q, w, threshold).is_ok()).collect())
            .collect();
        let sources: Vec<usize> = (0..pts.len()).filter(|&i| supply[i] > 0).collect();
        let sub_supply: Vec<usize> = sources.iter().map(|&i| supply[i]).collect();
        let sub_allowed: Vec<Vec<bool>> = sources.iter().map(|&i| allowed[i].clone()).collect();
        let Some(plan) = transport(&sub_supply, &demand, &sub_allowed) else {
            return Ok(None);
        };
        for (i, j, k) in plan {
            for _ in 0..k {
                edges.push(Edge::new(pts[sources[i]].label.clone(), pts[j].label.clone(), w));
            }
        }
    }
    Ok(Some(Multigraph::new(d.labels(), edges).expect("edges join labels")))
}

/// For 8-dimensional data with negative-weight profile `(1, 1, 0, 1, 1)`,
/// the number of edges from the point with no negative weights to the
/// point with three.
pub fn figure1_shape(g: &Multigraph, d: &FixedPointData) -> Option<usize> {
    if d.n() != 4 || d.len() != 4 || d.negative_count_profile() != [1, 1, 0, 1, 1] {
        return None;
    }
    let at_level = |k| d.points().iter().find(|p| p.negative_weight_count() == k).map(|p| &p.label);
    let (p0, p3) = (at_level(0)?, at_level(3)?);
    Some(g.edges().iter().filter(|e| &e.from == p0 && &e.to == p3).count())
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit_dot(g: &Multigraph) -> String {
    let mut out = String::from("digraph {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {};\n", dot_id(v)));
    }
    for e in g.edges() {
        out.push_str(&format!(
            "  {} -> {} [label=\"{}\"];\n",
            dot_id(&e.from),
            dot_id(&e.to),
            e.w
        ));
    }
    out.push_str("}\n");
    out
}
