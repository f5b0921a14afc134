//! Euclidean minimum spanning trees by dense Prim.
//!
//! `O(n²)` time and `O(n)` memory, independent of dimension. Among candidate
//! edges of equal length the lexicographically smallest normalized index pair
//! wins, so the returned tree is a deterministic function of the input order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Edge, PointSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub n: usize,
    pub total_length: f64,
    /// Edges in insertion order, each with `u < v`.
    pub edges: Vec<Edge>,
}

impl SpanningTree {
    pub fn shortest_edge(&self) -> Option<&Edge> {
        // first minimum in insertion order
        self.edges
            .iter()
            .reduce(|best, e| if e.length < best.length { e } else { best })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

#[inline]
fn pair(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Reusable buffers for repeated spanning-tree computations on small sets.
#[derive(Default)]
pub(crate) struct PrimScratch {
    key: Vec<f64>,
    via: Vec<usize>,
    rest: Vec<usize>,
}

impl PrimScratch {
    /// Run Prim over the complete graph on `0..n` with weights `dist`,
    /// reporting each tree edge `(parent, child, length)` as it is added.
    pub(crate) fn run<D, E>(&mut self, n: usize, dist: D, mut on_edge: E)
    where
        D: Fn(usize, usize) -> f64,
        E: FnMut(usize, usize, f64),
    {
        if n <= 1 {
            return;
        }
        self.key.clear();
        self.key.resize(n, f64::INFINITY);
        self.via.clear();
        self.via.resize(n, 0);
        self.rest.clear();
        self.rest.extend(1..n);

        let (key, via, rest) = (&mut self.key, &mut self.via, &mut self.rest);
        let mut u = 0;
        while !rest.is_empty() {
            let mut best_pos = 0;
            let mut best_key = f64::INFINITY;
            let mut best_pair = (usize::MAX, usize::MAX);
            for (pos, &v) in rest.iter().enumerate() {
                let d = dist(u, v);
                if d < key[v] || (d == key[v] && pair(u, v) < pair(via[v], v)) {
                    key[v] = d;
                    via[v] = u;
                }
                let k = key[v];
                if k < best_key || (k == best_key && pair(via[v], v) < best_pair) {
                    best_key = k;
                    best_pair = pair(via[v], v);
                    best_pos = pos;
                }
            }
            let v = rest.swap_remove(best_pos);
            on_edge(via[v], v, key[v]);
            u = v;
        }
    }

    pub(crate) fn weight<D: Fn(usize, usize) -> f64>(&mut self, n: usize, dist: D) -> f64 {
        let mut total = 0.0;
        self.run(n, dist, |_, _, len| total += len);
        total
    }
}

fn tree_over<D: Fn(usize, usize) -> f64>(
    n: usize,
    dist: D,
    label: impl Fn(usize) -> usize,
) -> SpanningTree {
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut total = 0.0;
    PrimScratch::default().run(n, dist, |a, b, length| {
        let (u, v) = pair(label(a), label(b));
        total += length;
        edges.push(Edge { u, v, length });
    });
    SpanningTree {
        n,
        total_length: total,
        edges,
    }
}

/// An EMST of `set`. Empty with length 0 when `n <= 1`.
pub fn emst(set: &PointSet) -> SpanningTree {
    if set.dim() == 2 {
        let xy: Vec<[f64; 2]> = set.iter().map(|p| [p[0], p[1]]).collect();
        tree_over(set.len(), |i, j| planar(&xy, i, j), |i| i)
    } else {
        tree_over(set.len(), |i, j| set.dist(i, j), |i| i)
    }
}

#[inline]
fn planar(xy: &[[f64; 2]], i: usize, j: usize) -> f64 {
    let dx = xy[i][0] - xy[j][0];
    let dy = xy[i][1] - xy[j][1];
    (dx * dx + dy * dy).sqrt()
}

pub fn emst_weight(set: &PointSet) -> f64 {
    emst(set).total_length
}

/// EMST of the sub-point-set selected by `indices`, with edges labelled by
/// the original indices.
pub fn emst_subset(set: &PointSet, indices: &[usize]) -> Result<SpanningTree> {
    set.check_indices(indices)?;
    let mut seen = vec![false; set.len()];
    for &i in indices {
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidInput(format!("index {i} repeated")));
        }
    }
    let tree = if set.dim() == 2 {
        let xy: Vec<[f64; 2]> = indices
            .iter()
            .map(|&i| {
                let p = set.point(i);
                [p[0], p[1]]
            })
            .collect();
        tree_over(indices.len(), |a, b| planar(&xy, a, b), |a| indices[a])
    } else {
        tree_over(
            indices.len(),
            |a, b| set.dist(indices[a], indices[b]),
            |a| indices[a],
        )
    };
    Ok(tree)
}

/// EMST length of the induced sub-point-set; 0 when `|indices| <= 1`.
pub fn emst_weight_subset(set: &PointSet, indices: &[usize]) -> Result<f64> {
    Ok(emst_subset(set, indices)?.total_length)
}

/// Dense pairwise distance table for repeated subset queries on small sets.
pub(crate) struct DistMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistMatrix {
    pub(crate) fn new(set: &PointSet) -> Self {
        let n = set.len();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                d[i * n + j] = set.dist(i, j);
            }
        }
        DistMatrix { n, d }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub(crate) fn subset_weight(&self, indices: &[usize], scratch: &mut PrimScratch) -> f64 {
        scratch.weight(indices.len(), |a, b| self.get(indices[a], indices[b]))
    }
}
