//! Points, validated point sets, and the plain-text point format.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::TOL_DUP;

/// A point in `d`-dimensional Euclidean space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        Point {
            coords: coords.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point { coords }
    }
}

/// Euclidean distance between two points of the same dimension.
pub fn distance(a: &Point, b: &Point) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
            index: 1,
        });
    }
    Ok(dist(&a.coords, &b.coords))
}

#[inline]
pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

/// A tree edge between two point indices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "(usize, usize, f64)", from = "(usize, usize, f64)")]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl From<Edge> for (usize, usize, f64) {
    fn from(e: Edge) -> Self {
        (e.u, e.v, e.length)
    }
}

impl From<(usize, usize, f64)> for Edge {
    fn from((u, v, length): (usize, usize, f64)) -> Self {
        Edge { u, v, length }
    }
}

/// An ordered, validated set of distinct points sharing one dimension.
///
/// Index `i` always refers to the `i`-th input point. Coordinates are stored
/// row-major in a single buffer.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        validate(points.into_iter().map(|p| p.coords).collect())
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        dist(self.point(i), self.point(j))
    }

    pub fn to_points(&self) -> Vec<Point> {
        self.iter().map(|c| Point::new(c.to_vec())).collect()
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    pub(crate) fn check_indices(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&i| i >= self.len()) {
            Some(i) => Err(Error::InvalidInput(format!(
                "index {i} out of range for {} points",
                self.len()
            ))),
            None => Ok(()),
        }
    }

    /// The induced sub-point-set, in the order given by `indices`.
    pub fn subset(&self, indices: &[usize]) -> Result<PointSet> {
        self.check_indices(indices)?;
        if indices.is_empty() {
            return Err(Error::InvalidInput("empty subset".into()));
        }
        let mut seen = vec![false; self.len()];
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!("index {i} repeated")));
            }
            coords.extend_from_slice(self.point(i));
        }
        Ok(PointSet {
            dim: self.dim,
            coords,
        })
    }

    /// Scale all coordinates by `factor` around the origin.
    #[cfg(test)]
    pub(crate) fn scaled(&self, factor: f64) -> PointSet {
        PointSet {
            dim: self.dim,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }
}

/// Validate a raw list of coordinate vectors into a [`PointSet`].
pub fn validate(points: Vec<Vec<f64>>) -> Result<PointSet> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("empty point set".into()));
    };
    let dim = first.len();
    if dim < 2 {
        return Err(Error::InvalidInput(format!(
            "dimension must be at least 2, got {dim}"
        )));
    }
    let mut coords = Vec::with_capacity(points.len() * dim);
    for (index, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
                index,
            });
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(index));
        }
        coords.extend_from_slice(p);
    }
    let set = PointSet { dim, coords };
    if let Some((i, j)) = find_duplicate(&set) {
        return Err(Error::Duplicate(i, j));
    }
    Ok(set)
}

/// Sweep along the first axis; only points within `TOL_DUP` in x can collide.
fn find_duplicate(set: &PointSet) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| set.point(a)[0].total_cmp(&set.point(b)[0]).then(a.cmp(&b)));
    let mut best: Option<(usize, usize)> = None;
    for (k, &a) in order.iter().enumerate() {
        for &b in &order[k + 1..] {
            if set.point(b)[0] - set.point(a)[0] >= TOL_DUP {
                break;
            }
            if set.dist(a, b) < TOL_DUP {
                let pair = (a.min(b), a.max(b));
                if best.is_none_or(|cur| pair < cur) {
                    best = Some(pair);
                }
            }
        }
    }
    best
}

/// Diameter, minimum pairwise distance, and spread (their quotient).
pub fn diameter_and_spread(set: &PointSet) -> Result<(f64, f64, f64)> {
    let n = set.len();
    if n < 2 {
        return Err(Error::InvalidInput("spread needs at least 2 points".into()));
    }
    let (diam, min) = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = set.point(i);
            ((i + 1)..n).fold((0.0f64, f64::INFINITY), |(hi, lo), j| {
                let d = dist(a, set.point(j));
                (hi.max(d), lo.min(d))
            })
        })
        .reduce(
            || (0.0, f64::INFINITY),
            |(h1, l1), (h2, l2)| (h1.max(h2), l1.min(l2)),
        );
    Ok((diam, min, diam / min))
}

/// Parse the text point format: one point per line, coordinates separated by
/// commas and/or whitespace, `#` comment lines skipped.
pub fn read_points<R: BufRead>(reader: R) -> Result<PointSet> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let coords = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|tok| {
                tok.parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    msg: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = points.first() {
            if first.len() != coords.len() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!(
                        "expected {} coordinates, found {}",
                        first.len(),
                        coords.len()
                    ),
                });
            }
        }
        points.push(coords);
    }
    validate(points)
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    read_points(text.as_bytes())
}

/// Write points one per line. Rust's float `Display` prints the shortest
/// decimal that reads back to the same `f64`, so the format is lossless.
pub fn write_points<W: Write>(set: &PointSet, mut out: W) -> Result<()> {
    writeln!(out, "# n={} d={}", set.len(), set.dim())?;
    let mut line = String::new();
    for p in set.iter() {
        line.clear();
        for (k, c) in p.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            write!(line, "{c}").expect("write to String");
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}
