//! Bipartitions, MST-ratio evaluation, and the splitting strategies.
//!
//! The MST-ratio of a split `P = R ∪ B` is `(w(R) + w(B)) / w(P)`; its maximum
//! over all non-trivial splits is the max MST-ratio. Each strategy here builds
//! one split with a known guarantee and attaches the data behind that
//! guarantee as a [`Certificate`]. [`exact_gamma`] enumerates every split and
//! is the reference the strategies are measured against.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::disks::{find_disjoint_pair, find_disjoint_pair_prefix, DisjointPair};
use crate::emst::{emst, emst_weight_subset, DistMatrix, PrimScratch, SpanningTree};
use crate::error::{Error, Result};
use crate::geometry::{diameter_and_spread, Edge, PointSet};
use crate::TOL_EQ;

/// Largest set [`exact_gamma`] accepts by default.
pub const N_EXHAUSTIVE: usize = 22;

/// Best proven lower bound on the Euclidean Steiner ratio: the root in
/// (0.8, 1) of `x^12 - 4x^11 - 2x^10 + 40x^9 - 31x^8 - 72x^7 + 116x^6 + 16x^5
/// - 151x^4 + 80x^3 + 56x^2 - 64x + 16`.
pub const RHO_0: f64 = 0.824_168_744_709_194;

/// No planar set has max MST-ratio above `2 / RHO_0`.
pub const STEINER_CEILING: f64 = 2.0 / RHO_0;

/// Smallest density constant for which large dense sets exist,
/// `sqrt(2) * 3^(1/4) / sqrt(pi)`.
pub fn alpha_min() -> f64 {
    2f64.sqrt() * 3f64.powf(0.25) / std::f64::consts::PI.sqrt()
}

/// Prefix size sufficient for a disjoint disk pair in the plane.
pub const PLANAR_PREFIX: usize = 12;

/// A split of `0..n` into two non-empty, disjoint, covering index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    n: usize,
    red: Vec<usize>,
    blue: Vec<usize>,
}

impl Bipartition {
    /// Blue gets `blue`, red gets every other index.
    pub fn from_blue(n: usize, blue: &[usize]) -> Result<Self> {
        let mut is_blue = vec![false; n];
        for &i in blue {
            if i >= n {
                return Err(Error::InvalidInput(format!(
                    "index {i} out of range for {n} points"
                )));
            }
            if std::mem::replace(&mut is_blue[i], true) {
                return Err(Error::InvalidInput(format!("index {i} repeated")));
            }
        }
        Self::from_flags(&is_blue)
    }

    /// Bit `i` of `mask` set means index `i` is blue.
    pub fn from_blue_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 || (n < 64 && mask >> n != 0) {
            return Err(Error::InvalidInput(format!(
                "mask {mask:#x} does not fit {n} points"
            )));
        }
        let flags: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        Self::from_flags(&flags)
    }

    fn from_flags(is_blue: &[bool]) -> Result<Self> {
        let (blue, red): (Vec<usize>, Vec<usize>) = (0..is_blue.len()).partition(|&i| is_blue[i]);
        if red.is_empty() || blue.is_empty() {
            return Err(Error::InvalidInput("both parts must be non-empty".into()));
        }
        Ok(Bipartition {
            n: is_blue.len(),
            red,
            blue,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn red(&self) -> &[usize] {
        &self.red
    }

    pub fn blue(&self) -> &[usize] {
        &self.blue
    }

    pub fn swapped(&self) -> Self {
        Bipartition {
            n: self.n,
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// A caller-supplied split.
    Given,
    Exact,
    EdgeDeletion,
    DisjointDisks,
    RandomHalves,
    Dense,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::Given => "given",
            Strategy::Exact => "exact",
            Strategy::EdgeDeletion => "edge-deletion",
            Strategy::DisjointDisks => "disjoint-disks",
            Strategy::RandomHalves => "random-halves",
            Strategy::Dense => "dense",
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Data behind the split's guarantee, by strategy.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    None,
    Exact {
        /// Full-index blue mask of the maximizer; index 0 is always red.
        blue_mask: u64,
        bipartitions_examined: u64,
    },
    EdgeDeletion {
        edge: Edge,
        /// `(w - |e|) / w`, which equals the ratio because both halves of
        /// the cut tree are themselves minimum spanning trees.
        identity_ratio: f64,
        /// `(n - 2) / (n - 1)`
        guaranteed_ratio: f64,
    },
    DisjointDisks {
        pair: DisjointPair,
        /// Size of the input prefix that was searched, when not the whole set.
        prefix: Option<usize>,
        /// `(w - r(p) - r(q) + |pq|) / w`
        lower_bound: f64,
    },
    RandomHalves {
        red_len: usize,
    },
    Dense(DenseCertificate),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseCertificate {
    pub alpha: f64,
    /// Minimum pairwise distance; all grid lengths below are in units of it.
    pub scale: f64,
    pub spread: f64,
    pub cell_side: f64,
    pub occupied_cells: usize,
    pub rich_cells: usize,
    /// `5 * (column mod 5) + (row mod 5)` of the chosen cell class.
    pub class_id: usize,
    pub k: usize,
    /// Sum of `|p_i q_i|` over the chosen cells, in original units.
    pub pair_length_sum: f64,
    /// `w - 2 sqrt(2) alpha k`, in original units.
    pub red_floor: f64,
    /// `8 alpha (k - 1)`, in original units.
    pub blue_floor: f64,
    /// `(w + 2 (4 - sqrt 2) alpha k - 8 alpha) / w`
    pub lower_bound: f64,
    /// `1 + 1 / (11 (2 alpha + 1)^2)`, the large-n guarantee.
    pub asymptotic_bound: f64,
    pub meets_asymptotic_bound: bool,
    /// `3 sqrt(3) n / (200 (2 alpha + 1)^2)`
    pub k_lower_bound: f64,
    /// `3 sqrt(3) n / (8 (2 alpha + 1)^2)`
    pub rich_lower_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub strategy: Strategy,
    pub ratio: f64,
    pub w_total: f64,
    pub w_red: f64,
    pub w_blue: f64,
    #[serde(rename = "blue_indices", serialize_with = "blue_only")]
    pub bipartition: Bipartition,
    pub certificate: Certificate,
}

fn blue_only<S: Serializer>(bp: &Bipartition, s: S) -> std::result::Result<S::Ok, S::Error> {
    bp.blue().serialize(s)
}

impl RatioReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

fn evaluate(
    set: &PointSet,
    bp: Bipartition,
    w_total: Option<f64>,
    strategy: Strategy,
    certificate: Certificate,
) -> Result<RatioReport> {
    if bp.n() != set.len() {
        return Err(Error::InvalidInput(format!(
            "bipartition covers {} indices but the set has {} points",
            bp.n(),
            set.len()
        )));
    }
    let w_total = w_total.unwrap_or_else(|| emst(set).total_length);
    if w_total <= 0.0 {
        return Err(Error::Degenerate("spanning tree has zero length".into()));
    }
    let w_red = emst_weight_subset(set, bp.red())?;
    let w_blue = emst_weight_subset(set, bp.blue())?;
    Ok(RatioReport {
        strategy,
        ratio: (w_red + w_blue) / w_total,
        w_total,
        w_red,
        w_blue,
        bipartition: bp,
        certificate,
    })
}

/// The MST-ratio of a caller-supplied split.
pub fn ratio(set: &PointSet, bp: &Bipartition) -> Result<RatioReport> {
    evaluate(set, bp.clone(), None, Strategy::Given, Certificate::None)
}

/// Maximize the ratio over all `2^(n-1) - 1` splits with [`N_EXHAUSTIVE`] as the size limit.
pub fn exact_gamma(set: &PointSet) -> Result<RatioReport> {
    exact_gamma_with_limit(set, N_EXHAUSTIVE)
}

/// Exhaustive maximization with point 0 pinned to red. Blue sets are visited
/// as bitmasks in increasing order and the first maximizer wins.
pub fn exact_gamma_with_limit(set: &PointSet, limit: usize) -> Result<RatioReport> {
    let n = set.len();
    let limit = limit.min(63);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if n < 2 {
        return Err(Error::InvalidInput("need at least 2 points".into()));
    }
    let dm = DistMatrix::new(set);
    let all: Vec<usize> = (0..n).collect();
    let w_total = dm.subset_weight(&all, &mut PrimScratch::default());

    // blue mask over indices 1..n, shifted down by one
    let count: u64 = (1u64 << (n - 1)) - 1;
    const CHUNK: u64 = 1 << 12;
    let chunks = count.div_ceil(CHUNK);

    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut scratch = PrimScratch::default();
            let mut red = Vec::with_capacity(n);
            let mut blue = Vec::with_capacity(n);
            let mut best: Option<(f64, u64)> = None;
            let lo = 1 + c * CHUNK;
            let hi = (lo + CHUNK).min(count + 1);
            for b in lo..hi {
                red.clear();
                blue.clear();
                red.push(0);
                for i in 1..n {
                    if b >> (i - 1) & 1 == 1 {
                        blue.push(i);
                    } else {
                        red.push(i);
                    }
                }
                let sum =
                    dm.subset_weight(&red, &mut scratch) + dm.subset_weight(&blue, &mut scratch);
                if best.is_none_or(|(s, _)| sum > s) {
                    best = Some((sum, b));
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }),
                (x, None) => x,
                (None, y) => y,
            },
        );
    let (_, b) = best.ok_or_else(|| Error::InvalidInput("no non-trivial split".into()))?;
    let blue_mask = b << 1;
    let bp = Bipartition::from_blue_mask(n, blue_mask)?;
    let mut scratch = PrimScratch::default();
    let w_red = dm.subset_weight(bp.red(), &mut scratch);
    let w_blue = dm.subset_weight(bp.blue(), &mut scratch);
    Ok(RatioReport {
        strategy: Strategy::Exact,
        ratio: (w_red + w_blue) / w_total,
        w_total,
        w_red,
        w_blue,
        bipartition: bp,
        certificate: Certificate::Exact {
            blue_mask,
            bipartitions_examined: count,
        },
    })
}

/// Cut the shortest edge of an EMST; the two subtrees give the split.
pub fn edge_deletion_partition(set: &PointSet) -> Result<RatioReport> {
    edge_deletion_with(set, &emst(set))
}

fn edge_deletion_with(set: &PointSet, tree: &SpanningTree) -> Result<RatioReport> {
    let n = set.len();
    if n < 3 {
        return Err(Error::InvalidInput(
            "edge deletion needs at least 3 points".into(),
        ));
    }
    let cut = *tree
        .edges
        .iter()
        .min_by(|a, b| {
            a.length
                .total_cmp(&b.length)
                .then((a.u, a.v).cmp(&(b.u, b.v)))
        })
        .expect("n >= 3 gives a non-empty tree");

    // walk the tree from the cut edge's `v` end without crossing the cut
    let mut adj = vec![Vec::new(); n];
    for e in &tree.edges {
        if (e.u, e.v) != (cut.u, cut.v) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    let mut side = vec![false; n];
    let mut stack = vec![cut.v];
    side[cut.v] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !std::mem::replace(&mut side[y], true) {
                stack.push(y);
            }
        }
    }
    // index 0 stays red
    if side[0] {
        side.iter_mut().for_each(|s| *s = !*s);
    }
    let blue: Vec<usize> = (0..n).filter(|&i| side[i]).collect();
    let bp = Bipartition::from_blue(n, &blue)?;
    let w = tree.total_length;
    evaluate(
        set,
        bp,
        Some(w),
        Strategy::EdgeDeletion,
        Certificate::EdgeDeletion {
            edge: cut,
            identity_ratio: (w - cut.length) / w,
            guaranteed_ratio: (n - 2) as f64 / (n - 1) as f64,
        },
    )
}

/// Blue is a pair of points with disjoint nearest-neighbour disks.
///
/// Planar sets with at least 12 points only search the first 12; smaller
/// or higher-dimensional sets are searched whole.
pub fn disjoint_disk_partition(set: &PointSet) -> Result<RatioReport> {
    disjoint_disk_with(set, None)
}

fn disjoint_disk_with(set: &PointSet, w_total: Option<f64>) -> Result<RatioReport> {
    let n = set.len();
    if n < 4 {
        return Err(Error::InvalidInput(
            "disjoint-disk split needs at least 4 points".into(),
        ));
    }
    let (pair, prefix) = if set.dim() == 2 && n >= PLANAR_PREFIX {
        (
            find_disjoint_pair_prefix(set, PLANAR_PREFIX)?,
            Some(PLANAR_PREFIX),
        )
    } else {
        (find_disjoint_pair(set)?.ok_or(Error::NoDisjointPair)?, None)
    };
    let bp = Bipartition::from_blue(n, &[pair.p, pair.q])?;
    let w = w_total.unwrap_or_else(|| emst(set).total_length);
    evaluate(
        set,
        bp,
        Some(w),
        Strategy::DisjointDisks,
        Certificate::DisjointDisks {
            pair,
            prefix,
            lower_bound: (w + pair.slack) / w,
        },
    )
}

/// Red is the first `floor(n/2)` points in input order, blue the rest.
pub fn random_halves_partition(set: &PointSet) -> Result<RatioReport> {
    random_halves_with(set, None)
}

fn random_halves_with(set: &PointSet, w_total: Option<f64>) -> Result<RatioReport> {
    let n = set.len();
    if n < 4 {
        return Err(Error::InvalidInput(
            "random halves needs at least 4 points".into(),
        ));
    }
    let red_len = n / 2;
    let blue: Vec<usize> = (red_len..n).collect();
    let bp = Bipartition::from_blue(n, &blue)?;
    evaluate(
        set,
        bp,
        w_total,
        Strategy::RandomHalves,
        Certificate::RandomHalves { red_len },
    )
}

/// Smallest admissible density constant for `set`: `max(spread / sqrt(n), alpha_min())`.
pub fn minimal_alpha(set: &PointSet) -> Result<f64> {
    let (_, _, spread) = diameter_and_spread(set)?;
    Ok((spread / (set.len() as f64).sqrt()).max(alpha_min()))
}

/// Grid split for planar sets with spread at most `alpha * sqrt(n)`.
///
/// With the minimum pairwise distance scaled to 1, the bounding square is cut
/// into cells of side `2 alpha` (half-open, anchored at the minimum
/// coordinates). Cells holding two or more points are rich; rich cells are
/// grouped by `(column mod 5, row mod 5)` and the largest group is taken, so
/// any two chosen cells are at least `8 alpha` apart. One point of the closest
/// pair in each chosen cell turns blue.
pub fn dense_partition(set: &PointSet, alpha: f64) -> Result<RatioReport> {
    dense_with(set, Some(alpha), None)
}

/// [`dense_partition`] with `alpha` from [`minimal_alpha`].
pub fn dense_partition_auto(set: &PointSet) -> Result<RatioReport> {
    dense_with(set, None, None)
}

fn dense_with(set: &PointSet, alpha: Option<f64>, w_total: Option<f64>) -> Result<RatioReport> {
    let n = set.len();
    if set.dim() != 2 {
        return Err(Error::InvalidInput("dense split is planar only".into()));
    }
    let (_, scale, spread) = diameter_and_spread(set)?;
    let sqrt_n = (n as f64).sqrt();
    let alpha = alpha.unwrap_or_else(|| (spread / sqrt_n).max(alpha_min()));
    // also rejects NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(alpha >= alpha_min()) {
        return Err(Error::InvalidInput(format!(
            "alpha {alpha} is below the minimum {}",
            alpha_min()
        )));
    }
    if spread > alpha * sqrt_n * (1.0 + TOL_EQ) {
        return Err(Error::InvalidInput(format!(
            "spread {spread} exceeds alpha * sqrt(n) = {}",
            alpha * sqrt_n
        )));
    }

    let (min_x, min_y) = set
        .iter()
        .fold((f64::INFINITY, f64::INFINITY), |(x, y), p| {
            (x.min(p[0]), y.min(p[1]))
        });
    let cell = 2.0 * alpha;
    let mut cells: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, p) in set.iter().enumerate() {
        let cx = ((p[0] - min_x) / scale / cell).floor() as i64;
        let cy = ((p[1] - min_y) / scale / cell).floor() as i64;
        cells.entry((cx, cy)).or_default().push(i);
    }
    let class_of = |&(cx, cy): &(i64, i64)| (5 * cx.rem_euclid(5) + cy.rem_euclid(5)) as usize;

    let mut class_sizes = [0usize; 25];
    let mut rich = 0;
    for (key, members) in &cells {
        if members.len() >= 2 {
            rich += 1;
            class_sizes[class_of(key)] += 1;
        }
    }
    if rich == 0 {
        return Err(Error::Degenerate("no grid cell holds two points".into()));
    }
    let (class_id, k) = class_sizes
        .iter()
        .copied()
        .enumerate()
        .fold(
            (0, 0),
            |best, (id, size)| if size > best.1 { (id, size) } else { best },
        );

    let mut blue = Vec::with_capacity(k);
    let mut pair_length_sum = 0.0;
    for (key, members) in &cells {
        if members.len() < 2 || class_of(key) != class_id {
            continue;
        }
        let mut closest = (f64::INFINITY, 0, 0);
        for (a, &p) in members.iter().enumerate() {
            for &q in &members[a + 1..] {
                let d = set.dist(p, q);
                if d < closest.0 {
                    closest = (d, p, q);
                }
            }
        }
        pair_length_sum += closest.0;
        blue.push(closest.1.min(closest.2));
    }
    blue.sort_unstable();
    let bp = Bipartition::from_blue(n, &blue)?;
    let w = w_total.unwrap_or_else(|| emst(set).total_length);

    let kf = k as f64;
    let red_floor = w - 2.0 * 2f64.sqrt() * alpha * kf * scale;
    let blue_floor = 8.0 * alpha * (kf - 1.0) * scale;
    let density = (2.0 * alpha + 1.0).powi(2);
    let asymptotic_bound = 1.0 + 1.0 / (11.0 * density);
    let mut report = evaluate(set, bp, Some(w), Strategy::Dense, Certificate::None)?;
    report.certificate = Certificate::Dense(DenseCertificate {
        alpha,
        scale,
        spread,
        cell_side: cell * scale,
        occupied_cells: cells.len(),
        rich_cells: rich,
        class_id,
        k,
        pair_length_sum,
        red_floor,
        blue_floor,
        lower_bound: (red_floor + blue_floor) / w,
        asymptotic_bound,
        meets_asymptotic_bound: report.ratio >= asymptotic_bound,
        k_lower_bound: 3.0 * 3f64.sqrt() * n as f64 / (200.0 * density),
        rich_lower_bound: 3.0 * 3f64.sqrt() * n as f64 / (8.0 * density),
    });
    Ok(report)
}

/// Run every applicable strategy and keep the best ratio. On ties the
/// earlier entry of exact, disjoint-disks, dense, random-halves,
/// edge-deletion wins.
pub fn best_of_all_strategies(set: &PointSet) -> Result<RatioReport> {
    let n = set.len();
    if n < 3 {
        return Err(Error::InvalidInput("need at least 3 points".into()));
    }
    let tree = emst(set);
    let w = Some(tree.total_length);
    let mut candidates: Vec<Result<RatioReport>> = Vec::new();
    if n <= N_EXHAUSTIVE {
        candidates.push(exact_gamma(set));
    }
    candidates.push(disjoint_disk_with(set, w));
    candidates.push(dense_with(set, None, w));
    candidates.push(random_halves_with(set, w));
    candidates.push(edge_deletion_with(set, &tree));

    let mut best: Option<RatioReport> = None;
    for cand in candidates {
        match cand {
            Ok(r) => {
                if best.as_ref().is_none_or(|b| r.ratio > b.ratio) {
                    best = Some(r);
                }
            }
            Err(e @ Error::Counterexample { .. }) => return Err(e),
            Err(_) => {}
        }
    }
    Ok(best.expect("edge deletion applies for n >= 3"))
}

/// A strategy selector, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyChoice {
    Exact,
    EdgeDeletion,
    DisjointDisks,
    RandomHalves,
    /// `None` picks [`minimal_alpha`].
    Dense {
        alpha: Option<f64>,
    },
    Auto,
}

impl StrategyChoice {
    pub fn run(&self, set: &PointSet) -> Result<RatioReport> {
        match *self {
            StrategyChoice::Exact => exact_gamma(set),
            StrategyChoice::EdgeDeletion => edge_deletion_partition(set),
            StrategyChoice::DisjointDisks => disjoint_disk_partition(set),
            StrategyChoice::RandomHalves => random_halves_partition(set),
            StrategyChoice::Dense { alpha } => dense_with(set, alpha, None),
            StrategyChoice::Auto => best_of_all_strategies(set),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            StrategyChoice::Exact => "exact",
            StrategyChoice::EdgeDeletion => "edge-deletion",
            StrategyChoice::DisjointDisks => "disjoint-disks",
            StrategyChoice::RandomHalves => "random-halves",
            StrategyChoice::Dense { .. } => "dense",
            StrategyChoice::Auto => "auto",
        }
    }
}

impl std::str::FromStr for StrategyChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(
            match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
                "exact" | "oracle" => StrategyChoice::Exact,
                "edge-deletion" => StrategyChoice::EdgeDeletion,
                "disjoint-disks" => StrategyChoice::DisjointDisks,
                "random-halves" | "halves" => StrategyChoice::RandomHalves,
                "dense" => StrategyChoice::Dense { alpha: None },
                "auto" => StrategyChoice::Auto,
                _ => return Err(Error::InvalidInput(format!("unknown strategy {s:?}"))),
            },
        )
    }
}

impl Certificate {
    /// The guaranteed ratio floor this certificate carries, if any.
    pub fn lower_bound(&self) -> Option<f64> {
        match self {
            Certificate::EdgeDeletion { identity_ratio, .. } => Some(*identity_ratio),
            Certificate::DisjointDisks { lower_bound, .. } => Some(*lower_bound),
            Certificate::Dense(c) => Some(c.lower_bound),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate;
    use approx::assert_relative_eq;

    fn set(points: &[[f64; 2]]) -> PointSet {
        validate(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    const H: f64 = 0.866_025_403_784_438_6;

    fn equilateral() -> PointSet {
        set(&[[0.0, 0.0], [1.0, 0.0], [0.5, H]])
    }

    fn hexagon5() -> PointSet {
        set(&[[0.0, 0.0], [1.0, 0.0], [0.5, H], [-0.5, H], [-1.0, 0.0]])
    }

    fn square() -> PointSet {
        set(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    }

    #[test]
    fn rho_constant_matches_polynomial_root() {
        let poly = |x: f64| {
            [
                1.0, -4.0, -2.0, 40.0, -31.0, -72.0, 116.0, 16.0, -151.0, 80.0, 56.0, -64.0, 16.0,
            ]
            .iter()
            .fold(0.0, |acc, c| acc * x + c)
        };
        let (mut lo, mut hi) = (0.8, 0.85);
        assert!(poly(lo).signum() != poly(hi).signum());
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if poly(mid).signum() == poly(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - RHO_0).abs() < 1e-12);
        assert_relative_eq!(alpha_min(), 1.050_075_135_808_664, max_relative = 1e-12);
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::from_blue(3, &[]).is_err());
        assert!(Bipartition::from_blue(3, &[0, 1, 2]).is_err());
        assert!(Bipartition::from_blue(3, &[3]).is_err());
        assert!(Bipartition::from_blue(3, &[1, 1]).is_err());
        let bp = Bipartition::from_blue(4, &[2, 0]).unwrap();
        assert_eq!(bp.blue(), &[0, 2]);
        assert_eq!(bp.red(), &[1, 3]);
        assert_eq!(Bipartition::from_blue_mask(4, 0b0101).unwrap(), bp);
        assert!(Bipartition::from_blue_mask(4, 0b1_0000).is_err());
    }

    #[test]
    fn ratio_examples() {
        let r = ratio(&equilateral(), &Bipartition::from_blue(3, &[2]).unwrap()).unwrap();
        assert_relative_eq!(r.ratio, 0.5, max_relative = 1e-12);

        let r = ratio(&hexagon5(), &Bipartition::from_blue(5, &[0, 2, 3]).unwrap()).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-12);

        let r = ratio(&square(), &Bipartition::from_blue(4, &[1, 3]).unwrap()).unwrap();
        assert_relative_eq!(r.ratio, 2.0 * 2f64.sqrt() / 3.0, max_relative = 1e-12);

        let wrong_size = Bipartition::from_blue(5, &[1]).unwrap();
        assert!(ratio(&square(), &wrong_size).is_err());
    }

    #[test]
    fn exact_examples() {
        let r = exact_gamma(&equilateral()).unwrap();
        assert_relative_eq!(r.ratio, 0.5, max_relative = 1e-9);

        let rhombus = set(&[[0.0, 0.0], [1.0, 0.0], [1.5, H], [0.5, H]]);
        let r = exact_gamma(&rhombus).unwrap();
        assert_relative_eq!(r.ratio, (3f64.sqrt() + 1.0) / 3.0, max_relative = 1e-9);
        // the long diagonal {0, 2} against the short one {1, 3}
        assert_eq!(r.bipartition.blue(), &[1, 3]);

        let r = exact_gamma(&hexagon5()).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-9);
        assert_eq!(r.bipartition.blue(), &[1, 4]);
        assert_eq!(
            r.certificate,
            Certificate::Exact {
                blue_mask: 0b10010,
                bipartitions_examined: 15
            }
        );
    }

    #[test]
    fn exact_two_points_and_limits() {
        let two = set(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(exact_gamma(&two).unwrap().ratio, 0.0);
        let many: Vec<Vec<f64>> = (0..23).map(|i| vec![i as f64, 0.0]).collect();
        let big = validate(many).unwrap();
        assert!(matches!(
            exact_gamma(&big),
            Err(Error::TooLarge { n: 23, limit: 22 })
        ));
        assert!(matches!(
            exact_gamma_with_limit(&square(), 3),
            Err(Error::TooLarge { n: 4, limit: 3 })
        ));
    }

    #[test]
    fn edge_deletion_examples() {
        let line = set(&[[0.0, 0.0], [1.0, 0.0], [2.5, 0.0]]);
        let r = edge_deletion_partition(&line).unwrap();
        assert_relative_eq!(r.ratio, 0.6, max_relative = 1e-12);
        assert_eq!(r.bipartition.blue(), &[1, 2]);
        match r.certificate {
            Certificate::EdgeDeletion {
                edge,
                identity_ratio,
                guaranteed_ratio,
            } => {
                assert_eq!((edge.u, edge.v, edge.length), (0, 1, 1.0));
                assert_relative_eq!(identity_ratio, 0.6, max_relative = 1e-12);
                assert_eq!(guaranteed_ratio, 0.5);
            }
            other => panic!("unexpected certificate {other:?}"),
        }

        let r = edge_deletion_partition(&equilateral()).unwrap();
        assert_relative_eq!(r.ratio, 0.5, max_relative = 1e-12);

        assert!(edge_deletion_partition(&set(&[[0.0, 0.0], [1.0, 0.0]])).is_err());
    }

    fn two_clusters() -> PointSet {
        let mut pts = Vec::new();
        for cx in [0.0, 100.0] {
            for k in 0..6 {
                let t = k as f64 * std::f64::consts::PI / 3.0 + 0.1;
                pts.push([cx + 0.5 * t.cos(), 0.5 * t.sin()]);
            }
        }
        set(&pts)
    }

    #[test]
    fn disjoint_disk_examples() {
        let r = disjoint_disk_partition(&two_clusters()).unwrap();
        let blue = r.bipartition.blue();
        assert!(blue[0] < 6 && blue[1] >= 6);
        assert!(r.ratio > 1.0);
        let Certificate::DisjointDisks {
            lower_bound,
            prefix,
            ..
        } = r.certificate
        else {
            panic!("wrong certificate");
        };
        assert_eq!(prefix, Some(12));
        assert!(r.ratio >= lower_bound - TOL_EQ && lower_bound > 1.0);

        assert!(matches!(
            disjoint_disk_partition(&equilateral()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            disjoint_disk_partition(&square()),
            Err(Error::NoDisjointPair)
        ));
    }

    #[test]
    fn random_halves_examples() {
        let line = set(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]);
        let r = random_halves_partition(&line).unwrap();
        assert_eq!(r.bipartition.red(), &[0, 1]);
        assert_relative_eq!(r.ratio, 2.0 / 3.0, max_relative = 1e-12);

        let r = random_halves_partition(&square()).unwrap();
        assert_relative_eq!(r.ratio, 2.0 / 3.0, max_relative = 1e-12);

        let five = set(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0], [4.0, 0.0]]);
        let r = random_halves_partition(&five).unwrap();
        assert_eq!(r.bipartition.blue(), &[2, 3, 4]);
        assert!(random_halves_partition(&equilateral()).is_err());
    }

    fn grid(side: usize) -> PointSet {
        validate(
            (0..side * side)
                .map(|i| vec![(i % side) as f64, (i / side) as f64])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn dense_on_small_grid() {
        let g = grid(20);
        let r = dense_partition(&g, 2f64.sqrt()).unwrap();
        let Certificate::Dense(c) = &r.certificate else {
            panic!("wrong certificate")
        };
        assert_eq!(c.k, r.bipartition.blue().len());
        assert!(c.k >= c.rich_cells.div_ceil(25));
        assert!(r.w_red >= c.red_floor - TOL_EQ * r.w_total);
        assert!(r.w_blue >= c.blue_floor - TOL_EQ * r.w_total);
        assert!(r.ratio >= c.lower_bound - TOL_EQ);
        // closest pairs in a unit grid have length 1
        assert_relative_eq!(c.pair_length_sum, c.k as f64);
    }

    #[test]
    fn dense_is_scale_invariant() {
        let g = grid(12);
        let scaled = g.scaled(3.5);
        let a = dense_partition(&g, 1.5).unwrap();
        let b = dense_partition(&scaled, 1.5).unwrap();
        assert_eq!(a.bipartition, b.bipartition);
        assert_relative_eq!(a.ratio, b.ratio, max_relative = 1e-12);
    }

    #[test]
    fn dense_rejects_sparse_input_and_small_alpha() {
        let line = validate((0..20).map(|i| vec![i as f64, 0.0]).collect()).unwrap();
        // spread 19 > alpha sqrt(20) for alpha = 2
        assert!(matches!(
            dense_partition(&line, 2.0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            dense_partition(&grid(5), 1.0),
            Err(Error::InvalidInput(_))
        ));
        let cube = validate(
            (0..8)
                .map(|i| vec![(i & 1) as f64, (i >> 1 & 1) as f64, (i >> 2) as f64])
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            dense_partition(&cube, 2.0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn best_of_all_examples() {
        let r = best_of_all_strategies(&equilateral()).unwrap();
        assert_eq!(r.strategy, Strategy::Exact);
        assert_relative_eq!(r.ratio, 0.5, max_relative = 1e-9);

        let r = best_of_all_strategies(&square()).unwrap();
        assert_eq!(r.strategy, Strategy::Exact);
        assert_relative_eq!(r.ratio, 2.0 * 2f64.sqrt() / 3.0, max_relative = 1e-9);

        let big = grid(6);
        let r = best_of_all_strategies(&big).unwrap();
        assert!(r.ratio > 1.0);
    }

    #[test]
    fn report_json_fields() {
        let r = ratio(&square(), &Bipartition::from_blue(4, &[1, 3]).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        for key in [
            "strategy",
            "ratio",
            "w_total",
            "w_red",
            "w_blue",
            "blue_indices",
            "certificate",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["strategy"], "given");
        assert_eq!(v["blue_indices"], serde_json::json!([1, 3]));
    }
}
