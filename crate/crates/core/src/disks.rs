//! Nearest-neighbour disk systems and disjoint-disk pairs.
//!
//! Every point `p` carries the largest closed disk centred at `p` with no
//! other point in its interior; its radius `r(p)` is the nearest-neighbour
//! distance. Two such disks are disjoint when `|pq| > r(p) + r(q)`, and the
//! split `B = {p, q}` then has ratio at least `(w - r(p) - r(q) + |pq|) / w`.
//! Adding points only shrinks disks, so a pair that is disjoint within a
//! subset stays disjoint in every superset.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::TOL_EQ;

#[derive(Clone, Debug)]
pub struct DiskSystem<'a> {
    pub source: &'a PointSet,
    pub radii: Vec<f64>,
}

#[derive(Serialize)]
struct DiskRecord<'a> {
    index: usize,
    center: &'a [f64],
    radius: f64,
}

impl DiskSystem<'_> {
    pub fn radius(&self, i: usize) -> f64 {
        self.radii[i]
    }

    /// Signed gap between the disks of `p` and `q`.
    pub fn slack(&self, p: usize, q: usize) -> f64 {
        self.pair(p, q).slack
    }

    pub fn pair(&self, p: usize, q: usize) -> DisjointPair {
        let (p, q) = (p.min(q), p.max(q));
        let distance = self.source.dist(p, q);
        DisjointPair {
            p,
            q,
            distance,
            r_p: self.radii[p],
            r_q: self.radii[q],
            slack: distance - self.radii[p] - self.radii[q],
        }
    }

    /// JSON array of `{ "index", "center", "radius" }` records.
    pub fn to_json(&self) -> Result<String> {
        let records: Vec<DiskRecord> = self
            .radii
            .iter()
            .enumerate()
            .map(|(index, &radius)| DiskRecord {
                index,
                center: self.source.point(index),
                radius,
            })
            .collect();
        Ok(serde_json::to_string(&records)?)
    }
}

/// Two points whose nearest-neighbour disks are strictly disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DisjointPair {
    pub p: usize,
    pub q: usize,
    pub distance: f64,
    pub r_p: f64,
    pub r_q: f64,
    /// `distance - r_p - r_q`
    pub slack: f64,
}

/// Strict disjointness with a margin relative to the pair distance; tangent
/// disks do not count.
#[inline]
fn is_disjoint(slack: f64, distance: f64) -> bool {
    slack > TOL_EQ * distance
}

fn nearest_radii(set: &PointSet) -> Vec<f64> {
    let n = set.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let a = set.point(i);
            (0..n)
                .filter(|&j| j != i)
                .map(|j| crate::geometry::dist(a, set.point(j)))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

pub fn disk_system(set: &PointSet) -> Result<DiskSystem<'_>> {
    if set.len() < 2 {
        return Err(Error::InvalidInput(
            "disk system needs at least 2 points".into(),
        ));
    }
    Ok(DiskSystem {
        source: set,
        radii: nearest_radii(set),
    })
}

fn max_slack_pair(disks: &DiskSystem) -> Option<DisjointPair> {
    let n = disks.radii.len();
    (0..n)
        .into_par_iter()
        .filter_map(|p| {
            let mut best: Option<DisjointPair> = None;
            for q in (p + 1)..n {
                let cand = disks.pair(p, q);
                if is_disjoint(cand.slack, cand.distance)
                    && best.is_none_or(|b| cand.slack > b.slack)
                {
                    best = Some(cand);
                }
            }
            best
        })
        // rows arrive in p order, so keeping the earlier one on ties is lexicographic
        .reduce_with(|a, b| if b.slack > a.slack { b } else { a })
}

/// The disjoint pair of maximum slack, or `None` when all disks meet.
pub fn find_disjoint_pair(set: &PointSet) -> Result<Option<DisjointPair>> {
    let disks = disk_system(set)?;
    Ok(max_slack_pair(&disks))
}

/// Search only the first `m` points, measuring radii within that prefix.
///
/// The returned pair's radii and slack are re-measured against the whole set;
/// they can only improve. For planar sets with `m >= 12` a pair always
/// exists, so a miss is reported as [`Error::Counterexample`] carrying the
/// prefix. In higher dimensions no prefix size is known to suffice and a miss
/// is an ordinary [`Error::NoDisjointPair`].
pub fn find_disjoint_pair_prefix(set: &PointSet, m: usize) -> Result<DisjointPair> {
    let n = set.len();
    if m < 2 || m > n {
        return Err(Error::InvalidInput(format!(
            "prefix size {m} must lie in [2, {n}]"
        )));
    }
    let prefix_indices: Vec<usize> = (0..m).collect();
    let prefix = set.subset(&prefix_indices)?;
    let local = disk_system(&prefix)?;
    let Some(found) = max_slack_pair(&local) else {
        return if set.dim() == 2 && m >= 12 {
            Err(Error::Counterexample {
                points: prefix.to_vecs(),
            })
        } else {
            Err(Error::NoDisjointPair)
        };
    };
    let radius_in_full = |p: usize| {
        let a = set.point(p);
        (0..n)
            .filter(|&j| j != p)
            .map(|j| crate::geometry::dist(a, set.point(j)))
            .fold(f64::INFINITY, f64::min)
    };
    let r_p = radius_in_full(found.p);
    let r_q = radius_in_full(found.q);
    Ok(DisjointPair {
        r_p,
        r_q,
        slack: found.distance - r_p - r_q,
        ..found
    })
}

/// Number of unordered pairs with strictly disjoint disks.
pub fn count_disjoint_pairs(set: &PointSet) -> Result<usize> {
    let disks = disk_system(set)?;
    let n = set.len();
    Ok((0..n)
        .into_par_iter()
        .map(|p| {
            ((p + 1)..n)
                .filter(|&q| {
                    let d = set.dist(p, q);
                    is_disjoint(d - disks.radii[p] - disks.radii[q], d)
                })
                .count()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate;
    use approx::assert_relative_eq;

    fn set(points: &[[f64; 2]]) -> PointSet {
        validate(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn equilateral() -> PointSet {
        set(&[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]])
    }

    fn six_and_six() -> PointSet {
        // two hexagons of radius 0.5, centres 100 apart
        let mut pts = Vec::new();
        for cx in [0.0, 100.0] {
            for k in 0..6 {
                let t = k as f64 * std::f64::consts::PI / 3.0;
                pts.push([cx + 0.5 * t.cos(), 0.5 * t.sin()]);
            }
        }
        set(&pts)
    }

    #[test]
    fn radii_examples() {
        let line = set(&[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]);
        assert_eq!(disk_system(&line).unwrap().radii, vec![1.0, 1.0, 2.0]);

        let tri = equilateral();
        for r in disk_system(&tri).unwrap().radii {
            assert_relative_eq!(r, 1.0, max_relative = 1e-12);
        }

        let square = set(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert_eq!(disk_system(&square).unwrap().radii, vec![1.0; 4]);

        assert!(disk_system(&set(&[[0.0, 0.0]])).is_err());
    }

    #[test]
    fn pair_examples() {
        let clusters = set(&[[0.0, 0.0], [0.0, 1.0], [10.0, 0.0], [10.0, 1.0]]);
        let pair = find_disjoint_pair(&clusters).unwrap().unwrap();
        // the diagonal pair beats the horizontal one: sqrt(101) - 2 > 10 - 2
        assert_eq!((pair.p, pair.q), (0, 3));
        assert_eq!(pair.slack, 101f64.sqrt() - 2.0);
        let d = disk_system(&clusters).unwrap();
        assert_eq!(d.slack(0, 2), 8.0);

        assert!(find_disjoint_pair(&equilateral()).unwrap().is_none());

        // tangent disks are not disjoint
        let line = set(&[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]);
        assert!(find_disjoint_pair(&line).unwrap().is_none());
    }

    #[test]
    fn counts() {
        assert_eq!(count_disjoint_pairs(&equilateral()).unwrap(), 0);
        assert_eq!(count_disjoint_pairs(&six_and_six()).unwrap(), 36);
    }

    #[test]
    fn prefix_two_clusters() {
        let s = six_and_six();
        let pair = find_disjoint_pair_prefix(&s, 12).unwrap();
        assert!(pair.p < 6 && pair.q >= 6);
        assert!(pair.slack > 90.0);
    }

    #[test]
    fn prefix_ignores_points_beyond_m_but_rescores_against_them() {
        // first 12: a 3x3 unit grid, two interior points, and a far outlier
        let mut pts: Vec<[f64; 2]> = (0..9).map(|k| [(k % 3) as f64, (k / 3) as f64]).collect();
        pts.push([0.5, 0.5]);
        pts.push([1.5, 1.5]);
        pts.push([100.0, 0.0]);
        // 8 more points, a far pair of clusters that dominates the full-set search
        for k in 0..4 {
            pts.push([-500.0, k as f64]);
            pts.push([500.0, k as f64]);
        }
        let s = set(&pts);
        let prefix = s.subset(&(0..12).collect::<Vec<_>>()).unwrap();
        let local = find_disjoint_pair(&prefix).unwrap().unwrap();
        let global = find_disjoint_pair(&s).unwrap().unwrap();
        assert!(global.p >= 12);

        let pair = find_disjoint_pair_prefix(&s, 12).unwrap();
        assert_eq!((pair.p, pair.q), (local.p, local.q));
        let full = disk_system(&s).unwrap();
        assert_eq!(pair, full.pair(local.p, local.q));
        assert!(pair.slack >= local.slack && pair.slack > 0.0);
    }

    #[test]
    fn prefix_errors() {
        let tri = equilateral();
        assert!(matches!(
            find_disjoint_pair_prefix(&tri, 3),
            Err(Error::NoDisjointPair)
        ));
        assert!(find_disjoint_pair_prefix(&tri, 4).is_err());
        assert!(find_disjoint_pair_prefix(&tri, 1).is_err());
    }

    #[test]
    fn disk_dump_schema() {
        let s = set(&[[0.0, 0.0], [2.0, 0.0]]);
        let json = disk_system(&s).unwrap().to_json().unwrap();
        assert_eq!(
            json,
            r#"[{"index":0,"center":[0.0,0.0],"radius":2.0},{"index":1,"center":[2.0,0.0],"radius":2.0}]"#
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cloud(range: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec<f64>>> {
            prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), range)
        }

        proptest! {
            #[test]
            fn radii_shrink_in_supersets(pts in cloud(3..25), split in 2usize..25) {
                let Ok(big) = validate(pts) else { return Ok(()) };
                let m = split.min(big.len());
                let small = big.subset(&(0..m).collect::<Vec<_>>()).unwrap();
                let rs = disk_system(&small).unwrap().radii;
                let rb = disk_system(&big).unwrap().radii;
                for i in 0..m {
                    prop_assert!(rb[i] <= rs[i]);
                }
            }

            #[test]
            fn slack_symmetric_and_radius_minimal(pts in cloud(2..20)) {
                let Ok(s) = validate(pts) else { return Ok(()) };
                let d = disk_system(&s).unwrap();
                for p in 0..s.len() {
                    prop_assert!(d.radii[p] > 0.0);
                    for q in 0..s.len() {
                        if p != q {
                            prop_assert_eq!(d.slack(p, q), d.slack(q, p));
                            prop_assert!(d.radii[p] <= s.dist(p, q));
                        }
                    }
                }
            }

            #[test]
            fn count_ignores_order(pts in cloud(2..30)) {
                let Ok(s) = validate(pts.clone()) else { return Ok(()) };
                let rev = validate(pts.into_iter().rev().collect()).unwrap();
                prop_assert_eq!(count_disjoint_pairs(&s).unwrap(), count_disjoint_pairs(&rev).unwrap());
            }
        }
    }
}
