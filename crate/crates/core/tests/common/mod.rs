//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use mstratio::{generate, GeneratorSpec, PointSet};

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Minimum spanning tree length by enumerating all `n^(n-2)` labelled trees
/// through their Prüfer sequences.
pub fn brute_force_mst(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    match n {
        0 | 1 => return 0.0,
        2 => return dist(&points[0], &points[1]),
        _ => {}
    }
    let mut seq = vec![0usize; n - 2];
    let mut best = f64::INFINITY;
    loop {
        best = best.min(prufer_tree_length(&seq, points));
        // odometer increment
        let mut k = 0;
        loop {
            if k == seq.len() {
                return best;
            }
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
    }
}

fn prufer_tree_length(seq: &[usize], points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut total = 0.0;
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        total += dist(&points[leaf], &points[s]);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    total + dist(&points[rest[0]], &points[rest[1]])
}

/// Max MST-ratio by enumerating every split, with Prüfer-enumerated trees.
pub fn brute_force_gamma(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    let w = brute_force_mst(points);
    let mut best = 0.0f64;
    for mask in 1u32..(1 << n) - 1 {
        let (blue, red): (Vec<Vec<f64>>, Vec<Vec<f64>>) = points
            .iter()
            .enumerate()
            .map(|(i, p)| (mask >> i & 1 == 1, p.clone()))
            .fold((vec![], vec![]), |(mut b, mut r), (is_blue, p)| {
                if is_blue {
                    b.push(p)
                } else {
                    r.push(p)
                }
                (b, r)
            });
        best = best.max((brute_force_mst(&red) + brute_force_mst(&blue)) / w);
    }
    best
}

pub fn uniform(n: usize, seed: u64) -> PointSet {
    generate(&GeneratorSpec::uniform(n, seed)).unwrap()
}
