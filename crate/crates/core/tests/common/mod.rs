//! Brute-force oracles shared by the integration tests. None of these reuse
//! the library's miniball, clique expansion or reduction code.
#![allow(dead_code)]

use cechsnap::simplicial::Vertex;
use cechsnap::{Flavor, PointCloud, Simplex};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, d: usize, side: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.random::<f64>() * side).collect())
        .collect()
}

pub fn random_cloud(rng: &mut ChaCha8Rng, n: usize, d: usize, side: f64) -> PointCloud {
    PointCloud::from_rows(random_points(rng, n, d, side)).unwrap()
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) <= k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// Smallest enclosing radius by enumerating every candidate support set of
/// at most d + 1 points, taking its circumcentre in the affine hull
/// (least-squares via SVD), and keeping the smallest ball covering all points.
pub fn brute_enclosing_radius(points: &[Vec<f64>]) -> f64 {
    let d = points[0].len();
    let n = points.len();
    let scale = 1.0
        + points
            .iter()
            .flat_map(|p| p.iter())
            .fold(0.0f64, |a, x| a.max(x.abs()));
    let tol = 1e-9 * scale;
    let mut best = f64::INFINITY;
    for support in subsets_up_to(n, d + 1) {
        let base = &points[support[0]];
        let k = support.len() - 1;
        let center: Vec<f64> = if k == 0 {
            base.clone()
        } else {
            let mut a = DMatrix::<f64>::zeros(k, d);
            let mut b = DVector::<f64>::zeros(k);
            for (row, &i) in support[1..].iter().enumerate() {
                let mut sq = 0.0;
                for c in 0..d {
                    let v = points[i][c] - base[c];
                    a[(row, c)] = 2.0 * v;
                    sq += v * v;
                }
                b[row] = sq;
            }
            // minimum-norm solution lies in the span of the directions
            let svd = a.svd(true, true);
            let Ok(x) = svd.solve(&b, 1e-12) else { continue };
            (0..d).map(|c| base[c] + x[c]).collect()
        };
        let dist = |p: &Vec<f64>| -> f64 {
            p.iter().zip(&center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
        };
        let r = dist(base);
        if support.iter().any(|&i| (dist(&points[i]) - r).abs() > tol) {
            continue;
        }
        if points.iter().all(|p| dist(p) <= r + tol) {
            best = best.min(r);
        }
    }
    best
}

pub fn brute_rips_radius(points: &[Vec<f64>]) -> f64 {
    let mut best = 0.0f64;
    for a in points {
        for b in points {
            let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
            best = best.max(d);
        }
    }
    best / 2.0
}

/// Every subset of at most max_dim + 1 points with radius ≤ r_max, sorted
/// lexicographically, with the oracle radius attached.
pub fn brute_filtration(cloud: &PointCloud, flavor: Flavor, max_dim: usize, r_max: f64) -> Vec<(Simplex, f64)> {
    let pts: Vec<Vec<f64>> = cloud.points().iter().map(|p| p.coords().to_vec()).collect();
    let mut out = Vec::new();
    for subset in subsets_up_to(pts.len(), max_dim + 1) {
        let sel: Vec<Vec<f64>> = subset.iter().map(|&i| pts[i].clone()).collect();
        let r = match flavor {
            Flavor::Cech => brute_enclosing_radius(&sel),
            Flavor::Rips => brute_rips_radius(&sel),
        };
        if r <= r_max + 1e-9 {
            let s = Simplex::new(subset.iter().map(|&i| i as Vertex).collect()).unwrap();
            out.push((s, r));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A random p-cycle: the boundary of a random (p+1)-chain on `n_vertices`.
pub fn random_cycle(rng: &mut ChaCha8Rng, p: usize, n_vertices: u32, n_simplices: usize) -> cechsnap::Chain {
    let mut simplices = Vec::new();
    for _ in 0..n_simplices {
        let mut vs: Vec<Vertex> = Vec::new();
        while vs.len() < p + 2 {
            let v = rng.random_range(0..n_vertices);
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        simplices.push(Simplex::new(vs).unwrap());
    }
    cechsnap::Chain::new(p + 1, simplices).unwrap().boundary().unwrap()
}
