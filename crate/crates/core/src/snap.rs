//! Cubical grid partitions and snap complexes.
//!
//! A [`GridPartition`] of mesh ε tiles R^d by half-open cubes of side ε/√d,
//! so every cell has diameter ε. The snap complex at radius `s` is the image
//! of the sublevel complex under the map sending each point to its cell.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointCloud};
use crate::persistence::StaticComplex;
use crate::simplicial::{Filtration, Simplex, Vertex};
use crate::RADIUS_TOL;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPartition {
    epsilon: f64,
    dim: usize,
    offset: Vec<f64>,
}

impl GridPartition {
    /// Grid with mesh `epsilon` in R^dim, anchored at the origin.
    pub fn new(epsilon: f64, dim: usize) -> Result<Self> {
        Self::with_offset(epsilon, vec![0.0; dim])
    }

    pub fn with_offset(epsilon: f64, offset: Vec<f64>) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!("mesh must be positive, got {epsilon}")));
        }
        if offset.is_empty() {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if let Some(index) = offset.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(GridPartition {
            epsilon,
            dim: offset.len(),
            offset,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    /// Side length ε/√d of every cell.
    pub fn cell_side(&self) -> f64 {
        self.epsilon / (self.dim as f64).sqrt()
    }

    pub fn cell_of(&self, p: &Point) -> Result<CellId> {
        cell_of(p, self)
    }
}

/// Integer lattice coordinates of a grid cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId(pub Vec<i64>);

/// Cell containing `p`: component-wise ⌊(x − offset)·√d/ε⌋.
pub fn cell_of(p: &Point, grid: &GridPartition) -> Result<CellId> {
    if p.dim() != grid.dim {
        return Err(Error::DimensionMismatch {
            expected: grid.dim,
            found: p.dim(),
        });
    }
    let scale = (grid.dim as f64).sqrt() / grid.epsilon;
    p.coords()
        .iter()
        .zip(&grid.offset)
        .enumerate()
        .map(|(index, (x, o))| {
            let k = ((x - o) * scale).floor();
            if !k.is_finite() || k.abs() >= i64::MAX as f64 {
                return Err(Error::NonFinite { index });
            }
            Ok(k as i64)
        })
        .collect::<Result<Vec<_>>>()
        .map(CellId)
}

/// The image of a sublevel complex under the cell map.
#[derive(Clone, Debug, PartialEq)]
pub struct SnapComplex {
    /// Occupied cells; vertex `i` of `complex` is `cells[i]`.
    pub cells: Vec<CellId>,
    pub complex: StaticComplex,
    /// Radius of the sublevel complex the image was taken of.
    pub s: f64,
}

impl SnapComplex {
    pub fn betti(&self, p: usize) -> usize {
        crate::persistence::betti_of_static(&self.complex, p)
    }
}

/// Builds Q_s: a set of distinct cells spans a simplex iff some simplex of the
/// sublevel complex at `s` has exactly one vertex in each of them. Only the
/// `max_dim`-skeleton of Q_s is produced.
pub fn snap_complex(
    f: &Filtration,
    cloud: &PointCloud,
    s: f64,
    grid: &GridPartition,
) -> Result<SnapComplex> {
    if s > f.r_max() + RADIUS_TOL {
        return Err(Error::InvalidParameter(format!(
            "snap radius {s} exceeds filtration r_max {}",
            f.r_max()
        )));
    }
    let point_cells = cloud
        .points()
        .iter()
        .map(|p| cell_of(p, grid))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<CellId> = point_cells
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cell_index: BTreeMap<&CellId, Vertex> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i as Vertex))
        .collect();
    let vertex_cell: Vec<Vertex> = point_cells.iter().map(|c| cell_index[c]).collect();

    let mut images = BTreeSet::new();
    for e in f.sublevel(s) {
        let mut img: Vec<Vertex> = e
            .simplex
            .vertices()
            .iter()
            .map(|&v| {
                vertex_cell
                    .get(v as usize)
                    .copied()
                    .ok_or_else(|| Error::InvalidParameter(format!("vertex {v} not in cloud")))
            })
            .collect::<Result<_>>()?;
        img.sort_unstable();
        img.dedup();
        images.insert(Simplex::new(img)?);
    }
    // images of faces are images of faces, so the result is already closed
    let complex = StaticComplex::new(images)?;
    Ok(SnapComplex { cells, complex, s })
}

/// C(ε, d) = ⌈(3 + 4√d/ε)^d⌉, the packing count of cells near a fixed cell.
pub fn bound_constant(epsilon: f64, d: usize) -> Result<u64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let base = 3.0 + 4.0 * (d as f64).sqrt() / epsilon;
    let c = base.powi(d as i32).ceil();
    Ok(if c >= u64::MAX as f64 { u64::MAX } else { c as u64 })
}

/// Outcome of [`theorem_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremBound {
    /// binom(C, p)·n, saturated at `u64::MAX`.
    Bound(u64),
    /// p ≥ d: persistent Betti numbers vanish and the bound is not stated.
    NotApplicable,
}

impl TheoremBound {
    pub fn value(self) -> Option<u64> {
        match self {
            TheoremBound::Bound(v) => Some(v),
            TheoremBound::NotApplicable => None,
        }
    }
}

/// binom(C(ε,d), p) · n, saturating at `u64::MAX`.
pub fn theorem_bound(n: u64, p: usize, epsilon: f64, d: usize) -> Result<TheoremBound> {
    let c = bound_constant(epsilon, d)?;
    if p >= d {
        return Ok(TheoremBound::NotApplicable);
    }
    Ok(TheoremBound::Bound(saturating_mul(binomial(c, p as u64), n)))
}

fn saturating_mul(a: u64, b: u64) -> u64 {
    a.saturating_mul(b)
}

/// binom(n, k), saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact: acc·(n−i) is divisible by i+1 at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u64::MAX,
        };
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn cell_of_examples() {
        let g = GridPartition::new(0.1, 2).unwrap();
        assert!((g.cell_side() - 0.070_710_678).abs() < 1e-8);
        assert_eq!(cell_of(&point(&[0.0, 0.0]), &g).unwrap(), CellId(vec![0, 0]));
        assert_eq!(cell_of(&point(&[0.071, 0.0]), &g).unwrap(), CellId(vec![1, 0]));
        assert_eq!(cell_of(&point(&[-0.01, 0.0]), &g).unwrap(), CellId(vec![-1, 0]));
        assert!(cell_of(&point(&[0.0]), &g).is_err());
        let g3 = GridPartition::new(1.0, 3).unwrap();
        assert_eq!(cell_of(&point(&[0.0, 0.0, 0.0]), &g3).unwrap(), CellId(vec![0, 0, 0]));
    }

    #[test]
    fn offset_shifts_cells() {
        let g = GridPartition::with_offset(0.1, vec![0.05, 0.0]).unwrap();
        assert_eq!(cell_of(&point(&[0.071, 0.0]), &g).unwrap(), CellId(vec![0, 0]));
        assert!(GridPartition::with_offset(0.0, vec![0.0]).is_err());
        assert!(GridPartition::with_offset(0.1, vec![]).is_err());
    }

    #[test]
    fn bound_constant_values() {
        for d in 1..=4 {
            let eps = 4.0 * (d as f64).sqrt();
            assert_eq!(bound_constant(eps, d).unwrap(), 4u64.pow(d as u32));
        }
        assert_eq!(bound_constant(0.2, 2).unwrap(), 979);
        let mut prev = u64::MAX;
        for eps in [0.1, 0.2, 0.5, 1.0, 2.0, 5.0] {
            let c = bound_constant(eps, 3).unwrap();
            assert!(c <= prev);
            prev = c;
        }
        assert!(bound_constant(-1.0, 2).is_err());
        assert!(bound_constant(0.1, 0).is_err());
    }

    #[test]
    fn theorem_bound_values() {
        let eps = 4.0 * 2f64.sqrt();
        assert_eq!(theorem_bound(10, 0, eps, 2).unwrap(), TheoremBound::Bound(10));
        assert_eq!(theorem_bound(10, 1, eps, 2).unwrap(), TheoremBound::Bound(160));
        assert_eq!(theorem_bound(10, 2, eps, 2).unwrap(), TheoremBound::NotApplicable);
        assert_eq!(theorem_bound(10, 5, 0.2, 3).unwrap(), TheoremBound::NotApplicable);
        // huge values saturate
        assert_eq!(theorem_bound(u64::MAX, 1, 0.2, 2).unwrap(), TheoremBound::Bound(u64::MAX));
        assert_eq!(theorem_bound(10, 7, 1e-3, 8).unwrap(), TheoremBound::Bound(u64::MAX));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(16, 1), 16);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(979, 0), 1);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
        assert_eq!(binomial(1000, 500), u64::MAX);
    }
}
