//! Drivers for the snap-complex inequality, the packing bound and the
//! splitting measurement. Each run is single-threaded and deterministic.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::PointCloud;
use crate::persistence::{reduce, PersistenceDiagram};
use crate::simplicial::{build_filtration, BuildOptions, Filtration, Flavor};
use crate::snap::{bound_constant, snap_complex, theorem_bound, GridPartition, TheoremBound};
use crate::{DEFAULT_SIMPLEX_BUDGET, RADIUS_TOL};

use super::report::{Assertion, ExperimentReport, ReportParams, SplitReport};

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub epsilon: f64,
    pub p_max: usize,
    pub flavor: Flavor,
    pub budget: usize,
    /// Offset of the primary grid; zero when `None`.
    pub grid_offset: Option<Vec<f64>>,
    /// Extra grids with seeded random offsets, each checked separately.
    pub random_offsets: usize,
    /// Seed recorded in the report and used for random offsets.
    pub seed: Option<u64>,
}

impl CheckConfig {
    pub fn new(epsilon: f64, p_max: usize, flavor: Flavor) -> Self {
        CheckConfig {
            epsilon,
            p_max,
            flavor,
            budget: DEFAULT_SIMPLEX_BUDGET,
            grid_offset: None,
            random_offsets: 0,
            seed: None,
        }
    }

    pub fn with_grid(mut self, grid: &GridPartition) -> Self {
        self.grid_offset = Some(grid.offset().to_vec());
        self
    }

    fn params(&self, cloud: &PointCloud) -> ReportParams {
        ReportParams {
            n: cloud.len(),
            d: cloud.dim(),
            epsilon: self.epsilon,
            p_max: Some(self.p_max),
            flavor: Some(self.flavor),
            seed: self.seed,
            budget: self.budget,
            ..ReportParams::default()
        }
    }

    fn grids(&self, d: usize) -> Result<Vec<GridPartition>> {
        let base = self.grid_offset.clone().unwrap_or_else(|| vec![0.0; d]);
        if base.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: base.len(),
            });
        }
        let mut grids = vec![GridPartition::with_offset(self.epsilon, base)?];
        let side = grids[0].cell_side();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.unwrap_or(0));
        for _ in 0..self.random_offsets {
            let offset = (0..d).map(|_| rng.random::<f64>() * side).collect();
            grids.push(GridPartition::with_offset(self.epsilon, offset)?);
        }
        Ok(grids)
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    Ok(())
}

/// Filtration to radius 1 + ε with simplices up to dimension p_max + 1.
fn filtration_and_diagram(cloud: &PointCloud, cfg: &CheckConfig) -> Result<(Filtration, PersistenceDiagram)> {
    check_epsilon(cfg.epsilon)?;
    let f = build_filtration(
        cloud,
        cfg.flavor,
        cfg.p_max + 1,
        1.0 + cfg.epsilon,
        &BuildOptions { budget: cfg.budget },
    )?;
    let dgm = reduce(&f);
    Ok((f, dgm))
}

fn persistent_counts(dgm: &PersistenceDiagram, p_max: usize, epsilon: f64) -> Result<Vec<u64>> {
    (0..=p_max)
        .map(|p| Ok(dgm.persistent_betti(p, 1.0, 1.0 + epsilon)? as u64))
        .collect()
}

/// Checks β_p(K_1, K_{1+ε}) ≤ β_p(Q_1) for every p ≤ p_max on every grid.
/// β_p(Q_{1+ε}) is reported alongside but never asserted.
pub fn run_corollary_check(cloud: &PointCloud, cfg: &CheckConfig) -> Result<ExperimentReport> {
    let (f, dgm) = filtration_and_diagram(cloud, cfg)?;
    let eps = cfg.epsilon;
    let lhs = persistent_counts(&dgm, cfg.p_max, eps)?;

    let mut metrics = BTreeMap::new();
    metrics.insert("f_vector_at_1".into(), json!(f.f_vector(1.0)));
    metrics.insert("f_vector_at_1_plus_eps".into(), json!(f.f_vector(1.0 + eps)));
    metrics.insert("persistent_betti".into(), json!(lhs));

    let mut assertions = Vec::new();
    let mut grid_metrics = Vec::new();
    for (g, grid) in cfg.grids(cloud.dim())?.iter().enumerate() {
        let q1 = snap_complex(&f, cloud, 1.0, grid)?;
        let q1e = snap_complex(&f, cloud, 1.0 + eps, grid)?;
        let q1_betti: Vec<u64> = (0..=cfg.p_max).map(|p| q1.betti(p) as u64).collect();
        let q1e_betti: Vec<u64> = (0..=cfg.p_max).map(|p| q1e.betti(p) as u64).collect();
        for p in 0..=cfg.p_max {
            assertions.push(
                Assertion::at_most("persistent_betti <= snap_betti_q1", Some(p), lhs[p], q1_betti[p])
                    .with_detail(format!("grid {g}")),
            );
        }
        grid_metrics.push(json!({
            "offset": grid.offset(),
            "cells": q1.cells.len(),
            "q1_f_vector": q1.complex.f_vector(),
            "q1_betti": q1_betti,
            "q1_plus_eps_betti": q1e_betti,
        }));
    }
    metrics.insert("grids".into(), Value::Array(grid_metrics));

    Ok(ExperimentReport {
        name: "corollary-check".into(),
        params: cfg.params(cloud),
        metrics,
        assertions,
        durations: None,
    })
}

/// Checks β_p(K_1, K_{1+ε}) ≤ binom(C(ε,d), p)·n for p < d, p ≤ p_max.
pub fn run_theorem_check(cloud: &PointCloud, cfg: &CheckConfig) -> Result<ExperimentReport> {
    let (f, dgm) = filtration_and_diagram(cloud, cfg)?;
    let eps = cfg.epsilon;
    let d = cloud.dim();
    let n = cloud.len() as u64;
    let lhs = persistent_counts(&dgm, cfg.p_max, eps)?;

    let mut assertions = Vec::new();
    let mut ratios = Vec::new();
    for (p, &measured) in lhs.iter().enumerate() {
        match theorem_bound(n, p, eps, d)? {
            TheoremBound::Bound(bound) => {
                ratios.push(json!(measured as f64 / bound as f64));
                assertions.push(Assertion::at_most("persistent_betti <= theorem_bound", Some(p), measured, bound));
            }
            TheoremBound::NotApplicable => {
                ratios.push(Value::Null);
                assertions.push(Assertion::not_applicable(
                    "persistent_betti <= theorem_bound",
                    Some(p),
                    measured,
                    "p >= d",
                ));
            }
        }
    }

    let mut metrics = BTreeMap::new();
    metrics.insert("bound_constant".into(), json!(bound_constant(eps, d)?));
    metrics.insert("f_vector_at_1".into(), json!(f.f_vector(1.0)));
    metrics.insert("f_vector_at_1_plus_eps".into(), json!(f.f_vector(1.0 + eps)));
    metrics.insert("persistent_betti".into(), json!(lhs));
    metrics.insert("ratio_to_bound".into(), Value::Array(ratios));

    Ok(ExperimentReport {
        name: "theorem-check".into(),
        params: cfg.params(cloud),
        metrics,
        assertions,
        durations: None,
    })
}

#[derive(Clone, Debug)]
pub struct SplitConfig {
    pub epsilon: f64,
    pub p: usize,
    /// The hyperplane is x₀ = axis_value; points with x₀ < axis_value go left.
    pub axis_value: f64,
    pub flavor: Flavor,
    pub budget: usize,
    pub seed: Option<u64>,
}

impl SplitConfig {
    pub fn new(epsilon: f64, p: usize, axis_value: f64) -> Self {
        SplitConfig {
            epsilon,
            p,
            axis_value,
            flavor: Flavor::Cech,
            budget: DEFAULT_SIMPLEX_BUDGET,
            seed: None,
        }
    }
}

/// Unreduced β_p(K_1, K_{1+ε}); zero for an empty cloud.
fn unreduced_persistent(cloud: &PointCloud, cfg: &SplitConfig) -> Result<u64> {
    if cloud.is_empty() {
        return Ok(0);
    }
    let f = build_filtration(
        cloud,
        cfg.flavor,
        cfg.p + 1,
        1.0 + cfg.epsilon,
        &BuildOptions { budget: cfg.budget },
    )?;
    Ok(reduce(&f).unreduced().persistent_betti(cfg.p, 1.0, 1.0 + cfg.epsilon)? as u64)
}

/// Compares the persistent Betti number of a cloud with the sum over its two
/// halves. The simplex-count bound over the strip M is asserted; the ratio
/// difference/|M| is only reported.
pub fn run_split_experiment(cloud: &PointCloud, cfg: &SplitConfig) -> Result<SplitReport> {
    check_epsilon(cfg.epsilon)?;
    if !cfg.axis_value.is_finite() {
        return Err(Error::InvalidParameter("axis value must be finite".into()));
    }
    let eps = cfg.epsilon;
    let x0 = |i: usize| cloud.point(i).coords()[0];
    let (left, right): (Vec<usize>, Vec<usize>) = (0..cloud.len()).partition(|&i| x0(i) < cfg.axis_value);
    let strip: Vec<usize> = (0..cloud.len())
        .filter(|&i| (x0(i) - cfg.axis_value).abs() <= 2.0 * (1.0 + eps) + RADIUS_TOL)
        .collect();

    let beta_all = unreduced_persistent(cloud, cfg)?;
    let beta_left = unreduced_persistent(&cloud.select(&left), cfg)?;
    let beta_right = unreduced_persistent(&cloud.select(&right), cfg)?;
    let difference = (beta_all as i128 - beta_left as i128 - beta_right as i128).unsigned_abs() as u64;

    let naive_bound = if strip.is_empty() {
        0
    } else {
        let f = build_filtration(
            &cloud.select(&strip),
            cfg.flavor,
            cfg.p + 1,
            1.0 + eps,
            &BuildOptions { budget: cfg.budget },
        )?;
        (f.f_vector(1.0)[cfg.p] + f.f_vector(1.0 + eps)[cfg.p + 1]) as u64
    };
    let m = strip.len() as u64;
    let crude_bound = (0..cfg.p + 2)
        .try_fold(2u64, |acc, _| acc.checked_mul(m))
        .unwrap_or(u64::MAX);
    let ratio = (m > 0).then(|| difference as f64 / m as f64);

    Ok(SplitReport {
        name: "split".into(),
        params: ReportParams {
            n: cloud.len(),
            d: cloud.dim(),
            epsilon: eps,
            p: Some(cfg.p),
            flavor: Some(cfg.flavor),
            seed: cfg.seed,
            axis_value: Some(cfg.axis_value),
            budget: cfg.budget,
            ..ReportParams::default()
        },
        homology: "unreduced".into(),
        n_left: left.len(),
        n_right: right.len(),
        beta_all,
        beta_left,
        beta_right,
        difference,
        strip_size: strip.len(),
        naive_bound,
        crude_bound,
        ratio,
        assertions: vec![Assertion::at_most("difference <= naive_bound", Some(cfg.p), difference, naive_bound)],
        durations: None,
    })
}
