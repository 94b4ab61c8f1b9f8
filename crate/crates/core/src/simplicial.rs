//! Simplices and radius filtrations.
//!
//! Both builders enumerate cliques of the neighbour graph at `r_max` (pairs
//! whose half-distance is at most `r_max`) in increasing dimension. Every
//! Čech simplex is such a clique because the enclosing radius is at least
//! half the diameter, so the Čech builder only has to filter candidates by
//! their miniball radius.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{miniball, squared_distance, PointCloud};
use crate::{DEFAULT_SIMPLEX_BUDGET, RADIUS_TOL};

pub type Vertex = u32;

/// A simplex as a strictly increasing list of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("no vertices".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The codimension-one faces, each omitting one vertex. Empty for vertices.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Adds a vertex not already present.
    pub fn join(&self, v: Vertex) -> Result<Simplex> {
        match self.0.binary_search(&v) {
            Ok(_) => Err(Error::InvalidSimplex(format!("{v} already in {self}"))),
            Err(pos) => {
                let mut vs = self.0.clone();
                vs.insert(pos, v);
                Ok(Simplex(vs))
            }
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Which radius function defines the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Smallest enclosing ball radius.
    Cech,
    /// Half the diameter.
    Rips,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Cech => "cech",
            Flavor::Rips => "rips",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cech" | "čech" => Ok(Flavor::Cech),
            "rips" | "vr" => Ok(Flavor::Rips),
            other => Err(Error::InvalidParameter(format!("unknown flavor {other:?}"))),
        }
    }
}

impl Flavor {
    /// Radius of a point set under this flavor.
    pub fn radius<P: AsRef<[f64]>>(self, points: &[P]) -> Result<f64> {
        match self {
            Flavor::Cech => crate::geometry::min_enclosing_radius(points),
            Flavor::Rips => crate::geometry::rips_radius(points),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiltrationEntry {
    pub simplex: Simplex,
    pub value: f64,
}

/// Face-closed list of simplices sorted by (value, dimension, vertices).
#[derive(Clone, Debug)]
pub struct Filtration {
    entries: Vec<FiltrationEntry>,
    index: HashMap<Simplex, usize>,
    flavor: Flavor,
    max_dim: usize,
    r_max: f64,
}

fn entry_order(a: &FiltrationEntry, b: &FiltrationEntry) -> std::cmp::Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.simplex.dim().cmp(&b.simplex.dim()))
        .then_with(|| a.simplex.vertices().cmp(b.simplex.vertices()))
}

impl Filtration {
    /// Sorts and validates arbitrary entries.
    pub fn from_entries(
        mut entries: Vec<FiltrationEntry>,
        flavor: Flavor,
        max_dim: usize,
        r_max: f64,
    ) -> Result<Self> {
        entries.sort_by(entry_order);
        let index: HashMap<Simplex, usize> = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.simplex.clone(), i))
            .collect();
        if index.len() != entries.len() {
            return Err(Error::InvalidFiltration("duplicate simplex".into()));
        }
        let f = Filtration {
            entries,
            index,
            flavor,
            max_dim,
            r_max,
        };
        f.validate()?;
        Ok(f)
    }

    /// Checks face closure, monotone values, order, and the caps.
    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if !e.value.is_finite() {
                return Err(Error::InvalidFiltration(format!("{} has non-finite value", e.simplex)));
            }
            if e.simplex.dim() > self.max_dim {
                return Err(Error::InvalidFiltration(format!("{} exceeds max_dim", e.simplex)));
            }
            if e.value > self.r_max + RADIUS_TOL {
                return Err(Error::InvalidFiltration(format!("{} exceeds r_max", e.simplex)));
            }
            if i > 0 && entry_order(&self.entries[i - 1], e).is_gt() {
                return Err(Error::InvalidFiltration("entries out of order".into()));
            }
            for face in e.simplex.facets() {
                match self.index.get(&face) {
                    None => return Err(Error::NotFaceClosed(face.to_string())),
                    Some(&j) if j >= i => {
                        return Err(Error::InvalidFiltration(format!(
                            "face {face} does not precede {}",
                            e.simplex
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[FiltrationEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn value_of(&self, s: &Simplex) -> Option<f64> {
        self.index_of(s).map(|i| self.entries[i].value)
    }

    /// Entries of the closed sublevel complex at `r` (with tolerance).
    pub fn sublevel(&self, r: f64) -> impl Iterator<Item = &FiltrationEntry> + '_ {
        let end = self.entries.partition_point(|e| e.value <= r + RADIUS_TOL);
        self.entries[..end].iter()
    }

    /// Number of p-simplices with value at most `r`, for p = 0..=max_dim.
    pub fn f_vector(&self, r: f64) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for e in self.sublevel(r) {
            counts[e.simplex.dim()] += 1;
        }
        counts
    }

    /// Distinct filtration values in increasing order.
    pub fn values(&self) -> Vec<f64> {
        let mut vs: Vec<f64> = self.entries.iter().map(|e| e.value).collect();
        vs.dedup();
        vs
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Maximum number of simplices; larger builds fail with [`Error::BudgetExceeded`].
    pub budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            budget: DEFAULT_SIMPLEX_BUDGET,
        }
    }
}

pub fn build_cech_filtration(cloud: &PointCloud, max_dim: usize, r_max: f64) -> Result<Filtration> {
    build_filtration(cloud, Flavor::Cech, max_dim, r_max, &BuildOptions::default())
}

pub fn build_rips_filtration(cloud: &PointCloud, max_dim: usize, r_max: f64) -> Result<Filtration> {
    build_filtration(cloud, Flavor::Rips, max_dim, r_max, &BuildOptions::default())
}

/// All simplices of at most `max_dim + 1` vertices whose radius is at most `r_max`.
pub fn build_filtration(
    cloud: &PointCloud,
    flavor: Flavor,
    max_dim: usize,
    r_max: f64,
    opts: &BuildOptions,
) -> Result<Filtration> {
    if cloud.is_empty() {
        return Err(Error::EmptyInput("point cloud"));
    }
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(Error::InvalidParameter(format!("r_max must be positive, got {r_max}")));
    }
    let n = cloud.len();
    if n > Vertex::MAX as usize {
        return Err(Error::InvalidParameter("too many points".into()));
    }
    let coords: Vec<&[f64]> = cloud.points().iter().map(|p| p.coords()).collect();

    let mut half = vec![0.0; n * n];
    let mut upper: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let h = 0.5 * squared_distance(coords[i], coords[j]).sqrt();
            half[i * n + j] = h;
            half[j * n + i] = h;
            if h <= r_max + RADIUS_TOL {
                upper[i].push(j as Vertex);
            }
        }
    }

    let mut expander = Expander {
        coords: &coords,
        half: &half,
        n,
        upper: &upper,
        flavor,
        max_dim,
        r_max,
        budget: opts.budget,
        out: Vec::new(),
    };
    for v in 0..n as Vertex {
        expander.emit(vec![v], 0.0)?;
        if max_dim > 0 {
            expander.expand(&mut vec![v], 0.0, &upper[v as usize])?;
        }
    }
    let mut entries = expander.out;

    if flavor == Flavor::Cech {
        lift_to_faces(&mut entries);
    }
    entries.sort_by(entry_order);
    let index = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.simplex.clone(), i))
        .collect();
    Ok(Filtration {
        entries,
        index,
        flavor,
        max_dim,
        r_max,
    })
}

struct Expander<'a> {
    coords: &'a [&'a [f64]],
    half: &'a [f64],
    n: usize,
    upper: &'a [Vec<Vertex>],
    flavor: Flavor,
    max_dim: usize,
    r_max: f64,
    budget: usize,
    out: Vec<FiltrationEntry>,
}

impl Expander<'_> {
    fn emit(&mut self, vertices: Vec<Vertex>, value: f64) -> Result<()> {
        if self.out.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        self.out.push(FiltrationEntry {
            simplex: Simplex::from_sorted(vertices),
            value,
        });
        Ok(())
    }

    /// Extends the clique `current` by each candidate (common upper neighbours).
    fn expand(&mut self, current: &mut Vec<Vertex>, value: f64, candidates: &[Vertex]) -> Result<()> {
        for (k, &c) in candidates.iter().enumerate() {
            let new_value = match self.flavor {
                Flavor::Rips => current
                    .iter()
                    .map(|&u| self.half[u as usize * self.n + c as usize])
                    .fold(value, f64::max),
                Flavor::Cech => {
                    let mut pts: Vec<&[f64]> =
                        current.iter().map(|&u| self.coords[u as usize]).collect();
                    pts.push(self.coords[c as usize]);
                    let dim = pts[0].len();
                    miniball(&pts, dim).radius.max(value)
                }
            };
            if new_value > self.r_max + RADIUS_TOL {
                continue;
            }
            current.push(c);
            self.emit(current.clone(), new_value)?;
            if current.len() <= self.max_dim {
                let next: Vec<Vertex> = intersect_sorted(&candidates[k + 1..], &self.upper[c as usize]);
                if !next.is_empty() {
                    self.expand(current, new_value, &next)?;
                }
            }
            current.pop();
        }
        Ok(())
    }
}

fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Raises each value to the maximum over its facets. Miniball radii of a
/// face and a coface can disagree in the last bits; this keeps the order valid.
fn lift_to_faces(entries: &mut [FiltrationEntry]) {
    entries.sort_by_key(|e| e.simplex.dim());
    let mut value_of: HashMap<Simplex, f64> = HashMap::with_capacity(entries.len());
    for e in entries.iter_mut() {
        let face_max = e
            .simplex
            .facets()
            .filter_map(|f| value_of.get(&f).copied())
            .fold(0.0, f64::max);
        e.value = e.value.max(face_max);
        value_of.insert(e.simplex.clone(), e.value);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(rows: &[&[f64]]) -> PointCloud {
        PointCloud::from_rows(rows.iter().map(|r| r.to_vec())).unwrap()
    }

    fn simplex(vs: &[Vertex]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn simplex_basics() {
        let s = simplex(&[2, 0, 1]);
        assert_eq!(s.vertices(), &[0, 1, 2]);
        assert_eq!(s.dim(), 2);
        let facets: Vec<_> = s.facets().collect();
        assert_eq!(facets, vec![simplex(&[1, 2]), simplex(&[0, 2]), simplex(&[0, 1])]);
        assert_eq!(Simplex::vertex(3).facets().count(), 0);
        assert!(Simplex::new(vec![1, 1]).is_err());
        assert!(Simplex::new(vec![]).is_err());
        assert_eq!(s.join(5).unwrap(), simplex(&[0, 1, 2, 5]));
        assert!(s.join(1).is_err());
        assert_eq!(s.to_string(), "{0,1,2}");
    }

    #[test]
    fn two_points_edge_at_midpoint_radius() {
        let c = cloud(&[&[0.0, 0.0], &[2.0, 0.0]]);
        for f in [build_cech_filtration(&c, 1, 1.0).unwrap(), build_rips_filtration(&c, 1, 1.0).unwrap()] {
            assert_eq!(f.len(), 3);
            assert_eq!(f.value_of(&simplex(&[0])), Some(0.0));
            assert!((f.value_of(&simplex(&[0, 1])).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn three_on_circle_cech_values() {
        let r = 1.05;
        let pts: Vec<Vec<f64>> = (0..3)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                vec![r * a.cos(), r * a.sin()]
            })
            .collect();
        let c = PointCloud::from_rows(pts).unwrap();
        let f = build_cech_filtration(&c, 2, 1.2).unwrap();
        assert_eq!(f.f_vector(1.2), vec![3, 3, 1]);
        let edge = f.value_of(&simplex(&[0, 1])).unwrap();
        assert!((edge - r * 3f64.sqrt() / 2.0).abs() < 1e-9);
        assert!((f.value_of(&simplex(&[0, 1, 2])).unwrap() - r).abs() < 1e-9);
    }

    #[test]
    fn rips_equilateral_and_square() {
        let h = 3f64.sqrt();
        let tri = cloud(&[&[0.0, 0.0], &[2.0, 0.0], &[1.0, h]]);
        let f = build_rips_filtration(&tri, 2, 1.0).unwrap();
        assert_eq!(f.f_vector(1.0), vec![3, 3, 1]);
        assert!(f.entries()[3..].iter().all(|e| (e.value - 1.0).abs() < 1e-12));
        // Čech: the triangle only enters at 2/sqrt(3)
        let fc = build_cech_filtration(&tri, 2, 1.0).unwrap();
        assert_eq!(fc.f_vector(1.0), vec![3, 3, 0]);

        let sq = cloud(&[&[0.0, 0.0], &[2.0, 0.0], &[2.0, 2.0], &[0.0, 2.0]]);
        let f = build_rips_filtration(&sq, 2, 1.0).unwrap();
        assert_eq!(f.f_vector(1.0), vec![4, 4, 0]);
        assert!(f.value_of(&simplex(&[0, 2])).is_none());
    }

    #[test]
    fn small_radius_gives_vertices_only() {
        let c = cloud(&[&[0.0], &[1.0], &[3.0]]);
        let f = build_cech_filtration(&c, 2, 0.4).unwrap();
        assert_eq!(f.f_vector(0.4), vec![3, 0, 0]);
    }

    #[test]
    fn closed_threshold_includes_r_max() {
        let c = cloud(&[&[0.0], &[2.0]]);
        let f = build_cech_filtration(&c, 1, 1.0).unwrap();
        assert_eq!(f.f_vector(1.0), vec![2, 1]);
    }

    #[test]
    fn builder_errors() {
        let empty = PointCloud::empty(2).unwrap();
        assert!(matches!(build_cech_filtration(&empty, 1, 1.0), Err(Error::EmptyInput(_))));
        let c = cloud(&[&[0.0], &[0.5], &[1.0], &[1.5]]);
        assert!(build_rips_filtration(&c, 1, 0.0).is_err());
        let err = build_filtration(&c, Flavor::Rips, 3, 5.0, &BuildOptions { budget: 5 }).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 5 });
    }

    #[test]
    fn from_entries_rejects_missing_faces() {
        let entries = vec![
            FiltrationEntry { simplex: simplex(&[0]), value: 0.0 },
            FiltrationEntry { simplex: simplex(&[0, 1]), value: 1.0 },
        ];
        assert!(matches!(
            Filtration::from_entries(entries, Flavor::Cech, 1, 1.0),
            Err(Error::NotFaceClosed(_))
        ));
    }

    #[test]
    fn flavor_parses() {
        assert_eq!("cech".parse::<Flavor>().unwrap(), Flavor::Cech);
        assert_eq!("Rips".parse::<Flavor>().unwrap(), Flavor::Rips);
        assert!("alpha".parse::<Flavor>().is_err());
    }
}
