//! Euclidean primitives: points, distances, smallest enclosing balls,
//! Vietoris–Rips radii and the Hausdorff distance between finite sets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seed for the permutation applied before the move-to-front recursion.
const MINIBALL_SEED: u64 = 0x5eed_ba11;

/// Relative slack on squared distances when testing ball membership inside
/// the miniball recursion.
const CONTAINS_SLACK: f64 = 1e-12;

/// A point in R^d with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("point with zero coordinates"));
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Ordered list of points sharing one ambient dimension. Indices are the
/// stable vertex identifiers used by every complex built from the cloud.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Point>,
}

impl PointCloud {
    /// An empty cloud in R^dim.
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Ok(PointCloud {
            dim,
            points: Vec::new(),
        })
    }

    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        let mut cloud = Self::empty(dim)?;
        for p in points {
            cloud.push(p)?;
        }
        Ok(cloud)
    }

    /// Builds a cloud from raw coordinate rows; the dimension is taken from the first row.
    pub fn from_rows<I, R>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: Into<Vec<f64>>,
    {
        let points = rows
            .into_iter()
            .map(|r| Point::new(r.into()))
            .collect::<Result<Vec<_>>>()?;
        let dim = points
            .first()
            .map(Point::dim)
            .ok_or(Error::EmptyInput("point cloud"))?;
        Self::new(dim, points)
    }

    pub fn push(&mut self, p: Point) -> Result<()> {
        check_dim(self.dim, p.dim())?;
        self.points.push(p);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    /// Sub-cloud made of the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> PointCloud {
        PointCloud {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Multiplies every coordinate by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<PointCloud> {
        let points = self
            .points
            .iter()
            .map(|p| Point::new(p.coords().iter().map(|c| c * factor).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointCloud {
            dim: self.dim,
            points,
        })
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn common_dim<P: AsRef<[f64]>>(points: &[P]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput("point set"))?;
    let dim = first.as_ref().len();
    for p in points {
        check_dim(dim, p.as_ref().len())?;
    }
    Ok(dim)
}

#[inline]
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Euclidean distance between two points of equal dimension.
pub fn distance(p: &Point, q: &Point) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    Ok(squared_distance(p.coords(), q.coords()).sqrt())
}

/// A closed ball; an empty support yields radius −1 and no center.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn empty() -> Self {
        Ball {
            center: Vec::new(),
            radius: -1.0,
        }
    }

    fn contains(&self, p: &[f64]) -> bool {
        if self.radius < 0.0 {
            return false;
        }
        let r2 = self.radius * self.radius;
        squared_distance(&self.center, p) <= r2 + CONTAINS_SLACK * (1.0 + r2)
    }
}

/// Smallest enclosing ball of a non-empty point set.
pub fn min_enclosing_ball<P: AsRef<[f64]>>(points: &[P]) -> Result<Ball> {
    let dim = common_dim(points)?;
    if let Some(index) = points
        .iter()
        .flat_map(|p| p.as_ref().iter())
        .position(|c| !c.is_finite())
    {
        return Err(Error::NonFinite { index });
    }
    let coords: Vec<&[f64]> = points.iter().map(|p| p.as_ref()).collect();
    Ok(miniball(&coords, dim))
}

/// Radius of the smallest enclosing ball, r(B).
pub fn min_enclosing_radius<P: AsRef<[f64]>>(points: &[P]) -> Result<f64> {
    Ok(min_enclosing_ball(points)?.radius)
}

/// Half of the largest pairwise distance; zero for a single point.
pub fn rips_radius<P: AsRef<[f64]>>(points: &[P]) -> Result<f64> {
    common_dim(points)?;
    Ok(0.5 * diameter(points))
}

pub(crate) fn diameter<P: AsRef<[f64]>>(points: &[P]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(squared_distance(a.as_ref(), b.as_ref()));
        }
    }
    best.sqrt()
}

/// Hausdorff distance: the larger of the two directed max-min distances.
pub fn hausdorff_distance<P: AsRef<[f64]>, Q: AsRef<[f64]>>(a: &[P], b: &[Q]) -> Result<f64> {
    let da = common_dim(a)?;
    let db = common_dim(b)?;
    check_dim(da, db)?;
    Ok(directed(a, b).max(directed(b, a)))
}

fn directed<P: AsRef<[f64]>, Q: AsRef<[f64]>>(from: &[P], to: &[Q]) -> f64 {
    from.iter()
        .map(|x| {
            to.iter()
                .map(|y| squared_distance(x.as_ref(), y.as_ref()))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
        .sqrt()
}

/// Move-to-front miniball over a seeded random permutation of the input.
pub(crate) fn miniball(points: &[&[f64]], dim: usize) -> Ball {
    match points.len() {
        0 => return Ball::empty(),
        1 => {
            return Ball {
                center: points[0].to_vec(),
                radius: 0.0,
            }
        }
        _ => {}
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(MINIBALL_SEED ^ points.len() as u64);
    order.shuffle(&mut rng);
    let mut support = Vec::with_capacity(dim + 1);
    let end = order.len();
    move_to_front(points, &mut order, end, &mut support, dim)
}

fn move_to_front(
    points: &[&[f64]],
    order: &mut [usize],
    end: usize,
    support: &mut Vec<usize>,
    dim: usize,
) -> Ball {
    let mut ball = ball_through(points, support);
    if support.len() == dim + 1 {
        return ball;
    }
    for i in 0..end {
        let idx = order[i];
        if !ball.contains(points[idx]) {
            support.push(idx);
            ball = move_to_front(points, order, i, support, dim);
            support.pop();
            order[..=i].rotate_right(1);
        }
    }
    ball
}

/// Smallest ball with every support point on its boundary: the circumsphere
/// of the support inside its affine hull. Affinely dependent support points
/// are dropped from the linear system and only enlarge the radius.
fn ball_through(points: &[&[f64]], support: &[usize]) -> Ball {
    let Some((&first, rest)) = support.split_first() else {
        return Ball::empty();
    };
    let origin = points[first];
    if rest.is_empty() {
        return Ball {
            center: origin.to_vec(),
            radius: 0.0,
        };
    }

    let dirs: Vec<Vec<f64>> = rest
        .iter()
        .map(|&i| points[i].iter().zip(origin).map(|(a, b)| a - b).collect())
        .collect();
    let k = dirs.len();
    // 2 <v_i, v_j> λ_j = |v_i|^2
    let mut system: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut row: Vec<f64> = (0..k).map(|j| 2.0 * dot(&dirs[i], &dirs[j])).collect();
            row.push(dot(&dirs[i], &dirs[i]));
            row
        })
        .collect();
    let lambda = solve_dropping_dependent(&mut system);

    let mut center = origin.to_vec();
    for (l, v) in lambda.iter().zip(&dirs) {
        for (c, x) in center.iter_mut().zip(v) {
            *c += l * x;
        }
    }
    let radius = support
        .iter()
        .map(|&i| squared_distance(&center, points[i]))
        .fold(0.0, f64::max)
        .sqrt();
    Ball { center, radius }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on an augmented k×(k+1)
/// system. Columns whose pivot vanishes get a zero coefficient.
fn solve_dropping_dependent(m: &mut [Vec<f64>]) -> Vec<f64> {
    let k = m.len();
    let scale = m
        .iter()
        .flat_map(|r| r[..k].iter())
        .fold(0.0f64, |a, v| a.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let eps = 1e-12 * scale;
    let mut pivot_row_of = vec![None; k];
    let mut row = 0;
    for col in 0..k {
        let Some(best) = (row..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
        else {
            break;
        };
        if m[best][col].abs() <= eps {
            continue;
        }
        m.swap(row, best);
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row {
                let factor = line[col] / pivot[col];
                if factor != 0.0 {
                    for (x, p) in line[col..=k].iter_mut().zip(&pivot[col..=k]) {
                        *x -= factor * p;
                    }
                }
            }
        }
        pivot_row_of[col] = Some(row);
        row += 1;
    }
    pivot_row_of
        .iter()
        .enumerate()
        .map(|(col, r)| r.map_or(0.0, |r| m[r][k] / m[r][col]))
        .collect()
}
