//! # cechsnap
//!
//! Čech and Vietoris–Rips filtrations of finite point sets, persistent Betti
//! numbers over Z/2, and snap complexes obtained by collapsing points that
//! share a cell of a cubical grid.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`] – distances, smallest enclosing balls, Rips radii, Hausdorff distance.
//! * [`simplicial`] – simplices and radius filtrations built by clique expansion.
//! * [`chains`] – Z/2 chain algebra: boundaries, stars, vertex gluing and sweep fillings.
//! * [`persistence`] – column reduction, Betti and persistent Betti numbers.
//! * [`snap`] – grid partitions, snap complexes and the packing bound.
//! * [`harness`] – point-cloud I/O, named constructions, random models and experiment reports.
//!
//! All radius comparisons use the absolute tolerance [`RADIUS_TOL`].

pub mod chains;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod persistence;
pub mod simplicial;
pub mod snap;

pub use chains::Chain;
pub use error::{Error, Result};
pub use geometry::{Point, PointCloud};
pub use persistence::{PersistenceDiagram, PersistencePair, StaticComplex};
pub use simplicial::{Filtration, FiltrationEntry, Flavor, Simplex};
pub use snap::{CellId, GridPartition, SnapComplex, TheoremBound};

/// Absolute tolerance used whenever a radius is compared against a threshold.
pub const RADIUS_TOL: f64 = 1e-9;

/// Default cap on the number of simplices a filtration build may produce.
pub const DEFAULT_SIMPLEX_BUDGET: usize = 2_000_000;
