//! Experiment plumbing: CSV point clouds, the two named constructions,
//! seeded random clouds, and the drivers that check the persistence
//! inequalities and emit JSON reports.

pub mod constructions;
pub mod experiments;
pub mod io;
pub mod random;
pub mod report;

pub use constructions::{make_three_on_circle, make_two_triangles};
pub use experiments::{
    run_corollary_check, run_split_experiment, run_theorem_check, CheckConfig, SplitConfig,
};
pub use io::{load_points, parse_points, write_points};
pub use random::{generate_random, Model};
pub use report::{Assertion, ExperimentReport, Outcome, SplitReport};
