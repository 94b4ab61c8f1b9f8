//! JSON report types. Field order is fixed by the struct layout and maps are
//! ordered, so a report serializes to the same bytes for the same inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::simplicial::Flavor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

/// One checked inequality `lhs <= rhs`, with both sides recorded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    pub lhs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<u64>,
    pub relation: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Assertion {
    pub fn at_most(name: impl Into<String>, p: Option<usize>, lhs: u64, rhs: u64) -> Self {
        Assertion {
            name: name.into(),
            p,
            lhs,
            rhs: Some(rhs),
            relation: "<=".into(),
            outcome: if lhs <= rhs { Outcome::Pass } else { Outcome::Fail },
            detail: None,
        }
    }

    pub fn not_applicable(name: impl Into<String>, p: Option<usize>, lhs: u64, why: &str) -> Self {
        Assertion {
            name: name.into(),
            p,
            lhs,
            rhs: None,
            relation: "<=".into(),
            outcome: Outcome::NotApplicable,
            detail: Some(why.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub n: usize,
    pub d: usize,
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<Flavor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis_value: Option<f64>,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub params: ReportParams,
    pub metrics: BTreeMap<String, Value>,
    pub assertions: Vec<Assertion>,
    /// Wall-clock seconds per phase; left out unless timing was requested
    /// so reports stay byte-reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub durations: Option<BTreeMap<String, f64>>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        !self.assertions.iter().any(Assertion::failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome of splitting a cloud by a hyperplane x₀ = axis_value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub name: String,
    pub params: ReportParams,
    /// Always "unreduced": the splitting identity is additive only without augmentation.
    pub homology: String,
    pub n_left: usize,
    pub n_right: usize,
    /// Persistent Betti number of the whole cloud.
    pub beta_all: u64,
    pub beta_left: u64,
    pub beta_right: u64,
    /// |β(A) − β(L) − β(R)|.
    pub difference: u64,
    /// Points within 2(1+ε) of the hyperplane.
    pub strip_size: usize,
    /// f_p(K_1(M)) + f_{p+1}(K_{1+ε}(M)).
    pub naive_bound: u64,
    /// 2·|M|^{p+2}.
    pub crude_bound: u64,
    /// difference / |M|, reported only; `null` when the strip is empty.
    pub ratio: Option<f64>,
    pub assertions: Vec<Assertion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub durations: Option<BTreeMap<String, f64>>,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        !self.assertions.iter().any(Assertion::failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
