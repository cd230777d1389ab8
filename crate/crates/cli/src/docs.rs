//! Machine-readable documents emitted and consumed by the CLI.

use serde::{Deserialize, Serialize};

use constitution_core::verify::SuiteReport;
use constitution_core::{
    AmendmentOutcome, EnumerationReport, IdealProfile, Method, OracleReport, Rational, Rule,
    Trajectory,
};

/// Community input file: `{ "n", "ideals": [...], "delta"? }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommunityDoc {
    pub n: usize,
    pub ideals: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoundDoc {
    #[serde(flatten)]
    pub report: EnumerationReport,
    pub founding_rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmendDoc {
    pub method: Method,
    pub ideals: IdealProfile,
    pub outcome: AmendmentOutcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationCheck {
    pub condorcet_from_majority: Rule,
    pub terminal_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateDoc {
    pub ideals: IdealProfile,
    pub trajectory: Trajectory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<IterationCheck>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeTally {
    pub increase: usize,
    pub decrease: usize,
    pub retain: usize,
}

impl OutcomeTally {
    pub fn total(&self) -> usize {
        self.increase + self.decrease + self.retain
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSummary {
    pub condorcet: OutcomeTally,
    pub conservative: OutcomeTally,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomDoc {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub distribution: String,
    pub delta: Rational,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<IdealProfile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<String>,
    pub summary: RandomSummary,
}

pub type VerifyDoc = SuiteReport;
