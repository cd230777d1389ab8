//! Self-amendment of the rule in force.
//!
//! Two closed forms pick the amended threshold directly from the ideal points:
//! [`condorcet_amend`] (furthest admissible move) and [`conservative_amend`]
//! (closest admissible move). [`oracle_amend`] reaches the same decisions the
//! long way round: it builds every amendment ballot, keeps the proposals that
//! the current rule accepts and that are posterior consistent, and then selects
//! by domination or by distance.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preferences::{amendment_ballot, most_preferred, IdealProfile};
use crate::profile::Profile;
use crate::rational::Rational;
use crate::rule::{grid_rules, snap_delta, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Condorcet,
    Conservative,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Condorcet => "condorcet",
            Method::Conservative => "conservative",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "condorcet" => Ok(Method::Condorcet),
            "conservative" => Ok(Method::Conservative),
            other => Err(Error::Parse(format!("unknown amendment method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increase,
    Decrease,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "lowercase")]
pub enum Verdict {
    Amend {
        new_rule: Rule,
        direction: Direction,
        /// Approvals on the amendment ballot.
        support: usize,
        ballot: Profile,
    },
    Retain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmendmentOutcome {
    pub current: Rule,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl AmendmentOutcome {
    pub fn retain(current: Rule) -> Self {
        AmendmentOutcome {
            current,
            verdict: Verdict::Retain,
        }
    }

    /// Amend `current` to the grid rule with canonical δ `target`.
    pub fn amend_to(current: Rule, ideals: &IdealProfile, target: Rational) -> Result<Self> {
        let from = current.canonical_delta();
        let ballot = amendment_ballot(ideals, from, target)?;
        let direction = if target > from {
            Direction::Increase
        } else {
            Direction::Decrease
        };
        Ok(AmendmentOutcome {
            current,
            verdict: Verdict::Amend {
                new_rule: snap_delta(current.n(), target)?,
                direction,
                support: ballot.approvals(),
                ballot,
            },
        })
    }

    pub fn new_rule(&self) -> Option<Rule> {
        match &self.verdict {
            Verdict::Amend { new_rule, .. } => Some(*new_rule),
            Verdict::Retain => None,
        }
    }

    /// The rule in force after this step.
    pub fn resulting_rule(&self) -> Rule {
        self.new_rule().unwrap_or(self.current)
    }

    pub fn direction(&self) -> Direction {
        match &self.verdict {
            Verdict::Amend { direction, .. } => *direction,
            Verdict::Retain => Direction::None,
        }
    }

    pub fn is_retain(&self) -> bool {
        matches!(self.verdict, Verdict::Retain)
    }
}

fn check_dims(rule: &Rule, ideals: &IdealProfile) -> Result<()> {
    if rule.n() != ideals.n() {
        return Err(Error::Dimension {
            expected: rule.n(),
            found: ideals.n(),
        });
    }
    Ok(())
}

/// The amendment is accepted under the old rule only if the new rule would
/// also accept its ballot.
pub fn posterior_consistent(
    delta: Rational,
    delta_prime: Rational,
    ideals: &IdealProfile,
) -> Result<bool> {
    let ballot = amendment_ballot(ideals, delta, delta_prime)?;
    let old = snap_delta(ideals.n(), delta)?;
    let new = snap_delta(ideals.n(), delta_prime)?;
    Ok(!old.decide(&ballot)?.is_accept() || new.decide(&ballot)?.is_accept())
}

/// Grid values admissible as an increase (`x > δ`, `|{δ_i >= x}| > x·n`) and
/// as a decrease (`x < δ`, `|{δ_i <= x}| > δ·n`), ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmendmentCandidates {
    pub increase: Vec<Rational>,
    pub decrease: Vec<Rational>,
}

pub fn amendment_candidates(rule: &Rule, ideals: &IdealProfile) -> Result<AmendmentCandidates> {
    check_dims(rule, ideals)?;
    let delta = rule.canonical_delta();
    let n = Rational::from_integer(rule.n() as i64);
    let count = |c: usize| Rational::from_integer(c as i64);
    let mut increase = Vec::new();
    let mut decrease = Vec::new();
    for x in grid_rules(rule.n()).iter().map(Rule::canonical_delta) {
        if x > delta && count(ideals.count_at_least(x)) > x * n {
            increase.push(x);
        } else if x < delta && count(ideals.count_at_most(x)) > delta * n {
            decrease.push(x);
        }
    }
    if !increase.is_empty() && !decrease.is_empty() {
        return Err(Error::PropertyViolation(format!(
            "both an increase {increase:?} and a decrease {decrease:?} qualify from δ = {delta}"
        )));
    }
    Ok(AmendmentCandidates { increase, decrease })
}

/// Increase to the largest qualifying threshold, else decrease to the smallest
/// qualifying one, else retain.
pub fn condorcet_amend(rule: &Rule, ideals: &IdealProfile) -> Result<AmendmentOutcome> {
    let c = amendment_candidates(rule, ideals)?;
    match (c.increase.last(), c.decrease.first()) {
        (Some(&x), _) | (None, Some(&x)) => AmendmentOutcome::amend_to(*rule, ideals, x),
        (None, None) => Ok(AmendmentOutcome::retain(*rule)),
    }
}

/// Increase to the smallest qualifying threshold, else decrease to the largest
/// qualifying one, else retain.
pub fn conservative_amend(rule: &Rule, ideals: &IdealProfile) -> Result<AmendmentOutcome> {
    let c = amendment_candidates(rule, ideals)?;
    match (c.increase.first(), c.decrease.last()) {
        (Some(&x), _) | (None, Some(&x)) => AmendmentOutcome::amend_to(*rule, ideals, x),
        (None, None) => Ok(AmendmentOutcome::retain(*rule)),
    }
}

pub fn amend(rule: &Rule, ideals: &IdealProfile, method: Method) -> Result<AmendmentOutcome> {
    match method {
        Method::Condorcet => condorcet_amend(rule, ideals),
        Method::Conservative => conservative_amend(rule, ideals),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDiagnostic {
    /// Proposals accepted by the rule in force and posterior consistent.
    pub survivors: Vec<Rational>,
    /// Survivors not dominated by another survivor.
    pub undominated: Vec<Rational>,
    /// Survivors whose ballot has the most approvals.
    pub max_approval: Vec<Rational>,
    pub max_approval_matches_undominated: bool,
    /// Set when the selection the method asks for is not unique.
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub method: Method,
    pub outcome: AmendmentOutcome,
    pub diagnostic: OracleDiagnostic,
}

/// Brute-force amendment straight from the axioms, over every grid proposal.
///
/// When the requested selection is not unique the smallest candidate is
/// returned and `diagnostic.violation` says so.
pub fn oracle_amend(rule: &Rule, ideals: &IdealProfile, method: Method) -> Result<OracleReport> {
    check_dims(rule, ideals)?;
    let delta = rule.canonical_delta();
    let mut survivors = Vec::new();
    let mut approvals = Vec::new();
    for candidate in grid_rules(rule.n()) {
        let x = candidate.canonical_delta();
        if x == delta {
            continue;
        }
        let ballot = amendment_ballot(ideals, delta, x)?;
        // Accepted by the rule in force, and (posterior consistency) by the proposed rule too.
        if rule.decide(&ballot)?.is_accept() && candidate.decide(&ballot)?.is_accept() {
            survivors.push(x);
            approvals.push(ballot.approvals());
        }
    }

    if survivors.is_empty() {
        return Ok(OracleReport {
            method,
            outcome: AmendmentOutcome::retain(*rule),
            diagnostic: OracleDiagnostic {
                survivors,
                undominated: Vec::new(),
                max_approval: Vec::new(),
                max_approval_matches_undominated: true,
                violation: None,
            },
        });
    }

    let undominated = most_preferred(ideals, &survivors)?;
    let best = *approvals.iter().max().expect("non-empty");
    let max_approval: Vec<Rational> = survivors
        .iter()
        .zip(&approvals)
        .filter(|(_, &a)| a == best)
        .map(|(&x, _)| x)
        .collect();

    let chosen: Vec<Rational> = match method {
        Method::Condorcet => undominated.clone(),
        Method::Conservative => {
            let closest = survivors
                .iter()
                .map(|&x| (x - delta).abs())
                .min()
                .expect("non-empty");
            survivors
                .iter()
                .copied()
                .filter(|&x| (x - delta).abs() == closest)
                .collect()
        }
    };
    let violation = match chosen.len() {
        1 => None,
        0 => Some("every survivor is dominated by another survivor".to_string()),
        _ => Some(format!("{method} selection is not unique: {chosen:?}")),
    };
    let outcome = match chosen.first() {
        Some(&x) => AmendmentOutcome::amend_to(*rule, ideals, x)?,
        None => AmendmentOutcome::retain(*rule),
    };
    Ok(OracleReport {
        method,
        outcome,
        diagnostic: OracleDiagnostic {
            max_approval_matches_undominated: max_approval == undominated,
            survivors,
            undominated,
            max_approval,
            violation,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub method: Method,
    /// One entry per amendment round; the last one retains.
    pub steps: Vec<AmendmentOutcome>,
    pub terminal: Rule,
}

impl Trajectory {
    /// Thresholds visited, starting rule first.
    pub fn deltas(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .steps
            .iter()
            .map(|s| s.current.canonical_delta())
            .collect();
        if out.last() != Some(&self.terminal.canonical_delta()) {
            out.push(self.terminal.canonical_delta());
        }
        out
    }
}

/// Applies `method` until the rule in force is retained.
///
/// At most `|grid| + 1` rounds are allowed and no rule may be revisited;
/// either failure is reported as [`Error::Cycle`].
pub fn iterate_to_fixpoint(
    rule: &Rule,
    ideals: &IdealProfile,
    method: Method,
) -> Result<Trajectory> {
    iterate_with(rule, ideals, method, |r, i| amend(r, i, method))
}

/// [`iterate_to_fixpoint`] with a caller-supplied amendment step.
pub fn iterate_with(
    rule: &Rule,
    ideals: &IdealProfile,
    method: Method,
    step: impl Fn(&Rule, &IdealProfile) -> Result<AmendmentOutcome>,
) -> Result<Trajectory> {
    check_dims(rule, ideals)?;
    let cap = grid_rules(rule.n()).len() + 1;
    let mut visited = BTreeSet::from([*rule]);
    let mut current = *rule;
    let mut steps = Vec::new();
    while steps.len() < cap {
        let outcome = step(&current, ideals)?;
        let next = outcome.new_rule();
        steps.push(outcome);
        match next {
            None => {
                return Ok(Trajectory {
                    method,
                    steps,
                    terminal: current,
                })
            }
            Some(next) => {
                if !visited.insert(next) {
                    return Err(Error::Cycle {
                        cap,
                        revisited: next.canonical_delta(),
                    });
                }
                current = next;
            }
        }
    }
    Err(Error::Cycle {
        cap,
        revisited: current.canonical_delta(),
    })
}
