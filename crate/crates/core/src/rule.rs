//! δ-supermajority approval rules.
//!
//! A rule accepts a proposal iff strictly more than `δ·n` agents approve. Only
//! `⌈n/2⌉` such rules are behaviourally distinct for `n` agents, so a [`Rule`]
//! stores the integer form: the minimal number `m` of approvals that passes.
//! Each rule has a canonical δ, `max(1/2, (m-1)/n)`; those values form the
//! δ-grid returned by [`delta_grid`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn is_accept(self) -> bool {
        self == Decision::Accept
    }

    pub fn from_bool(accept: bool) -> Self {
        if accept {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }
}

/// A supermajority rule over `n` agents with minimal acceptance count `m`,
/// where `floor(n/2) + 1 <= m <= n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RuleDoc", into = "RuleDoc")]
pub struct Rule {
    n: usize,
    m: usize,
}

impl Rule {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a community needs at least one agent".into()));
        }
        if m < n / 2 + 1 || m > n {
            return Err(Error::Domain(format!(
                "acceptance count {m} outside [{}, {n}] for n = {n}",
                n / 2 + 1
            )));
        }
        Ok(Rule { n, m })
    }

    /// Strict majority: the weakest rule, δ = 1/2.
    pub fn simple_majority(n: usize) -> Result<Self> {
        Rule::new(n, n / 2 + 1)
    }

    pub fn unanimity(n: usize) -> Result<Self> {
        Rule::new(n, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal number of approvals that passes a proposal.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn accepts_count(&self, approvals: usize) -> bool {
        approvals >= self.m
    }

    pub fn decide(&self, profile: &Profile) -> Result<Decision> {
        if profile.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: profile.len(),
            });
        }
        Ok(Decision::from_bool(self.accepts_count(profile.approvals())))
    }

    /// Canonical representative of this rule's equivalence class in `[1/2, 1)`.
    pub fn canonical_delta(&self) -> Rational {
        Rational::new(self.m as i64 - 1, self.n as i64).max(Rational::HALF)
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Rule{{n={}, m={}, δ={}}}",
            self.n,
            self.m,
            self.canonical_delta()
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "δ={} (m={} of n={})",
            self.canonical_delta(),
            self.m,
            self.n
        )
    }
}

#[derive(Serialize, Deserialize)]
struct RuleDoc {
    n: usize,
    m: usize,
    delta: Rational,
}

impl From<Rule> for RuleDoc {
    fn from(rule: Rule) -> Self {
        RuleDoc {
            n: rule.n,
            m: rule.m,
            delta: rule.canonical_delta(),
        }
    }
}

impl TryFrom<RuleDoc> for Rule {
    type Error = Error;

    fn try_from(doc: RuleDoc) -> Result<Self> {
        let rule = Rule::new(doc.n, doc.m)?;
        if rule.canonical_delta() != doc.delta {
            return Err(Error::Parse(format!(
                "delta {} does not match m = {} for n = {}",
                doc.delta, doc.m, doc.n
            )));
        }
        Ok(rule)
    }
}

/// Rule accepting exactly when `approvals > x·n`.
pub fn snap_delta(n: usize, x: Rational) -> Result<Rule> {
    if !x.in_unit_supermajority_range() {
        return Err(Error::OutOfRange { value: x });
    }
    let scaled = x * Rational::from_integer(n as i64);
    Rule::new(n, scaled.floor() as usize + 1)
}

/// All functionally distinct rules for `n` agents, weakest first.
pub fn grid_rules(n: usize) -> Vec<Rule> {
    if n == 0 {
        return Vec::new();
    }
    (n / 2 + 1..=n).map(|m| Rule { n, m }).collect()
}

/// Canonical δ of every functionally distinct rule, increasing.
pub fn delta_grid(n: usize) -> Vec<Rational> {
    grid_rules(n).iter().map(Rule::canonical_delta).collect()
}
