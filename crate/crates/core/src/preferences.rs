//! Single-peaked preferences over supermajority thresholds.
//!
//! Agent `i` has an ideal point `δ_i`. It strictly prefers its peak to anything
//! else, and between two values on the same side of the peak it prefers the one
//! closer to the peak. Values on opposite sides are incomparable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::rational::Rational;
use crate::rule::{delta_grid, snap_delta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preference {
    FirstPreferred,
    SecondPreferred,
    Incomparable,
}

fn check_range(x: Rational) -> Result<()> {
    if x.in_unit_supermajority_range() {
        Ok(())
    } else {
        Err(Error::OutOfRange { value: x })
    }
}

/// Ideal points of all `n` agents, each on the δ-grid for `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealProfileDoc", into = "IdealProfileDoc")]
pub struct IdealProfile {
    ideals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapWarning {
    pub agent: usize,
    pub given: Rational,
    pub snapped: Rational,
}

/// Result of ingesting arbitrary ideal points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ingested {
    pub profile: IdealProfile,
    pub snapped: Vec<SnapWarning>,
}

impl IdealProfile {
    /// Accepts values that already lie on the grid; anything else is an error.
    pub fn on_grid(ideals: Vec<Rational>) -> Result<Self> {
        let ingested = Self::ingest(ideals)?;
        if let Some(w) = ingested.snapped.first() {
            return Err(Error::Domain(format!(
                "ideal point {} of agent {} is not on the grid (nearest below: {})",
                w.given,
                w.agent + 1,
                w.snapped
            )));
        }
        Ok(ingested.profile)
    }

    /// Snaps every value to the largest grid point at or below it and reports
    /// which agents moved.
    pub fn ingest(values: Vec<Rational>) -> Result<Ingested> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Domain(
                "an ideal profile needs at least one agent".into(),
            ));
        }
        let mut snapped = Vec::new();
        let mut ideals = Vec::with_capacity(n);
        for (agent, given) in values.into_iter().enumerate() {
            let grid_value = snap_delta(n, given)?.canonical_delta();
            if grid_value != given {
                snapped.push(SnapWarning {
                    agent,
                    given,
                    snapped: grid_value,
                });
            }
            ideals.push(grid_value);
        }
        Ok(Ingested {
            profile: IdealProfile { ideals },
            snapped,
        })
    }

    pub fn uniform(n: usize, ideal: Rational) -> Result<Self> {
        Self::on_grid(vec![ideal; n])
    }

    pub fn n(&self) -> usize {
        self.ideals.len()
    }

    pub fn ideals(&self) -> &[Rational] {
        &self.ideals
    }

    /// Number of agents with `δ_i >= x`.
    pub fn count_at_least(&self, x: Rational) -> usize {
        self.ideals.iter().filter(|&&d| d >= x).count()
    }

    /// Number of agents with `δ_i <= x`.
    pub fn count_at_most(&self, x: Rational) -> usize {
        self.ideals.iter().filter(|&&d| d <= x).count()
    }
}

#[derive(Serialize, Deserialize)]
struct IdealProfileDoc {
    n: usize,
    ideals: Vec<Rational>,
}

impl From<IdealProfile> for IdealProfileDoc {
    fn from(p: IdealProfile) -> Self {
        IdealProfileDoc {
            n: p.n(),
            ideals: p.ideals,
        }
    }
}

impl TryFrom<IdealProfileDoc> for IdealProfile {
    type Error = Error;

    fn try_from(doc: IdealProfileDoc) -> Result<Self> {
        if doc.ideals.len() != doc.n {
            return Err(Error::Dimension {
                expected: doc.n,
                found: doc.ideals.len(),
            });
        }
        IdealProfile::on_grid(doc.ideals)
    }
}

/// How an agent with peak `ideal` ranks `p` against `p_prime`.
pub fn compare(ideal: Rational, p: Rational, p_prime: Rational) -> Result<Preference> {
    check_range(ideal)?;
    check_range(p)?;
    check_range(p_prime)?;
    Ok(compare_unchecked(ideal, p, p_prime))
}

fn strictly_better(ideal: Rational, a: Rational, b: Rational) -> bool {
    (a == ideal && b != ideal) || (ideal < a && a < b) || (ideal > a && a > b)
}

pub(crate) fn compare_unchecked(ideal: Rational, p: Rational, p_prime: Rational) -> Preference {
    if strictly_better(ideal, p, p_prime) {
        Preference::FirstPreferred
    } else if strictly_better(ideal, p_prime, p) {
        Preference::SecondPreferred
    } else {
        Preference::Incomparable
    }
}

/// Approval profile on the proposal to replace `delta` with `delta_prime`:
/// agent `i` approves iff `δ_i <= δ′ < δ` or `δ_i >= δ′ > δ`.
pub fn amendment_ballot(
    ideals: &IdealProfile,
    delta: Rational,
    delta_prime: Rational,
) -> Result<Profile> {
    check_range(delta)?;
    check_range(delta_prime)?;
    if delta == delta_prime {
        return Err(Error::DegenerateAmendment(delta));
    }
    Profile::new(
        ideals
            .ideals()
            .iter()
            .map(|&d| {
                (d <= delta_prime && delta_prime < delta)
                    || (d >= delta_prime && delta_prime > delta)
            })
            .collect(),
    )
}

/// Number of agents that strictly prefer `p` to `p_prime`.
pub fn support(ideals: &IdealProfile, p: Rational, p_prime: Rational) -> usize {
    ideals
        .ideals()
        .iter()
        .filter(|&&d| compare_unchecked(d, p, p_prime) == Preference::FirstPreferred)
        .count()
}

/// `p` dominates `p_prime` when strictly more than half the agents strictly prefer it.
pub fn dominates(ideals: &IdealProfile, p: Rational, p_prime: Rational) -> Result<bool> {
    check_range(p)?;
    check_range(p_prime)?;
    if p == p_prime {
        return Err(Error::DegenerateComparison(p));
    }
    Ok(2 * support(ideals, p, p_prime) > ideals.n())
}

/// Candidates not dominated by any other candidate, ascending and deduplicated.
pub fn most_preferred(ideals: &IdealProfile, candidates: &[Rational]) -> Result<Vec<Rational>> {
    if candidates.is_empty() {
        return Err(Error::Domain(
            "most_preferred needs at least one candidate".into(),
        ));
    }
    let mut pool = candidates.to_vec();
    pool.sort_unstable();
    pool.dedup();
    for &c in &pool {
        check_range(c)?;
    }
    let mut out = Vec::new();
    for &p in &pool {
        let mut dominated = false;
        for &q in pool.iter().filter(|&&q| q != p) {
            if dominates(ideals, q, p)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(p);
        }
    }
    Ok(out)
}

/// The undominated values among all grid rules.
pub fn most_preferred_on_grid(ideals: &IdealProfile) -> Result<Vec<Rational>> {
    most_preferred(ideals, &delta_grid(ideals.n()))
}
