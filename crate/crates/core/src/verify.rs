//! Property suite: founding characterization and amendment theorems checked by
//! exhaustion (small `n`) and seeded sampling (larger `n`).
//!
//! Every check counts how many instances it looked at and how many failed. The
//! suite is deterministic for a given [`SuiteConfig`].

use serde::{Deserialize, Serialize};

use crate::amendment::{
    condorcet_amend, conservative_amend, iterate_to_fixpoint, oracle_amend, AmendmentOutcome,
    Method, Verdict,
};
use crate::axioms::{
    enumerate_consistent_rules, founding_rule, EnumerationMode, COUNT_ONLY_BOUND, FULL_TABLE_BOUND,
};
use crate::error::Result;
use crate::generate::{all_grid_profiles, sample_profile, seeded_rng, IdealDistribution};
use crate::preferences::{dominates, most_preferred_on_grid, IdealProfile};
use crate::rational::Rational;
use crate::rule::{delta_grid, grid_rules, Rule};

pub const CHARACTERIZATION_COUNT: &str = "characterization_count";
pub const CHARACTERIZATION_FULL: &str = "characterization_full";
pub const MINIMALITY_SIMPLE_MAJORITY: &str = "minimality_selects_simple_majority";
pub const CONDORCET_MATCHES_ORACLE: &str = "condorcet_matches_oracle";
pub const CONSERVATIVE_MATCHES_ORACLE: &str = "conservative_matches_oracle";
pub const IDEMPOTENCE: &str = "condorcet_idempotent_from_majority";
pub const ITERATE_FROM_MAJORITY: &str = "conservative_iteration_matches_condorcet";
pub const TRAJECTORY_MONOTONE: &str = "conservative_trajectory_monotone";
pub const MUTUAL_EXCLUSIVITY: &str = "increase_decrease_exclusive";
pub const POSTERIOR_CONSISTENCY: &str = "amendments_posterior_consistent";
pub const DOMINATION_ASYMMETRY: &str = "domination_asymmetric";
pub const UNDOMINATED_NONEMPTY: &str = "undominated_nonempty";

pub const MAX_APPROVAL_DIVERGENCE: &str = "max_approval_differs_from_undominated";
pub const CONSERVATIVE_FROM_ABOVE: &str = "conservative_from_above_reaches_condorcet";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Every grid ideal profile is checked for `n` up to this bound.
    pub exhaustive_up_to: usize,
    /// Domination checks run exhaustively up to this bound.
    pub domination_exhaustive_up_to: usize,
    /// Seeded uniform profiles per `n` above the exhaustive bound.
    pub random_profiles: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_min: 1,
            n_max: 15,
            exhaustive_up_to: 7,
            domination_exhaustive_up_to: 8,
            random_profiles: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl PropertyCheck {
    pub fn new(name: &str) -> Self {
        PropertyCheck {
            name: name.to_string(),
            checked: 0,
            violations: 0,
            first_violation: None,
        }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checked > 0
    }
}

/// Observations that are reported but never fail the suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub checked: u64,
    pub hits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<PropertyCheck>,
    pub observations: Vec<Observation>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Ledger {
    checks: Vec<PropertyCheck>,
    observations: Vec<Observation>,
}

impl Ledger {
    fn new() -> Self {
        Ledger {
            checks: Vec::new(),
            observations: Vec::new(),
        }
    }

    fn check(&mut self, name: &str) -> &mut PropertyCheck {
        if let Some(i) = self.checks.iter().position(|c| c.name == name) {
            return &mut self.checks[i];
        }
        self.checks.push(PropertyCheck::new(name));
        self.checks.last_mut().unwrap()
    }

    fn observe(&mut self, name: &str, hit: bool) {
        let obs = match self.observations.iter().position(|o| o.name == name) {
            Some(i) => &mut self.observations[i],
            None => {
                self.observations.push(Observation {
                    name: name.to_string(),
                    checked: 0,
                    hits: 0,
                });
                self.observations.last_mut().unwrap()
            }
        };
        obs.checked += 1;
        obs.hits += u64::from(hit);
    }
}

/// Founding characterization for every `n` in range (count mode up to its
/// bound, truth tables up to theirs).
pub fn check_characterization(n_min: usize, n_max: usize) -> Result<Vec<PropertyCheck>> {
    let mut ledger = Ledger::new();
    for n in n_min.max(1)..=n_max.min(COUNT_ONLY_BOUND) {
        characterize(&mut ledger, n, EnumerationMode::CountOnly)?;
        if n <= FULL_TABLE_BOUND {
            characterize(&mut ledger, n, EnumerationMode::FullTable)?;
        }
    }
    Ok(ledger.checks)
}

fn characterize(ledger: &mut Ledger, n: usize, mode: EnumerationMode) -> Result<()> {
    let report = enumerate_consistent_rules(n, mode)?;
    let name = match mode {
        EnumerationMode::CountOnly => CHARACTERIZATION_COUNT,
        EnumerationMode::FullTable => CHARACTERIZATION_FULL,
    };
    ledger
        .check(name)
        .record(report.characterization_holds, || {
            format!("n={n}: {}", report.violations.join("; "))
        });
    let expected = n / 2 + 1;
    let founding_ok = founding_rule(n).map(|r| r.m() == expected).unwrap_or(false);
    ledger.check(MINIMALITY_SIMPLE_MAJORITY).record(
        report.minimality_winner == Some(expected) && founding_ok,
        || {
            format!(
                "n={n} {}: minimality winner {:?}, expected m={expected}",
                mode.name(),
                report.minimality_winner
            )
        },
    );
    Ok(())
}

fn describe(ideals: &IdealProfile, rule: &Rule) -> String {
    let ideals: Vec<String> = ideals.ideals().iter().map(|d| d.to_string()).collect();
    format!(
        "n={} δ={} ideals=[{}]",
        rule.n(),
        rule.canonical_delta(),
        ideals.join(",")
    )
}

fn posterior_witnessed(outcome: &AmendmentOutcome) -> bool {
    match &outcome.verdict {
        Verdict::Retain => true,
        Verdict::Amend {
            new_rule,
            ballot,
            support,
            ..
        } => {
            *new_rule != outcome.current
                && *support == ballot.approvals()
                && outcome
                    .current
                    .decide(ballot)
                    .map(|d| d.is_accept())
                    .unwrap_or(false)
                && new_rule
                    .decide(ballot)
                    .map(|d| d.is_accept())
                    .unwrap_or(false)
        }
    }
}

/// Increase and decrease conditions evaluated directly from the ideal points.
fn change_conditions(ideals: &IdealProfile, rule: &Rule) -> (bool, bool) {
    let delta = rule.canonical_delta();
    let n = Rational::from_integer(rule.n() as i64);
    let grid = delta_grid(rule.n());
    let up = grid
        .iter()
        .any(|&x| x > delta && Rational::from_integer(ideals.count_at_least(x) as i64) > x * n);
    let down = grid
        .iter()
        .any(|&x| x < delta && Rational::from_integer(ideals.count_at_most(x) as i64) > delta * n);
    (up, down)
}

fn check_domination(ledger: &mut Ledger, ideals: &IdealProfile) -> Result<()> {
    let grid = delta_grid(ideals.n());
    for (i, &p) in grid.iter().enumerate() {
        for &q in &grid[i + 1..] {
            let both = dominates(ideals, p, q)? && dominates(ideals, q, p)?;
            ledger.check(DOMINATION_ASYMMETRY).record(!both, || {
                format!("{p} and {q} dominate each other for {:?}", ideals.ideals())
            });
        }
    }
    let undominated = most_preferred_on_grid(ideals)?;
    ledger
        .check(UNDOMINATED_NONEMPTY)
        .record(!undominated.is_empty(), || {
            format!("no undominated grid value for {:?}", ideals.ideals())
        });
    Ok(())
}

fn check_profile(ledger: &mut Ledger, ideals: &IdealProfile, domination: bool) -> Result<()> {
    let rules = grid_rules(ideals.n());
    for rule in &rules {
        let (up, down) = change_conditions(ideals, rule);
        ledger
            .check(MUTUAL_EXCLUSIVITY)
            .record(!(up && down), || describe(ideals, rule));
        if up && down {
            continue;
        }

        let closed = condorcet_amend(rule, ideals)?;
        let oracle = oracle_amend(rule, ideals, Method::Condorcet)?;
        ledger.check(CONDORCET_MATCHES_ORACLE).record(
            closed == oracle.outcome && oracle.diagnostic.violation.is_none(),
            || {
                format!(
                    "{}: closed {:?} oracle {:?}",
                    describe(ideals, rule),
                    closed,
                    oracle
                )
            },
        );
        if !oracle.diagnostic.survivors.is_empty() {
            ledger.observe(
                MAX_APPROVAL_DIVERGENCE,
                !oracle.diagnostic.max_approval_matches_undominated,
            );
        }

        let closed_cons = conservative_amend(rule, ideals)?;
        let oracle_cons = oracle_amend(rule, ideals, Method::Conservative)?;
        ledger.check(CONSERVATIVE_MATCHES_ORACLE).record(
            closed_cons == oracle_cons.outcome && oracle_cons.diagnostic.violation.is_none(),
            || {
                format!(
                    "{}: closed {:?} oracle {:?}",
                    describe(ideals, rule),
                    closed_cons,
                    oracle_cons
                )
            },
        );

        for outcome in [&closed, &closed_cons] {
            if !outcome.is_retain() {
                ledger
                    .check(POSTERIOR_CONSISTENCY)
                    .record(posterior_witnessed(outcome), || {
                        format!("{}: {outcome:?}", describe(ideals, rule))
                    });
            }
        }
    }

    let majority = rules[0];
    let first = condorcet_amend(&majority, ideals)?;
    let target = first.resulting_rule();
    let second = condorcet_amend(&target, ideals)?;
    ledger.check(IDEMPOTENCE).record(second.is_retain(), || {
        format!("{}: then {second:?}", describe(ideals, &majority))
    });

    match iterate_to_fixpoint(&majority, ideals, Method::Conservative) {
        Ok(trajectory) => {
            ledger
                .check(ITERATE_FROM_MAJORITY)
                .record(trajectory.terminal == target, || {
                    format!(
                        "{}: conservative fixpoint {:?}, condorcet {:?}",
                        describe(ideals, &majority),
                        trajectory.terminal,
                        target
                    )
                });
            let deltas = trajectory.deltas();
            let monotone =
                deltas.windows(2).all(|w| w[0] <= w[1]) && trajectory.steps.len() <= rules.len();
            ledger.check(TRAJECTORY_MONOTONE).record(monotone, || {
                format!("{}: {deltas:?}", describe(ideals, &majority))
            });
        }
        Err(e) => {
            let msg = format!("{}: {e}", describe(ideals, &majority));
            ledger
                .check(ITERATE_FROM_MAJORITY)
                .record(false, || msg.clone());
            ledger.check(TRAJECTORY_MONOTONE).record(false, || msg);
        }
    }

    for rule in &rules[1..] {
        if let Ok(t) = iterate_to_fixpoint(rule, ideals, Method::Conservative) {
            ledger.observe(CONSERVATIVE_FROM_ABOVE, t.terminal == target);
        }
    }

    if domination {
        check_domination(ledger, ideals)?;
    }
    Ok(())
}

/// Amendment theorems and structural invariants for every `n` in range.
pub fn check_amendment(config: &SuiteConfig) -> Result<(Vec<PropertyCheck>, Vec<Observation>)> {
    let mut ledger = Ledger::new();
    for n in config.n_min.max(1)..=config.n_max {
        if n <= config.exhaustive_up_to {
            for ideals in all_grid_profiles(n) {
                check_profile(&mut ledger, &ideals, true)?;
            }
        } else {
            if n <= config.domination_exhaustive_up_to {
                for ideals in all_grid_profiles(n) {
                    check_domination(&mut ledger, &ideals)?;
                }
            }
            let mut rng = seeded_rng(config.seed, n as u64);
            for _ in 0..config.random_profiles {
                let ideals = sample_profile(n, &IdealDistribution::Uniform, &mut rng)?;
                check_profile(&mut ledger, &ideals, n > config.domination_exhaustive_up_to)?;
            }
        }
    }
    Ok((ledger.checks, ledger.observations))
}

/// Characterization plus amendment checks.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut checks = check_characterization(config.n_min, config.n_max)?;
    let (amendment, observations) = check_amendment(config)?;
    checks.extend(amendment);
    let passed = checks.iter().all(PropertyCheck::passed);
    Ok(SuiteReport {
        config: config.clone(),
        checks,
        observations,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let config = SuiteConfig {
            n_min: 1,
            n_max: 6,
            exhaustive_up_to: 5,
            domination_exhaustive_up_to: 5,
            random_profiles: 50,
            seed: 3,
        };
        let report = run_suite(&config).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert!(report.passed);
        assert_eq!(report, run_suite(&config).unwrap());
    }

    #[test]
    fn empty_check_does_not_pass() {
        assert!(!PropertyCheck::new("x").passed());
    }
}
