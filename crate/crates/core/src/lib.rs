//! Founding and amending a supermajority constitution for `n` agents.
//!
//! * [`rule`]: δ-supermajority rules, the canonical δ-grid and the decision function.
//! * [`axioms`]: founding axioms as predicates and exhaustive rule-space search.
//! * [`preferences`]: single-peaked ideal points, amendment ballots and domination.
//! * [`amendment`]: Condorcet and conservative amendment, the brute-force oracle,
//!   and iteration to a fixpoint.
//! * [`verify`]: the property suite tying the closed forms to the oracle.

pub mod amendment;
pub mod axioms;
pub mod error;
pub mod generate;
pub mod preferences;
pub mod profile;
pub mod rational;
pub mod rule;
pub mod verify;

pub use amendment::{
    amend, condorcet_amend, conservative_amend, iterate_to_fixpoint, oracle_amend,
    posterior_consistent, AmendmentOutcome, Direction, Method, OracleDiagnostic, OracleReport,
    Trajectory, Verdict,
};
pub use axioms::{
    check_anonymous, check_concordant, check_monotonic, enumerate_consistent_rules, founding_rule,
    minimality_prefers, CountRule, EnumerationMode, EnumerationReport, TruthTableRule,
};
pub use error::{Error, Result};
pub use preferences::{
    amendment_ballot, compare, dominates, most_preferred, IdealProfile, Preference,
};
pub use profile::Profile;
pub use rational::Rational;
pub use rule::{delta_grid, snap_delta, Decision, Rule};
