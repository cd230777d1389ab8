//! Founding axioms as executable predicates, plus exhaustive rule-space search.
//!
//! Candidate rules come in two shapes. A [`TruthTableRule`] is an arbitrary
//! decision function on `B^n` (decisive by construction). A [`CountRule`] is
//! the anonymity quotient: its decision depends only on the number of
//! approvals. [`enumerate_consistent_rules`] walks every candidate of one shape,
//! keeps the monotone, anonymous, concordant ones, and reports which of them
//! Minimality selects.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::rule::Rule;

/// Largest `n` for which every truth table is enumerated (`2^(2^n)` tables).
pub const FULL_TABLE_BOUND: usize = 4;
/// Largest `n` for which every count rule is enumerated (`2^(n+1)` rules).
pub const COUNT_ONLY_BOUND: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnumerationMode {
    #[serde(rename = "full")]
    FullTable,
    #[serde(rename = "count")]
    CountOnly,
}

impl EnumerationMode {
    pub fn bound(self) -> usize {
        match self {
            EnumerationMode::FullTable => FULL_TABLE_BOUND,
            EnumerationMode::CountOnly => COUNT_ONLY_BOUND,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EnumerationMode::FullTable => "full",
            EnumerationMode::CountOnly => "count",
        }
    }
}

/// A decision rule that only sees the number of approvals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountRule {
    accept: Vec<bool>,
}

impl CountRule {
    /// `accept[k]` is the decision for `k` approvals; needs length `n + 1`.
    pub fn new(accept: Vec<bool>) -> Result<Self> {
        if accept.len() < 2 {
            return Err(Error::Domain(
                "a count rule needs entries for 0..=n with n >= 1".into(),
            ));
        }
        Ok(CountRule { accept })
    }

    /// Accept iff at least `m` approvals (`m` may be anything, even `0` or `> n`).
    pub fn threshold(n: usize, m: usize) -> Self {
        CountRule {
            accept: (0..=n).map(|k| k >= m).collect(),
        }
    }

    pub fn never(n: usize) -> Self {
        CountRule {
            accept: vec![false; n + 1],
        }
    }

    fn from_bits(n: usize, bits: u64) -> Self {
        CountRule {
            accept: (0..=n).map(|k| bits >> k & 1 == 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.accept.len() - 1
    }

    pub fn accepts(&self, approvals: usize) -> bool {
        self.accept[approvals]
    }

    pub fn table(&self) -> &[bool] {
        &self.accept
    }

    pub fn is_never_accept(&self) -> bool {
        self.accept.iter().all(|&a| !a)
    }

    /// `Some(m)` when the rule is exactly "accept iff approvals >= m" for some `m` in `0..=n`.
    pub fn as_threshold(&self) -> Option<usize> {
        let m = self.accept.iter().position(|&a| a)?;
        self.accept[m..].iter().all(|&a| a).then_some(m)
    }

    pub fn to_rule(&self) -> Option<Rule> {
        Rule::new(self.n(), self.as_threshold()?).ok()
    }
}

impl From<Rule> for CountRule {
    fn from(rule: Rule) -> Self {
        CountRule::threshold(rule.n(), rule.m())
    }
}

/// An arbitrary decision function on `B^n`, indexed by profile bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTableRule {
    n: usize,
    table: Vec<bool>,
}

impl TruthTableRule {
    pub const MAX_AGENTS: usize = 16;

    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        if n == 0 || n > Self::MAX_AGENTS {
            return Err(Error::Domain(format!(
                "truth tables support 1..={} agents, got {n}",
                Self::MAX_AGENTS
            )));
        }
        if table.len() != 1 << n {
            return Err(Error::Dimension {
                expected: 1 << n,
                found: table.len(),
            });
        }
        Ok(TruthTableRule { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(&Profile) -> bool) -> Result<Self> {
        if n == 0 || n > Self::MAX_AGENTS {
            return Self::new(n, Vec::new());
        }
        let table = (0..1u64 << n)
            .map(|mask| Profile::from_mask(n, mask).map(|v| f(&v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, table)
    }

    fn from_bits(n: usize, bits: u64) -> Self {
        TruthTableRule {
            n,
            table: (0..1usize << n).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn accepts_mask(&self, mask: usize) -> bool {
        self.table[mask]
    }

    pub fn decide(&self, profile: &Profile) -> Result<bool> {
        if profile.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: profile.len(),
            });
        }
        Ok(self.table[profile.to_mask().expect("n <= 16") as usize])
    }

    /// Decision bits as a `0`/`1` string, profile mask 0 first.
    pub fn table_string(&self) -> String {
        self.table
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// The count rule this table factors through, if it is anonymous.
    pub fn count_quotient(&self) -> Option<CountRule> {
        let mut accept: Vec<Option<bool>> = vec![None; self.n + 1];
        for (mask, &a) in self.table.iter().enumerate() {
            let slot = &mut accept[mask.count_ones() as usize];
            match slot {
                None => *slot = Some(a),
                Some(prev) if *prev != a => return None,
                Some(_) => {}
            }
        }
        Some(CountRule {
            accept: accept
                .into_iter()
                .map(|a| a.expect("every count is realised"))
                .collect(),
        })
    }
}

impl From<&CountRule> for TruthTableRule {
    fn from(rule: &CountRule) -> Self {
        let n = rule.n();
        TruthTableRule {
            n,
            table: (0..1usize << n)
                .map(|mask| rule.accepts(mask.count_ones() as usize))
                .collect(),
        }
    }
}

/// The axiom predicates that apply to both rule shapes.
pub trait AxiomSubject {
    fn monotonic(&self) -> bool;
    fn concordant(&self) -> bool;
}

impl AxiomSubject for CountRule {
    fn monotonic(&self) -> bool {
        self.accept.windows(2).all(|w| !w[0] || w[1])
    }

    fn concordant(&self) -> bool {
        let n = self.n();
        // Disjoint profiles with a and b approvals exist iff a + b <= n.
        (0..=n).all(|a| !self.accept[a] || (0..=n - a).all(|b| !self.accept[b]))
    }
}

impl AxiomSubject for TruthTableRule {
    fn monotonic(&self) -> bool {
        // Single-bit raises generate the componentwise order.
        (0..self.table.len())
            .all(|mask| !self.table[mask] || (0..self.n).all(|i| self.table[mask | 1 << i]))
    }

    fn concordant(&self) -> bool {
        let full = self.table.len() - 1;
        (0..self.table.len()).all(|a| {
            if !self.table[a] {
                return true;
            }
            // Enumerate every b that is a submask of the complement of a.
            let free = full & !a;
            let mut b = free;
            loop {
                if self.table[b] {
                    return false;
                }
                if b == 0 {
                    return true;
                }
                b = (b - 1) & free;
            }
        })
    }
}

pub fn check_monotonic<R: AxiomSubject>(rule: &R) -> bool {
    rule.monotonic()
}

pub fn check_concordant<R: AxiomSubject>(rule: &R) -> bool {
    rule.concordant()
}

pub fn check_anonymous(rule: &TruthTableRule) -> bool {
    rule.count_quotient().is_some()
}

fn size_order(d_prime: &dyn Fn(usize) -> bool, d: &dyn Fn(usize) -> bool, sizes: &[usize]) -> bool {
    // ∀ V, V′: d′(V′) < d(V) ⇒ |V′| < |V|
    sizes
        .iter()
        .all(|&v_prime| d_prime(v_prime) || sizes.iter().all(|&v| !d(v) || v_prime < v))
}

/// Minimality preference between two count rules on the same `n`, quantified over
/// every pair of approval counts (every count is realised by some profile).
///
/// `d′` is preferred over `d` when `d′(V′) < d(V)` forces `|V′| < |V|` for all
/// profiles but not the other way round.
pub fn minimality_prefers(d_prime: &CountRule, d: &CountRule) -> Result<bool> {
    if d_prime.n() != d.n() {
        return Err(Error::Dimension {
            expected: d.n(),
            found: d_prime.n(),
        });
    }
    let sizes: Vec<usize> = (0..=d.n()).collect();
    let fwd = size_order(&|k| d_prime.accepts(k), &|k| d.accepts(k), &sizes);
    let back = size_order(&|k| d.accepts(k), &|k| d_prime.accepts(k), &sizes);
    Ok(fwd && !back)
}

/// The same relation as [`minimality_prefers`], quantified over every pair of
/// profiles of two arbitrary truth tables.
pub fn minimality_prefers_tables(d_prime: &TruthTableRule, d: &TruthTableRule) -> Result<bool> {
    if d_prime.n() != d.n() {
        return Err(Error::Dimension {
            expected: d.n(),
            found: d_prime.n(),
        });
    }
    let holds = |a: &TruthTableRule, b: &TruthTableRule| {
        (0..a.table.len()).all(|vp| {
            a.table[vp]
                || (0..b.table.len()).all(|v| !b.table[v] || vp.count_ones() < v.count_ones())
        })
    };
    Ok(holds(d_prime, d) && !holds(d, d_prime))
}

/// Shortcut for threshold rules: the lower threshold is preferred.
pub fn threshold_prefers(m_prime: usize, m: usize) -> bool {
    m_prime < m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    /// `m` when the rule is "accept iff approvals >= m".
    pub threshold: Option<usize>,
    pub degenerate: bool,
    /// Truth table bits (full mode) or per-count bits (count mode).
    pub table: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub mode: EnumerationMode,
    pub candidates: u64,
    pub survivors: Vec<Survivor>,
    /// Threshold of the rule Minimality prefers over every other non-degenerate survivor.
    pub minimality_winner: Option<usize>,
    /// Every non-degenerate survivor is a threshold rule with `m` in `floor(n/2)+1..=n`,
    /// and every such threshold survives.
    pub characterization_holds: bool,
    pub violations: Vec<String>,
}

impl EnumerationReport {
    /// Thresholds of the non-degenerate survivors, ascending.
    pub fn thresholds(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .survivors
            .iter()
            .filter(|s| !s.degenerate)
            .filter_map(|s| s.threshold)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degenerate_count(&self) -> usize {
        self.survivors.iter().filter(|s| s.degenerate).count()
    }
}

/// Enumerates every candidate rule of the chosen shape and keeps those that are
/// monotone, anonymous and concordant.
pub fn enumerate_consistent_rules(n: usize, mode: EnumerationMode) -> Result<EnumerationReport> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if n > mode.bound() {
        return Err(Error::Capacity {
            mode: mode.name(),
            n,
            bound: mode.bound(),
        });
    }
    let mut violations = Vec::new();
    let (candidates, survivors, winner) = match mode {
        EnumerationMode::CountOnly => {
            let candidates = 1u64 << (n + 1);
            let rules: Vec<CountRule> = (0..candidates)
                .map(|bits| CountRule::from_bits(n, bits))
                .filter(|r| r.monotonic() && r.concordant())
                .collect();
            let thresholds: Vec<Option<usize>> = rules
                .iter()
                .map(|r| {
                    if r.is_never_accept() {
                        None
                    } else {
                        r.as_threshold()
                    }
                })
                .collect();
            let live: Vec<usize> = thresholds.iter().flatten().copied().collect();
            let winner =
                unique_winner(&live, |a, b| threshold_prefers(live[a], live[b])).map(|i| live[i]);
            let survivors = rules
                .iter()
                .zip(&thresholds)
                .map(|(r, &t)| {
                    if !r.is_never_accept() && t.is_none() {
                        violations.push(format!("non-threshold survivor {:?}", r.table()));
                    }
                    Survivor {
                        threshold: t,
                        degenerate: r.is_never_accept(),
                        table: bit_string(r.table()),
                    }
                })
                .collect();
            (candidates, survivors, winner)
        }
        EnumerationMode::FullTable => {
            let candidates = 1u64 << (1u64 << n);
            let mut kept = Vec::new();
            for bits in 0..candidates {
                let table = TruthTableRule::from_bits(n, bits);
                if table.monotonic() && check_anonymous(&table) && table.concordant() {
                    kept.push(table);
                }
            }
            let quotients: Vec<CountRule> = kept
                .iter()
                .map(|t| t.count_quotient().expect("filtered for anonymity"))
                .collect();
            let live: Vec<usize> = (0..kept.len())
                .filter(|&i| !quotients[i].is_never_accept())
                .collect();
            let winner = unique_winner(&live, |a, b| {
                minimality_prefers_tables(&kept[live[a]], &kept[live[b]]).expect("same n")
            })
            .and_then(|i| quotients[live[i]].as_threshold());
            let survivors = kept
                .iter()
                .zip(&quotients)
                .map(|(t, q)| {
                    let degenerate = q.is_never_accept();
                    let threshold = if degenerate { None } else { q.as_threshold() };
                    if !degenerate && threshold.is_none() {
                        violations.push(format!("non-threshold survivor {}", t.table_string()));
                    }
                    Survivor {
                        threshold,
                        degenerate,
                        table: t.table_string(),
                    }
                })
                .collect();
            (candidates, survivors, winner)
        }
    };

    let mut report = EnumerationReport {
        n,
        mode,
        candidates,
        survivors,
        minimality_winner: winner,
        characterization_holds: false,
        violations,
    };
    let found = report.thresholds();
    let expected: Vec<usize> = (n / 2 + 1..=n).collect();
    if found != expected {
        report.violations.push(format!(
            "surviving thresholds {found:?}, expected {expected:?}"
        ));
    }
    if report.degenerate_count() > 1 {
        report
            .violations
            .push("more than one degenerate survivor".into());
    }
    report.characterization_holds = report.violations.is_empty();
    Ok(report)
}

/// Index of the element preferred over all others and preferred-against by none.
fn unique_winner(items: &[usize], prefers: impl Fn(usize, usize) -> bool) -> Option<usize> {
    let winners: Vec<usize> = (0..items.len())
        .filter(|&w| {
            (0..items.len())
                .filter(|&o| o != w)
                .all(|o| prefers(w, o) && !prefers(o, w))
        })
        .collect();
    match winners.as_slice() {
        [w] => Some(*w),
        _ => None,
    }
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// The founding rule: simple majority, checked to be the unique rule that
/// Minimality prefers over every other axiom-consistent rule.
pub fn founding_rule(n: usize) -> Result<Rule> {
    let founding = Rule::simple_majority(n)?;
    let others: Vec<CountRule> = if n <= COUNT_ONLY_BOUND {
        let report = enumerate_consistent_rules(n, EnumerationMode::CountOnly)?;
        if !report.characterization_holds {
            return Err(Error::PropertyViolation(report.violations.join("; ")));
        }
        if report.minimality_winner != Some(founding.m()) {
            return Err(Error::PropertyViolation(format!(
                "minimality selects {:?}, expected m = {}",
                report.minimality_winner,
                founding.m()
            )));
        }
        report
            .thresholds()
            .into_iter()
            .map(|m| CountRule::threshold(n, m))
            .collect()
    } else {
        // Beyond the enumeration bound the survivors are the grid rules.
        crate::rule::grid_rules(n)
            .into_iter()
            .map(CountRule::from)
            .collect()
    };
    let mine = CountRule::from(founding);
    for other in others.iter().filter(|o| **o != mine) {
        if !minimality_prefers(&mine, other)? || minimality_prefers(other, &mine)? {
            return Err(Error::PropertyViolation(format!(
                "simple majority is not preferred over {:?}",
                other.as_threshold()
            )));
        }
    }
    Ok(founding)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, accepted: &[&str]) -> TruthTableRule {
        TruthTableRule::from_fn(n, |v| accepted.contains(&v.to_string().as_str())).unwrap()
    }

    #[test]
    fn monotonic_examples() {
        assert!(check_monotonic(&CountRule::threshold(3, 2)));
        assert!(!check_monotonic(
            &CountRule::new(vec![false, true, false, false]).unwrap()
        ));
        // [1,0] <= [1,1] but [1,1] is rejected.
        assert!(!check_monotonic(&table(2, &["10"])));
        assert!(check_monotonic(&table(2, &["10", "11"])));
    }

    #[test]
    fn anonymous_examples() {
        for m in 0..=4 {
            assert!(check_anonymous(&TruthTableRule::from(
                &CountRule::threshold(3, m)
            )));
        }
        assert!(!check_anonymous(&table(2, &["10"])));
        let dictator = TruthTableRule::from_fn(3, |v| v.bits()[0]).unwrap();
        assert!(!check_anonymous(&dictator));
    }

    #[test]
    fn concordant_examples() {
        assert!(check_concordant(&CountRule::threshold(3, 2)));
        assert!(!check_concordant(&CountRule::threshold(3, 1)));
        assert!(!check_concordant(&CountRule::threshold(4, 2)));
        assert!(check_concordant(&CountRule::never(4)));
        // Accepting the empty profile clashes with itself.
        assert!(!check_concordant(&CountRule::threshold(4, 0)));
    }

    #[test]
    fn count_and_table_concordance_agree() {
        for n in 1..=5 {
            for bits in 0..1u64 << (n + 1) {
                let c = CountRule::from_bits(n, bits);
                let t = TruthTableRule::from(&c);
                assert_eq!(c.concordant(), t.concordant(), "n={n} {:?}", c.table());
                assert_eq!(c.monotonic(), t.monotonic(), "n={n} {:?}", c.table());
            }
        }
    }

    // Profile-level concordance, straight from the definition.
    fn concordant_by_pairs(t: &TruthTableRule) -> bool {
        let size = 1usize << t.n();
        (0..size)
            .all(|a| (0..size).all(|b| a & b != 0 || !(t.accepts_mask(a) && t.accepts_mask(b))))
    }

    #[test]
    fn submask_concordance_matches_pairwise_definition() {
        for n in 1..=3 {
            for bits in 0..1u64 << (1 << n) {
                let t = TruthTableRule::from_bits(n, bits);
                assert_eq!(t.concordant(), concordant_by_pairs(&t));
            }
        }
    }

    #[test]
    fn minimality_examples() {
        let t = |m| CountRule::threshold(5, m);
        assert!(minimality_prefers(&t(3), &t(4)).unwrap());
        assert!(!minimality_prefers(&t(4), &t(3)).unwrap());
        assert!(!minimality_prefers(&t(3), &t(3)).unwrap());
        assert!(matches!(
            minimality_prefers(&CountRule::threshold(4, 3), &t(3)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn minimality_quantified_forms_agree_with_shortcut() {
        for n in 1..=6 {
            for m_prime in n / 2 + 1..=n {
                for m in n / 2 + 1..=n {
                    let (cp, c) = (CountRule::threshold(n, m_prime), CountRule::threshold(n, m));
                    let by_counts = minimality_prefers(&cp, &c).unwrap();
                    let by_tables = minimality_prefers_tables(
                        &TruthTableRule::from(&cp),
                        &TruthTableRule::from(&c),
                    )
                    .unwrap();
                    assert_eq!(by_counts, threshold_prefers(m_prime, m));
                    assert_eq!(by_tables, by_counts);
                }
            }
        }
    }

    #[test]
    fn non_strict_size_order_never_separates_survivors() {
        // Read with non-strict inequalities (d′(V′) <= d(V) ⇒ |V′| <= |V|) the
        // condition fails for every pair of consistent rules once n >= 2.
        let weak = |a: &CountRule, b: &CountRule| {
            let n = a.n();
            (0..=n).all(|vp| (0..=n).all(|v| (a.accepts(vp) && !b.accepts(v)) || vp <= v))
        };
        for n in 2..=8 {
            for m_prime in n / 2 + 1..=n {
                for m in n / 2 + 1..=n {
                    let (cp, c) = (CountRule::threshold(n, m_prime), CountRule::threshold(n, m));
                    assert!(!weak(&cp, &c), "n={n} m'={m_prime} m={m}");
                }
            }
        }
    }

    #[test]
    fn never_accept_is_dominated_by_every_live_rule() {
        for n in 1..=6 {
            for m in n / 2 + 1..=n {
                let live = CountRule::threshold(n, m);
                assert!(minimality_prefers(&live, &CountRule::never(n)).unwrap());
                assert!(!minimality_prefers(&CountRule::never(n), &live).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let r3 = enumerate_consistent_rules(3, EnumerationMode::CountOnly).unwrap();
        assert_eq!(r3.candidates, 16);
        assert_eq!(r3.thresholds(), vec![2, 3]);
        assert_eq!(r3.degenerate_count(), 1);
        assert_eq!(r3.survivors.len(), 3);
        assert_eq!(r3.minimality_winner, Some(2));

        let r2 = enumerate_consistent_rules(2, EnumerationMode::FullTable).unwrap();
        assert_eq!(r2.candidates, 16);
        assert_eq!(r2.thresholds(), vec![2]);
        assert_eq!(r2.degenerate_count(), 1);
        assert_eq!(r2.survivors.len(), 2);

        let r4 = enumerate_consistent_rules(4, EnumerationMode::CountOnly).unwrap();
        assert_eq!(r4.thresholds(), vec![3, 4]);
        assert_eq!(r4.degenerate_count(), 1);
        assert!(r4.characterization_holds);
    }

    #[test]
    fn enumeration_bounds() {
        assert!(matches!(
            enumerate_consistent_rules(5, EnumerationMode::FullTable),
            Err(Error::Capacity { bound: 4, .. })
        ));
        assert!(matches!(
            enumerate_consistent_rules(21, EnumerationMode::CountOnly),
            Err(Error::Capacity { bound: 20, .. })
        ));
        assert!(enumerate_consistent_rules(0, EnumerationMode::CountOnly).is_err());
    }

    #[test]
    fn founding_examples() {
        assert_eq!(founding_rule(5).unwrap(), Rule::new(5, 3).unwrap());
        assert_eq!(founding_rule(4).unwrap(), Rule::new(4, 3).unwrap());
        assert_eq!(founding_rule(1).unwrap(), Rule::new(1, 1).unwrap());
        assert_eq!(founding_rule(25).unwrap(), Rule::new(25, 13).unwrap());
    }

    #[test]
    fn threshold_detection() {
        assert_eq!(CountRule::threshold(4, 3).as_threshold(), Some(3));
        assert_eq!(CountRule::never(4).as_threshold(), None);
        assert_eq!(
            CountRule::new(vec![false, true, false])
                .unwrap()
                .as_threshold(),
            None
        );
        assert_eq!(
            CountRule::threshold(4, 3).to_rule(),
            Some(Rule::new(4, 3).unwrap())
        );
    }
}
