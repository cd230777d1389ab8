//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.
//!
//!     cargo test -p constitution-cli --test acceptance

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use constitution_core::axioms::{enumerate_consistent_rules, founding_rule, EnumerationMode};
use constitution_core::rule::delta_grid;
use constitution_core::verify::{self, check_amendment, PropertyCheck, SuiteConfig};

const SEED: u64 = 20_240_917;
const RANDOM_PROFILES: usize = 10_000;
const CHARACTERIZATION_BUDGET: Duration = Duration::from_secs(10);
const AMENDMENT_BUDGET: Duration = Duration::from_secs(120);

struct Verdict {
    id: u8,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn new(id: u8, title: &'static str) -> Self {
        Verdict {
            id,
            title,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn require_check(&mut self, checks: &[PropertyCheck], name: &str, expected_count: Option<u64>) {
        match checks.iter().find(|c| c.name == name) {
            None => self.failures.push(format!("{name}: never evaluated")),
            Some(c) => {
                self.notes.push(format!(
                    "{name} {}/{} ok",
                    c.checked - c.violations,
                    c.checked
                ));
                if c.violations > 0 {
                    self.failures.push(format!(
                        "{name}: {} violations, first: {}",
                        c.violations,
                        c.first_violation.as_deref().unwrap_or("?")
                    ));
                }
                if let Some(n) = expected_count {
                    if c.checked < n {
                        self.failures.push(format!(
                            "{name}: checked {} instances, expected {n}",
                            c.checked
                        ));
                    }
                }
            }
        }
    }
}

fn criterion_characterization() -> Verdict {
    let mut v = Verdict::new(1, "founding characterization and minimality");
    let start = Instant::now();
    for n in 1..=12usize {
        let expected: Vec<usize> = (n / 2 + 1..=n).collect();
        let count =
            enumerate_consistent_rules(n, EnumerationMode::CountOnly).expect("n within bound");
        v.require(
            count.thresholds() == expected,
            format!("count n={n}: thresholds {:?}", count.thresholds()),
        );
        v.require(
            count.degenerate_count() == 1,
            format!(
                "count n={n}: degenerate survivors {}",
                count.degenerate_count()
            ),
        );
        v.require(
            count.survivors.len() == expected.len() + 1,
            format!("count n={n}: {} survivors", count.survivors.len()),
        );
        v.require(
            count.minimality_winner == Some(n / 2 + 1),
            format!("count n={n}: winner {:?}", count.minimality_winner),
        );
        v.require(
            founding_rule(n).map(|r| r.m()) == Ok(n / 2 + 1),
            format!("founding_rule({n}) is not simple majority"),
        );

        if n <= 4 {
            let full =
                enumerate_consistent_rules(n, EnumerationMode::FullTable).expect("n within bound");
            v.require(
                full.thresholds() == expected,
                format!("full n={n}: thresholds {:?}", full.thresholds()),
            );
            v.require(
                full.degenerate_count() == 1,
                format!(
                    "full n={n}: degenerate survivors {}",
                    full.degenerate_count()
                ),
            );
            v.require(
                full.minimality_winner == Some(n / 2 + 1),
                format!("full n={n}: winner {:?}", full.minimality_winner),
            );
            // Every full-table survivor's count quotient is a count-mode survivor.
            let count_tables: BTreeSet<&str> =
                count.survivors.iter().map(|s| s.table.as_str()).collect();
            for s in &full.survivors {
                let quotient: String = (0..=n)
                    .map(|k| {
                        let mask = (1usize << k) - 1;
                        s.table.as_bytes()[mask] as char
                    })
                    .collect();
                v.require(
                    count_tables.contains(quotient.as_str()),
                    format!("full n={n}: quotient {quotient} missing"),
                );
            }
        }
    }
    let elapsed = start.elapsed();
    v.notes
        .push(format!("n=1..12 count, n=1..4 full in {elapsed:.2?}"));
    v.require(
        elapsed < CHARACTERIZATION_BUDGET,
        format!("took {elapsed:.2?}, budget {CHARACTERIZATION_BUDGET:?}"),
    );
    v
}

/// Instances per check: every (profile, current rule) pair, and every profile.
fn expected_counts(config: &SuiteConfig) -> (u64, u64) {
    let mut pairs = 0u64;
    let mut profiles = 0u64;
    for n in config.n_min..=config.n_max {
        let g = delta_grid(n).len() as u64;
        let p = if n <= config.exhaustive_up_to {
            g.pow(n as u32)
        } else {
            config.random_profiles as u64
        };
        profiles += p;
        pairs += p * g;
    }
    (pairs, profiles)
}

fn criteria_amendment() -> Vec<Verdict> {
    let config = SuiteConfig {
        n_min: 1,
        n_max: 15,
        exhaustive_up_to: 7,
        domination_exhaustive_up_to: 8,
        random_profiles: RANDOM_PROFILES,
        seed: SEED,
    };
    let start = Instant::now();
    let (checks, _) = check_amendment(&config).expect("suite runs");
    let elapsed = start.elapsed();
    let (pairs, profiles) = expected_counts(&config);
    let within_budget = elapsed < AMENDMENT_BUDGET;
    let timing =
        format!("regime n=1..7 exhaustive, n=8..15 x {RANDOM_PROFILES} seeded, {elapsed:.2?}");

    let mut c2 = Verdict::new(2, "condorcet closed form equals oracle");
    c2.require_check(&checks, verify::CONDORCET_MATCHES_ORACLE, Some(pairs));
    c2.require(
        within_budget,
        format!("took {elapsed:.2?}, budget {AMENDMENT_BUDGET:?}"),
    );
    c2.notes.push(timing.clone());

    let mut c3 = Verdict::new(3, "conservative closed form equals oracle");
    c3.require_check(&checks, verify::CONSERVATIVE_MATCHES_ORACLE, Some(pairs));
    c3.require(
        within_budget,
        format!("took {elapsed:.2?}, budget {AMENDMENT_BUDGET:?}"),
    );
    c3.notes.push(timing);

    let mut c4 = Verdict::new(4, "condorcet amendment idempotent from 1/2");
    c4.require_check(&checks, verify::IDEMPOTENCE, Some(profiles));

    let mut c5 = Verdict::new(
        5,
        "conservative iteration from 1/2 reaches condorcet result",
    );
    c5.require_check(&checks, verify::ITERATE_FROM_MAJORITY, Some(profiles));
    c5.require_check(&checks, verify::TRAJECTORY_MONOTONE, Some(profiles));

    let mut c6 = Verdict::new(6, "structural invariants");
    c6.require_check(&checks, verify::MUTUAL_EXCLUSIVITY, Some(pairs));
    c6.require_check(&checks, verify::POSTERIOR_CONSISTENCY, None);
    c6.require_check(&checks, verify::DOMINATION_ASYMMETRY, None);
    let exhaustive_to_8: u64 = (1..=8usize)
        .map(|n| (delta_grid(n).len() as u64).pow(n as u32))
        .sum();
    c6.require_check(&checks, verify::UNDOMINATED_NONEMPTY, Some(exhaustive_to_8));

    vec![c2, c3, c4, c5, c6]
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_constitution"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn criterion_golden() -> Verdict {
    let mut v = Verdict::new(7, "worked n=5 examples reproduced byte-for-byte");
    let cases: &[(&[&str], &str)] = &[
        (
            &["amend", "--input", "@mixed.json", "--method", "condorcet"],
            "amend_mixed_condorcet.json",
        ),
        (
            &[
                "amend",
                "--input",
                "@mixed.json",
                "--method",
                "condorcet",
                "--verify",
            ],
            "amend_mixed_condorcet_verify.json",
        ),
        (
            &["amend", "--input", "@high.json", "--method", "condorcet"],
            "amend_high_condorcet.json",
        ),
        (
            &["amend", "--input", "@high.json", "--method", "conservative"],
            "amend_high_conservative.json",
        ),
        (
            &[
                "amend",
                "--input",
                "@low.json",
                "--delta",
                "4/5",
                "--method",
                "condorcet",
            ],
            "amend_low_from_4_5_condorcet.json",
        ),
        (
            &[
                "amend",
                "--input",
                "@low.json",
                "--delta",
                "4/5",
                "--method",
                "conservative",
            ],
            "amend_low_from_4_5_conservative.json",
        ),
        (
            &["amend", "--input", "@low.json", "--method", "condorcet"],
            "amend_low_condorcet.json",
        ),
        (
            &[
                "iterate",
                "--input",
                "@high.json",
                "--method",
                "conservative",
                "--verify",
            ],
            "iterate_high_conservative.json",
        ),
        (
            &[
                "iterate",
                "--input",
                "@high.json",
                "--method",
                "conservative",
                "--format",
                "text",
            ],
            "iterate_high_conservative.txt",
        ),
        (
            &["iterate", "--input", "@high.json", "--method", "condorcet"],
            "iterate_high_condorcet.json",
        ),
        (
            &[
                "iterate",
                "--input",
                "@low.json",
                "--method",
                "conservative",
            ],
            "iterate_low_conservative.json",
        ),
        (
            &["found", "--n", "3", "--mode", "count"],
            "found_3_count.json",
        ),
    ];
    for (args, expected) in cases {
        let args: Vec<String> = args
            .iter()
            .map(|a| match a.strip_prefix('@') {
                Some(file) => golden(file).to_string_lossy().into_owned(),
                None => a.to_string(),
            })
            .collect();
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = cli(&argv);
        let want = std::fs::read(golden(expected)).expect("golden file");
        v.require(
            out.status.success(),
            format!("{expected}: exit {:?}", out.status.code()),
        );
        v.require(out.stdout == want, format!("{expected}: output differs"));
    }
    v.notes.push(format!("{} golden files", cases.len()));
    v
}

fn criterion_determinism() -> Verdict {
    let mut v = Verdict::new(8, "verify and random are byte-identical per seed");
    let runs: &[&[&str]] = &[
        &["verify", "--n", "1..9", "--count", "500", "--seed", "7"],
        &[
            "verify", "--n", "8..10", "--count", "300", "--seed", "7", "--format", "text",
        ],
        &["random", "--n", "5", "--count", "100", "--seed", "1"],
        &[
            "random",
            "--n",
            "11",
            "--count",
            "50",
            "--seed",
            "3",
            "--distribution",
            "clustered(1/2:0.6,4/5:0.4)",
        ],
    ];
    for args in runs {
        let a = cli(args);
        let b = cli(args);
        let label = args.join(" ");
        v.require(
            a.status.success() && b.status.success(),
            format!("{label}: non-zero exit"),
        );
        v.require(
            !a.stdout.is_empty() && a.stdout == b.stdout,
            format!("{label}: outputs differ"),
        );
    }
    let other_seed = cli(&["random", "--n", "5", "--count", "100", "--seed", "2"]);
    let first = cli(runs[2]);
    v.require(
        other_seed.stdout != first.stdout,
        "different seeds gave identical profiles",
    );
    v
}

fn main() -> ExitCode {
    let mut verdicts = vec![criterion_characterization()];
    verdicts.extend(criteria_amendment());
    verdicts.push(criterion_golden());
    verdicts.push(criterion_determinism());

    let mut all_passed = true;
    for v in &verdicts {
        let passed = v.failures.is_empty();
        all_passed &= passed;
        println!(
            "criterion {} [{}] {}{}",
            v.id,
            if passed { "PASS" } else { "FAIL" },
            v.title,
            if v.notes.is_empty() {
                String::new()
            } else {
                format!(" ({})", v.notes.join("; "))
            }
        );
        for f in &v.failures {
            println!("    {f}");
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
