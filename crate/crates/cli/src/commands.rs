use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use constitution_core::amendment::iterate_with;
use constitution_core::generate::{sample_profile, seeded_rng, IdealDistribution};
use constitution_core::verify::{run_suite, SuiteConfig};
use constitution_core::{
    enumerate_consistent_rules, founding_rule, oracle_amend, snap_delta, Direction, IdealProfile,
    Method, Rational, Rule,
};

use crate::args::{Command, Format};
use crate::docs::{
    AmendDoc, CommunityDoc, FoundDoc, IterateDoc, IterationCheck, OutcomeTally, RandomDoc,
    RandomSummary,
};
use crate::{text, CliError, Engine};

pub fn dispatch(
    engine: Engine,
    command: &Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Found { n, mode, format } => {
            let report = enumerate_consistent_rules(*n, (*mode).into())?;
            let doc = FoundDoc {
                founding_rule: founding_rule(*n)?,
                report,
            };
            emit(out, *format, &doc, text::found)
        }
        Command::Amend {
            input,
            delta,
            method,
            verify,
            format,
        } => {
            let (ideals, rule) = load_community(input, *delta, err)?;
            let method = Method::from(*method);
            let outcome = (engine.amend)(&rule, &ideals, method)?;
            let oracle = if *verify {
                Some(oracle_amend(&rule, &ideals, method)?)
            } else {
                None
            };
            let doc = AmendDoc {
                method,
                ideals,
                outcome,
                oracle,
            };
            emit(out, *format, &doc, text::amend)?;
            if let Some(oracle) = &doc.oracle {
                if let Some(v) = &oracle.diagnostic.violation {
                    return Err(CliError::Mismatch(format!("oracle: {v}")));
                }
                if oracle.outcome != doc.outcome {
                    return Err(CliError::Mismatch(format!(
                        "closed form gives {}, oracle gives {}",
                        text::verdict(&doc.outcome),
                        text::verdict(&oracle.outcome)
                    )));
                }
            }
            Ok(())
        }
        Command::Iterate {
            input,
            delta,
            method,
            verify,
            format,
        } => {
            let (ideals, rule) = load_community(input, *delta, err)?;
            let method = Method::from(*method);
            let trajectory =
                iterate_with(&rule, &ideals, method, |r, i| (engine.amend)(r, i, method))?;
            let majority = Rule::simple_majority(ideals.n())?;
            let verification = if *verify && rule == majority && method == Method::Conservative {
                let single =
                    (engine.amend)(&majority, &ideals, Method::Condorcet)?.resulting_rule();
                Some(IterationCheck {
                    condorcet_from_majority: single,
                    terminal_matches: single == trajectory.terminal,
                })
            } else {
                if *verify {
                    let _ = writeln!(
                        err,
                        "note: --verify applies to conservative iteration from δ = 1/2 only"
                    );
                }
                None
            };
            let doc = IterateDoc {
                ideals,
                trajectory,
                verification,
            };
            emit(out, *format, &doc, text::iterate)?;
            match &doc.verification {
                Some(check) if !check.terminal_matches => Err(CliError::Mismatch(format!(
                    "conservative fixpoint {} differs from condorcet step {}",
                    doc.trajectory.terminal.canonical_delta(),
                    check.condorcet_from_majority.canonical_delta()
                ))),
                _ => Ok(()),
            }
        }
        Command::Random {
            n,
            count,
            seed,
            distribution,
            delta,
            out_dir,
            format,
        } => {
            if *n == 0 || *count == 0 {
                return Err(CliError::Usage("--n and --count must be at least 1".into()));
            }
            let dist: IdealDistribution = distribution.parse()?;
            let delta = delta.unwrap_or(Rational::HALF);
            let rule = snap_delta(*n, delta)?;
            let mut rng = seeded_rng(*seed, 0);
            let mut profiles = Vec::with_capacity(*count);
            let mut summary = RandomSummary {
                condorcet: OutcomeTally::default(),
                conservative: OutcomeTally::default(),
            };
            for _ in 0..*count {
                let ideals = sample_profile(*n, &dist, &mut rng)?;
                tally(
                    &mut summary.condorcet,
                    (engine.amend)(&rule, &ideals, Method::Condorcet)?.direction(),
                );
                tally(
                    &mut summary.conservative,
                    (engine.amend)(&rule, &ideals, Method::Conservative)?.direction(),
                );
                profiles.push(ideals);
            }
            let mut files = Vec::new();
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|source| io_err(dir, source))?;
                for (i, ideals) in profiles.drain(..).enumerate() {
                    let name = format!("profile_{i:04}.json");
                    let doc = CommunityDoc {
                        n: ideals.n(),
                        ideals: ideals.ideals().to_vec(),
                        delta: Some(rule.canonical_delta()),
                    };
                    let path = dir.join(&name);
                    fs::write(&path, to_json(&doc)).map_err(|source| io_err(&path, source))?;
                    files.push(name);
                }
            }
            let doc = RandomDoc {
                n: *n,
                count: *count,
                seed: *seed,
                distribution: dist.to_string(),
                delta: rule.canonical_delta(),
                profiles,
                files,
                summary,
            };
            emit(out, *format, &doc, text::random)
        }
        Command::Verify {
            n,
            seed,
            count,
            format,
        } => {
            let config = SuiteConfig {
                n_min: n.min,
                n_max: n.max,
                random_profiles: *count,
                seed: *seed,
                ..SuiteConfig::default()
            };
            let report = run_suite(&config)?;
            emit(out, *format, &report, text::verify)?;
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed())
                    .map(|c| c.name.as_str())
                    .collect();
                Err(CliError::Mismatch(failed.join(", ")))
            }
        }
    }
}

fn tally(t: &mut OutcomeTally, direction: Direction) {
    match direction {
        Direction::Increase => t.increase += 1,
        Direction::Decrease => t.decrease += 1,
        Direction::None => t.retain += 1,
    }
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    doc: &T,
    render: fn(&T) -> String,
) -> Result<(), CliError> {
    let body = match format {
        Format::Json => to_json(doc),
        Format::Text => render(doc),
    };
    out.write_all(body.as_bytes())
        .map_err(|source| io_err(Path::new("<stdout>"), source))
}

/// Reads a community file, snapping ideals (and the rule in force) to the grid.
pub fn load_community(
    path: &Path,
    delta: Option<Rational>,
    err: &mut dyn Write,
) -> Result<(IdealProfile, Rule), CliError> {
    let raw = fs::read_to_string(path).map_err(|source| io_err(path, source))?;
    let doc: CommunityDoc = serde_json::from_str(&raw).map_err(|e| {
        CliError::Core(constitution_core::Error::Parse(format!(
            "{}: {e}",
            path.display()
        )))
    })?;
    if doc.ideals.len() != doc.n {
        return Err(constitution_core::Error::Dimension {
            expected: doc.n,
            found: doc.ideals.len(),
        }
        .into());
    }
    let ingested = IdealProfile::ingest(doc.ideals)?;
    for w in &ingested.snapped {
        let _ = writeln!(
            err,
            "warning: agent {} ideal point {} snapped to {}",
            w.agent + 1,
            w.given,
            w.snapped
        );
    }
    let delta = delta.or(doc.delta).unwrap_or(Rational::HALF);
    let rule = snap_delta(doc.n, delta)?;
    if rule.canonical_delta() != delta {
        let _ = writeln!(
            err,
            "warning: rule in force {delta} snapped to {}",
            rule.canonical_delta()
        );
    }
    Ok((ingested.profile, rule))
}
