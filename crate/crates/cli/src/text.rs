use std::fmt::Write;

use constitution_core::verify::SuiteReport;
use constitution_core::{AmendmentOutcome, Verdict};

use crate::docs::{AmendDoc, FoundDoc, IterateDoc, RandomDoc};

pub fn verdict(o: &AmendmentOutcome) -> String {
    match &o.verdict {
        Verdict::Amend { new_rule, .. } => format!(
            "amend {} -> {}",
            o.current.canonical_delta(),
            new_rule.canonical_delta()
        ),
        Verdict::Retain => format!("retain {}", o.current.canonical_delta()),
    }
}

pub fn found(doc: &FoundDoc) -> String {
    let r = &doc.report;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, mode = {}, candidates = {}",
        r.n,
        r.mode.name(),
        r.candidates
    );
    for sv in &r.survivors {
        match (sv.degenerate, sv.threshold) {
            (true, _) => {
                let _ = writeln!(s, "  survivor: never-accept (degenerate)");
            }
            (false, Some(m)) => {
                let _ = writeln!(s, "  survivor: threshold m = {m}");
            }
            (false, None) => {
                let _ = writeln!(s, "  survivor: non-threshold table {}", sv.table);
            }
        }
    }
    let _ = writeln!(s, "characterization holds: {}", r.characterization_holds);
    let _ = writeln!(s, "founding rule: {}", doc.founding_rule);
    s
}

pub fn amend(doc: &AmendDoc) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "method: {}", doc.method);
    let _ = writeln!(s, "outcome: {}", verdict(&doc.outcome));
    if let Verdict::Amend {
        support, ballot, ..
    } = &doc.outcome.verdict
    {
        let _ = writeln!(s, "ballot: {ballot} ({support} approvals)");
    }
    if let Some(o) = &doc.oracle {
        let list = |v: &[constitution_core::Rational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(s, "oracle: {}", verdict(&o.outcome));
        let _ = writeln!(s, "  survivors: [{}]", list(&o.diagnostic.survivors));
        let _ = writeln!(s, "  undominated: [{}]", list(&o.diagnostic.undominated));
        let _ = writeln!(s, "  max approval: [{}]", list(&o.diagnostic.max_approval));
    }
    s
}

pub fn iterate(doc: &IterateDoc) -> String {
    let mut s = String::new();
    let path: Vec<String> = doc
        .trajectory
        .deltas()
        .iter()
        .map(|d| d.to_string())
        .collect();
    let _ = writeln!(s, "method: {}", doc.trajectory.method);
    let _ = writeln!(s, "trajectory: {}", path.join(" -> "));
    let _ = writeln!(s, "terminal: {}", doc.trajectory.terminal);
    if let Some(v) = &doc.verification {
        let _ = writeln!(
            s,
            "condorcet from 1/2: {} ({})",
            v.condorcet_from_majority.canonical_delta(),
            if v.terminal_matches {
                "matches"
            } else {
                "MISMATCH"
            }
        );
    }
    s
}

pub fn random(doc: &RandomDoc) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, count = {}, seed = {}, distribution = {}, δ = {}",
        doc.n, doc.count, doc.seed, doc.distribution, doc.delta
    );
    for p in &doc.profiles {
        let ideals: Vec<String> = p.ideals().iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "  [{}]", ideals.join(", "));
    }
    for f in &doc.files {
        let _ = writeln!(s, "  wrote {f}");
    }
    for (name, t) in [
        ("condorcet", doc.summary.condorcet),
        ("conservative", doc.summary.conservative),
    ] {
        let _ = writeln!(
            s,
            "{name}: increase {} decrease {} retain {}",
            t.increase, t.decrease, t.retain
        );
    }
    s
}

pub fn verify(report: &SuiteReport) -> String {
    let mut s = String::new();
    let c = &report.config;
    let _ = writeln!(
        s,
        "n = {}..{}, seed = {}, random profiles per n = {}",
        c.n_min, c.n_max, c.seed, c.random_profiles
    );
    for check in &report.checks {
        let _ = writeln!(
            s,
            "{} {} (checked {}, violations {})",
            if check.passed() { "PASS" } else { "FAIL" },
            check.name,
            check.checked,
            check.violations
        );
        if let Some(v) = &check.first_violation {
            let _ = writeln!(s, "    first: {v}");
        }
    }
    for o in &report.observations {
        let _ = writeln!(s, "note {}: {} of {}", o.name, o.hits, o.checked);
    }
    let _ = writeln!(
        s,
        "{}",
        if report.passed {
            "all checks passed"
        } else {
            "some checks FAILED"
        }
    );
    s
}
