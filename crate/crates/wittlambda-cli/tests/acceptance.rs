//! Acceptance suite: one pass/fail line per criterion, with the stated
//! runtime limits enforced where given. Criterion 10 runs the built binary
//! twice and compares the reports byte for byte.

use std::process::Command;
use std::time::{Duration, Instant};

use wittlambda::report::{CheckStatus, Report};
use wittlambda::verify::{self, VerifyOptions};

struct Outcome {
    line: String,
    ok: bool,
}

fn run_criterion(
    number: u8,
    title: &str,
    limit: Option<Duration>,
    f: impl FnOnce(&mut Report),
) -> Outcome {
    let mut report = Report::new(title);
    let start = Instant::now();
    f(&mut report);
    let elapsed = start.elapsed();
    let (passed, failed, _) = report.counts();
    let mut ok = report.ok();
    let mut note = format!("{passed} checks in {elapsed:.2?}");
    if let Some(lim) = limit {
        if elapsed > lim {
            ok = false;
            note = format!("{passed} checks, exceeded the {lim:?} limit ({elapsed:.2?})");
        }
    }
    if failed > 0 {
        let witness = report
            .checks
            .iter()
            .find(|c| c.status == CheckStatus::Fail)
            .and_then(|c| c.witness.clone())
            .unwrap_or_default();
        note = format!("{failed} failed: {witness}");
    }
    Outcome {
        line: format!(
            "criterion {number:2} {title}: {} ({note})",
            if ok { "PASS" } else { "FAIL" }
        ),
        ok,
    }
}

#[test]
fn acceptance() {
    let opts = VerifyOptions { seed: 42, ..VerifyOptions::default() };
    let mut outcomes = Vec::new();

    outcomes.push(run_criterion(
        1,
        "witt integrality and ghost homomorphism",
        Some(Duration::from_secs(60)),
        |r| {
            verify::witt_universal_integrality(r);
            verify::witt_ghost_sweep(r, &opts);
        },
    ));
    outcomes.push(run_criterion(2, "p-typical additive orders", None, |r| {
        verify::ptypical_orders(r)
    }));
    outcomes.push(run_criterion(3, "lambda-structure verification", None, |r| {
        verify::lambda_structures(r)
    }));
    outcomes.push(run_criterion(4, "chebychev identities", None, |r| {
        verify::chebychev_identities(r)
    }));
    outcomes.push(run_criterion(5, "F_1-valued points", None, |r| {
        verify::f1_point_checks(r, &opts)
    }));
    outcomes.push(run_criterion(6, "toric combinatorics", None, |r| {
        verify::toric_combinatorics(r, &opts)
    }));
    outcomes.push(run_criterion(
        7,
        "point counts over F_q",
        Some(Duration::from_secs(120)),
        |r| verify::point_counts(r, &opts),
    ));
    outcomes.push(run_criterion(8, "GL_n over F_1", None, |r| {
        verify::gln_checks(r, &opts)
    }));
    outcomes.push(run_criterion(9, "carlitz module", None, |r| {
        verify::carlitz_checks(r, &opts)
    }));

    // criterion 10: byte-identical verify-all reports for a fixed seed
    let exe = env!("CARGO_BIN_EXE_wittlambda");
    let run = || {
        Command::new(exe)
            .args(["verify-all", "--seed", "42"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success() && a.stdout == b.stdout;
    outcomes.push(Outcome {
        line: format!(
            "criterion 10 determinism: {} ({} bytes{})",
            if ok { "PASS" } else { "FAIL" },
            a.stdout.len(),
            if a.stdout == b.stdout { ", identical" } else { ", DIFFER" }
        ),
        ok,
    });

    for o in &outcomes {
        println!("{}", o.line);
    }
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.ok)
        .map(|o| o.line.as_str())
        .collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
