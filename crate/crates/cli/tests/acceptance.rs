//! Acceptance criteria 1 to 11, run in order so the pinned runtimes are
//! measured without competing criteria.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use sflat::battery::{
    artinian_grid, certificate_battery, delta_battery, distinguishing, exact_height, mu_values,
    orthogonality_soundness, projectivity_battery, telescope_battery, weakly_cotorsion_battery, CriterionReport,
};

const SEED: u64 = 42;

struct Line {
    id: u8,
    pass: bool,
    text: String,
}

fn timed(limit: Option<Duration>, run: impl FnOnce() -> CriterionReport) -> Line {
    let start = Instant::now();
    let r = run();
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took < l);
    let budget = match limit {
        Some(l) => format!(", {took:.2?} of {l:?}"),
        None => String::new(),
    };
    let mut text = format!("{}{budget}", r.line());
    if !in_time {
        text = text.replace(": PASS", ": FAIL (over time)");
    }
    for f in &r.failures {
        text.push_str(&format!("\n    {f}"));
    }
    Line {
        id: r.id,
        pass: r.pass && in_time,
        text,
    }
}

fn determinism() -> Line {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sflat"))
            .args(["battery", "--seed", "42", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let pass = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    Line {
        id: 11,
        pass,
        text: format!(
            "criterion 11 determinism: {} ({} bytes, identical {})",
            if pass { "PASS" } else { "FAIL" },
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let ms = Duration::from_millis;
    let lines = vec![
        timed(Some(ms(1)), mu_values),
        timed(Some(ms(5000)), || distinguishing(SEED, 100)),
        timed(None, || exact_height(SEED, 100)),
        timed(Some(ms(2000)), artinian_grid),
        timed(Some(ms(10_000)), telescope_battery),
        timed(None, delta_battery),
        timed(None, weakly_cotorsion_battery),
        timed(Some(ms(5000)), projectivity_battery),
        timed(None, || certificate_battery(SEED)),
        timed(None, || orthogonality_soundness(SEED, 200)),
        determinism(),
    ];
    // written past the test harness capture so every run shows the summary
    let mut err = std::io::stderr().lock();
    for l in &lines {
        writeln!(err, "{}", l.text).unwrap();
    }
    let failed: Vec<u8> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
