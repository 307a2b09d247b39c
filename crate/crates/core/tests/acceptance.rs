//! Runs the ten acceptance criteria at the small and full profiles and
//! prints one PASS/FAIL line per criterion. Built without the libtest
//! harness so the report is never captured.

use std::process::ExitCode;
use std::time::Instant;

use wittlab::acceptance::{run_suite, Profile, SuiteReport};

fn print_report(report: &SuiteReport) {
    for c in &report.criteria {
        let precision = c
            .effective_precision
            .map_or("exact".to_string(), |d| format!("{d} digits"));
        println!(
            "{} [{}] {:>2} {:<32} {:>8.0} ms  {}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            report.profile.name,
            c.id,
            c.name,
            c.elapsed_ms,
            precision,
            c.detail,
        );
    }
}

fn check(profile: Profile) -> bool {
    let start = Instant::now();
    let report = run_suite(&profile);
    print_report(&report);
    let secs = start.elapsed().as_secs_f64();
    let in_time = secs < 60.0;
    println!(
        "{} [{}] suite finished in {secs:.1} s (limit 60 s)",
        if in_time { "PASS" } else { "FAIL" },
        profile.name
    );
    report.criteria.len() == 10 && report.passed && in_time
}

fn main() -> ExitCode {
    let small = check(Profile::small());
    let full = check(Profile::full());
    if small && full {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
