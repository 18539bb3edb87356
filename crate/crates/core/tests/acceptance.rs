//! Acceptance run: one PASS/FAIL line per criterion, all exact.

use std::process::ExitCode;
use std::time::Instant;

use cyclo_hecke::verify::{self, Check, DeltaUnderTest, Scale};

fn report(n: u32, what: &str, checks: Vec<Check>, started: Instant) -> bool {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    let verdict = if checks.is_empty() || !failed.is_empty() { "FAIL" } else { "PASS" };
    println!(
        "{verdict} criterion {n}: {what} ({} checks, {} failed, exact, zero tolerance, {:.1}s)",
        checks.len(),
        failed.len(),
        started.elapsed().as_secs_f64()
    );
    for c in failed.iter().take(5) {
        println!("    {c}");
    }
    failed.is_empty() && !checks.is_empty()
}

fn main() -> ExitCode {
    let full = Scale::Full;
    let delta = DeltaUnderTest::default();
    type Run<'a> = Box<dyn Fn() -> Vec<Check> + 'a>;
    let criteria: Vec<(&str, Run)> = vec![
        ("seminormal relations, n ≤ 4, r ≤ 3 and (4,3)", Box::new(|| verify::relations(full))),
        ("MN character = seminormal trace on every class", Box::new(|| verify::mn_vs_oracle(full, &delta))),
        ("Δ closed form = tableau sum, skew ≤ 6 boxes, r ≤ 3", Box::new(|| verify::delta_closed_vs_brute(full, &delta))),
        ("bitrace closed form = twisted bitrace", Box::new(|| verify::clifford_vs_oracle(full))),
        ("Clifford inversion round trip", Box::new(|| verify::inversion_round_trip(full))),
        ("poset identity, skew ≤ 7 boxes, 0 ≤ k ≤ 3", Box::new(|| verify::poset_identity(full))),
        ("group specialization orthogonality", Box::new(|| verify::group_orthogonality(full))),
        ("C = [γ]/γ, 2 ≤ γ ≤ 6", Box::new(|| verify::c_constant_identity(full))),
    ];
    let mut ok = true;
    for (n, (what, run)) in (1..).zip(criteria) {
        let started = Instant::now();
        ok &= report(n, what, run(), started);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
