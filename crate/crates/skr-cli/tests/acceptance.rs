//! Acceptance criteria 1–9, one PASS/FAIL line each.

use skr_cli::config::RunConfig;
use skr_cli::report::Report;
use skr_cli::{suites, table};
use skr_core::error::Result;
use std::process::ExitCode;
use std::time::Instant;

fn merge(name: &str, parts: Vec<Report>) -> Report {
    let mut r = Report::new(name, &[]);
    for p in parts {
        for c in p.checks {
            r.checks.push(skr_cli::report::Check { name: format!("{}/{}", p.suite, c.name), ..c });
        }
    }
    r
}

fn criterion(n: u32, title: &str, run: impl FnOnce() -> Result<Report>) -> bool {
    let t = Instant::now();
    let (pass, detail) = match run() {
        Ok(r) => {
            let fails: Vec<String> = r.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            let detail = if fails.is_empty() {
                format!("{} checks", r.checks.len())
            } else {
                fails.join("; ")
            };
            (r.passed(), detail)
        }
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "{} criterion {n} ({title}): {detail} [{:.1}s]",
        if pass { "PASS" } else { "FAIL" },
        t.elapsed().as_secs_f64()
    );
    pass
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let results = [
        criterion(1, "norm table", || table::table(&table::parse_ells("10..20")?, &cfg)),
        criterion(2, "Gauss-sum identity", || suites::gauss(500)),
        criterion(3, "Weil bound sweep", || suites::weil(20, 200)),
        criterion(4, "Petersson two-sided check", || suites::petersson(&[12, 22], &suites::square_pairs(6), 10_000)),
        criterion(5, "Bessel-sum asymptotics", || {
            Ok(merge("bessel", vec![suites::bessel(&[64.0, 128.0, 256.0], &[0.2, 0.5, 0.8])?, suites::proposition_a()?]))
        }),
        criterion(6, "Euler and constant identities", || suites::euler(cfg.seed)),
        criterion(7, "SK structural suite", || suites::nv1(&table::parse_ells("10..30")?)),
        criterion(8, "Ichino end-to-end", || suites::ichino(24, cfg.cutoff_c)),
        criterion(9, "Kohnen–Zagier ratio", || suites::kz(12)),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed} of {} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
