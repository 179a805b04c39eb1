//! One PASS/FAIL line per acceptance criterion, followed by the first few
//! failing checks of each failing criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use omega_scl::report::{run_target, RunOptions, Status};

const CRITERIA: &[(u32, &str, &str)] = &[
    (
        1,
        "chain-grid",
        "phi and barphi of chain elements match their closed forms, 4 <= m <= 10",
    ),
    (2, "headline", "barphi_{6,2}((s1 s2)^6) = -8/5"),
    (
        3,
        "meyer-bridge",
        "hermitian (m,2,1) tau equals Meyer tau; separating-twist values, g <= 4",
    ),
    (
        4,
        "boundary-witness",
        "delta barphi_g(c2^2..c2g^2, d1+ d1- .. dg+ dg-) = -2g, g <= 4",
    ),
    (
        5,
        "barge-ghys",
        "Meyer tau(A^k, A) equals the Barge-Ghys signature",
    ),
    (
        6,
        "independence",
        "barphi value matrices are nonsingular for 4 <= m <= 30",
    ),
    (
        7,
        "scl-lower",
        "Bavard lower bounds 1/5, 1/2 and separating-twist bounds",
    ),
    (8, "properties", "seeded property suites, 1000 cases each"),
    (
        9,
        "defect-guard",
        "|delta barphi_{m,j}| <= m - 2 on sampled pairs",
    ),
    (
        10,
        "power-sum",
        "proof power sums equal brute force; phi - barphi gap",
    ),
    (
        11,
        "scl-upper",
        "word identities behind the scl upper bound",
    ),
];

const SHOWN_FAILURES: usize = 5;

fn main() -> ExitCode {
    let opts = RunOptions::default();
    let mut failed = 0;
    for &(n, id, what) in CRITERIA {
        let start = Instant::now();
        let (status, detail, failures) = match run_target(id, &opts) {
            Ok(r) => {
                let detail = format!("{}/{} checks", r.passed, r.checks.len());
                let failures: Vec<String> = r
                    .failures()
                    .take(SHOWN_FAILURES)
                    .map(|c| {
                        format!(
                            "{}: expected {}, got {} ({})",
                            c.name, c.expected, c.actual, c.mode
                        )
                    })
                    .collect();
                (r.status, detail, failures)
            }
            Err(e) => (Status::Fail, format!("error: {e}"), Vec::new()),
        };
        let verdict = if status == Status::Pass {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "{verdict} criterion {n:>2} [{id}] {what}: {detail}, {status}, {:.1?}",
            start.elapsed()
        );
        for f in failures {
            println!("       {f}");
        }
        failed += usize::from(status != Status::Pass);
    }
    println!(
        "{} of {} criteria pass",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
