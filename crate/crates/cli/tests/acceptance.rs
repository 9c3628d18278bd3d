//! Acceptance criteria 1 to 14. Prints one line per criterion and exits
//! nonzero if any fails.

use std::fs::File;
use std::process::{Command, ExitCode};
use std::time::Instant;

use sympl4::io::read_trajectory_csv;
use sympl4::verify::{run_all, trajectory_metrics, CriterionOutcome, VerifyOptions, TRAJECTORY_PHI, TRAJECTORY_R};

const BIN: &str = env!("CARGO_BIN_EXE_sympl4");

/// Criterion 13 again, this time through the CSV files the binary writes.
fn trajectory_via_cli() -> (bool, String) {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut defect = 0.0f64;
    let mut ratio_err = f64::NAN;
    for r in TRAJECTORY_R {
        for phi in TRAJECTORY_PHI {
            let path = dir.path().join(format!("traj_{r}_{phi:.4}.csv"));
            let status = Command::new(BIN)
                .args(["trajectory", "--r", &r.to_string(), "--phi", &phi.to_string(), "--out"])
                .arg(&path)
                .output()
                .expect("spawn sympl4");
            if !status.status.success() {
                return (false, format!("trajectory r={r} phi={phi} failed"));
            }
            let rows = read_trajectory_csv(File::open(&path).expect("csv written")).expect("csv parses");
            let (d, ratio) = trajectory_metrics(&rows);
            defect = defect.max(d);
            if r == 0.6 && phi == 0.0 {
                ratio_err = (ratio - 1.2f64.exp()).abs();
            }
        }
    }
    (
        defect <= 1e-9 && ratio_err <= 1e-6,
        format!("CLI CSV: two-form defect {defect:.2e}, axis ratio error {ratio_err:.2e}"),
    )
}

fn verify_via_cli() -> (bool, String) {
    let start = Instant::now();
    let ok = Command::new(BIN).arg("verify").output().expect("spawn sympl4");
    let elapsed = start.elapsed().as_secs_f64();
    let broken = Command::new(BIN)
        .args(["verify", "--inject-perturbation", "1e-6"])
        .output()
        .expect("spawn sympl4");
    let passed = ok.status.success() && elapsed <= 10.0 && !broken.status.success();
    (
        passed,
        format!(
            "exit {:?} in {elapsed:.3} s (budget 10 s); perturbed run exit {:?}",
            ok.status.code(),
            broken.status.code()
        ),
    )
}

fn line(id: u8, name: &str, passed: bool, detail: &str) {
    println!("[{}] criterion {id:>2} {name:<34} {detail}", if passed { "PASS" } else { "FAIL" });
}

fn main() -> ExitCode {
    let mut results: Vec<CriterionOutcome> = run_all(&VerifyOptions::default());
    let mut all = true;
    for o in &mut results {
        if o.id == 13 {
            let (cli_ok, detail) = trajectory_via_cli();
            o.passed &= cli_ok;
            o.detail = format!("{}; {detail}", o.detail);
        }
        println!("{}", o.line());
        all &= o.passed;
    }
    let (ok14, detail14) = verify_via_cli();
    line(14, "verify command", ok14, &detail14);
    all &= ok14;
    if all {
        println!("acceptance: all 14 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
