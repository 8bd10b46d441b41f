//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use macfock::verify::{criterion_name, run_exact, CriterionResult};
use std::process::Command;

/// Runs `verify all --quick` in a fresh process with the given thread count.
fn suite_output(threads: usize) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_macfock"))
        .args(["verify", "all", "--quick", "--format", "json"])
        .env("MACFOCK_THREADS", threads.to_string())
        .output()
        .expect("run macfock");
    (out.status.code(), out.stdout)
}

fn determinism() -> CriterionResult {
    let single = std::thread::spawn(|| suite_output(1));
    let multi = std::thread::spawn(|| suite_output(4));
    let (c1, s1) = single.join().expect("1-thread run");
    let (c4, s4) = multi.join().expect("4-thread run");
    let pass = !s1.is_empty() && s1 == s4 && c1 == c4;
    CriterionResult {
        id: 12,
        name: criterion_name(12),
        pass,
        detail: format!(
            "separate processes with MACFOCK_THREADS=1 and 4: {} vs {} bytes, exit {c1:?} vs {c4:?}, identical={}",
            s1.len(),
            s4.len(),
            s1 == s4
        ),
    }
}

fn main() {
    let mut results = run_exact(true);
    results.push(determinism());
    for r in &results {
        println!("{} [{:>2}] {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name, r.detail);
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("failing: {failed:?}");
        std::process::exit(1);
    }
}
