//! Acceptance suite: runs every criterion and prints one verdict line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use onepmatch_core::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let limit = std::env::var("ONEPMATCH_BRUTE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(14);
    let results = run_all(limit);
    let mut all_ok = true;
    for r in &results {
        println!("{}", r.line());
        all_ok &= r.passed;
    }
    assert!(all_ok, "some acceptance criteria failed");
    assert_eq!(results.len(), 8);
}
