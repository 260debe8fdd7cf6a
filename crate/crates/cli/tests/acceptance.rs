//! Runs every acceptance criterion at its tolerance and time limit and prints
//! one PASS/FAIL line per criterion.

use std::io::Write;

use galdef_cli::suite;

#[test]
fn acceptance() {
    let results = suite::run_all(7, None);
    // written straight to stderr so the lines survive output capture
    let mut err = std::io::stderr().lock();
    for r in &results {
        writeln!(err, "{}", r.line()).unwrap();
        for f in r.failures.iter().skip(1).take(4) {
            writeln!(err, "      {f}").unwrap();
        }
    }
    drop(err);
    assert_eq!(results.len(), 9);
    let failed: Vec<u8> = results
        .iter()
        .filter(|r| !(r.passed && r.within_limit()))
        .map(|r| r.id)
        .collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
