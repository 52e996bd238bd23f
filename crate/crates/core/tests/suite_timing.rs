use bflab::suites::{run_invariant_suites, SuiteLevel, SuiteStatus};

#[test]
#[ignore]
fn time_each_suite() {
    let t0 = std::time::Instant::now();
    let out = run_invariant_suites(1, SuiteLevel::Fast);
    println!("total fast: {:?}", t0.elapsed());
    let mut sorted: Vec<_> = out.iter().collect();
    sorted.sort_by_key(|o| std::cmp::Reverse(o.millis));
    for o in sorted.iter().take(12) {
        println!("{:>8} ms  {}  [{:?}]", o.millis, o.id, o.status);
    }
    for o in &out {
        assert_ne!(o.status, SuiteStatus::Fail, "{}: {}", o.id, o.detail);
    }
}
