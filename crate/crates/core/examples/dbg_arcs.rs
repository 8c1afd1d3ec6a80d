use std::time::Instant;
fn main() {
    let t0 = Instant::now();
    let out = cubicwave_core::validate::run_suite("stability", 42).unwrap();
    for o in &out {
        println!("[{:>8.1?}] {}: {} — {}", t0.elapsed(), o.name,
                 if o.passed { "PASS" } else { "FAIL" }, o.details);
    }
}
