fn main() {
    let cfg = symmcon::VerifyConfig::default();
    let start = std::time::Instant::now();
    let reports = symmcon::run_suite(&cfg).unwrap();
    let mut fails = 0;
    for r in &reports {
        if !r.pass {
            fails += 1;
            println!("FAIL {} {} d={} defect={:.3e} tol={:.1e}", r.check, r.family, r.dim, r.max_defect, r.tolerance);
        }
    }
    println!("{} checks, {} failed, {:.2}s", reports.len(), fails, start.elapsed().as_secs_f64());
}
