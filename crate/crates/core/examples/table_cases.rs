//! Runs every case audit in parallel; pass primes as arguments to override the scan set.

use k3audit::casebook::{run_all, verify_case, AuditConfig, CASE_IDS};

fn main() {
    let mut cfg = AuditConfig::default();
    let primes: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if !primes.is_empty() {
        cfg.primes = primes;
    }
    let reports = run_all(CASE_IDS, |id| verify_case(id, &cfg).unwrap());
    for r in &reports {
        print!("{r}");
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.id()).collect();
    println!("{} of {} cases pass; failing: {:?}", reports.len() - failed.len(), reports.len(), failed);
}
