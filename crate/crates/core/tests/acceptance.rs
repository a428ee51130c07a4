//! Acceptance checklist: one line per criterion, followed by independent
//! oracle cross-checks. Runs without the libtest harness so the lines always
//! print.
//!
//! Criterion 3 is expected to fail: the M9 sextic space has dimension 4, not
//! 3. The run succeeds when every status matches `EXPECTED`.

use std::process::ExitCode;

use k3audit::casebook::{audit_nonexistence, derive_m9_sextics, AuditConfig};
use k3audit::coverbook::{euler_residual, minimizing_cutoff, nikulin_fix_count, CoverScenario};
use k3audit::delpezzo::PicardLattice;
use k3audit::exactfield::Cyclo;
use k3audit::matgroup::catalogue::{catalogue, load_poly};
use k3audit::multipoly::{Poly, ProjPoint};
use k3audit::selftest::{acceptance, DEFAULT_INSTANCES, DEFAULT_SEED};

const EXPECTED: [bool; 10] = [true, true, false, true, true, true, true, true, true, true];

/// Classes aH - Σ b_i E_i with square -1 and K-degree -1, by exhaustion.
fn minus_one_count_oracle(r: usize) -> usize {
    let mut count = 0;
    let mut b = vec![-1i64; r];
    loop {
        let s: i64 = b.iter().sum();
        let q: i64 = b.iter().map(|x| x * x).sum();
        for a in 0..=6i64 {
            if a * a - q == -1 && 3 * a - s == 1 {
                count += 1;
            }
        }
        let mut i = 0;
        while i < r && b[i] == 3 {
            b[i] = -1;
            i += 1;
        }
        if i == r {
            return count;
        }
        b[i] += 1;
    }
}

/// 24 / (n ∏_{p | n} (1 + 1/p)).
fn fixed_point_oracle(n: u32) -> u32 {
    let (mut num, mut den) = (24, n);
    for p in [2, 3, 5, 7] {
        if n.is_multiple_of(p) {
            num *= p;
            den *= p + 1;
        }
    }
    assert_eq!(num % den, 0);
    num / den
}

fn oracles() -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();

    let counts: Vec<usize> = (1..=7).map(|d| PicardLattice::del_pezzo(d).unwrap().minus_one_classes().len()).collect();
    let brute: Vec<usize> = (1..=7).map(|d| minus_one_count_oracle(9 - d)).collect();
    out.push(("minus-one classes match exhaustive search", counts == brute && brute == [240, 56, 27, 16, 10, 6, 3]));

    let fix: Vec<u32> = (2..=8).map(|n| nikulin_fix_count(n).unwrap()).collect();
    let fix_oracle: Vec<u32> = (2..=8).map(fixed_point_oracle).collect();
    out.push(("fixed-point table matches the closed formula", fix == fix_oracle));

    let euler_ok = [(3, 10), (9, 4), (11, 2)]
        .iter()
        .all(|&(e, g)| euler_residual(&CoverScenario::new(e, 0, 0, Some(g)).unwrap()) == 24 - (2 * e + 2 * g - 2));
    out.push(("euler residual matches direct arithmetic", euler_ok));

    let cut = |n_big: i64, e: i64| (0..100).filter(|&n| n_big * n <= 2 * (n + 12 - e)).max().unwrap();
    out.push(("mori cutoffs match direct search", (minimizing_cutoff(4, 3), minimizing_cutoff(5, 3)) == (cut(4, 3), cut(5, 3))));

    let m20 = audit_nonexistence("M20").unwrap();
    let inline = 84 * (12 - 1);
    out.push(("hurwitz witness", inline == 924 && m20.witness("hurwitz").unwrap().contains(&format!("{inline} < 960"))));

    let f = load_poly("case3b.poly").unwrap().poly;
    let nodes = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].iter().all(|c| {
        let p = ProjPoint::from_ints(c);
        f.evaluate(&p).unwrap().is_zero() && f.partials().iter().all(|d| d.evaluate(&p).unwrap().is_zero())
    });
    out.push(("quintic-model sextic is singular at the four base points", nodes));

    let p = |s: &str| Poly::parse(3, s).unwrap();
    let c = p("x1^3 + x2^3 + x3^3 - 3*x1*x2*x3");
    let b = p("x1*x2*x3");
    let extra = c.mul(&c).sub(&b.mul(&b).scale(&Cyclo::from_int(27)));
    let sextics = derive_m9_sextics().unwrap();
    let found = sextics.iter().any(|s| s.poly.proportionality(&extra).is_some());
    let m9 = catalogue("m9").unwrap();
    let semi = m9.entry.matrices().iter().all(|g| extra.substitute_linear(g).unwrap().proportionality(&extra).is_some());
    out.push(("fourth M9 sextic is (C - 3B)^2 - 27B^2 and semi-invariant", found && semi && sextics.len() == 4));

    out
}

fn main() -> ExitCode {
    let mut ok = true;
    let cfg = AuditConfig::default();
    for (c, want) in acceptance(&cfg, DEFAULT_SEED, DEFAULT_INSTANCES).iter().zip(EXPECTED) {
        println!("{c}");
        if c.passed != want {
            println!("  unexpected status for criterion {}", c.number);
            ok = false;
        }
    }
    for (name, passed) in oracles() {
        println!("oracle {} {name}", if passed { "PASS" } else { "FAIL" });
        ok &= passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
