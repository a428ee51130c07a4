//! Numerical bookkeeping for double covers X → Y of rational surfaces:
//! Euler characteristics, Mori fiber bounds, fixed-point counts, Hurwitz
//! and Riemann–Hurwitz arithmetic.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("{n} rational branch curves exceed the bound {bound}")]
    TooManyRationalCurves { n: u32, bound: u32 },
    #[error("Euler characteristic of a minimal rational surface must be at least 3, got {0}")]
    BadEuler(i64),
    #[error("symplectic automorphism orders range over 2..=8, got {0}")]
    BadOrder(u32),
    #[error("the Hurwitz bound needs genus at least 2, got {0}")]
    SmallGenus(i64),
}

/// Upper bound on the number of rational branch curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NBound {
    Ten,
    Nineteen,
}

impl NBound {
    pub fn value(self) -> u32 {
        match self {
            NBound::Ten => 10,
            NBound::Nineteen => 19,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverScenario {
    pub e_min: i64,
    pub m: u32,
    pub n: u32,
    pub g: Option<i64>,
}

impl CoverScenario {
    pub fn new(e_min: i64, m: u32, n: u32, g: Option<i64>) -> Result<CoverScenario, CoverError> {
        CoverScenario::with_bound(e_min, m, n, g, NBound::Ten)
    }

    pub fn with_bound(e_min: i64, m: u32, n: u32, g: Option<i64>, bound: NBound) -> Result<CoverScenario, CoverError> {
        if n > bound.value() {
            return Err(CoverError::TooManyRationalCurves { n, bound: bound.value() });
        }
        if e_min < 3 {
            return Err(CoverError::BadEuler(e_min));
        }
        Ok(CoverScenario { e_min, m, n, g })
    }
}

/// Euler characteristic of a Del Pezzo surface of degree d (3 for P2).
pub fn del_pezzo_euler(d: i64) -> i64 {
    12 - d
}

/// 24 − [2e_min + 2m − 2n + (2g − 2)]; zero when the scenario is consistent.
pub fn euler_residual(s: &CoverScenario) -> i64 {
    let curve = s.g.map_or(0, |g| 2 * g - 2);
    24 - (2 * s.e_min + 2 * s.m as i64 - 2 * s.n as i64 + curve)
}

/// Upper bound n + 12 − e_min on the number of Mori fibers.
pub fn mori_bound(n: i64, e_min: i64) -> i64 {
    n + 12 - e_min
}

/// ⌈k·r_k/2⌉.
pub fn ek_lower_bound(k: i64, r_k: i64) -> i64 {
    (k * r_k + 1).div_euclid(2)
}

/// N·n/2 ≤ n + 12 − e_min.
pub fn minimizing_feasible(big_n: i64, n: i64, e_min: i64) -> bool {
    big_n * n <= 2 * mori_bound(n, e_min)
}

/// Largest n with `minimizing_feasible(N, n, e_min)`.
pub fn minimizing_cutoff(big_n: i64, e_min: i64) -> i64 {
    (0..=64).take_while(|&n| minimizing_feasible(big_n, n, e_min)).last().unwrap_or(-1)
}

/// Number of fixed points of a symplectic automorphism of the given order.
pub fn nikulin_fix_count(ord: u32) -> Result<u32, CoverError> {
    match ord {
        2 => Ok(8),
        3 => Ok(6),
        4 => Ok(4),
        5 => Ok(4),
        6 => Ok(2),
        7 => Ok(3),
        8 => Ok(2),
        _ => Err(CoverError::BadOrder(ord)),
    }
}

/// 84(g − 1).
pub fn hurwitz_cap(g: i64) -> Result<i64, CoverError> {
    if g < 2 {
        return Err(CoverError::SmallGenus(g));
    }
    Ok(84 * (g - 1))
}

/// Smallest genus g ≥ 2 whose Hurwitz bound admits a group of the given order.
pub fn hurwitz_min_genus(order: i64) -> i64 {
    (2..).find(|&g| 84 * (g - 1) >= order).expect("unbounded search")
}

/// deg·e(quotient) − e(total): the total branch point contribution.
pub fn rh_branch_contribution(cover_degree: i64, e_total: i64, e_quotient: i64) -> i64 {
    cover_degree * e_quotient - e_total
}

/// Σ (|stabilizer| − 1)·(orbit length) over branch orbits.
pub fn branch_sum(orbits: &[(i64, i64)]) -> i64 {
    orbits.iter().map(|(stab, len)| (stab - 1) * len).sum()
}

/// Genus of a smooth curve in |−2K| on a Del Pezzo surface of degree d.
pub fn genus_from_degree(d: i64) -> i64 {
    d + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BranchMeeting {
    Contained,
    Disjoint,
    OnePoint,
    TwoPoints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MoriFiberRecord {
    pub self_intersection: i64,
    pub branch_meeting: BranchMeeting,
    /// `None` when the fiber lies in the branch locus.
    pub preimage_irreducible: Option<bool>,
}

pub fn classify_mori_fiber(meeting: BranchMeeting) -> MoriFiberRecord {
    let (self_intersection, preimage_irreducible) = match meeting {
        BranchMeeting::Contained => (-4, None),
        BranchMeeting::Disjoint => (-2, Some(false)),
        BranchMeeting::OnePoint => (-1, Some(false)),
        BranchMeeting::TwoPoints => (-1, Some(true)),
    };
    MoriFiberRecord { self_intersection, branch_meeting: meeting, preimage_irreducible }
}

/// Self-intersection of the image of a ramification curve.
pub fn ramification_selfint(c_sq: i64) -> i64 {
    2 * c_sq
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler() {
        let s = |e, g| euler_residual(&CoverScenario::new(e, 0, 0, Some(g)).unwrap());
        assert_eq!((s(3, 10), s(9, 4), s(3, 9)), (0, 0, 2));
        for d in 1..=9 {
            assert_eq!(s(del_pezzo_euler(d), genus_from_degree(d)), 0);
        }
        assert!(CoverScenario::new(3, 0, 11, None).is_err());
        assert!(CoverScenario::with_bound(3, 0, 11, None, NBound::Nineteen).is_ok());
    }

    #[test]
    fn bounds() {
        assert_eq!((mori_bound(0, 3), mori_bound(10, 3), mori_bound(4, 8)), (9, 19, 8));
        assert_eq!((ek_lower_bound(2, 10), ek_lower_bound(5, 6), ek_lower_bound(1, 0)), (10, 15, 0));
        assert!(!minimizing_feasible(4, 10, 3));
        assert!(minimizing_feasible(5, 6, 3) && !minimizing_feasible(5, 7, 3));
        assert!(minimizing_feasible(1, 0, 3));
        assert_eq!((minimizing_cutoff(4, 3), minimizing_cutoff(5, 3)), (9, 6));
    }

    #[test]
    fn tables() {
        let t: Vec<u32> = (2..=8).map(|o| nikulin_fix_count(o).unwrap()).collect();
        assert_eq!(t, vec![8, 6, 4, 4, 2, 3, 2]);
        assert!(nikulin_fix_count(9).is_err());
        assert_eq!((hurwitz_cap(3).unwrap(), hurwitz_cap(12).unwrap(), hurwitz_cap(2).unwrap()), (168, 924, 84));
        assert!(hurwitz_cap(1).is_err());
        assert_eq!(hurwitz_min_genus(960), 13);
        assert_eq!(rh_branch_contribution(16, -18, 2), 50);
        assert_eq!(rh_branch_contribution(8, -18, 2), 34);
        assert_eq!(rh_branch_contribution(2, 8, 4), 0);
        assert_eq!(classify_mori_fiber(BranchMeeting::TwoPoints).preimage_irreducible, Some(true));
        assert_eq!(classify_mori_fiber(BranchMeeting::Contained).self_intersection, -4);
        assert_eq!(classify_mori_fiber(BranchMeeting::Disjoint).self_intersection, -2);
        assert_eq!((ramification_selfint(-2), ramification_selfint(0), ramification_selfint(1)), (-4, 0, 2));
        assert_eq!((genus_from_degree(3), genus_from_degree(9), genus_from_degree(1)), (4, 10, 2));
    }
}
