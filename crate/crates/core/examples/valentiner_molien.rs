//! Molien dimensions for the Valentiner group, by trace formula and by monomial traces.

use k3audit::invariants::{invariant_dimension, invariant_dimension_by_monomials};
use k3audit::matgroup::catalogue::catalogue;
use k3audit::matgroup::LinearCharacter;

fn main() {
    let g = catalogue("valentiner").unwrap();
    println!("linear order {}, projective order {}", g.linear.order(), g.projective.order());
    let chi = LinearCharacter::trivial(&g.linear);
    for d in 1..=12 {
        let a = invariant_dimension(&g.linear, d, &chi).unwrap();
        print!("d={d:>2}: {a}");
        if d <= 6 {
            print!(" (monomials: {})", invariant_dimension_by_monomials(&g.linear, d as u32, &chi).unwrap());
        }
        println!();
    }
}
