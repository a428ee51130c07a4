//! The Klein quartic under L2(7): characters, the invariant space, and its Hessian.

use k3audit::casebook::hessian;
use k3audit::invariants::{curve_character, invariant_basis};
use k3audit::matgroup::catalogue::{catalogue, load_poly};
use k3audit::matgroup::LinearCharacter;

fn main() {
    let g = catalogue("l27").unwrap();
    println!("{:?}", g.linear.structural_profile());
    let klein = load_poly("klein.poly").unwrap().poly;
    match curve_character(&klein, &g.linear) {
        Some(chi) => println!("klein: character {}", chi.spec()),
        None => println!("klein: not semi-invariant"),
    }

    let trivial = LinearCharacter::trivial(&g.linear);
    for d in [4, 6] {
        let space = invariant_basis(&g.linear, d, &trivial).unwrap();
        println!("degree {d}: dimension {}", space.dimension());
        for b in &space.basis {
            println!("  {b}");
        }
    }

    let h = hessian(&klein);
    let sextic = load_poly("klein_hessian.poly").unwrap().poly;
    println!("Hess(klein) = {} * klein_hessian", h.proportionality(&sextic).unwrap());
}
