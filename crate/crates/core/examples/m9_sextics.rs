//! Semi-invariant sextics of M9, one per character, and which ones split into
//! two cubics of the Hesse pencil.

use k3audit::casebook::{derive_m9_sextics, m9_j_candidates};

fn main() {
    let j = m9_j_candidates().unwrap();
    println!("{} order-4 elements of the Hessian group, {} give M9", j.order_four, j.candidates);
    let list = derive_m9_sextics().unwrap();
    println!("total dimension {}", list.len());
    for s in &list {
        println!("{} [{}]", s.character, s.matches.as_deref().unwrap_or("unlisted"));
        println!("  {}", s.poly);
        match &s.hesse_pair {
            Some((a, b)) => println!("  = C^2 + ({a}) BC + ({b}) B^2"),
            None => println!("  not a product of Hesse cubics"),
        }
    }
}
