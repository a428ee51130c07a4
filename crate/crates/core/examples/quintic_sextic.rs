//! Solves for the four-nodal S5 sextic in the plane model of the quintic Del Pezzo
//! surface and checks it against its proper transform.

use k3audit::casebook::{derive_quintic_dp_sextic, proper_transform_invariance, quintic_constraints};

fn main() {
    let sys = quintic_constraints();
    for c in sys.constraints() {
        println!("{:<22} {:?}", c.label, c.row.iter().map(|r| r.to_string()).collect::<Vec<_>>());
    }
    let sol = derive_quintic_dp_sextic().unwrap();
    let a: Vec<String> = sol.coefficients.iter().map(|c| c.to_string()).collect();
    println!("rank {} of {} constraints, a = ({})", sol.rank, sol.constraints, a.join(", "));
    println!("C = {}", sol.poly);

    let t = proper_transform_invariance(&sol.poly).unwrap();
    println!("stripped {:?}, residual = {} * C", t.stripped, t.scalar.unwrap_or_default());
}
