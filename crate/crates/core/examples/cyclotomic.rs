//! Arithmetic in Q(ζn), including sums across different orders.

use k3audit::exactfield::{parse_scalar, Cyclo};

fn main() {
    let w = Cyclo::root_of_unity(3, 1);
    let i = Cyclo::root_of_unity(4, 1);
    println!("w^2 + w + 1 = {}", &(&(&w * &w) + &w) + &Cyclo::one());
    println!("w + i = {} (order {})", &w + &i, (&w + &i).order());
    let s = &Cyclo::from_int(2) * &w + Cyclo::one();
    println!("(2w + 1)^2 = {}", &s * &s);

    let x = parse_scalar("(1 + z7^3)/2").unwrap();
    let inv = x.inv().unwrap();
    println!("x = {x}, 1/x = {inv}, x/x = {}", &x * &inv);
    println!("norm(x) = {}, x mod 29 = {}", x.norm(), x.reduce_mod_prime(29).unwrap());
}
