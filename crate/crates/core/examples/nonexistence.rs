use k3audit::casebook::{audit_nonexistence, order_five_scenario, NONEXISTENCE_GROUPS};

fn main() {
    for g in NONEXISTENCE_GROUPS {
        print!("{}", audit_nonexistence(g).unwrap());
    }
    let r = order_five_scenario();
    println!("order five on P1xP1: {} fixed points on every curve, common factor {:?}", r.on_every_curve.iter().filter(|b| **b).count(), r.common_factor);
}
