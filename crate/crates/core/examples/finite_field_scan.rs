use k3audit::casebook::bad_prime_reason;
use k3audit::matgroup::catalogue::load_poly;
use k3audit::multipoly::Poly;

fn main() {
    let curves = [("klein.poly", 168), ("mukai.poly", 216), ("case2.poly", 1080), ("fa_plus.poly", 216)];
    for (file, order) in curves {
        let f = load_poly(file).unwrap().poly;
        for p in [7u64, 11, 13, 19, 31] {
            if let Some(why) = bad_prime_reason(&f, p, order) {
                println!("{file} p={p}: skipped, {why}");
                continue;
            }
            let pts = f.finite_field_singular_scan(p).unwrap();
            println!("{file} p={p}: {} singular point(s) {:?}", pts.len(), pts.iter().take(3).collect::<Vec<_>>());
        }
    }

    // A nodal cubic for contrast.
    let node = Poly::parse(3, "x2^2*x3 - x1^3 - x1^2*x3").unwrap();
    println!("nodal cubic p=11: {:?}", node.finite_field_singular_scan(11).unwrap());
}
