//! Exceptional curves on Del Pezzo surfaces; degree 5 gives the Petersen graph.

use k3audit::delpezzo::{intersection_graph, PicardLattice, DEFAULT_ORBIT_CAP};

fn main() {
    for d in 1..=8 {
        let l = PicardLattice::del_pezzo(d).unwrap();
        let e = l.minus_one_classes();
        let orbit = l.weyl_orbit(&e[0], DEFAULT_ORBIT_CAP).unwrap();
        println!("degree {d}: {} (-1)-classes, orbit of {} has {orbit}", e.len(), l.format_class(&e[0]));
    }

    let l = PicardLattice::del_pezzo(5).unwrap();
    let e = l.minus_one_classes();
    let g = intersection_graph(&e, &l);
    let s = g.stats();
    println!("{} vertices, {} edges, degree {:?}, girth {:?}, {:?} automorphisms", s.vertices, s.edges, s.regular, s.girth, s.automorphisms);
    let labels: Vec<String> = e.iter().map(|c| l.format_class(c)).collect();
    print!("{}", g.to_dot(&labels));
}
