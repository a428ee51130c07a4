use k3audit::delpezzo::{DivisorClass, PicardLattice};
use k3audit::exactfield::Cyclo;
use k3audit::linalg::Matrix;
use k3audit::multipoly::{monomials_of_degree, Poly};
use num_rational::BigRational;
use proptest::prelude::*;

fn cyclo(n: u32) -> impl Strategy<Value = Cyclo> {
    let k = k3audit::exactfield::phi(n);
    prop::collection::vec((-20i64..=20, 1i64..=6), k)
        .prop_map(move |v| Cyclo::from_coeffs(n, &v.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect::<Vec<_>>()))
}

fn any_cyclo() -> impl Strategy<Value = Cyclo> {
    prop_oneof![cyclo(1), cyclo(3), cyclo(4), cyclo(7), cyclo(12)]
}

fn form(nvars: usize, d: u32) -> impl Strategy<Value = Poly> {
    let mons = monomials_of_degree(nvars, d);
    let len = mons.len();
    prop::collection::vec((0..len, cyclo(3)), 1..5)
        .prop_map(move |ts| Poly::from_terms(nvars, ts.into_iter().map(|(i, c)| (mons[i].clone(), c))))
}

fn int_matrix() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, 9).prop_map(|v| Matrix::from_ints(&[&v[0..3], &v[3..6], &v[6..9]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixed_orders_commute(a in any_cyclo(), b in any_cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn inverse(a in any_cyclo()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn conj_multiplicative(a in cyclo(12), b in cyclo(12)) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn substitution_composes(f in form(3, 3), a in int_matrix(), b in int_matrix()) {
        let lhs = f.substitute_linear(&a).unwrap().substitute_linear(&b).unwrap();
        prop_assert_eq!(lhs, f.substitute_linear(&a.mul(&b)).unwrap());
    }

    #[test]
    fn product_degree(f in form(3, 2), g in form(3, 3)) {
        prop_assert_eq!(f.mul(&g).degree(), Some(5));
        prop_assert_eq!(f.mul(&g).exact_divide(&g).unwrap(), Some(f));
    }

    #[test]
    fn parse_display_round_trip(f in form(3, 4)) {
        prop_assert_eq!(Poly::parse(3, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn reflections_preserve_pairing(d in 1u32..=7, x in prop::collection::vec(-6i64..=6, 10), y in prop::collection::vec(-6i64..=6, 10), k in 0usize..8) {
        let l = PicardLattice::del_pezzo(d).unwrap();
        let roots = l.simple_roots();
        let alpha = &roots[k % roots.len()];
        let x = DivisorClass(x[..l.rank()].to_vec());
        let y = DivisorClass(y[..l.rank()].to_vec());
        prop_assert_eq!(l.pairing(&l.reflect(&x, alpha), &l.reflect(&y, alpha)).unwrap(), l.pairing(&x, &y).unwrap());
    }
}
