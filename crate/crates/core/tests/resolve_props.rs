mod common;

use common::*;
use defcert::groebner::Ideal;
use defcert::linalg::DenseMatrix;
use defcert::polyring::binomial;
use defcert::resolve::{betti_table, free_resolution, graded_ext, graded_piece_dim, normal_module, GradedModule};
use defcert::{Budget, Monomial, Polynomial, RingDescriptor};
use proptest::prelude::*;

/// `dim (R/I)_k` from the dense Macaulay matrix.
fn quotient_dim(gens: &[Polynomial], nvars: usize, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let rows = macaulay_rows(gens, nvars, k as u32);
    let total = Monomial::all_of_degree(nvars, k as u32).len() as i64;
    if rows.is_empty() {
        return total;
    }
    total - DenseMatrix::from_rows(rows).rank() as i64
}

fn free_dim(nvars: usize, k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        binomial(k + nvars as i64 - 1, nvars as i64 - 1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn resolution_is_a_complex_with_matching_hilbert_function(gens in generators(5, 3, 3, 3)) {
        let b = Budget::unlimited();
        let i = Ideal::new(RingDescriptor::p4(), gens.clone()).unwrap();
        let m = GradedModule::quotient_ring(&i);
        let res = free_resolution(&m, 6, &b).unwrap();
        prop_assert!(res.complete);
        prop_assert!(res.length() <= 5);
        prop_assert!(res.is_complex());
        let betti = betti_table(&res);
        for k in 0..=6i64 {
            let alt: i64 = betti
                .entries
                .iter()
                .map(|(&(hi, j), &v)| if hi % 2 == 0 { 1 } else { -1 } * v as i64 * free_dim(5, k - j as i64))
                .sum();
            prop_assert_eq!(alt, quotient_dim(&gens, 5, k));
            prop_assert_eq!(graded_piece_dim(&m, k as i32, &b).unwrap(), quotient_dim(&gens, 5, k));
        }
    }

    #[test]
    fn ext_vanishes_beyond_the_number_of_variables(gens in generators(3, 3, 3, 3)) {
        let b = Budget::unlimited();
        let r = RingDescriptor::projective(2);
        let i = Ideal::new(r.clone(), gens).unwrap();
        let m = GradedModule::quotient_ring(&i);
        let free = GradedModule::free(r, vec![0]);
        for e in [4usize, 5] {
            let ext = graded_ext(e, &m, &free, &b).unwrap();
            prop_assert!(ext.hilbert_numerator(&b).unwrap().is_zero());
        }
    }

    #[test]
    fn piece_dimension_is_additive_over_direct_sums(
        a in generators(5, 2, 3, 3),
        c in generators(5, 2, 3, 3),
        s in -2i32..=2,
        t in -2i32..=2,
    ) {
        let b = Budget::unlimited();
        let r = RingDescriptor::p4();
        let m1 = GradedModule::quotient_ring(&Ideal::new(r.clone(), a).unwrap()).twist(s);
        let m2 = GradedModule::quotient_ring(&Ideal::new(r, c).unwrap()).twist(t);
        let sum = m1.direct_sum(&m2);
        for k in -3..=5 {
            prop_assert_eq!(
                graded_piece_dim(&sum, k, &b).unwrap(),
                graded_piece_dim(&m1, k, &b).unwrap() + graded_piece_dim(&m2, k, &b).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn complete_intersection_normal_module(gens in generators(5, 3, 3, 4)) {
        let b = Budget::unlimited();
        let i = Ideal::new(RingDescriptor::p4(), gens.clone()).unwrap();
        let codim = gens.len() as i64;
        prop_assume!(i.projective_dimension(&b).unwrap() == 4 - codim);
        let n = normal_module(&i, &b).unwrap();
        for k in -1..=4i64 {
            let expected: i64 = gens.iter().map(|g| quotient_dim(&gens, 5, k + g.degree().unwrap() as i64)).sum();
            prop_assert_eq!(graded_piece_dim(&n, k as i32, &b).unwrap(), expected);
        }
    }
}
