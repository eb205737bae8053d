use super::*;
use crate::polyring::{Polynomial, Ring, RingDescriptor};

fn b() -> Budget {
    Budget::unlimited()
}

fn p4() -> Ring {
    RingDescriptor::p4()
}

fn binary(srcs: &[&str]) -> Vec<Polynomial> {
    let r = RingDescriptor::projective(1);
    srcs.iter().map(|s| r.parse(s).unwrap()).collect()
}

#[test]
fn bott_examples() {
    assert_eq!(line_bundle_cohomology(4, 5, 0), 126);
    assert_eq!(line_bundle_cohomology(1, -2, 1), 1);
    assert_eq!(line_bundle_cohomology(4, -3, 2), 0);
    assert_eq!(line_bundle_cohomology(4, -6, 4), 5);
}

#[test]
fn structure_sheaf_matches_bott() {
    let sc = SheafCohomology::new(GradedModule::free(p4(), vec![0]), &b()).unwrap();
    for d in -10..=10 {
        for i in 0..=4 {
            assert_eq!(sc.h(i, d, &b()).unwrap(), line_bundle_cohomology(4, d, i as i64), "i={i} d={d}");
        }
    }
}

#[test]
fn line_is_acm() {
    let r = p4();
    let t = rao_table(&Ideal::parse(&r, &["x2", "x3", "x4"]).unwrap(), None, &b()).unwrap();
    assert!(t.acm);
    assert!(t.table.all_zero());
}

#[test]
fn two_skew_lines_rao_module() {
    let r = p4();
    let i = Ideal::parse(&r, &["x2", "x0*x3", "x0*x4", "x1*x3", "x1*x4"]).unwrap();
    let t = rao_table(&i, None, &b()).unwrap();
    assert!(!t.acm);
    assert_eq!(t.table.nonzero(1), vec![(0, 1)]);
    let wide = rao_table(&i, Some((-10, 10)), &b()).unwrap();
    assert_eq!(wide.table.nonzero(1), vec![(0, 1)]);
}

#[test]
fn euler_characteristic_of_curve_ideal() {
    let r = p4();
    let i = Ideal::parse(&r, &["x3", "x4", "x0^5+x1^5+x2^5"]).unwrap();
    let m = GradedModule::from_ideal(&i, &b()).unwrap();
    let sc = SheafCohomology::new(m.clone(), &b()).unwrap();
    for k in -4..=6 {
        assert_eq!(sc.euler_characteristic(k, &b()).unwrap(), m.hilbert_polynomial_value(k, &b()).unwrap(), "k={k}");
    }
}

#[test]
fn point_is_wrong_dimension() {
    let r = p4();
    let i = Ideal::parse(&r, &["x1", "x2", "x3", "x4"]).unwrap();
    assert!(matches!(rao_table(&i, None, &b()), Err(Error::WrongDimension { expected: 1, found: 0 })));
}

#[test]
fn balanced_splitting() {
    let f = binary(&["x0^4", "x1^4", "x0^2*x1^2"]);
    let r = p1_kernel_splitting(&f, &[1, 1, 1], 5, &b()).unwrap();
    assert_eq!(r.splitting.degrees, vec![-1, -1]);
    assert_eq!(r.splitting.h0(0), 0);
}

#[test]
fn unbalanced_splitting() {
    let f = binary(&["x0^4", "x1^4", "x0^3*x1"]);
    let r = p1_kernel_splitting(&f, &[1, 1, 1], 5, &b()).unwrap();
    assert_eq!(r.splitting.degrees, vec![0, -2]);
    assert_eq!(r.h0_profile.iter().find(|p| p.0 == 0).unwrap().1, 1);
    assert_eq!(r.splitting.h1(0), 1);
}

#[test]
fn common_zero_is_rejected() {
    let f = binary(&["x0^4", "x0^3*x1", "x0^2*x1^2"]);
    assert!(matches!(p1_kernel_splitting(&f, &[1, 1, 1], 5, &b()), Err(Error::CommonZero(_))));
    let z = vec![Polynomial::zero(); 3];
    assert!(matches!(p1_kernel_splitting(&z, &[1, 1, 1], 5, &b()), Err(Error::RankZero)));
}
