use super::*;
use crate::polyring::RingDescriptor;

fn p4() -> Ring {
    RingDescriptor::p4()
}

fn b() -> Budget {
    Budget::unlimited()
}

#[test]
fn twisted_cubic_gb_and_hilbert() {
    let r = RingDescriptor::projective(3);
    let i = Ideal::parse(&r, &["x0*x2-x1^2", "x1*x3-x2^2", "x0*x3-x1*x2"]).unwrap();
    assert_eq!(i.gb(&b()).unwrap().len(), 3);
    let h: Vec<i64> = (0..5).map(|k| i.hilbert_function(k, &b()).unwrap()).collect();
    assert_eq!(h, vec![1, 4, 7, 10, 13]);
    assert_eq!(i.projective_dimension(&b()).unwrap(), 1);
}

#[test]
fn membership_and_normal_form() {
    let r = p4();
    let i = Ideal::parse(&r, &["x2", "x3", "x4"]).unwrap();
    let f = r.parse("x2*x0^4+x3*x1^4+x4*x0^3*x1").unwrap();
    assert!(i.contains(&f, &b()).unwrap());
    let g = r.parse("x0^2+x2*x1").unwrap();
    assert_eq!(i.normal_form(&g, &b()).unwrap(), r.parse("x0^2").unwrap());
}

#[test]
fn quotient_and_saturation() {
    let r = p4();
    let m = Ideal::irrelevant(r.clone());
    let line = Ideal::parse(&r, &["x2", "x3", "x4"]).unwrap();
    let emb = line.product(&m);
    let q = ideal_quotient(&emb, &m, &b()).unwrap();
    assert!(q.same_ideal(&line, &b()).unwrap());
    let s = saturate(&emb.product(&m), None, &b()).unwrap();
    assert!(s.ideal.same_ideal(&line, &b()).unwrap());
    let s2 = saturate(&emb.product(&m), Some(&m), &b()).unwrap();
    assert!(s2.ideal.same_ideal(&line, &b()).unwrap());
    assert_eq!(s2.steps, 2);
}

#[test]
fn intersection_of_coordinate_ideals() {
    let r = p4();
    let a = Ideal::parse(&r, &["x0", "x1"]).unwrap();
    let c = Ideal::parse(&r, &["x1", "x2"]).unwrap();
    let i = intersect(&a, &c, &b()).unwrap();
    let want = Ideal::parse(&r, &["x1", "x0*x2"]).unwrap();
    assert!(i.same_ideal(&want, &b()).unwrap());
}

#[test]
fn elimination_of_parametrization() {
    // t -> (s^2, s t, t^2) in coordinates (x0,x1 | x2,x3,x4)
    let r = p4();
    let i = Ideal::parse(&r, &["x2-x0^2", "x3-x0*x1", "x4-x1^2"]);
    assert!(i.is_err());
    let i = Ideal::parse(&r, &["x2*x4-x3^2", "x0*x3-x1*x2", "x0*x4-x1*x3"]).unwrap();
    let e = eliminate(&i, &[0, 1], &b()).unwrap();
    let want = Ideal::parse(&r, &["x2*x4-x3^2"]).unwrap();
    assert!(e.same_ideal(&want, &b()).unwrap());
}

#[test]
fn fermat_jacobian_is_empty_mod_p() {
    let r = p4();
    let gens: Vec<Polynomial> = (0..5).map(|i| r.parse(&format!("x{i}^4")).unwrap()).collect();
    let w = certify_empty_mod_p(&gens, 5, &b()).unwrap();
    assert!(matches!(w, Some(EmptinessWitness::ModularReduction { .. })));
}

#[test]
fn nonempty_locus_has_no_certificate() {
    let r = p4();
    let gens = vec![r.parse("x0").unwrap(), r.parse("x1").unwrap()];
    assert_eq!(certify_empty_mod_p(&gens, 5, &b()).unwrap(), None);
    let i = Ideal::new(r, gens).unwrap();
    assert_eq!(i.projective_dimension(&b()).unwrap(), 2);
}

#[test]
fn unit_and_empty_projective_dimension() {
    let r = p4();
    assert_eq!(Ideal::unit(r.clone()).projective_dimension(&b()).unwrap(), -1);
    assert_eq!(Ideal::irrelevant(r.clone()).projective_dimension(&b()).unwrap(), -1);
    assert_eq!(Ideal::zero(r).projective_dimension(&b()).unwrap(), 4);
}
