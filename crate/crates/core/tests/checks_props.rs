mod common;

use common::*;
use defcert::checks::{check_smoothness, line_splitting_type, relative_normal_h1, NormalCertificate, RelativeNormalCertificate, SmoothnessCertificate, SplittingCertificate, Verdict};
use defcert::groebner::Ideal;
use defcert::{Budget, Monomial, Polynomial, RingDescriptor};
use proptest::prelude::*;

const QUINTICS: &[&str] = &[
    "x0^5+x1^5+x2^5+x3^5+x4^5",
    "x2*x0^4+x3*x1^4+x4*x0^3*x1",
];

/// A binary quartic in `x0, x1` with every coefficient drawn, plus sparse noise.
fn quartic() -> impl Strategy<Value = Polynomial> {
    (prop::collection::vec(-6i64..=6, 5), form(5, 4, 6, 4)).prop_map(|(cs, noise)| {
        let binary = Polynomial::from_terms(Monomial::all_of_degree(2, 4).into_iter().zip(cs).map(|(m, c)| (m, q(c))).collect());
        binary.add(&noise)
    })
}

fn through_line(a: Polynomial, b: Polynomial, c: Polynomial) -> Polynomial {
    Polynomial::var(2).mul(&a).add(&Polynomial::var(3).mul(&b)).add(&Polynomial::var(4).mul(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn smoothness_is_coordinate_free(which in 0usize..QUINTICS.len(), a in invertible_matrix(5)) {
        let b = Budget::unlimited();
        let r = RingDescriptor::p4();
        let f = r.parse(QUINTICS[which]).unwrap();
        let g = linear_change(&f, &a);
        let rf = check_smoothness(&f, &r, &b).unwrap();
        let rg = check_smoothness(&g, &r, &b).unwrap();
        prop_assert_eq!(rf.verdict, rg.verdict);
        let cf: SmoothnessCertificate = rf.certificate_as().unwrap();
        let cg: SmoothnessCertificate = rg.certificate_as().unwrap();
        prop_assert_eq!(cf.singular_dimension, cg.singular_dimension);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn module_and_section_routes_agree(
        a in quartic(),
        b2 in quartic(),
        c in quartic(),
    ) {
        let budget = Budget::unlimited();
        let r = RingDescriptor::p4();
        let line = Ideal::parse(&r, &["x2", "x3", "x4"]).unwrap();
        let f = through_line(a, b2, c);
        let spl = line_splitting_type(&f, &line, &budget);
        let rel = relative_normal_h1(&line, &f, &budget);
        prop_assert_eq!(spl.is_ok(), rel.is_ok(), "{:?} vs {:?}", spl.as_ref().err(), rel.as_ref().err());
        if let (Ok(s), Ok(m)) = (spl, rel) {
            let s: SplittingCertificate = s.certificate_as().unwrap();
            let m: RelativeNormalCertificate = m.certificate_as().unwrap();
            prop_assert_eq!((s.h0, s.h1), (m.h0, m.h1));
            prop_assert_eq!(s.splitting.degree(), -2);
        }
    }
}

#[test]
fn normal_bundle_of_line_is_coordinate_free() {
    let b = Budget::unlimited();
    let r = RingDescriptor::p4();
    let a = vec![vec![1, 1, 0, 0, 0], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 0], vec![1, 0, 0, 1, 1], vec![0, 0, 1, 0, 1]];
    assert_ne!(det(&a), 0);
    let moved: Vec<Polynomial> = ["x2", "x3", "x4"].iter().map(|s| linear_change(&r.parse(s).unwrap(), &a)).collect();
    let rep = defcert::checks::normal_bundle_h1(&Ideal::new(r, moved).unwrap(), &b).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    let c: NormalCertificate = rep.certificate_as().unwrap();
    assert_eq!((c.h0, c.h1), (6, 0));
}
