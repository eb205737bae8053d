mod common;

use common::*;
use defcert::field::Field;
use defcert::groebner::{saturate, Ideal};
use defcert::linalg::DenseMatrix;
use defcert::polyring::binomial;
use defcert::{Budget, Monomial, Polynomial, Rational, RingDescriptor};
use proptest::prelude::*;

fn lead(p: &Polynomial) -> (Monomial, Rational) {
    p.terms().iter().max_by(|a, b| a.0.cmp_grevlex(&b.0)).map(|(m, c)| (m.clone(), c.clone())).unwrap()
}

/// Full multivariate division in grevlex, written from scratch.
fn remainder(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let leads: Vec<(Monomial, Rational)> = basis.iter().map(lead).collect();
    let mut p = f.clone();
    let mut rem = Polynomial::zero();
    while !p.is_zero() {
        let (m, c) = lead(&p);
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let t = leads[k].0.quotient_of(&m).unwrap();
                p = p.sub(&basis[k].mul_term(&c.div(&leads[k].1), &t));
            }
            None => {
                let t = Polynomial::term(c.clone(), m.clone());
                rem = rem.add(&t);
                p = p.sub(&t);
            }
        }
    }
    rem
}

fn s_poly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = lead(f);
    let (mg, cg) = lead(g);
    let l = mf.lcm(&mg);
    f.mul_term(&cf.inv(), &mf.quotient_of(&l).unwrap()).sub(&g.mul_term(&cg.inv(), &mg.quotient_of(&l).unwrap()))
}

fn rank(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let _ = cols;
    DenseMatrix::from_rows(rows).rank()
}

fn ideal(gens: Vec<Polynomial>) -> Ideal {
    Ideal::new(RingDescriptor::p4(), gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn buchberger_criterion_holds(gens in generators(5, 3, 3, 4)) {
        let b = Budget::unlimited();
        let i = ideal(gens.clone());
        let gb = i.gb_polys(&b).unwrap();
        for g in &gens {
            prop_assert!(remainder(g, &gb).is_zero());
        }
        for a in 0..gb.len() {
            for c in a + 1..gb.len() {
                prop_assert!(remainder(&s_poly(&gb[a], &gb[c]), &gb).is_zero());
            }
        }
    }

    #[test]
    fn membership_matches_macaulay_oracle(
        gens in generators(5, 3, 3, 3),
        probes in prop::collection::vec(nonzero_form(5, 4, 4, 3), 2),
    ) {
        let b = Budget::unlimited();
        let i = ideal(gens.clone());
        for k in 0..=6u32 {
            let cols = Monomial::all_of_degree(5, k);
            let rows = macaulay_rows(&gens, 5, k);
            let r = rank(rows.clone(), cols.len());
            // The normal form is linear with image spanned by the standard monomials,
            // so kernel ⊇ Macaulay span plus equal codimension pins membership exactly.
            prop_assert_eq!(i.hilbert_function(k as i64, &b).unwrap(), binomial(k as i64 + 4, 4) - r as i64);
            for row in &rows {
                let p = Polynomial::from_terms(cols.iter().cloned().zip(row.iter().cloned()).filter(|(_, c)| !c.is_zero()).collect());
                prop_assert!(i.contains(&p, &b).unwrap());
            }
            if k == 4 {
                for f in &probes {
                    let mut with = rows.clone();
                    with.push(dense(f, &cols));
                    let oracle = rank(with, cols.len()) == r;
                    prop_assert_eq!(i.contains(f, &b).unwrap(), oracle);
                }
            }
        }
    }

    #[test]
    fn saturation_idempotent_monotone_and_bounded(gens in generators(5, 3, 3, 3), extra in ranged_form(5, 1, 2, 3, 3)) {
        let b = Budget::unlimited();
        let i = ideal(gens.clone());
        let s = saturate(&i, None, &b).unwrap();
        prop_assert!(s.ideal.contains_ideal(&i, &b).unwrap());
        let again = saturate(&s.ideal, None, &b).unwrap();
        prop_assert!(again.ideal.same_ideal(&s.ideal, &b).unwrap());
        let mut bigger = gens.clone();
        bigger.push(extra);
        let sb = saturate(&ideal(bigger), None, &b).unwrap();
        prop_assert!(sb.ideal.contains_ideal(&s.ideal, &b).unwrap());
        for g in s.ideal.gens() {
            for v in 0..5 {
                let xv = Polynomial::var(v).pow(s.steps as u32);
                prop_assert!(i.contains(&xv.mul(g), &b).unwrap());
            }
        }
    }

    #[test]
    fn saturation_by_explicit_ideal_is_bounded(gens in generators(5, 3, 2, 3), j in generators(5, 2, 1, 2)) {
        let b = Budget::unlimited();
        let i = ideal(gens);
        let jj = ideal(j);
        let s = saturate(&i, Some(&jj), &b).unwrap();
        prop_assert!(s.ideal.contains_ideal(&i, &b).unwrap());
        prop_assert!(saturate(&s.ideal, Some(&jj), &b).unwrap().ideal.same_ideal(&s.ideal, &b).unwrap());
        for f in s.ideal.gens() {
            for g in jj.gens() {
                prop_assert!(i.contains(&g.pow(s.steps as u32).mul(f), &b).unwrap());
            }
        }
    }

    #[test]
    fn projective_dimension_invariances(gens in generators(5, 3, 3, 3), c in prop::collection::vec(nonzero_form(5, 1, 3, 3), 3)) {
        let b = Budget::unlimited();
        let i = ideal(gens.clone());
        let d = i.projective_dimension(&b).unwrap();
        let s = saturate(&i, None, &b).unwrap();
        prop_assert_eq!(s.ideal.projective_dimension(&b).unwrap(), d);
        // A redundant generator: a combination of existing ones, padded to a common degree.
        let top = gens.iter().map(|g| g.degree().unwrap()).max().unwrap() + 1;
        let mut redundant = Polynomial::zero();
        for (g, lin) in gens.iter().zip(c.iter().cycle()) {
            let pad = Polynomial::var(0).pow(top - 1 - g.degree().unwrap());
            redundant = redundant.add(&g.mul(&pad).mul(lin));
        }
        let mut more = gens.clone();
        if !redundant.is_zero() {
            more.push(redundant);
        }
        prop_assert_eq!(ideal(more).projective_dimension(&b).unwrap(), d);
    }
}
