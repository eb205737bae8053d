//! Syzygies, minimal generators and cofactor lifts over free modules.

use super::engine::{buchberger, reduce_by, GbConfig};
use super::vector::{TermOrder, Vector};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::Field;
use crate::polyring::MonomialOrder;

/// Generators of the kernel of the map `R^s -> R^r` whose columns are `cols`.
///
/// `comp_degrees` are the basis degrees of `R^r`, `source_degrees` those of
/// `R^s` (the degree of each column, which matters for zero columns).
/// The returned vectors form a Groebner basis of the syzygy module under the
/// grevlex term-over-position order, together with their degrees.
pub fn syzygies<F: Field>(
    cols: &[Vector<F>],
    comp_degrees: &[i32],
    source_degrees: &[i32],
    budget: &Budget,
) -> Result<Vec<(Vector<F>, i32)>> {
    assert_eq!(cols.len(), source_degrees.len());
    let rank = comp_degrees.len() as u32;
    let order = TermOrder::with_split(MonomialOrder::GRevLex, rank);
    let mut degs = comp_degrees.to_vec();
    degs.extend_from_slice(source_degrees);
    let inputs: Vec<Vector<F>> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut terms = c.terms.clone();
            terms.push((crate::polyring::Monomial::one(), rank + j as u32, F::one()));
            Vector::from_terms(terms, &order)
        })
        .collect();
    let mut cfg = GbConfig::new(&order, &degs);
    cfg.product_criterion = false;
    let gb = buchberger(&inputs, cfg, budget)?;
    let plain = TermOrder::grevlex();
    Ok(gb
        .basis
        .into_iter()
        .filter(|v| v.lead().is_some_and(|(_, c, _)| c >= rank))
        .map(|v| {
            let d = v.degree(&degs).unwrap();
            (v.map_comps(|c| Some(c - rank), &plain), d)
        })
        .collect())
}

/// Indices of a minimal generating subset of the graded submodule spanned by `gens`.
pub fn minimal_generators<F: Field>(gens: &[Vector<F>], comp_degrees: &[i32], budget: &Budget) -> Result<Vec<usize>> {
    let order = TermOrder::grevlex();
    let mut cfg = GbConfig::new(&order, comp_degrees);
    cfg.product_criterion = comp_degrees.len() == 1;
    Ok(buchberger(gens, cfg, budget)?.minimal_inputs)
}

/// Reduced grevlex Groebner basis of the submodule spanned by `gens`.
pub fn module_gb<F: Field>(gens: &[Vector<F>], comp_degrees: &[i32], budget: &Budget) -> Result<Vec<Vector<F>>> {
    let order = TermOrder::grevlex();
    let mut cfg = GbConfig::new(&order, comp_degrees);
    cfg.product_criterion = comp_degrees.len() == 1;
    Ok(buchberger(gens, cfg, budget)?.basis)
}

/// Coefficients `c` with `f = Σ c_i gens_i`, or `None` if `f` is not in the span.
pub fn lift<F: Field>(
    f: &Vector<F>,
    gens: &[Vector<F>],
    comp_degrees: &[i32],
    budget: &Budget,
) -> Result<Option<Vec<crate::polyring::Poly<F>>>> {
    let rank = comp_degrees.len() as u32;
    let order = TermOrder::with_split(MonomialOrder::GRevLex, rank);
    let mut degs = comp_degrees.to_vec();
    let gen_degs: Vec<i32> = gens.iter().map(|g| g.degree(comp_degrees).unwrap_or(0)).collect();
    degs.extend_from_slice(&gen_degs);
    let inputs: Vec<Vector<F>> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut terms = g.terms.clone();
            terms.push((crate::polyring::Monomial::one(), rank + j as u32, F::one()));
            Vector::from_terms(terms, &order)
        })
        .collect();
    let mut cfg = GbConfig::new(&order, &degs);
    cfg.product_criterion = false;
    let gb = buchberger(&inputs, cfg, budget)?;
    let r = reduce_by(&f.reorder(&order), &gb.basis, &order);
    if r.terms.iter().any(|t| t.1 < rank) {
        return Ok(None);
    }
    let coeffs = r.map_comps(|c| Some(c - rank), &TermOrder::grevlex()).to_polys(gens.len());
    Ok(Some(coeffs.into_iter().map(|p| p.neg()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::polyring::{Poly, RingDescriptor};

    fn vecs(srcs: &[&str]) -> Vec<Vector<Rational>> {
        let r = RingDescriptor::p4();
        srcs.iter().map(|s| Vector::from_poly(&r.parse(s).unwrap(), 0, &TermOrder::grevlex())).collect()
    }

    #[test]
    fn koszul_syzygy() {
        let cols = vecs(&["x0", "x1"]);
        let syz = syzygies(&cols, &[0], &[1, 1], &Budget::default()).unwrap();
        assert_eq!(syz.len(), 1);
        let (v, d) = &syz[0];
        assert_eq!(*d, 2);
        let polys = v.to_polys(2);
        // x0 * a + x1 * b = 0
        let r = RingDescriptor::p4();
        let check = r.parse("x0").unwrap().mul(&polys[0]).add(&r.parse("x1").unwrap().mul(&polys[1]));
        assert!(check.is_zero());
    }

    #[test]
    fn lift_recovers_cofactors() {
        let r = RingDescriptor::p4();
        let gens = vecs(&["x2", "x3", "x4"]);
        let f = r.parse("x2*x0^4 + x3*x1^4 + x4*x0^3*x1").unwrap();
        let fv = Vector::from_poly(&f, 0, &TermOrder::grevlex());
        let c = lift(&fv, &gens, &[0], &Budget::default()).unwrap().unwrap();
        let back = (0..3).fold(Poly::zero(), |acc, i| acc.add(&c[i].mul(&Poly::var(2 + i))));
        assert_eq!(back, f);
        let fermat = Vector::from_poly(&r.parse("x0^5").unwrap(), 0, &TermOrder::grevlex());
        assert!(lift(&fermat, &gens, &[0], &Budget::default()).unwrap().is_none());
    }
}
