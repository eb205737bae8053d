//! Graded Hom and Ext as homology of `Hom(F_•, N)`.

use super::maps::{preimage, subquotient, Subquotient};
use super::{free_resolution, ideal_module, GradedModule, Resolution};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::groebner::{Ideal, TermOrder, Vector};
use crate::polyring::{Monomial, Polynomial};

/// Free cover of `Hom(F, N) = ⊕_j N(a_j)`: basis `(j, c)` at index `j*r0 + c`
/// in degree `g_c - a_j`.
struct HomTerm {
    degs: Vec<i32>,
    rels: Vec<Vector<Rational>>,
}

fn hom_term(twists: &[i32], n: &GradedModule) -> HomTerm {
    let order = TermOrder::grevlex();
    let r0 = n.gens().len() as u32;
    let degs = twists.iter().flat_map(|a| n.gens().iter().map(move |g| g - a)).collect();
    let rels = (0..twists.len() as u32)
        .flat_map(|j| n.relations().iter().map(move |q| (j, q)))
        .map(|(j, q)| q.map_comps(|c| Some(j * r0 + c), &order))
        .collect();
    HomTerm { degs, rels }
}

/// Images of the cover basis of `Hom(F_i, N)` under `φ ↦ φ ∘ d`, where `d = res.maps[i]`.
fn hom_differential(res: &Resolution, i: usize, r0: usize) -> Vec<Vector<Rational>> {
    let order = TermOrder::grevlex();
    let d = &res.maps[i];
    let rows = d.target.rank();
    let mut terms: Vec<Vec<_>> = vec![Vec::new(); rows * r0];
    for (l, col) in d.cols.iter().enumerate() {
        for (m, j, coef) in col.terms() {
            for c in 0..r0 {
                terms[*j as usize * r0 + c].push((*m, (l * r0 + c) as u32, coef.clone()));
            }
        }
    }
    terms.into_iter().map(|t| Vector::from_terms(t, &order)).collect()
}

/// `H^i` of `Hom(F_•, N)` for the complex `res`.
pub fn hom_complex_homology(res: &Resolution, i: usize, n: &GradedModule, budget: &Budget) -> Result<GradedModule> {
    Ok(hom_homology_embedded(res, i, n, budget)?.module)
}

/// Homology with generators given as vectors in the free cover of `Hom(F_i, N)`.
fn hom_homology_embedded(res: &Resolution, i: usize, n: &GradedModule, budget: &Budget) -> Result<Subquotient> {
    let ring = n.ring().clone();
    let empty = || Subquotient { module: GradedModule::new(ring.clone(), Vec::new(), Vec::new()), embedding: Vec::new() };
    let too_short = || Error::Precondition(format!("resolution too short for homology at {i}"));
    if i >= res.modules.len() {
        return if res.complete { Ok(empty()) } else { Err(too_short()) };
    }
    let r0 = n.gens().len();
    let here = hom_term(&res.modules[i].twists, n);
    if here.degs.is_empty() {
        return Ok(empty());
    }
    let cycles = if i < res.maps.len() {
        let next = hom_term(&res.modules[i + 1].twists, n);
        preimage(&here.degs, &hom_differential(res, i, r0), &next.degs, &next.rels, budget)?
    } else if res.complete {
        let order = TermOrder::grevlex();
        (0..here.degs.len())
            .map(|k| (Vector::from_terms(vec![(Monomial::one(), k as u32, Rational::one())], &order), here.degs[k]))
            .collect()
    } else {
        return Err(too_short());
    };
    let mut boundaries = here.rels.clone();
    if i > 0 {
        boundaries.extend(hom_differential(res, i - 1, r0).into_iter().filter(|v| !v.is_zero()));
    }
    subquotient(ring.clone(), &here.degs, cycles, &boundaries, budget)
}

/// `Ext^i(M, N)` via a minimal free resolution of `M`.
pub fn graded_ext(i: usize, m: &GradedModule, n: &GradedModule, budget: &Budget) -> Result<GradedModule> {
    let res = free_resolution(m, i + 1, budget)?;
    hom_complex_homology(&res, i, n, budget)
}

/// `Hom_R(I, R/I) = Hom(I/I², R/I)`.
pub fn normal_module(i: &Ideal, budget: &Budget) -> Result<GradedModule> {
    Ok(normal_module_with_generators(i, budget)?.module)
}

/// Normal module with explicit generators: generator `k` is the homomorphism
/// sending the minimal generator `g_j` of `I` to `sections[k]_j mod I`.
#[derive(Clone, Debug)]
pub struct NormalModule {
    pub module: GradedModule,
    pub ideal_gens: Vec<Polynomial>,
    pub sections: Vec<Vector<Rational>>,
}

pub fn normal_module_with_generators(i: &Ideal, budget: &Budget) -> Result<NormalModule> {
    let (mi, ideal_gens) = ideal_module(i, budget)?;
    let p = mi.presentation();
    let res = Resolution { modules: vec![p.target.clone(), p.source.clone()], maps: vec![p], complete: false };
    let target = GradedModule::quotient_ring(&Ideal::new(i.ring().clone(), ideal_gens.clone())?);
    let sq = hom_homology_embedded(&res, 0, &target, budget)?;
    Ok(NormalModule { module: sq.module, ideal_gens, sections: sq.embedding })
}
