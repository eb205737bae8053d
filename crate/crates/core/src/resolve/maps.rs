//! Kernels, cokernels and subquotients of maps between presented modules.

use super::GradedModule;
use crate::budget::Budget;
use crate::error::Result;
use crate::field::Rational;
use crate::groebner::{minimal_generators, syzygies, TermOrder, Vector};

/// Vectors `x` in the cover of the source (basis degrees `cover`) with
/// `Σ x_i images_i ∈ im(target relations)`, each paired with its degree.
pub(crate) fn preimage(
    cover: &[i32],
    images: &[Vector<Rational>],
    target_degs: &[i32],
    target_rels: &[Vector<Rational>],
    budget: &Budget,
) -> Result<Vec<(Vector<Rational>, i32)>> {
    let order = TermOrder::grevlex();
    let size = cover.len();
    let mut cols = images.to_vec();
    let mut src = cover.to_vec();
    for r in target_rels {
        src.push(r.degree(target_degs).unwrap());
        cols.push(r.clone());
    }
    Ok(syzygies(&cols, target_degs, &src, budget)?
        .into_iter()
        .map(|(v, d)| (v.map_comps(|c| ((c as usize) < size).then_some(c), &order), d))
        .filter(|(v, _)| !v.is_zero())
        .collect())
}

/// A module presented on generators that are explicit vectors in a free cover.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: GradedModule,
    /// `embedding[i]` is generator `i` as a vector in the cover.
    pub embedding: Vec<Vector<Rational>>,
}

/// `(⟨gens⟩ + ⟨rels⟩) / ⟨rels⟩` inside a free module with basis degrees `cover`.
pub(crate) fn subquotient(
    ring: crate::polyring::Ring,
    cover: &[i32],
    gens: Vec<(Vector<Rational>, i32)>,
    rels: &[Vector<Rational>],
    budget: &Budget,
) -> Result<Subquotient> {
    if gens.is_empty() {
        return Ok(Subquotient { module: GradedModule::new(ring, Vec::new(), Vec::new()), embedding: Vec::new() });
    }
    let vecs: Vec<Vector<Rational>> = gens.iter().map(|g| g.0.clone()).collect();
    let keep = minimal_generators(&vecs, cover, budget)?;
    let gen_vecs: Vec<Vector<Rational>> = keep.iter().map(|&k| vecs[k].clone()).collect();
    let gen_degs: Vec<i32> = keep.iter().map(|&k| gens[k].1).collect();
    let rel_vecs = preimage(&gen_degs, &gen_vecs, cover, rels, budget)?;
    let raw = GradedModule::new(ring, gen_degs, rel_vecs.into_iter().map(|(v, _)| v).collect());
    let (module, kept) = raw.minimized_tracking(budget)?;
    Ok(Subquotient { module, embedding: kept.into_iter().map(|k| gen_vecs[k].clone()).collect() })
}

/// Kernel of `M -> T` sending generator `i` of `M` to `images[i]` (in the cover of `T`).
pub fn kernel_of_map(m: &GradedModule, t: &GradedModule, images: &[Vector<Rational>], budget: &Budget) -> Result<GradedModule> {
    // Reducing modulo the relations of T leaves the preimage unchanged and keeps coefficients small.
    let reduced = images.iter().map(|v| t.normal_form(v, budget)).collect::<Result<Vec<_>>>()?;
    let gens = preimage(m.gens(), &reduced, t.gens(), t.relations(), budget)?;
    Ok(subquotient(m.ring().clone(), m.gens(), gens, m.relations(), budget)?.module)
}

/// `T / im(M -> T)`.
pub fn cokernel_of_map(t: &GradedModule, images: &[Vector<Rational>]) -> GradedModule {
    let mut rels = t.relations().to_vec();
    rels.extend(images.iter().filter(|v| !v.is_zero()).cloned());
    GradedModule::new(t.ring().clone(), t.gens().to_vec(), rels)
}
