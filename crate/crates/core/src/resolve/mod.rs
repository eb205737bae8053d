//! Graded modules over the polynomial ring: presentations, minimal free
//! resolutions, Betti tables, graded Ext and normal modules.

mod ext;
mod maps;
mod resolution;

use std::sync::{Arc, OnceLock};

pub use ext::{graded_ext, hom_complex_homology, normal_module, normal_module_with_generators, NormalModule};
pub use maps::{cokernel_of_map, kernel_of_map, Subquotient};
pub use resolution::{betti_table, free_resolution, syzygy_module, BettiTable, Resolution};

use crate::budget::Budget;
use crate::error::Result;
use crate::field::{Field, Rational};
use crate::groebner::{hilbert_function_value, minimal_generators, module_gb, monomial_numerator, Ideal, LaurentPoly, TermOrder, Vector};
use crate::polyring::{Monomial, Polynomial, Ring};

/// `⊕ R(-a_j)`; basis vector `j` has degree `twists[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    pub twists: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// Homogeneous map `source -> target`; column `j` is the image of basis vector `j`
/// and has degree `source.twists[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    pub target: GradedFreeModule,
    pub source: GradedFreeModule,
    pub cols: Vec<Vector<Rational>>,
}

impl HomMatrix {
    pub fn new(target: GradedFreeModule, source: GradedFreeModule, cols: Vec<Vector<Rational>>) -> Self {
        debug_assert_eq!(source.rank(), cols.len());
        debug_assert!(cols
            .iter()
            .zip(&source.twists)
            .all(|(c, &d)| c.is_zero() || (c.is_homogeneous(&target.twists) && c.degree(&target.twists) == Some(d))));
        HomMatrix { target, source, cols }
    }

    /// Build from a row-major grid of polynomials.
    pub fn from_rows(target: Vec<i32>, source: Vec<i32>, rows: &[Vec<Polynomial>]) -> Self {
        let order = TermOrder::grevlex();
        let cols = (0..source.len())
            .map(|j| {
                let terms = rows
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| row[j].terms().iter().map(move |(m, c)| (*m, i as u32, c.clone())))
                    .collect();
                Vector::from_terms(terms, &order)
            })
            .collect();
        HomMatrix::new(GradedFreeModule::new(target), GradedFreeModule::new(source), cols)
    }

    pub fn entry(&self, row: usize, col: usize) -> Polynomial {
        self.cols[col].component(row as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vector::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomMatrix) -> HomMatrix {
        let order = TermOrder::grevlex();
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc = Vector::default();
                for (k, p) in c.to_polys(self.source.rank()).iter().enumerate() {
                    if !p.is_zero() {
                        acc = acc.add(&self.cols[k].mul_poly(p, &order), &order);
                    }
                }
                acc
            })
            .collect();
        HomMatrix { target: self.target.clone(), source: other.source.clone(), cols }
    }
}

/// `coker(relations)` for relations living in the free module on `gens`.
#[derive(Clone, Debug)]
pub struct GradedModule {
    ring: Ring,
    gens: Vec<i32>,
    relations: Vec<Vector<Rational>>,
    gb: OnceLock<Arc<Vec<Vector<Rational>>>>,
}

impl GradedModule {
    pub fn new(ring: Ring, gens: Vec<i32>, relations: Vec<Vector<Rational>>) -> Self {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        GradedModule { ring, gens, relations, gb: OnceLock::new() }
    }

    pub fn from_presentation(ring: Ring, p: &HomMatrix) -> Self {
        GradedModule::new(ring, p.target.twists.clone(), p.cols.clone())
    }

    /// The free module `⊕ R(-a_j)`.
    pub fn free(ring: Ring, twists: Vec<i32>) -> Self {
        GradedModule::new(ring, twists, Vec::new())
    }

    /// `R/I`.
    pub fn quotient_ring(i: &Ideal) -> Self {
        let order = TermOrder::grevlex();
        let rels = i.gens().iter().map(|g| Vector::from_poly(g, 0, &order)).collect();
        GradedModule::new(i.ring().clone(), vec![0], rels)
    }

    /// `I` as a module, presented by the syzygies of its minimal generators.
    pub fn from_ideal(i: &Ideal, budget: &Budget) -> Result<Self> {
        Ok(ideal_module(i, budget)?.0)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[i32] {
        &self.gens
    }

    pub fn relations(&self) -> &[Vector<Rational>] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> Vec<i32> {
        self.relations.iter().map(|r| r.degree(&self.gens).unwrap()).collect()
    }

    pub fn presentation(&self) -> HomMatrix {
        HomMatrix::new(
            GradedFreeModule::new(self.gens.clone()),
            GradedFreeModule::new(self.relation_degrees()),
            self.relations.clone(),
        )
    }

    /// Twist `M(t)`: degrees shift down by `t`.
    pub fn twist(&self, t: i32) -> Self {
        GradedModule::new(self.ring.clone(), self.gens.iter().map(|g| g - t).collect(), self.relations.clone())
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Self {
        let off = self.gens.len() as u32;
        let order = TermOrder::grevlex();
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| r.map_comps(|c| Some(c + off), &order)));
        GradedModule::new(self.ring.clone(), gens, rels)
    }

    pub fn gb(&self, budget: &Budget) -> Result<Arc<Vec<Vector<Rational>>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(module_gb(&self.relations, &self.gens, budget)?);
        let _ = self.gb.set(gb.clone());
        Ok(gb)
    }

    fn leads_by_comp(&self, budget: &Budget) -> Result<Vec<Vec<Monomial>>> {
        let mut leads = vec![Vec::new(); self.gens.len()];
        for v in self.gb(budget)?.iter() {
            let (m, c, _) = v.lead().unwrap();
            leads[c as usize].push(*m);
        }
        Ok(leads)
    }

    /// Numerator of the Hilbert series over `(1-t)^num_vars`.
    pub fn hilbert_numerator(&self, budget: &Budget) -> Result<LaurentPoly> {
        let n = self.ring.num_vars();
        let mut acc = LaurentPoly::zero();
        for (c, leads) in self.leads_by_comp(budget)?.iter().enumerate() {
            acc = acc.add(&monomial_numerator(leads, n).scale_shift(1, self.gens[c]));
        }
        Ok(acc)
    }

    pub fn hilbert_polynomial_value(&self, k: i64, budget: &Budget) -> Result<i64> {
        let num = self.hilbert_numerator(budget)?;
        Ok(crate::groebner::hilbert_polynomial_value(&num, self.ring.num_vars(), k))
    }

    /// Krull dimension of the module; `-1` for zero, `0` for finite length.
    pub fn krull_dimension(&self, budget: &Budget) -> Result<i64> {
        Ok(crate::groebner::krull_dimension(&self.hilbert_numerator(budget)?, self.ring.num_vars()))
    }

    /// Degrees `k` with `M_k ≠ 0` paired with their dimensions, for a finite-length module.
    pub fn finite_support(&self, budget: &Budget) -> Result<Option<Vec<(i32, i64)>>> {
        let mut series = self.hilbert_numerator(budget)?;
        for _ in 0..self.ring.num_vars() {
            match series.div_one_minus_t() {
                Some(q) => series = q,
                None => return Ok(None),
            }
        }
        Ok(Some(series.terms().collect()))
    }

    /// Standard monomial basis of `M_k` as `(monomial, component)` pairs.
    pub fn piece_basis(&self, k: i32, budget: &Budget) -> Result<Vec<(Monomial, u32)>> {
        let n = self.ring.num_vars();
        let mut out = Vec::new();
        for (c, leads) in self.leads_by_comp(budget)?.iter().enumerate() {
            let d = k - self.gens[c];
            if d < 0 {
                continue;
            }
            for m in Monomial::all_of_degree(n, d as u32) {
                if !leads.iter().any(|l| l.divides(&m)) {
                    out.push((m, c as u32));
                }
            }
        }
        Ok(out)
    }

    /// Normal form of a vector modulo the relations.
    pub fn normal_form(&self, v: &Vector<Rational>, budget: &Budget) -> Result<Vector<Rational>> {
        let order = TermOrder::grevlex();
        Ok(crate::groebner::reduce_by(&v.reorder(&order), &self.gb(budget)?, &order))
    }

    /// Equivalent presentation with no unit entries and minimal relations.
    pub fn minimized(&self, budget: &Budget) -> Result<Self> {
        Ok(self.minimized_tracking(budget)?.0)
    }

    /// As [`minimized`](Self::minimized), also returning the indices of the
    /// original generators that survive; the others were eliminated by unit relations.
    pub fn minimized_tracking(&self, budget: &Budget) -> Result<(Self, Vec<usize>)> {
        let order = TermOrder::grevlex();
        let mut gens = self.gens.clone();
        let mut kept: Vec<usize> = (0..gens.len()).collect();
        let mut rels: Vec<Vector<Rational>> = self.relations.clone();
        while let Some((col, pos)) = find_unit(&rels) {
            let pivot = rels.swap_remove(col);
            let (_, comp, unit) = pivot.terms[pos].clone();
            rels = rels
                .into_iter()
                .map(|r| {
                    let p = r.component(comp);
                    if p.is_zero() {
                        r
                    } else {
                        r.sub(&pivot.mul_poly(&p.scale(&unit.inv()), &order), &order)
                    }
                })
                .filter(|r| !r.is_zero())
                .collect();
            gens.remove(comp as usize);
            kept.remove(comp as usize);
            rels = rels.iter().map(|r| r.map_comps(|c| Some(if c > comp { c - 1 } else { c }), &order)).collect();
        }
        let keep = if rels.is_empty() { Vec::new() } else { minimal_generators(&rels, &gens, budget)? };
        let rels = keep.into_iter().map(|i| rels[i].clone()).collect();
        Ok((GradedModule::new(self.ring.clone(), gens, rels), kept))
    }
}

/// A relation with a nonzero constant entry: `(relation index, term index)`.
fn find_unit(rels: &[Vector<Rational>]) -> Option<(usize, usize)> {
    for (i, r) in rels.iter().enumerate() {
        if let Some(pos) = r.terms.iter().position(|(m, _, _)| m.degree() == 0) {
            return Some((i, pos));
        }
    }
    None
}

/// `I` presented on a minimal generating set, returned alongside.
pub fn ideal_module(i: &Ideal, budget: &Budget) -> Result<(GradedModule, Vec<Polynomial>)> {
    let order = TermOrder::grevlex();
    let cols: Vec<Vector<Rational>> = i.gens().iter().map(|g| Vector::from_poly(g, 0, &order)).collect();
    let keep = minimal_generators(&cols, &[0], budget)?;
    let gens: Vec<Polynomial> = keep.iter().map(|&k| i.gens()[k].clone()).collect();
    let cols: Vec<Vector<Rational>> = keep.iter().map(|&k| cols[k].clone()).collect();
    let degs: Vec<i32> = gens.iter().map(|g| g.degree().unwrap() as i32).collect();
    let syz = crate::groebner::syzygies(&cols, &[0], &degs, budget)?;
    let syz_vecs: Vec<Vector<Rational>> = syz.into_iter().map(|(v, _)| v).collect();
    let rels = if syz_vecs.is_empty() {
        Vec::new()
    } else {
        minimal_generators(&syz_vecs, &degs, budget)?.into_iter().map(|k| syz_vecs[k].clone()).collect()
    };
    Ok((GradedModule::new(i.ring().clone(), degs, rels), gens))
}

/// Exact dimension of `M_k`.
pub fn graded_piece_dim(m: &GradedModule, k: i32, budget: &Budget) -> Result<i64> {
    let n = m.ring.num_vars();
    let mut total = 0;
    for (c, leads) in m.leads_by_comp(budget)?.iter().enumerate() {
        let num = monomial_numerator(leads, n);
        total += hilbert_function_value(&num, n, (k - m.gens[c]) as i64);
    }
    Ok(total)
}
