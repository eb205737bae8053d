//! Groebner bases and ideal-theoretic operations.

mod engine;
mod hilbert;
mod module_ops;
mod vector;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

pub use engine::{buchberger, reduce_by, GbConfig, GbResult};
pub use hilbert::{
    binomial_poly, hilbert_function_value, hilbert_polynomial_value, krull_dimension, monomial_numerator, LaurentPoly,
};
pub use module_ops::{lift, minimal_generators, module_gb, syzygies};
pub use vector::{TermOrder, Vector};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Fp, Rational, CERT_PRIMES};
use crate::polyring::{Monomial, MonomialOrder, Poly, Polynomial, Ring};

/// Homogeneous ideal with a lazily computed reduced Groebner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Vector<Rational>>>>,
}

/// Hilbert series data of `R/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Numerator over `(1-t)^num_vars`.
    pub numerator: LaurentPoly,
    /// Krull dimension of `R/I` (`-1` for the zero ring).
    pub dimension: i64,
    /// `(k, dim (R/I)_k)` for `k` from 0 through a few degrees past the numerator.
    pub values: Vec<(i64, i64)>,
}

impl HilbertData {
    pub fn from_numerator(numerator: LaurentPoly, nvars: usize) -> Self {
        let dimension = krull_dimension(&numerator, nvars);
        let top = numerator.shift as i64 + numerator.coeffs.len() as i64 + nvars as i64;
        let values = (0..=top.max(6)).map(|k| (k, hilbert_function_value(&numerator, nvars, k))).collect();
        HilbertData { numerator, dimension, values }
    }
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !g.is_homogeneous() {
                let d0 = g.degree().unwrap();
                let d1 = g.terms().iter().map(|(m, _)| m.degree()).find(|&d| d != d0).unwrap();
                return Err(Error::NonHomogeneous { first: d0, second: d1 });
            }
            if g.support_vars() > ring.num_vars() {
                return Err(Error::InvalidInput("generator uses variables outside the ring".into()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, gens, gb: OnceLock::new() })
    }

    pub fn unit(ring: Ring) -> Self {
        Ideal { ring, gens: vec![Polynomial::one()], gb: OnceLock::new() }
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal { ring, gens: Vec::new(), gb: OnceLock::new() }
    }

    /// The irrelevant ideal `(x_0, ..., x_n)`.
    pub fn irrelevant(ring: Ring) -> Self {
        let gens = (0..ring.num_vars()).map(Polynomial::var).collect();
        Ideal { ring, gens, gb: OnceLock::new() }
    }

    pub fn parse(ring: &Ring, srcs: &[&str]) -> Result<Self> {
        let gens = srcs.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring.clone(), gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn term_order(&self) -> TermOrder {
        TermOrder { mono: self.ring.order().clone(), split: None }
    }

    fn gens_as_vectors(&self) -> Vec<Vector<Rational>> {
        let order = self.term_order();
        self.gens.iter().map(|g| Vector::from_poly(g, 0, &order)).collect()
    }

    /// Reduced Groebner basis under the ring order, computed once.
    pub fn gb(&self, budget: &Budget) -> Result<Arc<Vec<Vector<Rational>>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let order = self.term_order();
        let res = buchberger(&self.gens_as_vectors(), GbConfig::new(&order, &[0]), budget)?;
        let gb = Arc::new(res.basis);
        let _ = self.gb.set(gb.clone());
        Ok(gb)
    }

    /// The reduced Groebner basis as an ideal carrying its own basis.
    pub fn groebner_basis(&self, budget: &Budget) -> Result<Ideal> {
        let gb = self.gb(budget)?;
        let gens = gb.iter().map(|v| v.component(0)).collect();
        let out = Ideal { ring: self.ring.clone(), gens, gb: OnceLock::new() };
        let _ = out.gb.set(gb);
        Ok(out)
    }

    pub fn gb_polys(&self, budget: &Budget) -> Result<Vec<Polynomial>> {
        Ok(self.gb(budget)?.iter().map(|v| v.component(0)).collect())
    }

    pub fn leading_monomials(&self, budget: &Budget) -> Result<Vec<Monomial>> {
        Ok(self.gb(budget)?.iter().map(|v| *v.lead().unwrap().0).collect())
    }

    pub fn normal_form(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        let gb = self.gb(budget)?;
        let order = self.term_order();
        Ok(reduce_by(&Vector::from_poly(f, 0, &order), &gb, &order).component(0))
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.gb(budget)?.iter().any(|v| v.lead().unwrap().0.degree() == 0))
    }

    /// Ideal equality via reduced Groebner bases.
    pub fn same_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        Ok(self.gb(budget)? == other.gb(budget)?)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal { ring: self.ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))).collect();
        Ideal { ring: self.ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn power(&self, e: u32) -> Ideal {
        (1..e).fold(self.clone(), |acc, _| acc.product(self))
    }

    pub fn hilbert_data(&self, budget: &Budget) -> Result<HilbertData> {
        let leads = self.leading_monomials(budget)?;
        Ok(HilbertData::from_numerator(monomial_numerator(&leads, self.ring.num_vars()), self.ring.num_vars()))
    }

    /// `dim (R/I)_k`, counted from the initial ideal.
    pub fn hilbert_function(&self, k: i64, budget: &Budget) -> Result<i64> {
        if k < 0 {
            return Ok(0);
        }
        let leads = self.leading_monomials(budget)?;
        let num = monomial_numerator(&leads, self.ring.num_vars());
        Ok(hilbert_function_value(&num, self.ring.num_vars(), k))
    }

    /// Monomials of degree `k` outside the initial ideal: a basis of `(R/I)_k`.
    pub fn standard_monomials(&self, k: u32, budget: &Budget) -> Result<Vec<Monomial>> {
        let leads = self.leading_monomials(budget)?;
        Ok(Monomial::all_of_degree(self.ring.num_vars(), k)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect())
    }

    /// Dimension of the projective zero locus; `-1` when it is empty.
    ///
    /// Saturation does not change the Hilbert polynomial, so this reads the
    /// Krull dimension of `R/I` directly, with `0` (irrelevant-primary) mapped to empty.
    pub fn projective_dimension(&self, budget: &Budget) -> Result<i64> {
        Ok((self.hilbert_data(budget)?.dimension - 1).max(-1))
    }

    fn map_vars(&self, perm: &[usize]) -> Ideal {
        Ideal { ring: self.ring.clone(), gens: self.gens.iter().map(|g| g.permute_vars(perm)).collect(), gb: OnceLock::new() }
    }
}

/// `I : J = { f : f J ⊆ I }`, intersecting `I : j` over the generators of `J`.
pub fn ideal_quotient(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal> {
    let mut acc: Option<Ideal> = None;
    for g in &j.gens {
        let q = quotient_by_element(i, g, budget)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q, budget)?,
        });
    }
    Ok(match acc {
        Some(a) => a.groebner_basis(budget)?,
        None => Ideal::unit(i.ring.clone()),
    })
}

/// `I : f` as the `e_1`-parts of `⟨f e_0 + e_1, g_i e_0⟩` with no `e_0` part.
pub fn quotient_by_element(i: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
    if f.is_zero() {
        return Ok(Ideal::unit(i.ring.clone()));
    }
    let order = TermOrder::with_split(MonomialOrder::GRevLex, 1);
    let mut terms: Vec<_> = f.terms().iter().map(|(m, c)| (*m, 0, c.clone())).collect();
    terms.push((Monomial::one(), 1, <Rational as crate::field::Field>::one()));
    let mut inputs = vec![Vector::from_terms(terms, &order)];
    inputs.extend(i.gens.iter().map(|g| Vector::from_poly(g, 0, &order)));
    let degs = [0, f.degree().unwrap() as i32];
    let mut cfg = GbConfig::new(&order, &degs);
    cfg.product_criterion = false;
    let gb = buchberger(&inputs, cfg, budget)?;
    let gens: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter(|v| v.lead().is_some_and(|(_, c, _)| c == 1))
        .map(|v| v.component(1))
        .collect();
    Ideal::new(i.ring.clone(), gens)?.groebner_basis(budget)
}

/// `I ∩ J` as the `e_1`-parts of `⟨(g, g), (h, 0)⟩ ⊆ R^2` with no `e_0` part,
/// read off a basis under an order eliminating `e_0`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let order = TermOrder::with_split(MonomialOrder::GRevLex, 1);
    let mut inputs = Vec::new();
    for g in &a.gens {
        let mut terms: Vec<_> = g.terms().iter().map(|(m, c)| (*m, 0, c.clone())).collect();
        terms.extend(g.terms().iter().map(|(m, c)| (*m, 1, c.clone())));
        inputs.push(Vector::from_terms(terms, &order));
    }
    for h in &b.gens {
        inputs.push(Vector::from_poly(h, 0, &order));
    }
    let degs = [0, 0];
    let mut cfg = GbConfig::new(&order, &degs);
    cfg.product_criterion = false;
    let gb = buchberger(&inputs, cfg, budget)?;
    let gens: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter(|v| v.lead().is_some_and(|(_, c, _)| c == 1))
        .map(|v| v.component(1))
        .collect();
    Ideal::new(a.ring.clone(), gens)?.groebner_basis(budget)
}

/// Result of a saturation with the number of quotient steps until stabilization.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub ideal: Ideal,
    pub steps: usize,
}

/// `I : J^∞`. With `j = None` the irrelevant ideal is used and the
/// saturation is computed variable by variable.
pub fn saturate(i: &Ideal, j: Option<&Ideal>, budget: &Budget) -> Result<Saturation> {
    match j {
        None => saturate_irrelevant(i, budget),
        Some(j) => {
            let mut cur = i.groebner_basis(budget)?;
            let mut steps = 0;
            loop {
                budget.check_time()?;
                let next = ideal_quotient(&cur, j, budget)?;
                if next.same_ideal(&cur, budget)? {
                    return Ok(Saturation { ideal: cur, steps });
                }
                cur = next;
                steps += 1;
            }
        }
    }
}

/// `I : x_v^∞` for each variable, via a grevlex basis with `x_v` last, then intersected.
fn saturate_irrelevant(i: &Ideal, budget: &Budget) -> Result<Saturation> {
    let n = i.ring.num_vars();
    let mut acc: Option<Ideal> = None;
    let mut steps = 0usize;
    for v in 0..n {
        let last = n - 1;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(v, last);
        let moved = i.map_vars(&perm);
        let gb = moved.gb_polys(budget)?;
        let stripped: Vec<Polynomial> = gb
            .iter()
            .map(|g| {
                let e = g.terms().iter().map(|(m, _)| m.exp(last)).min().unwrap_or(0);
                steps = steps.max(e as usize);
                if e == 0 {
                    g.clone()
                } else {
                    Poly::from_terms(g.terms().iter().map(|(m, c)| (m.with_exp(last, m.exp(last) - e), c.clone())).collect())
                }
            })
            .collect();
        let sat_v = Ideal::new(i.ring.clone(), stripped)?.map_vars(&perm).groebner_basis(budget)?;
        acc = Some(match acc {
            None => sat_v,
            Some(a) => {
                if a.contains_ideal(&sat_v, budget)? {
                    sat_v
                } else if sat_v.contains_ideal(&a, budget)? {
                    a
                } else {
                    intersect(&a, &sat_v, budget)?
                }
            }
        });
    }
    let ideal = acc.expect("at least one variable").groebner_basis(budget)?;
    Ok(Saturation { ideal, steps })
}

/// `I ∩ k[remaining variables]` via an elimination order.
pub fn eliminate(i: &Ideal, vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let n = i.ring.num_vars();
    if vars.iter().any(|&v| v >= n) {
        return Err(Error::IndexOutOfRange { index: *vars.iter().max().unwrap(), len: n });
    }
    if vars.len() >= n {
        return Err(Error::Precondition("cannot eliminate every variable".into()));
    }
    let order = TermOrder { mono: MonomialOrder::Elimination { vars: vars.to_vec() }, split: None };
    let inputs: Vec<Vector<Rational>> = i.gens.iter().map(|g| Vector::from_poly(g, 0, &order)).collect();
    let gb = buchberger(&inputs, GbConfig::new(&order, &[0]), budget)?;
    let kept: Vec<Polynomial> = gb
        .basis
        .iter()
        .map(|v| v.component(0))
        .filter(|p| p.terms().iter().all(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0)))
        .collect();
    Ideal::new(i.ring.clone(), kept)?.groebner_basis(budget)
}

/// Evidence that a projective zero locus is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmptinessWitness {
    /// The reduction modulo `prime` is irrelevant-primary; emptiness over the
    /// rationals follows because the image of a proper scheme over `Z_(p)` is closed.
    ModularReduction { prime: u64, basis_size: usize },
    /// The rational Groebner basis has an irrelevant-primary initial ideal.
    Rational { basis_size: usize },
}

/// Looks for a prime at which `gens` cut out the empty set. Sound for
/// emptiness only: `None` says nothing about the rational locus.
pub fn certify_empty_mod_p(gens: &[Polynomial], nvars: usize, budget: &Budget) -> Result<Option<EmptinessWitness>> {
    for &p in CERT_PRIMES.iter() {
        let out = match p {
            2147483647 => empty_mod::<2147483647>(gens, nvars, budget)?,
            2147483629 => empty_mod::<2147483629>(gens, nvars, budget)?,
            2147483587 => empty_mod::<2147483587>(gens, nvars, budget)?,
            _ => unreachable!(),
        };
        if let Some(size) = out {
            return Ok(Some(EmptinessWitness::ModularReduction { prime: p, basis_size: size }));
        }
    }
    Ok(None)
}

fn empty_mod<const P: u64>(gens: &[Polynomial], nvars: usize, budget: &Budget) -> Result<Option<usize>> {
    let Some(gb) = gb_mod::<P>(gens, budget)? else { return Ok(None) };
    let leads: Vec<Monomial> = gb.iter().map(|v| *v.lead().unwrap().0).collect();
    Ok(irrelevant_primary(&leads, nvars).then_some(gb.len()))
}

/// Projective dimension of the reduction of `gens` modulo the first certificate
/// prime at which the coefficients reduce. By upper semicontinuity of fibre
/// dimension this bounds the rational dimension from above.
pub fn dimension_mod_p(gens: &[Polynomial], nvars: usize, budget: &Budget) -> Result<Option<(u64, i64)>> {
    for &p in CERT_PRIMES.iter() {
        let out = match p {
            2147483647 => dim_mod::<2147483647>(gens, nvars, budget)?,
            2147483629 => dim_mod::<2147483629>(gens, nvars, budget)?,
            2147483587 => dim_mod::<2147483587>(gens, nvars, budget)?,
            _ => unreachable!(),
        };
        if let Some(d) = out {
            return Ok(Some((p, d)));
        }
    }
    Ok(None)
}

fn gb_mod<const P: u64>(gens: &[Polynomial], budget: &Budget) -> Result<Option<Vec<Vector<Fp<P>>>>> {
    let order = TermOrder::grevlex();
    let mut reduced = Vec::with_capacity(gens.len());
    for g in gens {
        match g.to_fp::<P>() {
            Some(r) => reduced.push(Vector::<Fp<P>>::from_poly(&r, 0, &order)),
            None => return Ok(None),
        }
    }
    Ok(Some(buchberger(&reduced, GbConfig::new(&order, &[0]), budget)?.basis))
}

fn dim_mod<const P: u64>(gens: &[Polynomial], nvars: usize, budget: &Budget) -> Result<Option<i64>> {
    let Some(gb) = gb_mod::<P>(gens, budget)? else { return Ok(None) };
    let leads: Vec<Monomial> = gb.iter().map(|v| *v.lead().unwrap().0).collect();
    Ok(Some((krull_dimension(&monomial_numerator(&leads, nvars), nvars) - 1).max(-1)))
}

/// Recomputes the modular emptiness certificate at `prime`.
pub fn verify_empty_mod_p(gens: &[Polynomial], nvars: usize, prime: u64, budget: &Budget) -> Result<bool> {
    let out = match prime {
        2147483647 => empty_mod::<2147483647>(gens, nvars, budget)?,
        2147483629 => empty_mod::<2147483629>(gens, nvars, budget)?,
        2147483587 => empty_mod::<2147483587>(gens, nvars, budget)?,
        _ => return Err(Error::InvalidInput(format!("{prime} is not a certificate prime"))),
    };
    Ok(out.is_some())
}

/// True when the monomial ideal contains a pure power of every variable.
pub fn irrelevant_primary(leads: &[Monomial], nvars: usize) -> bool {
    (0..nvars).all(|v| leads.iter().any(|m| m.degree() == m.exp(v)))
}

/// Emptiness of the projective zero locus of `ideal`, trying the modular
/// certificate first and falling back to the rational basis.
pub fn projective_emptiness(ideal: &Ideal, budget: &Budget) -> Result<Option<EmptinessWitness>> {
    if let Some(w) = certify_empty_mod_p(ideal.gens(), ideal.ring().num_vars(), budget)? {
        return Ok(Some(w));
    }
    if ideal.projective_dimension(budget)? == -1 {
        return Ok(Some(EmptinessWitness::Rational { basis_size: ideal.gb(budget)?.len() }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests;
