//! Elements of graded free modules `R^r`, the common currency of the engine.
//! Ideals are the rank-one case.

use std::cmp::Ordering;

use crate::field::Field;
use crate::polyring::{Monomial, MonomialOrder, Poly};

/// Module term order: optional block split on components (components below
/// `split` dominate everything above), then the monomial order, then lower
/// component index first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    pub split: Option<u32>,
}

impl TermOrder {
    pub fn grevlex() -> Self {
        TermOrder { mono: MonomialOrder::GRevLex, split: None }
    }

    pub fn with_split(mono: MonomialOrder, split: u32) -> Self {
        TermOrder { mono, split: Some(split) }
    }

    #[inline]
    pub fn cmp(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        if let Some(s) = self.split {
            let (ta, tb) = (a.1 < s, b.1 < s);
            if ta != tb {
                return if ta { Ordering::Greater } else { Ordering::Less };
            }
        }
        self.mono.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<F> {
    pub(crate) terms: Vec<(Monomial, u32, F)>,
}

impl<F: Field> Default for Vector<F> {
    fn default() -> Self {
        Vector { terms: Vec::new() }
    }
}

impl<F: Field> Vector<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(mut terms: Vec<(Monomial, u32, F)>, order: &TermOrder) -> Self {
        terms.sort_by(|a, b| order.cmp((&b.0, b.1), (&a.0, a.1)));
        let mut out: Vec<(Monomial, u32, F)> = Vec::with_capacity(terms.len());
        for (m, c, v) in terms {
            match out.last_mut() {
                Some((lm, lc, lv)) if *lm == m && *lc == c => *lv = lv.add(&v),
                _ => out.push((m, c, v)),
            }
        }
        out.retain(|t| !t.2.is_zero());
        Vector { terms: out }
    }

    pub fn from_poly(p: &Poly<F>, comp: u32, order: &TermOrder) -> Self {
        let terms: Vec<_> = p.terms().iter().map(|(m, c)| (*m, comp, c.clone())).collect();
        if order.mono == MonomialOrder::GRevLex {
            Vector { terms }
        } else {
            Self::from_terms(terms, order)
        }
    }

    /// Builds `Σ polys[i] e_{offset+i}`.
    pub fn from_polys(polys: &[Poly<F>], offset: u32, order: &TermOrder) -> Self {
        let terms = polys
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |(m, c)| (*m, offset + i as u32, c.clone())))
            .collect();
        Self::from_terms(terms, order)
    }

    pub fn terms(&self) -> &[(Monomial, u32, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(&Monomial, u32, &F)> {
        self.terms.first().map(|(m, c, v)| (m, *c, v))
    }

    /// Degree in the graded free module whose basis degrees are `comp_degrees`.
    pub fn degree(&self, comp_degrees: &[i32]) -> Option<i32> {
        self.terms.first().map(|(m, c, _)| m.degree() as i32 + comp_degrees[*c as usize])
    }

    pub fn is_homogeneous(&self, comp_degrees: &[i32]) -> bool {
        match self.degree(comp_degrees) {
            None => true,
            Some(d) => self.terms.iter().all(|(m, c, _)| m.degree() as i32 + comp_degrees[*c as usize] == d),
        }
    }

    /// Coordinate polynomial of component `comp`.
    pub fn component(&self, comp: u32) -> Poly<F> {
        Poly::from_terms(self.terms.iter().filter(|t| t.1 == comp).map(|(m, _, v)| (*m, v.clone())).collect())
    }

    /// Splits into coordinate polynomials `0..rank`.
    pub fn to_polys(&self, rank: usize) -> Vec<Poly<F>> {
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); rank];
        for (m, c, v) in &self.terms {
            buckets[*c as usize].push((*m, v.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn max_comp(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1).max()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector { terms: self.terms.iter().map(|(m, k, v)| (*m, *k, v.mul(c))).collect() }
    }

    pub fn make_monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, _, c)) if c.is_one() => self.clone(),
            Some((_, _, c)) => self.scale(&c.inv()),
        }
    }

    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, k, v)| (t.mul(m), *k, v.mul(c))).collect() }
    }

    /// Multiplication by a polynomial.
    pub fn mul_poly(&self, p: &Poly<F>, order: &TermOrder) -> Self {
        let mut acc = Self::zero();
        for (m, c) in p.terms() {
            acc = acc.add(&self.mul_term(c, m), order);
        }
        acc
    }

    pub fn add(&self, o: &Self, order: &TermOrder) -> Self {
        merge(&self.terms, &o.terms, &F::one(), &Monomial::one(), order)
    }

    pub fn sub(&self, o: &Self, order: &TermOrder) -> Self {
        merge(&self.terms, &o.terms, &F::one().neg(), &Monomial::one(), order)
    }

    /// `self + c * m * o`.
    pub fn add_scaled(&self, c: &F, m: &Monomial, o: &Self, order: &TermOrder) -> Self {
        merge(&self.terms, &o.terms, c, m, order)
    }

    /// Renumbers components with `f`; terms for which `f` returns `None` are dropped.
    pub fn map_comps(&self, f: impl Fn(u32) -> Option<u32>, order: &TermOrder) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c, v)| f(*c).map(|k| (*m, k, v.clone()))).collect(), order)
    }

    pub fn reorder(&self, order: &TermOrder) -> Self {
        Self::from_terms(self.terms.clone(), order)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G, order: &TermOrder) -> Vector<G> {
        Vector::from_terms(self.terms.iter().map(|(m, c, v)| (*m, *c, f(v))).collect(), order)
    }
}

/// `a + c * m * b` by a single merge.
pub(crate) fn merge<F: Field>(
    a: &[(Monomial, u32, F)],
    b: &[(Monomial, u32, F)],
    c: &F,
    m: &Monomial,
    order: &TermOrder,
) -> Vector<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let one = m == &Monomial::one();
    let shifted = |t: &Monomial| if one { *t } else { t.mul(m) };
    let mut bj = b.first().map(|t| shifted(&t.0));
    while i < a.len() {
        let Some(bm) = bj else { break };
        let (am, ac, av) = &a[i];
        let (_, bc, bv) = &b[j];
        match order.cmp((am, *ac), (&bm, *bc)) {
            Ordering::Greater => {
                out.push((*am, *ac, av.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, *bc, bv.mul(c)));
                j += 1;
                bj = b.get(j).map(|t| shifted(&t.0));
            }
            Ordering::Equal => {
                let v = av.add(&bv.mul(c));
                if !v.is_zero() {
                    out.push((*am, *ac, v));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| shifted(&t.0));
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    while j < b.len() {
        let (bm, bc, bv) = &b[j];
        out.push((shifted(bm), *bc, bv.mul(c)));
        j += 1;
    }
    Vector { terms: out }
}
