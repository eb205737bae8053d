use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Monomial, MAX_VARS};
use crate::field::{denominator_lcm, Field, Fp, Rational};

/// Sparse polynomial; terms sorted strictly descending in grevlex, no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    terms: Vec<(Monomial, F)>,
}

pub type Polynomial = Poly<Rational>;

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn var(i: usize) -> Self {
        Self::term(F::one(), Monomial::var(i))
    }

    pub fn term(c: F, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from unsorted terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
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

    /// Total degree of the leading term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|(t, _)| m.cmp_grevlex(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn combine(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp_grevlex(mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, if negate { cb.neg() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (*m, if negate { c.neg() } else { c.clone() })));
        Poly { terms: out }
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect() }
    }

    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (short, long) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc = Self::zero();
        for (m, c) in &short.terms {
            acc = acc.add(&long.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn make_monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), c.mul(&F::from_i64(e as i64)))
            })
            .collect();
        // dividing every term by the same variable preserves the order
        Poly { terms }
    }

    /// Sets every listed variable to zero.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0))
            .cloned()
            .collect();
        Poly { terms }
    }

    /// Substitutes `x_i -> images[i]` for every variable.
    pub fn substitute(&self, images: &[Poly<F>]) -> Self {
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Self::one(), p.clone()]).collect();
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(img);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Permutes variables: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u32; MAX_VARS];
                for (i, &p) in perm.iter().enumerate() {
                    e[p] = m.exp(i);
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Self::from_terms(terms)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// Highest variable index occurring, plus one.
    pub fn support_vars(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| (0..MAX_VARS).rev().find(|&i| m.exp(i) > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }
}

impl Polynomial {
    pub fn from_i64_terms(terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(terms.iter().map(|(c, e)| (Monomial::from_exponents(e), Rational::from_i64(*c))).collect())
    }

    /// Reduction modulo P; `None` if a denominator vanishes.
    pub fn to_fp<const P: u64>(&self) -> Option<Poly<Fp<P>>> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let r = Fp::<P>::from_rational(c)?;
            if !r.is_zero() {
                terms.push((*m, r));
            }
        }
        Some(Poly { terms })
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(self.terms.iter().map(|(_, c)| c));
        let ints: Vec<BigInt> = self.terms.iter().map(|(_, c)| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::from(0);
        for v in &ints {
            g = num_integer::Integer::gcd(&g, v);
        }
        if ints[0].is_negative() {
            g = -g;
        }
        let terms = self.terms.iter().zip(ints).map(|((m, _), v)| (*m, Rational::from_integer(v / &g))).collect();
        Poly { terms }
    }
}
