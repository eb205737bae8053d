//! Hilbert series of monomial quotients and graded modules.

use serde::{Deserialize, Serialize};

use crate::polyring::{binomial, Monomial, MAX_VARS};

/// Laurent polynomial `Σ coeffs[i] t^(shift+i)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPoly {
    pub shift: i32,
    pub coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { shift: 0, coeffs: Vec::new() }
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        LaurentPoly { shift: e, coeffs: vec![c] }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.shift;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (self.shift + i as i32, c))
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead_zeros);
        self.shift += lead_zeros as i32;
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() {
            return o.clone();
        }
        if o.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.shift.min(o.shift);
        let hi = (self.shift + self.coeffs.len() as i32).max(o.shift + o.coeffs.len() as i32);
        let coeffs = (lo..hi).map(|e| self.coeff(e) + o.coeff(e)).collect();
        LaurentPoly { shift: lo, coeffs }.normalized()
    }

    pub fn scale_shift(&self, c: i64, e: i32) -> Self {
        LaurentPoly { shift: self.shift + e, coeffs: self.coeffs.iter().map(|&v| v * c).collect() }.normalized()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly { shift: self.shift + o.shift, coeffs }.normalized()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `(1 - t)`; `None` if not divisible.
    pub fn div_one_minus_t(&self) -> Option<Self> {
        if self.eval_at_one() != 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // p = (1 - t) q  =>  q_i = Σ_{j<=i} p_j
        let mut q = Vec::with_capacity(self.coeffs.len() - 1);
        let mut acc = 0;
        for &c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            q.push(acc);
        }
        Some(LaurentPoly { shift: self.shift, coeffs: q }.normalized())
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^nvars` of `R / (gens)`.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> LaurentPoly {
    let mut g = minimalize(gens.to_vec());
    g.sort_by(|a, b| b.cmp_grevlex(a));
    numerator_rec(g, nvars)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn support(m: &Monomial) -> Vec<usize> {
    (0..MAX_VARS).filter(|&i| m.exp(i) > 0).collect()
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> LaurentPoly {
    if gens.is_empty() {
        return LaurentPoly::monomial(1, 0);
    }
    // pairwise coprime generators: the quotient is a complete intersection
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens
            .iter()
            .fold(LaurentPoly::monomial(1, 0), |acc, m| acc.mul(&LaurentPoly { shift: 0, coeffs: one_minus_t_pow(m.degree()) }));
    }
    // pivot on the most frequent variable among mixed generators; with minimal
    // generators, any shared variable occurs in some mixed generator
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| support(m).len() > 1).collect();
    let mut freq = [0usize; MAX_VARS];
    for m in &mixed {
        for v in support(m) {
            freq[v] += 1;
        }
    }
    let var = (0..MAX_VARS).max_by_key(|&i| (freq[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u32> = mixed.iter().map(|m| m.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::one().with_exp(var, e);

    // R/M has numerator N(M + p) + t^deg(p) N(M : p)
    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| m.with_exp(var, m.exp(var).saturating_sub(e)))
        .collect();
    let a = numerator_rec(minimalize(plus), nvars);
    let b = numerator_rec(minimalize(colon), nvars);
    a.add(&b.scale_shift(1, e as i32))
}

fn one_minus_t_pow(d: u32) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    v
}

/// Value at `k` of the Hilbert function for the series `num/(1-t)^nvars`.
pub fn hilbert_function_value(num: &LaurentPoly, nvars: usize, k: i64) -> i64 {
    let n = nvars as i64 - 1;
    num.terms().map(|(e, c)| c * binomial(k - e as i64 + n, n)).sum()
}

/// Hilbert polynomial of `num/(1-t)^nvars` evaluated at any integer `k`.
pub fn hilbert_polynomial_value(num: &LaurentPoly, nvars: usize, k: i64) -> i64 {
    let n = nvars as i64 - 1;
    num.terms().map(|(e, c)| c * binomial_poly(k - e as i64 + n, n)).sum()
}

/// The polynomial `x(x-1)...(x-n+1)/n!` at integer `x`.
pub fn binomial_poly(x: i64, n: i64) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..n {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

/// Krull dimension of a module with Hilbert series `num/(1-t)^nvars`;
/// `-1` for the zero module.
pub fn krull_dimension(num: &LaurentPoly, nvars: usize) -> i64 {
    if num.is_zero() {
        return -1;
    }
    let mut p = num.clone();
    let mut k = 0;
    while let Some(q) = p.div_one_minus_t() {
        if q.is_zero() {
            break;
        }
        p = q;
        k += 1;
    }
    nvars as i64 - k
}
