use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of variables of any ring.
pub const MAX_VARS: usize = 8;

/// Dense exponent vector. Unused trailing slots stay zero, so comparisons
/// never need to know the ring size.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { exps }
    }

    #[inline]
    pub fn divides(&self, o: &Self) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, if `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Self) -> Option<Self> {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = o.exps[i].checked_sub(self.exps[i])?;
        }
        Some(Monomial { exps })
    }

    #[inline]
    pub fn lcm(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps.iter()) {
            *a = (*a).max(*b);
        }
        Monomial { exps }
    }

    #[inline]
    pub fn is_coprime(&self, o: &Self) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Self {
        let mut m = *self;
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }

    /// Swap two variables.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut m = *self;
        m.exps.swap(i, j);
        m
    }

    /// Graded reverse lexicographic comparison.
    #[inline]
    pub fn cmp_grevlex(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != o.exps[i] {
                return o.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }

    /// All monomials of total degree `d` in `nvars` variables, descending in grevlex.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial::from_exponents(&cur[..nvars]));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, nvars, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(0, nvars, d, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp_grevlex(a));
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps)
    }
}

/// Term order on monomials used by the Groebner engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GRevLex,
    /// Block order: total degree in the eliminated variables first, then grevlex.
    Elimination { vars: Vec<usize> },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GRevLex => a.cmp_grevlex(b),
            MonomialOrder::Elimination { vars } => {
                let da: u32 = vars.iter().map(|&v| a.exp(v)).sum();
                let db: u32 = vars.iter().map(|&v| b.exp(v)).sum();
                da.cmp(&db).then_with(|| a.cmp_grevlex(b))
            }
        }
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
