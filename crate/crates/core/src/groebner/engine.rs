//! Homogeneous Buchberger algorithm over graded free modules.
//!
//! Pairs are processed by increasing degree (the normal strategy, which for
//! homogeneous input coincides with sugar), pruned with the Gebauer-Moeller
//! criteria, and input generators of degree `d` are reduced only after every
//! pair of degree `d` has been processed. An input that survives reduction at
//! that point is a minimal generator of the submodule.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::vector::{merge, TermOrder, Vector};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::Field;
use crate::polyring::Monomial;

#[derive(Clone, Copy, Debug)]
pub struct GbConfig<'a> {
    pub order: &'a TermOrder,
    /// Degrees of the free-module basis vectors.
    pub comp_degrees: &'a [i32],
    /// Buchberger's coprime-leads criterion; valid for ideals only.
    pub product_criterion: bool,
    /// Stop after degree `d` (the result is then a `d`-truncated basis).
    pub truncate: Option<i32>,
}

impl<'a> GbConfig<'a> {
    pub fn new(order: &'a TermOrder, comp_degrees: &'a [i32]) -> Self {
        GbConfig { order, comp_degrees, product_criterion: comp_degrees.len() == 1, truncate: None }
    }
}

#[derive(Clone, Debug)]
pub struct GbResult<F> {
    /// Reduced, monic, sorted by ascending leading term.
    pub basis: Vec<Vector<F>>,
    /// Indices of inputs that form a minimal generating set.
    pub minimal_inputs: Vec<usize>,
    /// False when truncation stopped the computation early.
    pub complete: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a, F> {
    cfg: GbConfig<'a>,
    polys: Vec<Vector<F>>,
    active: Vec<bool>,
    by_comp: HashMap<u32, Vec<usize>>,
    pairs: Vec<Option<Pair>>,
    heap: BinaryHeap<Reverse<(i32, usize)>>,
    live: usize,
}

impl<'a, F: Field> State<'a, F> {
    fn lead(&self, k: usize) -> (&Monomial, u32) {
        let (m, c, _) = self.polys[k].lead().expect("nonzero basis element");
        (m, c)
    }

    fn find_reducer(&self, m: &Monomial, comp: u32) -> Option<usize> {
        self.by_comp
            .get(&comp)?
            .iter()
            .copied()
            .find(|&k| self.polys[k].terms[0].0.divides(m))
    }

    /// Full reduction of `f` against the active elements.
    fn reduce(&self, mut f: Vector<F>, from: usize) -> Vector<F> {
        let order = self.cfg.order;
        let mut done = from;
        while done < f.terms.len() {
            let (m, c, v) = &f.terms[done];
            match self.find_reducer(m, *c) {
                Some(k) => {
                    let g = &self.polys[k];
                    let q = g.terms[0].0.quotient_of(m).expect("divisor");
                    let coef = v.neg();
                    let tail = merge(&f.terms[done + 1..], &g.terms[1..], &coef, &q, order);
                    f.terms.truncate(done);
                    f.terms.extend(tail.terms);
                }
                None => done += 1,
            }
        }
        f
    }

    fn spoly(&self, p: &Pair) -> Vector<F> {
        let (gi, gj) = (&self.polys[p.i], &self.polys[p.j]);
        let qi = gi.terms[0].0.quotient_of(&p.lcm).expect("lcm");
        let qj = gj.terms[0].0.quotient_of(&p.lcm).expect("lcm");
        let left = gi.mul_term(&F::one(), &qi);
        merge(&left.terms, &gj.terms, &F::one().neg(), &qj, self.cfg.order)
    }

    fn pair_degree(&self, lcm: &Monomial, comp: u32) -> i32 {
        lcm.degree() as i32 + self.cfg.comp_degrees[comp as usize]
    }

    fn push_pair(&mut self, p: Pair) {
        let comp = self.lead(p.i).1;
        let deg = self.pair_degree(&p.lcm, comp);
        self.pairs.push(Some(p));
        self.heap.push(Reverse((deg, self.pairs.len() - 1)));
        self.live += 1;
    }

    /// Adds a monic, fully reduced element and updates the pair set.
    fn insert(&mut self, h: Vector<F>) {
        let new = self.polys.len();
        let (lh, ch) = {
            let (m, c, _) = h.lead().expect("nonzero");
            (*m, c)
        };
        self.polys.push(h);
        self.active.push(true);

        let same: Vec<usize> = self.by_comp.get(&ch).cloned().unwrap_or_default();
        let product = self.cfg.product_criterion;
        let cands: Vec<(usize, Monomial, bool)> = same
            .iter()
            .map(|&g| {
                let lg = self.polys[g].terms[0].0;
                (g, lh.lcm(&lg), product && lh.is_coprime(&lg))
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, l, coprime)) in cands.iter().enumerate() {
            let dominated = cands[idx + 1..].iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(l));
            if *coprime || !dominated {
                kept.push((*g, *l, *coprime));
            }
        }

        // old pairs made redundant by the new leading term
        for slot in self.pairs.iter_mut() {
            let Some(p) = slot else { continue };
            let lead_i = self.polys[p.i].terms[0].0;
            if self.polys[p.i].terms[0].1 != ch || !lh.divides(&p.lcm) {
                continue;
            }
            let lead_j = self.polys[p.j].terms[0].0;
            if lead_i.lcm(&lh) != p.lcm && lead_j.lcm(&lh) != p.lcm {
                *slot = None;
                self.live -= 1;
            }
        }

        for (g, l, coprime) in kept {
            if !coprime {
                self.push_pair(Pair { i: g, j: new, lcm: l });
            }
        }

        // elements whose leading term is now redundant
        let list = self.by_comp.entry(ch).or_default();
        list.retain(|&g| {
            let keep = !lh.divides(&self.polys[g].terms[0].0);
            if !keep {
                self.active[g] = false;
            }
            keep
        });
        list.push(new);
    }

    fn next_pair_degree(&mut self) -> Option<i32> {
        while let Some(Reverse((d, idx))) = self.heap.peek().copied() {
            if self.pairs[idx].is_some() {
                return Some(d);
            }
            self.heap.pop();
        }
        None
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        while let Some(Reverse((_, idx))) = self.heap.pop() {
            if let Some(p) = self.pairs[idx].take() {
                self.live -= 1;
                return Some(p);
            }
        }
        None
    }

    fn active_count(&self) -> usize {
        self.by_comp.values().map(Vec::len).sum()
    }
}

pub fn buchberger<F: Field>(inputs: &[Vector<F>], cfg: GbConfig<'_>, budget: &Budget) -> Result<GbResult<F>> {
    let mut order_in: Vec<(i32, usize)> = inputs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| {
            debug_assert!(v.is_homogeneous(cfg.comp_degrees), "inhomogeneous input {i}");
            (v.degree(cfg.comp_degrees).unwrap(), i)
        })
        .collect();
    order_in.sort();

    let mut st = State {
        cfg,
        polys: Vec::new(),
        active: Vec::new(),
        by_comp: HashMap::new(),
        pairs: Vec::new(),
        heap: BinaryHeap::new(),
        live: 0,
    };
    let mut minimal = Vec::new();
    let mut next_input = 0;
    let mut complete = true;
    let mut steps = 0usize;

    loop {
        steps += 1;
        if steps % 16 == 0 {
            budget.check_time()?;
        }
        let pd = st.next_pair_degree();
        let id = order_in.get(next_input).map(|x| x.0);
        let d = match (pd, id) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(t) = cfg.truncate {
            if d > t {
                complete = false;
                break;
            }
        }
        budget.check_degree(d)?;
        if pd == Some(d) {
            let p = st.pop_pair().expect("pair present");
            let s = st.spoly(&p);
            let r = st.reduce(s, 0);
            if !r.is_zero() {
                st.insert(r.make_monic());
            }
        } else {
            let idx = order_in[next_input].1;
            next_input += 1;
            let r = st.reduce(inputs[idx].clone(), 0);
            if !r.is_zero() {
                minimal.push(idx);
                st.insert(r.make_monic());
            }
        }
        budget.check_basis(st.active_count())?;
    }
    let _ = st.live;

    // inter-reduce the active elements
    let mut ids: Vec<usize> = st.by_comp.values().flatten().copied().collect();
    ids.sort_by(|&a, &b| {
        let (ma, ca) = st.lead(a);
        let (mb, cb) = st.lead(b);
        cfg.order.cmp((ma, ca), (mb, cb))
    });
    let mut basis = Vec::with_capacity(ids.len());
    for &k in &ids {
        budget.check_time()?;
        let reduced = st.reduce(st.polys[k].clone(), 1);
        basis.push(reduced);
    }
    minimal.sort_unstable();
    Ok(GbResult { basis, minimal_inputs: minimal, complete })
}

/// Full reduction of `f` modulo a reduced Groebner basis.
pub fn reduce_by<F: Field>(f: &Vector<F>, basis: &[Vector<F>], order: &TermOrder) -> Vector<F> {
    let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
    for (k, g) in basis.iter().enumerate() {
        if let Some((_, c, _)) = g.lead() {
            by_comp.entry(c).or_default().push(k);
        }
    }
    let mut f = f.clone();
    let mut done = 0;
    while done < f.terms.len() {
        let (m, c, v) = &f.terms[done];
        let hit = by_comp.get(c).and_then(|l| l.iter().copied().find(|&k| basis[k].terms[0].0.divides(m)));
        match hit {
            Some(k) => {
                let g = &basis[k];
                let q = g.terms[0].0.quotient_of(m).unwrap();
                let coef = v.div(&g.terms[0].2).neg();
                let tail = merge(&f.terms[done + 1..], &g.terms[1..], &coef, &q, order);
                f.terms.truncate(done);
                f.terms.extend(tail.terms);
            }
            None => done += 1,
        }
    }
    f
}
