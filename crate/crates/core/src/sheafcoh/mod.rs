//! Sheaf cohomology on `P^n` from graded modules by local duality.
//!
//! For `M` over `R = k[x_0..x_n]` and `i ≥ 1`,
//! `h^i(M~(k)) = dim Ext^{n-i}(M, R)_{-k-n-1}`, and
//! `h^0(M~(k)) = dim M_k - dim Ext^{n+1}(M,R)_{-k-n-1} + dim Ext^n(M,R)_{-k-n-1}`.

mod p1;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use p1::{p1_kernel_splitting, SerreCheck, SplittingReport, SplittingType};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::binomial;
use crate::resolve::{betti_table, free_resolution, graded_piece_dim, hom_complex_homology, GradedModule, Resolution};

/// Bott's formula for `h^i(P^n, O(d))`.
pub fn line_bundle_cohomology(n: i64, d: i64, i: i64) -> i64 {
    if i == 0 && d >= 0 {
        binomial(d + n, n)
    } else if i == n && d <= -n - 1 {
        binomial(-d - 1, n)
    } else {
        0
    }
}

/// Cohomology of `M~` with the dual Ext modules computed once from a single resolution.
pub struct SheafCohomology {
    module: GradedModule,
    dual: GradedModule,
    res: Resolution,
    ext: Vec<OnceLock<GradedModule>>,
}

impl SheafCohomology {
    pub fn new(module: GradedModule, budget: &Budget) -> Result<Self> {
        let nvars = module.ring().num_vars();
        let res = free_resolution(&module, nvars + 1, budget)?;
        let dual = GradedModule::free(module.ring().clone(), vec![0]);
        let ext = (0..=nvars).map(|_| OnceLock::new()).collect();
        Ok(SheafCohomology { module, dual, res, ext })
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    /// Projective dimension `n` of the ambient space.
    pub fn n(&self) -> usize {
        self.module.ring().num_vars() - 1
    }

    /// `Ext^j(M, R)`.
    pub fn ext(&self, j: usize, budget: &Budget) -> Result<&GradedModule> {
        if let Some(e) = self.ext[j].get() {
            return Ok(e);
        }
        let e = hom_complex_homology(&self.res, j, &self.dual, budget)?;
        Ok(self.ext[j].get_or_init(|| e))
    }

    fn ext_dim(&self, j: usize, k: i64, budget: &Budget) -> Result<i64> {
        let n = self.n() as i64;
        graded_piece_dim(self.ext(j, budget)?, (-k - n - 1) as i32, budget)
    }

    /// `h^i(M~(k))`.
    pub fn h(&self, i: usize, k: i64, budget: &Budget) -> Result<i64> {
        let n = self.n();
        if i > n {
            return Ok(0);
        }
        if i == 0 {
            let mk = graded_piece_dim(&self.module, k as i32, budget)?;
            return Ok(mk - self.ext_dim(n + 1, k, budget)? + self.ext_dim(n, k, budget)?);
        }
        self.ext_dim(n - i, k, budget)
    }

    /// `Σ (-1)^i h^i(M~(k))`.
    pub fn euler_characteristic(&self, k: i64, budget: &Budget) -> Result<i64> {
        let mut chi = 0;
        for i in 0..=self.n() {
            let h = self.h(i, k, budget)?;
            chi += if i % 2 == 0 { h } else { -h };
        }
        Ok(chi)
    }

    pub fn table(&self, rows: &[usize], window: (i64, i64), provenance: &str, budget: &Budget) -> Result<CohomologyTable> {
        let (lo, hi) = window;
        let mut entries = Vec::with_capacity(rows.len());
        for &i in rows {
            let row = (lo..=hi).map(|k| self.h(i, k, budget)).collect::<Result<Vec<_>>>()?;
            entries.push(row);
        }
        Ok(CohomologyTable { rows: rows.to_vec(), k_min: lo, k_max: hi, entries, window_provenance: provenance.to_string() })
    }
}

/// `h^i(M~(k))` computed from scratch; prefer [`SheafCohomology`] for many cells.
pub fn sheaf_cohomology(m: &GradedModule, i: usize, k: i64, budget: &Budget) -> Result<i64> {
    SheafCohomology::new(m.clone(), budget)?.h(i, k, budget)
}

/// `h^i(F(k))` for listed rows `i` over `k_min..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub rows: Vec<usize>,
    pub k_min: i64,
    pub k_max: i64,
    /// `entries[r][k - k_min]` for row `rows[r]`.
    pub entries: Vec<Vec<i64>>,
    pub window_provenance: String,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, k: i64) -> Option<i64> {
        let r = self.rows.iter().position(|&x| x == i)?;
        if k < self.k_min || k > self.k_max {
            return None;
        }
        Some(self.entries[r][(k - self.k_min) as usize])
    }

    /// Nonzero `(k, value)` cells of row `i`.
    pub fn nonzero(&self, i: usize) -> Vec<(i64, i64)> {
        let Some(r) = self.rows.iter().position(|&x| x == i) else { return Vec::new() };
        self.entries[r].iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (self.k_min + c as i64, v)).collect()
    }

    pub fn all_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == 0)
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<i64> = (self.k_min..=self.k_max).collect();
        let mut grid = vec![std::iter::once("k".to_string()).chain(ks.iter().map(|k| k.to_string())).collect::<Vec<_>>()];
        for (r, &i) in self.rows.iter().enumerate() {
            grid.push(std::iter::once(format!("h{i}")).chain(self.entries[r].iter().map(|v| v.to_string())).collect());
        }
        let widths: Vec<usize> = (0..=ks.len()).map(|c| grid.iter().map(|row| row[c].len()).max().unwrap()).collect();
        for row in &grid {
            let cells: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        write!(f, "window: {}", self.window_provenance)
    }
}

/// `h^1(I_C(k))` over a window containing every nonzero value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaoTable {
    pub table: CohomologyTable,
    pub acm: bool,
}

/// Hartshorne-Rao table of a curve. Without an override the window is
/// `[min support, reg(I) - 2]`, where `h^1(I(k)) = 0` for `k ≥ reg(I) - 1`
/// and the support is read off the finite-length `Ext^{n-1}(I, R)`.
pub fn rao_table(i_c: &Ideal, window: Option<(i64, i64)>, budget: &Budget) -> Result<RaoTable> {
    let dim = i_c.projective_dimension(budget)?;
    if dim != 1 {
        return Err(Error::WrongDimension { expected: 1, found: dim });
    }
    let m = GradedModule::from_ideal(i_c, budget)?;
    let sc = SheafCohomology::new(m, budget)?;
    let n = sc.n() as i64;
    let support = sc.ext(sc.n() - 1, budget)?.finite_support(budget)?;
    let ks: Option<Vec<i64>> = support.map(|s| s.iter().map(|&(e, _)| -(e as i64) - n - 1).collect());
    let (window, provenance) = match (window, &ks) {
        (Some(w), _) => (w, format!("user override [{}, {}]", w.0, w.1)),
        (None, None) => {
            return Err(Error::Precondition(
                "Ext^{n-1}(I, R) is not of finite length; the ideal is not a locally Cohen-Macaulay curve".into(),
            ))
        }
        (None, Some(ks)) => {
            let reg = betti_table(sc.resolution()).regularity().unwrap_or(0) as i64;
            let edge = reg - 2;
            let lo = ks.iter().copied().chain([edge, 0]).min().unwrap();
            let hi = ks.iter().copied().chain([edge, 0]).max().unwrap();
            (
                (lo, hi),
                format!("regularity bound: reg(I)={reg} so h1 vanishes for k>={}; Rao module support {ks:?}", reg - 1),
            )
        }
    };
    let table = sc.table(&[1], window, &provenance, budget)?;
    let acm = match &ks {
        Some(ks) => ks.is_empty(),
        None => table.all_zero(),
    };
    Ok(RaoTable { table, acm })
}

#[cfg(test)]
mod tests;
