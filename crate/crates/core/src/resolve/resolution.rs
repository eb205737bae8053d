//! Syzygies and minimal graded free resolutions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GradedFreeModule, GradedModule, HomMatrix};
use crate::budget::Budget;
use crate::error::Result;
use crate::groebner::{minimal_generators, syzygies};

/// Columns generating `ker(m)`, as a map into the source of `m`.
pub fn syzygy_module(m: &HomMatrix, budget: &Budget) -> Result<HomMatrix> {
    let syz = syzygies(&m.cols, &m.target.twists, &m.source.twists, budget)?;
    let (cols, degs): (Vec<_>, Vec<_>) = syz.into_iter().unzip();
    Ok(HomMatrix::new(m.source.clone(), GradedFreeModule::new(degs), cols))
}

/// `F_0 <- F_1 <- ... <- F_len`, with `maps[i]: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub modules: Vec<GradedFreeModule>,
    pub maps: Vec<HomMatrix>,
    /// True when the resolution reached a zero module before `max_length`.
    pub complete: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `d_i ∘ d_{i+1} = 0` for all consecutive differentials.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).is_zero())
    }
}

/// Minimal graded free resolution of `m` up to `max_length` differentials.
pub fn free_resolution(m: &GradedModule, max_length: usize, budget: &Budget) -> Result<Resolution> {
    let m = m.minimized(budget)?;
    let f0 = GradedFreeModule::new(m.gens().to_vec());
    let mut modules = vec![f0.clone()];
    let mut maps = Vec::new();
    if m.relations().is_empty() {
        return Ok(Resolution { modules, maps, complete: true });
    }
    let mut cur = HomMatrix::new(f0, GradedFreeModule::new(m.relation_degrees()), m.relations().to_vec());
    loop {
        budget.check_time()?;
        modules.push(cur.source.clone());
        maps.push(cur.clone());
        if maps.len() >= max_length {
            return Ok(Resolution { modules, maps, complete: false });
        }
        let syz = syzygy_module(&cur, budget)?;
        if syz.cols.is_empty() {
            return Ok(Resolution { modules, maps, complete: true });
        }
        let keep = minimal_generators(&syz.cols, &syz.target.twists, budget)?;
        let cols = keep.iter().map(|&i| syz.cols[i].clone()).collect();
        let degs = keep.iter().map(|&i| syz.source.twists[i]).collect();
        cur = HomMatrix::new(syz.target, GradedFreeModule::new(degs), cols);
    }
}

/// `(i, j) -> β_{i,j}`: summands `R(-j)` in homological position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    j: i32,
    value: usize,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<BettiEntry> = self.entries.iter().map(|(&(i, j), &value)| BettiEntry { i, j, value }).collect();
        #[derive(Serialize)]
        struct Out {
            entries: Vec<BettiEntry>,
        }
        Out { entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            entries: Vec<BettiEntry>,
        }
        let raw = In::deserialize(d)?;
        Ok(BettiTable { entries: raw.entries.into_iter().map(|e| ((e.i, e.j), e.value)).collect() })
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == i).map(|(_, v)| v).sum()
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// `max (j - i)` over nonzero entries: the regularity of the resolved module.
    pub fn regularity(&self) -> Option<i32> {
        self.entries.keys().map(|&(i, j)| j - i as i32).max()
    }
}

pub fn betti_table(res: &Resolution) -> BettiTable {
    let mut entries = BTreeMap::new();
    for (i, f) in res.modules.iter().enumerate() {
        for &t in &f.twists {
            *entries.entry((i, t)).or_insert(0) += 1;
        }
    }
    BettiTable { entries }
}

/// Triangular layout: column `i`, row `j - i`, dashes for zeros.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "0");
        }
        let len = self.length();
        let rows: Vec<i32> = {
            let lo = self.entries.keys().map(|&(i, j)| j - i as i32).min().unwrap();
            let hi = self.regularity().unwrap();
            (lo..=hi).collect()
        };
        let cell = |s: String, w: usize| format!("{s:>w$}");
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["".to_string()];
        header.extend((0..=len).map(|i| i.to_string()));
        grid.push(header);
        let mut total = vec!["total:".to_string()];
        total.extend((0..=len).map(|i| self.total(i).to_string()));
        grid.push(total);
        for r in &rows {
            let mut row = vec![format!("{r}:")];
            row.extend((0..=len).map(|i| match self.get(i, r + i as i32) {
                0 => ".".to_string(),
                v => v.to_string(),
            }));
            grid.push(row);
        }
        let ncols = len + 2;
        let widths: Vec<usize> = (0..ncols).map(|c| grid.iter().map(|row| row[c].len()).max().unwrap()).collect();
        for row in grid {
            let line: Vec<String> = row.into_iter().enumerate().map(|(c, s)| cell(s, widths[c])).collect();
            writeln!(f, "{}", line.join(" ").trim_end())?;
        }
        Ok(())
    }
}
