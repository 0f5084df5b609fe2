//! Low-index subgroup search over standard partial coset tables.
//!
//! Entries are filled in row-major order (coset, then column `g, g⁻¹, …`), and
//! a new coset is only ever introduced at the first undefined entry, so every
//! complete table reached is in standard form. Distinct branches therefore
//! yield distinct subgroups and each subgroup of index ≤ n appears once.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::word::letter_col;
use super::{CosetTable, FpError, GroupPresentation};

const NONE: u32 = u32::MAX;

/// Default cap on search nodes for [`low_index_subgroups`].
pub const DEFAULT_NODE_BUDGET: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowIndexOptions {
    pub max_index: usize,
    /// Keep only one subgroup per conjugacy class (the canonically least).
    pub conjugacy_representatives: bool,
    /// Maximum number of search nodes before giving up.
    pub node_budget: usize,
}

impl LowIndexOptions {
    pub fn new(max_index: usize) -> Self {
        LowIndexOptions {
            max_index,
            conjugacy_representatives: false,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

struct Search<'a> {
    ngens: usize,
    cols: usize,
    max_index: usize,
    rels: Vec<Vec<usize>>,
    nodes: usize,
    budget: usize,
    out: &'a mut Vec<CosetTable>,
}

#[derive(Clone)]
struct Partial {
    rows: Vec<Vec<u32>>,
}

impl Partial {
    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.rows[c][x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.rows[c][x] = d as u32;
        self.rows[d][x ^ 1] = c as u32;
    }
}

impl Search<'_> {
    /// Applies deductions from every relator at every coset until nothing
    /// changes. Returns `false` if the partial table is inconsistent.
    fn propagate(&self, t: &mut Partial) -> bool {
        loop {
            let mut changed = false;
            for c in 0..t.rows.len() {
                for r in &self.rels {
                    let mut f = c;
                    let mut i = 0usize;
                    while i < r.len() && t.get(f, r[i]) != NONE {
                        f = t.get(f, r[i]) as usize;
                        i += 1;
                    }
                    if i == r.len() {
                        if f != c {
                            return false;
                        }
                        continue;
                    }
                    let mut b = c;
                    let mut j = r.len();
                    while j > i && t.get(b, r[j - 1] ^ 1) != NONE {
                        b = t.get(b, r[j - 1] ^ 1) as usize;
                        j -= 1;
                    }
                    if j == i {
                        if f != b {
                            return false;
                        }
                    } else if j == i + 1 {
                        let x = r[i];
                        if t.get(f, x) != NONE || t.get(b, x ^ 1) != NONE {
                            return false;
                        }
                        t.set(f, x, b);
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn first_undefined(&self, t: &Partial) -> Option<(usize, usize)> {
        for (c, row) in t.rows.iter().enumerate() {
            for (x, &d) in row.iter().enumerate() {
                if d == NONE {
                    return Some((c, x));
                }
            }
        }
        None
    }

    fn descend(&mut self, mut t: Partial) -> Result<(), FpError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(FpError::BudgetExceeded {
                budget: self.budget,
            });
        }
        if !self.propagate(&mut t) {
            return Ok(());
        }
        let Some((c, x)) = self.first_undefined(&t) else {
            let index = t.rows.len();
            let action = (0..self.ngens)
                .map(|g| (0..index).map(|c| t.rows[c][2 * g]).collect())
                .collect();
            let table = CosetTable::from_actions(action, None)
                .expect("complete partial table is a valid action");
            self.out.push(table);
            return Ok(());
        };
        for d in 0..t.rows.len() {
            if t.get(d, x ^ 1) == NONE {
                let mut next = t.clone();
                next.set(c, x, d);
                self.descend(next)?;
            }
        }
        if t.rows.len() < self.max_index {
            let mut next = t;
            next.rows.push(vec![NONE; self.cols]);
            let d = next.rows.len() - 1;
            next.set(c, x, d);
            self.descend(next)?;
        }
        Ok(())
    }
}

fn relator_family(pres: &GroupPresentation) -> Vec<Vec<usize>> {
    let mut set = BTreeSet::new();
    for r in pres.relators() {
        for w in [r.clone(), r.inverse()] {
            let cols: Vec<usize> = w.letters().iter().map(|&l| letter_col(l)).collect();
            for k in 0..cols.len() {
                let mut rot = cols[k..].to_vec();
                rot.extend_from_slice(&cols[..k]);
                set.insert(rot);
            }
        }
    }
    set.into_iter().collect()
}

/// All subgroups of index at most `opts.max_index`, one standard coset table
/// each, ordered by index and then by flattened action rows.
pub fn low_index_subgroups_with(
    pres: &GroupPresentation,
    opts: LowIndexOptions,
) -> Result<Vec<CosetTable>, FpError> {
    if opts.max_index == 0 {
        return Err(FpError::InvalidIndexBound);
    }
    let mut out = Vec::new();
    if pres.generator_count() == 0 {
        out.push(CosetTable::from_actions(Vec::new(), None)?);
        return Ok(out);
    }
    let mut search = Search {
        ngens: pres.generator_count(),
        cols: 2 * pres.generator_count(),
        max_index: opts.max_index,
        rels: relator_family(pres),
        nodes: 0,
        budget: opts.node_budget,
        out: &mut out,
    };
    search.descend(Partial {
        rows: vec![vec![NONE; 2 * pres.generator_count()]],
    })?;
    if opts.conjugacy_representatives {
        out.retain(|t| (1..t.index()).all(|b| t.standardized_from(b).flattened() >= t.flattened()));
    }
    out.sort_by_key(CosetTable::canonical_key);
    Ok(out)
}

/// [`low_index_subgroups_with`] using default options (all subgroups).
pub fn low_index_subgroups(
    pres: &GroupPresentation,
    max_index: usize,
) -> Result<Vec<CosetTable>, FpError> {
    low_index_subgroups_with(pres, LowIndexOptions::new(max_index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{builtin, parse_presentation};

    fn counts(tables: &[CosetTable], n: usize) -> Vec<usize> {
        (1..=n)
            .map(|i| tables.iter().filter(|t| t.index() == i).count())
            .collect()
    }

    #[test]
    fn cyclic_six_subgroups() {
        let p = parse_presentation("gens a\nrel a a a a a a").unwrap();
        let t = low_index_subgroups(&p, 6).unwrap();
        assert_eq!(counts(&t, 6), [1, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn free_two_small_indices() {
        let f2 = builtin("free", &[2]).unwrap();
        assert_eq!(low_index_subgroups(&f2, 2).unwrap().len(), 4);
        assert_eq!(low_index_subgroups(&f2, 3).unwrap().len(), 17);
    }

    #[test]
    fn every_table_satisfies_relators() {
        let p = builtin("surface", &[1]).unwrap();
        for t in low_index_subgroups(&p, 4).unwrap() {
            t.verify(&p).unwrap();
            assert_eq!(t, t.standardized());
        }
    }

    #[test]
    fn canonical_order() {
        let f2 = builtin("free", &[2]).unwrap();
        let t = low_index_subgroups(&f2, 3).unwrap();
        assert!(t
            .windows(2)
            .all(|w| w[0].canonical_key() < w[1].canonical_key()));
        assert_eq!(t[0].index(), 1);
    }

    #[test]
    fn conjugacy_representatives() {
        // Z/2 * Z/2 ... use the free group of rank 2: index-3 subgroups form
        // 7 conjugacy classes (Hall/Sims count for F2).
        let f2 = builtin("free", &[2]).unwrap();
        let mut opts = LowIndexOptions::new(3);
        opts.conjugacy_representatives = true;
        let t = low_index_subgroups_with(&f2, opts).unwrap();
        assert_eq!(counts(&t, 3), [1, 3, 7]);
    }

    #[test]
    fn zero_bound_rejected() {
        let f2 = builtin("free", &[2]).unwrap();
        assert!(matches!(
            low_index_subgroups(&f2, 0),
            Err(FpError::InvalidIndexBound)
        ));
    }

    #[test]
    fn node_budget() {
        let f2 = builtin("free", &[2]).unwrap();
        let mut opts = LowIndexOptions::new(4);
        opts.node_budget = 10;
        assert!(matches!(
            low_index_subgroups_with(&f2, opts),
            Err(FpError::BudgetExceeded { .. })
        ));
    }
}
