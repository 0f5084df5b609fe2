//! Coset tables and Todd–Coxeter enumeration (HLT strategy with lookahead).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::word::letter_col;
use super::{FpError, GroupPresentation, Word};

/// Default coset budget for enumeration.
pub const DEFAULT_BUDGET: usize = 1_000_000;

const NONE: usize = usize::MAX;

/// A complete, transitive coset table. Cosets are numbered `0..index`
/// internally (coset `0` is the subgroup itself) and printed one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetTable {
    /// `action[g][c]` is the coset `c · g`.
    action: Vec<Vec<u32>>,
    index: usize,
    subgroup_gens: Option<Vec<Word>>,
}

impl CosetTable {
    /// Builds a table from generator actions, checking that every action is a
    /// bijection and that the action is transitive. Relators are checked
    /// separately by [`CosetTable::verify`].
    pub fn from_actions(
        action: Vec<Vec<u32>>,
        subgroup_gens: Option<Vec<Word>>,
    ) -> Result<Self, FpError> {
        let index = action.first().map_or(1, Vec::len);
        if index == 0 {
            return Err(FpError::InvalidTable("empty table".into()));
        }
        for (g, row) in action.iter().enumerate() {
            if row.len() != index {
                return Err(FpError::InvalidTable(alloc::format!(
                    "generator {g} has {} entries, expected {index}",
                    row.len()
                )));
            }
            let mut hit = vec![false; index];
            for &c in row {
                let c = c as usize;
                if c >= index || hit[c] {
                    return Err(FpError::InvalidTable(alloc::format!(
                        "generator {g} does not act bijectively"
                    )));
                }
                hit[c] = true;
            }
        }
        let t = CosetTable {
            action,
            index,
            subgroup_gens,
        };
        if !t.is_transitive() {
            return Err(FpError::InvalidTable("action is not transitive".into()));
        }
        Ok(t)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generator_count(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self) -> &[Vec<u32>] {
        &self.action
    }

    /// Subgroup generators the table was enumerated from, if any.
    pub fn subgroup_gens(&self) -> Option<&[Word]> {
        self.subgroup_gens.as_deref()
    }

    /// Image of coset `c` under one signed letter.
    pub fn act_letter(&self, c: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.action[g][c] as usize
        } else {
            self.action[g]
                .iter()
                .position(|&d| d as usize == c)
                .expect("bijective action")
        }
    }

    pub fn act_word(&self, c: usize, w: &Word) -> usize {
        w.letters().iter().fold(c, |c, &l| self.act_letter(c, l))
    }

    /// Inverse permutation of every generator, `inverse[g][c] = c · g⁻¹`.
    pub fn inverse_action(&self) -> Vec<Vec<u32>> {
        self.action
            .iter()
            .map(|row| {
                let mut inv = vec![0u32; self.index];
                for (c, &d) in row.iter().enumerate() {
                    inv[d as usize] = c as u32;
                }
                inv
            })
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.index];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let inv = self.inverse_action();
        while let Some(c) = queue.pop_front() {
            for g in 0..self.action.len() {
                for d in [self.action[g][c] as usize, inv[g][c] as usize] {
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks the table against a presentation: matching generator count and
    /// every relator acting trivially on every coset. When the table was
    /// enumerated from subgroup generators, those must fix coset `0`.
    pub fn verify(&self, pres: &GroupPresentation) -> Result<(), FpError> {
        if self.action.len() != pres.generator_count() {
            return Err(FpError::TableMismatch {
                table_gens: self.action.len(),
                presentation_gens: pres.generator_count(),
            });
        }
        let inv = self.inverse_action();
        let step = |c: usize, l: i32| -> usize {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                self.action[g][c] as usize
            } else {
                inv[g][c] as usize
            }
        };
        for (ri, r) in pres.relators().iter().enumerate() {
            for c in 0..self.index {
                if r.letters().iter().fold(c, |c, &l| step(c, l)) != c {
                    return Err(FpError::RelatorViolated {
                        relator: ri,
                        coset: c + 1,
                    });
                }
            }
        }
        if let Some(gens) = &self.subgroup_gens {
            for (i, w) in gens.iter().enumerate() {
                if w.letters().iter().fold(0, |c, &l| step(c, l)) != 0 {
                    return Err(FpError::InvalidTable(alloc::format!(
                        "subgroup generator {i} does not fix coset 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Renumbers cosets in breadth-first order from `base`, scanning columns
    /// `g₀, g₀⁻¹, g₁, g₁⁻¹, …`. The result is the unique standard table of the
    /// stabilizer of `base`.
    pub fn standardized_from(&self, base: usize) -> CosetTable {
        let inv = self.inverse_action();
        let mut order = Vec::with_capacity(self.index);
        let mut new_of = vec![NONE; self.index];
        new_of[base] = 0;
        order.push(base);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for g in 0..self.action.len() {
                for d in [self.action[g][c] as usize, inv[g][c] as usize] {
                    if new_of[d] == NONE {
                        new_of[d] = order.len();
                        order.push(d);
                    }
                }
            }
            i += 1;
        }
        let action = self
            .action
            .iter()
            .map(|row| {
                order
                    .iter()
                    .map(|&old| new_of[row[old] as usize] as u32)
                    .collect()
            })
            .collect();
        CosetTable {
            action,
            index: self.index,
            subgroup_gens: if base == 0 {
                self.subgroup_gens.clone()
            } else {
                None
            },
        }
    }

    pub fn standardized(&self) -> CosetTable {
        self.standardized_from(0)
    }

    /// Row-major flattening of the generator actions, used for canonical order.
    pub fn flattened(&self) -> Vec<u32> {
        self.action.iter().flat_map(|r| r.iter().copied()).collect()
    }

    /// Canonical comparison key: index first, then flattened actions.
    pub fn canonical_key(&self) -> (usize, Vec<u32>) {
        (self.index, self.flattened())
    }
}

impl fmt::Display for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, row) in self.action.iter().enumerate() {
            write!(f, "g{}:", g + 1)?;
            for &c in row {
                write!(f, " {}", c + 1)?;
            }
            if g + 1 < self.action.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Working state of an HLT enumeration.
struct Enumerator<'a> {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    budget: usize,
    relators: Vec<Vec<usize>>,
    pres: &'a GroupPresentation,
}

enum Step {
    Done,
    Full,
}

impl<'a> Enumerator<'a> {
    fn new(pres: &'a GroupPresentation, budget: usize) -> Self {
        let cols = 2 * pres.generator_count();
        let relators = pres
            .relators()
            .iter()
            .map(|r| r.letters().iter().map(|&l| letter_col(l)).collect())
            .collect();
        Enumerator {
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            live: 1,
            budget,
            relators,
            pres,
        }
    }

    #[inline]
    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Allocates a new coset as `c · x`. Fails when the budget is reached.
    fn define(&mut self, c: usize, x: usize) -> Result<(), ()> {
        if self.live >= self.budget {
            return Err(());
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                if self.table[f][x ^ 1] == e {
                    self.table[f][x ^ 1] = NONE;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    /// Scans `w` at coset `c`, defining new cosets if `fill` is set. Returns
    /// `Err` only when a definition is needed and the budget is exhausted.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<(), ()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len() as isize - 1;
        loop {
            while i as isize <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][w[j as usize] ^ 1] != NONE {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if i as isize == j {
                let x = w[i];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scans every relator at every live coset without defining anything.
    fn lookahead(&mut self) {
        let rels = core::mem::take(&mut self.relators);
        let mut c = 0;
        while c < self.table.len() {
            for r in &rels {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
        self.relators = rels;
    }

    /// Drops dead rows, preserving the relative order of live cosets.
    /// Returns the new position of `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let mut new_of = vec![NONE; self.table.len()];
        let mut n = 0;
        for c in 0..self.table.len() {
            if self.is_live(c) {
                new_of[c] = n;
                n += 1;
            }
        }
        let new_cursor = (0..cursor.min(self.table.len()))
            .filter(|&c| self.is_live(c))
            .count();
        let mut rows = Vec::with_capacity(n);
        for c in 0..self.table.len() {
            if self.is_live(c) {
                let row = self.table[c]
                    .iter()
                    .map(|&d| if d == NONE { NONE } else { new_of[d] })
                    .collect();
                rows.push(row);
            }
        }
        self.table = rows;
        self.parent = (0..n).collect();
        new_cursor
    }

    fn run(&mut self, subgroup: &[Word]) -> Step {
        let subgroup: Vec<Vec<usize>> = subgroup
            .iter()
            .map(|w| w.letters().iter().map(|&l| letter_col(l)).collect())
            .collect();
        for w in &subgroup {
            while self.scan(0, w, true).is_err() {
                if !self.relieve() {
                    return Step::Full;
                }
            }
        }
        let mut c = 0;
        'outer: while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let rel = core::mem::take(&mut self.relators[r]);
                let res = self.scan(c, &rel, true);
                self.relators[r] = rel;
                if res.is_err() {
                    match self.relieve_at(c) {
                        Some(p) => {
                            c = p;
                            continue 'outer;
                        }
                        None => return Step::Full,
                    }
                }
            }
            for x in 0..self.cols {
                if !self.is_live(c) {
                    break;
                }
                if self.table[c][x] == NONE && self.define(c, x).is_err() {
                    match self.relieve_at(c) {
                        Some(p) => {
                            c = p;
                            continue 'outer;
                        }
                        None => return Step::Full,
                    }
                }
            }
            c += 1;
        }
        Step::Done
    }

    fn relieve(&mut self) -> bool {
        self.relieve_at(0).is_some()
    }

    /// Lookahead followed by compaction; `None` if no coset was freed.
    fn relieve_at(&mut self, cursor: usize) -> Option<usize> {
        let before = self.live;
        self.lookahead();
        if self.live >= before {
            return None;
        }
        // A live cursor stays live across compaction; a dead one resumes at
        // its surviving predecessor position.
        Some(self.compact(cursor))
    }

    fn into_table(mut self, subgroup: &[Word]) -> CosetTable {
        self.compact(0);
        let index = self.table.len();
        let ngens = self.pres.generator_count();
        let action = (0..ngens)
            .map(|g| (0..index).map(|c| self.table[c][2 * g] as u32).collect())
            .collect();
        CosetTable {
            action,
            index,
            subgroup_gens: Some(subgroup.to_vec()),
        }
        .standardized()
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
///
/// Completes with the standard coset table, or reports
/// [`FpError::BudgetExceeded`] when more than `budget` live cosets would be
/// needed (the index may then be infinite or simply large).
pub fn coset_enumerate(
    pres: &GroupPresentation,
    subgroup_gens: &[Word],
    budget: usize,
) -> Result<CosetTable, FpError> {
    if budget == 0 {
        return Err(FpError::BudgetExceeded { budget });
    }
    for w in subgroup_gens {
        if let Some(m) = w.max_generator() {
            if m >= pres.generator_count() {
                return Err(FpError::LetterOutOfRange {
                    letter: m + 1,
                    generators: pres.generator_count(),
                });
            }
        }
    }
    if pres.generator_count() == 0 {
        return Ok(CosetTable {
            action: Vec::new(),
            index: 1,
            subgroup_gens: Some(subgroup_gens.to_vec()),
        });
    }
    let mut e = Enumerator::new(pres, budget);
    match e.run(subgroup_gens) {
        Step::Full => Err(FpError::BudgetExceeded { budget }),
        Step::Done => {
            let t = e.into_table(subgroup_gens);
            debug_assert!(t.verify(pres).is_ok());
            Ok(t)
        }
    }
}
