use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{CosetTable, FpError, GroupPresentation, Word};

const NONE: usize = usize::MAX;

/// Subgroup presentation together with the Schreier generators expressed as
/// words in the parent presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierPresentation {
    pub presentation: GroupPresentation,
    /// `generator_words[i]` is `rep(c) · g · rep(c·g)⁻¹` for the i-th
    /// surviving generator.
    pub generator_words: Vec<Word>,
    /// Schreier generator count before trivial ones were eliminated.
    pub schreier_generators: usize,
}

/// Reidemeister–Schreier rewriting with a breadth-first Schreier transversal.
///
/// Simplification is limited to free cancellation and removal of generators
/// made trivial by length-one relators.
pub fn reidemeister_schreier(
    pres: &GroupPresentation,
    table: &CosetTable,
) -> Result<GroupPresentation, FpError> {
    reidemeister_schreier_detailed(pres, table).map(|s| s.presentation)
}

pub fn reidemeister_schreier_detailed(
    pres: &GroupPresentation,
    table: &CosetTable,
) -> Result<SchreierPresentation, FpError> {
    table.verify(pres)?;
    let n = table.index();
    let ngens = pres.generator_count();
    let inv = table.inverse_action();

    // Breadth-first spanning tree: reps[d] is the transversal word of coset d.
    let mut reps: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![vec![false; ngens]; n];
    reps[0] = Some(Word::empty());
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        i += 1;
        for g in 0..ngens {
            let fwd = table.action()[g][c] as usize;
            if reps[fwd].is_none() {
                reps[fwd] = Some(reps[c].as_ref().unwrap().concat(&Word::new([g as i32 + 1])));
                tree[c][g] = true;
                order.push(fwd);
            }
            let back = inv[g][c] as usize;
            if reps[back].is_none() {
                reps[back] = Some(
                    reps[c]
                        .as_ref()
                        .unwrap()
                        .concat(&Word::new([-(g as i32 + 1)])),
                );
                tree[back][g] = true;
                order.push(back);
            }
        }
    }
    let reps: Vec<Word> = reps
        .into_iter()
        .map(|r| r.expect("transitive table"))
        .collect();

    // Number the non-tree Schreier generators s_{c,g}.
    let mut sym = vec![vec![NONE; ngens]; n];
    let mut words = Vec::new();
    for c in 0..n {
        for g in 0..ngens {
            if !tree[c][g] {
                sym[c][g] = words.len();
                let d = table.action()[g][c] as usize;
                words.push(
                    reps[c]
                        .concat(&Word::new([g as i32 + 1]))
                        .concat(&reps[d].inverse()),
                );
            }
        }
    }
    let schreier_generators = words.len();

    let mut relators: BTreeSet<Word> = BTreeSet::new();
    for r in pres.relators() {
        for start in 0..n {
            let mut cur = start;
            let mut letters = Vec::new();
            for &l in r.letters() {
                let g = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    if sym[cur][g] != NONE {
                        letters.push(sym[cur][g] as i32 + 1);
                    }
                    cur = table.action()[g][cur] as usize;
                } else {
                    let prev = inv[g][cur] as usize;
                    if sym[prev][g] != NONE {
                        letters.push(-(sym[prev][g] as i32 + 1));
                    }
                    cur = prev;
                }
            }
            debug_assert_eq!(cur, start);
            let w = Word::new(letters);
            if !w.is_empty() {
                relators.insert(w);
            }
        }
    }

    // Eliminate generators killed by length-one relators.
    let mut alive: Vec<bool> = vec![true; words.len()];
    loop {
        let dead: BTreeSet<usize> = relators
            .iter()
            .filter(|r| r.len() == 1)
            .map(|r| r.letters()[0].unsigned_abs() as usize - 1)
            .collect();
        if dead.is_empty() {
            break;
        }
        for &d in &dead {
            alive[d] = false;
        }
        relators = relators
            .into_iter()
            .map(|r| {
                Word::new(
                    r.letters()
                        .iter()
                        .copied()
                        .filter(|l| !dead.contains(&(l.unsigned_abs() as usize - 1))),
                )
            })
            .filter(|w| !w.is_empty())
            .collect();
    }
    let mut new_index = vec![NONE; words.len()];
    let mut kept_words = Vec::new();
    for (k, w) in words.into_iter().enumerate() {
        if alive[k] {
            new_index[k] = kept_words.len();
            kept_words.push(w);
        }
    }
    let relators: BTreeSet<Word> = relators
        .into_iter()
        .map(|r| r.relabel(|g| new_index[g]))
        .collect();
    let gens = (1..=kept_words.len()).map(|k| format!("s{k}")).collect();
    let name = Some(format!("{}[index {}]", pres.name().unwrap_or("group"), n));
    let presentation = GroupPresentation::new(name, gens, relators.into_iter().collect())?;
    Ok(SchreierPresentation {
        presentation,
        generator_words: kept_words,
        schreier_generators,
    })
}
