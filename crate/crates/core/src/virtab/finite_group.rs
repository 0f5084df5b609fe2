use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::VirtAbError;

/// Finite group given by its multiplication table; `table[a][b] = a·b`.
///
/// Groups built from permutations keep the permutations, composed as maps:
/// `(σ·τ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
    permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, VirtAbError> {
        let n = table.len();
        if n == 0 {
            return Err(VirtAbError::BadGroupTable("empty table".to_string()));
        }
        if labels.len() != n {
            return Err(VirtAbError::BadGroupTable(format!(
                "{} labels for {} elements",
                labels.len(),
                n
            )));
        }
        let mut seen = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(VirtAbError::BadGroupTable(format!(
                    "label `{l}` used by elements {j} and {i}"
                )));
            }
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(VirtAbError::BadGroupTable(
                    "table is not closed".to_string(),
                ));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| VirtAbError::BadGroupTable("no identity".to_string()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| {
                    VirtAbError::BadGroupTable(format!("element {} has no inverse", labels[a]))
                })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(VirtAbError::BadGroupTable(format!(
                            "associativity fails on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
            labels,
            permutations: None,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements `k` labelled `e, g, g^2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            })
            .collect();
        FiniteGroup {
            table,
            identity: 0,
            inverses: (0..n).map(|a| (n - a) % n).collect(),
            labels,
            permutations: None,
        }
    }

    /// Same group with new element labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, VirtAbError> {
        let checked = FiniteGroup::new(self.table.clone(), labels)?;
        self.labels = checked.labels;
        Ok(self)
    }

    /// Subgroup of `Σ_degree` generated by `gens` (zero-based images). The
    /// identity comes first, then elements in breadth-first order over the
    /// generators.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self, VirtAbError> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter()
                    .any(|&x| x >= degree || core::mem::replace(&mut seen[x], true))
            {
                return Err(VirtAbError::BadGroupTable(format!(
                    "not a permutation of {degree} points: {g:?}"
                )));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index = BTreeMap::new();
        index.insert(id, 0usize);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        let mut grp = FiniteGroup::new(table, labels)?;
        grp.permutations = Some(elems);
        Ok(grp)
    }

    /// Full symmetric group `Σ_n`, generated by a transposition and an n-cycle.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(n, &gens).expect("valid generators")
    }

    /// `A × B` with `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let idx = |x: usize, y: usize| x * nb + y;
        let mut table = vec![vec![0; na * nb]; na * nb];
        for x1 in 0..na {
            for y1 in 0..nb {
                for x2 in 0..na {
                    for y2 in 0..nb {
                        table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(na * nb);
        let mut inverses = Vec::with_capacity(na * nb);
        for x in 0..na {
            for y in 0..nb {
                labels.push(format!("({},{})", a.labels[x], b.labels[y]));
                inverses.push(idx(a.inv(x), b.inv(y)));
            }
        }
        FiniteGroup {
            table,
            identity: idx(a.identity, b.identity),
            inverses,
            labels,
            permutations: None,
        }
    }

    /// Subgroup on `elements` (ambient indices, any order) with inherited labels.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Self, VirtAbError> {
        let pos: BTreeMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for &a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in elements {
                let ab = self.mul(a, b);
                row.push(*pos.get(&ab).ok_or_else(|| {
                    VirtAbError::BadGroupTable("subset is not closed".to_string())
                })?);
            }
            table.push(row);
        }
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        let mut g = FiniteGroup::new(table, labels)?;
        if let Some(perms) = &self.permutations {
            g.permutations = Some(elements.iter().map(|&e| perms[e].clone()).collect());
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = self.identity;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Permutation images when the group was built from permutations.
    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`, identity first, then
    /// in breadth-first order.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let x = self.mul(out[i], g);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            i += 1;
        }
        out
    }
}

/// `(σ∘τ)(i) = σ(τ(i))`
pub(crate) fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&i| s[i]).collect()
}

/// One-based cycle notation without fixed points, `e` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut out = String::new();
    let mut seen = vec![false; p.len()];
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}
