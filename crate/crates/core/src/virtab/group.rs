use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{FiniteGroup, VirtAbError};
use crate::abelian::{solve_integer, IntMatrix};

pub type Mat = Vec<Vec<i64>>;

/// Element `(q, v)` of an extension `Zⁿ → G → Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VAElement {
    pub q: usize,
    pub v: Vec<i64>,
}

impl VAElement {
    pub fn new(q: usize, v: Vec<i64>) -> Self {
        VAElement { q, v }
    }
}

/// Extension of a finite group `Q` by the lattice `Zⁿ`, given by an action
/// `q ↦ M_q ∈ GL_n(Z)` and a normalized 2-cocycle `c: Q × Q → Zⁿ`.
///
/// Multiplication: `(q₁,v₁)(q₂,v₂) = (q₁q₂, v₁ + M_{q₁}v₂ + c(q₁,q₂))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtAbGroup {
    q: FiniteGroup,
    n: usize,
    action: Vec<Mat>,
    cocycle: Vec<Vec<Vec<i64>>>,
}

/// Validates and builds a [`VirtAbGroup`].
///
/// `action[q]` is `M_q`; an empty `action` means the trivial action.
/// Cocycle entries absent from `cocycle` are zero. A cocycle that is not
/// normalized is shifted by the coboundary of the constant `−c(e,e)`.
pub fn make_virtab(
    q: FiniteGroup,
    n: usize,
    action: Vec<Mat>,
    cocycle: &BTreeMap<(usize, usize), Vec<i64>>,
) -> Result<VirtAbGroup, VirtAbError> {
    let order = q.order();
    let action = if action.is_empty() {
        vec![identity(n); order]
    } else {
        action
    };
    if action.len() != order {
        return Err(VirtAbError::Dimension("one action matrix per element of Q"));
    }
    for m in &action {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(VirtAbError::Dimension("action matrices must be n×n"));
        }
    }
    for (qi, m) in action.iter().enumerate() {
        if !to_big(m).is_unimodular() {
            return Err(VirtAbError::NotUnimodular { q: qi });
        }
    }
    for a in 0..order {
        for b in 0..order {
            if mat_mul(&action[a], &action[b]) != action[q.mul(a, b)] {
                return Err(VirtAbError::NotHomomorphism { q1: a, q2: b });
            }
        }
    }
    let mut c = vec![vec![vec![0i64; n]; order]; order];
    for (&(a, b), v) in cocycle {
        if a >= order || b >= order {
            return Err(VirtAbError::Dimension("cocycle index outside Q"));
        }
        if v.len() != n {
            return Err(VirtAbError::Dimension("cocycle vectors must have length n"));
        }
        c[a][b] = v.clone();
    }
    for a in 0..order {
        for b in 0..order {
            for d in 0..order {
                // M_a c(b,d) − c(ab,d) + c(a,bd) − c(a,b) = 0
                let lhs = add(
                    &sub(
                        &add(&mat_vec(&action[a], &c[b][d]), &c[a][q.mul(b, d)]),
                        &c[q.mul(a, b)][d],
                    ),
                    &neg(&c[a][b]),
                );
                if lhs.iter().any(|&x| x != 0) {
                    return Err(VirtAbError::CocycleIdentity {
                        q1: a,
                        q2: b,
                        q3: d,
                    });
                }
            }
        }
    }
    let e = q.identity();
    let cee = c[e][e].clone();
    if cee.iter().any(|&x| x != 0) {
        for a in 0..order {
            let shift = mat_vec(&action[a], &cee);
            for b in 0..order {
                c[a][b] = sub(&c[a][b], &shift);
            }
        }
    }
    Ok(VirtAbGroup {
        q,
        n,
        action,
        cocycle: c,
    })
}

impl VirtAbGroup {
    /// `Zⁿ` with trivial `Q`.
    pub fn lattice(n: usize) -> Self {
        make_virtab(FiniteGroup::trivial(), n, Vec::new(), &BTreeMap::new()).expect("valid")
    }

    /// Split extension `Q ⋉ Zⁿ` with zero cocycle.
    pub fn split(q: FiniteGroup, n: usize, action: Vec<Mat>) -> Result<Self, VirtAbError> {
        make_virtab(q, n, action, &BTreeMap::new())
    }

    /// `Σ_n ⋉ Zⁿ` with `σ` permuting coordinates: `M_σ eᵢ = e_{σ(i)}`.
    pub fn sigma_lattice(n: usize) -> Self {
        Self::permutation_lattice(FiniteGroup::symmetric(n)).expect("valid")
    }

    /// `P ⋉ Z^d` for a permutation group `P ≤ Σ_d`.
    pub fn permutation_lattice(p: FiniteGroup) -> Result<Self, VirtAbError> {
        let perms = p
            .permutations()
            .ok_or(VirtAbError::Dimension(
                "group has no permutation representation",
            ))?
            .to_vec();
        let d = perms.first().map_or(0, Vec::len);
        let action = perms.iter().map(|s| permutation_matrix(s)).collect();
        make_virtab(p, d, action, &BTreeMap::new())
    }

    /// `G₁ × G₂` over `Q₁ × Q₂` (index `a·|Q₂| + b`), lattice `Z^{n₁+n₂}`.
    pub fn direct_product(g1: &VirtAbGroup, g2: &VirtAbGroup) -> VirtAbGroup {
        let q = FiniteGroup::direct_product(&g1.q, &g2.q);
        let (o1, o2) = (g1.q.order(), g2.q.order());
        let n = g1.n + g2.n;
        let mut action = Vec::with_capacity(o1 * o2);
        for a in 0..o1 {
            for b in 0..o2 {
                let mut m = vec![vec![0; n]; n];
                for i in 0..g1.n {
                    m[i][..g1.n].copy_from_slice(&g1.action[a][i]);
                }
                for i in 0..g2.n {
                    m[g1.n + i][g1.n..].copy_from_slice(&g2.action[b][i]);
                }
                action.push(m);
            }
        }
        let mut cocycle = vec![vec![Vec::new(); o1 * o2]; o1 * o2];
        for a1 in 0..o1 {
            for b1 in 0..o2 {
                for a2 in 0..o1 {
                    for b2 in 0..o2 {
                        let mut v = g1.cocycle[a1][a2].clone();
                        v.extend_from_slice(&g2.cocycle[b1][b2]);
                        cocycle[a1 * o2 + b1][a2 * o2 + b2] = v;
                    }
                }
            }
        }
        VirtAbGroup {
            q,
            n,
            action,
            cocycle,
        }
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn action(&self, q: usize) -> &Mat {
        &self.action[q]
    }

    pub fn cocycle(&self, q1: usize, q2: usize) -> &[i64] {
        &self.cocycle[q1][q2]
    }

    /// Nonzero cocycle values.
    pub fn cocycle_entries(&self) -> BTreeMap<(usize, usize), Vec<i64>> {
        let mut out = BTreeMap::new();
        for (a, row) in self.cocycle.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if v.iter().any(|&x| x != 0) {
                    out.insert((a, b), v.clone());
                }
            }
        }
        out
    }

    pub fn identity(&self) -> VAElement {
        VAElement {
            q: self.q.identity(),
            v: vec![0; self.n],
        }
    }

    pub fn contains(&self, x: &VAElement) -> bool {
        x.q < self.q.order() && x.v.len() == self.n
    }

    pub fn mul(&self, x: &VAElement, y: &VAElement) -> VAElement {
        let v = add(
            &add(&x.v, &mat_vec(&self.action[x.q], &y.v)),
            &self.cocycle[x.q][y.q],
        );
        VAElement {
            q: self.q.mul(x.q, y.q),
            v,
        }
    }

    /// `(q, v)⁻¹ = (q⁻¹, −M_{q⁻¹}(v + c(q, q⁻¹)))`
    pub fn inv(&self, x: &VAElement) -> VAElement {
        let qi = self.q.inv(x.q);
        let v = neg(&mat_vec(
            &self.action[qi],
            &add(&x.v, &self.cocycle[x.q][qi]),
        ));
        VAElement { q: qi, v }
    }

    pub fn pow(&self, x: &VAElement, k: i64) -> VAElement {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut r = self.identity();
        for _ in 0..k.unsigned_abs() {
            r = self.mul(&r, &base);
        }
        r
    }

    /// Lattice element `(e, v)`.
    pub fn translation(&self, v: Vec<i64>) -> VAElement {
        VAElement {
            q: self.q.identity(),
            v,
        }
    }

    /// Section element `(q, 0)`.
    pub fn section(&self, q: usize) -> VAElement {
        VAElement {
            q,
            v: vec![0; self.n],
        }
    }

    /// `(q, 0)` for all `q` followed by the unit translations.
    pub fn generating_set(&self) -> Vec<VAElement> {
        let mut out: Vec<VAElement> = (0..self.q.order()).map(|q| self.section(q)).collect();
        for i in 0..self.n {
            let mut v = vec![0; self.n];
            v[i] = 1;
            out.push(self.translation(v));
        }
        out
    }

    /// For `q^k = e`: `(q, v)^k = (e, N·v + d)` with `N = Σ_{i<k} M_q^i` and
    /// `d = Σ_{i<k} c(q^i, q)`.
    pub fn power_translation(&self, q: usize, k: u64) -> (Mat, Vec<i64>) {
        let mut n_mat = vec![vec![0; self.n]; self.n];
        let mut d = vec![0; self.n];
        let mut qi = self.q.identity();
        for _ in 0..k {
            n_mat = mat_add(&n_mat, &self.action[qi]);
            d = add(&d, &self.cocycle[qi][q]);
            qi = self.q.mul(qi, q);
        }
        (n_mat, d)
    }
}

/// `None` for elements of infinite order.
pub fn element_order(g: &VirtAbGroup, x: &VAElement) -> Option<u64> {
    let m = g.q.element_order(x.q);
    let y = g.pow(x, m as i64);
    y.v.iter().all(|&a| a == 0).then_some(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionVerdict {
    pub torsion_free: bool,
    /// A nontrivial element of finite order, when one exists.
    pub witness: Option<VAElement>,
}

/// For each `q ≠ e` of order `m`, `(q, v)` has finite order iff
/// `N_q·v = −d_q` (see [`VirtAbGroup::power_translation`]); solvability is
/// decided over `Z` by Smith normal form. Elements are tried in index order.
pub fn is_torsion_free(g: &VirtAbGroup) -> TorsionVerdict {
    for q in 0..g.q.order() {
        if q == g.q.identity() {
            continue;
        }
        let m = g.q.element_order(q);
        if let Some(v) = torsion_solution(g, q, m) {
            return TorsionVerdict {
                torsion_free: false,
                witness: Some(VAElement { q, v }),
            };
        }
    }
    TorsionVerdict {
        torsion_free: true,
        witness: None,
    }
}

/// Some `v` with `(q, v)^k = e`, if any; requires `q^k = e`.
pub fn torsion_solution(g: &VirtAbGroup, q: usize, k: u64) -> Option<Vec<i64>> {
    debug_assert_eq!(g.q.pow(q, k), g.q.identity());
    let (n_mat, d) = g.power_translation(q, k);
    let rhs: Vec<BigInt> = d.iter().map(|&x| BigInt::from(-x)).collect();
    solve_integer(&to_big(&n_mat), &rhs).map(|v| from_big_vec(&v).expect("solution fits in i64"))
}

impl fmt::Display for VAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.q, self.v)
    }
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// `M eᵢ = e_{σ(i)}`
pub fn permutation_matrix(sigma: &[usize]) -> Mat {
    let n = sigma.len();
    let mut m = vec![vec![0; n]; n];
    for (i, &s) in sigma.iter().enumerate() {
        m[s][i] = 1;
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| add(r, s)).collect()
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn to_big(m: &Mat) -> IntMatrix {
    let cols = m.first().map_or(0, Vec::len);
    IntMatrix::from_rows_with_cols(m, cols)
}

pub(crate) fn from_big_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}
