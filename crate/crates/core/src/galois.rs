//! A finite stage of the Laurent tower `T_n ⊆ E_n` over `F_q`.
//!
//! At denominator `s` (with `s | q − 1`) the stage ring is
//! `F_q[u₁^{±1}, …, u_n^{±1}]` with `uᵢ = tᵢ^{1/s}`; an exponent vector `e`
//! stands for `t^{e/s}`. The stage group `Σ_n ⋉ (Z/s)^n` acts by
//! `(σ, τ)·t^{e/s} = θ^{⟨τ, e⟩} t^{σ(e)/s}`, where `σ(e)` moves the exponent of
//! `tᵢ` to `t_{σ(i)}` and `θ = g^{(q−1)/s}` for the least primitive root
//! `g` of `F_q`. The fixed ring of the twists is the integral-exponent ring
//! `T_n`, and `{u^j : 0 ≤ jᵢ < s}` is a basis of the stage over it: `s^n`
//! elements, so rank `s` when `n = 1`.
//!
//! Primes are swept only over `F_q`-rational points with unit coordinates.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{FieldError, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("{s} does not divide q − 1 = {q_minus_1}")]
    NoRootsOfUnity { s: u64, q_minus_1: u64 },
    #[error("denominator must be at least 1")]
    ZeroDenominator,
    #[error("group element does not belong to this stage")]
    StageMismatch,
    #[error("point coordinate {0} is zero or outside the field")]
    BadPoint(usize),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentStage {
    field: FiniteField,
    n: usize,
    s: u64,
    theta: u32,
}

/// `θ = g^{(q−1)/s}` with `g` the least primitive root.
pub fn make_stage(q: u64, n: usize, s: u64) -> Result<LaurentStage, GaloisError> {
    let field = FiniteField::with_order(q)?;
    if s == 0 {
        return Err(GaloisError::ZeroDenominator);
    }
    if !(q - 1).is_multiple_of(s) {
        return Err(GaloisError::NoRootsOfUnity {
            s,
            q_minus_1: q - 1,
        });
    }
    let theta = field.pow(field.primitive_element(), (q - 1) / s);
    Ok(LaurentStage { field, n, s, theta })
}

/// Element of `Σ_n ⋉ (Z/s)^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StageGroupElement {
    /// Variable `i` is sent to variable `perm[i]`.
    pub perm: Vec<usize>,
    /// Entries in `0..s`.
    pub twist: Vec<u64>,
}

impl StageGroupElement {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            twist: vec![0; n],
        }
    }

    /// The twist `τ = eᵢ`, i.e. `α` acting on the `i`-th variable.
    pub fn alpha(n: usize, i: usize) -> Self {
        let mut g = Self::identity(n);
        g.twist[i] = 1;
        g
    }

    pub fn permutation(perm: Vec<usize>) -> Self {
        let n = perm.len();
        Self {
            perm,
            twist: vec![0; n],
        }
    }

    /// Reduction of `(σ, v) ∈ Σ_n ⋉ Zⁿ`, where `(σ, v)(τ, w) = (στ, v + σ·w)`
    /// and `(σ·w)_{σ(i)} = wᵢ`. The map `(σ, v) ↦ (σ, i ↦ v_{σ(i)} mod s)` is
    /// a homomorphism for [`LaurentStage::compose`].
    pub fn from_lattice(perm: &[usize], v: &[i64], s: u64) -> Self {
        Self {
            perm: perm.to_vec(),
            twist: perm
                .iter()
                .map(|&j| v[j].rem_euclid(s as i64) as u64)
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j) && self.twist.iter().all(|&t| t == 0)
    }
}

impl fmt::Display for StageGroupElement {
    /// `perm | twist`, the `.sub` line format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.perm.iter().map(|x| format!("{x}")).collect();
        let t: Vec<String> = self.twist.iter().map(|x| format!("{x}")).collect();
        write!(f, "{} | {}", p.join(" "), t.join(" "))
    }
}

impl core::str::FromStr for StageGroupElement {
    type Err = GaloisError;

    fn from_str(line: &str) -> Result<Self, GaloisError> {
        let (p, t) = line
            .split_once('|')
            .ok_or_else(|| GaloisError::Parse(format!("expected `perm | twist`: {line}")))?;
        let nums = |s: &str| -> Result<Vec<u64>, GaloisError> {
            s.split_whitespace()
                .map(|x| {
                    x.parse()
                        .map_err(|_| GaloisError::Parse(format!("bad integer {x}")))
                })
                .collect()
        };
        let perm: Vec<usize> = nums(p)?.into_iter().map(|x| x as usize).collect();
        let twist = nums(t)?;
        let mut seen = vec![false; perm.len()];
        for &j in &perm {
            if j >= perm.len() || core::mem::replace(&mut seen[j], true) {
                return Err(GaloisError::Parse(format!("not a permutation: {p}")));
            }
        }
        if twist.len() != perm.len() {
            return Err(GaloisError::Parse("perm and twist lengths differ".into()));
        }
        Ok(Self { perm, twist })
    }
}

/// A Laurent polynomial in `u₁, …, u_n`; zero coefficients are absent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    pub terms: BTreeMap<Vec<i64>, u32>,
}

impl LaurentPoly {
    pub fn monomial(e: Vec<i64>, c: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Self { terms }
    }
}

impl LaurentStage {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn denominator(&self) -> u64 {
        self.s
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// `αᵢ` reduced into this stage; the identity when `s = 1`.
    pub fn alpha(&self, i: usize) -> StageGroupElement {
        let mut g = StageGroupElement::alpha(self.n, i);
        g.twist[i] %= self.s;
        g
    }

    /// Valid for this stage: a permutation of `n` letters and twists below `s`.
    pub fn contains(&self, g: &StageGroupElement) -> bool {
        let mut seen = vec![false; self.n];
        g.perm.len() == self.n
            && g.twist.len() == self.n
            && g.twist.iter().all(|&t| t < self.s)
            && g.perm
                .iter()
                .all(|&j| j < self.n && !core::mem::replace(&mut seen[j], true))
    }

    /// `g·h`, acting as `g` after `h`.
    pub fn compose(&self, g: &StageGroupElement, h: &StageGroupElement) -> StageGroupElement {
        StageGroupElement {
            perm: h.perm.iter().map(|&i| g.perm[i]).collect(),
            twist: (0..self.n)
                .map(|i| (h.twist[i] + g.twist[h.perm[i]]) % self.s)
                .collect(),
        }
    }

    pub fn inverse(&self, g: &StageGroupElement) -> StageGroupElement {
        let mut perm = vec![0; self.n];
        for (i, &j) in g.perm.iter().enumerate() {
            perm[j] = i;
        }
        // twist'[j] satisfies twist[i] + twist'[perm[i]] ≡ 0.
        let mut twist = vec![0; self.n];
        for (i, &j) in g.perm.iter().enumerate() {
            twist[j] = (self.s - g.twist[i]) % self.s;
        }
        StageGroupElement { perm, twist }
    }

    fn act_monomial(&self, g: &StageGroupElement, e: &[i64]) -> (u32, Vec<i64>) {
        let pairing: i64 = g.twist.iter().zip(e).map(|(&t, &x)| t as i64 * x).sum();
        let c = self
            .field
            .pow(self.theta, pairing.rem_euclid(self.s as i64) as u64);
        let mut moved = vec![0; self.n];
        for (i, &x) in e.iter().enumerate() {
            moved[g.perm[i]] = x;
        }
        (c, moved)
    }

    /// `t^{e/s} ↦ θ^{⟨τ, e⟩} t^{σ(e)/s}`, extended linearly.
    pub fn act(&self, g: &StageGroupElement, f: &LaurentPoly) -> Result<LaurentPoly, GaloisError> {
        if !self.contains(g) || f.terms.keys().any(|e| e.len() != self.n) {
            return Err(GaloisError::StageMismatch);
        }
        let mut out = LaurentPoly::default();
        for (e, &c) in &f.terms {
            let (k, moved) = self.act_monomial(g, e);
            let c = self.field.mul(c, k);
            if c != 0 {
                out.terms.insert(moved, c);
            }
        }
        Ok(out)
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(
        &self,
        gens: &[StageGroupElement],
    ) -> Result<Vec<StageGroupElement>, GaloisError> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(GaloisError::StageMismatch);
        }
        let id = StageGroupElement::identity(self.n);
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.compose(g, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Monomial exponent vectors with entries in `[−bound, bound]`.
    fn exponent_box(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (-bound..=bound).map(move |x| {
                        let mut f = e.clone();
                        f.push(x);
                        f
                    })
                })
                .collect();
        }
        out
    }

    /// The point `b` with `g(𝔪_a) = 𝔪_b`: from `g·(uᵢ − aᵢ) = θ^{τᵢ} u_{σ(i)} − aᵢ`,
    /// `b_{σ(i)} = aᵢ θ^{−τᵢ}`.
    pub fn move_point(&self, g: &StageGroupElement, a: &[u32]) -> Vec<u32> {
        let inv_theta = self.field.inv(self.theta).expect("θ is a unit");
        let mut b = vec![0; self.n];
        for i in 0..self.n {
            b[g.perm[i]] = self.field.mul(a[i], self.field.pow(inv_theta, g.twist[i]));
        }
        b
    }

    /// `f(a)` for a point with unit coordinates.
    pub fn evaluate(&self, f: &LaurentPoly, a: &[u32]) -> u32 {
        let ord = self.q() - 1;
        f.terms.iter().fold(0, |acc, (e, &c)| {
            let m = e.iter().zip(a).fold(c, |m, (&x, &ai)| {
                self.field
                    .mul(m, self.field.pow(ai, x.rem_euclid(ord as i64) as u64))
            });
            self.field.add(acc, m)
        })
    }
}

/// A monomial is fixed by every twist iff all its exponents are divisible
/// by `s`; checked on the box `[−bound, bound]^n` against the generators
/// `α₁, …, α_n` of the twist group.
pub fn fixed_ring_check(stage: &LaurentStage, bound: i64) -> bool {
    let alphas: Vec<StageGroupElement> = (0..stage.n).map(|i| stage.alpha(i)).collect();
    stage.exponent_box(bound).into_iter().all(|e| {
        let f = LaurentPoly::monomial(e.clone(), 1);
        let fixed = alphas
            .iter()
            .all(|g| stage.act(g, &f).expect("same stage") == f);
        fixed == e.iter().all(|&x| x % stage.s as i64 == 0)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub holds: bool,
    /// Exponent vectors `j` of the basis elements `u^j`, `0 ≤ jᵢ < s`.
    pub basis: Vec<Vec<i64>>,
    pub spanning: bool,
    pub free: bool,
    /// `det(θ^{⟨τ, j⟩})` over twists `τ` and basis exponents `j` is nonzero.
    pub character_matrix_invertible: bool,
}

/// `{u^j}` is a free basis of the stage over `T_n`.
///
/// Spanning: every monomial `u^e` in the box is `t^k·u^j` for exactly one
/// basis element, with `e = s·k + j`. Freeness: the products `t^k·u^j` over
/// the box are pairwise distinct monomials, so a `T`-linear relation among
/// the `u^j` has all coefficients zero. The character matrix over the twist
/// group is the strong-separability condition.
pub fn separability_basis_check(stage: &LaurentStage, bound: i64) -> BasisReport {
    let s = stage.s as i64;
    let basis: Vec<Vec<i64>> = stage
        .exponent_box(s)
        .into_iter()
        .filter(|j| j.iter().all(|&x| (0..s).contains(&x)))
        .collect();
    let spanning = stage.exponent_box(bound).into_iter().all(|e| {
        let hits = basis
            .iter()
            .filter(|j| {
                e.iter()
                    .zip(j.iter())
                    .all(|(&x, &jx)| (x - jx).rem_euclid(s) == 0)
            })
            .count();
        hits == 1
    });
    let k_bound = bound / s + 1;
    let mut seen = BTreeSet::new();
    let mut free = true;
    for k in stage.exponent_box(k_bound) {
        for j in &basis {
            let e: Vec<i64> = k.iter().zip(j).map(|(&a, &b)| s * a + b).collect();
            free &= seen.insert(e);
        }
    }
    let twists: Vec<Vec<u64>> = basis
        .iter()
        .map(|j| j.iter().map(|&x| x as u64).collect())
        .collect();
    let f = &stage.field;
    let matrix: Vec<Vec<u32>> = twists
        .iter()
        .map(|t| {
            basis
                .iter()
                .map(|j| {
                    let pairing: u64 = t.iter().zip(j).map(|(&a, &b)| a * b as u64).sum();
                    f.pow(stage.theta, pairing % stage.s)
                })
                .collect()
        })
        .collect();
    let character_matrix_invertible = determinant_nonzero(f, matrix);
    BasisReport {
        holds: spanning && free && character_matrix_invertible,
        basis,
        spanning,
        free,
        character_matrix_invertible,
    }
}

fn determinant_nonzero(f: &FiniteField, mut m: Vec<Vec<u32>>) -> bool {
    let n = m.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return false;
        };
        m.swap(col, piv);
        let inv = f.inv(m[col][col]).expect("nonzero pivot");
        for r in col + 1..n {
            let factor = f.mul(m[r][col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let sub = f.mul(factor, m[col][c]);
                m[r][c] = f.sub(m[r][c], sub);
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaReport {
    pub decomposition: Vec<StageGroupElement>,
    pub inertia: Vec<StageGroupElement>,
}

/// Decomposition group: elements of `⟨sub⟩` with `g(𝔪_a) = 𝔪_a`. Inertia:
/// those that also fix `uᵢ(a)` for every `i`, i.e. act trivially on the
/// residue field `F_q` through the evaluation map.
pub fn inertia_at_point(
    stage: &LaurentStage,
    sub: &[StageGroupElement],
    point: &[u32],
) -> Result<InertiaReport, GaloisError> {
    let group = stage.closure(sub)?;
    inertia_in(stage, &group, point)
}

fn inertia_in(
    stage: &LaurentStage,
    group: &[StageGroupElement],
    point: &[u32],
) -> Result<InertiaReport, GaloisError> {
    if point.len() != stage.n {
        return Err(GaloisError::StageMismatch);
    }
    if let Some(i) = point
        .iter()
        .position(|&x| x == 0 || !stage.field.contains(x))
    {
        return Err(GaloisError::BadPoint(i));
    }
    let decomposition: Vec<StageGroupElement> = group
        .iter()
        .filter(|g| stage.move_point(g, point) == point)
        .cloned()
        .collect();
    let inertia = decomposition
        .iter()
        .filter(|g| {
            (0..stage.n).all(|i| {
                let mut e = vec![0; stage.n];
                e[i] = 1;
                let u = LaurentPoly::monomial(e, 1);
                let gu = stage.act(g, &u).expect("same stage");
                stage.evaluate(&gu, point) == stage.evaluate(&u, point)
            })
        })
        .cloned()
        .collect();
    Ok(InertiaReport {
        decomposition,
        inertia,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisVerdict {
    pub galois: bool,
    pub subgroup_order: usize,
    pub points_checked: u64,
    /// Lexicographically least point with nontrivial inertia, and the least
    /// nontrivial inertia element there.
    pub witness: Option<(Vec<u32>, StageGroupElement)>,
}

/// Sweeps all `(q − 1)^n` rational points with unit coordinates in
/// lexicographic order.
pub fn galois_criterion(
    stage: &LaurentStage,
    sub: &[StageGroupElement],
) -> Result<GaloisVerdict, GaloisError> {
    let group = stage.closure(sub)?;
    let units: Vec<u32> = (1..stage.q() as u32).collect();
    let mut point = vec![units[0]; stage.n];
    let mut idx = vec![0usize; stage.n];
    let mut checked = 0u64;
    loop {
        checked += 1;
        let report = inertia_in(stage, &group, &point)?;
        if let Some(g) = report.inertia.iter().find(|g| !g.is_identity()) {
            return Ok(GaloisVerdict {
                galois: false,
                subgroup_order: group.len(),
                points_checked: checked,
                witness: Some((point, g.clone())),
            });
        }
        // Odometer with the last coordinate fastest.
        let mut k = stage.n;
        loop {
            if k == 0 {
                return Ok(GaloisVerdict {
                    galois: true,
                    subgroup_order: group.len(),
                    points_checked: checked,
                    witness: None,
                });
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < units.len() {
                point[k] = units[idx[k]];
                break;
            }
            idx[k] = 0;
            point[k] = units[0];
        }
    }
}

/// Orbit of a point under `⟨sub⟩`.
pub fn orbit(
    stage: &LaurentStage,
    sub: &[StageGroupElement],
    point: &[u32],
) -> Result<BTreeSet<Vec<u32>>, GaloisError> {
    Ok(stage
        .closure(sub)?
        .iter()
        .map(|g| stage.move_point(g, point))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn u(n: usize, i: usize, k: i64) -> LaurentPoly {
        let mut e = vec![0; n];
        e[i] = k;
        LaurentPoly::monomial(e, 1)
    }

    #[test]
    fn thetas() {
        assert_eq!(make_stage(5, 1, 4).unwrap().theta(), 2);
        assert_eq!(make_stage(7, 1, 3).unwrap().theta(), 2);
        assert_eq!(make_stage(5, 1, 1).unwrap().theta(), 1);
        assert_eq!(
            make_stage(5, 1, 3).unwrap_err(),
            GaloisError::NoRootsOfUnity { s: 3, q_minus_1: 4 }
        );
    }

    #[test]
    fn alpha_action() {
        let st = make_stage(5, 1, 4).unwrap();
        let a = StageGroupElement::alpha(1, 0);
        let f = u(1, 0, 1);
        assert_eq!(st.act(&a, &f).unwrap(), LaurentPoly::monomial(vec![1], 2));
        let mut x = f.clone();
        for _ in 0..4 {
            x = st.act(&a, &x).unwrap();
        }
        assert_eq!(x, f);
        assert_eq!(st.act(&StageGroupElement::identity(1), &f).unwrap(), f);
        assert_eq!(
            st.act(&StageGroupElement::alpha(2, 0), &f),
            Err(GaloisError::StageMismatch)
        );
    }

    #[test]
    fn composition_is_an_action() {
        let st = make_stage(7, 2, 3).unwrap();
        let gens = [
            StageGroupElement::alpha(2, 0),
            StageGroupElement::permutation(vec![1, 0]),
        ];
        let group = st.closure(&gens).unwrap();
        assert_eq!(group.len(), 2 * 9);
        let f = LaurentPoly {
            terms: [(vec![1, -2], 3), (vec![0, 4], 1), (vec![2, 2], 6)]
                .into_iter()
                .collect(),
        };
        for g in &group {
            assert_eq!(
                st.compose(g, &st.inverse(g)),
                StageGroupElement::identity(2)
            );
            for h in &group {
                let lhs = st.act(&st.compose(g, h), &f).unwrap();
                let rhs = st.act(g, &st.act(h, &f).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn fixed_rings() {
        for (q, n, s) in [(5, 1, 4), (5, 1, 1), (7, 2, 3), (5, 2, 2)] {
            assert!(
                fixed_ring_check(&make_stage(q, n, s).unwrap(), 6),
                "{q} {n} {s}"
            );
        }
    }

    #[test]
    fn bases() {
        let r = separability_basis_check(&make_stage(5, 1, 4).unwrap(), 9);
        assert!(r.holds);
        assert_eq!(r.basis, vec![vec![0], vec![1], vec![2], vec![3]]);
        let r = separability_basis_check(&make_stage(5, 1, 1).unwrap(), 5);
        assert!(r.holds);
        assert_eq!(r.basis, vec![vec![0]]);
        let r = separability_basis_check(&make_stage(7, 1, 2).unwrap(), 5);
        assert_eq!(r.basis, vec![vec![0], vec![1]]);
        assert!(r.holds);
        let r = separability_basis_check(&make_stage(7, 2, 3).unwrap(), 4);
        assert_eq!(r.basis.len(), 9);
        assert!(r.holds);
    }

    #[test]
    fn inertia_examples() {
        let st = make_stage(5, 1, 4).unwrap();
        let alpha = StageGroupElement::alpha(1, 0);
        let r = inertia_at_point(&st, core::slice::from_ref(&alpha), &[1]).unwrap();
        assert_eq!(r.decomposition, vec![StageGroupElement::identity(1)]);
        assert_eq!(r.inertia, vec![StageGroupElement::identity(1)]);
        assert_eq!(
            orbit(&st, core::slice::from_ref(&alpha), &[1])
                .unwrap()
                .len(),
            4
        );
        let r = inertia_at_point(&st, &[], &[3]).unwrap();
        assert_eq!(r.inertia.len(), 1);
        assert_eq!(
            inertia_at_point(&st, &[], &[0]),
            Err(GaloisError::BadPoint(0))
        );

        // θ² = −1: α² sends 2 to −2 = 3, at s = 4 and likewise α at s = 2.
        let a2 = st.compose(&alpha, &alpha);
        assert_eq!(st.move_point(&a2, &[2]), vec![3]);
        assert_eq!(
            inertia_at_point(&st, &[a2], &[2])
                .unwrap()
                .decomposition
                .len(),
            1
        );
        let st2 = make_stage(5, 1, 2).unwrap();
        assert_eq!(st2.theta(), 4);
        let r = inertia_at_point(&st2, &[StageGroupElement::alpha(1, 0)], &[2]).unwrap();
        assert_eq!(r.decomposition.len(), 1);
    }

    #[test]
    fn criteria() {
        let st = make_stage(5, 1, 4).unwrap();
        let v = galois_criterion(&st, &[StageGroupElement::alpha(1, 0)]).unwrap();
        assert!(v.galois);
        assert_eq!(v.points_checked, 4);
        assert!(galois_criterion(&st, &[]).unwrap().galois);

        let st = make_stage(5, 2, 4).unwrap();
        let swap = StageGroupElement::permutation(vec![1, 0]);
        let v = galois_criterion(&st, core::slice::from_ref(&swap)).unwrap();
        assert!(!v.galois);
        assert_eq!(v.witness, Some((vec![1, 1], swap)));
    }

    #[test]
    fn sub_line_round_trip() {
        let g: StageGroupElement = "1 0 | 3 0".parse().unwrap();
        assert_eq!(g.perm, vec![1, 0]);
        assert_eq!(g.to_string().parse::<StageGroupElement>().unwrap(), g);
        assert!("0 0 | 1 1".parse::<StageGroupElement>().is_err());
        assert!("0 1".parse::<StageGroupElement>().is_err());
    }

    #[test]
    fn lattice_reduction_is_a_homomorphism() {
        let st = make_stage(7, 3, 3).unwrap();
        let elems = [
            (vec![1, 2, 0], vec![1, -1, 4]),
            (vec![0, 2, 1], vec![2, 0, -3]),
            (vec![2, 1, 0], vec![-5, 1, 1]),
        ];
        let mul = |(p, v): &(Vec<usize>, Vec<i64>), (q, w): &(Vec<usize>, Vec<i64>)| {
            let mut sw = vec![0; 3];
            for i in 0..3 {
                sw[p[i]] = w[i];
            }
            let r: Vec<usize> = q.iter().map(|&i| p[i]).collect();
            (
                r,
                v.iter().zip(&sw).map(|(a, b)| a + b).collect::<Vec<i64>>(),
            )
        };
        let red = |(p, v): &(Vec<usize>, Vec<i64>)| StageGroupElement::from_lattice(p, v, 3);
        for x in &elems {
            for y in &elems {
                assert_eq!(red(&mul(x, y)), st.compose(&red(x), &red(y)));
            }
        }
    }
}
