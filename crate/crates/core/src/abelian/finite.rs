use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{smith_normal_form, AbelianError, FinAbInvariants, IntMatrix};

/// Element of `Q/Z` as a reduced fraction `num/den` with `0 ≤ num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qz {
    num: u64,
    den: u64,
}

impl Qz {
    pub fn zero() -> Self {
        Qz { num: 0, den: 1 }
    }

    /// `num/den mod 1`. Panics if `den` is zero.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let d = den as i128;
        let r = num.rem_euclid(d) as u64;
        let g = r.gcd(&den);
        Qz {
            num: r / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &Qz) -> Qz {
        let den = self.den.lcm(&other.den);
        let num = self.num as i128 * (den / self.den) as i128
            + other.num as i128 * (den / other.den) as i128;
        Qz::new(num, den)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Finite abelian group `Z/m₁ ⊕ … ⊕ Z/m_k`; elements are coordinate tuples
/// with `0 ≤ xᵢ < mᵢ`. Moduli need not form a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    moduli: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self, AbelianError> {
        if moduli.contains(&0) {
            return Err(AbelianError::InfiniteGroup);
        }
        moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or(AbelianError::TooLarge)?;
        Ok(FinAbGroup { moduli })
    }

    pub fn cyclic(m: u64) -> Self {
        Self::new(vec![m]).expect("positive modulus")
    }

    pub fn trivial() -> Self {
        FinAbGroup { moduli: Vec::new() }
    }

    pub fn from_invariants(inv: &FinAbInvariants) -> Result<Self, AbelianError> {
        if inv.rank() > 0 {
            return Err(AbelianError::InfiniteGroup);
        }
        Self::new(inv.torsion_u64().ok_or(AbelianError::TooLarge)?)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |a, m| a.lcm(m))
    }

    pub fn invariants(&self) -> FinAbInvariants {
        FinAbInvariants::from_cyclic_orders(0, &self.moduli)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.moduli.len()]
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.moduli.len() && x.iter().zip(&self.moduli).all(|(a, m)| a < m)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(x, m)| (m - x) % m)
            .collect()
    }

    /// `k·a`
    pub fn scale(&self, k: i64, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((k as i128 * x as i128).rem_euclid(m as i128)) as u64)
            .collect()
    }

    /// Reduces an integer vector into the group.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<u64> {
        v.iter()
            .zip(&self.moduli)
            .map(|(x, &m)| x.mod_floor(&BigInt::from(m)).to_u64().expect("reduced"))
            .collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.moduli)
            .fold(1, |acc, (&x, &m)| acc.lcm(&(m / x.gcd(&m))))
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index_of(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &m)| acc * m + x)
    }

    pub fn element_at(&self, mut idx: u64) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            out[i] = idx % self.moduli[i];
            idx /= self.moduli[i];
        }
        out
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Subgroup generated by `gens`, as an abstract group with its inclusion.
    pub fn subgroup(&self, gens: &[Vec<u64>]) -> Result<(FinAbGroup, FinAbHom), AbelianError> {
        let k = self.moduli.len();
        let r = gens.len();
        // Kernel of Z^r → Z^k/diag(m): integer solutions of S·x + diag(m)·y = 0.
        let mut p = IntMatrix::zeros(k, r + k);
        for (j, g) in gens.iter().enumerate() {
            self.check(g)?;
            for i in 0..k {
                p[(i, j)] = BigInt::from(g[i]);
            }
        }
        for i in 0..k {
            p[(i, r + i)] = BigInt::from(self.moduli[i]);
        }
        let kernel = super::kernel_basis(&p);
        let rels: Vec<Vec<BigInt>> = (0..kernel.rows())
            .map(|i| kernel.row(i)[..r].to_vec())
            .collect();
        let rels = IntMatrix::from_rows_with_cols(&rels, r);
        let q = LatticeQuotient::new(&rels)?;
        let vinv = q.v_inverse();
        let images = q
            .kept
            .iter()
            .map(|&t| {
                let combo: Vec<BigInt> = (0..k)
                    .map(|i| {
                        (0..r)
                            .map(|j| &vinv[(t, j)] * BigInt::from(gens[j][i]))
                            .sum()
                    })
                    .collect();
                self.reduce(&combo)
            })
            .collect();
        let f = FinAbHom::new(q.group.clone(), self.clone(), images)?;
        Ok((q.group, f))
    }

    /// Quotient by the subgroup generated by `gens`, with its projection.
    pub fn quotient(&self, gens: &[Vec<u64>]) -> Result<(FinAbGroup, FinAbHom), AbelianError> {
        let k = self.moduli.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, &m) in self.moduli.iter().enumerate() {
            let mut row = vec![BigInt::zero(); k];
            row[i] = BigInt::from(m);
            rows.push(row);
        }
        for g in gens {
            self.check(g)?;
            rows.push(g.iter().map(|&x| BigInt::from(x)).collect());
        }
        let q = LatticeQuotient::new(&IntMatrix::from_rows_with_cols(&rows, k))?;
        let images = (0..k)
            .map(|j| {
                let mut e = vec![BigInt::zero(); k];
                e[j] = BigInt::from(1);
                q.project(&e)
            })
            .collect();
        let f = FinAbHom::new(self.clone(), q.group.clone(), images)?;
        Ok((q.group, f))
    }

    fn check(&self, x: &[u64]) -> Result<(), AbelianError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AbelianError::NotAnElement)
        }
    }
}

/// `Z^k / rowspace(R)` put in Smith form: coordinates `x ↦ x·V` restricted
/// to the diagonal positions with `dᵢ ≥ 2`.
struct LatticeQuotient {
    group: FinAbGroup,
    v: IntMatrix,
    kept: Vec<usize>,
}

impl LatticeQuotient {
    fn new(rels: &IntMatrix) -> Result<Self, AbelianError> {
        let snf = smith_normal_form(rels);
        let diag = snf.diagonal();
        if diag.len() < rels.cols() {
            return Err(AbelianError::InfiniteGroup);
        }
        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if *d > BigInt::from(1) {
                kept.push(i);
                moduli.push(d.to_u64().ok_or(AbelianError::TooLarge)?);
            }
        }
        Ok(LatticeQuotient {
            group: FinAbGroup::new(moduli)?,
            v: snf.v,
            kept,
        })
    }

    fn project(&self, x: &[BigInt]) -> Vec<u64> {
        let xv: Vec<BigInt> = self
            .kept
            .iter()
            .map(|&i| (0..x.len()).map(|j| &x[j] * &self.v[(j, i)]).sum())
            .collect();
        self.group.reduce(&xv)
    }

    fn v_inverse(&self) -> IntMatrix {
        let n = self.v.rows();
        let mut inv = IntMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::from(1);
            let col = super::solve_integer(&self.v, &e).expect("unimodular");
            for i in 0..n {
                inv[(i, j)] = col[i].clone();
            }
        }
        inv
    }
}

/// Homomorphism of finite abelian groups, given by the images of the
/// standard generators of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<Vec<u64>>,
}

impl FinAbHom {
    /// Fails unless `mⱼ · images[j] = 0` for every source generator.
    pub fn new(
        source: FinAbGroup,
        target: FinAbGroup,
        images: Vec<Vec<u64>>,
    ) -> Result<Self, AbelianError> {
        if images.len() != source.moduli.len() || images.iter().any(|x| !target.contains(x)) {
            return Err(AbelianError::NotAnElement);
        }
        for (j, img) in images.iter().enumerate() {
            if target.scale(source.moduli[j] as i64, img) != target.zero() {
                return Err(AbelianError::NotWellDefined(j));
            }
        }
        Ok(FinAbHom {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut out = self.target.zero();
        for (xj, img) in x.iter().zip(&self.images) {
            out = self.target.add(&out, &self.target.scale(*xj as i64, img));
        }
        out
    }

    /// `other ∘ self`
    pub fn then(&self, other: &FinAbHom) -> FinAbHom {
        assert_eq!(self.target, other.source, "composition mismatch");
        let images = self.images.iter().map(|x| other.apply(x)).collect();
        FinAbHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        }
    }

    pub fn kernel(&self) -> BTreeSet<Vec<u64>> {
        let z = self.target.zero();
        self.source
            .elements()
            .filter(|x| self.apply(x) == z)
            .collect()
    }

    pub fn image(&self) -> BTreeSet<Vec<u64>> {
        self.source.elements().map(|x| self.apply(&x)).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() as u64 == self.target.order()
    }

    /// Transpose `χ ↦ χ ∘ f` between the duals (in dual coordinates).
    pub fn dual(&self) -> FinAbHom {
        let src = dual_group(&self.target);
        let tgt = dual_group(&self.source);
        let n = self.target.moduli.len();
        let images = (0..n)
            .map(|i| {
                let mut chi = vec![0; n];
                chi[i] = 1;
                self.images
                    .iter()
                    .zip(&self.source.moduli)
                    .map(|(img, &mj)| {
                        let val = src.pair(img, &chi);
                        let scaled = val.num as u128 * mj as u128;
                        debug_assert_eq!(scaled % val.den as u128, 0);
                        ((scaled / val.den as u128) % mj as u128) as u64
                    })
                    .collect()
            })
            .collect();
        FinAbHom::new(src.group, tgt.group, images).expect("dual of a homomorphism")
    }
}

/// Pontryagin dual `Hom(G, Q/Z)` of a finite abelian group. The character
/// with coordinates `χ` sends `eᵢ ↦ χᵢ/mᵢ`, so values have denominators
/// dividing `exp(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGroup {
    pub base: FinAbGroup,
    pub group: FinAbGroup,
}

impl DualGroup {
    /// Evaluation pairing `⟨x, χ⟩ = Σ xᵢχᵢ/mᵢ mod 1`.
    pub fn pair(&self, x: &[u64], chi: &[u64]) -> Qz {
        let mut acc = Qz::zero();
        for ((a, c), &m) in x.iter().zip(chi).zip(&self.base.moduli) {
            acc = acc.add(&Qz::new(*a as i128 * *c as i128, m));
        }
        acc
    }
}

pub fn dual_group(g: &FinAbGroup) -> DualGroup {
    DualGroup {
        base: g.clone(),
        group: FinAbGroup {
            moduli: g.moduli.clone(),
        },
    }
}

/// Checks that `x ↦ (χ ↦ ⟨x, χ⟩)` is an isomorphism `G → Ĝ^^` by
/// tabulating every character of `Ĝ` as a value vector on `Ĝ`.
pub fn evaluation_is_isomorphism(g: &FinAbGroup) -> bool {
    let d = dual_group(g);
    let dd = dual_group(&d.group);
    let chars: Vec<Vec<u64>> = d.group.elements().collect();
    let mut by_values: BTreeMap<Vec<Qz>, Vec<u64>> = BTreeMap::new();
    for z in dd.group.elements() {
        let vals = chars.iter().map(|chi| dd.pair(chi, &z)).collect();
        if by_values.insert(vals, z).is_some() {
            return false;
        }
    }
    let mut hit = BTreeSet::new();
    for x in g.elements() {
        let vals: Vec<Qz> = chars.iter().map(|chi| d.pair(&x, chi)).collect();
        match by_values.get(&vals) {
            Some(z) => {
                hit.insert(z.clone());
            }
            None => return false,
        }
    }
    hit.len() as u64 == g.order()
}

/// `im f = ker g`
pub fn is_exact_at(f: &FinAbHom, g: &FinAbHom) -> bool {
    f.target == g.source && f.image() == g.kernel()
}

/// `0 → A → B → C → 0` is exact.
pub fn is_short_exact(f: &FinAbHom, g: &FinAbHom) -> bool {
    f.is_injective() && g.is_surjective() && is_exact_at(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn qz_arithmetic() {
        assert_eq!(Qz::new(3, 6), Qz::new(1, 2));
        assert_eq!(Qz::new(-1, 4), Qz::new(3, 4));
        assert!(Qz::new(1, 2).add(&Qz::new(1, 2)).is_zero());
        assert_eq!(Qz::new(1, 3).add(&Qz::new(1, 6)).to_string(), "1/2");
    }

    #[test]
    fn duals_of_small_groups() {
        for moduli in [vec![6], vec![4, 2], vec![]] {
            let g = FinAbGroup::new(moduli).unwrap();
            let d = dual_group(&g);
            assert_eq!(d.group.invariants(), g.invariants());
            assert_eq!(d.group.order(), g.order());
            assert!(evaluation_is_isomorphism(&g));
        }
    }

    #[test]
    fn pairing_denominators_divide_exponent() {
        let g = FinAbGroup::new(vec![4, 6]).unwrap();
        let d = dual_group(&g);
        for x in g.elements() {
            for chi in d.group.elements() {
                assert_eq!(g.exponent() % d.pair(&x, &chi).den(), 0);
            }
        }
    }

    #[test]
    fn subgroup_and_quotient_of_z12() {
        let b = FinAbGroup::cyclic(12);
        let (a, f) = b.subgroup(&[vec![4]]).unwrap();
        assert_eq!(a.order(), 3);
        let (c, g) = b.quotient(&[vec![4]]).unwrap();
        assert_eq!(c.order(), 4);
        assert!(is_short_exact(&f, &g));
        assert!(is_short_exact(&g.dual(), &f.dual()));
    }

    #[test]
    fn rejects_ill_defined_hom() {
        // Z/2 → Z/3 sending the generator to 1 is not well defined.
        let e = FinAbHom::new(FinAbGroup::cyclic(2), FinAbGroup::cyclic(3), vec![vec![1]]);
        assert!(matches!(e, Err(AbelianError::NotWellDefined(0))));
    }
}
