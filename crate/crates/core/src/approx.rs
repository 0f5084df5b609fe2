//! Approximation systems `Γ → Ĝ → G` and their fiber products.
//!
//! `Γ` is represented only by generator labels and their images in `Ĝ`; no
//! relations of `Γ` are consulted. `Ĝ` is a [`VirtAbGroup`] and `G` a
//! [`FiniteGroup`]. The homomorphism `σ: Ĝ → G` is stored as the images of
//! the lattice basis and of the normalized section, so that
//! `σ(q, v) = σ(v)·σ(s(q))`.
//!
//! `Ĝ` here is the approximation target, unrelated to the Pontryagin dual
//! [`crate::abelian::dual_group`].

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::abelian::{hermite_normal_form, is_prime, solve_integer, IntMatrix};
use crate::virtab::{
    is_torsion_free, lattice_index, mat_mul, mat_vec, subgroup_closure, FiniteGroup,
    TorsionVerdict, VAElement, VirtAbError, VirtAbGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApproxError {
    #[error("labels and images differ in length")]
    Dimension,
    #[error("duplicate generator label {0}")]
    DuplicateLabel(String),
    #[error("image of {0} is not an element of the target")]
    ImageOutsideTarget(String),
    #[error("images do not generate the target")]
    NotSurjective,
    #[error("sigma is not a homomorphism: {0}")]
    SigmaNotHomomorphism(String),
    #[error("sigma composed with the images does not reach all of G")]
    SigmaNotSurjective,
    #[error("kernel of sigma has torsion, e.g. {0}")]
    KernelHasTorsion(VAElement),
    #[error("kernel of sigma is not abelian")]
    KernelNotAbelian,
    #[error("{g} does not have prime order {p} in G")]
    NotOfPrimeOrder { p: u64, g: usize },
    #[error("systems have different generator labels")]
    MismatchedSources,
    #[error("systems have different finite quotients G")]
    MismatchedQuotients,
    #[error("projections to G disagree on generator {0}")]
    IncompatibleProjections(String),
    #[error("no systems supplied")]
    NoSystems,
    #[error("pair ({p}, {g}) is missing from the supplied pairs")]
    MissingPair { p: u64, g: usize },
    #[error("no system is {p}-torsion free over {g}")]
    UncoveredPair { p: u64, g: usize },
    #[error("iterated fiber product has torsion element {0}")]
    CertificationFailed(VAElement),
    #[error(transparent)]
    VirtAb(#[from] VirtAbError),
}

/// `σ: Ĝ → G` by the images of the lattice basis `eᵢ` and of the section
/// elements `s(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma {
    pub lattice: Vec<usize>,
    pub section: Vec<usize>,
}

impl Sigma {
    /// The map that forgets the lattice: `σ(q, v) = q` when `G = Q`.
    pub fn quotient_map(ghat: &VirtAbGroup) -> Self {
        let e = ghat.quotient().identity();
        Self {
            lattice: vec![e; ghat.rank()],
            section: (0..ghat.quotient().order()).collect(),
        }
    }

    pub fn apply(&self, g: &FiniteGroup, x: &VAElement) -> usize {
        g.mul(self.apply_lattice(g, &x.v), self.section[x.q])
    }

    fn apply_lattice(&self, g: &FiniteGroup, v: &[i64]) -> usize {
        v.iter()
            .zip(&self.lattice)
            .fold(g.identity(), |acc, (&k, &h)| {
                let h = if k < 0 { g.inv(h) } else { h };
                g.mul(acc, g.pow(h, k.unsigned_abs()))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxSystem {
    source_gens: Vec<String>,
    ghat: VirtAbGroup,
    images: Vec<VAElement>,
    g: FiniteGroup,
    sigma: Sigma,
}

/// Validates every structural requirement of an approximation system:
/// the images generate `Ĝ`, `σ` is a homomorphism, `σ` composed with the
/// images is onto `G`, and `ker σ` is abelian and torsion free.
pub fn make_approx_system(
    source_gens: Vec<String>,
    ghat: VirtAbGroup,
    images: Vec<VAElement>,
    g: FiniteGroup,
    sigma: Sigma,
) -> Result<ApproxSystem, ApproxError> {
    if source_gens.len() != images.len()
        || sigma.lattice.len() != ghat.rank()
        || sigma.section.len() != ghat.quotient().order()
    {
        return Err(ApproxError::Dimension);
    }
    let mut seen = BTreeSet::new();
    for label in &source_gens {
        if !seen.insert(label.as_str()) {
            return Err(ApproxError::DuplicateLabel(label.clone()));
        }
    }
    if let Some(i) = images.iter().position(|x| !ghat.contains(x)) {
        return Err(ApproxError::ImageOutsideTarget(source_gens[i].clone()));
    }
    if sigma
        .lattice
        .iter()
        .chain(&sigma.section)
        .any(|&h| h >= g.order())
    {
        return Err(ApproxError::SigmaNotHomomorphism("value outside G".into()));
    }
    let closure = subgroup_closure(&ghat, &images);
    let full = closure.q_embedding.len() == ghat.quotient().order()
        && lattice_index(&closure.basis, ghat.rank()) == BigInt::from(1);
    if !full {
        return Err(ApproxError::NotSurjective);
    }
    check_sigma_homomorphism(&ghat, &g, &sigma)?;
    let reached: Vec<usize> = images.iter().map(|x| sigma.apply(&g, x)).collect();
    if g.closure(&reached).len() != g.order() {
        return Err(ApproxError::SigmaNotSurjective);
    }
    let sys = ApproxSystem {
        source_gens,
        ghat,
        images,
        g,
        sigma,
    };
    sys.check_kernel()?;
    Ok(sys)
}

/// The relations of the extension: lattice images commute, conjugation by
/// `s(q)` realizes `M_q`, and `s(a)s(b) = c(a,b)·s(ab)` with `s(e) = e`.
fn check_sigma_homomorphism(
    ghat: &VirtAbGroup,
    g: &FiniteGroup,
    sigma: &Sigma,
) -> Result<(), ApproxError> {
    let q = ghat.quotient();
    let n = ghat.rank();
    let fail = |what: String| Err(ApproxError::SigmaNotHomomorphism(what));
    if sigma.section[q.identity()] != g.identity() {
        return fail("s(e) must map to the identity".into());
    }
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (sigma.lattice[i], sigma.lattice[j]);
            if g.mul(a, b) != g.mul(b, a) {
                return fail(format!("images of e{i} and e{j} do not commute"));
            }
        }
    }
    for a in 0..q.order() {
        let s = sigma.section[a];
        for i in 0..n {
            let mut e_i = vec![0; n];
            e_i[i] = 1;
            let lhs = sigma.apply_lattice(g, &mat_vec(ghat.action(a), &e_i));
            let rhs = g.mul(g.mul(s, sigma.lattice[i]), g.inv(s));
            if lhs != rhs {
                return fail(format!("conjugation by s({a}) on e{i}"));
            }
        }
        for b in 0..q.order() {
            let lhs = g.mul(s, sigma.section[b]);
            let rhs = g.mul(
                sigma.apply_lattice(g, ghat.cocycle(a, b)),
                sigma.section[q.mul(a, b)],
            );
            if lhs != rhs {
                return fail(format!("product s({a})s({b})"));
            }
        }
    }
    Ok(())
}

/// Outcome of [`is_p_torsion_free_over`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTorsionVerdict {
    pub torsion_free: bool,
    /// An element of order `p` in `σ⁻¹(g)`.
    pub witness: Option<VAElement>,
}

impl ApproxSystem {
    pub fn source_gens(&self) -> &[String] {
        &self.source_gens
    }

    pub fn ghat(&self) -> &VirtAbGroup {
        &self.ghat
    }

    pub fn images(&self) -> &[VAElement] {
        &self.images
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    pub fn project(&self, x: &VAElement) -> usize {
        self.sigma.apply(&self.g, x)
    }

    /// Transversal of `ker σ` over `G` by breadth-first search on the
    /// generators of `Ĝ`, then Schreier generators `t(h)·x·t(h·σ(x))⁻¹`.
    pub fn kernel_generators(&self) -> Vec<VAElement> {
        let gens = self.ghat.generating_set();
        let mut rep: BTreeMap<usize, VAElement> = BTreeMap::new();
        rep.insert(self.g.identity(), self.ghat.identity());
        let mut queue = VecDeque::from([self.g.identity()]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            let t = rep[&h].clone();
            for x in &gens {
                let y = self.ghat.mul(&t, x);
                let k = self.g.mul(h, self.project(x));
                match rep.get(&k) {
                    Some(r) => {
                        let s = self.ghat.mul(&y, &self.ghat.inv(r));
                        if s != self.ghat.identity() {
                            out.push(s);
                        }
                    }
                    None => {
                        rep.insert(k, y);
                        queue.push_back(k);
                    }
                }
            }
        }
        out
    }

    fn check_kernel(&self) -> Result<(), ApproxError> {
        let kernel = subgroup_closure(&self.ghat, &self.kernel_generators());
        if let Some(w) = is_torsion_free(&kernel.group).witness {
            return Err(ApproxError::KernelHasTorsion(kernel.lift(&w)));
        }
        let k = &kernel.group;
        for (i, a) in kernel.generators.iter().enumerate() {
            for b in &kernel.generators[..i] {
                if k.mul(a, b) != k.mul(b, a) {
                    return Err(ApproxError::KernelNotAbelian);
                }
            }
        }
        Ok(())
    }

    /// Representatives `w_h` with `σ(w_h) = h` for every `h` in the image
    /// of the lattice, and a basis of `L₀ = Zⁿ ∩ ker σ`.
    fn lattice_fibres(&self) -> (BTreeMap<usize, Vec<i64>>, Vec<Vec<i64>>) {
        let n = self.ghat.rank();
        let mut rep: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        rep.insert(self.g.identity(), vec![0; n]);
        let mut queue = VecDeque::from([self.g.identity()]);
        let mut schreier: Vec<Vec<i64>> = Vec::new();
        while let Some(h) = queue.pop_front() {
            let w = rep[&h].clone();
            for i in 0..n {
                let mut y = w.clone();
                y[i] += 1;
                let k = self.g.mul(h, self.sigma.lattice[i]);
                match rep.get(&k) {
                    Some(r) => schreier.push(y.iter().zip(r).map(|(a, b)| a - b).collect()),
                    None => {
                        rep.insert(k, y);
                        queue.push_back(k);
                    }
                }
            }
        }
        let basis = if n == 0 {
            Vec::new()
        } else {
            hermite_normal_form(&IntMatrix::from_rows_with_cols(&schreier, n))
                .to_i64_rows()
                .expect("small entries")
        };
        (rep, basis)
    }
}

/// Decides whether `σ⁻¹(g)` contains an element of order `p`.
///
/// For each `q` with `q^p = e`, the translations `v` with `σ(q, v) = g`
/// form a coset `w + L₀`; `(q, w + By)^p = e` is the linear system
/// `N_q·B·y = −d_q − N_q·w`, solved over `Z`.
pub fn is_p_torsion_free_over(
    sys: &ApproxSystem,
    p: u64,
    g: usize,
) -> Result<PTorsionVerdict, ApproxError> {
    if !is_prime(p) || g >= sys.g.order() || sys.g.element_order(g) != p {
        return Err(ApproxError::NotOfPrimeOrder { p, g });
    }
    let (reps, basis) = sys.lattice_fibres();
    let q_group = sys.ghat.quotient();
    let n = sys.ghat.rank();
    for q in 0..q_group.order() {
        if q_group.pow(q, p) != q_group.identity() {
            continue;
        }
        let target = sys.g.mul(g, sys.g.inv(sys.sigma.section[q]));
        let Some(w) = reps.get(&target) else {
            continue;
        };
        let (n_mat, d) = sys.ghat.power_translation(q, p);
        let b_mat: Vec<Vec<i64>> = (0..n)
            .map(|i| basis.iter().map(|row| row[i]).collect())
            .collect();
        let nb = mat_mul(&n_mat, &b_mat);
        let nw = mat_vec(&n_mat, w);
        let rhs: Vec<BigInt> = d
            .iter()
            .zip(&nw)
            .map(|(a, b)| BigInt::from(-a - b))
            .collect();
        let found = if n == 0 {
            Some(Vec::new())
        } else {
            solve_integer(&IntMatrix::from_rows_with_cols(&nb, basis.len()), &rhs)
        };
        if let Some(y) = found {
            let y: Vec<i64> = y
                .iter()
                .map(|a| a.to_i64().expect("small solution"))
                .collect();
            let mut v = w.clone();
            for (yi, row) in y.iter().zip(&basis) {
                for (vj, bj) in v.iter_mut().zip(row) {
                    *vj += yi * bj;
                }
            }
            let x = VAElement::new(q, v);
            debug_assert_eq!(sys.ghat.pow(&x, p as i64), sys.ghat.identity());
            return Ok(PTorsionVerdict {
                torsion_free: false,
                witness: Some(x),
            });
        }
    }
    Ok(PTorsionVerdict {
        torsion_free: true,
        witness: None,
    })
}

/// `(x₁, x₂)` as an element of `Ĝ₁ × Ĝ₂`.
pub fn pair(g2: &VirtAbGroup, x1: &VAElement, x2: &VAElement) -> VAElement {
    let mut v = x1.v.clone();
    v.extend_from_slice(&x2.v);
    VAElement::new(x1.q * g2.quotient().order() + x2.q, v)
}

/// Components of an element of `Ĝ₁ × Ĝ₂`.
pub fn unpair(g1: &VirtAbGroup, g2: &VirtAbGroup, x: &VAElement) -> (VAElement, VAElement) {
    let o2 = g2.quotient().order();
    let n1 = g1.rank();
    (
        VAElement::new(x.q / o2, x.v[..n1].to_vec()),
        VAElement::new(x.q % o2, x.v[n1..].to_vec()),
    )
}

/// The image `Ĝ₁₂` of `Γ` in `Ĝ₁ × Ĝ₂`, with `σ₁₂ = σ₁∘pr₁`.
pub fn fiber_product(s1: &ApproxSystem, s2: &ApproxSystem) -> Result<ApproxSystem, ApproxError> {
    if s1.source_gens != s2.source_gens {
        return Err(ApproxError::MismatchedSources);
    }
    if s1.g != s2.g {
        return Err(ApproxError::MismatchedQuotients);
    }
    for (i, label) in s1.source_gens.iter().enumerate() {
        if s1.project(&s1.images[i]) != s2.project(&s2.images[i]) {
            return Err(ApproxError::IncompatibleProjections(label.clone()));
        }
    }
    let product = VirtAbGroup::direct_product(&s1.ghat, &s2.ghat);
    let pairs: Vec<VAElement> = s1
        .images
        .iter()
        .zip(&s2.images)
        .map(|(a, b)| pair(&s2.ghat, a, b))
        .collect();
    let closure = subgroup_closure(&product, &pairs);
    let sub = &closure.group;
    let via = |x: &VAElement| {
        let (a, b) = unpair(&s1.ghat, &s2.ghat, &closure.lift(x));
        (s1.project(&a), s2.project(&b))
    };
    let mut sigma = Sigma {
        lattice: Vec::with_capacity(sub.rank()),
        section: Vec::with_capacity(sub.quotient().order()),
    };
    let elements = (0..sub.rank())
        .map(|i| {
            let mut e = vec![0; sub.rank()];
            e[i] = 1;
            (true, sub.translation(e))
        })
        .chain((0..sub.quotient().order()).map(|q| (false, sub.section(q))));
    for (is_lattice, x) in elements {
        let (h1, h2) = via(&x);
        if h1 != h2 {
            return Err(ApproxError::IncompatibleProjections(format!("{x}")));
        }
        if is_lattice {
            sigma.lattice.push(h1);
        } else {
            sigma.section.push(h1);
        }
    }
    make_approx_system(
        s1.source_gens.clone(),
        closure.group.clone(),
        closure.generators.clone(),
        s1.g.clone(),
        sigma,
    )
}

/// Every `(p, g)` with `g` of prime order `p` in `G`, ordered by `g`.
pub fn prime_order_pairs(g: &FiniteGroup) -> Vec<(u64, usize)> {
    (0..g.order())
        .filter_map(|x| {
            let k = g.element_order(x);
            is_prime(k).then_some((k, x))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub p: u64,
    pub g: usize,
    /// Input systems that are `p`-torsion free over `g`.
    pub covered_by: Vec<usize>,
    /// Whether the folded system is `p`-torsion free over `g`.
    pub folded_torsion_free: bool,
}

#[derive(Clone, Debug)]
pub struct TorsionFreeQuotient {
    pub system: ApproxSystem,
    /// Input indices in the order they were folded.
    pub fold_order: Vec<usize>,
    pub pairs: Vec<PairReport>,
    pub certification: TorsionVerdict,
}

/// Left fold of [`fiber_product`] over `systems`, after checking that
/// `pairs` lists every prime-order element of `G` and that each pair is
/// covered by some input system. The result is certified torsion free.
pub fn build_torsion_free_quotient(
    systems: &[ApproxSystem],
    pairs: &[(u64, usize)],
) -> Result<TorsionFreeQuotient, ApproxError> {
    let first = systems.first().ok_or(ApproxError::NoSystems)?;
    for &(p, g) in pairs {
        if !is_prime(p) || g >= first.g.order() || first.g.element_order(g) != p {
            return Err(ApproxError::NotOfPrimeOrder { p, g });
        }
    }
    for (p, g) in prime_order_pairs(&first.g) {
        if !pairs.contains(&(p, g)) {
            return Err(ApproxError::MissingPair { p, g });
        }
    }
    let mut reports = Vec::with_capacity(pairs.len());
    for &(p, g) in pairs {
        let mut covered_by = Vec::new();
        for (i, s) in systems.iter().enumerate() {
            if s.g != first.g {
                return Err(ApproxError::MismatchedQuotients);
            }
            if is_p_torsion_free_over(s, p, g)?.torsion_free {
                covered_by.push(i);
            }
        }
        if covered_by.is_empty() {
            return Err(ApproxError::UncoveredPair { p, g });
        }
        reports.push(PairReport {
            p,
            g,
            covered_by,
            folded_torsion_free: false,
        });
    }
    let mut acc = first.clone();
    for s in &systems[1..] {
        acc = fiber_product(&acc, s)?;
    }
    for r in &mut reports {
        r.folded_torsion_free = is_p_torsion_free_over(&acc, r.p, r.g)?.torsion_free;
    }
    let certification = is_torsion_free(&acc.ghat);
    if let Some(w) = &certification.witness {
        return Err(ApproxError::CertificationFailed(w.clone()));
    }
    Ok(TorsionFreeQuotient {
        system: acc,
        fold_order: (0..systems.len()).collect(),
        pairs: reports,
        certification,
    })
}
