use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{permutation_matrix, to_big, Mat};
use super::{FiniteGroup, VAElement, VirtAbError, VirtAbGroup};
use crate::abelian::smith_normal_form;

/// How the wreath product `Q ≀ Zⁿ = Q ⋉ (Zⁿ)^Q` lets `Q` act on functions
/// `f: Q → Zⁿ`, paired with the matching transversal formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathConvention {
    /// `(q·f)(x) = f(q⁻¹x)` and `f_g(x) = s(x)⁻¹ · g · s(π(g)⁻¹x)`.
    LeftTranslation,
    /// `(q·f)(x) = f(xq⁻¹)` and `f_g(x) = s(x) · g · s(xπ(g))⁻¹`. The two
    /// agree only when every element of `Q` is an involution; kept so the
    /// mismatch is observable.
    RightTranslationInverse,
}

/// Outcome of the per-instance checks on an embedding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub generator_pairs_checked: usize,
    pub random_products_checked: usize,
    pub homomorphism: bool,
    /// The quotient part is carried through unchanged, so the map is
    /// injective on `Q` and the triangle over `Q` commutes.
    pub commutes_with_projection: bool,
    /// Rank of the image of the lattice; injective iff it equals `n`.
    pub lattice_image_rank: usize,
    pub lattice_injective: bool,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.commutes_with_projection && self.lattice_injective
    }
}

/// Embedding `G → Q ≀ Zⁿ` built from the section `s(q) = (q, 0)`.
#[derive(Clone, Debug)]
pub struct KkEmbedding {
    pub source: VirtAbGroup,
    pub wreath: VirtAbGroup,
    pub convention: WreathConvention,
    pub report: EmbeddingReport,
}

impl KkEmbedding {
    /// Image of `g`; block `x` of the lattice part (coordinates `x·n..x·n+n`)
    /// holds `f_g(x)`.
    pub fn map(&self, g: &VAElement) -> VAElement {
        kk_image(&self.source, self.convention, g)
    }
}

/// Kaloujnine–Krasner embedding with the left-translation convention.
pub fn kk_embed(g: &VirtAbGroup) -> Result<KkEmbedding, VirtAbError> {
    kk_embed_with(g, WreathConvention::LeftTranslation)
}

/// Builds the wreath product for `convention` and verifies the embedding:
/// homomorphism on all pairs from the generating set `{(q,0)} ∪ {(e,eᵢ)}`
/// and on seeded random products, commutation with the projection to `Q`,
/// and injectivity on the lattice. Any failure is an error.
pub fn kk_embed_with(
    g: &VirtAbGroup,
    convention: WreathConvention,
) -> Result<KkEmbedding, VirtAbError> {
    let q = g.quotient();
    let order = q.order();
    let n = g.rank();
    let action: Vec<Mat> = (0..order)
        .map(|a| {
            let blocks: Vec<usize> = (0..order)
                .map(|x| match convention {
                    WreathConvention::LeftTranslation => q.mul(a, x),
                    WreathConvention::RightTranslationInverse => q.mul(x, a),
                })
                .collect();
            permutation_matrix(&block_permutation(&blocks, n))
        })
        .collect();
    let wreath = VirtAbGroup::split(q.clone(), n * order, action).map_err(|e| {
        VirtAbError::EmbeddingVerification(format!(
            "wreath product for {convention:?} is not a group extension: {e}"
        ))
    })?;

    let mut report = EmbeddingReport::default();
    let gens = g.generating_set();
    let mut failure: Option<String> = None;
    let mut check = |x: &VAElement, y: &VAElement| {
        let lhs = kk_image(g, convention, &g.mul(x, y));
        let rhs = wreath.mul(&kk_image(g, convention, x), &kk_image(g, convention, y));
        if lhs != rhs && failure.is_none() {
            failure = Some(format!("φ({x}·{y}) = {lhs} but φ({x})·φ({y}) = {rhs}"));
        }
        lhs == rhs
    };
    let mut hom = true;
    for x in &gens {
        for y in &gens {
            hom &= check(x, y);
            report.generator_pairs_checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut triangle = true;
    for _ in 0..64 {
        let x = random_word(g, &gens, &mut rng);
        let y = random_word(g, &gens, &mut rng);
        hom &= check(&x, &y);
        triangle &= kk_image(g, convention, &x).q == x.q;
        report.random_products_checked += 1;
    }
    triangle &= gens.iter().all(|x| kk_image(g, convention, x).q == x.q);
    report.homomorphism = hom;
    report.commutes_with_projection = triangle;

    // Lattice part: v ↦ f_{(e,v)} is linear; its matrix has the images of eᵢ as columns.
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            kk_image(g, convention, &g.translation(v)).v
        })
        .collect();
    let rows: Vec<Vec<i64>> = (0..n * order)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    report.lattice_image_rank = if n == 0 {
        0
    } else {
        smith_normal_form(&to_big(&rows)).rank()
    };
    report.lattice_injective = report.lattice_image_rank == n;

    if !report.passed() {
        let why = failure.unwrap_or_else(|| format!("{report:?}"));
        return Err(VirtAbError::EmbeddingVerification(why));
    }
    Ok(KkEmbedding {
        source: g.clone(),
        wreath,
        convention,
        report,
    })
}

fn kk_image(g: &VirtAbGroup, convention: WreathConvention, x: &VAElement) -> VAElement {
    let q = g.quotient();
    let n = g.rank();
    let mut v = Vec::with_capacity(n * q.order());
    for b in 0..q.order() {
        let f = match convention {
            WreathConvention::LeftTranslation => {
                let t = q.mul(q.inv(x.q), b);
                g.mul(&g.mul(&g.inv(&g.section(b)), x), &g.section(t))
            }
            WreathConvention::RightTranslationInverse => {
                let t = q.mul(b, x.q);
                g.mul(&g.mul(&g.section(b), x), &g.inv(&g.section(t)))
            }
        };
        debug_assert_eq!(f.q, q.identity());
        v.extend_from_slice(&f.v);
    }
    VAElement { q: x.q, v }
}

/// Lifts a permutation of blocks to coordinates: `x·n + j ↦ blocks[x]·n + j`.
fn block_permutation(blocks: &[usize], n: usize) -> Vec<usize> {
    let mut p = Vec::with_capacity(blocks.len() * n);
    for &b in blocks {
        for j in 0..n {
            p.push(b * n + j);
        }
    }
    p
}

fn random_word(g: &VirtAbGroup, gens: &[VAElement], rng: &mut ChaCha8Rng) -> VAElement {
    let len = rng.gen_range(1..=6);
    let mut x = g.identity();
    for _ in 0..len {
        let s = &gens[rng.gen_range(0..gens.len())];
        let s = if rng.gen_bool(0.5) {
            s.clone()
        } else {
            g.inv(s)
        };
        x = g.mul(&x, &s);
    }
    x
}

/// Embedding `G → Σ_N ⋉ Z^N` with `N = n·|Q|`.
#[derive(Clone, Debug)]
pub struct SigmaEmbedding {
    pub degree: usize,
    /// Extension over the image of `Q` in `Σ_N` (permutations of coordinates).
    pub target: VirtAbGroup,
    /// Index in `target`'s quotient of the permutation attached to each `q`.
    pub perm_index: Vec<usize>,
    pub kk: KkEmbedding,
    pub report: EmbeddingReport,
}

impl SigmaEmbedding {
    pub fn map(&self, g: &VAElement) -> VAElement {
        let w = self.kk.map(g);
        VAElement {
            q: self.perm_index[w.q],
            v: w.v,
        }
    }

    /// Permutation of `{0..N}` attached to an element of `Q`.
    pub fn permutation(&self, q: usize) -> &[usize] {
        &self
            .target
            .quotient()
            .permutations()
            .expect("permutation group")[self.perm_index[q]]
    }
}

/// Composes [`kk_embed`] with `Q ≀ Zⁿ ⊆ Σ_q ⋉ Z^{nq} ⊆ Σ_{nq} ⋉ Z^{nq}`:
/// `q` permutes blocks by left translation, coordinate `x·n + j ↦ (qx)·n + j`.
/// The target is `P ⋉ Z^N` for the image `P ≤ Σ_N` of `Q`, whose elements
/// are labelled by cycle notation.
pub fn embed_sigma_lattice(g: &VirtAbGroup) -> Result<SigmaEmbedding, VirtAbError> {
    let kk = kk_embed(g)?;
    let q = g.quotient();
    let n = g.rank();
    let degree = n * q.order();
    let perms: Vec<Vec<usize>> = (0..q.order())
        .map(|a| block_permutation(&(0..q.order()).map(|x| q.mul(a, x)).collect::<Vec<_>>(), n))
        .collect();
    let image = FiniteGroup::from_permutations(degree, &perms)?;
    let image_perms = image.permutations().expect("permutation group");
    let perm_index: Vec<usize> = perms
        .iter()
        .map(|p| {
            image_perms
                .iter()
                .position(|x| x == p)
                .expect("generator in closure")
        })
        .collect();
    let target = VirtAbGroup::permutation_lattice(image)?;

    let mut report = kk.report.clone();
    let emb = SigmaEmbedding {
        degree,
        target,
        perm_index,
        kk,
        report: EmbeddingReport::default(),
    };
    let gens = g.generating_set();
    let mut hom = true;
    for x in &gens {
        for y in &gens {
            hom &= emb.map(&g.mul(x, y)) == emb.target.mul(&emb.map(x), &emb.map(y));
        }
    }
    // Distinct elements of Q must receive distinct permutations.
    let mut idx = emb.perm_index.clone();
    idx.sort_unstable();
    idx.dedup();
    report.homomorphism &= hom;
    report.commutes_with_projection &= idx.len() == q.order();
    if !report.passed() {
        return Err(VirtAbError::EmbeddingVerification(format!(
            "Σ_N embedding failed: {report:?}"
        )));
    }
    Ok(SigmaEmbedding { report, ..emb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::virtab::{corpus, is_torsion_free, subgroup_closure};

    /// `Σ₃ ⋉ Z³` permuting coordinates.
    fn s3_example() -> VirtAbGroup {
        VirtAbGroup::sigma_lattice(3)
    }

    #[test]
    fn klein_and_dihedral_embed() {
        for (g, rank) in [
            (corpus::klein_bottle(), 4),
            (corpus::infinite_dihedral(), 2),
        ] {
            let e = kk_embed(&g).unwrap();
            assert!(e.report.passed());
            assert_eq!(e.wreath.rank(), rank);
            // Exhaustive over Q² × box of translations.
            for a in 0..2 {
                for b in 0..2 {
                    for t in -2..=2 {
                        let mut v = vec![0; g.rank()];
                        v[0] = t;
                        let x = VAElement::new(a, v.clone());
                        let y = VAElement::new(b, v);
                        assert_eq!(e.map(&g.mul(&x, &y)), e.wreath.mul(&e.map(&x), &e.map(&y)));
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_quotient_is_identity_like() {
        let z3 = VirtAbGroup::lattice(3);
        let e = kk_embed(&z3).unwrap();
        assert_eq!(e.wreath.rank(), 3);
        let x = z3.translation(vec![1, -2, 5]);
        assert_eq!(e.map(&x), x);
        let s = embed_sigma_lattice(&z3).unwrap();
        assert_eq!(s.degree, 3);
        assert_eq!(s.target.quotient().order(), 1);
    }

    #[test]
    fn sigma_degrees() {
        assert_eq!(
            embed_sigma_lattice(&corpus::klein_bottle()).unwrap().degree,
            4
        );
        assert_eq!(
            embed_sigma_lattice(&corpus::infinite_dihedral())
                .unwrap()
                .degree,
            2
        );
        let hw = embed_sigma_lattice(&corpus::hantzsche_wendt()).unwrap();
        assert_eq!(hw.degree, 12);
        assert_eq!(hw.target.quotient().order(), 4);
    }

    #[test]
    fn nonabelian_quotient_needs_left_translation() {
        let g = s3_example();
        assert!(kk_embed(&g).unwrap().report.passed());
        let err = kk_embed_with(&g, WreathConvention::RightTranslationInverse).unwrap_err();
        assert!(
            matches!(err, VirtAbError::EmbeddingVerification(_)),
            "{err}"
        );
        // Z as an extension of Z/3 by 3Z: abelian, but of exponent 3.
        let id = vec![vec![1]];
        let z3 = corpus::from_rational_section(
            FiniteGroup::cyclic(3),
            vec![id.clone(), id.clone(), id],
            &[vec![0], vec![1], vec![2]],
            3,
        )
        .unwrap();
        assert!(kk_embed_with(&z3, WreathConvention::RightTranslationInverse).is_err());
        assert!(kk_embed(&z3).is_ok());
        // With Q of exponent 2 both conventions give verified embeddings.
        for (name, k) in corpus::all() {
            let l = kk_embed_with(&k, WreathConvention::LeftTranslation).unwrap();
            let r = kk_embed_with(&k, WreathConvention::RightTranslationInverse).unwrap();
            assert!(l.report.passed() && r.report.passed(), "{name}");
        }
    }

    #[test]
    fn sigma_image_keeps_torsion_verdict() {
        for (name, g) in corpus::all() {
            let s = embed_sigma_lattice(&g).unwrap();
            let images: Vec<VAElement> = g.generating_set().iter().map(|x| s.map(x)).collect();
            let closure = subgroup_closure(&s.target, &images);
            assert_eq!(
                is_torsion_free(&closure.group).torsion_free,
                is_torsion_free(&g).torsion_free,
                "{name}"
            );
        }
    }

    #[test]
    fn labels_are_cycles() {
        let s = embed_sigma_lattice(&corpus::infinite_dihedral()).unwrap();
        let flip = s.perm_index[1];
        assert_eq!(s.target.quotient().label(flip), "(1 2)");
    }
}
