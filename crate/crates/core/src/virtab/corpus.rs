//! Small extensions used as examples and test fixtures: flat-manifold
//! groups and their degenerations.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::group::{add, mat_vec, sub, Mat};
use super::{make_virtab, FiniteGroup, VirtAbError, VirtAbGroup};

/// `Z/2` labelled `e, flip`.
pub fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
        .with_labels(vec!["e".to_string(), "flip".to_string()])
        .expect("distinct labels")
}

/// Extension determined by an affine section `q ↦ (M_q, t_q/denom)`: the
/// cocycle is `c(a,b) = (t_a + M_a t_b − t_{ab})/denom`, which must be
/// integral.
pub fn from_rational_section(
    q: FiniteGroup,
    action: Vec<Mat>,
    translations: &[Vec<i64>],
    denom: i64,
) -> Result<VirtAbGroup, VirtAbError> {
    let n = translations.first().map_or(0, Vec::len);
    if translations.len() != q.order() || action.len() != q.order() {
        return Err(VirtAbError::Dimension(
            "one translation and one matrix per element of Q",
        ));
    }
    let mut c = BTreeMap::new();
    for a in 0..q.order() {
        for b in 0..q.order() {
            let num = sub(
                &add(&translations[a], &mat_vec(&action[a], &translations[b])),
                &translations[q.mul(a, b)],
            );
            if num.iter().any(|x| x % denom != 0) {
                return Err(VirtAbError::NonIntegralSection { q1: a, q2: b });
            }
            let v: Vec<i64> = num.iter().map(|x| x / denom).collect();
            if v.iter().any(|&x| x != 0) {
                c.insert((a, b), v);
            }
        }
    }
    make_virtab(q, n, action, &c)
}

fn diag(d: &[i64]) -> Mat {
    (0..d.len())
        .map(|i| {
            (0..d.len())
                .map(|j| if i == j { d[i] } else { 0 })
                .collect()
        })
        .collect()
}

/// `Z/2 ⋉ Z` by `−1`.
pub fn infinite_dihedral() -> VirtAbGroup {
    make_virtab(z2(), 1, vec![diag(&[1]), diag(&[-1])], &BTreeMap::new()).expect("valid")
}

/// Klein bottle group: `Z/2` acting by `diag(1, −1)`, `c(flip, flip) = (1, 0)`.
pub fn klein_bottle() -> VirtAbGroup {
    let mut c = BTreeMap::new();
    c.insert((1, 1), vec![1, 0]);
    make_virtab(z2(), 2, vec![diag(&[1, 1]), diag(&[1, -1])], &c).expect("valid")
}

/// Klein bottle action with the cocycle removed; `flip` then fixes a point.
pub fn klein_bottle_degenerate() -> VirtAbGroup {
    make_virtab(
        z2(),
        2,
        vec![diag(&[1, 1]), diag(&[1, -1])],
        &BTreeMap::new(),
    )
    .expect("valid")
}

/// `Z/2 × Z`: trivial action, zero cocycle.
pub fn z2_times_z() -> VirtAbGroup {
    make_virtab(z2(), 1, Vec::new(), &BTreeMap::new()).expect("valid")
}

/// Flat 3-manifold with holonomy `Z/2` acting by `diag(1, −1, −1)` and a
/// half translation along the fixed axis.
pub fn dicosm() -> VirtAbGroup {
    from_rational_section(
        z2(),
        vec![diag(&[1, 1, 1]), diag(&[1, -1, -1])],
        &[vec![0, 0, 0], vec![1, 0, 0]],
        2,
    )
    .expect("valid")
}

/// Hantzsche–Wendt group: holonomy `Z/2 × Z/2` by diagonal sign changes,
/// with screw translations `a: (½,½,0)`, `b: (0,½,½)`.
pub fn hantzsche_wendt() -> VirtAbGroup {
    hw_with(&[vec![0, 0, 0], vec![0, 1, 1], vec![1, 1, 0], vec![1, 0, 1]])
}

/// Hantzsche–Wendt holonomy with zero translations: split, with torsion.
pub fn hantzsche_wendt_degenerate() -> VirtAbGroup {
    hw_with(&[vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]])
}

fn hw_with(doubled: &[Vec<i64>]) -> VirtAbGroup {
    // Index a·2 + b in Z/2 × Z/2.
    let q = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
        .with_labels(vec![
            "e".to_string(),
            "b".to_string(),
            "a".to_string(),
            "ab".to_string(),
        ])
        .expect("distinct labels");
    let action = vec![
        diag(&[1, 1, 1]),
        diag(&[-1, 1, -1]),
        diag(&[1, -1, -1]),
        diag(&[-1, -1, 1]),
    ];
    from_rational_section(q, action, doubled, 2).expect("valid")
}

/// All corpus groups with their names.
pub fn all() -> Vec<(&'static str, VirtAbGroup)> {
    vec![
        ("infinite_dihedral", infinite_dihedral()),
        ("klein_bottle", klein_bottle()),
        ("klein_bottle_degenerate", klein_bottle_degenerate()),
        ("z2_times_z", z2_times_z()),
        ("torus2", VirtAbGroup::lattice(2)),
        ("torus3", VirtAbGroup::lattice(3)),
        ("dicosm", dicosm()),
        ("hantzsche_wendt", hantzsche_wendt()),
        ("hantzsche_wendt_degenerate", hantzsche_wendt_degenerate()),
    ]
}
