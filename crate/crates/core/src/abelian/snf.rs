use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k)
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form by minimal-pivot elimination.
///
/// The pivot is always the entry of least absolute value in the remaining
/// block; rows and columns are reduced against it until it divides the
/// whole block.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t..rows, t..cols) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&p);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&p);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // A remainder is smaller than the pivot: move it into place.
                let r = (t + 1..rows)
                    .filter(|&i| !a[(i, t)].is_zero())
                    .map(|i| (i, t))
                    .chain(
                        (t + 1..cols)
                            .filter(|&j| !a[(t, j)].is_zero())
                            .map(|j| (t, j)),
                    )
                    .min_by(|x, y| a[*x].abs().cmp(&a[*y].abs()))
                    .expect("nonzero remainder");
                a.swap_rows(t, r.0);
                u.swap_rows(t, r.0);
                a.swap_cols(t, r.1);
                v.swap_cols(t, r.1);
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d: a, v }
}

fn min_abs_entry(
    a: &IntMatrix,
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|b| a[(i, j)].abs() < a[b].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Row-style Hermite normal form of the row span of `m`.
///
/// Returns the nonzero rows in echelon order: pivots are positive, and
/// entries above a pivot lie in `[0, pivot)`. The result depends only on
/// the lattice spanned by the rows.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at r.
        loop {
            let Some(piv) = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()))
            else {
                break;
            };
            a.swap_rows(r, piv);
            let p = a[(r, c)].clone();
            let mut done = true;
            for i in r + 1..rows {
                if !a[(i, c)].is_zero() {
                    let q = -a[(i, c)].div_floor(&p);
                    a.add_row_multiple(i, r, &q);
                    done &= a[(i, c)].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        let p = a[(r, c)].clone();
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&p);
            a.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    let kept: Vec<Vec<BigInt>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows_with_cols(&kept, cols)
}

/// Some integer solution of `N·x = b`, or `None` if there is none.
pub fn solve_integer(n: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(n.rows(), b.len(), "right-hand side length");
    let snf = smith_normal_form(n);
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); n.cols()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(d) => {
                if !ci.is_multiple_of(d) {
                    return None;
                }
                y[i] = ci / d;
            }
            None if !ci.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis of the integer kernel `{x : N·x = 0}`, as rows.
pub fn kernel_basis(n: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(n);
    let r = snf.rank();
    let vt = snf.v.transpose();
    let rows: Vec<Vec<BigInt>> = (r..n.cols()).map(|j| vt.row(j).to_vec()).collect();
    IntMatrix::from_rows_with_cols(&rows, n.cols())
}

/// Invariant factors from determinantal divisors: `dₖ = Δₖ/Δₖ₋₁` where `Δₖ`
/// is the gcd of all `k×k` minors. Exponential in the dimension; an
/// independent check on [`smith_normal_form`] for small matrices.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                g = g.gcd(&m.minor(&rs, &cs).determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(diag.iter().all(|d| d.is_positive()));
        s
    }

    #[test]
    fn two_by_three_diagonal() {
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.diagonal(), big(&[1, 6]));
    }

    #[test]
    fn zero_matrix_keeps_identity() {
        let z = IntMatrix::zeros(3, 2);
        let s = check(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn column_vector() {
        let s = check(&IntMatrix::from_i64(2, 1, &[2, 0]));
        assert_eq!(s.d, IntMatrix::from_i64(2, 1, &[2, 0]));
    }

    #[test]
    fn hermite_is_lattice_invariant() {
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 0, 6]);
        let b = IntMatrix::from_i64(3, 2, &[2, 10, 2, 4, 4, 2]);
        // Both span {(x, y) : 2 | x, y ≡ 2x mod 6}.
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        assert_eq!(
            hermite_normal_form(&a),
            IntMatrix::from_i64(2, 2, &[2, 4, 0, 6])
        );
        let z = hermite_normal_form(&IntMatrix::zeros(2, 3));
        assert_eq!((z.rows(), z.cols()), (0, 3));
    }

    #[test]
    fn affine_solvability() {
        // 2x = 1 has no integer solution; 2x = 4 does.
        let n = IntMatrix::from_i64(1, 1, &[2]);
        assert_eq!(solve_integer(&n, &big(&[1])), None);
        assert_eq!(solve_integer(&n, &big(&[4])), Some(big(&[2])));
        let n = IntMatrix::from_i64(2, 2, &[0, 0, 0, 2]);
        assert_eq!(solve_integer(&n, &big(&[1, 0])), None);
        let x = solve_integer(&n, &big(&[0, -6])).unwrap();
        assert_eq!(n.mul_vec(&x), big(&[0, -6]));
    }

    #[test]
    fn kernel_of_rank_one() {
        let n = IntMatrix::from_i64(1, 3, &[2, 4, 6]);
        let k = kernel_basis(&n);
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            assert!(n.mul_vec(k.row(i)).iter().all(Zero::is_zero));
        }
        // The kernel is saturated: its HNF has unit content per row.
        let h = hermite_normal_form(&k);
        assert_eq!(h.rows(), 2);
    }

    fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn snf_contract(m in matrix_strategy()) {
            check(&m);
        }

        #[test]
        fn snf_agrees_with_minors(e in prop::collection::vec(-9i64..=9, 16)) {
            let m = IntMatrix::from_i64(4, 4, &e);
            prop_assert_eq!(smith_normal_form(&m).diagonal(), invariant_factors_by_minors(&m));
        }

        #[test]
        fn hnf_spans_same_lattice(m in matrix_strategy()) {
            let h = hermite_normal_form(&m);
            // Each original row is an integer combination of the HNF rows and vice versa.
            for i in 0..m.rows() {
                prop_assert!(solve_integer(&h.transpose(), m.row(i)).is_some());
            }
            for i in 0..h.rows() {
                prop_assert!(solve_integer(&m.transpose(), h.row(i)).is_some());
            }
            prop_assert_eq!(hermite_normal_form(&h), h);
        }
    }
}
