//! Exact integer kernels: binomial coefficients, fraction-free determinants
//! and the alternating binomial sum over the index set `T`.

use std::fmt;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Arbitrary-precision signed integer used for every count in the crate.
pub type ApInt = BigInt;

/// `C(n, k)` with `C(n, k) = 0` for `k < 0` or `k > n`.
///
/// Negative upper indices are rejected rather than extended to generalized
/// binomials.
pub fn binomial(n: i64, k: i64) -> Result<ApInt> {
    if n < 0 {
        return Err(Error::NegativeBinomialTop(n));
    }
    if k < 0 || k > n {
        return Ok(ApInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = ApInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Infallible binomial for call sites whose upper index is known to be nonnegative.
pub(crate) fn choose(n: i64, k: i64) -> ApInt {
    binomial(n, k).expect("upper index checked by caller")
}

/// Square matrix of [`ApInt`], addressed 1-based as `(row, col)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ApMatrix {
    order: usize,
    entries: Vec<ApInt>,
}

impl ApMatrix {
    pub fn zeros(order: usize) -> Self {
        ApMatrix {
            order,
            entries: vec![ApInt::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        ApMatrix::from_fn(
            order,
            |i, j| if i == j { ApInt::one() } else { ApInt::zero() },
        )
    }

    /// Builds the matrix from a function of the 1-based indices.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> ApInt) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 1..=order {
            for j in 1..=order {
                entries.push(f(i, j));
            }
        }
        ApMatrix { order, entries }
    }

    pub fn try_from_fn(
        order: usize,
        mut f: impl FnMut(usize, usize) -> Result<ApInt>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for i in 1..=order {
            for j in 1..=order {
                entries.push(f(i, j)?);
            }
        }
        Ok(ApMatrix { order, entries })
    }

    pub fn from_rows<T: Into<ApInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::NotSquare {
                    rows: order,
                    cols: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(ApMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &ApInt {
        assert!((1..=self.order).contains(&i) && (1..=self.order).contains(&j));
        &self.entries[(i - 1) * self.order + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ApInt) {
        assert!((1..=self.order).contains(&i) && (1..=self.order).contains(&j));
        self.entries[(i - 1) * self.order + (j - 1)] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ApInt]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn det(&self) -> ApInt {
        det(self)
    }
}

impl fmt::Debug for ApMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.rows()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()),
            )
            .finish()
    }
}

impl fmt::Display for ApMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, row) in self.rows().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every division in the elimination is exact. The order-0 matrix has
/// determinant 1.
pub fn det(matrix: &ApMatrix) -> ApInt {
    let n = matrix.order;
    if n == 0 {
        return ApInt::one();
    }
    let mut a: Vec<Vec<ApInt>> = matrix.rows().map(<[ApInt]>::to_vec).collect();
    let mut negate = false;
    let mut prev = ApInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return ApInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][k] = ApInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The index set `T = {(a, b) in Z x Z : a - b in {0, 1}}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IndexSetT;

impl IndexSetT {
    pub fn contains(a: i64, b: i64) -> bool {
        a - b == 0 || a - b == 1
    }

    /// Members `(a, a)` and `(a, a - 1)` for `a` in `[-bound, bound]`.
    pub fn members(bound: i64) -> impl Iterator<Item = (i64, i64)> {
        (-bound..=bound).flat_map(|a| [(a, a), (a, a - 1)])
    }
}

/// `sum over (a, b) in T of (-1)^(a+b) * C(top, base + a*step_a + b*step_b)`.
///
/// Both steps must be at most -1, which makes the sum finite. Along each of
/// the two diagonals of `T` the binomial argument moves by
/// `step_a + step_b <= -2` per unit of `a`, so the surviving terms form an
/// interval of `a` that is computed exactly.
pub fn signed_sum_over_t(top: i64, base: i64, step_a: i64, step_b: i64) -> Result<ApInt> {
    if top < 0 {
        return Err(Error::NegativeBinomialTop(top));
    }
    if step_a >= 0 || step_b >= 0 {
        return Err(Error::UnboundedSum { step_a, step_b });
    }
    let stride = -(step_a + step_b);
    // b = a: argument base - a*stride, sign +1.
    // b = a - 1: argument (base - step_b) - a*stride, sign -1.
    let diagonal = |offset: i64| -> ApInt {
        let lo = Integer::div_ceil(&(offset - top), &stride);
        let hi = Integer::div_floor(&offset, &stride);
        (lo..=hi).map(|a| choose(top, offset - a * stride)).sum()
    };
    Ok(diagonal(base) - diagonal(base - step_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> ApInt {
        ApInt::from(v)
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * cofactor_det(&minor)
            })
            .sum()
    }

    /// Sum over a window far wider than any surviving term.
    fn t_sum_window(top: i64, base: i64, sa: i64, sb: i64) -> ApInt {
        let bound = 3 * (top + base.abs()) + 10;
        IndexSetT::members(bound)
            .map(|(a, b)| {
                let v = choose(top, base + a * sa + b * sb);
                if (a + b).rem_euclid(2) == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2).unwrap(), int(10));
        assert_eq!(binomial(5, -1).unwrap(), int(0));
        assert_eq!(binomial(5, 7).unwrap(), int(0));
        assert_eq!(binomial(0, 0).unwrap(), int(1));
        assert_eq!(binomial(-1, 0), Err(Error::NegativeBinomialTop(-1)));
    }

    #[test]
    fn binomial_large_is_exact() {
        // C(200, 100) = 90548514656103281165404177077484163874504589675413336841320
        let v = binomial(200, 100).unwrap();
        assert_eq!(
            v.to_string(),
            "90548514656103281165404177077484163874504589675413336841320"
        );
    }

    #[test]
    fn pascal_and_symmetry() {
        for n in 1..=60 {
            for k in 0..=n {
                let lhs = binomial(n, k).unwrap();
                assert_eq!(
                    lhs,
                    binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
                );
                assert_eq!(lhs, binomial(n, n - k).unwrap());
            }
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&ApMatrix::identity(3)), int(1));
        assert_eq!(
            det(&ApMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap()),
            int(1)
        );
        assert_eq!(
            det(&ApMatrix::from_rows(&[vec![20, 10], vec![10, 6]]).unwrap()),
            int(20)
        );
        assert_eq!(det(&ApMatrix::zeros(0)), int(1));
    }

    #[test]
    fn det_needs_pivot_swap() {
        let m = ApMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).unwrap();
        assert_eq!(det(&m), int(-2));
        let singular = ApMatrix::from_rows(&[vec![0, 1], vec![0, 5]]).unwrap();
        assert_eq!(det(&singular), int(0));
    }

    #[test]
    fn from_rows_rejects_ragged() {
        assert!(matches!(
            ApMatrix::from_rows(&[vec![1, 2], vec![3]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn t_sum_examples() {
        assert_eq!(signed_sum_over_t(6, 3, -2, -2).unwrap(), int(8));
        assert_eq!(signed_sum_over_t(2, 1, -3, -2).unwrap(), int(2));
        assert_eq!(signed_sum_over_t(0, 0, -5, -5).unwrap(), int(1));
    }

    #[test]
    fn t_sum_rejects_nonnegative_steps() {
        assert_eq!(
            signed_sum_over_t(4, 1, 0, -2),
            Err(Error::UnboundedSum {
                step_a: 0,
                step_b: -2
            })
        );
        assert!(signed_sum_over_t(4, 1, -2, 3).is_err());
        assert!(signed_sum_over_t(-1, 0, -2, -2).is_err());
    }

    #[test]
    fn index_set_members() {
        let members: Vec<_> = IndexSetT::members(1).collect();
        assert_eq!(
            members,
            vec![(-1, -1), (-1, -2), (0, 0), (0, -1), (1, 1), (1, 0)]
        );
        assert!(members.iter().all(|&(a, b)| IndexSetT::contains(a, b)));
        assert!(!IndexSetT::contains(0, 1));
    }

    #[test]
    fn boundary_sum_vanishes() {
        for m in 2..=12i64 {
            for n in 2..=12i64 {
                for k in 0..=(m - 2).min(n - 2) {
                    for l in 0..=(m - 2).min(n - 2) {
                        let v = signed_sum_over_t(m + k - 2, m - 1, k - m, l - n).unwrap();
                        assert!(v.is_zero(), "m={m} n={n} k={k} l={l}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_identities() {
        for m in 2..=9i64 {
            for n in 2..=9i64 {
                for k in 0..=(m - 2).min(n - 2) {
                    for l in 0..=(m - 2).min(n - 2) {
                        for i in -4..=4 {
                            for j in [i, i - 1] {
                                let lhs =
                                    binomial(m + k - 2, m - 1 + i * (k - m) + j * (l - n)).unwrap();
                                let rhs =
                                    binomial(m + k - 2, m - 1 + (1 - i) * (k - m) - j * (l - n))
                                        .unwrap();
                                assert_eq!(lhs, rhs);
                                if m == l + 2 {
                                    let lhs =
                                        binomial(m + n - 4, m - 3 + i * (k - m) + j * (l - n))
                                            .unwrap();
                                    let rhs = binomial(
                                        m + n - 4,
                                        m - 3 - i * (k - m) - (j + 1) * (l - n),
                                    )
                                    .unwrap();
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn t_sum_matches_wide_window(top in 0i64..30, base in -40i64..70, sa in -7i64..=-1, sb in -7i64..=-1) {
            prop_assert_eq!(signed_sum_over_t(top, base, sa, sb).unwrap(), t_sum_window(top, base, sa, sb));
        }

        #[test]
        fn det_matches_cofactor(n in 0usize..=4, seed in proptest::collection::vec(-9i64..=9, 16)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
            let m = ApMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(det(&m), int(cofactor_det(&rows)));
        }

        #[test]
        fn det_is_multiplicative(n in 2usize..=3, xs in proptest::collection::vec(-9i64..=9, 9), ys in proptest::collection::vec(-9i64..=9, 9)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| xs[i * n..(i + 1) * n].to_vec()).collect();
            let b: Vec<Vec<i64>> = (0..n).map(|i| ys[i * n..(i + 1) * n].to_vec()).collect();
            let ab: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum()).collect())
                .collect();
            let lhs = det(&ApMatrix::from_rows(&ab).unwrap());
            prop_assert_eq!(&lhs, &int(cofactor_det(&ab)));
            prop_assert_eq!(lhs, det(&ApMatrix::from_rows(&a).unwrap()) * det(&ApMatrix::from_rows(&b).unwrap()));
        }

        #[test]
        fn hockey_stick(n in 1i64..=40, a_frac in 0.0f64..1.0, b_frac in 0.0f64..1.0, k_frac in 0.0f64..=1.0) {
            let a = 1 + ((n - 1) as f64 * a_frac) as i64;
            let b = a + ((n - a) as f64 * b_frac) as i64;
            let k = (n as f64 * k_frac) as i64;
            let lhs: ApInt = (a..=b).map(|l| binomial(n - l, k).unwrap()).sum();
            let rhs = binomial(n - a + 1, k + 1).unwrap() - binomial(n - b, k + 1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
