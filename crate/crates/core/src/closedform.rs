//! Closed forms for corner-to-corner path counts on diagonal ladders and
//! the binomial identities that follow from them.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::{binomial, signed_sum_over_t, ApInt};
use crate::region::check_diagonal_params;

/// Grid size `m x n` with an upper diagonal cut of depth `k` and a lower
/// one of depth `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagonalLadderParams {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
}

impl DiagonalLadderParams {
    pub fn new(m: usize, n: usize, k: usize, l: usize) -> Result<Self> {
        check_diagonal_params(m, n, k, l)?;
        Ok(DiagonalLadderParams { m, n, k, l })
    }

    /// Every valid parameter set with `m, n` in `[min_dim, max_dim]`.
    pub fn all(min_dim: usize, max_dim: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for m in min_dim.max(2)..=max_dim {
            for n in min_dim.max(2)..=max_dim {
                let cap = (m - 2).min(n - 2);
                for k in 0..=cap {
                    for l in 0..=cap {
                        out.push(DiagonalLadderParams { m, n, k, l });
                    }
                }
            }
        }
        out
    }
}

/// Paths from `(1, n)` to `(m, 1)` on the two-sided diagonal ladder.
pub fn two_sided_count(p: DiagonalLadderParams) -> Result<ApInt> {
    check_diagonal_params(p.m, p.n, p.k, p.l)?;
    let (m, n, k, l) = (p.m as i64, p.n as i64, p.k as i64, p.l as i64);
    signed_sum_over_t(m + n - 2, m - 1, k - m, l - n)
}

/// One-sided case (`l = 0`): `C(m+n-2, m-1) - C(m+n-2, k-1)`.
pub fn one_sided_count(m: usize, n: usize, k: usize) -> Result<ApInt> {
    check_diagonal_params(m, n, k, 0)?;
    let (m, n, k) = (m as i64, n as i64, k as i64);
    Ok(binomial(m + n - 2, m - 1)? - binomial(m + n - 2, k - 1)?)
}

fn require_positive(m: i64) -> Result<()> {
    if m < 1 {
        return Err(invalid(format!("need m >= 1, got {m}")));
    }
    Ok(())
}

/// `sum over T of (-1)^(i+j) C(2m, m - 2i - 2j)`, which equals `2^m`.
pub fn power_of_two_lhs(m: i64) -> Result<ApInt> {
    require_positive(m)?;
    signed_sum_over_t(2 * m, m, -2, -2)
}

/// `sum over T of (-1)^(i+j) C(2m, m - 3i - 2j)`, which equals `F_{2m+1}`.
pub fn fibonacci_lhs_odd(m: i64) -> Result<ApInt> {
    require_positive(m)?;
    signed_sum_over_t(2 * m, m, -3, -2)
}

/// `sum over T of (-1)^(i+j) C(2m-1, m - 3i - 2j)`, which equals `F_{2m}`.
pub fn fibonacci_lhs_even(m: i64) -> Result<ApInt> {
    require_positive(m)?;
    signed_sum_over_t(2 * m - 1, m, -3, -2)
}

/// Fibonacci numbers with `F_1 = F_2 = 1`.
pub fn fibonacci_reference(i: i64) -> Result<ApInt> {
    if i < 1 {
        return Err(invalid(format!("Fibonacci index must be >= 1, got {i}")));
    }
    let (mut a, mut b) = (ApInt::zero(), ApInt::one());
    for _ in 1..i {
        let next = &a + &b;
        a = b;
        b = next;
    }
    Ok(b)
}
