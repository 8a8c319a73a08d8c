//! Multiplicity formulas for determinantal and pfaffian rings, expressed as
//! determinants of binomial sums. Each one counts a family of
//! non-intersecting paths, which is how the tests check them.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::{binomial, signed_sum_over_t, ApInt, ApMatrix, IndexSetT};
use crate::pathcount::count_disjoint_families_bruteforce;
use crate::region::{LadderRegion, Point, Region};

/// Row indices `a` and column indices `b` of the minor defining the ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorParams {
    pub m: usize,
    pub n: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl MinorParams {
    pub fn new(m: usize, n: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let p = MinorParams { m, n, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    fn validate(&self) -> Result<()> {
        if self.a.len() != self.b.len() {
            return Err(invalid(format!(
                "row and column index lists differ in length ({} vs {})",
                self.a.len(),
                self.b.len()
            )));
        }
        check_increasing("a", &self.a, self.m)?;
        check_increasing("b", &self.b, self.n)
    }
}

fn check_increasing(name: &str, seq: &[usize], bound: usize) -> Result<()> {
    if seq.first().is_some_and(|&x| x < 1) || seq.last().is_some_and(|&x| x > bound) {
        return Err(invalid(format!(
            "{name} must lie in 1..={bound}, got {seq:?}"
        )));
    }
    if seq.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!(
            "{name} must be strictly increasing, got {seq:?}"
        )));
    }
    Ok(())
}

/// A diagonal ladder of an `m x n` matrix with cut depths `k` and `l`, and
/// the ideal of its `(r+1)`-minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LadderMinorParams {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub r: usize,
}

impl LadderMinorParams {
    /// Requires `k, l <= min(m-2, n-2)` and `r < min(m-k, n-l)`. `r = 0`
    /// is accepted and describes the polynomial ring.
    pub fn new(m: usize, n: usize, k: usize, l: usize, r: usize) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(invalid(format!("need m, n >= 2, got m={m} n={n}")));
        }
        let cap = (m - 2).min(n - 2);
        if k > cap || l > cap {
            return Err(invalid(format!(
                "need k, l <= min(m-2, n-2) = {cap}, got k={k} l={l}"
            )));
        }
        if r >= (m - k).min(n - l) {
            return Err(invalid(format!(
                "need r < min(m-k, n-l) = {}, got r={r}",
                (m - k).min(n - l)
            )));
        }
        Ok(LadderMinorParams { m, n, k, l, r })
    }

    /// Every valid parameter set with `2 <= m, n <= max_dim` and
    /// `1 <= r <= max_r`.
    pub fn all(max_dim: usize, max_r: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for m in 2..=max_dim {
            for n in 2..=max_dim {
                let cap = (m - 2).min(n - 2);
                for k in 0..=cap {
                    for l in 0..=cap {
                        for r in 1..=max_r {
                            if let Ok(p) = Self::new(m, n, k, l, r) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Sources `(i, n)` and sinks `(m, i)` for `i = 1..=r`.
    pub fn endpoints(&self) -> (Vec<Point>, Vec<Point>) {
        let sources = (1..=self.r).map(|i| Point::new(i, self.n)).collect();
        let sinks = (1..=self.r).map(|i| Point::new(self.m, i)).collect();
        (sources, sinks)
    }

    pub fn region(&self) -> Result<LadderRegion> {
        LadderRegion::diagonal_two_sided(self.m, self.n, self.k, self.l)
    }
}

/// A ladder of width `l` in an `n x n` skew-symmetric matrix and the ideal
/// of its `2r`-pfaffians.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PfaffianParams {
    pub n: usize,
    pub l: usize,
    pub r: usize,
}

impl PfaffianParams {
    /// Requires `1 <= r < l < n` and `2r <= n`.
    pub fn new(n: usize, l: usize, r: usize) -> Result<Self> {
        if r < 1 || r >= l || l >= n || 2 * r > n {
            return Err(invalid(format!(
                "need 1 <= r < l < n and 2r <= n, got n={n} l={l} r={r}"
            )));
        }
        Ok(PfaffianParams { n, l, r })
    }
}

fn to_i64(x: usize) -> i64 {
    i64::try_from(x).expect("parameter fits in i64")
}

/// `det[C(m+n-a_i-b_j, m-a_i)]`.
pub fn multiplicity_generic(p: &MinorParams) -> Result<ApInt> {
    p.validate()?;
    let (m, n) = (to_i64(p.m), to_i64(p.n));
    let matrix = ApMatrix::try_from_fn(p.r(), |i, j| {
        let (a, b) = (to_i64(p.a[i - 1]), to_i64(p.b[j - 1]));
        binomial(m + n - a - b, m - a)
    })?;
    Ok(matrix.det())
}

/// Ideal of all `(r+1)`-minors: `det[C(m+n-i-j, m-i)]`, `1 <= r < min(m, n)`.
pub fn multiplicity_maximal(m: usize, n: usize, r: usize) -> Result<ApInt> {
    if r < 1 || r >= m.min(n) {
        return Err(invalid(format!(
            "need 1 <= r <= min(m, n) - 1, got m={m} n={n} r={r}"
        )));
    }
    let idx: Vec<usize> = (1..=r).collect();
    multiplicity_generic(&MinorParams::new(m, n, idx.clone(), idx)?)
}

/// Entry `(i, j)` of the ladder matrix through the shared kernel, with the
/// row-dependent exponent folded into base and steps.
pub fn ladder_entry(p: &LadderMinorParams, i: usize, j: usize) -> Result<ApInt> {
    let (m, n, k, l) = (to_i64(p.m), to_i64(p.n), to_i64(p.k), to_i64(p.l));
    let (i, j) = (to_i64(i), to_i64(j));
    signed_sum_over_t(m + n - i - j, m - i, k - m + i - 1, l - n - i + 1)
}

/// Entry `(i, j)` evaluated term by term from
/// `C(m+n-i-j, m-1 + (a-b-1)(i-1) + a(k-m) + b(l-n))` over a window of `T`
/// wide enough to hold every nonzero term.
pub fn ladder_entry_direct(p: &LadderMinorParams, i: usize, j: usize) -> Result<ApInt> {
    let (m, n, k, l) = (to_i64(p.m), to_i64(p.n), to_i64(p.k), to_i64(p.l));
    let (i, j) = (to_i64(i), to_i64(j));
    let top = m + n - i - j;
    if top < 0 {
        return Err(invalid(format!("entry ({i},{j}) has negative top {top}")));
    }
    // Each diagonal of T moves the argument by at least 2 per step, so
    // beyond this window every argument is outside [0, top].
    let bound = top + m + n + k + l + i + 2;
    let mut sum = ApInt::from(0);
    for (a, b) in IndexSetT::members(bound) {
        let arg = m - 1 + (a - b - 1) * (i - 1) + a * (k - m) + b * (l - n);
        let term = binomial(top, arg)?;
        if (a + b) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Entry `(i, j)` as the corner-to-corner count of a smaller diagonal
/// ladder: `m, n, l` replaced by `m-i+1, n-j+1, l-i-j+2`. The closed form
/// is applied even when the substituted ladder is not a valid region.
pub fn ladder_entry_substituted(p: &LadderMinorParams, i: usize, j: usize) -> Result<ApInt> {
    let (i, j) = (to_i64(i), to_i64(j));
    let m2 = to_i64(p.m) - i + 1;
    let n2 = to_i64(p.n) - j + 1;
    let l2 = to_i64(p.l) - i - j + 2;
    let k = to_i64(p.k);
    signed_sum_over_t(m2 + n2 - 2, m2 - 1, k - m2, l2 - n2)
}

/// The substituted ladder `(m-i+1, n-j+1, k, l-i-j+2)` when it is a valid
/// diagonal ladder, else `None`.
pub fn substituted_ladder(
    p: &LadderMinorParams,
    i: usize,
    j: usize,
) -> Option<(usize, usize, usize, usize)> {
    let m2 = (p.m + 1).checked_sub(i)?;
    let n2 = (p.n + 1).checked_sub(j)?;
    let l2 = (p.l + 2).checked_sub(i + j)?;
    LadderRegion::diagonal_two_sided(m2, n2, p.k, l2)
        .ok()
        .map(|_| (m2, n2, p.k, l2))
}

/// Number of non-intersecting families from `(i, n)` to `(m, i)` on the
/// ladder, by exhaustive search. When `r >= n - k` the last sinks lie past
/// the end of row `m`; no path can end there, so the count is 0.
pub fn ladder_families_bruteforce(p: &LadderMinorParams, cap: usize) -> Result<ApInt> {
    let region = p.region()?;
    if p.r == 0 {
        return Ok(ApInt::from(1));
    }
    let (sources, sinks) = p.endpoints();
    if sources.iter().chain(&sinks).any(|&q| !region.contains(q)) {
        return Ok(ApInt::from(0));
    }
    Ok(count_disjoint_families_bruteforce(&region, &sources, &sinks, cap)?.0)
}

/// Multiplicity of the ladder determinantal ring of `(r+1)`-minors.
pub fn multiplicity_ladder(p: &LadderMinorParams) -> Result<ApInt> {
    let p = LadderMinorParams::new(p.m, p.n, p.k, p.l, p.r)?;
    let matrix = ApMatrix::try_from_fn(p.r, |i, j| ladder_entry(&p, i, j))?;
    Ok(matrix.det())
}

/// One-sided ladder (`l = 0`):
/// `det[C(m+n-i-j, m-i) - C(m+n-i-j, k-1)]`.
pub fn multiplicity_one_sided_ladder(m: usize, n: usize, k: usize, r: usize) -> Result<ApInt> {
    if m < 2 || n < 2 || k > (m - 2).min(n - 2) {
        return Err(invalid(format!(
            "need m, n >= 2 and k <= min(m-2, n-2), got m={m} n={n} k={k}"
        )));
    }
    if r >= m - k || r >= n {
        return Err(invalid(format!(
            "need r < m-k and r < n, got m={m} n={n} k={k} r={r}"
        )));
    }
    let (mi, ni, ki) = (to_i64(m), to_i64(n), to_i64(k));
    let matrix = ApMatrix::try_from_fn(r, |i, j| {
        let (i, j) = (to_i64(i), to_i64(j));
        let top = mi + ni - i - j;
        Ok(binomial(top, mi - i)? - binomial(top, ki - 1)?)
    })?;
    Ok(matrix.det())
}

/// Entry `(i, j)` of the pfaffian ladder matrix.
pub fn pfaffian_entry(p: &PfaffianParams, i: usize, j: usize) -> Result<ApInt> {
    let (n, l, r) = (to_i64(p.n), to_i64(p.l), to_i64(p.r));
    let (i, j) = (to_i64(i), to_i64(j));
    signed_sum_over_t(2 * n - 2 * r - i - j, n - r - i, -r + i - 1, r - l - i)
}

/// Multiplicity of the ladder pfaffian ring of `2r`-pfaffians: an
/// `(r-1) x (r-1)` determinant, so `r = 1` gives 1.
pub fn multiplicity_pfaffian(p: &PfaffianParams) -> Result<ApInt> {
    let p = PfaffianParams::new(p.n, p.l, p.r)?;
    let matrix = ApMatrix::try_from_fn(p.r - 1, |i, j| pfaffian_entry(&p, i, j))?;
    Ok(matrix.det())
}

/// Pfaffians of the full skew-symmetric matrix:
/// `det[C(2n-2r-i-j, n-r-i) - C(2n-2r-i-j, n-2r-1)]`.
pub fn multiplicity_pfaffian_full(n: usize, r: usize) -> Result<ApInt> {
    if r < 1 || 2 * r > n {
        return Err(invalid(format!("need r >= 1 and 2r <= n, got n={n} r={r}")));
    }
    let (ni, ri) = (to_i64(n), to_i64(r));
    let matrix = ApMatrix::try_from_fn(r - 1, |i, j| {
        let (i, j) = (to_i64(i), to_i64(j));
        let top = 2 * ni - 2 * ri - i - j;
        Ok(binomial(top, ni - ri - i)? - binomial(top, ni - 2 * ri - 1)?)
    })?;
    Ok(matrix.det())
}
