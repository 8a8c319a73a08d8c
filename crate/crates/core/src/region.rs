//! Grid regions: the full `m x n` grid, two-sided ladders described by
//! per-row column intervals, and explicit point sets.
//!
//! All regions share one step relation: a path moves from `(i, j)` to
//! `(i + 1, j)` or `(i, j - 1)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A grid point, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub row: usize,
    pub col: usize,
}

impl Point {
    pub const fn new(row: usize, col: usize) -> Self {
        Point { row, col }
    }

    /// `self <= other` in the path order: `other` can be the start of a path ending at `self`.
    pub fn precedes(self, other: Point) -> bool {
        self.row >= other.row && self.col <= other.col
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Point {
    fn from((row, col): (usize, usize)) -> Self {
        Point { row, col }
    }
}

/// A finite set of grid points with bounding box `rows x cols`.
pub trait Region {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn contains(&self, p: Point) -> bool;

    fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for row in 1..=self.rows() {
            for col in 1..=self.cols() {
                let p = Point::new(row, col);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

impl<R: Region + ?Sized> Region for &R {
    fn rows(&self) -> usize {
        (**self).rows()
    }
    fn cols(&self) -> usize {
        (**self).cols()
    }
    fn contains(&self, p: Point) -> bool {
        (**self).contains(p)
    }
}

/// Ladder region stored as one column interval `[lo_i, hi_i]` per row,
/// with both bounds weakly decreasing down the rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderRegion {
    n: usize,
    lo: Vec<usize>,
    hi: Vec<usize>,
}

impl LadderRegion {
    pub fn new(n: usize, lo: Vec<usize>, hi: Vec<usize>) -> Result<Self> {
        if lo.is_empty() || n == 0 {
            return Err(Error::MalformedRegion("empty grid".into()));
        }
        if lo.len() != hi.len() {
            return Err(Error::MalformedRegion(format!(
                "{} lower bounds for {} upper bounds",
                lo.len(),
                hi.len()
            )));
        }
        for (idx, (&a, &b)) in lo.iter().zip(&hi).enumerate() {
            if a < 1 || a > b || b > n {
                return Err(Error::MalformedRegion(format!(
                    "row {} needs 1 <= lo <= hi <= {n}, got lo={a} hi={b}",
                    idx + 1
                )));
            }
        }
        for i in 1..lo.len() {
            if lo[i] > lo[i - 1] || hi[i] > hi[i - 1] {
                return Err(Error::MalformedRegion(format!(
                    "row bounds must be weakly decreasing, row {} breaks it",
                    i + 1
                )));
            }
        }
        Ok(LadderRegion { n, lo, hi })
    }

    /// The full grid `{1..m} x {1..n}`.
    pub fn rectangle(m: usize, n: usize) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(invalid(format!("rectangle needs m, n >= 1, got {m} x {n}")));
        }
        Ok(LadderRegion {
            n,
            lo: vec![1; m],
            hi: vec![n; m],
        })
    }

    /// Two-sided diagonal ladder: row `i` spans
    /// `max(1, l - i + 2) <= j <= min(n, n + m - k - i)`.
    pub fn diagonal_two_sided(m: usize, n: usize, k: usize, l: usize) -> Result<Self> {
        check_diagonal_params(m, n, k, l)?;
        let (m_, n_, k_, l_) = (m as i64, n as i64, k as i64, l as i64);
        let lo = (1..=m_).map(|i| 1.max(l_ - i + 2) as usize).collect();
        let hi = (1..=m_)
            .map(|i| n_.min(n_ + m_ - k_ - i) as usize)
            .collect();
        LadderRegion::new(n, lo, hi)
    }

    /// Region of the grid cut by an upper-right boundary path from `(k1, n)`
    /// to `(m, k2)` and a lower-left one from `(1, k3)` to `(k4, 1)`.
    /// Boundary points belong to the region.
    pub fn from_boundaries(
        m: usize,
        n: usize,
        upper: &BoundaryPath,
        lower: &BoundaryPath,
    ) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(invalid(format!("grid needs m, n >= 1, got {m} x {n}")));
        }
        let (first, last) = (upper.first(), upper.last());
        if first.col != n
            || !(2..=m).contains(&first.row)
            || last.row != m
            || !(2..=n).contains(&last.col)
        {
            return Err(Error::MalformedRegion(format!(
                "upper boundary must run from (k1,{n}) to ({m},k2) with k1, k2 > 1, got {first} to {last}"
            )));
        }
        let (first_l, last_l) = (lower.first(), lower.last());
        if first_l.row != 1
            || !(1..n).contains(&first_l.col)
            || last_l.col != 1
            || !(1..m).contains(&last_l.row)
        {
            return Err(Error::MalformedRegion(format!(
                "lower boundary must run from (1,k3) to (k4,1) with k3 < {n}, k4 < {m}, got {first_l} to {last_l}"
            )));
        }
        let mut hi = vec![n; m];
        let mut lo = vec![1; m];
        for row in first.row..=m {
            hi[row - 1] = upper
                .max_col_on_row(row)
                .expect("chain covers every row it spans");
        }
        for row in 1..=last_l.row {
            lo[row - 1] = lower
                .min_col_on_row(row)
                .expect("chain covers every row it spans");
        }
        for i in 0..m {
            if lo[i] > hi[i] {
                return Err(Error::MalformedRegion(format!(
                    "boundaries cross on row {}: lo={} > hi={}",
                    i + 1,
                    lo[i],
                    hi[i]
                )));
            }
        }
        let region = LadderRegion::new(n, lo, hi)?;
        if let Some(p) = upper
            .points()
            .iter()
            .chain(lower.points())
            .find(|&&p| !region.contains(p))
        {
            return Err(Error::MalformedRegion(format!("boundaries cross at {p}")));
        }
        Ok(region)
    }

    pub fn m(&self) -> usize {
        self.lo.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lowest column of 1-based row `i`.
    pub fn lo(&self, i: usize) -> usize {
        self.lo[i - 1]
    }

    /// Highest column of 1-based row `i`.
    pub fn hi(&self, i: usize) -> usize {
        self.hi[i - 1]
    }

    pub fn lo_bounds(&self) -> &[usize] {
        &self.lo
    }

    pub fn hi_bounds(&self) -> &[usize] {
        &self.hi
    }

    pub fn len(&self) -> usize {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.is_empty()
    }

    /// Column where the upper boundary meets the last row.
    pub fn upper_corner_col(&self) -> usize {
        self.hi(self.m())
    }

    /// First row whose interval starts at column 1 (where the lower
    /// boundary reaches the first column).
    pub fn lower_corner_row(&self) -> usize {
        self.lo
            .iter()
            .position(|&c| c == 1)
            .map_or(self.m(), |i| i + 1)
    }

    /// True when the region is bounded by two boundary chains: the top row
    /// reaches column `n`, the bottom row starts at column 1 and adjacent
    /// rows overlap.
    pub fn is_two_sided(&self) -> bool {
        let m = self.m();
        self.hi[0] == self.n && self.lo[m - 1] == 1 && (1..m).all(|i| self.lo[i - 1] <= self.hi[i])
    }

    /// Every row interval of `self` lies inside the matching one of `other`.
    pub fn is_subregion_of(&self, other: &LadderRegion) -> bool {
        self.m() == other.m()
            && self.n == other.n
            && (0..self.m()).all(|i| other.lo[i] <= self.lo[i] && self.hi[i] <= other.hi[i])
    }

    /// Plain-text form: one `row lo hi` line per row.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.m() {
            s.push_str(&format!("{} {} {}\n", i + 1, self.lo[i], self.hi[i]));
        }
        s
    }
}

impl Region for LadderRegion {
    fn rows(&self) -> usize {
        self.m()
    }
    fn cols(&self) -> usize {
        self.n
    }
    fn contains(&self, p: Point) -> bool {
        p.row >= 1
            && p.row <= self.m()
            && p.col >= self.lo[p.row - 1]
            && p.col <= self.hi[p.row - 1]
    }
}

pub(crate) fn check_diagonal_params(m: usize, n: usize, k: usize, l: usize) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(invalid(format!("need m, n >= 2, got m={m} n={n}")));
    }
    let cap = (m - 2).min(n - 2);
    if k > cap || l > cap {
        return Err(invalid(format!(
            "need k, l <= min(m-2, n-2) = {cap}, got k={k} l={l}"
        )));
    }
    Ok(())
}

/// A maximal chain used as a ladder boundary: consecutive points differ by
/// one row step down or one column step left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPath {
    points: Vec<Point>,
}

impl BoundaryPath {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::MalformedRegion("empty boundary path".into()));
        }
        if let Some(w) = points.windows(2).find(|w| !is_step(w[0], w[1])) {
            return Err(Error::MalformedRegion(format!(
                "{} -> {} is not a unit step",
                w[0], w[1]
            )));
        }
        if points.iter().any(|p| p.row == 0 || p.col == 0) {
            return Err(Error::MalformedRegion("boundary points are 1-based".into()));
        }
        Ok(BoundaryPath { points })
    }

    /// Builds a chain from an unordered point set by ordering it along the
    /// step relation.
    pub fn from_set(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut pts: Vec<Point> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        pts.sort_by_key(|p| (p.row, std::cmp::Reverse(p.col)));
        BoundaryPath::new(pts)
    }

    /// The diagonal path `C_k`: `(m-k+i, n-i)` for `0 <= i <= k` together
    /// with `(m-k+i, n-1-i)` for `0 <= i < k`.
    pub fn upper_diagonal(m: usize, n: usize, k: usize) -> Result<Self> {
        if k + 1 > m || k + 1 > n {
            return Err(invalid(format!(
                "diagonal cut k={k} does not fit a {m} x {n} grid"
            )));
        }
        let top = m - k;
        let stair = (0..=k).map(|i| Point::new(top + i, n - i));
        let inner = (0..k).map(|i| Point::new(top + i, n - 1 - i));
        BoundaryPath::from_set(stair.chain(inner))
    }

    /// The diagonal path `~C_l`: `(i, l+2-i)` for `1 <= i <= l+1` together
    /// with `(i+1, l+2-i)` for `1 <= i <= l`.
    pub fn lower_diagonal(l: usize) -> Result<Self> {
        let stair = (1..=l + 1).map(|i| Point::new(i, l + 2 - i));
        let inner = (1..=l).map(|i| Point::new(i + 1, l + 2 - i));
        BoundaryPath::from_set(stair.chain(inner))
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn first(&self) -> Point {
        self.points[0]
    }

    pub fn last(&self) -> Point {
        *self.points.last().expect("nonempty")
    }

    fn max_col_on_row(&self, row: usize) -> Option<usize> {
        self.points
            .iter()
            .filter(|p| p.row == row)
            .map(|p| p.col)
            .max()
    }

    fn min_col_on_row(&self, row: usize) -> Option<usize> {
        self.points
            .iter()
            .filter(|p| p.row == row)
            .map(|p| p.col)
            .min()
    }
}

pub(crate) fn is_step(from: Point, to: Point) -> bool {
    (to.row == from.row + 1 && to.col == from.col) || (to.row == from.row && to.col + 1 == from.col)
}

/// Explicit point set inside an `m x n` bounding box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointSetRegion {
    m: usize,
    n: usize,
    cells: Vec<bool>,
}

impl PointSetRegion {
    pub fn new(m: usize, n: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut cells = vec![false; m * n];
        for p in points {
            if p.row < 1 || p.row > m || p.col < 1 || p.col > n {
                return Err(Error::MalformedRegion(format!(
                    "{p} lies outside the {m} x {n} grid"
                )));
            }
            cells[(p.row - 1) * n + (p.col - 1)] = true;
        }
        Ok(PointSetRegion { m, n, cells })
    }

    /// Copies any region into an explicit point set.
    pub fn from_region<R: Region + ?Sized>(region: &R) -> Self {
        PointSetRegion::new(region.rows(), region.cols(), region.points())
            .expect("points lie in their own bounds")
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Plain-text form: one `i j` line per point, row-major.
    pub fn to_text(&self) -> String {
        self.points()
            .iter()
            .map(|p| format!("{} {}\n", p.row, p.col))
            .collect()
    }
}

impl Region for PointSetRegion {
    fn rows(&self) -> usize {
        self.m
    }
    fn cols(&self) -> usize {
        self.n
    }
    fn contains(&self, p: Point) -> bool {
        p.row >= 1
            && p.row <= self.m
            && p.col >= 1
            && p.col <= self.n
            && self.cells[(p.row - 1) * self.n + (p.col - 1)]
    }
}

/// The region carrying the non-intersecting path families of a diagonal
/// ladder pfaffian ideal, with its sources and sinks.
///
/// Stored with columns flipped (`j -> n + 1 - j`) so paths use the shared
/// step relation. [`PfaffianRegion::to_original`] maps back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfaffianRegion {
    pub n: usize,
    pub l: usize,
    pub r: usize,
    pub region: PointSetRegion,
    pub sources: Vec<Point>,
    pub sinks: Vec<Point>,
}

impl PfaffianRegion {
    pub fn to_original(&self, p: Point) -> Point {
        Point::new(p.row, self.n + 1 - p.col)
    }

    pub fn from_original(&self, p: Point) -> Point {
        Point::new(p.row, self.n + 1 - p.col)
    }

    pub fn original_sources(&self) -> Vec<Point> {
        self.sources.iter().map(|&p| self.to_original(p)).collect()
    }

    pub fn original_sinks(&self) -> Vec<Point> {
        self.sinks.iter().map(|&p| self.to_original(p)).collect()
    }

    pub fn contains_original(&self, p: Point) -> bool {
        p.col >= 1 && p.col <= self.n && self.region.contains(self.from_original(p))
    }
}

/// Hooks `T_i = {(i, j) : i+1 <= j <= r} U {(j, n-i+1) : n-r+1 <= j <= n-i}`
/// for `i = 1..r-1`, in original coordinates.
pub fn pfaffian_hooks(n: usize, r: usize) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for i in 1..r {
        for j in i + 1..=r {
            out.insert(Point::new(i, j));
        }
        for j in n - r + 1..=n - i {
            out.insert(Point::new(j, n - i + 1));
        }
    }
    out
}

fn check_pfaffian_params(n: usize, l: usize, r: usize) -> Result<()> {
    if r < 2 || r >= l || l >= n || 2 * r > n {
        return Err(invalid(format!(
            "pfaffian region needs r >= 2, r < l < n and 2r <= n, got n={n} l={l} r={r}"
        )));
    }
    Ok(())
}

/// `Y' = {(i, j) : 1 <= i < j <= min(n, l + i)}` minus the hooks `T_i`,
/// with sources `(i, r+1)` and sinks `(n-r, n-i+1)` for `i = 1..r-1`.
///
/// The strict triangle `i < j` matches the entries of a skew-symmetric
/// matrix (its diagonal is zero).
pub fn pfaffian_region(n: usize, l: usize, r: usize) -> Result<PfaffianRegion> {
    build_pfaffian_region(n, l, r, false)
}

/// Same as [`pfaffian_region`] but keeping the diagonal points `(i, i)`.
/// Diagonal points are reachable from the sources, so counts differ.
pub fn pfaffian_region_with_diagonal(n: usize, l: usize, r: usize) -> Result<PfaffianRegion> {
    build_pfaffian_region(n, l, r, true)
}

fn build_pfaffian_region(n: usize, l: usize, r: usize, diagonal: bool) -> Result<PfaffianRegion> {
    check_pfaffian_params(n, l, r)?;
    let hooks = pfaffian_hooks(n, r);
    let mut pts = Vec::new();
    for i in 1..=n {
        let start = if diagonal { i } else { i + 1 };
        for j in start..=n.min(l + i) {
            let p = Point::new(i, j);
            if !hooks.contains(&p) {
                pts.push(Point::new(i, n + 1 - j));
            }
        }
    }
    let region = PointSetRegion::new(n, n, pts)?;
    let sources = (1..r).map(|i| Point::new(i, n + 1 - (r + 1))).collect();
    let sinks = (1..r)
        .map(|i| Point::new(n - r, n + 1 - (n - i + 1)))
        .collect();
    Ok(PfaffianRegion {
        n,
        l,
        r,
        region,
        sources,
        sinks,
    })
}

/// Region read from the text format: ladders as `row lo hi` lines, point
/// sets as `i j` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyRegion {
    Ladder(LadderRegion),
    Points(PointSetRegion),
}

impl Region for AnyRegion {
    fn rows(&self) -> usize {
        match self {
            AnyRegion::Ladder(r) => r.rows(),
            AnyRegion::Points(r) => r.rows(),
        }
    }
    fn cols(&self) -> usize {
        match self {
            AnyRegion::Ladder(r) => r.cols(),
            AnyRegion::Points(r) => r.cols(),
        }
    }
    fn contains(&self, p: Point) -> bool {
        match self {
            AnyRegion::Ladder(r) => r.contains(p),
            AnyRegion::Points(r) => r.contains(p),
        }
    }
}

/// Parses either text form. Blank lines and `#` comments are ignored. For
/// ladders the rows must be listed as `1..m` in order and `n` is taken from
/// the top row's upper bound; point sets take their bounding box from the
/// largest coordinates.
pub fn parse_region(text: &str) -> Result<AnyRegion> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields = line
            .split_whitespace()
            .map(|f| {
                f.parse::<usize>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    msg: format!("{f:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((idx + 1, fields));
    }
    let Some((_, first)) = rows.first() else {
        return Err(Error::Parse {
            line: 0,
            msg: "no region data".into(),
        });
    };
    let width = first.len();
    if let Some((line, f)) = rows.iter().find(|(_, f)| f.len() != width) {
        return Err(Error::Parse {
            line: *line,
            msg: format!("expected {width} fields, got {}", f.len()),
        });
    }
    match width {
        3 => {
            let mut lo = Vec::new();
            let mut hi = Vec::new();
            for (expected, (line, f)) in rows.iter().enumerate() {
                if f[0] != expected + 1 {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("expected row {}, got {}", expected + 1, f[0]),
                    });
                }
                lo.push(f[1]);
                hi.push(f[2]);
            }
            let n = hi[0];
            Ok(AnyRegion::Ladder(LadderRegion::new(n, lo, hi)?))
        }
        2 => {
            let pts: Vec<Point> = rows.iter().map(|(_, f)| Point::new(f[0], f[1])).collect();
            let m = pts.iter().map(|p| p.row).max().unwrap_or(0);
            let n = pts.iter().map(|p| p.col).max().unwrap_or(0);
            Ok(AnyRegion::Points(PointSetRegion::new(m, n, pts)?))
        }
        w => Err(Error::Parse {
            line: rows[0].0,
            msg: format!("expected `row lo hi` or `i j`, got {w} fields"),
        }),
    }
}
