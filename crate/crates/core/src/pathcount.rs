//! Single-path counts by dynamic programming, explicit path enumeration and
//! the brute-force vertex-disjoint family count.
//!
//! The brute-force counter never forms a determinant; it is the ground
//! truth the determinant formulas are checked against.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactmath::ApInt;
use crate::region::{Point, Region};

/// A maximal chain from its first to its last point, each step going one
/// row down or one column left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    points: Vec<Point>,
}

impl LatticePath {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn start(&self) -> Point {
        self.points[0]
    }

    pub fn end(&self) -> Point {
        *self.points.last().expect("paths are nonempty")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_disjoint_from(&self, other: &LatticePath) -> bool {
        self.points.iter().all(|p| !other.points.contains(p))
    }
}

/// Number of pairwise vertex-disjoint path tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyCount(pub ApInt);

impl FamilyCount {
    pub fn value(&self) -> &ApInt {
        &self.0
    }
}

impl From<FamilyCount> for ApInt {
    fn from(c: FamilyCount) -> ApInt {
        c.0
    }
}

fn require_member<R: Region + ?Sized>(region: &R, p: Point) -> Result<()> {
    if region.contains(p) {
        Ok(())
    } else {
        Err(Error::OutsideRegion(p))
    }
}

/// Number of paths from `from` to `to` inside `region`.
///
/// Rows are swept top to bottom and columns right to left, so both
/// predecessors of a cell are final before the cell is read.
pub fn count_paths<R: Region + ?Sized>(region: &R, from: Point, to: Point) -> Result<ApInt> {
    require_member(region, from)?;
    require_member(region, to)?;
    if !to.precedes(from) {
        return Ok(ApInt::zero());
    }
    let width = from.col - to.col + 1;
    let mut row_vals = vec![ApInt::zero(); width];
    for row in from.row..=to.row {
        // index 0 is column from.col, index width-1 is column to.col
        for idx in 0..width {
            let p = Point::new(row, from.col - idx);
            if !region.contains(p) {
                row_vals[idx] = ApInt::zero();
                continue;
            }
            if p == from {
                row_vals[idx] = ApInt::one();
                continue;
            }
            // row_vals[idx] still holds the value from the row above.
            if row == from.row {
                row_vals[idx] = ApInt::zero();
            }
            if idx > 0 {
                let (left, right) = row_vals.split_at_mut(idx);
                right[0] += &left[idx - 1];
            }
        }
    }
    Ok(row_vals[width - 1].clone())
}

/// Cells of the bounding box from which `to` is reachable inside `region`,
/// ignoring any occupation.
fn reachability<R: Region + ?Sized>(region: &R, to: Point) -> Vec<bool> {
    let (rows, cols) = (region.rows(), region.cols());
    let mut reach = vec![false; (rows + 2) * (cols + 2)];
    let at = |p: Point| p.row * (cols + 2) + p.col;
    if !region.contains(to) {
        return reach;
    }
    for row in (1..=to.row).rev() {
        for col in to.col..=cols {
            let p = Point::new(row, col);
            if !region.contains(p) {
                continue;
            }
            reach[at(p)] = p == to
                || reach[at(Point::new(row + 1, col))]
                || reach[at(Point::new(row, col - 1))];
        }
    }
    reach
}

/// All paths from `from` to `to`, row steps explored before column steps.
/// Fails once more than `cap` paths exist.
pub fn enumerate_paths<R: Region + ?Sized>(
    region: &R,
    from: Point,
    to: Point,
    cap: usize,
) -> Result<Vec<LatticePath>> {
    require_member(region, from)?;
    require_member(region, to)?;
    let cols = region.cols();
    let reach = reachability(region, to);
    let ok = |p: Point| p.row <= region.rows() && p.col >= 1 && reach[p.row * (cols + 2) + p.col];
    let mut out = Vec::new();
    if !ok(from) {
        return Ok(out);
    }
    let mut stack = vec![from];
    walk(&mut stack, to, &ok, &mut |path: &[Point]| {
        if out.len() == cap {
            return Err(Error::CapExceeded { cap });
        }
        out.push(LatticePath {
            points: path.to_vec(),
        });
        Ok(())
    })?;
    Ok(out)
}

fn walk(
    stack: &mut Vec<Point>,
    to: Point,
    ok: &impl Fn(Point) -> bool,
    emit: &mut impl FnMut(&[Point]) -> Result<()>,
) -> Result<()> {
    let here = *stack.last().expect("walk starts from a point");
    if here == to {
        return emit(stack);
    }
    let down = Point::new(here.row + 1, here.col);
    if here.row < to.row && ok(down) {
        stack.push(down);
        walk(stack, to, ok, emit)?;
        stack.pop();
    }
    if here.col > to.col {
        let left = Point::new(here.row, here.col - 1);
        if ok(left) {
            stack.push(left);
            walk(stack, to, ok, emit)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Counts tuples `(C_1, ..., C_r)` with `C_i` a path from `sources[i]` to
/// `sinks[i]` and the paths pairwise vertex-disjoint, by depth-first
/// placement of the paths in index order. Fails once more than `cap`
/// families are found.
pub fn count_disjoint_families_bruteforce<R: Region + ?Sized>(
    region: &R,
    sources: &[Point],
    sinks: &[Point],
    cap: usize,
) -> Result<FamilyCount> {
    if sources.len() != sinks.len() || sources.is_empty() {
        return Err(invalid(format!(
            "need matching nonempty endpoint lists, got {} sources and {} sinks",
            sources.len(),
            sinks.len()
        )));
    }
    for &p in sources.iter().chain(sinks) {
        require_member(region, p)?;
    }
    let cols = region.cols();
    let mut search = FamilySearch {
        stride: cols + 2,
        rows: region.rows(),
        reach: sinks.iter().map(|&q| reachability(region, q)).collect(),
        occupied: vec![false; (region.rows() + 2) * (cols + 2)],
        sources,
        sinks,
        found: 0,
        cap,
    };
    search.place(0)?;
    Ok(FamilyCount(ApInt::from(search.found)))
}

struct FamilySearch<'a> {
    stride: usize,
    rows: usize,
    reach: Vec<Vec<bool>>,
    occupied: Vec<bool>,
    sources: &'a [Point],
    sinks: &'a [Point],
    found: u64,
    cap: usize,
}

impl FamilySearch<'_> {
    fn idx(&self, p: Point) -> usize {
        p.row * self.stride + p.col
    }

    fn place(&mut self, path: usize) -> Result<()> {
        if path == self.sources.len() {
            self.found += 1;
            if self.found > self.cap as u64 {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            return Ok(());
        }
        let start = self.sources[path];
        if !self.free_and_reaching(path, start) {
            return Ok(());
        }
        self.extend(path, start)
    }

    fn free_and_reaching(&self, path: usize, p: Point) -> bool {
        p.row <= self.rows
            && p.col >= 1
            && self.reach[path][self.idx(p)]
            && !self.occupied[self.idx(p)]
    }

    fn extend(&mut self, path: usize, here: Point) -> Result<()> {
        let i = self.idx(here);
        self.occupied[i] = true;
        let result = if here == self.sinks[path] {
            self.place(path + 1)
        } else {
            self.step(path, here)
        };
        self.occupied[i] = false;
        result
    }

    fn step(&mut self, path: usize, here: Point) -> Result<()> {
        let down = Point::new(here.row + 1, here.col);
        if self.free_and_reaching(path, down) {
            self.extend(path, down)?;
        }
        if here.col > 1 {
            let left = Point::new(here.row, here.col - 1);
            if self.free_and_reaching(path, left) {
                self.extend(path, left)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{LadderRegion, PointSetRegion};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn p(row: usize, col: usize) -> Point {
        Point::new(row, col)
    }

    fn int(v: i64) -> ApInt {
        ApInt::from(v)
    }

    #[test]
    fn count_examples() {
        let rect = LadderRegion::rectangle(3, 3).unwrap();
        assert_eq!(count_paths(&rect, p(1, 3), p(3, 1)).unwrap(), int(6));
        let diag = LadderRegion::diagonal_two_sided(4, 4, 2, 2).unwrap();
        assert_eq!(count_paths(&diag, p(1, 4), p(4, 1)).unwrap(), int(8));
        let one_sided = LadderRegion::diagonal_two_sided(4, 4, 2, 0).unwrap();
        assert_eq!(count_paths(&one_sided, p(1, 4), p(4, 1)).unwrap(), int(14));
    }

    #[test]
    fn count_edge_cases() {
        let rect = LadderRegion::rectangle(3, 3).unwrap();
        assert_eq!(count_paths(&rect, p(3, 1), p(1, 3)).unwrap(), int(0));
        assert_eq!(count_paths(&rect, p(2, 2), p(2, 2)).unwrap(), int(1));
        assert_eq!(count_paths(&rect, p(1, 1), p(3, 1)).unwrap(), int(1));
        assert_eq!(count_paths(&rect, p(1, 1), p(1, 2)).unwrap(), int(0));
        assert_eq!(
            count_paths(&rect, p(1, 3), p(4, 1)),
            Err(Error::OutsideRegion(p(4, 1)))
        );
        let diag = LadderRegion::diagonal_two_sided(4, 4, 2, 2).unwrap();
        assert_eq!(
            count_paths(&diag, p(1, 1), p(4, 1)),
            Err(Error::OutsideRegion(p(1, 1)))
        );
        // Two pieces joined at nothing: unreachable.
        let split = PointSetRegion::new(3, 3, [p(1, 3), p(1, 2), p(3, 1), p(3, 2)]).unwrap();
        assert_eq!(count_paths(&split, p(1, 3), p(3, 1)).unwrap(), int(0));
    }

    #[test]
    fn enumerate_examples() {
        let sq = LadderRegion::rectangle(2, 2).unwrap();
        let paths = enumerate_paths(&sq, p(1, 2), p(2, 1), 10).unwrap();
        assert_eq!(paths.len(), 2);
        assert_eq!(paths[0].points(), &[p(1, 2), p(2, 2), p(2, 1)]);
        assert_eq!(paths[1].points(), &[p(1, 2), p(1, 1), p(2, 1)]);

        let single = enumerate_paths(&sq, p(2, 2), p(2, 2), 1).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].points(), &[p(2, 2)]);

        let rect = LadderRegion::rectangle(3, 3).unwrap();
        let paths = enumerate_paths(&rect, p(1, 3), p(3, 1), 100).unwrap();
        assert_eq!(paths.len(), 6);
        assert!(paths
            .iter()
            .all(|c| c.len() == 5 && c.start() == p(1, 3) && c.end() == p(3, 1)));
        assert_eq!(paths.iter().collect::<HashSet<_>>().len(), 6);
    }

    #[test]
    fn enumerate_cap() {
        let rect = LadderRegion::rectangle(3, 3).unwrap();
        assert_eq!(
            enumerate_paths(&rect, p(1, 3), p(3, 1), 5),
            Err(Error::CapExceeded { cap: 5 })
        );
        assert!(enumerate_paths(&rect, p(1, 3), p(3, 1), 6).is_ok());
        assert!(enumerate_paths(&rect, p(3, 1), p(1, 3), 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bruteforce_examples() {
        let sq = LadderRegion::rectangle(2, 2).unwrap();
        let c =
            count_disjoint_families_bruteforce(&sq, &[p(1, 2), p(2, 2)], &[p(2, 1), p(2, 2)], 100)
                .unwrap();
        assert_eq!(c.0, int(1));
        let rect = LadderRegion::rectangle(3, 3).unwrap();
        let c = count_disjoint_families_bruteforce(
            &rect,
            &[p(1, 3), p(2, 3)],
            &[p(3, 1), p(3, 2)],
            100,
        )
        .unwrap();
        assert_eq!(c.0, int(3));
        // Second source cannot reach its sink.
        let c = count_disjoint_families_bruteforce(
            &rect,
            &[p(1, 3), p(3, 3)],
            &[p(3, 1), p(2, 2)],
            100,
        )
        .unwrap();
        assert_eq!(c.0, int(0));
    }

    #[test]
    fn bruteforce_errors() {
        let rect = LadderRegion::rectangle(3, 3).unwrap();
        assert!(count_disjoint_families_bruteforce(&rect, &[], &[], 10).is_err());
        assert!(count_disjoint_families_bruteforce(&rect, &[p(1, 3)], &[], 10).is_err());
        assert_eq!(
            count_disjoint_families_bruteforce(&rect, &[p(1, 4)], &[p(3, 1)], 10),
            Err(Error::OutsideRegion(p(1, 4)))
        );
        assert_eq!(
            count_disjoint_families_bruteforce(&rect, &[p(1, 3)], &[p(3, 1)], 5),
            Err(Error::CapExceeded { cap: 5 })
        );
    }

    #[test]
    fn bruteforce_matches_pairwise_enumeration() {
        let rect = LadderRegion::rectangle(4, 4).unwrap();
        let sources = [p(1, 4), p(2, 4)];
        let sinks = [p(4, 1), p(4, 3)];
        let a = enumerate_paths(&rect, sources[0], sinks[0], 1000).unwrap();
        let b = enumerate_paths(&rect, sources[1], sinks[1], 1000).unwrap();
        let pairs = a
            .iter()
            .flat_map(|x| b.iter().filter(move |y| x.is_disjoint_from(y)))
            .count();
        let brute = count_disjoint_families_bruteforce(&rect, &sources, &sinks, 100_000).unwrap();
        assert_eq!(brute.0, int(pairs as i64));
    }

    fn all_ladders(m: usize, n: usize) -> Vec<LadderRegion> {
        fn seqs(len: usize, max: usize) -> Vec<Vec<usize>> {
            // weakly decreasing sequences with values in 1..=max
            if len == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=max {
                for mut rest in seqs(len - 1, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let all = seqs(m, n);
        let mut out = Vec::new();
        for lo in &all {
            for hi in &all {
                if let Ok(r) = LadderRegion::new(n, lo.clone(), hi.clone()) {
                    out.push(r);
                }
            }
        }
        out
    }

    #[test]
    fn dp_matches_enumeration() {
        for (m, n) in [(2, 3), (3, 3), (3, 4), (4, 3), (4, 4)] {
            for region in all_ladders(m, n).into_iter().step_by(7) {
                let pts = region.points();
                for &a in &pts {
                    for &b in &pts {
                        let dp = count_paths(&region, a, b).unwrap();
                        let list = enumerate_paths(&region, a, b, 10_000).unwrap();
                        assert_eq!(dp, int(list.len() as i64));
                        assert_eq!(dp.is_zero(), !b.precedes(a) || list.is_empty());
                    }
                }
            }
        }
        for m in 5..=6 {
            for n in 5..=6 {
                let cap = (m - 2).min(n - 2);
                for k in 0..=cap {
                    for l in 0..=cap {
                        let region = LadderRegion::diagonal_two_sided(m, n, k, l).unwrap();
                        for &a in region.points().iter().filter(|q| q.col == n || q.row == 1) {
                            for &b in region.points().iter().filter(|q| q.col == 1 || q.row == m) {
                                let dp = count_paths(&region, a, b).unwrap();
                                let list = enumerate_paths(&region, a, b, 10_000).unwrap();
                                assert_eq!(dp, int(list.len() as i64));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bottom_row_decomposition() {
        for (m, n) in [(3, 4), (4, 4), (4, 5)] {
            for region in all_ladders(m, n) {
                let hm = region.hi(m);
                for d in region.lo(m)..=hm {
                    let usable = (d..=hm).all(|t| region.contains(p(m - 1, t)));
                    if !usable {
                        continue;
                    }
                    for a in 1..m {
                        let from = p(a, n);
                        if !region.contains(from) {
                            continue;
                        }
                        let lhs = count_paths(&region, from, p(m, d)).unwrap();
                        let rhs: ApInt = (d..=hm)
                            .map(|t| count_paths(&region, from, p(m - 1, t)).unwrap())
                            .sum();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn narrow_exit_collapse() {
        // Lower boundary ends at (m-1, 1) after running along row m-1 from
        // column h, so row m-2 starts at column h.
        let mut checked = 0;
        for m in 3..=7usize {
            for n in 3..=7usize {
                for region in narrow_exit_regions(m, n) {
                    let h = region.lo(m - 2);
                    let q = p(m - 1, h);
                    for a in (1..=m).filter(|&a| region.contains(p(a, n))) {
                        let from = p(a, n);
                        let w_q = count_paths(&region, from, q).unwrap();
                        for d2 in 1..=h + 1 {
                            for d3 in d2 + 1..=h + 1 {
                                if !region.contains(p(m, d3)) {
                                    continue;
                                }
                                let diff = count_paths(&region, from, p(m, d2)).unwrap()
                                    - count_paths(&region, from, p(m, d3)).unwrap();
                                assert_eq!(diff, int((d3 - d2) as i64) * &w_q);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 100, "only {checked} cases");
    }

    fn narrow_exit_regions(m: usize, n: usize) -> Vec<LadderRegion> {
        let mut out = Vec::new();
        for h in 2..n {
            for top_lo in h..=n.min(h + 2) {
                for cut in 0..n.min(3) {
                    let mut lo = vec![1; m];
                    lo[m - 2] = 1;
                    lo[m - 3] = h;
                    for l in lo.iter_mut().take(m - 3) {
                        *l = top_lo;
                    }
                    let hi: Vec<usize> = (0..m)
                        .map(|i| if i + 1 == m { n - cut } else { n })
                        .collect();
                    if hi[m - 2] < h {
                        continue;
                    }
                    if let Ok(r) = LadderRegion::new(n, lo, hi) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn enlarging_never_decreases(
            lo in proptest::collection::vec(1usize..=6, 6),
            hi in proptest::collection::vec(1usize..=6, 6),
            shrink in proptest::collection::vec(0usize..=2, 12),
        ) {
            let mut lo = lo;
            let mut hi = hi;
            lo.sort_unstable_by(|a, b| b.cmp(a));
            hi.sort_unstable_by(|a, b| b.cmp(a));
            let lo: Vec<usize> = lo.iter().zip(&hi).map(|(&a, &b)| a.min(b)).collect();
            let big = LadderRegion::new(6, lo.clone(), hi.clone()).unwrap();
            let mut s_lo: Vec<usize> = lo.iter().zip(&shrink[..6]).map(|(&a, &s)| (a + s).min(6)).collect();
            let mut s_hi: Vec<usize> = hi.iter().zip(&shrink[6..]).map(|(&b, &s)| b.saturating_sub(s).max(1)).collect();
            for i in (0..5).rev() {
                s_lo[i] = s_lo[i].max(s_lo[i + 1]);
                s_hi[i] = s_hi[i].max(s_hi[i + 1]);
            }
            let s_lo: Vec<usize> = s_lo.iter().zip(&s_hi).map(|(&a, &b)| a.min(b)).collect();
            let s_lo: Vec<usize> = s_lo.iter().zip(&lo).map(|(&a, &b)| a.max(b)).collect();
            let s_hi: Vec<usize> = s_hi.iter().zip(&hi).map(|(&a, &b)| a.min(b)).collect();
            let small = match LadderRegion::new(6, s_lo, s_hi) {
                Ok(r) => r,
                Err(_) => return Ok(()),
            };
            prop_assume!(small.is_subregion_of(&big));
            for a in small.points() {
                for b in small.points() {
                    let c_small = count_paths(&small, a, b).unwrap();
                    let c_big = count_paths(&big, a, b).unwrap();
                    prop_assert!(c_small <= c_big);
                }
            }
        }
    }
}
