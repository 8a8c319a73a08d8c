//! Non-intersecting path families on two-sided ladders as determinants of
//! single-path counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactmath::{det, ApInt, ApMatrix};
use crate::pathcount::count_paths;
use crate::region::{LadderRegion, Point, Region};

/// Sources `P_i = (a_i, n)` and sinks `Q_i = (c_i, d_i)`, paired by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndpointConfig {
    pub sources: Vec<Point>,
    pub sinks: Vec<Point>,
}

impl EndpointConfig {
    pub fn new(sources: Vec<Point>, sinks: Vec<Point>) -> Result<Self> {
        if sources.len() != sinks.len() || sources.is_empty() {
            return Err(invalid(format!(
                "need matching nonempty endpoint lists, got {} sources and {} sinks",
                sources.len(),
                sinks.len()
            )));
        }
        Ok(EndpointConfig { sources, sinks })
    }

    pub fn r(&self) -> usize {
        self.sources.len()
    }
}

/// A named hypothesis of the determinant identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// Every endpoint lies in the region.
    Membership,
    /// The region is bounded by two boundary chains.
    Shape,
    /// `P_i = (a_i, n)` with `1 = a_1 < a_2 < ... < a_r <= m`.
    Sources,
    /// `c_1 <= ... <= c_r = m` and `1 = d_1 < d_2 < ... < d_r <= n`.
    Sinks,
    /// `c_1 > k_4` whenever the lower boundary reaches column 1 on row
    /// `k_4 >= 2`.
    FirstSinkClearsLowerCut,
    /// If `(1, 1)` is not in the region then `(c_1 - 1, 1)` is.
    FirstSinkAlternative,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Membership => "membership",
            Condition::Shape => "shape",
            Condition::Sources => "i",
            Condition::Sinks => "ii",
            Condition::FirstSinkClearsLowerCut => "iii",
            Condition::FirstSinkAlternative => "iii-alt",
        }
    }

    /// One-line statement of the condition.
    pub fn describe(self) -> &'static str {
        match self {
            Condition::Membership => "every endpoint lies in the region",
            Condition::Shape => "the region is a two-sided ladder",
            Condition::Sources => "sources are (a_i, n) with 1 = a_1 < ... < a_r <= m",
            Condition::Sinks => {
                "sinks are (c_i, d_i) with c_1 <= ... <= c_r = m and 1 = d_1 < ... < d_r <= n"
            }
            Condition::FirstSinkClearsLowerCut => {
                "the first sink lies below the row where the lower boundary meets column 1"
            }
            Condition::FirstSinkAlternative => {
                "if (1, 1) is outside the region, (c_1 - 1, 1) is inside it"
            }
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of [`validate_endpoints`]: the list of violated conditions.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Validation {
    pub violations: Vec<Condition>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when membership, shape and conditions (i)-(iii) hold. The
    /// alternative third condition is reported but not required.
    pub fn hypotheses_hold(&self) -> bool {
        self.violations
            .iter()
            .all(|&c| c == Condition::FirstSinkAlternative)
    }

    pub fn violates(&self, c: Condition) -> bool {
        self.violations.contains(&c)
    }

    fn into_error(self) -> Error {
        Error::InvalidEndpoints(
            self.violations
                .iter()
                .filter(|&&c| c != Condition::FirstSinkAlternative)
                .map(|c| format!("({}) {}", c.name(), c.describe()))
                .collect(),
        )
    }
}

/// Checks every hypothesis independently; never fails.
pub fn validate_endpoints(region: &LadderRegion, cfg: &EndpointConfig) -> Validation {
    let (m, n) = (region.m(), region.n());
    let mut violations = Vec::new();
    if cfg
        .sources
        .iter()
        .chain(&cfg.sinks)
        .any(|&p| !region.contains(p))
    {
        violations.push(Condition::Membership);
    }
    if !region.is_two_sided() {
        violations.push(Condition::Shape);
    }

    let a: Vec<usize> = cfg.sources.iter().map(|p| p.row).collect();
    let sources_ok = cfg.sources.iter().all(|p| p.col == n)
        && a.first() == Some(&1)
        && a.windows(2).all(|w| w[0] < w[1])
        && a.last().is_some_and(|&x| x <= m);
    if !sources_ok {
        violations.push(Condition::Sources);
    }

    let c: Vec<usize> = cfg.sinks.iter().map(|q| q.row).collect();
    let d: Vec<usize> = cfg.sinks.iter().map(|q| q.col).collect();
    let sinks_ok = c.first().is_some_and(|&x| x >= 1)
        && c.windows(2).all(|w| w[0] <= w[1])
        && c.last() == Some(&m)
        && d.first() == Some(&1)
        && d.windows(2).all(|w| w[0] < w[1])
        && d.last().is_some_and(|&x| x <= n);
    if !sinks_ok {
        violations.push(Condition::Sinks);
    }

    let c1 = c.first().copied().unwrap_or(0);
    let k4 = region.lower_corner_row();
    if k4 >= 2 && c1 <= k4 {
        violations.push(Condition::FirstSinkClearsLowerCut);
    }
    let origin_missing = !region.contains(Point::new(1, 1));
    if origin_missing && (c1 < 2 || !region.contains(Point::new(c1 - 1, 1))) {
        violations.push(Condition::FirstSinkAlternative);
    }
    Validation { violations }
}

/// The matrix `[w(P_i, Q_j)]` of single-path counts.
pub fn path_matrix<R: Region + ?Sized>(region: &R, cfg: &EndpointConfig) -> Result<ApMatrix> {
    ApMatrix::try_from_fn(cfg.r(), |i, j| {
        count_paths(region, cfg.sources[i - 1], cfg.sinks[j - 1])
    })
}

/// Number of non-intersecting families, as `det[w(P_i, Q_j)]`. Refuses
/// configurations outside the hypotheses of the identity.
pub fn count_disjoint_families(region: &LadderRegion, cfg: &EndpointConfig) -> Result<ApInt> {
    let v = validate_endpoints(region, cfg);
    if !v.hypotheses_hold() {
        return Err(v.into_error());
    }
    count_disjoint_families_unchecked(region, cfg)
}

/// `det[w(P_i, Q_j)]` for any region and endpoints, with no hypothesis
/// check. Agrees with the family count only where the identity applies.
pub fn count_disjoint_families_unchecked<R: Region + ?Sized>(
    region: &R,
    cfg: &EndpointConfig,
) -> Result<ApInt> {
    Ok(det(&path_matrix(region, cfg)?))
}

/// Every configuration on `region` with `r` endpoint pairs that satisfies
/// conditions (i)-(ii) and membership, in a fixed order, at most `limit`
/// of them. Condition (iii) is left to the caller.
pub fn enumerate_configs(region: &LadderRegion, r: usize, limit: usize) -> Vec<EndpointConfig> {
    let (m, n) = (region.m(), region.n());
    let mut out = Vec::new();
    if r == 0 || !region.contains(Point::new(1, n)) {
        return out;
    }
    let source_rows: Vec<usize> = (2..=m)
        .filter(|&a| region.contains(Point::new(a, n)))
        .collect();
    let source_sets = increasing_subsets(&source_rows, r - 1);
    let sink_lists = sink_sequences(region, r);
    'outer: for rest in &source_sets {
        let sources: Vec<Point> = std::iter::once(1)
            .chain(rest.iter().copied())
            .map(|a| Point::new(a, n))
            .collect();
        for sinks in &sink_lists {
            if out.len() == limit {
                break 'outer;
            }
            out.push(EndpointConfig {
                sources: sources.clone(),
                sinks: sinks.clone(),
            });
        }
    }
    out
}

fn increasing_subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (idx, &x) in items.iter().enumerate() {
        for mut tail in increasing_subsets(&items[idx + 1..], size - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Sink lists with `d_1 = 1`, strictly increasing `d`, weakly increasing
/// `c` ending at `c_r = m`, all inside the region.
fn sink_sequences(region: &LadderRegion, r: usize) -> Vec<Vec<Point>> {
    let (m, n) = (region.m(), region.n());
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        region: &LadderRegion,
        m: usize,
        n: usize,
        r: usize,
        cur: &mut Vec<Point>,
        out: &mut Vec<Vec<Point>>,
    ) {
        if cur.len() == r {
            if cur.last().map(|q| q.row) == Some(m) {
                out.push(cur.clone());
            }
            return;
        }
        let (min_row, min_col) = match cur.last() {
            None => (1, 1),
            Some(q) => (q.row, q.col + 1),
        };
        let cols: Vec<usize> = if cur.is_empty() {
            vec![1]
        } else {
            (min_col..=n).collect()
        };
        for row in min_row..=m {
            for &col in &cols {
                let q = Point::new(row, col);
                if region.contains(q) {
                    cur.push(q);
                    go(region, m, n, r, cur, out);
                    cur.pop();
                }
            }
        }
    }
    go(region, m, n, r, &mut cur, &mut out);
    out
}
