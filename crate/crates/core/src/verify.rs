//! Verification suites: every closed form and determinant formula checked
//! against an independent count, with a serializable report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{
    fibonacci_lhs_even, fibonacci_lhs_odd, fibonacci_reference, one_sided_count, power_of_two_lhs,
    two_sided_count, DiagonalLadderParams,
};
use crate::error::{invalid, Result};
use crate::exactmath::{binomial, ApInt};
use crate::lgv::{count_disjoint_families, enumerate_configs, validate_endpoints, EndpointConfig};
use crate::multiplicity::{
    ladder_entry, ladder_entry_direct, ladder_entry_substituted, ladder_families_bruteforce,
    multiplicity_ladder, multiplicity_maximal, multiplicity_one_sided_ladder,
    multiplicity_pfaffian, multiplicity_pfaffian_full, substituted_ladder, LadderMinorParams,
    PfaffianParams,
};
use crate::pathcount::{count_disjoint_families_bruteforce, count_paths};
use crate::region::{pfaffian_region, LadderRegion, Point, Region};

/// Upper limit on families enumerated by a single brute-force count.
const BRUTE_CAP: usize = 1_000_000_000;

/// Largest grid side a brute-force suite accepts without `force`.
pub const BRUTE_MAX_DIM: usize = 7;
/// Largest number of paths per family a brute-force suite accepts without `force`.
pub const BRUTE_MAX_R: usize = 3;
/// Largest matrix order the pfaffian oracle accepts without `force`.
pub const PFAFFIAN_MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    ClosedForm,
    Lgv,
    Fibonacci,
    Power2,
    HockeyStick,
    Multiplicity,
    Pfaffian,
    All,
}

impl Suite {
    /// The individual suites, in the order `All` runs them.
    pub const COMPONENTS: [Suite; 7] = [
        Suite::ClosedForm,
        Suite::Lgv,
        Suite::Power2,
        Suite::Fibonacci,
        Suite::HockeyStick,
        Suite::Multiplicity,
        Suite::Pfaffian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedForm => "closed-form",
            Suite::Lgv => "lgv",
            Suite::Fibonacci => "fibonacci",
            Suite::Power2 => "power2",
            Suite::HockeyStick => "hockey-stick",
            Suite::Multiplicity => "multiplicity",
            Suite::Pfaffian => "pfaffian",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::COMPONENTS
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| invalid(format!("unknown suite {s:?}")))
    }
}

/// Sweep bounds. The defaults are the desk-scale bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `m, n` of the closed-form sweep.
    pub closed_form_max: usize,
    /// Largest `m, n` of the determinant-versus-brute-force sweep.
    pub lgv_max: usize,
    /// Largest family size in brute-force sweeps.
    pub max_r: usize,
    /// Largest `m` of the power-of-two and Fibonacci identities.
    pub identity_max_m: usize,
    /// Number of random hockey-stick tuples.
    pub hockey_samples: usize,
    /// Largest `n` of a hockey-stick tuple.
    pub hockey_max_n: usize,
    pub seed: u64,
    /// Largest `m, n` of the generic-ladder collapse checks.
    pub collapse_max: usize,
    /// Largest `m, n` of the ladder multiplicity oracle.
    pub ladder_max: usize,
    /// Largest `n` of the pfaffian oracle.
    pub pfaffian_max_n: usize,
    /// Largest `n` of the full-matrix pfaffian collapse.
    pub pfaffian_full_max_n: usize,
    /// Lift the brute-force caps.
    pub force: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            closed_form_max: 12,
            lgv_max: 6,
            max_r: 3,
            identity_max_m: 30,
            hockey_samples: 500,
            hockey_max_n: 40,
            seed: 0x1adde5,
            collapse_max: 8,
            ladder_max: 6,
            pfaffian_max_n: 8,
            pfaffian_full_max_n: 12,
            force: false,
        }
    }
}

impl Bounds {
    /// Refuses brute-force bounds above the desk-scale caps unless `force`
    /// is set, and degenerate bounds always.
    pub fn check(&self, suite: Suite) -> Result<()> {
        let runs = |s: Suite| suite == s || suite == Suite::All;
        if (runs(Suite::Power2) || runs(Suite::Fibonacci)) && self.identity_max_m < 1 {
            return Err(invalid("identity bound must be at least 1"));
        }
        if runs(Suite::HockeyStick) && self.hockey_max_n < 1 {
            return Err(invalid("hockey-stick bound must be at least 1"));
        }
        if self.force {
            return Ok(());
        }
        let mut brute = Vec::new();
        if runs(Suite::Lgv) {
            brute.push(("lgv grid side", self.lgv_max, BRUTE_MAX_DIM));
            brute.push(("family size", self.max_r, BRUTE_MAX_R));
        }
        if runs(Suite::Multiplicity) {
            brute.push(("ladder grid side", self.ladder_max, BRUTE_MAX_DIM));
            brute.push(("family size", self.max_r, BRUTE_MAX_R));
        }
        if runs(Suite::Pfaffian) {
            brute.push(("pfaffian order", self.pfaffian_max_n, PFAFFIAN_MAX_N));
        }
        for (what, value, cap) in brute {
            if value > cap {
                return Err(invalid(format!(
                    "{what} {value} exceeds the brute-force cap {cap}; pass --force to run anyway"
                )));
            }
        }
        Ok(())
    }
}

/// One checked value: a named check at some parameters, the reference
/// value and the value under test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub check: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub expected: std::result::Result<ApInt, String>,
    pub got: std::result::Result<ApInt, String>,
}

impl Case {
    fn new(
        check: &'static str,
        params: Vec<(&'static str, String)>,
        expected: Result<ApInt>,
        got: Result<ApInt>,
    ) -> Self {
        Case {
            check,
            params,
            expected: expected.map_err(|e| e.to_string()),
            got: got.map_err(|e| e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        matches!((&self.expected, &self.got), (Ok(a), Ok(b)) if a == b)
    }

    /// `check name=value ...`
    pub fn input(&self) -> String {
        let mut s = self.check.to_string();
        for (name, value) in &self.params {
            s.push_str(&format!(" {name}={value}"));
        }
        s
    }
}

fn show(v: &std::result::Result<ApInt, String>) -> String {
    match v {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    /// Entries whose cross-check does not apply, with the reason.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
    /// Component reports of an aggregate run.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<VerificationReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Sets every elapsed time to zero, for byte-identical output.
    pub fn clear_timing(&mut self) {
        self.elapsed_ms = 0;
        for s in &mut self.suites {
            s.clear_timing();
        }
    }
}

/// A suite's report together with every case it checked.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub report: VerificationReport,
    pub records: Vec<Case>,
}

/// Runs a suite after checking its bounds.
pub fn run_suite(suite: Suite, bounds: &Bounds) -> Result<SuiteRun> {
    bounds.check(suite)?;
    if suite == Suite::All {
        return Ok(run_all(bounds));
    }
    let start = Instant::now();
    let (records, skipped) = match suite {
        Suite::ClosedForm => (closed_form_cases(bounds), Vec::new()),
        Suite::Lgv => (lgv_cases(bounds), Vec::new()),
        Suite::Fibonacci => (fibonacci_cases(bounds), Vec::new()),
        Suite::Power2 => (power2_cases(bounds), Vec::new()),
        Suite::HockeyStick => (hockey_stick_cases(bounds), Vec::new()),
        Suite::Multiplicity => multiplicity_cases(bounds),
        Suite::Pfaffian => (pfaffian_cases(bounds), Vec::new()),
        Suite::All => unreachable!(),
    };
    let failures = records
        .iter()
        .filter(|c| !c.passed())
        .map(|c| Failure {
            input: c.input(),
            expected: show(&c.expected),
            got: show(&c.got),
        })
        .collect();
    let report = VerificationReport {
        suite: suite.name().to_string(),
        cases: records.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        skipped,
        suites: Vec::new(),
    };
    Ok(SuiteRun { report, records })
}

fn run_all(bounds: &Bounds) -> SuiteRun {
    let start = Instant::now();
    let mut records = Vec::new();
    let mut suites = Vec::new();
    for s in Suite::COMPONENTS {
        let run = run_suite(s, bounds).expect("bounds already checked");
        records.extend(run.records);
        suites.push(run.report);
    }
    let failures = suites
        .iter()
        .flat_map(|r| {
            r.failures.iter().map(move |f| Failure {
                input: format!("{}: {}", r.suite, f.input),
                ..f.clone()
            })
        })
        .collect();
    let report = VerificationReport {
        suite: Suite::All.name().to_string(),
        cases: suites.iter().map(|r| r.cases).sum(),
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        skipped: Vec::new(),
        suites,
    };
    SuiteRun { report, records }
}

fn p(name: &'static str, value: impl ToString) -> (&'static str, String) {
    (name, value.to_string())
}

fn diag_params(d: &DiagonalLadderParams) -> Vec<(&'static str, String)> {
    vec![p("m", d.m), p("n", d.n), p("k", d.k), p("l", d.l)]
}

fn corner_count(m: usize, n: usize, k: usize, l: usize) -> Result<ApInt> {
    let region = LadderRegion::diagonal_two_sided(m, n, k, l)?;
    count_paths(&region, Point::new(1, n), Point::new(m, 1))
}

fn closed_form_cases(b: &Bounds) -> Vec<Case> {
    DiagonalLadderParams::all(2, b.closed_form_max)
        .par_iter()
        .flat_map_iter(|d| {
            let mut cases = vec![Case::new(
                "two-sided",
                diag_params(d),
                corner_count(d.m, d.n, d.k, d.l),
                two_sided_count(*d),
            )];
            if d.l == 0 {
                cases.push(Case::new(
                    "one-sided",
                    diag_params(d),
                    two_sided_count(*d),
                    one_sided_count(d.m, d.n, d.k),
                ));
            }
            cases
        })
        .collect()
}

fn points(ps: &[Point]) -> String {
    ps.iter()
        .map(Point::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Every configuration satisfying the identity's hypotheses on diagonal
/// ladders up to the bound, with its ladder.
pub fn lgv_configs(max_dim: usize, max_r: usize) -> Vec<(DiagonalLadderParams, EndpointConfig)> {
    let mut out = Vec::new();
    for d in DiagonalLadderParams::all(2, max_dim) {
        let region =
            LadderRegion::diagonal_two_sided(d.m, d.n, d.k, d.l).expect("valid parameters");
        for r in 1..=max_r {
            for cfg in enumerate_configs(&region, r, usize::MAX) {
                if validate_endpoints(&region, &cfg).hypotheses_hold() {
                    out.push((d, cfg));
                }
            }
        }
    }
    out
}

fn lgv_cases(b: &Bounds) -> Vec<Case> {
    lgv_configs(b.lgv_max, b.max_r)
        .par_iter()
        .flat_map_iter(|(d, cfg)| {
            let region =
                LadderRegion::diagonal_two_sided(d.m, d.n, d.k, d.l).expect("valid parameters");
            let mut params = diag_params(d);
            params.push(p("sources", points(&cfg.sources)));
            params.push(p("sinks", points(&cfg.sinks)));
            let det = count_disjoint_families(&region, cfg);
            let brute =
                count_disjoint_families_bruteforce(&region, &cfg.sources, &cfg.sinks, BRUTE_CAP)
                    .map(|c| c.0);
            let unreachable = cfg.sources.iter().zip(&cfg.sinks).any(|(&s, &t)| {
                count_paths(&region, s, t)
                    .map(|w| w.is_zero())
                    .unwrap_or(false)
            });
            let mut cases = vec![Case::new(
                "det-vs-brute",
                params.clone(),
                brute.clone(),
                det.clone(),
            )];
            if unreachable {
                cases.push(Case::new(
                    "degenerate-det",
                    params.clone(),
                    Ok(ApInt::zero()),
                    det,
                ));
                cases.push(Case::new(
                    "degenerate-brute",
                    params,
                    Ok(ApInt::zero()),
                    brute,
                ));
            }
            cases
        })
        .collect()
}

fn power2_cases(b: &Bounds) -> Vec<Case> {
    (1..=b.identity_max_m as i64)
        .map(|m| {
            Case::new(
                "power2",
                vec![p("m", m)],
                Ok(ApInt::one() << m as usize),
                power_of_two_lhs(m),
            )
        })
        .collect()
}

fn fibonacci_cases(b: &Bounds) -> Vec<Case> {
    let mut cases = Vec::new();
    for m in 1..=b.identity_max_m as i64 {
        cases.push(Case::new(
            "odd",
            vec![p("m", m)],
            fibonacci_reference(2 * m + 1),
            fibonacci_lhs_odd(m),
        ));
        cases.push(Case::new(
            "even",
            vec![p("m", m)],
            fibonacci_reference(2 * m),
            fibonacci_lhs_even(m),
        ));
    }
    // Path pictures: the ladders whose corner-to-corner counts are F_{2m-1}
    // and F_{2m-2}.
    for m in 3..=b.identity_max_m.min(b.closed_form_max) {
        let mi = m as i64;
        cases.push(Case::new(
            "ladder-odd",
            vec![p("m", m)],
            fibonacci_reference(2 * mi - 1),
            corner_count(m, m, m - 3, m - 2),
        ));
        cases.push(Case::new(
            "ladder-even",
            vec![p("m", m)],
            fibonacci_reference(2 * mi - 2),
            corner_count(m, m - 1, m - 3, m - 3),
        ));
    }
    cases
}

/// Random `(n, a, b, k)` with `1 <= a <= b <= n <= max_n` and `0 <= k <= n`,
/// sorted.
pub fn hockey_stick_tuples(samples: usize, max_n: usize, seed: u64) -> Vec<(i64, i64, i64, i64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let max_n = max_n as i64;
    let mut tuples: Vec<_> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(a..=n);
            let k = rng.gen_range(0..=n);
            (n, a, b, k)
        })
        .collect();
    tuples.sort_unstable();
    tuples
}

fn hockey_stick_cases(b: &Bounds) -> Vec<Case> {
    hockey_stick_tuples(b.hockey_samples, b.hockey_max_n, b.seed)
        .into_iter()
        .map(|(n, a, bb, k)| {
            let lhs = (a..=bb).map(|t| binomial(n - t, k)).sum::<Result<ApInt>>();
            let rhs = binomial(n - a + 1, k + 1).and_then(|x| Ok(x - binomial(n - bb, k + 1)?));
            Case::new(
                "hockey-stick",
                vec![p("n", n), p("a", a), p("b", bb), p("k", k)],
                rhs,
                lhs,
            )
        })
        .collect()
}

fn ladder_params(q: &LadderMinorParams) -> Vec<(&'static str, String)> {
    vec![
        p("m", q.m),
        p("n", q.n),
        p("k", q.k),
        p("l", q.l),
        p("r", q.r),
    ]
}

fn ladder(m: usize, n: usize, k: usize, l: usize, r: usize) -> Result<ApInt> {
    multiplicity_ladder(&LadderMinorParams::new(m, n, k, l, r)?)
}

fn multiplicity_cases(b: &Bounds) -> (Vec<Case>, Vec<String>) {
    let mut cases = vec![Case::new(
        "maximal-fixture",
        vec![p("m", 4), p("n", 4), p("r", 2)],
        Ok(ApInt::from(20)),
        multiplicity_maximal(4, 4, 2),
    )];
    for (m, n, k, l, r, v) in [
        (4, 4, 2, 2, 1, 8),
        (4, 4, 2, 0, 1, 14),
        (4, 4, 0, 0, 2, 20),
        (6, 6, 2, 2, 2, 928),
    ] {
        let q = LadderMinorParams { m, n, k, l, r };
        cases.push(Case::new(
            "ladder-fixture",
            ladder_params(&q),
            Ok(ApInt::from(v)),
            ladder(m, n, k, l, r),
        ));
    }
    cases.push(Case::new(
        "one-sided-fixture",
        vec![p("m", 5), p("n", 5), p("k", 2), p("r", 2)],
        Ok(ApInt::from(84)),
        multiplicity_one_sided_ladder(5, 5, 2, 2),
    ));

    // Collapse to the full-matrix and one-sided formulas.
    let collapse = LadderMinorParams::all(b.collapse_max, b.collapse_max);
    for q in collapse.iter().filter(|q| q.k == 0 && q.l == 0) {
        cases.push(Case::new(
            "maximal-collapse",
            ladder_params(q),
            multiplicity_maximal(q.m, q.n, q.r),
            multiplicity_ladder(q),
        ));
    }
    for q in collapse.iter().filter(|q| q.l == 0) {
        cases.push(Case::new(
            "one-sided-collapse",
            ladder_params(q),
            multiplicity_one_sided_ladder(q.m, q.n, q.k, q.r),
            multiplicity_ladder(q),
        ));
    }

    // Against non-intersecting families, by brute force and by the
    // validated determinant.
    let oracle = LadderMinorParams::all(b.ladder_max, b.max_r);
    cases.par_extend(oracle.par_iter().flat_map_iter(|q| {
        let formula = multiplicity_ladder(q);
        let mut out = vec![Case::new(
            "ladder-oracle",
            ladder_params(q),
            ladder_families_bruteforce(q, BRUTE_CAP),
            formula.clone(),
        )];
        let region = q.region().expect("valid parameters");
        let (sources, sinks) = q.endpoints();
        if sinks.iter().all(|&t| region.contains(t)) {
            let det = EndpointConfig::new(sources, sinks)
                .and_then(|cfg| count_disjoint_families(&region, &cfg));
            out.push(Case::new("ladder-lgv", ladder_params(q), det, formula));
        }
        out
    }));

    // Entry forms: direct exponent against the substituted corner count,
    // and the substituted count against paths on the smaller ladder.
    let mut skipped = Vec::new();
    for q in &oracle {
        for i in 1..=q.r {
            for j in 1..=q.r {
                let mut params = ladder_params(q);
                params.push(p("i", i));
                params.push(p("j", j));
                cases.push(Case::new(
                    "entry-forms",
                    params.clone(),
                    ladder_entry_substituted(q, i, j),
                    ladder_entry_direct(q, i, j),
                ));
                match substituted_ladder(q, i, j) {
                    Some((m2, n2, k2, l2)) => cases.push(Case::new(
                        "entry-paths",
                        params,
                        corner_count(m2, n2, k2, l2),
                        ladder_entry(q, i, j),
                    )),
                    None => skipped.push(format!(
                        "entry-paths m={} n={} k={} l={} r={} i={i} j={j}: substituted ladder is not a valid region",
                        q.m, q.n, q.k, q.l, q.r
                    )),
                }
            }
        }
    }
    (cases, skipped)
}

fn pfaffian_cases(b: &Bounds) -> Vec<Case> {
    let pf = |n, l, r| PfaffianParams::new(n, l, r).and_then(|q| multiplicity_pfaffian(&q));
    let mut cases = Vec::new();
    for (n, l, r, v) in [(6, 3, 2, 8), (6, 4, 2, 13)] {
        cases.push(Case::new(
            "pfaffian-fixture",
            vec![p("n", n), p("l", l), p("r", r)],
            Ok(ApInt::from(v)),
            pf(n, l, r),
        ));
    }
    cases.push(Case::new(
        "full-fixture",
        vec![p("n", 4), p("r", 2)],
        Ok(ApInt::from(2)),
        multiplicity_pfaffian_full(4, 2),
    ));

    let mut oracle = Vec::new();
    for n in 4..=b.pfaffian_max_n {
        for r in 2..=3 {
            for l in r + 1..n {
                if PfaffianParams::new(n, l, r).is_ok() {
                    oracle.push((n, l, r));
                }
            }
        }
    }
    cases.par_extend(oracle.par_iter().map(|&(n, l, r)| {
        let brute = pfaffian_region(n, l, r).and_then(|y| {
            Ok(count_disjoint_families_bruteforce(&y.region, &y.sources, &y.sinks, BRUTE_CAP)?.0)
        });
        Case::new(
            "pfaffian-oracle",
            vec![p("n", n), p("l", l), p("r", r)],
            brute,
            pf(n, l, r),
        )
    }));

    for n in 3..=b.pfaffian_full_max_n {
        for r in (1..n - 1).filter(|r| 2 * r <= n) {
            cases.push(Case::new(
                "full-collapse",
                vec![p("n", n), p("l", n - 1), p("r", r)],
                multiplicity_pfaffian_full(n, r),
                pf(n, n - 1, r),
            ));
        }
    }
    cases
}
