//! `ladder`: exact path counts, family counts, multiplicities and the
//! verification suites from the command line.
//!
//! Exit codes: 0 on success, 1 when a comparison or suite fails, 2 on
//! invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ladder_core::lgv::{count_disjoint_families, EndpointConfig};
use ladder_core::multiplicity::{
    multiplicity_generic, multiplicity_ladder, multiplicity_maximal, multiplicity_one_sided_ladder,
    multiplicity_pfaffian, multiplicity_pfaffian_full, LadderMinorParams, MinorParams,
    PfaffianParams,
};
use ladder_core::pathcount::{count_disjoint_families_bruteforce, count_paths};
use ladder_core::region::{parse_region, AnyRegion};
use ladder_core::verify::{run_suite, Bounds, Case, Suite};
use ladder_core::{ApInt, LadderRegion, Point};

#[derive(Parser)]
#[command(
    name = "ladder",
    version,
    about = "Exact lattice-path counts on ladder regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count paths between two points of a region.
    Count {
        #[command(flatten)]
        region: RegionArgs,
        /// Start point.
        #[arg(long, num_args = 2, value_names = ["ROW", "COL"], required = true)]
        from: Vec<usize>,
        /// End point.
        #[arg(long, num_args = 2, value_names = ["ROW", "COL"], required = true)]
        to: Vec<usize>,
    },
    /// Count non-intersecting path families.
    Families {
        #[command(flatten)]
        region: RegionArgs,
        /// Sources, as `row,col`.
        #[arg(long = "p", num_args = 1.., value_parser = parse_point, required = true)]
        sources: Vec<Point>,
        /// Sinks, as `row,col`.
        #[arg(long = "q", num_args = 1.., value_parser = parse_point, required = true)]
        sinks: Vec<Point>,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
        /// Give up once the brute-force search finds more families than this.
        #[arg(long, default_value_t = 100_000_000)]
        cap: usize,
    },
    /// Evaluate a multiplicity formula.
    Multiplicity {
        #[command(subcommand)]
        kind: MultiplicityKind,
    },
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RegionArgs {
    /// Full `M x N` rectangle.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    rect: Option<Vec<usize>>,
    /// Diagonal ladder with cut depths K and L.
    #[arg(long, num_args = 4, value_names = ["M", "N", "K", "L"])]
    diag: Option<Vec<usize>>,
    /// Region file: `row lo hi` lines for a ladder, `row col` lines for a point set.
    #[arg(long, value_name = "PATH")]
    region_file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Det,
    Brute,
    Both,
}

#[derive(Subcommand)]
enum MultiplicityKind {
    /// Diagonal ladder, `(r+1)`-minors.
    Ladder {
        m: usize,
        n: usize,
        k: usize,
        l: usize,
        r: usize,
    },
    /// One-sided diagonal ladder, `(r+1)`-minors.
    OneSided {
        m: usize,
        n: usize,
        k: usize,
        r: usize,
    },
    /// Ideal of the minor with rows A and columns B.
    Generic {
        m: usize,
        n: usize,
        /// Row indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        /// Column indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
    },
    /// All `(r+1)`-minors of the full matrix.
    Maximal { m: usize, n: usize, r: usize },
    /// Ladder of width L in a skew-symmetric matrix, `2r`-pfaffians.
    Pfaffian { n: usize, l: usize, r: usize },
    /// Full skew-symmetric matrix, `2r`-pfaffians.
    PfaffianFull { n: usize, r: usize },
}

#[derive(Args)]
struct VerifyArgs {
    /// closed-form, lgv, fibonacci, power2, hockey-stick, multiplicity, pfaffian or all.
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Use the desk-scale bounds (the defaults) and nothing else.
    #[arg(long, conflicts_with_all = ["max", "max_m", "max_r", "samples", "force"])]
    desk: bool,
    /// Largest grid side (or pfaffian order, or hockey-stick n).
    #[arg(long)]
    max: Option<usize>,
    /// Largest m of the power-of-two and Fibonacci identities.
    #[arg(long)]
    max_m: Option<usize>,
    /// Largest family size in brute-force sweeps.
    #[arg(long)]
    max_r: Option<usize>,
    /// Number of random hockey-stick tuples.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for the hockey-stick tuples.
    #[arg(long)]
    seed: Option<u64>,
    /// Run brute-force sweeps above the desk-scale caps.
    #[arg(long)]
    force: bool,
    /// Also write every case to this CSV file.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Report elapsed_ms as 0 so that repeated runs print identical output.
    #[arg(long)]
    no_timing: bool,
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (r, c) = s
        .split_once(',')
        .ok_or_else(|| format!("expected row,col, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok(Point::new(parse(r)?, parse(c)?))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: ladder_core::Error| e.to_string())
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<ladder_core::Error> for Failure {
    fn from(e: ladder_core::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn load_region(args: &RegionArgs) -> Result<AnyRegion, Failure> {
    if let Some(v) = &args.rect {
        return Ok(AnyRegion::Ladder(LadderRegion::rectangle(v[0], v[1])?));
    }
    if let Some(v) = &args.diag {
        return Ok(AnyRegion::Ladder(LadderRegion::diagonal_two_sided(
            v[0], v[1], v[2], v[3],
        )?));
    }
    let path = args
        .region_file
        .as_ref()
        .expect("clap enforces one region source");
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_region(&text)?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Count { region, from, to } => {
            let region = load_region(&region)?;
            let count = count_paths(
                &region,
                Point::new(from[0], from[1]),
                Point::new(to[0], to[1]),
            )?;
            Ok(count.to_string())
        }
        Command::Families {
            region,
            sources,
            sinks,
            method,
            cap,
        } => families(&load_region(&region)?, sources, sinks, method, cap),
        Command::Multiplicity { kind } => Ok(multiplicity(kind)?.to_string()),
        Command::Verify(args) => verify(args),
    }
}

fn families(
    region: &AnyRegion,
    sources: Vec<Point>,
    sinks: Vec<Point>,
    method: Method,
    cap: usize,
) -> Result<String, Failure> {
    let cfg = EndpointConfig::new(sources, sinks)?;
    let det = || -> Result<ApInt, Failure> {
        match region {
            AnyRegion::Ladder(ladder) => Ok(count_disjoint_families(ladder, &cfg)?),
            AnyRegion::Points(_) => Err(usage("the determinant method needs a ladder region")),
        }
    };
    let brute = || -> Result<ApInt, Failure> {
        Ok(count_disjoint_families_bruteforce(region, &cfg.sources, &cfg.sinks, cap)?.0)
    };
    match method {
        Method::Det => Ok(det()?.to_string()),
        Method::Brute => Ok(brute()?.to_string()),
        Method::Both => {
            let (d, b) = (det()?, brute()?);
            let line = format!("det={d} brute={b}");
            if d == b {
                Ok(line)
            } else {
                Err(Failure {
                    code: 1,
                    message: line,
                })
            }
        }
    }
}

fn multiplicity(kind: MultiplicityKind) -> ladder_core::Result<ApInt> {
    match kind {
        MultiplicityKind::Ladder { m, n, k, l, r } => {
            multiplicity_ladder(&LadderMinorParams::new(m, n, k, l, r)?)
        }
        MultiplicityKind::OneSided { m, n, k, r } => multiplicity_one_sided_ladder(m, n, k, r),
        MultiplicityKind::Generic { m, n, a, b } => {
            multiplicity_generic(&MinorParams::new(m, n, a, b)?)
        }
        MultiplicityKind::Maximal { m, n, r } => multiplicity_maximal(m, n, r),
        MultiplicityKind::Pfaffian { n, l, r } => {
            multiplicity_pfaffian(&PfaffianParams::new(n, l, r)?)
        }
        MultiplicityKind::PfaffianFull { n, r } => multiplicity_pfaffian_full(n, r),
    }
}

fn bounds_from(args: &VerifyArgs) -> Bounds {
    let mut b = Bounds::default();
    if args.desk {
        return b;
    }
    if let Some(max) = args.max {
        match args.suite {
            Suite::ClosedForm => b.closed_form_max = max,
            Suite::Lgv => b.lgv_max = max,
            Suite::Multiplicity => {
                b.ladder_max = max;
                b.collapse_max = max;
            }
            Suite::Pfaffian => {
                b.pfaffian_max_n = max;
                b.pfaffian_full_max_n = max;
            }
            Suite::HockeyStick => b.hockey_max_n = max,
            Suite::Power2 | Suite::Fibonacci => b.identity_max_m = max,
            Suite::All => {
                b.closed_form_max = max;
                b.lgv_max = max;
                b.ladder_max = max;
                b.collapse_max = max;
                b.pfaffian_max_n = max;
                b.pfaffian_full_max_n = max;
            }
        }
    }
    if let Some(m) = args.max_m {
        b.identity_max_m = m;
    }
    if let Some(r) = args.max_r {
        b.max_r = r;
    }
    if let Some(s) = args.samples {
        b.hockey_samples = s;
    }
    if let Some(s) = args.seed {
        b.seed = s;
    }
    b.force = args.force;
    b
}

fn write_csv(path: &PathBuf, records: &[Case]) -> Result<(), Failure> {
    let io = |e: csv::Error| usage(format!("cannot write {}: {e}", path.display()));
    let mut names: Vec<&str> = Vec::new();
    for case in records {
        for (name, _) in &case.params {
            if !names.contains(name) {
                names.push(name);
            }
        }
    }
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let header = std::iter::once("check")
        .chain(names.iter().copied())
        .chain(["value"]);
    w.write_record(header).map_err(io)?;
    for case in records {
        let mut row = vec![case.check.to_string()];
        for name in &names {
            let v = case
                .params
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.clone());
            row.push(v.unwrap_or_default());
        }
        row.push(match &case.got {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        });
        w.write_record(&row).map_err(io)?;
    }
    w.flush()
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn verify(args: VerifyArgs) -> Result<String, Failure> {
    let bounds = bounds_from(&args);
    let run = run_suite(args.suite, &bounds)?;
    if let Some(path) = &args.csv {
        write_csv(path, &run.records)?;
    }
    let mut report = run.report;
    if args.no_timing {
        report.clear_timing();
    }
    let json = serde_json::to_string(&report).expect("report serializes");
    if report.passed() {
        Ok(json)
    } else {
        Err(Failure {
            code: 1,
            message: json,
        })
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        // Comparison output and failing reports still go to stdout.
        Err(Failure { code: 1, message }) => {
            println!("{message}");
            ExitCode::from(1)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
