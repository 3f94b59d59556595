use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use linf_spanner::delaunay::{rotate_l1, triangulate, validate_triangulation, Triangulation};
use linf_spanner::generator::{generate_chew_family, random_pointset, ChewFamilyParams, Distribution2d};
use linf_spanner::geometry::{Metric, PointSet};
use linf_spanner::router::route;
use linf_spanner::spanner::{shortest_paths_from, stretch_factor, theorem_bound, tolerance};
use linf_spanner_cli::{
    read_json, read_points, svg, write_json, CertificateFile, PairEntry, PairReportFile, PointSetFile,
    StretchReportFile, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(name = "linf-spanner", version, about = "L-infinity / L1 Delaunay spanner toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Linf,
    L1,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Linf => Metric::Linf,
            MetricArg::L1 => Metric::L1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Chew,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Uniform,
    Clustered,
    NearCosquare,
}

impl From<DistArg> for Distribution2d {
    fn from(d: DistArg) -> Distribution2d {
        match d {
            DistArg::Uniform => Distribution2d::UniformBox,
            DistArg::Clustered => Distribution2d::Clustered,
            DistArg::NearCosquare => Distribution2d::NearCosquare,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set.
    Gen {
        #[arg(long, value_enum, requires = "m", conflicts_with = "random")]
        family: Option<Family>,
        #[arg(long)]
        m: Option<usize>,
        /// Largest denominator of the rational stand-in for √2.
        #[arg(long, default_value_t = 1_000_000_000)]
        precision: u64,
        /// Number of random points.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "uniform")]
        dist: DistArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Triangulate a point set.
    Triangulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "linf")]
        metric: MetricArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// All-pairs stretch report, or a single pair with `--pair`.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "linf")]
        metric: MetricArg,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<usize>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a certified path between two points.
    Route {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "linf")]
        metric: MetricArg,
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        pair: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw the triangulation as SVG.
    Svg {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "linf")]
        metric: MetricArg,
        /// Certificate file whose path is highlighted.
        #[arg(long)]
        route: Option<PathBuf>,
        /// Draw the witness square of this edge and the circumsquares next to it.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        witness: Option<Vec<usize>>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure that has already been reported on stderr.
#[derive(Debug)]
struct Reported(u8);

impl std::fmt::Display for Reported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Reported {}

#[derive(Serialize)]
struct GeneralPositionError {
    error: &'static str,
    metric: Metric,
    violations: Vec<String>,
}

fn load_triangulation(path: &Path, metric: Metric) -> Result<Triangulation> {
    let set = read_points(path)?;
    let frame = match metric {
        Metric::L1 => rotate_l1(&set)?,
        _ => set.clone(),
    };
    let violations = frame.validate();
    if !violations.is_empty() {
        let report = GeneralPositionError {
            error: "general-position",
            metric,
            violations: violations.iter().map(|v| v.to_string()).collect(),
        };
        eprintln!("{}", serde_json::to_string_pretty(&report)?);
        return Err(Reported(2).into());
    }
    Ok(triangulate(&set, metric)?)
}

fn pair_of(v: &[usize], n: usize) -> Result<(usize, usize)> {
    let (a, b) = (v[0], v[1]);
    if a >= n || b >= n {
        bail!("pair ({a}, {b}) out of range for {n} points");
    }
    if a == b {
        bail!("pair ({a}, {b}) repeats a point");
    }
    Ok((a, b))
}

fn chew_labels(set: PointSet, d: &linf_spanner::generator::ChewDescriptor) -> PointSet {
    let mut labels: Vec<String> = (0..set.len()).map(|i| i.to_string()).collect();
    for (i, &v) in d.p.iter().enumerate() {
        labels[v] = format!("p{i}");
    }
    for (i, &v) in d.q.iter().enumerate() {
        labels[v] = format!("q{i}");
    }
    for (v, name) in [(d.a, "a"), (d.b, "b"), (d.c1, "c1"), (d.c2, "c2")] {
        labels[v] = name.into();
    }
    set.with_labels(labels)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            family,
            m,
            precision,
            random,
            seed,
            dist,
            out,
        } => {
            let set = match (family, random) {
                (Some(Family::Chew), None) => {
                    let m = m.context("--family chew needs --m")?;
                    let (set, d) = generate_chew_family(ChewFamilyParams { m, precision })?;
                    println!("delta {}", d.delta_f64());
                    println!("expected stretch {}", d.expected_stretch());
                    chew_labels(set, &d)
                }
                (None, Some(n)) => random_pointset(n, seed, dist.into())?,
                _ => bail!("give either --family chew --m M or --random N"),
            };
            write_json(&out, &PointSetFile::from_set(&set))?;
            println!("points {}", set.len());
        }
        Command::Triangulate { input, metric, out } => {
            let t = load_triangulation(&input, metric.into())?;
            let bad = validate_triangulation(&t);
            if !bad.is_empty() {
                for v in &bad {
                    eprintln!("{v}");
                }
                bail!("triangulation failed validation");
            }
            write_json(&out, &linf_spanner_cli::TriangulationFile::from_triangulation(&t))?;
            println!("vertices {} edges {} triangles {}", t.len(), t.edges().len(), t.triangles().len());
        }
        Command::Analyze {
            input,
            metric,
            pair,
            out,
        } => {
            let t = load_triangulation(&input, metric.into())?;
            let holds = if let Some(p) = pair {
                let (a, b) = pair_of(&p, t.len())?;
                let d_t = shortest_paths_from(&t, a)?.dist[b];
                let d_2 = t.points().dist(a, b);
                let bound = theorem_bound(&t, a, b);
                let tol = tolerance(&t);
                let entry = PairEntry {
                    a,
                    b,
                    graph_distance: d_t,
                    euclidean_distance: d_2,
                    ratio: d_t / d_2,
                    bound,
                    margin: bound - d_t,
                };
                let holds = entry.margin >= -tol;
                println!("pair ({a}, {b}) ratio {} margin {}", entry.ratio, entry.margin);
                write_json(
                    &out,
                    &PairReportFile {
                        schema_version: SCHEMA_VERSION,
                        kind: "pair-report".into(),
                        metric: t.metric(),
                        pair: entry,
                        tolerance: tol,
                        bound_holds: holds,
                    },
                )?;
                holds
            } else {
                let r = stretch_factor(&t);
                println!("stretch {} at {:?}, min margin {}", r.max_ratio, r.argmax, r.min_margin);
                write_json(&out, &StretchReportFile::new(&t, &r))?;
                r.bound_holds()
            };
            if !holds {
                eprintln!("path bound violated");
                return Err(Reported(3).into());
            }
        }
        Command::Route {
            input,
            metric,
            pair,
            out,
        } => {
            let t = load_triangulation(&input, metric.into())?;
            let (a, b) = pair_of(&pair, t.len())?;
            let cert = route(&t, a, b)?;
            println!(
                "route {:?} length {} bound {} slack {}",
                cert.path.vertices,
                cert.path.length,
                cert.bound,
                cert.slack()
            );
            write_json(
                &out,
                &CertificateFile {
                    schema_version: SCHEMA_VERSION,
                    kind: "route-certificate".into(),
                    input: PointSetFile::from_set(t.points()),
                    certificate: cert,
                },
            )?;
        }
        Command::Svg {
            input,
            metric,
            route: cert,
            witness,
            out,
        } => {
            let t = load_triangulation(&input, metric.into())?;
            let path = match cert {
                Some(p) => {
                    let c: CertificateFile = read_json(&p)?;
                    if c.input != PointSetFile::from_set(t.points()) {
                        bail!("{} was computed for a different point set", p.display());
                    }
                    Some(c.certificate.path)
                }
                None => None,
            };
            let witness = witness.map(|w| pair_of(&w, t.len())).transpose()?;
            let text = svg::render(&t, path.as_ref(), witness)?;
            fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(r) = e.downcast_ref::<Reported>() {
                return ExitCode::from(r.0);
            }
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
