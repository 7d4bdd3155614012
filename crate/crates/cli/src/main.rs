mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand};
use log::{info, warn};
use serde::Serialize;

use config::{ExperimentConfig, Format, Overrides};
use cutrank::certificates::{build_certificate, cropped_cube_certificate, verify_certificate, CertDAG};
use cutrank::closures::{balas_sequence, closure_round, rank_upper_bound, ClosureError, FamilySpec, Mode};
use cutrank::constructions::{cropped_cube, edge_expansion, random_regular_graph, tseitin_polytope, Graph};
use cutrank::exactgeom::{dd_convert_h_to_v, HPolytope, VPolytope};
use cutrank::rational::{format_rational, int, Rational};

#[derive(Parser)]
#[command(name = "cutrank", version, about = "Exact closure ranks and {0,1/2}-certificates for 0-1 polytopes")]
struct Cli {
    /// JSON experiment config (seed, family, guards, format).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of simultaneous splits.
    #[arg(long, global = true)]
    t: Option<usize>,
    /// Bound on |π_i| for the enumerated disjunctions.
    #[arg(long, global = true)]
    coeff_bound: Option<u32>,
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<Mode>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Random d-regular graph (JSON, or DIMACS with --format text).
    GenGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Tseitin polytope of a graph.
    Tseitin {
        #[arg(long)]
        graph: PathBuf,
    },
    /// The n-dimensional cropped cube.
    CroppedCube {
        #[arg(long)]
        n: usize,
    },
    /// Exact edge expansion and the certificate bound it implies.
    Expansion {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Applies closure rounds with the configured family.
    Closure {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value_t = 1)]
        max_rounds: usize,
    },
    /// Brackets the rank: closure rounds and Balas' sequence from above, a
    /// certificate from below.
    Rank {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value_t = 10)]
        max_rounds: usize,
        /// Use this certificate for the lower bound instead of building one.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Builds a certificate for the all-1/2 point.
    Certify {
        #[arg(long, conflicts_with = "cropped_cube", required_unless_present = "cropped_cube")]
        graph: Option<PathBuf>,
        #[arg(long)]
        cropped_cube: Option<usize>,
    },
    /// Checks a certificate, by default against the polytope it names.
    Verify {
        certificate: PathBuf,
        #[command(flatten)]
        instance: OptionalInstance,
    },
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Instance {
    #[arg(long)]
    cropped_cube: Option<usize>,
    /// Graph file (JSON or DIMACS) whose Tseitin polytope is used.
    #[arg(long)]
    tseitin: Option<PathBuf>,
    /// Polytope JSON file.
    #[arg(long)]
    polytope: Option<PathBuf>,
}

#[derive(Args, Clone)]
#[group(required = false, multiple = false)]
struct OptionalInstance {
    #[arg(long)]
    cropped_cube: Option<usize>,
    #[arg(long)]
    tseitin: Option<PathBuf>,
    #[arg(long)]
    polytope: Option<PathBuf>,
}

enum Loaded {
    Cropped(usize, HPolytope),
    Tseitin(Graph, HPolytope),
    Plain(HPolytope),
}

impl Loaded {
    fn polytope(&self) -> &HPolytope {
        match self {
            Loaded::Cropped(_, p) | Loaded::Tseitin(_, p) | Loaded::Plain(p) => p,
        }
    }
}

fn load(cropped: Option<usize>, tseitin: Option<&Path>, polytope: Option<&Path>) -> Result<Option<Loaded>> {
    if let Some(n) = cropped {
        return Ok(Some(Loaded::Cropped(n, cropped_cube(n)?)));
    }
    if let Some(path) = tseitin {
        let graph = read_graph(path)?;
        let p = tseitin_polytope(&graph)?;
        return Ok(Some(Loaded::Tseitin(graph, p)));
    }
    if let Some(path) = polytope {
        let p: HPolytope = serde_json::from_str(&read(path)?)
            .with_context(|| format!("parsing polytope {}", path.display()))?;
        return Ok(Some(Loaded::Plain(p)));
    }
    Ok(None)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

/// An input file that could not be read as what it claims to be.
#[derive(Debug)]
struct ParseFailure;

impl std::fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("unusable input")
    }
}

impl std::error::Error for ParseFailure {}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.path {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    /// Human-readable summary lines: standard output unless the artifact is
    /// already going there.
    fn note(&self, text: &str) {
        if self.path.is_some() {
            println!("{text}");
        } else {
            eprintln!("{text}");
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn polytope_text(p: &HPolytope, v: &VPolytope) -> String {
    let mut s = format!("dimension {}\n{} rows\n", p.dim(), p.rows().len());
    for row in p.rows() {
        s += &format!("  {row}\n");
    }
    s += &format!("{} vertices\n", v.len());
    for x in v.vertices() {
        s += &format!("  {x}\n");
    }
    s
}

#[derive(Serialize)]
struct PolytopeOutput<'a> {
    h: &'a HPolytope,
    v: &'a VPolytope,
}

fn emit_polytope(out: &Output, format: Format, p: &HPolytope) -> Result<()> {
    let v = dd_convert_h_to_v(p)?;
    match format {
        Format::Json => out.emit(&json(&PolytopeOutput { h: p, v: &v })?),
        Format::Text => out.emit(&polytope_text(p, &v)),
        Format::Dot => bail!("DOT output is only available for certificates"),
    }
}

fn usage_error(message: &str) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, message).exit()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<ParseFailure>() || e.chain().any(|c| c.is::<ParseFailure>()) {
                ExitCode::from(3)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let flags = Overrides {
        seed: cli.seed,
        mode: cli.mode,
        t: cli.t,
        coeff_bound: cli.coeff_bound,
        format: cli.format,
    };
    let config = ExperimentConfig::resolve(cli.config.as_deref(), &flags)?;
    let format_or = |default| config.format.unwrap_or(default);
    let out = Output { path: cli.out.clone() };
    info!("config: {}", serde_json::to_string(&config)?);

    match cli.command {
        Command::GenGraph { n, d } => {
            if n * d % 2 == 1 || d >= n {
                usage_error(&format!("no {d}-regular graph on {n} vertices (need n·d even and d < n)"));
            }
            let graph = random_regular_graph(n, d, config.seed)
                .with_context(|| format!("generating with seed {}; retry with another --seed", config.seed))?;
            match format_or(Format::Json) {
                Format::Text => out.emit(&graph.to_dimacs())?,
                _ => out.emit(&json(&graph)?)?,
            }
        }
        Command::Tseitin { graph } => {
            emit_polytope(&out, format_or(Format::Json), &tseitin_polytope(&read_graph(&graph)?)?)?;
        }
        Command::CroppedCube { n } => emit_polytope(&out, format_or(Format::Json), &cropped_cube(n)?)?,
        Command::Expansion { graph } => expansion(&out, format_or(Format::Text), &read_graph(&graph)?, config.t())?,
        Command::Closure { instance, max_rounds } => {
            let loaded = load(instance.cropped_cube, instance.tseitin.as_deref(), instance.polytope.as_deref())?
                .expect("clap requires an instance");
            let mut p = loaded.polytope().clone();
            for round in 1..=max_rounds {
                p = closure_round(&p, &config.family, &config.guards)?;
                info!("round {round}: {} rows", p.rows().len());
            }
            emit_polytope(&out, format_or(Format::Json), &p)?;
        }
        Command::Rank { instance, max_rounds, certificate } => {
            let loaded = load(instance.cropped_cube, instance.tseitin.as_deref(), instance.polytope.as_deref())?
                .expect("clap requires an instance");
            return rank(&out, format_or(Format::Text), &config, &loaded, max_rounds, certificate.as_deref());
        }
        Command::Certify { graph, cropped_cube } => {
            let t = config.t();
            let cert = match (graph, cropped_cube) {
                (Some(path), _) => build_certificate(&read_graph(&path)?, t, &config.guards)?,
                (None, Some(n)) => cropped_cube_certificate(n, t, &config.guards)?,
                (None, None) => unreachable!("clap requires one"),
            };
            let report = cutrank::certificates::verify_against_reference(&cert);
            if !report.valid {
                bail!("built certificate does not verify: {:?}", report.failures.first());
            }
            match format_or(Format::Json) {
                Format::Dot => out.emit(&cert.to_dot())?,
                _ => out.emit(&json(&cert)?)?,
            }
            out.note(&format!("nodes {}", cert.len()));
            out.note(&format!("min_red_count {}", report.min_red_count));
            out.note(&format!("rank lower bound {}", report.min_red_count + 1));
        }
        Command::Verify { certificate, instance } => {
            return verify(&out, format_or(Format::Text), cli.t, &certificate, &instance);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ExpansionOutput {
    #[serde(with = "cutrank::rational::serde_rational")]
    expansion: Rational,
    witness: Vec<usize>,
    t: usize,
    bound: i64,
    hypothesis_holds: bool,
}

fn expansion(out: &Output, format: Format, graph: &Graph, t: usize) -> Result<()> {
    let report = edge_expansion(graph)?;
    let c = report.expansion.clone();
    let t_int = int(t as i64);
    let raw = ((&c - (&t_int + int(1))) * int((graph.n() / 2) as i64) / &t_int).ceil();
    let bound: i64 = raw.to_integer().try_into().context("bound out of range")?;
    let hypothesis_holds = c > &t_int + int(1);
    if !hypothesis_holds {
        warn!("expansion {} does not exceed t + 1 = {}; the bound is vacuous", format_rational(&c), t + 1);
    }
    let result = ExpansionOutput { expansion: c, witness: report.witness, t, bound: bound.max(0), hypothesis_holds };
    match format {
        Format::Json => out.emit(&json(&result)?),
        _ => out.emit(&format!(
            "c = {}\nwitness S = {:?}\nbound (t = {t}) = {}\n",
            format_rational(&result.expansion),
            result.witness,
            result.bound
        )),
    }
}

#[derive(Serialize)]
struct RankOutput {
    family: FamilySpec,
    vertex_counts: Vec<usize>,
    closure_upper: Option<usize>,
    stalled: bool,
    closure_error: Option<String>,
    balas_upper: Option<usize>,
    upper: Option<usize>,
    lower: Option<usize>,
    agree: bool,
}

fn rank(
    out: &Output,
    format: Format,
    config: &ExperimentConfig,
    loaded: &Loaded,
    max_rounds: usize,
    certificate: Option<&Path>,
) -> Result<ExitCode> {
    let p = loaded.polytope();
    let t = config.t();
    let (vertex_counts, closure_upper, stalled, closure_error) =
        match rank_upper_bound(p, &config.family, max_rounds, &config.guards) {
            Ok(r) => (r.vertex_counts, r.upper, r.stalled, None),
            Err(e @ ClosureError::Guard { .. }) => {
                warn!("closure iteration stopped: {e}");
                (Vec::new(), None, false, Some(e.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
    let balas_upper = match balas_sequence(p, t, &config.guards) {
        Ok(k) => Some(k),
        Err(e @ ClosureError::Guard { .. }) => {
            warn!("Balas sequence skipped: {e}");
            None
        }
        Err(e) => return Err(e.into()),
    };

    let cert = match (certificate, loaded) {
        (Some(path), _) => Some(
            serde_json::from_str::<CertDAG>(&read(path)?)
                .with_context(|| format!("parsing certificate {}", path.display()))?,
        ),
        (None, Loaded::Cropped(n, _)) => Some(cropped_cube_certificate(*n, t, &config.guards)?),
        (None, Loaded::Tseitin(g, _)) if g.n() % 2 == 1 => Some(build_certificate(g, t, &config.guards)?),
        _ => None,
    };
    let lower = match cert {
        Some(cert) => {
            let report = verify_certificate(&cert, p, t);
            if !report.valid {
                bail!("certificate does not verify: {:?}", report.failures.first());
            }
            Some(report.min_red_count + 1)
        }
        None => None,
    };

    let upper = [closure_upper, balas_upper].into_iter().flatten().min();
    let agree = lower.is_some() && lower == upper;
    let result = RankOutput {
        family: config.family,
        vertex_counts,
        closure_upper,
        stalled,
        closure_error,
        balas_upper,
        upper,
        lower,
        agree,
    };
    match format {
        Format::Json => out.emit(&json(&result)?)?,
        _ => out.emit(&rank_text(&result))?,
    }
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn rank_text(r: &RankOutput) -> String {
    let mut s = String::new();
    for (round, count) in r.vertex_counts.iter().enumerate() {
        s += &format!("round {round}: {count} vertices\n");
    }
    let show = |v: Option<usize>| v.map_or("exhausted".to_string(), |k| k.to_string());
    if let Some(e) = &r.closure_error {
        s += &format!("closure: {e}\n");
    } else {
        s += &format!("closure upper {}{}\n", show(r.closure_upper), if r.stalled { " (stalled)" } else { "" });
    }
    s += &format!("balas upper {}\n", show(r.balas_upper));
    s += &format!("upper {}\n", show(r.upper));
    s += &format!("lower {}\n", r.lower.map_or("none".to_string(), |k| k.to_string()));
    match (r.agree, r.lower, r.upper) {
        (true, Some(k), _) => s += &format!("rank = {k}\n"),
        (_, Some(lo), Some(hi)) => s += &format!("{lo} <= rank <= {hi}\n"),
        _ => s += "bracket open\n",
    }
    s
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    valid: bool,
    t: usize,
    min_red_count: usize,
    max_red_count: usize,
    rank_lower_bound: Option<usize>,
    failures: &'a [cutrank::certificates::Failure],
}

fn verify(out: &Output, format: Format, t_flag: Option<usize>, path: &Path, instance: &OptionalInstance) -> Result<ExitCode> {
    let text = read(path).context(ParseFailure)?;
    let cert: CertDAG = serde_json::from_str(&text)
        .with_context(|| format!("parsing certificate {}", path.display()))
        .context(ParseFailure)?;
    let loaded = load(instance.cropped_cube, instance.tseitin.as_deref(), instance.polytope.as_deref())
        .context(ParseFailure)?;
    let polytope = match &loaded {
        Some(l) => l.polytope().clone(),
        None => match &cert.reference {
            cutrank::certificates::Reference::Tseitin(g) => tseitin_polytope(g)?,
            cutrank::certificates::Reference::HPolytope(p) => p.clone(),
        },
    };
    if polytope.dim() != cert.reference.dim() {
        return Err(anyhow::anyhow!(
            "certificate labels have {} coordinates but the polytope has dimension {}",
            cert.reference.dim(),
            polytope.dim()
        )
        .context(ParseFailure));
    }
    let t = t_flag.unwrap_or(cert.t);
    let report = verify_certificate(&cert, &polytope, t);
    let result = VerifyOutput {
        valid: report.valid,
        t,
        min_red_count: report.min_red_count,
        max_red_count: report.max_red_count,
        rank_lower_bound: report.rank_lower_bound(),
        failures: &report.failures,
    };
    match format {
        Format::Json => out.emit(&json(&result)?)?,
        _ => {
            let mut s = format!("{}\nmin_red_count {}\n", if report.valid { "valid" } else { "invalid" }, report.min_red_count);
            match report.failures.first() {
                None => s += &format!("rank lower bound {}\n", report.min_red_count + 1),
                Some(f) => s += &format!("node {}: {}\n", f.node, f.rule),
            }
            out.emit(&s)?;
        }
    }
    Ok(if report.valid { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
