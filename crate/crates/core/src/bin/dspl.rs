use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dspl::decomp::{decompose_subdivision, Method};
use dspl::error::{Error, Result};
use dspl::geom::Point;
use dspl::harness::bench::gen_queries;
use dspl::harness::svg::{region_passes_alpha, svg_decomposition, svg_quadtree, svg_subdivision, write_svg};
use dspl::harness::{
    compute_entropy, load_subdivision, random_subdivision, run_bench, save_subdivision, BenchConfig, Built, Kind,
    QueryMode, Structure, Weights,
};
use dspl::quadtree::QuadtreePl;
use dspl::subdivision::Subdivision;

#[derive(Parser)]
#[command(name = "dspl", version, about = "Distance-sensitive point location tools")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose every face and print region counts.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        dec: DecompArgs,
        /// Sample the distance property of every region.
        #[arg(long)]
        alpha_check: bool,
    },
    /// Build a search structure and print its size.
    Build {
        input: PathBuf,
        #[command(flatten)]
        st: StructArgs,
    },
    /// Locate points, one `qid face_id cost_nodes d_boundary` line each.
    ///
    /// Points are read as `x y` lines from stdin unless `--queries` is given.
    Query {
        input: PathBuf,
        #[command(flatten)]
        st: StructArgs,
        /// Generate this many uniform queries instead of reading stdin.
        #[arg(long)]
        queries: Option<usize>,
    },
    /// Run a seeded benchmark and print the report.
    Bench {
        input: PathBuf,
        #[command(flatten)]
        st: StructArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::PerFace)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        /// Key-value output instead of a table.
        #[arg(long)]
        kv: bool,
    },
    /// Generate a random subdivision.
    Gen {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Convex)]
        kind: KindArg,
        /// `uniform`, `area` or `zipf:<s>`.
        #[arg(long, default_value = "uniform", value_parser = parse_weights)]
        weights: Weights,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a subdivision, its decomposition or its quadtree.
    Svg {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SvgWhat::Subdivision)]
        what: SvgWhat,
        #[command(flatten)]
        dec: DecompArgs,
        /// Color regions by the sampled distance check.
        #[arg(long)]
        alpha_check: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Entropy of the face weights, in bits.
    Entropy { input: PathBuf },
}

#[derive(Args)]
struct DecompArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Rotate inputs with shared coordinates into general position.
    #[arg(long)]
    rotate_gp: bool,
}

#[derive(Args)]
struct StructArgs {
    #[arg(long, value_enum, default_value_t = StructArg::Weighted)]
    structure: StructArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    dec: DecompArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructArg {
    Weighted,
    Quadtree,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Sevengons,
    Quads,
    Whole,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Uniform,
    PerFace,
    NearBoundary,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Convex,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum SvgWhat {
    Subdivision,
    Decomposition,
    Quadtree,
}

impl From<StructArg> for Structure {
    fn from(s: StructArg) -> Self {
        match s {
            StructArg::Weighted => Structure::Weighted,
            StructArg::Quadtree => Structure::Quadtree,
        }
    }
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Sevengons => Method::SevenGons,
            MethodArg::Quads => Method::Quads,
            MethodArg::Whole => Method::Whole,
        }
    }
}

impl From<ModeArg> for QueryMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Uniform => QueryMode::Uniform,
            ModeArg::PerFace => QueryMode::PerFace,
            ModeArg::NearBoundary => QueryMode::NearBoundary,
        }
    }
}

fn parse_weights(s: &str) -> std::result::Result<Weights, String> {
    match s {
        "uniform" => Ok(Weights::Uniform),
        "area" => Ok(Weights::Area),
        _ => s
            .strip_prefix("zipf:")
            .and_then(|e| e.parse().ok())
            .map(Weights::Zipf)
            .ok_or_else(|| format!("expected uniform, area or zipf:<s>, got `{s}`")),
    }
}

fn build(sub: &Subdivision, st: &StructArgs) -> Result<Built> {
    Built::build(sub, st.structure.into(), st.dec.method.into(), st.dec.rotate_gp, st.seed)
}

fn run(cli: Cli) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match cli.cmd {
        Cmd::Decompose { input, dec, alpha_check } => {
            let sub = load_subdivision(input)?;
            let ds = decompose_subdivision(&sub, dec.method.into(), dec.rotate_gp)?;
            writeln!(out, "face vertices regions alpha{}", if alpha_check { " failed" } else { "" })?;
            let mut total = 0;
            for (i, (f, d)) in sub.faces().iter().zip(&ds).enumerate() {
                total += d.pieces.len();
                write!(out, "{i} {} {} {}", f.polygon.len(), d.pieces.len(), d.alpha)?;
                if alpha_check {
                    let bad = d
                        .pieces
                        .iter()
                        .enumerate()
                        .filter(|(k, r)| !region_passes_alpha(r, &f.polygon, d.alpha, 256, *k as u64))
                        .count();
                    write!(out, " {bad}")?;
                }
                writeln!(out)?;
            }
            writeln!(out, "# {} faces, {} edges, {total} regions", sub.faces().len(), sub.n())?;
        }
        Cmd::Build { input, st } => {
            let sub = load_subdivision(input)?;
            let t = Instant::now();
            let built = build(&sub, &st)?;
            let ms = t.elapsed().as_secs_f64() * 1e3;
            writeln!(out, "n {}\nfaces {}\nsize {}\nbuild_ms {ms:.1}", sub.n(), sub.faces().len(), built.size())?;
            if let Built::Quadtree(q) = &built {
                let a = q.audit()?;
                writeln!(
                    out,
                    "d_max {}\nempty_leaves {}\nboundary_leaves {}",
                    q.tree().d_max(),
                    a.empty_leaves,
                    a.boundary_leaves
                )?;
            }
        }
        Cmd::Query { input, st, queries } => {
            let sub = load_subdivision(input)?;
            let built = build(&sub, &st)?;
            let pts = match queries {
                Some(m) => gen_queries(&sub, QueryMode::Uniform, m, st.seed),
                None => read_points()?,
            };
            for (qid, p) in pts.into_iter().enumerate() {
                let r = built.locate(&sub, qid, p)?;
                let face = r.face.map_or("-1".to_string(), |f| f.to_string());
                writeln!(out, "{qid} {face} {} {}", r.cost, r.d)?;
            }
        }
        Cmd::Bench { input, st, mode, queries, kv } => {
            let sub = load_subdivision(input)?;
            let cfg = BenchConfig {
                structure: st.structure.into(),
                mode: mode.into(),
                queries,
                seed: st.seed,
                method: st.dec.method.into(),
                rotate_gp: st.dec.rotate_gp,
            };
            let r = run_bench(&sub, &cfg)?;
            write!(out, "{}", if kv { r.to_kv(true) } else { r.to_table() })?;
        }
        Cmd::Gen { n, kind, weights, seed, out: path } => {
            let kind = match kind {
                KindArg::Convex => Kind::ConvexCells,
                KindArg::General => Kind::General,
            };
            let sub = random_subdivision(n, kind, weights, seed)?;
            match path {
                Some(p) => save_subdivision(&sub, p)?,
                None => write!(out, "{}", dspl::harness::format_subdivision(&sub))?,
            }
        }
        Cmd::Svg { input, what, dec, alpha_check, out: path } => {
            let sub = load_subdivision(input)?;
            let svg = match what {
                SvgWhat::Subdivision => svg_subdivision(&sub),
                SvgWhat::Decomposition => {
                    let ds = decompose_subdivision(&sub, dec.method.into(), dec.rotate_gp)?;
                    svg_decomposition(&sub, &ds, alpha_check)
                }
                SvgWhat::Quadtree => svg_quadtree(&QuadtreePl::build(&sub, 0)?),
            };
            write_svg(path, &svg)?;
        }
        Cmd::Entropy { input } => {
            let sub = load_subdivision(input)?;
            writeln!(out, "{}", compute_entropy(&sub))?;
        }
    }
    Ok(())
}

fn read_points() -> Result<Vec<Point>> {
    let mut pts = Vec::new();
    for (k, line) in std::io::stdin().lock().lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let xy: Vec<f64> = body.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(
            |_| Error::Parse { line: k + 1, msg: format!("expected `x y`, got `{body}`") },
        )?;
        match xy[..] {
            [x, y] => pts.push(Point::checked(x, y)?),
            _ => return Err(Error::Parse { line: k + 1, msg: format!("expected `x y`, got `{body}`") }),
        }
    }
    Ok(pts)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dspl: {e}");
            ExitCode::FAILURE
        }
    }
}
