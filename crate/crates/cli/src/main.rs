use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use confblocks::decomposition::DecompositionGraph;
use confblocks::engine::brute_force_cap_from_env;
use confblocks::io::{self, RingData, RingFile, SurfaceFile};
use confblocks::modularity::GenusCheck;
use confblocks::random::random_move;
use confblocks::{brute_force_dim, catalog, cross_check, detect_transparent, dim_blocks, dim_tensor, Error, Label};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "confblocks", version, about = "Dimensions of spaces of conformal blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension for one boundary labeling, or the whole tensor.
    Dim(DimArgs),
    /// Glue two surfaces along boundary circles.
    Glue(GlueArgs),
    /// Random flips and cylinder insertions; the tensor must not change.
    VerifyMoves(MovesArgs),
    /// Transparent labels and the Verlinde cross-check.
    Modularity(ModularityArgs),
    /// Built-in rings.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct DimArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    surface: PathBuf,
    /// Comma-separated label names, one per boundary circle.
    #[arg(long, value_delimiter = ',')]
    labels: Option<Vec<String>>,
    /// Print the full dimension tensor as JSON.
    #[arg(long, conflicts_with = "labels")]
    all: bool,
    /// Enumerate internal labelings directly (capped by BLOCKS_BRUTE_CAP).
    #[arg(long, conflicts_with = "all")]
    brute_force: bool,
}

#[derive(Args)]
struct GlueArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Pairs `i:j` of a boundary index on A and one on B.
    #[arg(long = "match", value_delimiter = ',', required = true, value_parser = parse_pair)]
    matching: Vec<(usize, usize)>,
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct MovesArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    surface: PathBuf,
    #[arg(long, default_value_t = 8)]
    flips: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ModularityArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long, default_value_t = 3)]
    genus_max: u32,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CatalogArgs {
    #[arg(long)]
    list: bool,
    #[arg(long, value_name = "NAME")]
    emit: Option<String>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s
        .split_once(':')
        .ok_or_else(|| format!("{s:?} is not of the form i:j"))?;
    let index = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((index(i)?, index(j)?))
}

enum Failure {
    Input { kind: &'static str, message: String },
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input {
        kind: "IoError",
        message: format!("{}: {e}", path.display()),
    }
}

fn input(kind: &'static str, message: impl Into<String>) -> Failure {
    Failure::Input {
        kind,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| io_failure(path, e))
}

fn load_ring(path: &Path) -> Result<RingFile, Failure> {
    Ok(io::parse_ring(&read(path)?)?)
}

fn load_surface(path: &Path, ring: &RingFile) -> Result<(SurfaceFile, DecompositionGraph), Failure> {
    let file = io::parse_surface(&read(path)?, Some(ring.data.ring()))?;
    let d = file
        .decomposition
        .clone()
        .unwrap_or_else(|| DecompositionGraph::canonical(&file.surface));
    Ok((file, d))
}

fn dim(args: DimArgs) -> Outcome {
    let ring = load_ring(&args.ring)?;
    let (file, d) = load_surface(&args.surface, &ring)?;
    let fusion = ring.data.ring();
    if args.all {
        print!("{}", io::serialize_tensor(&dim_tensor(fusion, &d)?, fusion));
        return Ok(());
    }
    let labeling: Vec<Label> = match args.labels {
        Some(names) => names
            .iter()
            .map(|n| n.trim())
            .filter(|n| !n.is_empty())
            .map(|n| fusion.label(n))
            .collect::<Result<_, _>>()?,
        None => file.surface.labels().ok_or_else(|| {
            input(
                "ValidationError",
                "boundary is not fully labelled; pass --labels or --all",
            )
        })?,
    };
    let value = if args.brute_force {
        brute_force_dim(fusion, &d, &labeling, brute_force_cap_from_env())?
    } else {
        dim_blocks(fusion, &d, &labeling)?
    };
    println!("{value}");
    Ok(())
}

#[derive(Serialize)]
struct FactorizationSummary {
    labelings: usize,
    mismatches: Vec<Vec<String>>,
    equal: bool,
}

#[derive(Serialize)]
struct GlueReport {
    surface: io::SurfaceDocument,
    factorization: FactorizationSummary,
}

fn glue(args: GlueArgs) -> Outcome {
    let ring = load_ring(&args.ring)?;
    let fusion = ring.data.ring();
    let (a, da) = load_surface(&args.a, &ring)?;
    let (b, db) = load_surface(&args.b, &ring)?;
    let surface = a.surface.glue(&b.surface, &args.matching)?;
    let glued = da.glue(&db, &args.matching)?;
    if !args.verify {
        print!("{}", io::serialize_surface(&surface, Some(&glued), Some(fusion))?);
        return Ok(());
    }
    let report = confblocks::verify::factorization_tensors(fusion, &da, &db, &args.matching)?;
    let mismatches = report
        .mismatches
        .iter()
        .map(|&i| {
            report
                .lhs
                .labels_at(i)
                .into_iter()
                .map(|l| fusion.name(l).to_string())
                .collect()
        })
        .collect();
    let out = GlueReport {
        surface: io::surface_document(&surface, Some(&glued), Some(fusion))?,
        factorization: FactorizationSummary {
            labelings: report.lhs.entries.len(),
            mismatches,
            equal: report.equal,
        },
    };
    print!("{}", io::to_json(&out));
    if report.equal {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct MoveStep {
    #[serde(rename = "move")]
    mv: String,
    atoms: usize,
    edges: usize,
    equal: bool,
}

#[derive(Serialize)]
struct MovesReport {
    seed: u64,
    steps: Vec<MoveStep>,
    equal: bool,
}

fn verify_moves(args: MovesArgs) -> Outcome {
    let ring = load_ring(&args.ring)?;
    let fusion = ring.data.ring();
    let (_, mut d) = load_surface(&args.surface, &ring)?;
    let reference = dim_tensor(fusion, &d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut steps = Vec::with_capacity(args.flips);
    for _ in 0..args.flips {
        let Some(mv) = random_move(&mut rng, &d) else { break };
        d = d.apply(mv)?;
        let equal = dim_tensor(fusion, &d)? == reference;
        steps.push(MoveStep {
            mv: mv.to_string(),
            atoms: d.atoms.len(),
            edges: d.edge_count(),
            equal,
        });
    }
    let equal = steps.iter().all(|s| s.equal);
    print!(
        "{}",
        io::to_json(&MovesReport {
            seed: args.seed,
            steps,
            equal
        })
    );
    if equal {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct CrossCheckRow {
    genus: u32,
    state_sum: u64,
    verlinde: f64,
    residual: f64,
    agree: bool,
}

impl From<GenusCheck> for CrossCheckRow {
    fn from(c: GenusCheck) -> Self {
        CrossCheckRow {
            genus: c.genus,
            state_sum: c.state_sum,
            verlinde: c.verlinde,
            residual: c.residual,
            agree: c.agree,
        }
    }
}

#[derive(Serialize)]
struct ModularityOutput {
    name: String,
    transparent_labels: Vec<String>,
    is_modular: bool,
    deviations: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<Vec<CrossCheckRow>>,
}

fn modularity(args: ModularityArgs) -> Outcome {
    let ring = load_ring(&args.ring)?;
    let data = ring
        .data
        .modular()
        .ok_or_else(|| input("ValidationError", "ring document has no s_matrix"))?;
    let report = detect_transparent(data);
    let cross = if report.is_modular {
        Some(
            cross_check(data, args.genus_max)?
                .into_iter()
                .map(CrossCheckRow::from)
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let agree = cross.as_ref().is_none_or(|rows| rows.iter().all(|r| r.agree));
    let out = ModularityOutput {
        name: ring.name,
        transparent_labels: report
            .transparent_labels
            .iter()
            .map(|&l| data.ring().name(l).to_string())
            .collect(),
        is_modular: report.is_modular,
        deviations: report.deviations,
        cross_check: cross,
    };
    print!("{}", io::to_json(&out));
    if agree {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn catalog_cmd(args: CatalogArgs) -> Outcome {
    if args.list {
        for name in catalog::standard_names() {
            println!("{name}");
        }
    } else if let Some(name) = args.emit {
        let data = catalog::catalog(&name)?;
        print!("{}", io::serialize_ring(&name, &RingData::Modular(data)));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_input("UsageError", &e.to_string());
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Dim(a) => dim(a),
        Command::Glue(a) => glue(a),
        Command::VerifyMoves(a) => verify_moves(a),
        Command::Modularity(a) => modularity(a),
        Command::Catalog(a) => catalog_cmd(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input { kind, message }) => {
            report_input(kind, &message);
            ExitCode::from(2)
        }
    }
}

fn report_input(kind: &str, message: &str) {
    let body = serde_json::json!({ "error": kind, "message": message.trim_end() });
    eprintln!("{body}");
}
