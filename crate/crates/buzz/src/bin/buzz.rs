use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use buzz::io::{read_point_cloud, read_series, write_point_cloud, write_series};
use buzz::pipeline::{build_schedule, embed_family, globalize, subsample_all, Embedding, OutputSpec, Subsample};
use buzz::{
    compute_zigzag, make_buzz_family, render_diagram, run_pipeline, BuzzError, FamilySpec, PipelineConfig,
    Radii, Result, Stage, ZigzagDiagram, ZigzagSchedule,
};

#[derive(Parser)]
#[command(name = "buzz", version, about = "Hopf bifurcation detection with zigzag persistence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated family of series plus a manifest.
    Gen(GenArgs),
    /// Delay-embed series CSVs into point-cloud CSVs.
    Embed(EmbedArgs),
    /// Build a zigzag schedule from point-cloud CSVs.
    Build(BuildArgs),
    /// Compute the diagram of a schedule.
    Compute(ComputeArgs),
    /// Run the full pipeline from a config.
    Run(RunArgs),
    /// Render a diagram as SVG.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sine,
    Selkov,
}

#[derive(Args)]
struct GenArgs {
    /// Built-in family; ignored when --config is given.
    #[arg(value_enum, default_value = "sine")]
    kind: Kind,
    /// JSON family description.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EmbedArgs {
    inputs: Vec<PathBuf>,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    tau: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RadiusArgs {
    #[arg(long, conflicts_with = "radii")]
    radius: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
}

impl RadiusArgs {
    fn get(&self) -> Option<Radii> {
        match (self.radius, &self.radii) {
            (Some(r), _) => Some(Radii::Fixed(r)),
            (None, Some(rs)) => Some(Radii::PerSnapshot(rs.clone())),
            _ => None,
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    radius: RadiusArgs,
    #[arg(long)]
    subsample: Option<usize>,
    /// Simplices up to dimension `p + 1` are built.
    #[arg(long, default_value_t = 1)]
    max_hom_dim: usize,
    /// Schedule JSON path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ComputeArgs {
    schedule: PathBuf,
    #[arg(long, default_value_t = 1)]
    max_hom_dim: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    radius: RadiusArgs,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    subsample: Option<usize>,
    /// Noise seed for generated sine families.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_hom_dim: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    diagram: PathBuf,
    /// SVG path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct Manifest<'a> {
    family: &'a FamilySpec,
    labels: Vec<f64>,
    seeds: Vec<u64>,
    files: Vec<String>,
}

fn indexed(dir: &Path, stem: &str, i: usize) -> PathBuf {
    dir.join(format!("{stem}_{i:03}.csv"))
}

fn generate(args: GenArgs) -> Result<()> {
    let family = match &args.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => match args.kind {
            Kind::Sine => FamilySpec::noisy_sines(args.seed),
            Kind::Selkov => FamilySpec::selkov_sweep(),
        },
    };
    let series = make_buzz_family(&family).map_err(|e| e.at(Stage::Generate))?;
    fs::create_dir_all(&args.out)?;
    let mut files = Vec::new();
    for (i, s) in series.iter().enumerate() {
        let path = indexed(&args.out, "series", i);
        write_series(&path, s)?;
        files.push(path.file_name().unwrap().to_string_lossy().into_owned());
    }
    let manifest = Manifest {
        family: &family,
        labels: family.labels(),
        seeds: family.seeds(),
        files,
    };
    fs::write(args.out.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
    Ok(())
}

fn embed(args: EmbedArgs) -> Result<()> {
    let series = args
        .inputs
        .iter()
        .map(read_series)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at(Stage::Load))?;
    let embedding = Embedding {
        dim: args.dim,
        tau: args.tau,
        taus: None,
    };
    let clouds = embed_family(&series, &embedding).map_err(|e| e.at(Stage::Embed))?;
    fs::create_dir_all(&args.out)?;
    for (i, c) in clouds.iter().enumerate() {
        write_point_cloud(indexed(&args.out, "cloud", i), c)?;
    }
    Ok(())
}

fn build(args: BuildArgs) -> Result<()> {
    let radii = args
        .radius
        .get()
        .ok_or_else(|| BuzzError::Parameter("give --radius or --radii".into()).at(Stage::Build))?;
    let raw = args
        .inputs
        .iter()
        .map(read_point_cloud)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at(Stage::Load))?;
    let mut clouds = globalize(&raw);
    if let Some(k) = args.subsample {
        clouds = subsample_all(&clouds, &Subsample { k, seed_index: 0 }).map_err(|e| e.at(Stage::Subsample))?;
    }
    let schedule = build_schedule(&clouds, &radii, args.max_hom_dim + 1).map_err(|e| e.at(Stage::Build))?;
    if let Some(parent) = args.out.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(&args.out, schedule.to_json()?)?;
    Ok(())
}

fn compute(args: ComputeArgs) -> Result<()> {
    let schedule = ZigzagSchedule::from_json(&fs::read_to_string(&args.schedule)?).map_err(|e| e.at(Stage::Load))?;
    let diagram = compute_zigzag(&schedule, args.max_hom_dim).map_err(|e| e.at(Stage::Compute))?;
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("diagram.json"), diagram.to_json()?)?;
    diagram.write_csv(fs::File::create(args.out.join("diagram.csv"))?)?;
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let mut config = PipelineConfig::from_path(&args.config).map_err(|e| e.at(Stage::Load))?;
    if let Some(r) = args.radius.get() {
        config.radii = r;
    }
    if args.dim.is_some() || args.tau.is_some() {
        let e = config.embedding.get_or_insert(Embedding {
            dim: 2,
            tau: 1,
            taus: None,
        });
        e.dim = args.dim.unwrap_or(e.dim);
        e.tau = args.tau.unwrap_or(e.tau);
    }
    if let Some(k) = args.subsample {
        let seed_index = config.subsample.as_ref().map_or(0, |s| s.seed_index);
        config.subsample = Some(Subsample { k, seed_index });
    }
    if let Some(seed) = args.seed {
        if let buzz::pipeline::InputSpec::Generate(FamilySpec::Sine { seed: s, .. }) = &mut config.input {
            *s = seed;
        }
    }
    if let Some(p) = args.max_hom_dim {
        config.max_hom_dim = p;
    }
    if let Some(dir) = args.out {
        config.output = Some(OutputSpec { dir, svg: true });
    }
    let result = run_pipeline(&config)?;
    for p in &result.dominant {
        println!("dominant H{}: ({}, {})", p.dim, p.birth, p.death);
    }
    if let Some(range) = &result.parameter_range {
        println!("parameter range: {} to {}", range.appear, range.disappear);
    }
    Ok(())
}

fn plot(args: PlotArgs) -> Result<()> {
    let diagram = ZigzagDiagram::from_json(&fs::read_to_string(&args.diagram)?).map_err(|e| e.at(Stage::Load))?;
    render_diagram(&diagram, &args.out).map_err(|e| e.at(Stage::Write))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, fallback) = match cli.command {
        Command::Gen(a) => (generate(a), Stage::Generate),
        Command::Embed(a) => (embed(a), Stage::Embed),
        Command::Build(a) => (build(a), Stage::Build),
        Command::Compute(a) => (compute(a), Stage::Compute),
        Command::Run(a) => (run(a), Stage::Report),
        Command::Plot(a) => (plot(a), Stage::Write),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.at(fallback));
            ExitCode::FAILURE
        }
    }
}
