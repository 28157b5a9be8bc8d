//! The end-to-end detection pipeline.
//!
//! generate or load → delay-embed (series input only) → optional greedy
//! subsample → zigzag schedule → zigzag diagram → dominant intervals and the
//! parameter range they map to.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dynamics::{make_buzz_family, FamilySpec, TimeSeries};
use crate::error::{BuzzError, Result, Stage, StageExt};
use crate::geometry::{delay_embed, greedy_permutation, PointCloud, VertexId};
use crate::io::{read_point_cloud, read_series};
use crate::plot::render_diagram;
use crate::schedule::{
    build_schedule_fixed, build_schedule_variable, validate_schedule, GridTime, ZigzagSchedule,
};
use crate::zigzag::{compute_zigzag, PersistencePoint, ZigzagDiagram};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputSpec {
    /// Generate a family of series.
    Generate(FamilySpec),
    /// One series per file, in zigzag order.
    SeriesCsv(Vec<PathBuf>),
    /// One point cloud per file, in zigzag order; embedding is skipped.
    CloudCsv(Vec<PathBuf>),
    /// Inline point clouds (lists of coordinate rows); embedding is skipped.
    Clouds(Vec<Vec<Vec<f64>>>),
}

impl InputSpec {
    fn is_clouds(&self) -> bool {
        matches!(self, InputSpec::CloudCsv(_) | InputSpec::Clouds(_))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub dim: usize,
    pub tau: usize,
    /// Per-series delays overriding `tau`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taus: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subsample {
    pub k: usize,
    #[serde(default)]
    pub seed_index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Radii {
    Fixed(f64),
    PerSnapshot(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub dir: PathBuf,
    #[serde(default = "yes")]
    pub svg: bool,
}

fn yes() -> bool {
    true
}

fn one() -> usize {
    1
}

/// Declarative description of one pipeline run; read from a JSON document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub input: InputSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Embedding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsample: Option<Subsample>,
    pub radii: Radii,
    #[serde(default = "one")]
    pub max_hom_dim: usize,
    /// Simplex dimension cap; defaults to `max_hom_dim + 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter_labels: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

impl PipelineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Sel'kov sweep at `a = 0.1`, `d = 2`, `τ = 3`, 20-point subsamples, `r = 0.25`.
    pub fn selkov_experiment() -> Self {
        PipelineConfig {
            input: InputSpec::Generate(FamilySpec::selkov_sweep()),
            embedding: Some(Embedding {
                dim: 2,
                tau: 3,
                taus: None,
            }),
            subsample: Some(Subsample {
                k: 20,
                seed_index: 0,
            }),
            radii: Radii::Fixed(0.25),
            max_hom_dim: 1,
            max_dim: None,
            parameter_labels: None,
            output: None,
        }
    }

    /// Nine noisy sines, `d = 2`, `τ = 4`, `r = 0.72`.
    pub fn sine_experiment(seed: u64) -> Self {
        PipelineConfig {
            input: InputSpec::Generate(FamilySpec::noisy_sines(seed)),
            embedding: Some(Embedding {
                dim: 2,
                tau: 4,
                taus: None,
            }),
            subsample: None,
            radii: Radii::Fixed(0.72),
            max_hom_dim: 1,
            max_dim: None,
            parameter_labels: None,
            output: None,
        }
    }

    pub fn effective_max_dim(&self) -> usize {
        self.max_dim.unwrap_or(self.max_hom_dim + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Birth,
    Death,
}

/// Parameter value of a grid time. Integer `i` maps to `labels[i]`; a
/// half-integer `i + 0.5` maps to `labels[i]` as a birth and `labels[i + 1]`
/// as a death; the end of the zigzag `n + 1` maps to `labels[n]`.
pub fn map_index_to_parameter(t: GridTime, labels: &[f64], role: Role) -> Result<f64> {
    if labels.is_empty() {
        return Err(BuzzError::param("no parameter labels"));
    }
    let n = labels.len() - 1;
    let h = t.halves() as usize;
    let off = || BuzzError::param(format!("time {t} is outside a zigzag of {} snapshots", n + 1));
    if h == 2 * n + 2 {
        return Ok(labels[n]);
    }
    if h > 2 * n {
        return Err(off());
    }
    let i = h / 2;
    Ok(if h.is_multiple_of(2) {
        labels[i]
    } else {
        match role {
            Role::Birth => labels[i],
            Role::Death => labels[i + 1],
        }
    })
}

/// Longest interval in `dim`; ties go to the earliest birth, then the lowest death.
pub fn dominant_interval(diagram: &ZigzagDiagram, dim: usize) -> Option<PersistencePoint> {
    diagram.in_dim(dim).copied().min_by(|a, b| {
        let la = a.death.halves() - a.birth.halves();
        let lb = b.death.halves() - b.birth.halves();
        lb.cmp(&la)
            .then(a.birth.cmp(&b.birth))
            .then(a.death.cmp(&b.death))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterRange {
    pub appear: f64,
    pub disappear: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub snapshot_sizes: Vec<usize>,
    pub live_counts: Vec<usize>,
    pub total_simplices: usize,
    pub max_live: usize,
    pub seeds: Vec<u64>,
    pub timings_ms: Vec<(String, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineResult {
    pub diagram: ZigzagDiagram,
    /// Longest interval per homology dimension, for dimensions with any points.
    pub dominant: Vec<PersistencePoint>,
    pub parameter_labels: Option<Vec<f64>>,
    /// Parameter values of the dominant 1-dimensional interval.
    pub parameter_range: Option<ParameterRange>,
    pub diagnostics: Diagnostics,
}

impl PipelineResult {
    pub fn dominant_in(&self, dim: usize) -> Option<PersistencePoint> {
        self.dominant.iter().copied().find(|p| p.dim == dim)
    }
}

fn strictly_ordered(labels: &[f64]) -> bool {
    labels.windows(2).all(|w| w[0] < w[1]) || labels.windows(2).all(|w| w[0] > w[1])
}

/// Delay-embeds every series with a shared dimension.
pub fn embed_family(series: &[Vec<f64>], embedding: &Embedding) -> Result<Vec<PointCloud>> {
    if let Some(taus) = &embedding.taus {
        if taus.len() != series.len() {
            return Err(BuzzError::param(format!(
                "{} delays given for {} series",
                taus.len(),
                series.len()
            )));
        }
    }
    series
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let tau = embedding.taus.as_ref().map_or(embedding.tau, |t| t[i]);
            delay_embed(s, embedding.dim, tau)
        })
        .collect()
}

/// Gives snapshot `i` fresh global ids following those of snapshot `i - 1`.
pub fn globalize(clouds: &[PointCloud]) -> Vec<PointCloud> {
    let mut next: VertexId = 0;
    clouds
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let out = c.relabeled(next, i);
            next += c.len() as VertexId;
            out
        })
        .collect()
}

pub fn subsample_all(clouds: &[PointCloud], subsample: &Subsample) -> Result<Vec<PointCloud>> {
    clouds
        .iter()
        .map(|c| greedy_permutation(c, subsample.k, subsample.seed_index))
        .collect()
}

pub fn build_schedule(clouds: &[PointCloud], radii: &Radii, max_dim: usize) -> Result<ZigzagSchedule> {
    match radii {
        Radii::Fixed(r) => build_schedule_fixed(clouds, *r, max_dim),
        Radii::PerSnapshot(rs) => build_schedule_variable(clouds, rs, max_dim),
    }
}

struct Timer(Vec<(String, f64)>, Instant);

impl Timer {
    fn lap(&mut self, stage: Stage) {
        let now = Instant::now();
        self.0
            .push((stage.to_string(), (now - self.1).as_secs_f64() * 1e3));
        self.1 = now;
    }
}

/// Runs the whole pipeline; errors carry the stage that failed.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineResult> {
    let mut timer = Timer(Vec::new(), Instant::now());
    let mut diagnostics = Diagnostics::default();
    let mut family_labels = None;

    let raw: Vec<PointCloud> = match &config.input {
        InputSpec::Generate(spec) => {
            let family: Vec<TimeSeries> = make_buzz_family(spec).stage(Stage::Generate)?;
            diagnostics.seeds = spec.seeds();
            family_labels = Some(spec.labels());
            timer.lap(Stage::Generate);
            let values: Vec<Vec<f64>> = family.into_iter().map(|s| s.values).collect();
            embed(config, &values)?
        }
        InputSpec::SeriesCsv(paths) => {
            let values = paths
                .iter()
                .map(read_series)
                .collect::<Result<Vec<_>>>()
                .stage(Stage::Load)?;
            timer.lap(Stage::Load);
            embed(config, &values)?
        }
        InputSpec::CloudCsv(paths) => paths
            .iter()
            .map(read_point_cloud)
            .collect::<Result<Vec<_>>>()
            .stage(Stage::Load)?,
        InputSpec::Clouds(rows) => rows
            .iter()
            .map(|r| PointCloud::from_rows(r))
            .collect::<Result<Vec<_>>>()
            .stage(Stage::Load)?,
    };
    if config.input.is_clouds() {
        timer.lap(Stage::Load);
    } else {
        timer.lap(Stage::Embed);
    }
    if raw.is_empty() {
        return Err(BuzzError::param("no snapshots").at(Stage::Load));
    }

    let mut clouds = globalize(&raw);
    if let Some(sub) = &config.subsample {
        clouds = subsample_all(&clouds, sub).stage(Stage::Subsample)?;
        timer.lap(Stage::Subsample);
    }
    diagnostics.snapshot_sizes = clouds.iter().map(PointCloud::len).collect();

    let labels = match &config.parameter_labels {
        Some(l) => {
            if l.len() != clouds.len() {
                return Err(BuzzError::param(format!(
                    "{} parameter labels for {} snapshots",
                    l.len(),
                    clouds.len()
                ))
                .at(Stage::Report));
            }
            if !strictly_ordered(l) {
                return Err(BuzzError::param("parameter labels must be strictly ordered").at(Stage::Report));
            }
            Some(l.clone())
        }
        None => family_labels.filter(|l| strictly_ordered(l)),
    };

    let schedule = build_schedule(&clouds, &config.radii, config.effective_max_dim()).stage(Stage::Build)?;
    timer.lap(Stage::Build);
    let report = validate_schedule(&schedule);
    diagnostics.live_counts = report.live_counts;
    diagnostics.total_simplices = report.total_simplices;
    diagnostics.max_live = report.max_live;

    let diagram = compute_zigzag(&schedule, config.max_hom_dim).stage(Stage::Compute)?;
    timer.lap(Stage::Compute);

    let dominant: Vec<PersistencePoint> = (0..=config.max_hom_dim)
        .filter_map(|d| dominant_interval(&diagram, d))
        .collect();
    let parameter_range = match (&labels, dominant_interval(&diagram, 1)) {
        (Some(l), Some(p)) => Some(ParameterRange {
            appear: map_index_to_parameter(p.birth, l, Role::Birth).stage(Stage::Report)?,
            disappear: map_index_to_parameter(p.death, l, Role::Death).stage(Stage::Report)?,
        }),
        _ => None,
    };
    timer.lap(Stage::Report);

    let mut result = PipelineResult {
        diagram,
        dominant,
        parameter_labels: labels,
        parameter_range,
        diagnostics,
    };
    if let Some(out) = &config.output {
        write_outputs(&result, out).stage(Stage::Write)?;
        timer.lap(Stage::Write);
    }
    result.diagnostics.timings_ms = timer.0;
    Ok(result)
}

fn embed(config: &PipelineConfig, series: &[Vec<f64>]) -> Result<Vec<PointCloud>> {
    let embedding = config
        .embedding
        .as_ref()
        .ok_or_else(|| BuzzError::param("series input needs an embedding").at(Stage::Embed))?;
    embed_family(series, embedding).stage(Stage::Embed)
}

/// Writes `diagram.json`, `diagram.csv`, `result.json` and optionally `diagram.svg`.
pub fn write_outputs(result: &PipelineResult, out: &OutputSpec) -> Result<()> {
    fs::create_dir_all(&out.dir)?;
    fs::write(out.dir.join("diagram.json"), result.diagram.to_json()?)?;
    result
        .diagram
        .write_csv(fs::File::create(out.dir.join("diagram.csv"))?)?;
    fs::write(
        out.dir.join("result.json"),
        serde_json::to_string_pretty(result)?,
    )?;
    if out.svg {
        render_diagram(&result.diagram, out.dir.join("diagram.svg"))?;
    }
    Ok(())
}
