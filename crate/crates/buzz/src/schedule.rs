//! Zigzag schedules for the union zigzag of Rips complexes.
//!
//! Grid position `i` is `R(X_i, r_i)`, position `i + 0.5` is
//! `R(X_i ∪ X_{i+1}, max(r_i, r_{i+1}))`. A schedule lists every simplex that
//! is ever live together with its alternating appear/disappear times; a
//! simplex with times `[a, d]` is live at all positions `t` with `a <= t < d`.
//! Simplices still live at the last position `n` disappear at `n + 1`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{clique_simplex, for_each_rips_clique, Simplex};
use crate::error::{BuzzError, Result};
use crate::geometry::{disjoint_union, pairwise_distances, PointCloud, VertexId};

/// A time on the half-integer grid, stored as a count of half steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GridTime(u32);

impl GridTime {
    pub const ZERO: GridTime = GridTime(0);

    pub fn from_halves(halves: u32) -> Self {
        GridTime(halves)
    }

    /// Snapshot position `i`.
    pub fn snapshot(i: usize) -> Self {
        GridTime(2 * i as u32)
    }

    /// Union position `i + 0.5`.
    pub fn union(i: usize) -> Self {
        GridTime(2 * i as u32 + 1)
    }

    /// Accepts only non-negative multiples of 0.5.
    pub fn from_f64(t: f64) -> Option<Self> {
        let h = t * 2.0;
        if h.is_finite() && h >= 0.0 && h.fract() == 0.0 && h <= u32::MAX as f64 {
            Some(GridTime(h as u32))
        } else {
            None
        }
    }

    pub fn halves(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_snapshot(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Next grid position.
    pub fn next(self) -> Self {
        GridTime(self.0 + 1)
    }
}

impl fmt::Display for GridTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

impl Serialize for GridTime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for GridTime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = f64::deserialize(d)?;
        GridTime::from_f64(t)
            .ok_or_else(|| serde::de::Error::custom(format!("{t} is not on the half-integer grid")))
    }
}

/// Simplex list plus per-simplex appear/disappear times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZigzagSchedule {
    pub n_snapshots: usize,
    pub radii: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_dim: Option<usize>,
    pub simplices: Vec<Simplex>,
    pub times: Vec<Vec<GridTime>>,
}

impl ZigzagSchedule {
    /// Assembles a schedule from raw parts, e.g. for hand-built examples.
    /// Nothing is checked here; see [`validate_schedule`].
    pub fn from_parts(
        n_snapshots: usize,
        radii: Vec<f64>,
        max_dim: usize,
        simplices: Vec<Simplex>,
        times: Vec<Vec<GridTime>>,
    ) -> Self {
        ZigzagSchedule {
            n_snapshots,
            radii,
            max_dim: Some(max_dim),
            simplices,
            times,
        }
    }

    /// Simplex dimension cap: the declared value, or the largest dimension present.
    pub fn max_dim(&self) -> usize {
        self.max_dim
            .unwrap_or_else(|| self.simplices.iter().map(Simplex::dim).max().unwrap_or(0))
    }

    /// Index of the last snapshot, `n`.
    pub fn last_index(&self) -> usize {
        self.n_snapshots.saturating_sub(1)
    }

    /// Position `n + 1`, the conventional end of the zigzag.
    pub fn end(&self) -> GridTime {
        GridTime::snapshot(self.last_index() + 1)
    }

    /// All grid positions `0, 0.5, ..., n`.
    pub fn positions(&self) -> impl Iterator<Item = GridTime> {
        (0..=2 * self.last_index() as u32).map(GridTime)
    }

    pub fn is_live(&self, index: usize, t: GridTime) -> bool {
        self.times[index]
            .chunks(2)
            .any(|w| w.len() == 2 && w[0] <= t && t < w[1])
    }

    /// Simplices live at position `t`.
    pub fn live_at(&self, t: GridTime) -> impl Iterator<Item = &Simplex> + '_ {
        (0..self.simplices.len())
            .filter(move |&i| self.is_live(i, t))
            .map(move |i| &self.simplices[i])
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Times list of a given simplex, if present.
    pub fn times_of(&self, simplex: &Simplex) -> Option<&[GridTime]> {
        self.simplices
            .iter()
            .position(|s| s == simplex)
            .map(|i| self.times[i].as_slice())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn check_clouds(clouds: &[PointCloud]) -> Result<()> {
    if clouds.is_empty() {
        return Err(BuzzError::param("at least one point cloud is required"));
    }
    let mut dim = None;
    let mut seen: HashSet<VertexId> = HashSet::new();
    for c in clouds.iter().filter(|c| !c.is_empty()) {
        match dim {
            None => dim = Some(c.dim()),
            Some(d) if d != c.dim() => return Err(BuzzError::DimensionMismatch(d, c.dim())),
            _ => {}
        }
        for &id in c.ids() {
            if !seen.insert(id) {
                return Err(BuzzError::IdCollision(id));
            }
        }
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(BuzzError::param(format!("radius {r} must be finite and non-negative")))
    }
}

/// Calls `visit` with every simplex of `R(cloud, r)` and the number of its
/// vertices lying among the first `split` points of the cloud.
fn visit_rips(
    cloud: &PointCloud,
    r: f64,
    max_dim: usize,
    split: usize,
    mut visit: impl FnMut(Simplex, usize),
) -> Result<()> {
    if cloud.is_empty() {
        return Ok(());
    }
    let dm = pairwise_distances(cloud)?;
    let ids = dm.ids().to_vec();
    for_each_rips_clique(&dm, r, max_dim, |local| {
        let left = local.iter().filter(|&&i| i < split).count();
        visit(clique_simplex(&ids, local), left);
    });
    Ok(())
}

fn into_schedule(
    n_snapshots: usize,
    radii: Vec<f64>,
    max_dim: usize,
    map: HashMap<Simplex, Vec<GridTime>>,
) -> ZigzagSchedule {
    let mut entries: Vec<(Simplex, Vec<GridTime>)> = map.into_iter().collect();
    entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let (simplices, times) = entries.into_iter().unzip();
    ZigzagSchedule {
        n_snapshots,
        radii,
        max_dim: Some(max_dim),
        simplices,
        times,
    }
}

/// Fixed-radius schedule computed from the unions alone.
///
/// In `R(X_i ∪ X_{i+1}, r)` a simplex with all vertices in `X_i` lives on
/// `[i - 0.5, i + 1)` (from 0 when `i = 0`), one with all vertices in
/// `X_{i+1}` on `[i + 0.5, i + 2)`, and a mixed one on `[i + 0.5, i + 1)`.
/// At a fixed radius a snapshot simplex gets the same interval from both of
/// its unions, so every simplex has exactly one interval.
pub fn build_schedule_fixed(clouds: &[PointCloud], r: f64, max_dim: usize) -> Result<ZigzagSchedule> {
    check_clouds(clouds)?;
    check_radius(r)?;
    let n = clouds.len() - 1;
    let radii = vec![r; clouds.len()];
    let mut map: HashMap<Simplex, Vec<GridTime>> = HashMap::new();

    if n == 0 {
        visit_rips(&clouds[0], r, max_dim, clouds[0].len(), |s, _| {
            map.insert(s, vec![GridTime::snapshot(0), GridTime::snapshot(1)]);
        })?;
        return Ok(into_schedule(1, radii, max_dim, map));
    }

    for i in 0..n {
        let union = disjoint_union(&clouds[i], &clouds[i + 1])?;
        let split = clouds[i].len();
        visit_rips(&union, r, max_dim, split, |s, left| {
            let verts = s.dim() + 1;
            let interval = if left == verts {
                let appear = if i == 0 { GridTime::ZERO } else { GridTime::union(i - 1) };
                [appear, GridTime::snapshot(i + 1)]
            } else if left == 0 {
                [GridTime::union(i), GridTime::snapshot(i + 2)]
            } else {
                [GridTime::union(i), GridTime::snapshot(i + 1)]
            };
            let prev = map.insert(s, interval.to_vec());
            debug_assert!(
                prev.is_none_or(|p| p == interval),
                "fixed-radius presence must be a single run"
            );
        })?;
    }
    Ok(into_schedule(clouds.len(), radii, max_dim, map))
}

/// Per-snapshot radii: Rips complexes of every snapshot and every union are
/// scanned position by position and each maximal run of presence becomes one
/// appear/disappear pair.
pub fn build_schedule_variable(
    clouds: &[PointCloud],
    radii: &[f64],
    max_dim: usize,
) -> Result<ZigzagSchedule> {
    check_clouds(clouds)?;
    if radii.len() != clouds.len() {
        return Err(BuzzError::param(format!(
            "{} radii given for {} point clouds",
            radii.len(),
            clouds.len()
        )));
    }
    for &r in radii {
        check_radius(r)?;
    }
    let n = clouds.len() - 1;
    let mut presence: HashMap<Simplex, Vec<u32>> = HashMap::new();
    for pos in 0..=2 * n {
        let mut record = |s: Simplex, _| presence.entry(s).or_default().push(pos as u32);
        if pos % 2 == 0 {
            let i = pos / 2;
            visit_rips(&clouds[i], radii[i], max_dim, 0, &mut record)?;
        } else {
            let i = pos / 2;
            let union = disjoint_union(&clouds[i], &clouds[i + 1])?;
            let r = radii[i].max(radii[i + 1]);
            visit_rips(&union, r, max_dim, 0, &mut record)?;
        }
    }
    let last = 2 * n as u32;
    let map = presence
        .into_iter()
        .map(|(s, positions)| (s, runs_to_times(&positions, last)))
        .collect();
    Ok(into_schedule(clouds.len(), radii.to_vec(), max_dim, map))
}

/// Converts sorted presence positions (in half steps) into appear/disappear
/// pairs; a run reaching `last` closes at `last + 2`.
pub(crate) fn runs_to_times(positions: &[u32], last: u32) -> Vec<GridTime> {
    let mut times = Vec::new();
    let mut iter = positions.iter().copied().peekable();
    while let Some(start) = iter.next() {
        let mut end = start;
        while iter.peek() == Some(&(end + 1)) {
            end = iter.next().unwrap();
        }
        times.push(GridTime(start));
        times.push(GridTime(if end == last { last + 2 } else { end + 1 }));
    }
    times
}

/// First invariant violation found in a schedule.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NoSnapshots,
    LengthMismatch { simplices: usize, times: usize },
    RadiiMismatch { radii: usize, snapshots: usize },
    DuplicateSimplex(Simplex),
    DimensionTooHigh { simplex: Simplex, max_dim: usize },
    EmptyTimes(Simplex),
    OddTimes(Simplex),
    NotIncreasing(Simplex),
    OffGrid { simplex: Simplex, time: GridTime },
    MissingFace { simplex: Simplex, face: Simplex },
    FaceOutlived { simplex: Simplex, face: Simplex, position: GridTime },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoSnapshots => write!(f, "schedule has no snapshots"),
            Violation::LengthMismatch { simplices, times } => {
                write!(f, "{simplices} simplices but {times} times lists")
            }
            Violation::RadiiMismatch { radii, snapshots } => {
                write!(f, "{radii} radii for {snapshots} snapshots")
            }
            Violation::DuplicateSimplex(s) => write!(f, "simplex {s} listed twice"),
            Violation::DimensionTooHigh { simplex, max_dim } => {
                write!(f, "simplex {simplex} exceeds max_dim {max_dim}")
            }
            Violation::EmptyTimes(s) => write!(f, "simplex {s} has an empty times list"),
            Violation::OddTimes(s) => write!(f, "simplex {s} has an odd-length times list"),
            Violation::NotIncreasing(s) => {
                write!(f, "times of simplex {s} are not strictly increasing")
            }
            Violation::OffGrid { simplex, time } => {
                write!(f, "time {time} of simplex {simplex} is outside the zigzag")
            }
            Violation::MissingFace { simplex, face } => {
                write!(f, "face-closure violation: face {face} of {simplex} is never listed")
            }
            Violation::FaceOutlived {
                simplex,
                face,
                position,
            } => write!(
                f,
                "face-closure violation: {simplex} is live at {position} but its face {face} is not"
            ),
        }
    }
}

/// Outcome of [`validate_schedule`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleReport {
    pub valid: bool,
    pub violation: Option<Violation>,
    /// Number of live simplices at each grid position.
    pub live_counts: Vec<usize>,
    /// Number of simplices in the whole zigzag.
    pub total_simplices: usize,
    /// Size of the largest single complex.
    pub max_live: usize,
}

/// Checks grid membership, even lengths, monotone times and face-closure at
/// every position. Never fails; the first violation is reported.
pub fn validate_schedule(schedule: &ZigzagSchedule) -> ScheduleReport {
    let mut report = ScheduleReport {
        valid: false,
        violation: None,
        live_counts: Vec::new(),
        total_simplices: schedule.simplices.len(),
        max_live: 0,
    };
    match check_schedule(schedule) {
        Ok(counts) => {
            report.valid = true;
            report.max_live = counts.iter().copied().max().unwrap_or(0);
            report.live_counts = counts;
        }
        Err(v) => report.violation = Some(v),
    }
    report
}

fn check_schedule(schedule: &ZigzagSchedule) -> std::result::Result<Vec<usize>, Violation> {
    if schedule.n_snapshots == 0 {
        return Err(Violation::NoSnapshots);
    }
    if schedule.simplices.len() != schedule.times.len() {
        return Err(Violation::LengthMismatch {
            simplices: schedule.simplices.len(),
            times: schedule.times.len(),
        });
    }
    if !schedule.radii.is_empty() && schedule.radii.len() != schedule.n_snapshots {
        return Err(Violation::RadiiMismatch {
            radii: schedule.radii.len(),
            snapshots: schedule.n_snapshots,
        });
    }
    let last = GridTime::snapshot(schedule.last_index());
    let end = schedule.end();
    let max_dim = schedule.max_dim();
    let mut index: HashMap<&Simplex, usize> = HashMap::with_capacity(schedule.simplices.len());
    for (i, (s, times)) in schedule.simplices.iter().zip(&schedule.times).enumerate() {
        if index.insert(s, i).is_some() {
            return Err(Violation::DuplicateSimplex(s.clone()));
        }
        if s.dim() > max_dim {
            return Err(Violation::DimensionTooHigh {
                simplex: s.clone(),
                max_dim,
            });
        }
        if times.is_empty() {
            return Err(Violation::EmptyTimes(s.clone()));
        }
        if times.len() % 2 == 1 {
            return Err(Violation::OddTimes(s.clone()));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Violation::NotIncreasing(s.clone()));
        }
        for pair in times.chunks(2) {
            if pair[0] > last {
                return Err(Violation::OffGrid {
                    simplex: s.clone(),
                    time: pair[0],
                });
            }
            if pair[1] > end {
                return Err(Violation::OffGrid {
                    simplex: s.clone(),
                    time: pair[1],
                });
            }
        }
    }

    // Face times are strictly increasing, so their intervals are maximal runs
    // and each simplex interval must sit inside a single face interval.
    for (s, times) in schedule.simplices.iter().zip(&schedule.times) {
        for face in s.faces() {
            let Some(&fi) = index.get(&face) else {
                return Err(Violation::MissingFace {
                    simplex: s.clone(),
                    face,
                });
            };
            let face_times = &schedule.times[fi];
            for pair in times.chunks(2) {
                let (a, d) = (pair[0], pair[1].min(end));
                let covered = face_times
                    .chunks(2)
                    .any(|fp| fp[0] <= a && d <= fp[1].min(end));
                if !covered {
                    let position = (a.0..d.0)
                        .map(GridTime)
                        .find(|&t| {
                            !face_times.chunks(2).any(|fp| fp[0] <= t && t < fp[1])
                        })
                        .unwrap_or(a);
                    return Err(Violation::FaceOutlived {
                        simplex: s.clone(),
                        face,
                        position,
                    });
                }
            }
        }
    }

    let positions = 2 * schedule.last_index() + 1;
    let mut delta = vec![0i64; positions + 1];
    for times in &schedule.times {
        for pair in times.chunks(2) {
            delta[pair[0].0 as usize] += 1;
            delta[(pair[1].0 as usize).min(positions)] -= 1;
        }
    }
    let mut live = 0i64;
    Ok(delta[..positions]
        .iter()
        .map(|d| {
            live += d;
            live as usize
        })
        .collect())
}
