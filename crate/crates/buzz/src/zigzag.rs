//! Zigzag persistence over Z/2.
//!
//! [`compute_zigzag`] turns a schedule into a stream of single-simplex
//! insertions and deletions that starts and ends with the empty complex.
//! Every insertion becomes its own simplex copy; the copies are added in
//! insertion order, then a cone apex `ω` is joined to each copy in reverse
//! deletion order. Standard persistence of that filtration pairs events of
//! the stream: a pair of events `e < e'` is a zigzag interval alive strictly
//! after `e` and up to `e'`. Its homological dimension is that of the
//! simplex when `e` inserts it, one less when `e` deletes it. The apex is
//! added first so that its own component is the only essential class.
//!
//! [`standard_persistence`] is an independent textbook column reduction used
//! to cross-check monotone schedules.

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::complex::{betti_numbers, Simplex, SimplicialComplex};
use crate::error::{BuzzError, Result};
use crate::schedule::{validate_schedule, GridTime, ZigzagSchedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PersistencePoint {
    pub dim: usize,
    pub birth: GridTime,
    pub death: GridTime,
}

impl PersistencePoint {
    pub fn new(dim: usize, birth: GridTime, death: GridTime) -> Self {
        PersistencePoint { dim, birth, death }
    }

    /// Lifetime in grid units.
    pub fn lifetime(&self) -> f64 {
        self.death.as_f64() - self.birth.as_f64()
    }

    /// Live at grid position `t`: `birth <= t < death`.
    pub fn contains(&self, t: GridTime) -> bool {
        self.birth <= t && t < self.death
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramMetadata {
    pub max_hom_dim: usize,
    pub max_dim: usize,
    pub radii: Vec<f64>,
}

/// Multiset of zigzag intervals, sorted by (dim, birth, death).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZigzagDiagram {
    pub n_snapshots: usize,
    pub points: Vec<PersistencePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<DiagramMetadata>,
}

impl ZigzagDiagram {
    pub fn new(n_snapshots: usize, mut points: Vec<PersistencePoint>) -> Self {
        points.sort_unstable();
        ZigzagDiagram {
            n_snapshots,
            points,
            metadata: None,
        }
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &PersistencePoint> + '_ {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    /// Number of intervals of dimension `dim` live at `t`.
    pub fn alive_at(&self, t: GridTime, dim: usize) -> usize {
        self.in_dim(dim).filter(|p| p.contains(t)).count()
    }

    pub fn max_point_dim(&self) -> Option<usize> {
        self.points.iter().map(|p| p.dim).max()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// `dim,birth,death` rows with a header line.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["dim", "birth", "death"])?;
        for p in &self.points {
            w.serialize((p.dim, p.birth.as_f64(), p.death.as_f64()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EventKind {
    Insert,
    Delete,
}

#[derive(Clone, Copy, Debug)]
struct Event {
    simplex: usize,
    kind: EventKind,
}

/// Single-simplex insertion/deletion stream of a schedule.
struct EventStream {
    events: Vec<Event>,
    /// Number of events applied once grid position `t` (in half steps) is reached.
    reached: Vec<usize>,
}

impl EventStream {
    fn new(schedule: &ZigzagSchedule) -> Self {
        let steps = schedule.end().halves() as usize + 1;
        let mut adds: Vec<Vec<usize>> = vec![Vec::new(); steps];
        let mut dels: Vec<Vec<usize>> = vec![Vec::new(); steps];
        for (i, times) in schedule.times.iter().enumerate() {
            for pair in times.chunks(2) {
                adds[pair[0].halves() as usize].push(i);
                dels[pair[1].halves() as usize].push(i);
            }
        }
        let by_simplex = |a: &usize, b: &usize| schedule.simplices[*a].cmp(&schedule.simplices[*b]);
        let last = 2 * schedule.last_index();
        let mut events = Vec::new();
        let mut reached = Vec::with_capacity(last + 1);
        for step in 0..steps {
            let mut d = std::mem::take(&mut dels[step]);
            d.sort_unstable_by(|a, b| by_simplex(b, a));
            events.extend(d.into_iter().map(|simplex| Event {
                simplex,
                kind: EventKind::Delete,
            }));
            let mut a = std::mem::take(&mut adds[step]);
            a.sort_unstable_by(by_simplex);
            events.extend(a.into_iter().map(|simplex| Event {
                simplex,
                kind: EventKind::Insert,
            }));
            if step <= last {
                reached.push(events.len());
            }
        }
        EventStream { events, reached }
    }

    /// Grid interval of the class living on complexes `after + 1 ..= upto`,
    /// or `None` when no grid position falls inside.
    fn grid_interval(&self, after: usize, upto: usize, end: GridTime) -> Option<(GridTime, GridTime)> {
        let first = self.reached.partition_point(|&c| c < after + 1);
        let past = self.reached.partition_point(|&c| c <= upto);
        if first >= past {
            return None;
        }
        let last_pos = past - 1;
        let death = if last_pos + 1 == self.reached.len() {
            end
        } else {
            GridTime::from_halves(last_pos as u32 + 1)
        };
        Some((GridTime::from_halves(first as u32), death))
    }
}

/// Columns of the coned filtration, stored flat.
struct ConedFiltration {
    dims: Vec<u8>,
    offsets: Vec<usize>,
    entries: Vec<u32>,
    /// Stream event that each column stands for; column 0 (the apex) has none.
    event: Vec<u32>,
}

impl ConedFiltration {
    fn build(schedule: &ZigzagSchedule, stream: &EventStream) -> Self {
        let index: HashMap<&Simplex, usize> = schedule
            .simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let faces: Vec<Vec<u32>> = schedule
            .simplices
            .iter()
            .map(|s| s.faces().map(|f| index[&f] as u32).collect())
            .collect();

        let inserts = stream
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Insert)
            .count();
        let total = 1 + 2 * inserts;
        let mut g = ConedFiltration {
            dims: Vec::with_capacity(total),
            offsets: Vec::with_capacity(total + 1),
            entries: Vec::new(),
            event: Vec::with_capacity(total),
        };
        g.offsets.push(0);
        g.push(0, &mut [], u32::MAX);

        let mut current = vec![u32::MAX; schedule.simplices.len()];
        // (deleted copy, deletion event) in stream order
        let mut deleted: Vec<(u32, u32)> = Vec::with_capacity(inserts);
        let mut scratch = Vec::new();
        for (e, ev) in stream.events.iter().enumerate() {
            match ev.kind {
                EventKind::Insert => {
                    scratch.clear();
                    scratch.extend(faces[ev.simplex].iter().map(|&f| current[f as usize]));
                    let dim = schedule.simplices[ev.simplex].dim() as u8;
                    current[ev.simplex] = g.dims.len() as u32;
                    g.push(dim, &mut scratch, e as u32);
                }
                EventKind::Delete => {
                    deleted.push((current[ev.simplex], e as u32));
                    current[ev.simplex] = u32::MAX;
                }
            }
        }

        let mut cone = vec![u32::MAX; 1 + inserts];
        for &(copy, e) in deleted.iter().rev() {
            scratch.clear();
            scratch.push(copy);
            let (lo, hi) = (g.offsets[copy as usize], g.offsets[copy as usize + 1]);
            if lo == hi {
                scratch.push(0);
            } else {
                for k in lo..hi {
                    scratch.push(cone[g.entries[k] as usize]);
                }
            }
            cone[copy as usize] = g.dims.len() as u32;
            let dim = g.dims[copy as usize] + 1;
            g.push(dim, &mut scratch, e);
        }
        g
    }

    fn push(&mut self, dim: u8, boundary: &mut [u32], event: u32) {
        boundary.sort_unstable();
        self.entries.extend_from_slice(boundary);
        self.offsets.push(self.entries.len());
        self.dims.push(dim);
        self.event.push(event);
    }

    fn len(&self) -> usize {
        self.dims.len()
    }

    fn boundary(&self, j: usize) -> &[u32] {
        &self.entries[self.offsets[j]..self.offsets[j + 1]]
    }

    /// Persistence pairs `(creator, destroyer)` for destroyer columns of
    /// dimension `1..=top_dim`, reduced top-down with clearing.
    fn reduce(&self, top_dim: usize) -> Vec<(u32, u32)> {
        let n = self.len();
        let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); top_dim + 1];
        for j in 0..n {
            let d = self.dims[j] as usize;
            if (1..=top_dim).contains(&d) {
                by_dim[d].push(j as u32);
            }
        }
        let mut owner = vec![u32::MAX; n];
        let mut cleared = vec![false; n];
        let mut reduced: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut pairs = Vec::new();
        let mut col: Vec<u32> = Vec::new();
        let mut tmp: Vec<u32> = Vec::new();
        for d in (1..=top_dim).rev() {
            for &j in &by_dim[d] {
                if cleared[j as usize] {
                    continue;
                }
                col.clear();
                col.extend_from_slice(self.boundary(j as usize));
                while let Some(&low) = col.last() {
                    let k = owner[low as usize];
                    if k == u32::MAX {
                        break;
                    }
                    let other = match reduced.get(&k) {
                        Some(c) => c.as_slice(),
                        None => self.boundary(k as usize),
                    };
                    sym_diff_into(&col, other, &mut tmp);
                    std::mem::swap(&mut col, &mut tmp);
                }
                if let Some(&low) = col.last() {
                    owner[low as usize] = j;
                    cleared[low as usize] = true;
                    if col.as_slice() != self.boundary(j as usize) {
                        reduced.insert(j, col.clone());
                    }
                    pairs.push((low, j));
                }
            }
        }
        pairs
    }
}

fn sym_diff_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Interval decomposition of the zigzag module in dimensions `0..=max_hom_dim`.
pub fn compute_zigzag(schedule: &ZigzagSchedule, max_hom_dim: usize) -> Result<ZigzagDiagram> {
    let report = validate_schedule(schedule);
    if let Some(v) = report.violation {
        return Err(BuzzError::InvalidSchedule(v));
    }
    let max_dim = schedule.max_dim();
    if max_hom_dim + 1 > max_dim {
        return Err(BuzzError::param(format!(
            "homology dimension {max_hom_dim} needs simplices of dimension {}, schedule stops at {max_dim}",
            max_hom_dim + 1
        )));
    }
    let stream = EventStream::new(schedule);
    let coned = ConedFiltration::build(schedule, &stream);
    let end = schedule.end();

    let mut points = Vec::new();
    for (creator, destroyer) in coned.reduce(max_hom_dim + 2) {
        let a = coned.event[creator as usize] as usize;
        let b = coned.event[destroyer as usize] as usize;
        let (first, second) = if a < b { (a, b) } else { (b, a) };
        let ev = stream.events[first];
        let sdim = schedule.simplices[ev.simplex].dim();
        let dim = match ev.kind {
            EventKind::Insert => sdim,
            EventKind::Delete => match sdim.checked_sub(1) {
                Some(d) => d,
                None => continue,
            },
        };
        if dim > max_hom_dim {
            continue;
        }
        if let Some((birth, death)) = stream.grid_interval(first, second, end) {
            points.push(PersistencePoint::new(dim, birth, death));
        }
    }
    let mut diagram = ZigzagDiagram::new(schedule.n_snapshots, points);
    diagram.metadata = Some(DiagramMetadata {
        max_hom_dim,
        max_dim,
        radii: schedule.radii.clone(),
    });
    Ok(diagram)
}

/// Ordered simplex additions of a schedule in which every simplex appears
/// once and never disappears before the end, or `None` if it is not monotone.
pub fn monotone_filtration(schedule: &ZigzagSchedule) -> Option<Vec<(Simplex, GridTime)>> {
    let end = schedule.end();
    let mut out = Vec::with_capacity(schedule.len());
    for (s, times) in schedule.simplices.iter().zip(&schedule.times) {
        if times.len() != 2 || times[1] != end {
            return None;
        }
        out.push((s.clone(), times[0]));
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Some(out)
}

/// Standard persistence of a face-ordered filtration with grid times;
/// classes never killed die at `n + 1`, zero-length pairs are dropped.
pub fn standard_persistence(
    filtration: &[(Simplex, GridTime)],
    n_snapshots: usize,
) -> Result<ZigzagDiagram> {
    let end = GridTime::snapshot(n_snapshots.max(1));
    let mut index: HashMap<&Simplex, usize> = HashMap::new();
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(filtration.len());
    for (j, (s, t)) in filtration.iter().enumerate() {
        if j > 0 && *t < filtration[j - 1].1 {
            return Err(BuzzError::NotFaceOrdered(format!(
                "time of {s} decreases to {t}"
            )));
        }
        if *t >= end {
            return Err(BuzzError::NotFaceOrdered(format!("{s} enters after the end at {t}")));
        }
        let mut col = Vec::new();
        for f in s.faces() {
            match index.get(&f) {
                Some(&i) => col.push(i),
                None => {
                    return Err(BuzzError::NotFaceOrdered(format!(
                        "{s} is added before its face {f}"
                    )))
                }
            }
        }
        if index.insert(s, j).is_some() {
            return Err(BuzzError::NotFaceOrdered(format!("{s} added twice")));
        }
        col.sort_unstable();
        columns.push(col);
    }

    let mut owner: Vec<Option<usize>> = vec![None; filtration.len()];
    let mut paired = vec![false; filtration.len()];
    let mut points = Vec::new();
    for j in 0..columns.len() {
        let mut col = std::mem::take(&mut columns[j]);
        while let Some(&low) = col.last() {
            match owner[low] {
                Some(k) => col = crate::complex::sym_diff(&col, &columns[k]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            owner[low] = Some(j);
            paired[low] = true;
            paired[j] = true;
            let (birth, death) = (filtration[low].1, filtration[j].1);
            if birth < death {
                points.push(PersistencePoint::new(filtration[low].0.dim(), birth, death));
            }
        }
        columns[j] = col;
    }
    for (i, (s, t)) in filtration.iter().enumerate() {
        if !paired[i] {
            points.push(PersistencePoint::new(s.dim(), *t, end));
        }
    }
    Ok(ZigzagDiagram::new(n_snapshots, points))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiMismatch {
    pub position: GridTime,
    pub dim: usize,
    pub betti: usize,
    pub intervals: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiReport {
    pub positions_checked: usize,
    pub mismatches: Vec<BettiMismatch>,
}

impl BettiReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares, at every grid position, the number of live intervals with the
/// Betti numbers of the complex rebuilt from the schedule.
pub fn betti_consistency(schedule: &ZigzagSchedule, diagram: &ZigzagDiagram) -> Result<BettiReport> {
    let max_p = diagram
        .metadata
        .as_ref()
        .map(|m| m.max_hom_dim)
        .unwrap_or_else(|| schedule.max_dim().saturating_sub(1));
    let mut report = BettiReport::default();
    for t in schedule.positions() {
        let complex: SimplicialComplex = schedule.live_at(t).cloned().collect();
        let betti = betti_numbers(&complex, max_p)?;
        for (dim, &b) in betti.iter().enumerate() {
            let intervals = diagram.alive_at(t, dim);
            if intervals != b {
                report.mismatches.push(BettiMismatch {
                    position: t,
                    dim,
                    betti: b,
                    intervals,
                });
            }
        }
        report.positions_checked += 1;
    }
    Ok(report)
}
