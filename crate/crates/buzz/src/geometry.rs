//! Point clouds, delay embeddings, Euclidean distances and subsampling.
//!
//! Every point carries a global vertex id and the index of the snapshot it was
//! sampled from. Ids are never renumbered by [`disjoint_union`], so simplices
//! built on a union can always be traced back to their constituent clouds.

use std::collections::HashSet;

use crate::error::{BuzzError, Result};

/// Global vertex identifier.
pub type VertexId = u32;

/// A finite point set in `R^d`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    ids: Vec<VertexId>,
    snapshots: Vec<usize>,
}

impl PointCloud {
    /// An empty cloud in `R^dim`.
    pub fn new(dim: usize) -> Self {
        PointCloud {
            dim,
            coords: Vec::new(),
            ids: Vec::new(),
            snapshots: Vec::new(),
        }
    }

    /// Builds a cloud from coordinate rows, numbering points `0..` in snapshot 0.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = match rows.first() {
            Some(r) => r.as_ref().len(),
            None => return Err(BuzzError::param("cannot infer dimension of an empty row list")),
        };
        if dim == 0 {
            return Err(BuzzError::param("points must have at least one coordinate"));
        }
        let mut cloud = PointCloud::new(dim);
        for (i, row) in rows.iter().enumerate() {
            cloud.push(i as VertexId, 0, row.as_ref())?;
        }
        Ok(cloud)
    }

    /// Appends a point. Id uniqueness is the caller's responsibility; it is
    /// enforced when clouds are combined.
    pub fn push(&mut self, id: VertexId, snapshot: usize, coords: &[f64]) -> Result<()> {
        if coords.len() != self.dim {
            return Err(BuzzError::DimensionMismatch(self.dim, coords.len()));
        }
        self.coords.extend_from_slice(coords);
        self.ids.push(id);
        self.snapshots.push(snapshot);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn id(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn snapshot(&self, i: usize) -> usize {
        self.snapshots[i]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim.max(1)).take(self.len())
    }

    /// Returns a copy with ids `first_id, first_id + 1, ...` and every point
    /// labelled as belonging to `snapshot`.
    pub fn relabeled(&self, first_id: VertexId, snapshot: usize) -> PointCloud {
        PointCloud {
            dim: self.dim,
            coords: self.coords.clone(),
            ids: (0..self.len() as VertexId).map(|i| first_id + i).collect(),
            snapshots: vec![snapshot; self.len()],
        }
    }

    /// Sub-cloud made of the given point indices, in that order.
    pub fn select(&self, indices: &[usize]) -> PointCloud {
        let mut out = PointCloud::new(self.dim);
        for &i in indices {
            out.coords.extend_from_slice(self.point(i));
            out.ids.push(self.ids[i]);
            out.snapshots.push(self.snapshots[i]);
        }
        out
    }
}

/// Time-delay embedding `x_i -> (x_i, x_{i+tau}, ..., x_{i+(d-1)tau})`.
pub fn delay_embed(series: &[f64], dim: usize, tau: usize) -> Result<PointCloud> {
    if dim == 0 {
        return Err(BuzzError::param("embedding dimension must be at least 1"));
    }
    if tau == 0 {
        return Err(BuzzError::param("delay must be at least 1"));
    }
    let span = (dim - 1) * tau;
    if series.len() <= span {
        return Err(BuzzError::SeriesTooShort {
            len: series.len(),
            dim,
            tau,
            min: span + 1,
        });
    }
    let count = series.len() - span;
    let mut cloud = PointCloud::new(dim);
    cloud.coords.reserve(count * dim);
    for i in 0..count {
        cloud.coords.extend((0..dim).map(|k| series[i + k * tau]));
        cloud.ids.push(i as VertexId);
        cloud.snapshots.push(0);
    }
    Ok(cloud)
}

/// Dense symmetric matrix of Euclidean distances between the points of a cloud.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    pub(crate) n: usize,
    pub(crate) ids: Vec<VertexId>,
    pub(crate) data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Global vertex ids of the rows, in cloud order.
    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

#[inline]
pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn pairwise_distances(cloud: &PointCloud) -> Result<DistanceMatrix> {
    let n = cloud.len();
    if n == 0 {
        return Err(BuzzError::param("cannot compute distances of an empty cloud"));
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclidean(cloud.point(i), cloud.point(j));
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix {
        n,
        ids: cloud.ids.clone(),
        data,
    })
}

/// Furthest-point subsample of `k` points starting from `cloud[seed_index]`.
///
/// Each new point maximizes its distance to the points already chosen; ties
/// go to the lowest index in `cloud`. The output is in selection order and
/// keeps the original ids, so every prefix is itself a greedy permutation.
pub fn greedy_permutation(cloud: &PointCloud, k: usize, seed_index: usize) -> Result<PointCloud> {
    let n = cloud.len();
    if k == 0 || k > n {
        return Err(BuzzError::param(format!(
            "subsample size {k} must lie in 1..={n}"
        )));
    }
    if seed_index >= n {
        return Err(BuzzError::param(format!(
            "seed index {seed_index} out of range for a cloud of {n} points"
        )));
    }
    let mut chosen = Vec::with_capacity(k);
    let mut taken = vec![false; n];
    let mut nearest = vec![f64::INFINITY; n];
    let mut current = seed_index;
    loop {
        chosen.push(current);
        taken[current] = true;
        if chosen.len() == k {
            break;
        }
        let anchor = cloud.point(current);
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            if taken[i] {
                continue;
            }
            let d = euclidean(anchor, cloud.point(i));
            if d < nearest[i] {
                nearest[i] = d;
            }
            if best.is_none_or(|(_, bd)| nearest[i] > bd) {
                best = Some((i, nearest[i]));
            }
        }
        current = best.expect("k <= n leaves an untaken point").0;
    }
    Ok(cloud.select(&chosen))
}

/// Concatenates two clouds with disjoint id sets; nothing is renumbered.
///
/// An empty operand is accepted regardless of its ambient dimension.
pub fn disjoint_union(a: &PointCloud, b: &PointCloud) -> Result<PointCloud> {
    if a.is_empty() {
        return Ok(b.clone());
    }
    if b.is_empty() {
        return Ok(a.clone());
    }
    if a.dim != b.dim {
        return Err(BuzzError::DimensionMismatch(a.dim, b.dim));
    }
    let seen: HashSet<VertexId> = a.ids.iter().copied().collect();
    if let Some(&dup) = b.ids.iter().find(|id| seen.contains(id)) {
        return Err(BuzzError::IdCollision(dup));
    }
    let mut out = a.clone();
    out.coords.extend_from_slice(&b.coords);
    out.ids.extend_from_slice(&b.ids);
    out.snapshots.extend_from_slice(&b.snapshots);
    Ok(out)
}
