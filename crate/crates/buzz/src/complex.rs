//! Simplices, Vietoris-Rips complexes and Z/2 homology by elimination.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{BuzzError, Result};
use crate::geometry::{DistanceMatrix, VertexId};

/// A simplex as its strictly increasing list of vertex ids.
///
/// Simplices order by dimension first, then lexicographically by vertices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Simplex(SmallVec<[VertexId; 4]>);

impl Simplex {
    /// Sorts the vertices; fails on an empty or repeated vertex list.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut v: SmallVec<[VertexId; 4]> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(BuzzError::param("a simplex needs at least one vertex"));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(BuzzError::param(format!("repeated vertex in simplex {v:?}")));
        }
        Ok(Simplex(v))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    pub(crate) fn from_sorted(v: SmallVec<[VertexId; 4]>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Codimension-one faces, in the order obtained by dropping vertex 0, 1, ...
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TryFrom<Vec<VertexId>> for Simplex {
    type Error = BuzzError;

    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        if v.is_empty() || v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BuzzError::param(format!(
                "simplex vertices must be non-empty and strictly increasing, got {v:?}"
            )));
        }
        Ok(Simplex(v.into_iter().collect()))
    }
}

impl From<Simplex> for Vec<VertexId> {
    fn from(s: Simplex) -> Self {
        s.0.into_vec()
    }
}

/// A set of simplices, iterated in (dimension, lexicographic) order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a simplex together with all of its faces.
    pub fn insert_closed(&mut self, simplex: Simplex) {
        if self.simplices.contains(&simplex) {
            return;
        }
        let faces: Vec<Simplex> = simplex.faces().collect();
        self.simplices.insert(simplex);
        for f in faces {
            self.insert_closed(f);
        }
    }

    /// Inserts one simplex without touching its faces.
    pub fn insert(&mut self, simplex: Simplex) -> bool {
        self.simplices.insert(simplex)
    }

    pub fn contains(&self, simplex: &Simplex) -> bool {
        self.simplices.contains(simplex)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    pub fn of_dim(&self, p: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dim() == p)
    }

    pub fn count_dim(&self, p: usize) -> usize {
        self.of_dim(p).count()
    }

    pub fn is_face_closed(&self) -> bool {
        self.simplices
            .iter()
            .all(|s| s.faces().all(|f| self.simplices.contains(&f)))
    }
}

impl FromIterator<Simplex> for SimplicialComplex {
    fn from_iter<I: IntoIterator<Item = Simplex>>(iter: I) -> Self {
        SimplicialComplex {
            simplices: iter.into_iter().collect(),
        }
    }
}

/// Visits every clique of at most `max_dim + 1` points whose pairwise
/// distances are all `<= r`, as local row indices of `dm` (unsorted).
pub(crate) fn for_each_rips_clique(
    dm: &DistanceMatrix,
    r: f64,
    max_dim: usize,
    mut visit: impl FnMut(&[usize]),
) {
    let n = dm.len();
    let lower: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..v).filter(|&u| dm.get(u, v) <= r).collect())
        .collect();

    fn expand(
        lower: &[Vec<usize>],
        clique: &mut Vec<usize>,
        candidates: &[usize],
        max_len: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if clique.len() == max_len {
            return;
        }
        for &u in candidates {
            clique.push(u);
            visit(clique);
            if clique.len() < max_len {
                let next = intersect_sorted(candidates, &lower[u]);
                expand(lower, clique, &next, max_len, visit);
            }
            clique.pop();
        }
    }

    let mut clique = Vec::with_capacity(max_dim + 1);
    for v in 0..n {
        clique.push(v);
        visit(&clique);
        expand(&lower, &mut clique, &lower[v], max_dim + 1, &mut visit);
        clique.pop();
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn clique_simplex(ids: &[VertexId], local: &[usize]) -> Simplex {
    let mut v: SmallVec<[VertexId; 4]> = local.iter().map(|&i| ids[i]).collect();
    v.sort_unstable();
    Simplex::from_sorted(v)
}

/// Vietoris-Rips complex: every simplex of dimension `<= max_dim` whose
/// vertices are pairwise within distance `r` (inclusive).
pub fn rips_complex(distances: &DistanceMatrix, r: f64, max_dim: usize) -> SimplicialComplex {
    let ids = distances.ids();
    let mut complex = SimplicialComplex::new();
    for_each_rips_clique(distances, r, max_dim, |local| {
        complex.insert(clique_simplex(ids, local));
    });
    complex
}

/// Sparse Z/2 boundary matrix of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    /// (p-1)-simplices indexing the rows.
    pub rows: Vec<Simplex>,
    /// p-simplices indexing the columns.
    pub cols: Vec<Simplex>,
    /// Row indices of the nonzero entries in each column, ascending.
    pub columns: Vec<Vec<usize>>,
}

impl BoundaryMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].binary_search(&row).is_ok()
    }

    pub fn rank(&self) -> usize {
        z2_rank(self.columns.clone())
    }
}

/// Boundary map from p-chains to (p-1)-chains, rows and columns in
/// lexicographic order.
pub fn boundary_matrix(complex: &SimplicialComplex, p: usize) -> Result<BoundaryMatrix> {
    if p == 0 {
        return Err(BuzzError::param("boundary matrices start at p = 1"));
    }
    let rows: Vec<Simplex> = complex.of_dim(p - 1).cloned().collect();
    let cols: Vec<Simplex> = complex.of_dim(p).cloned().collect();
    let index: HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut columns = Vec::with_capacity(cols.len());
    for c in &cols {
        let mut col = Vec::with_capacity(c.dim() + 1);
        for f in c.faces() {
            match index.get(&f) {
                Some(&i) => col.push(i),
                None => {
                    return Err(BuzzError::param(format!(
                        "complex is not face-closed: {f} missing below {c}"
                    )))
                }
            }
        }
        col.sort_unstable();
        columns.push(col);
    }
    Ok(BoundaryMatrix {
        rows,
        cols,
        columns,
    })
}

/// Rank over Z/2 by column elimination on the lowest nonzero entry.
pub(crate) fn z2_rank(mut columns: Vec<Vec<usize>>) -> usize {
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut rank = 0;
    for j in 0..columns.len() {
        let mut col = std::mem::take(&mut columns[j]);
        while let Some(&low) = col.last() {
            match owner.get(&low) {
                Some(&k) => col = sym_diff(&col, &columns[k]),
                None => {
                    owner.insert(low, j);
                    rank += 1;
                    break;
                }
            }
        }
        columns[j] = col;
    }
    rank
}

pub(crate) fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Betti numbers `β_0..=β_max_p` over Z/2.
pub fn betti_numbers(complex: &SimplicialComplex, max_p: usize) -> Result<Vec<usize>> {
    // rank[p] = rank of ∂_p, with ∂_0 = 0.
    let mut ranks = vec![0usize; max_p + 2];
    for (p, rank) in ranks.iter_mut().enumerate().skip(1) {
        *rank = boundary_matrix(complex, p)?.rank();
    }
    Ok((0..=max_p)
        .map(|p| complex.count_dim(p) - ranks[p] - ranks[p + 1])
        .collect())
}
