//! Independent reference implementations used as oracles by the integration
//! tests. Everything here is deliberately naive: dense GF(2) linear algebra,
//! subset enumeration, quadratic rescans.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use buzz::pipeline::globalize;
use buzz::{pairwise_distances, rips_complex, GridTime, PersistencePoint, PointCloud, Simplex, ZigzagSchedule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Verts = Vec<u32>;

pub fn t(x: f64) -> GridTime {
    GridTime::from_f64(x).unwrap()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..a.len() {
        s += (a[k] - b[k]) * (a[k] - b[k]);
    }
    s.sqrt()
}

pub fn rows(cloud: &PointCloud) -> Vec<Vec<f64>> {
    cloud.points().map(|p| p.to_vec()).collect()
}

/// Rips complex by enumerating every vertex subset of size `<= max_dim + 1`.
pub fn brute_rips(ids: &[u32], pts: &[Vec<f64>], r: f64, max_dim: usize) -> BTreeSet<Verts> {
    let n = pts.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << n) {
        if mask.count_ones() as usize > max_dim + 1 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let ok = members
            .iter()
            .all(|&i| members.iter().all(|&j| i >= j || dist(&pts[i], &pts[j]) <= r));
        if ok {
            let mut v: Verts = members.iter().map(|&i| ids[i]).collect();
            v.sort_unstable();
            out.insert(v);
        }
    }
    out
}

/// Greedy permutation recomputing every covering distance from scratch.
pub fn brute_greedy(pts: &[Vec<f64>], k: usize, seed: usize) -> Vec<usize> {
    let mut chosen = vec![seed];
    while chosen.len() < k {
        let mut best = None;
        let mut best_d = -1.0;
        for i in 0..pts.len() {
            if chosen.contains(&i) {
                continue;
            }
            let d = chosen
                .iter()
                .map(|&c| dist(&pts[i], &pts[c]))
                .fold(f64::INFINITY, f64::min);
            if d > best_d {
                best_d = d;
                best = Some(i);
            }
        }
        chosen.push(best.unwrap());
    }
    chosen
}

/// Complex at every grid position, rebuilt from the point clouds directly.
pub fn position_complexes(clouds: &[PointCloud], radii: &[f64], max_dim: usize) -> Vec<BTreeSet<Verts>> {
    let n = clouds.len() - 1;
    let mut out = Vec::new();
    for h in 0..=2 * n {
        let i = h / 2;
        let (ids, pts, r) = if h % 2 == 0 {
            (clouds[i].ids().to_vec(), rows(&clouds[i]), radii[i])
        } else {
            let mut ids = clouds[i].ids().to_vec();
            ids.extend_from_slice(clouds[i + 1].ids());
            let mut pts = rows(&clouds[i]);
            pts.extend(rows(&clouds[i + 1]));
            (ids, pts, radii[i].max(radii[i + 1]))
        };
        out.push(brute_rips(&ids, &pts, r, max_dim));
    }
    out
}

/// Times lists from presence runs across the positions.
pub fn presence_times(complexes: &[BTreeSet<Verts>]) -> BTreeMap<Verts, Vec<f64>> {
    let last = complexes.len() - 1;
    let all: BTreeSet<&Verts> = complexes.iter().flatten().collect();
    let mut out = BTreeMap::new();
    for s in all {
        let mut times = Vec::new();
        let mut h = 0;
        while h <= last {
            if complexes[h].contains(s) {
                let start = h;
                while h <= last && complexes[h].contains(s) {
                    h += 1;
                }
                times.push(start as f64 / 2.0);
                times.push(if h > last { last as f64 / 2.0 + 1.0 } else { h as f64 / 2.0 });
            }
            h += 1;
        }
        out.insert(s.clone(), times);
    }
    out
}

pub fn schedule_map(schedule: &ZigzagSchedule) -> BTreeMap<Verts, Vec<f64>> {
    schedule
        .simplices
        .iter()
        .zip(&schedule.times)
        .map(|(s, ts)| (s.vertices().to_vec(), ts.iter().map(|t| t.as_f64()).collect()))
        .collect()
}

pub fn live_complexes(schedule: &ZigzagSchedule) -> Vec<BTreeSet<Verts>> {
    schedule
        .positions()
        .map(|t| schedule.live_at(t).map(|s| s.vertices().to_vec()).collect())
        .collect()
}

/// Random planar clouds with fresh global ids.
pub fn random_clouds(rng: &mut ChaCha8Rng, snapshots: usize, max_points: usize, scale: f64) -> Vec<PointCloud> {
    let clouds: Vec<PointCloud> = (0..snapshots)
        .map(|_| {
            let n = rng.gen_range(1..=max_points);
            let pts: Vec<[f64; 2]> = (0..n)
                .map(|_| [rng.gen_range(0.0..scale), rng.gen_range(0.0..scale)])
                .collect();
            PointCloud::from_rows(&pts).unwrap()
        })
        .collect();
    globalize(&clouds)
}

/// Random planar clouds sampled near unit circles, so loops are common.
pub fn random_ring_clouds(rng: &mut ChaCha8Rng, snapshots: usize, max_points: usize) -> Vec<PointCloud> {
    let clouds: Vec<PointCloud> = (0..snapshots)
        .map(|_| {
            let n = rng.gen_range(3..=max_points.max(3));
            let radius = rng.gen_range(0.5..1.5);
            let pts: Vec<[f64; 2]> = (0..n)
                .map(|k| {
                    let a = std::f64::consts::TAU * (k as f64 + rng.gen_range(-0.3..0.3)) / n as f64;
                    [radius * a.cos(), radius * a.sin()]
                })
                .collect();
            PointCloud::from_rows(&pts).unwrap()
        })
        .collect();
    globalize(&clouds)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Dense GF(2) linear algebra on bit vectors.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    pub fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    pub fn xor(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a ^= b;
        }
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn top(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| 64 * k + 63 - w.leading_zeros() as usize)
    }
}

/// Incremental echelon basis: supports rank and membership.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Bits>,
}

impl Echelon {
    pub fn reduce(&self, v: &Bits) -> Bits {
        let mut v = v.clone();
        while let Some(p) = v.top() {
            match self.rows.get(&p) {
                Some(r) => v.xor(r),
                None => break,
            }
        }
        v
    }
    /// Adds `v`; returns whether it was independent.
    pub fn add(&mut self, v: &Bits) -> bool {
        let v = self.reduce(v);
        match v.top() {
            Some(p) => {
                self.rows.insert(p, v);
                true
            }
            None => false,
        }
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rank(vectors: &[Bits]) -> usize {
    let mut e = Echelon::default();
    vectors.iter().filter(|v| e.add(v)).count()
}

/// Basis of the kernel of the linear map sending basis vector `j` to `images[j]`.
pub fn kernel(images: &[Bits], domain: usize) -> Vec<Bits> {
    // Track combinations alongside the reduced images.
    let mut pivots: BTreeMap<usize, (Bits, Bits)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = Bits::zeros(domain);
        combo.flip(j);
        while let Some(p) = v.top() {
            match pivots.get(&p) {
                Some((r, c)) => {
                    v.xor(r);
                    combo.xor(c);
                }
                None => break,
            }
        }
        match v.top() {
            Some(p) => {
                pivots.insert(p, (v, combo));
            }
            None => out.push(combo),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Homology of the complexes of a zigzag, and the barcode via generalized ranks.

struct Chains {
    /// Simplices of each dimension across the whole zigzag, indexed.
    index: Vec<BTreeMap<Verts, usize>>,
}

impl Chains {
    fn new(complexes: &[BTreeSet<Verts>], top: usize) -> Self {
        let mut index: Vec<BTreeMap<Verts, usize>> = vec![BTreeMap::new(); top + 1];
        for c in complexes {
            for s in c {
                let d = s.len() - 1;
                if d <= top {
                    let next = index[d].len();
                    index[d].entry(s.clone()).or_insert(next);
                }
            }
        }
        Chains { index }
    }

    fn boundary(&self, s: &Verts) -> Bits {
        let d = s.len() - 1;
        let mut b = Bits::zeros(self.index[d - 1].len());
        for skip in 0..s.len() {
            let mut f = s.clone();
            f.remove(skip);
            b.flip(self.index[d - 1][&f]);
        }
        b
    }

    fn unit(&self, p: usize, s: &Verts) -> Bits {
        let mut b = Bits::zeros(self.index[p].len());
        b.flip(self.index[p][s]);
        b
    }
}

/// `H_p` of one complex: representative cycles of a basis, and an echelon
/// basis of cycles tagged with their coordinates in that basis.
struct Homology {
    reps: Vec<Bits>,
    tag_len: usize,
    tagged: BTreeMap<usize, (Bits, Bits)>,
}

impl Homology {
    fn new(chains: &Chains, complex: &BTreeSet<Verts>, p: usize) -> Self {
        let cells: Vec<&Verts> = complex.iter().filter(|s| s.len() == p + 1).collect();
        let images: Vec<Bits> = if p == 0 {
            cells.iter().map(|_| Bits::zeros(1)).collect()
        } else {
            cells.iter().map(|s| chains.boundary(s)).collect()
        };
        let cycles: Vec<Bits> = kernel(&images, cells.len())
            .into_iter()
            .map(|combo| {
                let mut z = Bits::zeros(chains.index[p].len());
                for (j, s) in cells.iter().enumerate() {
                    if combo.get(j) {
                        z.xor(&chains.unit(p, s));
                    }
                }
                z
            })
            .collect();
        let tag_len = cycles.len();
        let mut h = Homology {
            reps: Vec::new(),
            tag_len,
            tagged: BTreeMap::new(),
        };
        for s in complex.iter().filter(|s| s.len() == p + 2) {
            let (v, tag) = h.reduce(&chains.boundary(s), Bits::zeros(tag_len));
            if let Some(top) = v.top() {
                h.tagged.insert(top, (v, tag));
            }
        }
        for z in cycles {
            let mut unit = Bits::zeros(tag_len);
            unit.flip(h.reps.len());
            let (v, tag) = h.reduce(&z, unit);
            if let Some(top) = v.top() {
                h.tagged.insert(top, (v, tag));
                h.reps.push(z);
            }
        }
        h
    }

    fn reduce(&self, v: &Bits, mut tag: Bits) -> (Bits, Bits) {
        let mut v = v.clone();
        while let Some(top) = v.top() {
            match self.tagged.get(&top) {
                Some((row, tg)) => {
                    v.xor(row);
                    tag.xor(tg);
                }
                None => break,
            }
        }
        (v, tag)
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a cycle in the representative basis, modulo boundaries.
    fn coords(&self, z: &Bits) -> Bits {
        let (v, tag) = self.reduce(z, Bits::zeros(self.tag_len));
        assert!(v.is_zero(), "not a cycle of this complex");
        let mut out = Bits::zeros(self.dim());
        for k in 0..self.dim() {
            if tag.get(k) {
                out.flip(k);
            }
        }
        out
    }
}

/// Dense Betti numbers `b_0..=b_max_p`.
pub fn dense_betti(complex: &BTreeSet<Verts>, max_p: usize) -> Vec<usize> {
    let chains = Chains::new(std::slice::from_ref(complex), max_p + 1);
    (0..=max_p).map(|p| Homology::new(&chains, complex, p).dim()).collect()
}

/// Rank of `H_p(K) -> H_p(L)` for `K` a subcomplex of `L`.
pub fn inclusion_rank(k: &BTreeSet<Verts>, l: &BTreeSet<Verts>, p: usize) -> usize {
    let chains = Chains::new(std::slice::from_ref(l), p + 1);
    let hk = Homology::new(&chains, k, p);
    let hl = Homology::new(&chains, l, p);
    let images: Vec<Bits> = hk.reps.iter().map(|z| hl.coords(z)).collect();
    rank(&images)
}

/// Barcode of `H_p` along the zigzag `K_0 -> K_1 <- K_2 -> ...` where odd
/// positions contain their neighbors. Interval multiplicities come from
/// Möbius inversion of the generalized rank (image of limit in colimit).
pub fn zigzag_barcode(complexes: &[BTreeSet<Verts>], p: usize) -> Vec<PersistencePoint> {
    let m = complexes.len();
    let chains = Chains::new(complexes, p + 1);
    let homs: Vec<Homology> = complexes.iter().map(|c| Homology::new(&chains, c, p)).collect();
    // maps[j] for even j: H(K_j) -> H(K_{j-1}) and H(K_j) -> H(K_{j+1}), as image columns
    let map = |from: usize, to: usize| -> Vec<Bits> {
        homs[from].reps.iter().map(|z| homs[to].coords(z)).collect()
    };
    let mut left = vec![Vec::new(); m];
    let mut right = vec![Vec::new(); m];
    for j in (0..m).step_by(2) {
        if j > 0 {
            left[j] = map(j, j - 1);
        }
        if j + 1 < m {
            right[j] = map(j, j + 1);
        }
    }

    let grank = |s: usize, e: usize| -> usize {
        let offsets: Vec<usize> = (s..=e)
            .scan(0, |acc, j| {
                let o = *acc;
                *acc += homs[j].dim();
                Some(o)
            })
            .collect();
        let total: usize = (s..=e).map(|j| homs[j].dim()).sum();
        if total == 0 {
            return 0;
        }
        let embed = |j: usize, v: &Bits| -> Bits {
            let mut out = Bits::zeros(total);
            for k in 0..homs[j].dim() {
                if v.get(k) {
                    out.flip(offsets[j - s] + k);
                }
            }
            out
        };
        // relations x_a ~ f(x_a) for every arrow a -> b inside [s, e]
        let mut relations = Vec::new();
        // constraint images for the limit: family v with f(v_a) = v_b
        let mut constraint_cols: Vec<Bits> = Vec::new();
        let mut arrows = Vec::new();
        for j in s..=e {
            if j % 2 == 0 {
                if j > s {
                    arrows.push((j, j - 1, &left[j]));
                }
                if j < e {
                    arrows.push((j, j + 1, &right[j]));
                }
            }
        }
        for &(a, b, f) in &arrows {
            for (k, img) in f.iter().enumerate() {
                let mut unit = Bits::zeros(homs[a].dim());
                unit.flip(k);
                let mut rel = embed(a, &unit);
                rel.xor(&embed(b, img));
                relations.push(rel);
            }
        }
        // limit: kernel of v -> (f(v_a) + v_b) over all arrows
        let n_arrows = arrows.len();
        let rows_total: usize = arrows.iter().map(|&(_, b, _)| homs[b].dim()).sum();
        let mut arrow_off = Vec::with_capacity(n_arrows);
        let mut acc = 0;
        for &(_, b, _) in &arrows {
            arrow_off.push(acc);
            acc += homs[b].dim();
        }
        for j in s..=e {
            for k in 0..homs[j].dim() {
                let mut col = Bits::zeros(rows_total.max(1));
                for (ai, &(a, b, f)) in arrows.iter().enumerate() {
                    if a == j {
                        for q in 0..homs[b].dim() {
                            if f[k].get(q) {
                                col.flip(arrow_off[ai] + q);
                            }
                        }
                    }
                    if b == j {
                        col.flip(arrow_off[ai] + k);
                    }
                }
                constraint_cols.push(col);
            }
        }
        let limit = kernel(&constraint_cols, total);
        // map each limit element to its component at s, viewed in the colimit
        let mut rel_span = Echelon::default();
        for r in &relations {
            rel_span.add(r);
        }
        let base = rel_span.rank();
        for v in &limit {
            let mut comp = Bits::zeros(homs[s].dim());
            for k in 0..homs[s].dim() {
                if v.get(k) {
                    comp.flip(k);
                }
            }
            rel_span.add(&embed(s, &comp));
        }
        rel_span.rank() - base
    };

    let rk: Vec<Vec<usize>> = (0..m)
        .map(|s| (0..m).map(|e| if e >= s { grank(s, e) } else { 0 }).collect())
        .collect();
    let at = |s: isize, e: usize| -> isize {
        if s < 0 || e >= m {
            0
        } else {
            rk[s as usize][e] as isize
        }
    };
    let n = (m - 1) / 2;
    let mut points = Vec::new();
    for s in 0..m {
        for e in s..m {
            let mult = at(s as isize, e) - at(s as isize - 1, e) - at(s as isize, e + 1)
                + at(s as isize - 1, e + 1);
            assert!(mult >= 0, "negative multiplicity");
            let birth = GridTime::from_halves(s as u32);
            let death = if e == m - 1 {
                GridTime::snapshot(n + 1)
            } else {
                GridTime::from_halves(e as u32 + 1)
            };
            for _ in 0..mult {
                points.push(PersistencePoint::new(p, birth, death));
            }
        }
    }
    points.sort();
    points
}

/// Connected components by union-find.
pub fn components(complex: &BTreeSet<Verts>) -> usize {
    let verts: Vec<u32> = complex.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
    let pos: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = verts.len();
    for e in complex.iter().filter(|s| s.len() == 2) {
        let (a, b) = (find(&mut parent, pos[&e[0]]), find(&mut parent, pos[&e[1]]));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Rips filtration of `rows` with each simplex entering at the snapshot (or
/// union) whose threshold first admits it, and never leaving.
pub fn monotone_schedule(rows: &[[f64; 2]], snapshots: usize, scale: f64) -> ZigzagSchedule {
    let cloud = PointCloud::from_rows(rows).unwrap();
    let dm = pairwise_distances(&cloud).unwrap();
    let full = rips_complex(&dm, f64::INFINITY, 2);
    let last = 2 * (snapshots - 1) as u32;
    let diameter = |s: &Simplex| {
        let v = s.vertices();
        let mut d: f64 = 0.0;
        for a in v {
            for b in v {
                d = d.max(dm.get(*a as usize, *b as usize));
            }
        }
        d
    };
    let mut simplices = Vec::new();
    let mut times = Vec::new();
    for s in full.iter() {
        let h = ((diameter(s) / scale * last as f64).ceil() as u32).min(last);
        simplices.push(s.clone());
        times.push(vec![GridTime::from_halves(h), GridTime::snapshot(snapshots)]);
    }
    ZigzagSchedule::from_parts(snapshots, vec![scale; snapshots], 2, simplices, times)
}

pub fn simplex(v: &[u32]) -> Simplex {
    Simplex::new(v.iter().copied()).unwrap()
}
