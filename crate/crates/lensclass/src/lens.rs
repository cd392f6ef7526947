//! Construction of the lens-type graphs: the base graph on `n+1` levels, its
//! skew product by the cyclic group of a given order, the marked-vertex set,
//! the hereditary vertex sets `S_i`, admissible-path counting, and the
//! modified graph together with its adjacency matrix.
//!
//! The path counts produced here are the brute-force ground truth that the
//! closed-form expressions in [`crate::formulas`] are checked against.

use std::collections::BTreeSet;

use serde_json::json;
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId};
use crate::matrix::IntMatrix;
use crate::numtheory::gcd;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LensError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("path endpoints must go from a lower level to a higher one")]
    LevelOrder,
    #[error("endpoint {0:?} is outside the skew product or not marked")]
    BadEndpoint(SkewVertex),
}

/// The input triple: group order, and one positive weight per level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensParams {
    order: u64,
    weights: Vec<u64>,
}

/// A vertex `(level, offset)` of the skew product graph, `0 <= offset < order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkewVertex {
    pub level: usize,
    pub offset: u64,
}

impl LensParams {
    pub fn new(order: u64, weights: Vec<u64>) -> Result<Self, LensError> {
        if order < 2 {
            return Err(LensError::BadParams(format!(
                "group order must be at least 2, got {order}"
            )));
        }
        if weights.is_empty() {
            return Err(LensError::BadParams("need at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| **w == 0) {
            return Err(LensError::BadParams(format!(
                "weights must be positive, got {w}"
            )));
        }
        Ok(LensParams { order, weights })
    }

    /// Order of the acting cyclic group.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Number of levels, `n + 1`.
    pub fn levels(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    /// `gcd(weight_i, order)`, the number of marked offsets at level `i`.
    pub fn level_gcd(&self, level: usize) -> u64 {
        gcd(self.weights[level] % self.order, self.order)
    }

    pub fn level_gcds(&self) -> Vec<u64> {
        (0..self.levels()).map(|i| self.level_gcd(i)).collect()
    }

    /// The one-non-coprime pattern `(position, gcd)` when at most one weight
    /// shares a factor with the group order; all-coprime returns
    /// `Some((0, 1))`, two or more non-coprime weights return `None`.
    pub fn noncoprime_pattern(&self) -> Option<(usize, u64)> {
        let gcds = self.level_gcds();
        let noncoprime: Vec<usize> = (0..gcds.len()).filter(|&i| gcds[i] != 1).collect();
        match noncoprime.as_slice() {
            [] => Some((0, 1)),
            [i] => Some((*i, gcds[*i])),
            _ => None,
        }
    }

    /// Weights reduced into `[1, order]`; all outputs of the crate depend on
    /// the weights only through these residues.
    pub fn canonical_weights(&self) -> Vec<u64> {
        self.weights
            .iter()
            .map(|&m| {
                let v = m % self.order;
                if v == 0 {
                    self.order
                } else {
                    v
                }
            })
            .collect()
    }
}

/// The base graph: one vertex per level, one edge `v_i -> v_j` for every
/// `i <= j` (so every vertex has a loop).
pub fn base_graph(n: usize) -> MultiGraph {
    let vertices: Vec<VertexId> = (0..=n).map(|i| VertexId::new(i as u32, 0)).collect();
    let mut edges = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            edges.push((VertexId::new(i as u32, 0), VertexId::new(j as u32, 0)));
        }
    }
    MultiGraph::new(vertices, edges).expect("base graph construction is internally consistent")
}

fn vid(v: SkewVertex) -> VertexId {
    VertexId::new(v.level as u32, v.offset as u32)
}

/// The skew product: vertices `(v_i, k)` for `0 <= k < order`; the base edge
/// `v_i -> v_j` lifts to one edge `(v_i, k - m_i) -> (v_j, k)` per offset `k`.
pub fn skew_product(params: &LensParams) -> MultiGraph {
    let r = params.order;
    let n = params.n();
    let mut vertices = Vec::new();
    for i in 0..=n {
        for k in 0..r {
            vertices.push(VertexId::new(i as u32, k as u32));
        }
    }
    let mut edges = Vec::new();
    for i in 0..=n {
        let m_i = params.weights[i] % r;
        for j in i..=n {
            for k in 0..r {
                let src = (k + r - m_i) % r;
                edges.push((
                    VertexId::new(i as u32, src as u32),
                    VertexId::new(j as u32, k as u32),
                ));
            }
        }
    }
    MultiGraph::new(vertices, edges).expect("skew product construction is internally consistent")
}

/// Marked vertices: at level `i`, the offsets `0 .. gcd(weight_i, order)`.
/// Admissible paths may not pass through these at interior positions.
pub fn marked_vertices(params: &LensParams) -> BTreeSet<SkewVertex> {
    let mut out = BTreeSet::new();
    for level in 0..params.levels() {
        for offset in 0..params.level_gcd(level) {
            out.insert(SkewVertex { level, offset });
        }
    }
    out
}

/// `S_i`: the marked offsets at level `i` that survive the hereditary
/// restriction, i.e. lie in the smallest forward-closed set containing all
/// the `(v_i, 0)`.
pub fn s_sets(params: &LensParams) -> Vec<Vec<u64>> {
    let skew = skew_product(params);
    let seed: BTreeSet<VertexId> = (0..params.levels())
        .map(|i| VertexId::new(i as u32, 0))
        .collect();
    let closure = skew.hereditary_closure(&seed);
    (0..params.levels())
        .map(|level| {
            (0..params.level_gcd(level))
                .filter(|&k| closure.contains(&VertexId::new(level as u32, k as u32)))
                .collect()
        })
        .collect()
}

/// Shared scaffolding for the admissible-path dynamic programs: the skew
/// product in index form, the marked flags, and a topological order of the
/// unmarked subgraph (which is acyclic because every within-level cycle
/// meets the marked window exactly once).
struct SkewEngine {
    r: u64,
    levels: usize,
    marked: Vec<bool>,
    /// Aggregated out-adjacency over vertex indices `level * r + offset`.
    out: Vec<Vec<(usize, u64)>>,
    /// Unmarked vertices in topological order.
    topo: Vec<usize>,
}

impl SkewEngine {
    fn new(params: &LensParams) -> Self {
        let r = params.order;
        let levels = params.levels();
        let nv = levels * r as usize;
        let mut out: Vec<Vec<(usize, u64)>> = vec![Vec::new(); nv];
        for i in 0..levels {
            let m_i = params.weights[i] % r;
            for j in i..levels {
                for k in 0..r {
                    let src = i * r as usize + ((k + r - m_i) % r) as usize;
                    let dst = j * r as usize + k as usize;
                    match out[src].iter_mut().find(|(t, _)| *t == dst) {
                        Some((_, c)) => *c += 1,
                        None => out[src].push((dst, 1)),
                    }
                }
            }
        }
        for row in &mut out {
            row.sort();
        }
        let mut marked = vec![false; nv];
        for v in marked_vertices(params) {
            marked[v.level * r as usize + v.offset as usize] = true;
        }
        // Kahn's algorithm on the unmarked-induced subgraph.
        let mut indeg = vec![0u64; nv];
        for (s, row) in out.iter().enumerate() {
            if marked[s] {
                continue;
            }
            for &(t, c) in row {
                if !marked[t] {
                    indeg[t] += c;
                }
            }
        }
        let mut ready: BTreeSet<usize> = (0..nv)
            .filter(|&v| !marked[v] && indeg[v] == 0)
            .collect();
        let mut topo = Vec::new();
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            topo.push(v);
            for &(t, c) in &out[v] {
                if !marked[t] {
                    indeg[t] -= c;
                    if indeg[t] == 0 {
                        ready.insert(t);
                    }
                }
            }
        }
        let unmarked_total = marked.iter().filter(|m| !**m).count();
        assert_eq!(
            topo.len(),
            unmarked_total,
            "unmarked subgraph must be acyclic"
        );
        SkewEngine {
            r,
            levels,
            marked,
            out,
            topo,
        }
    }

    fn index(&self, v: SkewVertex) -> usize {
        v.level * self.r as usize + v.offset as usize
    }

    fn in_range(&self, v: SkewVertex) -> bool {
        v.level < self.levels && v.offset < self.r
    }

    /// Admissible path counts into `target` from every vertex: backward
    /// dynamic program over the unmarked subgraph. `answer[v]` counts paths
    /// of length at least one from `v` to `target` whose interior vertices
    /// are all unmarked.
    fn counts_to_target(&self, target: usize) -> Vec<i128> {
        let nv = self.out.len();
        // through[u] for unmarked u: paths u -> target with unmarked interior
        let mut through = vec![0i128; nv];
        for &u in self.topo.iter().rev() {
            let mut total: i128 = 0;
            for &(t, c) in &self.out[u] {
                if t == target {
                    total = total
                        .checked_add(c as i128)
                        .expect("path count overflow");
                }
                if !self.marked[t] {
                    total = total
                        .checked_add(
                            (c as i128)
                                .checked_mul(through[t])
                                .expect("path count overflow"),
                        )
                        .expect("path count overflow");
                }
            }
            through[u] = total;
        }
        let mut answer = vec![0i128; nv];
        for v in 0..nv {
            let mut total: i128 = 0;
            for &(t, c) in &self.out[v] {
                if t == target {
                    total += c as i128;
                }
                if !self.marked[t] {
                    total = total
                        .checked_add(
                            (c as i128)
                                .checked_mul(through[t])
                                .expect("path count overflow"),
                        )
                        .expect("path count overflow");
                }
            }
            answer[v] = total;
        }
        answer
    }

    /// Counts admissible paths from `from` to `to` whose set of interior
    /// levels (levels of interior vertices, excluding the endpoint levels)
    /// is exactly `via`.
    fn kstep(&self, from: usize, to: usize, via: &BTreeSet<usize>) -> i128 {
        let from_level = from / self.r as usize;
        let to_level = to / self.r as usize;
        let via_index: Vec<usize> = via.iter().copied().collect();
        let full_mask: u32 = (1 << via_index.len()) - 1;
        let level_bit = |level: usize| -> Option<u32> {
            via_index
                .iter()
                .position(|&l| l == level)
                .map(|p| 1u32 << p)
        };
        let allowed = |level: usize| -> bool {
            level == from_level || level == to_level || via.contains(&level)
        };
        let nv = self.out.len();
        let masks = 1usize << via_index.len();
        // paths[v][mask]: admissible partial paths from `from` to unmarked v
        // having touched exactly the via-levels in mask
        let mut paths = vec![vec![0i128; masks]; nv];
        for &(t, c) in &self.out[from] {
            if !self.marked[t] {
                let lvl = t / self.r as usize;
                if allowed(lvl) {
                    let mask = level_bit(lvl).unwrap_or(0);
                    paths[t][mask as usize] += c as i128;
                }
            }
        }
        let mut total = if via.is_empty() {
            self.out[from]
                .iter()
                .filter(|(t, _)| *t == to)
                .map(|&(_, c)| c as i128)
                .sum()
        } else {
            0
        };
        for &u in self.topo.iter() {
            let lvl_ok = allowed(u / self.r as usize);
            if !lvl_ok {
                continue;
            }
            for mask in 0..masks {
                let count = paths[u][mask];
                if count == 0 {
                    continue;
                }
                for &(t, c) in &self.out[u] {
                    if t == to && mask as u32 == full_mask {
                        total += count * c as i128;
                    }
                    if !self.marked[t] {
                        let lvl = t / self.r as usize;
                        if allowed(lvl) {
                            let next = mask as u32 | level_bit(lvl).unwrap_or(0);
                            paths[t][next as usize] += count * c as i128;
                        }
                    }
                }
            }
        }
        total
    }
}

/// Number of admissible paths (interior vertices unmarked) from one marked
/// vertex to another.
pub fn count_admissible(
    params: &LensParams,
    from: SkewVertex,
    to: SkewVertex,
) -> Result<i128, LensError> {
    let engine = SkewEngine::new(params);
    check_endpoints(params, &engine, from, to)?;
    let answers = engine.counts_to_target(engine.index(to));
    Ok(answers[engine.index(from)])
}

/// Number of admissible paths whose interior levels are exactly `via`.
pub fn kstep_count(
    params: &LensParams,
    from: SkewVertex,
    to: SkewVertex,
    via: &BTreeSet<usize>,
) -> Result<i128, LensError> {
    let engine = SkewEngine::new(params);
    check_endpoints(params, &engine, from, to)?;
    if via
        .iter()
        .any(|&l| l <= from.level || l >= to.level)
    {
        return Err(LensError::LevelOrder);
    }
    Ok(engine.kstep(engine.index(from), engine.index(to), via))
}

fn check_endpoints(
    params: &LensParams,
    engine: &SkewEngine,
    from: SkewVertex,
    to: SkewVertex,
) -> Result<(), LensError> {
    for v in [from, to] {
        if !engine.in_range(v) || v.offset >= params.level_gcd(v.level) {
            return Err(LensError::BadEndpoint(v));
        }
    }
    if from.level > to.level {
        return Err(LensError::LevelOrder);
    }
    Ok(())
}

/// The modified graph: one vertex per surviving marked offset, one parallel
/// edge per admissible path, plus its adjacency matrix in level-major order.
#[derive(Debug, Clone)]
pub struct ModifiedLensGraph {
    pub params: LensParams,
    pub s_sets: Vec<Vec<u64>>,
    pub graph: MultiGraph,
    pub vertex_order: Vec<VertexId>,
    pub matrix: IntMatrix,
}

pub fn modified_graph(params: &LensParams) -> ModifiedLensGraph {
    let sets = s_sets(params);
    let g = build_quotient_graph(params, &sets);
    let vertex_order: Vec<VertexId> = g.vertices().to_vec();
    let matrix = g
        .adjacency_matrix(&vertex_order)
        .expect("own vertex list is a valid order");
    debug_assert!((0..matrix.rows()).all(|i| matrix.get(i, i) == 1));
    ModifiedLensGraph {
        params: params.clone(),
        s_sets: sets,
        graph: g,
        vertex_order,
        matrix,
    }
}

/// The graph built from admissible-path counts over *all* marked vertices,
/// without the hereditary restriction. Its ideal structure differs from the
/// modified graph's whenever some marked vertex is unreachable.
pub fn uncorrected_graph(params: &LensParams) -> MultiGraph {
    let sets: Vec<Vec<u64>> = (0..params.levels())
        .map(|i| (0..params.level_gcd(i)).collect())
        .collect();
    build_quotient_graph(params, &sets)
}

fn build_quotient_graph(params: &LensParams, sets: &[Vec<u64>]) -> MultiGraph {
    let engine = SkewEngine::new(params);
    let mut vertices = Vec::new();
    for (level, offsets) in sets.iter().enumerate() {
        for &k in offsets {
            vertices.push(VertexId::new(level as u32, k as u32));
        }
    }
    let mut edges = Vec::new();
    for (j, t_offsets) in sets.iter().enumerate() {
        for &t in t_offsets {
            let target = SkewVertex { level: j, offset: t };
            let answers = engine.counts_to_target(engine.index(target));
            for (i, s_offsets) in sets.iter().enumerate().take(j + 1) {
                for &s in s_offsets {
                    let source = SkewVertex { level: i, offset: s };
                    let count = answers[engine.index(source)];
                    assert!(count >= 0);
                    for _ in 0..count {
                        edges.push((vid(source), vid(target)));
                    }
                }
            }
        }
    }
    MultiGraph::new(vertices, edges).expect("quotient graph construction is internally consistent")
}

impl ModifiedLensGraph {
    /// JSON rendering: group order, weights, the `S_i`, the vertex order as
    /// `(level, offset)` pairs, and the adjacency matrix rows.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "r": self.params.order(),
            "weights": self.params.weights(),
            "s_sets": self.s_sets,
            "vertex_order": self.vertex_order.iter().map(|v| vec![v.level, v.offset]).collect::<Vec<_>>(),
            "matrix": self.matrix.to_rows().iter().map(|row| {
                row.iter().map(|e| *e as i64).collect::<Vec<i64>>()
            }).collect::<Vec<_>>(),
        })
    }
}
