//! Finite directed multigraphs and the combinatorial queries applied to them:
//! adjacency matrices, strongly connected components, the component set Γ
//! with its reachability order, and hereditary (forward-closed) closures.
//!
//! Vertex ids are structured `(level, offset)` pairs so that matrix orderings
//! are reproducible: sorting ids gives the level-major, offset-ascending
//! enumeration used everywhere downstream. All iteration is over sorted
//! containers; nothing depends on hash order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownEndpoint(VertexId),
    #[error("vertex order is not a permutation of the graph's vertices")]
    OrderMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub level: u32,
    pub offset: u32,
}

impl VertexId {
    pub fn new(level: u32, offset: u32) -> Self {
        VertexId { level, offset }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}_{}", self.level, self.offset)
    }
}

#[derive(Debug, Clone)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    index: BTreeMap<VertexId, usize>,
    /// Aggregated out-adjacency: for each vertex index, sorted `(target, multiplicity)`.
    out: Vec<Vec<(usize, u64)>>,
}

impl MultiGraph {
    pub fn new(
        mut vertices: Vec<VertexId>,
        mut edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateVertex(w[0]));
            }
        }
        let index: BTreeMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        edges.sort();
        let mut out = vec![Vec::new(); vertices.len()];
        for &(s, t) in &edges {
            let si = *index.get(&s).ok_or(GraphError::UnknownEndpoint(s))?;
            let ti = *index.get(&t).ok_or(GraphError::UnknownEndpoint(t))?;
            let row: &mut Vec<(usize, u64)> = &mut out[si];
            match row.iter_mut().find(|(x, _)| *x == ti) {
                Some((_, c)) => *c += 1,
                None => row.push((ti, 1)),
            }
        }
        for row in &mut out {
            row.sort();
        }
        Ok(MultiGraph {
            vertices,
            edges,
            index,
            out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    fn idx(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Sorted `(target, multiplicity)` successors of `v`.
    pub fn successors(&self, v: VertexId) -> Vec<(VertexId, u64)> {
        match self.idx(v) {
            Some(i) => self.out[i]
                .iter()
                .map(|&(t, c)| (self.vertices[t], c))
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn edge_multiplicity(&self, s: VertexId, t: VertexId) -> u64 {
        match (self.idx(s), self.idx(t)) {
            (Some(si), Some(ti)) => self.out[si]
                .iter()
                .find(|(x, _)| *x == ti)
                .map_or(0, |&(_, c)| c),
            _ => 0,
        }
    }

    pub fn out_degree(&self, v: VertexId) -> u64 {
        self.idx(v)
            .map_or(0, |i| self.out[i].iter().map(|&(_, c)| c).sum())
    }

    /// Adjacency matrix in the given vertex order: entry `(i, j)` counts the
    /// parallel edges from `order[i]` to `order[j]`.
    pub fn adjacency_matrix(&self, order: &[VertexId]) -> Result<IntMatrix, GraphError> {
        let as_set: BTreeSet<VertexId> = order.iter().copied().collect();
        if as_set.len() != order.len()
            || order.len() != self.vertices.len()
            || !as_set.iter().all(|v| self.contains(*v))
        {
            return Err(GraphError::OrderMismatch);
        }
        let pos: BTreeMap<VertexId, usize> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut m = IntMatrix::zero(order.len(), order.len());
        for (vi, row) in self.out.iter().enumerate() {
            let i = pos[&self.vertices[vi]];
            for &(ti, c) in row {
                let j = pos[&self.vertices[ti]];
                m.add_assign_at(i, j, c as i128);
            }
        }
        Ok(m)
    }

    /// Strongly connected components as sorted vertex sets, ordered by their
    /// least contained vertex id. Iterative Kosaraju.
    pub fn scc(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertices.len();
        let mut finish_order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        // first pass: record vertices by completion time
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            seen[start] = true;
            while let Some(&(v, next)) = stack.last() {
                if next < self.out[v].len() {
                    stack.last_mut().expect("nonempty").1 += 1;
                    let (w, _) = self.out[v][next];
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    finish_order.push(v);
                    stack.pop();
                }
            }
        }
        // reversed graph
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, row) in self.out.iter().enumerate() {
            for &(w, _) in row {
                rev[w].push(v);
            }
        }
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for &start in finish_order.iter().rev() {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![start];
            comp_of[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &rev[v] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort();
            comps.push(members);
        }
        let mut out: Vec<Vec<VertexId>> = comps
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.vertices[i]).collect())
            .collect();
        out.sort();
        out
    }

    /// Smallest forward-closed vertex set containing `seed`: everything
    /// reachable from the seed along directed edges.
    pub fn hereditary_closure(&self, seed: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut closed: BTreeSet<VertexId> = BTreeSet::new();
        let mut stack: Vec<usize> = Vec::new();
        for &v in seed {
            if let Some(i) = self.idx(v) {
                if closed.insert(v) {
                    stack.push(i);
                }
            }
        }
        while let Some(i) = stack.pop() {
            for &(w, _) in &self.out[i] {
                if closed.insert(self.vertices[w]) {
                    stack.push(w);
                }
            }
        }
        closed
    }

    /// The component set Γ: every strongly connected component that carries a
    /// cycle, plus every sink that lies on no cycle, ordered by reachability.
    pub fn gamma_set(&self) -> GammaSet {
        let sccs = self.scc();
        let mut selected: Vec<Vec<VertexId>> = Vec::new();
        for comp in sccs {
            let cyclic = comp.len() > 1
                || self.edge_multiplicity(comp[0], comp[0]) > 0;
            if cyclic || self.out_degree(comp[0]) == 0 {
                selected.push(comp);
            }
        }
        // reachability between selected components, computed on vertex level
        let n = selected.len();
        let mut reach = vec![false; n * n];
        for (a, comp) in selected.iter().enumerate() {
            let seed: BTreeSet<VertexId> = comp.iter().copied().collect();
            let closure = self.hereditary_closure(&seed);
            for (b, other) in selected.iter().enumerate() {
                if other.iter().any(|v| closure.contains(v)) {
                    reach[a * n + b] = true;
                }
            }
        }
        // topological index (sources first) so the order satisfies i <= j;
        // ties broken by least vertex id, which keeps level-major layouts.
        let mut remaining: BTreeSet<usize> = (0..n).collect();
        let mut topo: Vec<usize> = Vec::with_capacity(n);
        while !remaining.is_empty() {
            let next = *remaining
                .iter()
                .find(|&&c| {
                    remaining
                        .iter()
                        .all(|&o| o == c || !reach[o * n + c])
                })
                .expect("condensation reachability is acyclic");
            remaining.remove(&next);
            topo.push(next);
        }
        let components: Vec<BTreeSet<VertexId>> = topo
            .iter()
            .map(|&c| selected[c].iter().copied().collect())
            .collect();
        let mut relations = Vec::new();
        for (i, &a) in topo.iter().enumerate() {
            for (j, &b) in topo.iter().enumerate() {
                if i != j && reach[a * n + b] {
                    relations.push((i, j));
                }
            }
        }
        let order = Poset::from_relations(components.len(), &relations)
            .expect("topological indexing satisfies the ordering assumption");
        GammaSet { components, order }
    }

    /// Deterministic DOT rendering; parallel edges appear individually.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Strongly connected components plus cycle-free sinks, with the
/// reachability order: `order.le(i, j)` holds when component `i` reaches
/// component `j`.
#[derive(Debug, Clone)]
pub struct GammaSet {
    pub components: Vec<BTreeSet<VertexId>>,
    pub order: Poset,
}

impl GammaSet {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(level: u32, offset: u32) -> VertexId {
        VertexId::new(level, offset)
    }

    #[test]
    fn adjacency_of_tiny_graphs() {
        let empty = MultiGraph::new(vec![], vec![]).unwrap();
        assert_eq!(empty.adjacency_matrix(&[]).unwrap().rows(), 0);

        let looped = MultiGraph::new(vec![v(0, 0)], vec![(v(0, 0), v(0, 0))]).unwrap();
        let m = looped.adjacency_matrix(&[v(0, 0)]).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1]]);
    }

    #[test]
    fn adjacency_rejects_bad_orders() {
        let g = MultiGraph::new(vec![v(0, 0), v(1, 0)], vec![(v(0, 0), v(1, 0))]).unwrap();
        assert_eq!(
            g.adjacency_matrix(&[v(0, 0)]),
            Err(GraphError::OrderMismatch)
        );
        assert_eq!(
            g.adjacency_matrix(&[v(0, 0), v(0, 0)]),
            Err(GraphError::OrderMismatch)
        );
    }

    #[test]
    fn adjacency_row_sums_are_out_degrees() {
        let g = MultiGraph::new(
            vec![v(0, 0), v(0, 1), v(1, 0)],
            vec![
                (v(0, 0), v(0, 1)),
                (v(0, 0), v(0, 1)),
                (v(0, 1), v(1, 0)),
                (v(1, 0), v(1, 0)),
            ],
        )
        .unwrap();
        let order = g.vertices().to_vec();
        let m = g.adjacency_matrix(&order).unwrap();
        for (i, vert) in order.iter().enumerate() {
            let sum: i128 = (0..m.cols()).map(|j| m.get(i, j)).sum();
            assert_eq!(sum, g.out_degree(*vert) as i128);
        }
    }

    #[test]
    fn scc_of_simple_shapes() {
        let two = MultiGraph::new(vec![v(0, 0), v(0, 1)], vec![(v(0, 0), v(0, 1))]).unwrap();
        assert_eq!(two.scc().len(), 2);

        let cycle = MultiGraph::new(
            vec![v(0, 0), v(0, 1), v(0, 2), v(0, 3)],
            vec![
                (v(0, 0), v(0, 1)),
                (v(0, 1), v(0, 2)),
                (v(0, 2), v(0, 3)),
                (v(0, 3), v(0, 0)),
            ],
        )
        .unwrap();
        let comps = cycle.scc();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 4);
    }

    #[test]
    fn gamma_of_single_loop() {
        let looped = MultiGraph::new(vec![v(0, 0)], vec![(v(0, 0), v(0, 0))]).unwrap();
        assert_eq!(looped.gamma_set().len(), 1);
    }

    #[test]
    fn gamma_skips_regular_non_cycle_vertices() {
        // a -> b -> c with a loop on a only: b is regular and acyclic, c is a sink
        let g = MultiGraph::new(
            vec![v(0, 0), v(1, 0), v(2, 0)],
            vec![
                (v(0, 0), v(0, 0)),
                (v(0, 0), v(1, 0)),
                (v(1, 0), v(2, 0)),
            ],
        )
        .unwrap();
        let gamma = g.gamma_set();
        assert_eq!(gamma.len(), 2);
        assert!(gamma.order.le(0, 1));
        assert!(!gamma.order.le(1, 0));
    }

    #[test]
    fn hereditary_closure_is_a_closure_operator() {
        let g = MultiGraph::new(
            vec![v(0, 0), v(0, 1), v(1, 0)],
            vec![(v(0, 0), v(0, 1)), (v(0, 1), v(1, 0))],
        )
        .unwrap();
        let all: BTreeSet<_> = g.vertices().iter().copied().collect();
        assert_eq!(g.hereditary_closure(&all), all);
        let sink: BTreeSet<_> = [v(1, 0)].into_iter().collect();
        assert_eq!(g.hereditary_closure(&sink), sink);
        let seed: BTreeSet<_> = [v(0, 0)].into_iter().collect();
        let once = g.hereditary_closure(&seed);
        assert!(once.is_superset(&seed));
        assert_eq!(g.hereditary_closure(&once), once);
    }

    #[test]
    fn dot_output_is_stable() {
        let g = MultiGraph::new(
            vec![v(1, 0), v(0, 0)],
            vec![(v(0, 0), v(1, 0)), (v(0, 0), v(1, 0))],
        )
        .unwrap();
        assert_eq!(
            g.to_dot(),
            "digraph {\n  \"v0_0\";\n  \"v1_0\";\n  \"v0_0\" -> \"v1_0\";\n  \"v0_0\" -> \"v1_0\";\n}\n"
        );
    }
}
