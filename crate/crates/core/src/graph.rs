//! Simple undirected graphs: an index-based adjacency core and a labeled
//! wrapper over coordinatized vertices.

use std::collections::VecDeque;

use thiserror::Error;

use crate::vertex::{Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("parallel edge {0} -- {1}")]
    ParallelEdge(String, String),
    #[error("vertex index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(Vertex),
    #[error("edge {0} -- {1} joins two vertices on the same side")]
    SameSide(Vertex, Vertex),
}

pub(crate) const UNSEEN: u32 = u32::MAX;

enum EdgeFault {
    Loop(usize),
    Parallel(usize, usize),
    OutOfRange(usize),
}

/// Index-based simple graph in compressed adjacency form. Neighbor lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph on `0..n`. Rejects loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::assemble(n, edges).map_err(|fault| match fault {
            EdgeFault::Loop(u) => GraphError::Loop(u.to_string()),
            EdgeFault::Parallel(u, v) => GraphError::ParallelEdge(u.to_string(), v.to_string()),
            EdgeFault::OutOfRange(index) => GraphError::IndexOutOfRange { index, order: n },
        })
    }

    fn assemble<I>(n: usize, edges: I) -> Result<Graph, EdgeFault>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if let Some(&index) = [u, v].iter().find(|&&i| i >= n) {
                return Err(EdgeFault::OutOfRange(index));
            }
            if u == v {
                return Err(EdgeFault::Loop(u));
            }
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        offsets.push(0);
        for (u, mut list) in lists.into_iter().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(EdgeFault::Parallel(u, w[0] as usize));
            }
            targets.extend(list);
            offsets.push(targets.len());
        }
        Ok(Graph { offsets, targets })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// The cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn size(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Multi-source BFS distances, exploring no further than `limit`.
    /// Unreached vertices get `None`.
    pub fn distances_from(&self, sources: &[usize], limit: Option<u32>) -> Vec<Option<u32>> {
        let mut dist = vec![UNSEEN; self.order()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == UNSEEN {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            if limit.is_some_and(|l| du >= l) {
                continue;
            }
            for &w in self.neighbors(u) {
                let w = w as usize;
                if dist[w] == UNSEEN {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist.into_iter()
            .map(|d| (d != UNSEEN).then_some(d))
            .collect()
    }

    /// Subgraph induced by the vertices with `keep[v]`, renumbered in index order.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let mut new_index = vec![usize::MAX; self.order()];
        let mut n = 0;
        for (v, &k) in keep.iter().enumerate() {
            if k {
                new_index[v] = n;
                n += 1;
            }
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (new_index[u], new_index[v]));
        Graph::from_edges(n, edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Vertices outside `inside` whose number of neighbors inside is not exactly one,
    /// with that count.
    pub fn domination_violations(&self, inside: &[bool]) -> Vec<(usize, usize)> {
        (0..self.order())
            .filter(|&v| !inside[v])
            .filter_map(|v| {
                let hits = self
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| inside[w as usize])
                    .count();
                (hits != 1).then_some((v, hits))
            })
            .collect()
    }
}

/// Outcome of a perfect-domination check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationReport {
    /// Every vertex outside the set whose neighbor count inside the set is not 1.
    pub violations: Vec<(Vertex, usize)>,
}

impl DominationReport {
    pub fn is_perfect(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A simple graph over [`Vertex`] labels, stored in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<Vertex>,
    graph: Graph,
    sided: bool,
}

impl LabeledGraph {
    /// Builds a graph from labels and labeled edges.
    pub fn new(
        labels: Vec<Vertex>,
        edges: &[(Vertex, Vertex)],
    ) -> Result<LabeledGraph, GraphError> {
        Self::build(labels, edges, false)
    }

    /// Like [`LabeledGraph::new`], additionally requiring every edge to join
    /// opposite sides.
    pub fn new_bipartite(
        labels: Vec<Vertex>,
        edges: &[(Vertex, Vertex)],
    ) -> Result<LabeledGraph, GraphError> {
        Self::build(labels, edges, true)
    }

    fn build(
        mut labels: Vec<Vertex>,
        edges: &[(Vertex, Vertex)],
        sided: bool,
    ) -> Result<LabeledGraph, GraphError> {
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateLabel(w[0]));
        }
        let lookup = |v: &Vertex| {
            labels
                .binary_search(v)
                .map_err(|_| GraphError::UnknownVertex(*v))
        };
        let mut indexed = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if sided && a.side() == b.side() {
                return Err(GraphError::SameSide(*a, *b));
            }
            indexed.push((lookup(a)?, lookup(b)?));
        }
        let graph = Graph::assemble(labels.len(), indexed).map_err(|fault| match fault {
            EdgeFault::Loop(u) => GraphError::Loop(labels[u].to_string()),
            EdgeFault::Parallel(u, v) => {
                GraphError::ParallelEdge(labels[u].to_string(), labels[v].to_string())
            }
            EdgeFault::OutOfRange(index) => GraphError::IndexOutOfRange {
                index,
                order: labels.len(),
            },
        })?;
        Ok(LabeledGraph {
            labels,
            graph,
            sided,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Vertex {
        self.labels[index]
    }

    /// True when the side bits were declared as the bipartition.
    pub fn is_sided(&self) -> bool {
        self.sided
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.graph.size()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    fn require(&self, v: &Vertex) -> Result<usize, GraphError> {
        self.index_of(v).ok_or(GraphError::UnknownVertex(*v))
    }

    fn mask(&self, s: &VertexSet) -> Result<Vec<bool>, GraphError> {
        let mut mask = vec![false; self.order()];
        for v in s {
            mask[self.require(v)?] = true;
        }
        Ok(mask)
    }

    /// Labeled edges with endpoints and lines in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.graph
            .edges()
            .map(|(u, v)| (self.labels[u], self.labels[v]))
    }

    pub fn neighbors(&self, v: &Vertex) -> Result<VertexSet, GraphError> {
        let i = self.require(v)?;
        Ok(self
            .graph
            .neighbors(i)
            .iter()
            .map(|&w| self.labels[w as usize])
            .collect())
    }

    /// Vertices at distance exactly `d` from `s` (open), or at most `d` (closed).
    pub fn neighborhood(
        &self,
        s: &VertexSet,
        d: u32,
        closed: bool,
    ) -> Result<VertexSet, GraphError> {
        let sources = s
            .iter()
            .map(|v| self.require(v))
            .collect::<Result<Vec<_>, _>>()?;
        let dist = self.graph.distances_from(&sources, Some(d));
        Ok(dist
            .iter()
            .enumerate()
            .filter(|(_, dv)| match dv {
                Some(dv) if closed => *dv <= d,
                Some(dv) => *dv == d,
                None => false,
            })
            .map(|(i, _)| self.labels[i])
            .collect())
    }

    /// Shortest-path distance, `None` if disconnected.
    pub fn distance(&self, u: &Vertex, v: &Vertex) -> Result<Option<u32>, GraphError> {
        let (i, j) = (self.require(u)?, self.require(v)?);
        Ok(self.graph.distances_from(&[i], None)[j])
    }

    /// `G - s`: the subgraph induced on the vertices outside `s`.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<LabeledGraph, GraphError> {
        let removed = self.mask(s)?;
        let keep: Vec<bool> = removed.iter().map(|r| !r).collect();
        let labels = self
            .labels
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(v, _)| *v)
            .collect();
        Ok(LabeledGraph {
            labels,
            graph: self.graph.induced(&keep),
            sided: self.sided,
        })
    }

    pub fn is_perfect_dominating(&self, u: &VertexSet) -> Result<DominationReport, GraphError> {
        let inside = self.mask(u)?;
        let violations = self
            .graph
            .domination_violations(&inside)
            .into_iter()
            .map(|(v, count)| (self.labels[v], count))
            .collect();
        Ok(DominationReport { violations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::vertex::Side;

    fn pv(i: u32) -> Vertex {
        Vertex::rho2(Side::Point, FieldElement::from_index(i))
    }

    fn lv(i: u32) -> Vertex {
        Vertex::rho2(Side::Line, FieldElement::from_index(i))
    }

    fn labeled_cycle(n: u32) -> LabeledGraph {
        let labels: Vec<Vertex> = (0..n).map(pv).collect();
        let edges: Vec<_> = (0..n).map(|i| (pv(i), pv((i + 1) % n))).collect();
        LabeledGraph::new(labels, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(matches!(
            Graph::from_edges(3, [(1, 1)]),
            Err(GraphError::Loop(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(..))
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::IndexOutOfRange { index: 2, order: 2 })
        ));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        for u in 0..5 {
            for &v in g.neighbors(u) {
                assert!(g.has_edge(v as usize, u));
            }
        }
        assert_eq!(g.size(), 4);
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2), (3, 4)]
        );
    }

    #[test]
    fn neighborhoods_on_cycle() {
        let g = labeled_cycle(8);
        let s = VertexSet::singleton(pv(0));
        assert_eq!(g.neighborhood(&s, 0, true).unwrap(), s);
        assert_eq!(g.neighborhood(&s, 0, false).unwrap(), s);
        let n1: VertexSet = [pv(1), pv(7)].into_iter().collect();
        assert_eq!(g.neighborhood(&s, 1, false).unwrap(), n1);
        assert_eq!(g.neighborhood(&s, 2, true).unwrap().len(), 5);
        assert_eq!(
            g.neighborhood(&s, 4, false).unwrap(),
            VertexSet::singleton(pv(4))
        );
        let missing = VertexSet::singleton(lv(0));
        assert_eq!(
            g.neighborhood(&missing, 1, false).unwrap_err(),
            GraphError::UnknownVertex(lv(0))
        );
    }

    #[test]
    fn delete_vertices_edge_cases() {
        let g = labeled_cycle(6);
        assert_eq!(g.delete_vertices(&VertexSet::new()).unwrap(), g);
        let all: VertexSet = g.labels().iter().copied().collect();
        let empty = g.delete_vertices(&all).unwrap();
        assert_eq!((empty.order(), empty.size()), (0, 0));
        let h = g.delete_vertices(&VertexSet::singleton(pv(0))).unwrap();
        assert_eq!((h.order(), h.size()), (5, 4));
        assert!(g.delete_vertices(&VertexSet::singleton(lv(3))).is_err());
    }

    #[test]
    fn perfect_domination_basics() {
        let c4 = labeled_cycle(4);
        let all: VertexSet = c4.labels().iter().copied().collect();
        assert!(c4.is_perfect_dominating(&all).unwrap().is_perfect());
        let report = c4
            .is_perfect_dominating(&VertexSet::singleton(pv(0)))
            .unwrap();
        assert!(!report.is_perfect());
        assert_eq!(report.violations, vec![(pv(2), 0)]);
        // two adjacent vertices of C6 dominate the rest perfectly
        let c6 = labeled_cycle(6);
        let pair: VertexSet = [pv(0), pv(1)].into_iter().collect();
        assert!(!c6.is_perfect_dominating(&pair).unwrap().is_perfect());
        let opposite: VertexSet = [pv(0), pv(3)].into_iter().collect();
        assert!(c6.is_perfect_dominating(&opposite).unwrap().is_perfect());
    }

    #[test]
    fn sided_graphs_reject_same_side_edges() {
        let err = LabeledGraph::new_bipartite(vec![pv(0), pv(1)], &[(pv(0), pv(1))]).unwrap_err();
        assert_eq!(err, GraphError::SameSide(pv(0), pv(1)));
        let ok = LabeledGraph::new_bipartite(vec![pv(0), lv(0)], &[(lv(0), pv(0))]).unwrap();
        assert!(ok.is_sided());
        assert_eq!(ok.edges().collect::<Vec<_>>(), vec![(pv(0), lv(0))]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = LabeledGraph::new(vec![pv(0), pv(0)], &[]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateLabel(pv(0)));
        let err =
            LabeledGraph::new(vec![pv(0), pv(1)], &[(pv(0), pv(1)), (pv(1), pv(0))]).unwrap_err();
        assert!(matches!(err, GraphError::ParallelEdge(..)));
    }
}
