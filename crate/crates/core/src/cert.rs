//! Property certification recomputed from adjacency alone.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{Graph, UNSEEN};

/// Reusable per-thread BFS buffers.
struct Scratch {
    dist: Vec<u32>,
    parent: Vec<u32>,
    touched: Vec<u32>,
    queue: VecDeque<u32>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            dist: vec![UNSEEN; n],
            parent: vec![UNSEEN; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v as usize] = UNSEEN;
            self.parent[v as usize] = UNSEEN;
        }
        self.touched.clear();
        self.queue.clear();
    }

    fn visit(&mut self, v: u32, d: u32, parent: u32) {
        self.dist[v as usize] = d;
        self.parent[v as usize] = parent;
        self.touched.push(v);
        self.queue.push_back(v);
    }

    /// Length of the shortest closed walk through `root` found by BFS, if below `bound`.
    ///
    /// Scanning level `l` can only reveal cycles of length `2l+1` or `2l+2`, so the
    /// search stops at the first level with `2l+1 >= bound`.
    fn short_cycle(&mut self, g: &Graph, root: usize, mut bound: u32) -> Option<u32> {
        self.reset();
        self.visit(root as u32, 0, UNSEEN);
        let mut found = None;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u as usize];
            if 2 * du + 1 >= bound {
                break;
            }
            for &w in g.neighbors(u as usize) {
                let dw = self.dist[w as usize];
                if dw == UNSEEN {
                    self.visit(w, du + 1, u);
                } else if dw == du {
                    bound = bound.min(2 * du + 1);
                    found = Some(bound);
                } else if dw == du + 1 && self.parent[w as usize] != u {
                    bound = bound.min(2 * du + 2);
                    found = Some(bound);
                }
            }
        }
        found
    }

    fn eccentricity(&mut self, g: &Graph, root: usize) -> Option<u32> {
        self.reset();
        self.visit(root as u32, 0, UNSEEN);
        let mut far = 0;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u as usize];
            far = du;
            for &w in g.neighbors(u as usize) {
                if self.dist[w as usize] == UNSEEN {
                    self.visit(w, du + 1, u);
                }
            }
        }
        (self.touched.len() == g.order()).then_some(far)
    }
}

/// Exact girth by truncated BFS from every vertex. `None` for forests.
pub fn girth(g: &Graph) -> Option<u32> {
    let n = g.order();
    let best = AtomicU32::new(UNSEEN);
    (0..n).into_par_iter().for_each_init(
        || Scratch::new(n),
        |scratch, root| {
            let bound = best.load(Ordering::Relaxed);
            if bound <= 3 {
                return;
            }
            if let Some(len) = scratch.short_cycle(g, root, bound) {
                best.fetch_min(len, Ordering::Relaxed);
            }
        },
    );
    match best.into_inner() {
        UNSEEN => None,
        len => Some(len),
    }
}

/// 2-colorability check over all components.
pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                let w = w as usize;
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Diameter by all-pairs BFS; `None` if the graph is empty or disconnected.
pub fn diameter(g: &Graph) -> Option<u32> {
    let n = g.order();
    if n == 0 {
        return None;
    }
    (0..n)
        .into_par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, root| scratch.eccentricity(g, root),
        )
        .try_reduce(|| 0, |a, b| Some(a.max(b)))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CertOptions {
    pub diameter: bool,
}

/// Structural properties of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub order: usize,
    pub size: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Common degree when the graph is regular.
    pub regular_degree: Option<usize>,
    pub bipartite: bool,
    /// `None` means no cycle.
    pub girth: Option<u32>,
    /// Only filled when requested and the graph is connected.
    pub diameter: Option<u32>,
}

impl CertReport {
    /// `2 * size == sum of degrees` with the given degree sequence.
    pub fn handshake_holds(&self, g: &Graph) -> bool {
        (0..g.order()).map(|v| g.degree(v)).sum::<usize>() == 2 * self.size
    }
}

/// Full certificate including diameter.
pub fn certify(g: &Graph) -> CertReport {
    certify_with(g, CertOptions { diameter: true })
}

pub fn certify_with(g: &Graph, opts: CertOptions) -> CertReport {
    let degrees = (0..g.order()).map(|v| g.degree(v));
    let min_degree = degrees.clone().min().unwrap_or(0);
    let max_degree = degrees.max().unwrap_or(0);
    CertReport {
        order: g.order(),
        size: g.size(),
        min_degree,
        max_degree,
        regular_degree: (g.order() > 0 && min_degree == max_degree).then_some(min_degree),
        bipartite: is_bipartite(g),
        girth: girth(g),
        diameter: if opts.diameter { diameter(g) } else { None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn cycles_and_trees() {
        for n in 3..12 {
            assert_eq!(girth(&Graph::cycle(n)), Some(n as u32));
        }
        assert_eq!(girth(&Graph::path(10)), None);
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        assert_eq!(girth(&star), None);
        assert_eq!(girth(&Graph::empty(0)), None);
    }

    #[test]
    fn known_girths() {
        assert_eq!(girth(&petersen()), Some(5));
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(girth(&k4), Some(3));
        let k33 = Graph::from_edges(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        assert_eq!(girth(&k33), Some(4));
        assert!(is_bipartite(&k33));
        assert!(!is_bipartite(&petersen()));
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&Graph::cycle(8)), Some(4));
        assert_eq!(diameter(&petersen()), Some(2));
        assert_eq!(diameter(&Graph::empty(1)), Some(0));
        assert_eq!(diameter(&Graph::empty(2)), None);
        assert_eq!(diameter(&Graph::empty(0)), None);
    }

    #[test]
    fn single_edge_certificate() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let c = certify(&g);
        assert_eq!(c.order, 2);
        assert_eq!(c.size, 1);
        assert_eq!(c.regular_degree, Some(1));
        assert_eq!(c.girth, None);
        assert_eq!(c.diameter, Some(1));
        assert!(c.bipartite);
        assert!(c.handshake_holds(&g));
    }

    #[test]
    fn irregular_graph_has_no_regular_degree() {
        let c = certify(&Graph::path(4));
        assert_eq!((c.min_degree, c.max_degree, c.regular_degree), (1, 2, None));
        let c = certify_with(&Graph::cycle(6), CertOptions::default());
        assert_eq!(c.diameter, None);
        assert_eq!(c.regular_degree, Some(2));
    }
}
