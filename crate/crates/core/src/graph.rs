//! Plane straight-line graphs and unit-length abstract graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::geom::{point_segment_distance, segment_distance, Point2, Tolerance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {edge} references vertex {vertex} but the graph has {n} vertices")]
    IndexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("invalid geometric graph: {0}")]
    Invalid(Violation),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph needs at least {needed} vertices, has {actual}")]
    TooSmall { needed: usize, actual: usize },
}

/// First invariant broken by a geometric graph.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicateVertex { first: usize, second: usize },
    SelfLoop { edge: usize },
    ZeroLengthEdge { edge: usize },
    DuplicateEdge { first: usize, second: usize },
    VertexOnEdge { vertex: usize, edge: usize },
    Crossing { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::DuplicateVertex { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            Violation::SelfLoop { edge } => write!(f, "edge {edge} is a self-loop"),
            Violation::ZeroLengthEdge { edge } => write!(f, "edge {edge} has zero length"),
            Violation::DuplicateEdge { first, second } => {
                write!(f, "edges {first} and {second} join the same vertices")
            }
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies on the interior of edge {edge}")
            }
            Violation::Crossing { first, second } => {
                write!(f, "edges {first} and {second} cross")
            }
        }
    }
}

/// Undirected straight-line graph in the plane. Edges are stored with the
/// smaller endpoint first; their order is the order given at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    vertices: Vec<Point2>,
    edges: Vec<(usize, usize)>,
    lengths: Vec<f64>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl GeometricGraph {
    /// Structural construction: indices in range, finite coordinates, no
    /// self-loops. Planarity and the other invariants are checked by
    /// [`GeometricGraph::validate`].
    pub fn new(vertices: Vec<Point2>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let n = vertices.len();
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GraphError::NonFinite(i));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::IndexOutOfRange {
                        edge: i,
                        vertex: w,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(i));
            }
            norm.push((u.min(v), u.max(v)));
        }
        let lengths = norm
            .iter()
            .map(|&(u, v)| vertices[u].dist(vertices[v]))
            .collect();
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in norm.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        Ok(GeometricGraph {
            vertices,
            edges: norm,
            lengths,
            adj,
        })
    }

    /// [`GeometricGraph::new`] followed by [`GeometricGraph::validate`].
    pub fn new_valid(
        vertices: Vec<Point2>,
        edges: Vec<(usize, usize)>,
        tol: &Tolerance,
    ) -> Result<Self, GraphError> {
        let g = GeometricGraph::new(vertices, edges)?;
        g.validate(tol).map_err(GraphError::Invalid)?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn length(&self, e: usize) -> f64 {
        self.lengths[e]
    }

    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// `(neighbor, edge id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    pub fn edge_segment(&self, e: usize) -> (Point2, Point2) {
        let (u, v) = self.edges[e];
        (self.vertices[u], self.vertices[v])
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        GeometricGraph::new(self.vertices.clone(), edges)
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m() + 1 == self.n() && self.is_connected()
    }

    /// Bounding box `(min, max)`; `None` for the empty graph.
    pub fn bounding_box(&self) -> Option<(Point2, Point2)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), p| {
            (
                Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Checks all geometric invariants and reports the first violation.
    pub fn validate(&self, tol: &Tolerance) -> Result<(), Violation> {
        let eps = tol.eps_geom;
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                if self.vertices[i].dist(self.vertices[j]) <= eps {
                    return Err(Violation::DuplicateVertex {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let mut seen = std::collections::HashMap::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                return Err(Violation::SelfLoop { edge: i });
            }
            if self.lengths[i] <= eps {
                return Err(Violation::ZeroLengthEdge { edge: i });
            }
            if let Some(&j) = seen.get(&(u, v)) {
                return Err(Violation::DuplicateEdge {
                    first: j,
                    second: i,
                });
            }
            seen.insert((u, v), i);
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let (a, b) = self.edge_segment(e);
            for w in 0..n {
                if w != u && w != v && point_segment_distance(self.vertices[w], a, b) <= eps {
                    return Err(Violation::VertexOnEdge { vertex: w, edge: e });
                }
            }
        }
        for i in 0..self.m() {
            let (a, b) = self.edge_segment(i);
            let (u1, v1) = self.edges[i];
            for j in i + 1..self.m() {
                let (u2, v2) = self.edges[j];
                let shared = [u1, v1].iter().any(|w| *w == u2 || *w == v2);
                if shared {
                    // Edges sharing an endpoint only collide by overlapping,
                    // and then one of them contains a vertex of the other,
                    // which the vertex-on-edge check has already reported.
                    continue;
                }
                let (c, d) = self.edge_segment(j);
                if segment_distance(a, b, c, d) <= eps {
                    return Err(Violation::Crossing {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_abstract(&self) -> AbstractGraph {
        AbstractGraph::new(self.n(), self.edges.clone()).expect("edges are structurally valid")
    }
}

/// Simple undirected graph with unit edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl AbstractGraph {
    /// Edges are normalized, sorted and deduplicated.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::IndexOutOfRange {
                        edge: i,
                        vertex: w,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(i));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(AbstractGraph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        AbstractGraph::new(n, Vec::new()).unwrap()
    }

    pub fn path(n: usize) -> Self {
        AbstractGraph::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        AbstractGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        AbstractGraph::new(n, edges).unwrap()
    }

    /// `K_{1,k}` with hub 0.
    pub fn star(k: usize) -> Self {
        AbstractGraph::new(k + 1, (1..=k).map(|i| (0, i)).collect()).unwrap()
    }

    /// Path `1..=n` plus apex 0 joined to every path vertex.
    pub fn fan(n: usize) -> Self {
        let mut edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        edges.extend((2..=n).map(|i| (i - 1, i)));
        AbstractGraph::new(n + 1, edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        AbstractGraph::new(self.n, edges)
    }

    /// BFS hop counts from `s`; `None` marks unreachable vertices.
    pub fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    /// Largest hop distance; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn complement(&self) -> AbstractGraph {
        let edges = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.has_edge(i, j))
            .collect();
        AbstractGraph::new(self.n, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(edges: Vec<(usize, usize)>) -> GeometricGraph {
        GeometricGraph::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ],
            edges,
        )
        .unwrap()
    }

    #[test]
    fn square_cycle_is_valid() {
        let g = square(vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(g.validate(&Tolerance::default()), Ok(()));
        assert_eq!(g.edge(3), (0, 3));
    }

    #[test]
    fn diagonals_cross() {
        let g = square(vec![(0, 2), (1, 3)]);
        assert_eq!(
            g.validate(&Tolerance::default()),
            Err(Violation::Crossing {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn duplicate_vertices_rejected() {
        let p = Point2::new(0.5, 0.5);
        let g = GeometricGraph::new(vec![p, p], vec![]).unwrap();
        assert_eq!(
            g.validate(&Tolerance::default()),
            Err(Violation::DuplicateVertex {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn collinear_overlap_rejected() {
        let g = GeometricGraph::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(2.0, 0.0),
                Point2::new(1.0, 0.0),
            ],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        assert!(matches!(
            g.validate(&Tolerance::default()),
            Err(Violation::VertexOnEdge { vertex: 2, edge: 0 })
        ));
    }

    #[test]
    fn duplicate_edges_rejected() {
        let g = square(vec![(0, 1), (1, 0)]);
        assert_eq!(
            g.validate(&Tolerance::default()),
            Err(Violation::DuplicateEdge {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn out_of_range_edge() {
        assert!(matches!(
            GeometricGraph::new(vec![Point2::new(0.0, 0.0)], vec![(0, 3)]),
            Err(GraphError::IndexOutOfRange { edge: 0, vertex: 3, .. })
        ));
    }

    #[test]
    fn abstract_diameters() {
        assert_eq!(AbstractGraph::cycle(5).diameter(), Some(2));
        assert_eq!(AbstractGraph::star(6).diameter(), Some(2));
        assert_eq!(AbstractGraph::complete(4).diameter(), Some(1));
        assert_eq!(AbstractGraph::empty(2).diameter(), None);
        assert_eq!(AbstractGraph::fan(5).m(), 9);
    }
}
