//! Discrete Borsuk numbers: exhaustive search, the tree formula, clique
//! covers and the cone construction.

use std::collections::VecDeque;

use crate::graph::{AbstractGraph, GraphError};

/// Vertex partition into connected blocks; deleted edges are the edges
/// between blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretePartition {
    pub blocks: Vec<Vec<usize>>,
}

impl DiscretePartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn labels(&self, n: usize) -> Option<Vec<usize>> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                if v >= n || label[v] != usize::MAX {
                    return None;
                }
                label[v] = b;
            }
        }
        label.iter().all(|&l| l != usize::MAX).then_some(label)
    }

    pub fn deleted_edges(&self, g: &AbstractGraph) -> Vec<(usize, usize)> {
        let label = self.labels(g.n()).unwrap_or_else(|| vec![0; g.n()]);
        g.edges()
            .iter()
            .copied()
            .filter(|&(u, v)| label[u] != label[v])
            .collect()
    }

    /// True when the blocks partition the vertices, each block is connected
    /// and every block diameter is below the diameter of `g`.
    pub fn verify(&self, g: &AbstractGraph) -> bool {
        let Some(diam) = g.diameter() else {
            return false;
        };
        self.labels(g.n()).is_some()
            && self
                .blocks
                .iter()
                .all(|b| induced_diameter(g, b).is_some_and(|d| d < diam))
    }
}

/// Diameter of the subgraph induced by `block`; `None` if it is disconnected
/// or empty.
pub fn induced_diameter(g: &AbstractGraph, block: &[usize]) -> Option<usize> {
    let mut inside = vec![false; g.n()];
    for &v in block {
        inside[v] = true;
    }
    let mut best = 0;
    for &s in block {
        let mut dist = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if inside[y] && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    best = best.max(dist[y]);
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != block.len() {
            return None;
        }
    }
    (!block.is_empty()).then_some(best)
}

fn all_pairs(g: &AbstractGraph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|s| g.bfs(s).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect())
        .collect()
}

fn check_input(g: &AbstractGraph) -> Result<usize, GraphError> {
    if g.n() < 2 {
        return Err(GraphError::TooSmall {
            needed: 2,
            actual: g.n(),
        });
    }
    g.diameter().ok_or(GraphError::Disconnected)
}

struct Search<'a> {
    g: &'a AbstractGraph,
    dist: Vec<Vec<usize>>,
    diam: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, v: usize) -> bool {
        if v == self.g.n() {
            return self
                .blocks
                .iter()
                .all(|b| induced_diameter(self.g, b).is_some_and(|d| d < self.diam));
        }
        let open = self.blocks.len();
        for b in 0..=open.min(self.k - 1) {
            if b == open {
                // Not enough vertices left to fill the remaining blocks.
                if self.k - open > self.g.n() - v {
                    continue;
                }
                self.blocks.push(vec![v]);
            } else {
                if self.blocks[b].iter().any(|&u| self.dist[u][v] >= self.diam) {
                    continue;
                }
                self.blocks[b].push(v);
            }
            if self.run(v + 1) {
                return true;
            }
            if b == open {
                self.blocks.pop();
            } else {
                self.blocks[b].pop();
            }
        }
        false
    }
}

/// Minimum number of connected blocks, each of diameter below `diam(g)`,
/// found by searching vertex partitions with an increasing block count.
pub fn borsuk_discrete_exact(g: &AbstractGraph) -> Result<(usize, DiscretePartition), GraphError> {
    let diam = check_input(g)?;
    let dist = all_pairs(g);
    for k in 2..=g.n() {
        let mut s = Search {
            g,
            dist: dist.clone(),
            diam,
            k,
            blocks: vec![],
        };
        if s.run(0) {
            return Ok((k, DiscretePartition { blocks: s.blocks }));
        }
    }
    unreachable!("singleton blocks always have diameter 0 < diam")
}

/// Farthest vertex from `s` and the BFS parent array.
fn farthest(g: &AbstractGraph, s: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut last = s;
    while let Some(x) = queue.pop_front() {
        last = x;
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    (last, dist, parent)
}

/// Vertices reachable from `s` without entering `blocked`.
fn component(g: &AbstractGraph, s: usize, blocked: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    seen[blocked] = true;
    let mut stack = vec![s];
    let mut out = vec![s];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Borsuk number of a tree: 2 when the center is an edge, otherwise the
/// number of branches at the center that reach depth `diam/2`.
pub fn borsuk_discrete_tree(t: &AbstractGraph) -> Result<(usize, DiscretePartition), GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    if t.n() < 2 {
        return Err(GraphError::TooSmall {
            needed: 2,
            actual: t.n(),
        });
    }
    let (a, _, _) = farthest(t, 0);
    let (b, dist, parent) = farthest(t, a);
    let diam = dist[b];
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[*path.last().unwrap()]);
    }
    if diam % 2 == 1 {
        let (c1, c2) = (path[diam / 2], path[diam / 2 + 1]);
        let blocks = vec![component(t, c1, c2), component(t, c2, c1)];
        return Ok((2, DiscretePartition { blocks }));
    }
    let c = path[diam / 2];
    let depth = t.bfs(c);
    let mut deep = vec![];
    let mut shallow = vec![c];
    for &y in t.neighbors(c) {
        let branch = component(t, y, c);
        if branch.iter().any(|&x| depth[x] == Some(diam / 2)) {
            deep.push(branch);
        } else {
            shallow.extend(branch);
        }
    }
    let k = deep.len();
    deep[0].extend(shallow);
    deep[0].sort_unstable();
    Ok((k, DiscretePartition { blocks: deep }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn verify(&self, g: &AbstractGraph) -> bool {
        let mut seen = vec![false; g.n()];
        for c in &self.cliques {
            for (i, &u) in c.iter().enumerate() {
                if u >= g.n() || seen[u] {
                    return false;
                }
                seen[u] = true;
                if c[i + 1..].iter().any(|&v| !g.has_edge(u, v)) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

struct Coloring<'a> {
    h: &'a AbstractGraph,
    order: Vec<usize>,
    color: Vec<usize>,
    best: usize,
    best_color: Vec<usize>,
}

impl Coloring<'_> {
    fn run(&mut self, i: usize, used: usize) {
        if used >= self.best {
            return;
        }
        if i == self.order.len() {
            self.best = used;
            self.best_color = self.color.clone();
            return;
        }
        let v = self.order[i];
        for c in 0..=used {
            if c + 1 >= self.best {
                break;
            }
            if self
                .h
                .neighbors(v)
                .iter()
                .any(|&u| self.color[u] == c)
            {
                continue;
            }
            self.color[v] = c;
            self.run(i + 1, used.max(c + 1));
            self.color[v] = usize::MAX;
        }
    }
}

fn greedy_coloring(h: &AbstractGraph, order: &[usize]) -> Vec<usize> {
    let mut color = vec![usize::MAX; h.n()];
    for &v in order {
        let mut c = 0;
        while h.neighbors(v).iter().any(|&u| color[u] == c) {
            c += 1;
        }
        color[v] = c;
    }
    color
}

fn classes(color: &[usize]) -> Vec<Vec<usize>> {
    let k = color.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut out = vec![vec![]; k];
    for (v, &c) in color.iter().enumerate() {
        out[c].push(v);
    }
    out
}

/// Partition of the vertices into cliques, via colorings of the complement.
pub fn clique_cover(g: &AbstractGraph, mode: CoverMode) -> CliqueCover {
    let h = g.complement();
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let greedy = greedy_coloring(&h, &order);
    if mode == CoverMode::Greedy {
        return CliqueCover {
            cliques: classes(&greedy),
        };
    }
    let mut c = Coloring {
        h: &h,
        color: vec![usize::MAX; h.n()],
        best: greedy.iter().map(|&c| c + 1).max().unwrap_or(0),
        best_color: greedy,
        order,
    };
    c.run(0, 0);
    CliqueCover {
        cliques: classes(&c.best_color),
    }
}

/// `g` plus a new vertex `n` adjacent to every vertex.
pub fn cone(g: &AbstractGraph) -> AbstractGraph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    edges.extend((0..n).map(|v| (v, n)));
    AbstractGraph::new(n + 1, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(g: &AbstractGraph) -> usize {
        let (k, w) = borsuk_discrete_exact(g).unwrap();
        assert!(w.verify(g));
        assert_eq!(w.len(), k);
        k
    }

    #[test]
    fn golden_values() {
        assert_eq!(b(&AbstractGraph::path(5)), 2);
        assert_eq!(b(&AbstractGraph::cycle(6)), 2);
        assert_eq!(b(&AbstractGraph::cycle(5)), 3);
        assert_eq!(b(&AbstractGraph::star(4)), 4);
        assert_eq!(b(&AbstractGraph::complete(5)), 5);
        assert_eq!(b(&AbstractGraph::fan(5)), 3);
    }

    #[test]
    fn rejects_trivial_and_disconnected() {
        assert!(borsuk_discrete_exact(&AbstractGraph::empty(1)).is_err());
        assert_eq!(
            borsuk_discrete_exact(&AbstractGraph::empty(3)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn tree_formula() {
        let spider = AbstractGraph::new(7, vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        for t in [AbstractGraph::path(5), AbstractGraph::star(4), spider] {
            let (k, w) = borsuk_discrete_tree(&t).unwrap();
            assert!(w.verify(&t));
            assert_eq!(k, w.len());
            assert_eq!(k, b(&t));
        }
        assert_eq!(
            borsuk_discrete_tree(&AbstractGraph::cycle(4)),
            Err(GraphError::NotATree)
        );
    }

    #[test]
    fn clique_covers() {
        let c = clique_cover(&AbstractGraph::cycle(5), CoverMode::Exact);
        assert_eq!(c.len(), 3);
        assert!(c.verify(&AbstractGraph::cycle(5)));
        assert_eq!(clique_cover(&AbstractGraph::complete(4), CoverMode::Exact).len(), 1);
        assert_eq!(clique_cover(&AbstractGraph::empty(4), CoverMode::Exact).len(), 4);
        let g = AbstractGraph::cycle(7);
        assert!(clique_cover(&g, CoverMode::Greedy).len() >= clique_cover(&g, CoverMode::Exact).len());
    }

    #[test]
    fn cones() {
        assert_eq!(cone(&AbstractGraph::empty(3)), AbstractGraph::star(3).relabel_hub_last());
        assert_eq!(cone(&AbstractGraph::path(3)).diameter(), Some(2));
        let c5 = cone(&AbstractGraph::cycle(5));
        assert_eq!(b(&c5), 3);
        assert_eq!(clique_cover(&c5, CoverMode::Exact).len(), 3);
    }

    impl AbstractGraph {
        fn relabel_hub_last(&self) -> AbstractGraph {
            let n = self.n();
            let map = |v: usize| if v == 0 { n - 1 } else { v - 1 };
            AbstractGraph::new(n, self.edges().iter().map(|&(u, v)| (map(u), map(v))).collect()).unwrap()
        }
    }
}
