//! Planarity by the Demoucron–Malgrange–Pertuiset face-embedding algorithm,
//! run on every biconnected block.

use std::collections::{BTreeSet, VecDeque};

fn normalize(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = edges
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    e.sort_unstable();
    e.dedup();
    e
}

/// Edge sets of the biconnected blocks (bridges are blocks of one edge).
pub fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let edges = normalize(edges);
    let mut adj = vec![vec![]; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    struct State<'a> {
        adj: &'a [Vec<(usize, usize)>],
        edges: &'a [(usize, usize)],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut State, u: usize, parent_edge: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for k in 0..s.adj[u].len() {
            let (v, e) = s.adj[u][k];
            if Some(e) == parent_edge {
                continue;
            }
            if s.disc[v] == 0 {
                s.stack.push(e);
                dfs(s, v, Some(e));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = vec![];
                    while let Some(f) = s.stack.pop() {
                        block.push(s.edges[f]);
                        if f == e {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[v] < s.disc[u] {
                s.stack.push(e);
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let mut s = State {
        adj: &adj,
        edges: &edges,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: vec![],
        out: vec![],
    };
    for u in 0..n {
        if s.disc[u] == 0 {
            dfs(&mut s, u, None);
        }
    }
    s.out
}

/// Planarity of a simple graph on vertices `0..n`; loops and repeated
/// edges are ignored.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let edges = normalize(edges);
    if n >= 3 && edges.len() > 3 * n - 6 {
        return false;
    }
    blocks(n, &edges).iter().all(|b| block_is_planar(b))
}

fn block_is_planar(block: &[(usize, usize)]) -> bool {
    let mut ids: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let n = ids.len();
    if n <= 4 {
        return true;
    }
    if block.len() > 3 * n - 6 {
        return false;
    }
    let local = |x: usize| ids.binary_search(&x).unwrap();
    let edges: Vec<(usize, usize)> = block.iter().map(|&(u, v)| (local(u), local(v))).collect();
    Dmp::new(n, &edges).run()
}

struct Dmp {
    adj: Vec<Vec<usize>>,
    embedded_v: Vec<bool>,
    embedded_e: BTreeSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
    m: usize,
}

struct Fragment {
    /// Interior vertices; empty for a single chord.
    inner: Vec<usize>,
    attach: BTreeSet<usize>,
    chord: Option<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Dmp {
    fn new(n: usize, edges: &[(usize, usize)]) -> Dmp {
        let mut adj = vec![vec![]; n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Dmp {
            adj,
            embedded_v: vec![false; n],
            embedded_e: BTreeSet::new(),
            faces: vec![],
            m: edges.len(),
        }
    }

    /// Some cycle, found from the first back edge of a DFS.
    fn cycle(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        let mut stack = vec![(0, 0)];
        depth[0] = 0;
        parent[0] = 0;
        while let Some((u, k)) = stack.pop() {
            if k < self.adj[u].len() {
                stack.push((u, k + 1));
                let v = self.adj[u][k];
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    stack.push((v, 0));
                } else if v != parent[u] && depth[v] < depth[u] {
                    let mut cyc = vec![u];
                    let mut w = u;
                    while w != v {
                        w = parent[w];
                        cyc.push(w);
                    }
                    return cyc;
                }
            }
        }
        unreachable!("a biconnected block with more than two vertices has a cycle")
    }

    fn embed_path(&mut self, path: &[usize]) {
        for w in path.windows(2) {
            self.embedded_e.insert(key(w[0], w[1]));
        }
        for &v in path {
            self.embedded_v[v] = true;
        }
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.adj.len();
        let mut out = vec![];
        for u in 0..n {
            for &v in &self.adj[u] {
                if u < v
                    && self.embedded_v[u]
                    && self.embedded_v[v]
                    && !self.embedded_e.contains(&(u, v))
                {
                    out.push(Fragment {
                        inner: vec![],
                        attach: [u, v].into(),
                        chord: Some((u, v)),
                    });
                }
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.embedded_v[s] || seen[s] {
                continue;
            }
            let mut inner = vec![];
            let mut attach = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                inner.push(u);
                for &v in &self.adj[u] {
                    if self.embedded_v[v] {
                        attach.insert(v);
                    } else if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(Fragment {
                inner,
                attach,
                chord: None,
            });
        }
        out
    }

    /// Path through a fragment between two of its attachment vertices.
    fn fragment_path(&self, f: &Fragment) -> Vec<usize> {
        if let Some((u, v)) = f.chord {
            return vec![u, v];
        }
        let start = *f.attach.iter().next().unwrap();
        let n = self.adj.len();
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &v in &self.adj[start] {
            if f.inner.contains(&v) && prev[v] == usize::MAX {
                prev[v] = start;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if self.embedded_v[v] && v != start && f.attach.contains(&v) {
                    let mut path = vec![v, u];
                    let mut w = u;
                    while prev[w] != start {
                        w = prev[w];
                        path.push(w);
                    }
                    path.push(start);
                    path.reverse();
                    return path;
                }
                if !self.embedded_v[v] && prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        unreachable!("fragments of a biconnected block have two attachments")
    }

    fn split(&mut self, fi: usize, path: &[usize]) {
        let face = self.faces.swap_remove(fi);
        let (a, b) = (path[0], path[path.len() - 1]);
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let walk = |from: usize, to: usize| {
            let mut w = vec![];
            let mut i = from;
            loop {
                w.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % len;
            }
            w
        };
        let inner = &path[1..path.len() - 1];
        let mut f1 = walk(ia, ib);
        f1.extend(inner.iter().rev());
        let mut f2 = walk(ib, ia);
        f2.extend(inner.iter());
        self.faces.push(f1);
        self.faces.push(f2);
    }

    fn run(mut self) -> bool {
        let cyc = self.cycle();
        let mut closed = cyc.clone();
        closed.push(cyc[0]);
        self.embed_path(&closed);
        self.faces = vec![cyc.clone(), cyc];
        while self.embedded_e.len() < self.m {
            let frags = self.fragments();
            let mut choice = None;
            for (k, f) in frags.iter().enumerate() {
                let admissible: Vec<usize> = (0..self.faces.len())
                    .filter(|&i| f.attach.iter().all(|v| self.faces[i].contains(v)))
                    .collect();
                match admissible.len() {
                    0 => return false,
                    1 => {
                        choice = Some((k, admissible[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((k, admissible[0]));
                        }
                    }
                }
            }
            let (k, fi) = choice.expect("unembedded edges form a fragment");
            let path = self.fragment_path(&frags[k]);
            self.embed_path(&path);
            self.split(fi, &path);
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(!is_planar(5, &complete(5)));
        let k33: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        assert!(!is_planar(6, &k33));
        assert!(is_planar(4, &complete(4)));
        let mut k5e = complete(5);
        k5e.pop();
        assert!(is_planar(5, &k5e));
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut e = vec![];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        assert!(!is_planar(10, &e));
        // Its edge count alone does not decide it.
        assert!(e.len() <= 3 * 10 - 6);
    }

    #[test]
    fn subdivided_k5_through_a_cut_vertex() {
        // K5 with one edge subdivided, plus a pendant triangle on a cut vertex.
        let mut e: Vec<_> = complete(5).into_iter().filter(|&x| x != (0, 1)).collect();
        e.extend([(0, 5), (5, 1), (2, 6), (6, 7), (7, 2)]);
        assert!(!is_planar(8, &e));
        assert_eq!(blocks(8, &e).len(), 2);
    }

    #[test]
    fn two_disjoint_paths() {
        let e = [(0, 1), (1, 2), (3, 4), (4, 5)];
        assert!(is_planar(6, &e));
        assert_eq!(blocks(6, &e).len(), 4);
    }

    #[test]
    fn grid_and_wheel() {
        let mut e = vec![];
        for r in 0..4 {
            for c in 0..4 {
                let v = 4 * r + c;
                if c < 3 {
                    e.push((v, v + 1));
                }
                if r < 3 {
                    e.push((v, v + 4));
                }
            }
        }
        assert!(is_planar(16, &e));
        let wheel: Vec<_> = (1..9).flat_map(|i| [(0, i), (i, i % 8 + 1)]).collect();
        assert!(is_planar(9, &wheel));
    }
}
