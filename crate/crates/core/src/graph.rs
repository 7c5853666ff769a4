//! Undirected labeled graphs shared by exchange graphs and flip graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Element leaving the vertex `source` along this edge.
    pub removed: String,
    /// Element entering in its place.
    pub added: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Serialize)]
struct VertexJson<'a> {
    id: usize,
    label: &'a str,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: Vec<VertexJson<'a>>,
    edges: &'a [Edge],
}

impl Graph {
    /// Builds a graph; edges are stored with `source < target` and sorted.
    pub fn new(labels: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| {
                assert!(e.source < labels.len() && e.target < labels.len(), "edge endpoint out of range");
                if e.source <= e.target {
                    e
                } else {
                    Edge {
                        source: e.target,
                        target: e.source,
                        removed: e.added,
                        added: e.removed,
                    }
                }
            })
            .collect();
        edges.sort_by(|a, b| (a.source, a.target, &a.removed).cmp(&(b.source, b.target, &b.removed)));
        edges.dedup_by(|a, b| a.source == b.source && a.target == b.target);
        Graph { labels, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => Some(0),
            Some(&first) => d.iter().all(|&x| x == first).then_some(first),
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        if n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    pub fn to_json(&self) -> String {
        let g = GraphJson {
            vertices: self
                .labels
                .iter()
                .enumerate()
                .map(|(id, label)| VertexJson { id, label })
                .collect(),
            edges: &self.edges,
        };
        serde_json::to_string_pretty(&g).expect("graph serializes")
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "  v{i} [label=\"{}\"];", escape(l)).unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  v{} -- v{} [label=\"{} / {}\"];",
                e.source,
                e.target,
                escape(&e.removed),
                escape(&e.added)
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Graph isomorphism by backtracking over a BFS ordering, pruned by
    /// degree and adjacency to already-mapped vertices. Labels are ignored.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        isomorphism(self, other).is_some()
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Returns `map` with `map[v]` the image in `h` of vertex `v` of `g`.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (ga, ha) = (g.adjacency(), h.adjacency());
    let mut dg: Vec<usize> = ga.iter().map(Vec::len).collect();
    let mut dh: Vec<usize> = ha.iter().map(Vec::len).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let order = bfs_order(&ga);
    let mut hadj = vec![vec![false; n]; n];
    for (v, ws) in ha.iter().enumerate() {
        for &w in ws {
            hadj[v][w] = true;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        pos: usize,
        order: &[usize],
        ga: &[Vec<usize>],
        ha: &[Vec<usize>],
        hadj: &[Vec<bool>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        for cand in 0..ha.len() {
            if used[cand] || ha[cand].len() != ga[v].len() {
                continue;
            }
            // every mapped vertex must be adjacent to cand exactly when it is adjacent to v
            let ok = order[..pos]
                .iter()
                .all(|&u| ga[v].binary_search(&u).is_ok() == hadj[cand][map[u]]);
            if !ok {
                continue;
            }
            map[v] = cand;
            used[cand] = true;
            if extend(pos + 1, order, ga, ha, hadj, map, used) {
                return true;
            }
            used[cand] = false;
            map[v] = usize::MAX;
        }
        false
    }

    extend(0, &order, &ga, &ha, &hadj, &mut map, &mut used).then_some(map)
}

fn bfs_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}
