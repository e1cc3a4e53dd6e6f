//! Brute-force reference clusterings used as ground truth in tests.
//!
//! The three references deliberately use different algorithms (BFS
//! expansion, union-find, Kruskal) and share no code with the pipeline,
//! so agreement between them and the pipeline is evidence, not
//! tautology. They aim for auditability over speed and are meant for
//! inputs up to a couple thousand points.

use crate::classify::{classify_points, Params, PointClass};
use crate::edge::EdgeRecord;
use crate::error::Result;
use crate::knng::NeighborGraph;
use crate::parallel::Workers;
use crate::points::PointSet;

pub const NOISE: i64 = -1;

/// Classical density clustering by direct eps-ball counting
/// (self-inclusive) and breadth-first expansion over core points within
/// eps of each other; borders go to the nearest core within eps.
pub fn dbscan_reference(points: &PointSet, params: &Params) -> Vec<i64> {
    let n = points.n_points();
    let core: Vec<bool> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| points.distance(i, j) <= params.eps)
                .count()
                >= params.min_pts
        })
        .collect();
    let mut labels = vec![NOISE; n];
    let mut next_cluster = 0i64;
    for start in 0..n {
        if !core[start] || labels[start] != NOISE {
            continue;
        }
        let cluster = next_cluster;
        next_cluster += 1;
        let mut queue = std::collections::VecDeque::from([start]);
        labels[start] = cluster;
        while let Some(p) = queue.pop_front() {
            for q in 0..n {
                if core[q] && labels[q] == NOISE && points.distance(p, q) <= params.eps {
                    labels[q] = cluster;
                    queue.push_back(q);
                }
            }
        }
    }
    // Borders: nearest core within eps, ties toward the smaller index.
    for i in 0..n {
        if core[i] {
            continue;
        }
        let mut best: Option<(f64, usize)> = None;
        for (j, &j_core) in core.iter().enumerate() {
            if j_core {
                let d = points.distance(i, j);
                if d <= params.eps && best.is_none_or(|(bd, bj)| (d, j) < (bd, bj)) {
                    best = Some((d, j));
                }
            }
        }
        if let Some((_, j)) = best {
            labels[i] = labels[j];
        }
    }
    canonical(&labels)
}

/// The neighbor-graph reformulation executed literally: classify from
/// the graph, then union core pairs that appear in each other's first
/// `min_pts` entries (either direction suffices), then assign borders to
/// their nearest core neighbor in the list.
pub fn knn_dbscan_reference(graph: &NeighborGraph, params: &Params) -> Result<Vec<i64>> {
    let workers = Workers::new(1);
    let classes = classify_points(graph, params, &workers)?;
    let n = graph.n_points();
    let core: Vec<bool> = classes.iter().map(|&c| c == PointClass::Core).collect();

    let mut uf = UnionFind::new(n);
    for i in 0..n {
        if !core[i] {
            continue;
        }
        for e in graph.neighbors(i).iter().take(params.min_pts) {
            if e.target != i && core[e.target] && e.weight <= params.eps {
                uf.union(i, e.target);
            }
        }
    }

    let mut labels = vec![NOISE; n];
    for i in 0..n {
        if core[i] {
            labels[i] = uf.find(i) as i64;
        }
    }
    for i in 0..n {
        if classes[i] != PointClass::Border {
            continue;
        }
        for e in graph.neighbors(i) {
            if e.weight > params.eps {
                break;
            }
            if core[e.target] {
                labels[i] = labels[e.target];
                break;
            }
        }
    }
    Ok(canonical(&labels))
}

/// Kruskal's algorithm over a symmetrized weighted edge list; returns
/// the vertex partition induced by the forest's trees. Vertices absent
/// from `vertices` stay NOISE.
pub fn mst_components_reference(
    n_points: usize,
    vertices: &[usize],
    edges: &[EdgeRecord],
) -> Vec<i64> {
    let mut sorted: Vec<&EdgeRecord> = edges.iter().collect();
    sorted.sort_by_key(|a| a.min_key());
    let mut uf = UnionFind::new(n_points);
    let mut forest: Vec<(usize, usize)> = Vec::new();
    for e in sorted {
        if uf.find(e.source) != uf.find(e.target) {
            uf.union(e.source, e.target);
            forest.push((e.source, e.target));
        }
    }
    let mut labels = vec![NOISE; n_points];
    for &v in vertices {
        labels[v] = uf.find(v) as i64;
    }
    canonical(&labels)
}

/// The undirected core-core edge set where one endpoint lies in the
/// other's first `min_pts` entries within eps: the object whose
/// connected components define the graph-based clusters.
pub fn symmetrized_core_edges(
    graph: &NeighborGraph,
    core: &[bool],
    params: &Params,
) -> Vec<EdgeRecord> {
    let n = graph.n_points();
    let mut edges = Vec::new();
    for i in 0..n {
        if !core[i] {
            continue;
        }
        for e in graph.neighbors(i).iter().take(params.min_pts) {
            if e.target != i && core[e.target] && e.weight <= params.eps {
                edges.push(EdgeRecord {
                    source: i.min(e.target),
                    target: i.max(e.target),
                    weight: e.weight,
                });
            }
        }
    }
    // One undirected representative per pair, lightest weight first.
    edges.sort_by(|a, b| {
        (a.source, a.target)
            .cmp(&(b.source, b.target))
            .then(a.weight.total_cmp(&b.weight))
    });
    edges.dedup_by(|a, b| a.source == b.source && a.target == b.target);
    edges
}

/// Renumbers labels to 0..C-1 by order of first appearance; NOISE stays.
pub fn canonical(labels: &[i64]) -> Vec<i64> {
    let mut map = std::collections::HashMap::new();
    let mut next = 0i64;
    labels
        .iter()
        .map(|&l| {
            if l == NOISE {
                NOISE
            } else {
                *map.entry(l).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            }
        })
        .collect()
}

#[derive(Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}
