//! End-to-end clustering runs: classify, partition, per-group forests,
//! the distributed cut phase, then border assignment.

use std::time::Instant;

use crate::border::cluster_border;
use crate::bsp::RankExecution;
use crate::classify::{classify_points, Params, PointClass};
use crate::cut_mst::{distributed_cut_mst, relabel_cut_edges, RankState};
use crate::error::Result;
use crate::io::{MetricsRecord, TraceRecord};
use crate::knng::{build_exact_knng, NeighborGraph};
use crate::local_mst::{parallel_local_mst, GroupContext, UNLABELED};
use crate::parallel::Workers;
use crate::partition::{make_partition, PartitionStrategy};
use crate::points::PointSet;

pub const NOISE: i64 = -1;

#[derive(Debug, Clone, Copy)]
pub struct ClusterConfig {
    pub eps: f64,
    pub min_pts: usize,
    pub parts: usize,
    pub strategy: PartitionStrategy,
    pub workers: usize,
    pub rank_execution: RankExecution,
}

impl ClusterConfig {
    pub fn single_threaded(eps: f64, min_pts: usize) -> ClusterConfig {
        ClusterConfig {
            eps,
            min_pts,
            parts: 1,
            strategy: PartitionStrategy::Block,
            workers: 1,
            rank_execution: RankExecution::Sequential,
        }
    }
}

#[derive(Debug)]
pub struct RunOutput {
    /// Cluster ids renumbered 0..C-1 by first appearance; -1 is noise.
    pub labels: Vec<i64>,
    pub metrics: MetricsRecord,
    pub traces: Vec<TraceRecord>,
}

/// Clusters against a prebuilt neighbor graph. `points` supplies the
/// coordinates the partitioner needs; the graph must describe the same
/// points.
pub fn cluster_graph(
    points: &PointSet,
    graph: &NeighborGraph,
    cfg: &ClusterConfig,
) -> Result<RunOutput> {
    let params = Params::new(cfg.eps, cfg.min_pts)?;
    params.validate_against(graph)?;
    let workers = Workers::new(cfg.workers);
    let n = graph.n_points();

    let classes = classify_points(graph, &params, &workers)?;
    let owner = make_partition(points, cfg.parts, cfg.strategy)?;

    let mut labels = vec![UNLABELED; n];
    let mut group_cores: Vec<Vec<usize>> = vec![Vec::new(); cfg.parts];
    for i in 0..n {
        if classes[i] == PointClass::Core {
            labels[i] = i;
            group_cores[owner[i] as usize].push(i);
        }
    }

    // Per-group forests; groups share no state and run back to back,
    // each with the full worker pool.
    let local_started = Instant::now();
    let mut raw_cut_edges = Vec::with_capacity(cfg.parts);
    let mut rosters = Vec::with_capacity(cfg.parts);
    for (g, cores) in group_cores.iter().enumerate() {
        let ctx = GroupContext {
            graph,
            owner: &owner,
            group: g as u32,
            core_members: cores,
            min_pts: params.min_pts,
        };
        let out = parallel_local_mst(&ctx, &mut labels, &workers)?;
        raw_cut_edges.push(out.cut_edges);
        rosters.push(out.subtree_roots);
    }
    let local_seconds = local_started.elapsed().as_secs_f64();
    let cut_edge_total: usize = raw_cut_edges.iter().map(Vec::len).sum();

    // Cut phase across groups.
    let relabel_started = Instant::now();
    let (relabeled, relabel_messages) =
        relabel_cut_edges(&raw_cut_edges, &labels, &owner, cfg.rank_execution)?;
    let relabel_seconds = relabel_started.elapsed().as_secs_f64();
    let mut states: Vec<RankState> = rosters
        .into_iter()
        .zip(relabeled)
        .enumerate()
        .map(|(g, (roster, edges))| RankState::new(g as u32, roster, edges, &owner))
        .collect();
    let outcome =
        distributed_cut_mst(&mut states, &owner, cfg.rank_execution, relabel_messages)?;

    let mut final_labels = vec![UNLABELED; n];
    let labels_ro: &[usize] = &labels;
    workers.fill(&mut final_labels, |i| {
        if classes[i] == PointClass::Core {
            states[owner[i] as usize].root_of(labels_ro[i])
        } else {
            UNLABELED
        }
    });
    let mut labels = final_labels;

    cluster_border(&mut labels, &classes, graph, &params, &workers)?;

    let (canonical, clusters) = canonical_labels(&labels);
    let mut core = 0;
    let mut border = 0;
    let mut noise = 0;
    for c in &classes {
        match c {
            PointClass::Core => core += 1,
            PointClass::Border => border += 1,
            PointClass::Noise => noise += 1,
        }
    }

    Ok(RunOutput {
        labels: canonical,
        metrics: MetricsRecord {
            knng_seconds: None,
            local_seconds,
            min_edges_seconds: outcome.timings.min_edges_seconds,
            pointer_jumping_seconds: outcome.timings.pointer_jumping_seconds,
            update_cut_seconds: outcome.timings.update_cut_seconds + relabel_seconds,
            clusters,
            core,
            border,
            noise,
            cut_edges: cut_edge_total,
        },
        traces: outcome
            .traces
            .iter()
            .map(|t| TraceRecord {
                round: t.round,
                active_cut_edges: t.active_cut_edges,
                messages: t.messages,
                n_root: t.n_root,
            })
            .collect(),
    })
}

/// Clusters against a graph that covers the whole universe (k capped at
/// the point count upstream). A `min_pts` larger than such a graph's
/// `k_max` means the universe itself is smaller than `min_pts`, so no
/// point can be core and every label is noise; a shallower graph with
/// `min_pts > k_max` is still an argument error.
pub fn cluster_auto(
    points: &PointSet,
    graph: &NeighborGraph,
    knng_seconds: Option<f64>,
    cfg: &ClusterConfig,
) -> Result<RunOutput> {
    let n = graph.n_points();
    if cfg.min_pts > graph.k_max() && graph.k_max() == n {
        Params::new(cfg.eps, cfg.min_pts)?;
        return Ok(RunOutput {
            labels: vec![NOISE; n],
            metrics: MetricsRecord {
                knng_seconds,
                local_seconds: 0.0,
                min_edges_seconds: 0.0,
                pointer_jumping_seconds: 0.0,
                update_cut_seconds: 0.0,
                clusters: 0,
                core: 0,
                border: 0,
                noise: n,
                cut_edges: 0,
            },
            traces: Vec::new(),
        });
    }
    let mut out = cluster_graph(points, graph, cfg)?;
    out.metrics.knng_seconds = knng_seconds;
    Ok(out)
}

/// Builds the exact graph (k capped at the point count), then clusters.
pub fn cluster_points(points: &PointSet, k_max: usize, cfg: &ClusterConfig) -> Result<RunOutput> {
    let workers = Workers::new(cfg.workers);
    let k_eff = k_max.min(points.n_points()).max(1);
    let build_started = Instant::now();
    let graph = build_exact_knng(points, k_eff, &workers)?;
    let knng_seconds = build_started.elapsed().as_secs_f64();
    cluster_auto(points, &graph, Some(knng_seconds), cfg)
}

fn canonical_labels(labels: &[usize]) -> (Vec<i64>, usize) {
    let mut map = std::collections::HashMap::new();
    let mut next = 0i64;
    let out = labels
        .iter()
        .map(|&l| {
            if l == UNLABELED {
                NOISE
            } else {
                *map.entry(l).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            }
        })
        .collect();
    (out, next as usize)
}
