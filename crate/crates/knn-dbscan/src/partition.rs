//! Vertex partitioning and the local/cut edge split.

use crate::datasets::SplitMix64;
use crate::edge::EdgeRecord;
use crate::error::{Error, Result};
use crate::knng::NeighborGraph;
use crate::points::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionStrategy {
    /// Contiguous index blocks of size within one of `n / p`.
    Block,
    /// A seeded shuffle dealt into balanced blocks.
    Random { seed: u64 },
    /// Recursive median bisection along the axis of largest variance;
    /// group count restricted to powers of two.
    Geometric,
}

/// Owner group per point, in `[0, p)`.
pub fn make_partition(
    points: &PointSet,
    p: usize,
    strategy: PartitionStrategy,
) -> Result<Vec<u32>> {
    let n = points.n_points();
    if p < 1 || p > n {
        return Err(Error::invalid_argument(format!(
            "group count {p} out of range 1..={n}"
        )));
    }
    match strategy {
        PartitionStrategy::Block => Ok(block_owners(n, p)),
        PartitionStrategy::Random { seed } => {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut rng = SplitMix64::new(seed);
            for i in (1..n).rev() {
                perm.swap(i, rng.next_usize_below(i + 1));
            }
            let blocks = block_owners(n, p);
            let mut owner = vec![0u32; n];
            for (pos, &point) in perm.iter().enumerate() {
                owner[point] = blocks[pos];
            }
            Ok(owner)
        }
        PartitionStrategy::Geometric => {
            if !p.is_power_of_two() {
                return Err(Error::invalid_argument(format!(
                    "geometric partitioning needs a power-of-two group count, got {p}"
                )));
            }
            let mut owner = vec![0u32; n];
            let mut members: Vec<usize> = (0..n).collect();
            bisect(points, &mut members, 0, p, &mut owner);
            Ok(owner)
        }
    }
}

fn block_owners(n: usize, p: usize) -> Vec<u32> {
    // First n % p groups get one extra point.
    let base = n / p;
    let extra = n % p;
    let mut owner = Vec::with_capacity(n);
    for g in 0..p {
        let size = base + usize::from(g < extra);
        owner.extend(std::iter::repeat_n(g as u32, size));
    }
    owner
}

fn bisect(points: &PointSet, members: &mut [usize], first_group: usize, parts: usize, owner: &mut [u32]) {
    if parts == 1 {
        for &i in members.iter() {
            owner[i] = first_group as u32;
        }
        return;
    }
    let axis = widest_axis(points, members);
    // Stable by (coordinate, index) so duplicate coordinates split
    // deterministically.
    members.sort_unstable_by(|&a, &b| {
        points.point(a)[axis]
            .total_cmp(&points.point(b)[axis])
            .then(a.cmp(&b))
    });
    let mid = members.len().div_ceil(2);
    let (lo, hi) = members.split_at_mut(mid);
    bisect(points, lo, first_group, parts / 2, owner);
    bisect(points, hi, first_group + parts / 2, parts / 2, owner);
}

fn widest_axis(points: &PointSet, members: &[usize]) -> usize {
    let d = points.dim();
    let n = members.len() as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for axis in 0..d {
        let mean = members.iter().map(|&i| points.point(i)[axis]).sum::<f64>() / n;
        let var = members
            .iter()
            .map(|&i| {
                let x = points.point(i)[axis] - mean;
                x * x
            })
            .sum::<f64>();
        if var > best.1 {
            best = (axis, var);
        }
    }
    best.0
}

/// Every directed non-self edge of the graph, bucketed by the owner of
/// its source: same-owner targets are local, the rest are cut.
#[derive(Debug, Clone)]
pub struct PartitionedGraph {
    pub p: usize,
    pub local_edges: Vec<Vec<EdgeRecord>>,
    pub cut_edges: Vec<Vec<EdgeRecord>>,
}

pub fn split_edges(graph: &NeighborGraph, owner: &[u32]) -> Result<PartitionedGraph> {
    if owner.len() != graph.n_points() {
        return Err(Error::invalid_argument(
            "owner map does not cover all points",
        ));
    }
    let p = owner.iter().map(|&g| g as usize + 1).max().unwrap_or(1);
    let mut local_edges = vec![Vec::new(); p];
    let mut cut_edges = vec![Vec::new(); p];
    for i in 0..graph.n_points() {
        let g = owner[i] as usize;
        for e in graph.neighbors(i) {
            if e.target == i {
                continue;
            }
            let record = EdgeRecord {
                source: i,
                target: e.target,
                weight: e.weight,
            };
            if owner[e.target] as usize == g {
                local_edges[g].push(record);
            } else {
                cut_edges[g].push(record);
            }
        }
    }
    Ok(PartitionedGraph {
        p,
        local_edges,
        cut_edges,
    })
}
