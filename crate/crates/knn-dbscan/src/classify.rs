//! Core / border / noise classification straight from the kNN graph.

use crate::error::{Error, Result};
use crate::knng::NeighborGraph;
use crate::parallel::Workers;

/// Clustering hyperparameters. `min_pts` counts the point itself, so a
/// core point is one whose `min_pts`-th self-inclusive neighbor lies
/// within `eps`.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub eps: f64,
    pub min_pts: usize,
}

impl Params {
    pub fn new(eps: f64, min_pts: usize) -> Result<Params> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::invalid_argument(format!(
                "eps must be positive and finite, got {eps}"
            )));
        }
        if min_pts < 2 {
            return Err(Error::invalid_argument(
                "min_pts must be at least 2 (the count includes the point itself)",
            ));
        }
        Ok(Params { eps, min_pts })
    }

    pub fn validate_against(&self, graph: &NeighborGraph) -> Result<()> {
        if self.min_pts > graph.k_max() {
            return Err(Error::invalid_argument(format!(
                "min_pts {} exceeds graph k_max {}",
                self.min_pts,
                graph.k_max()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Core,
    Border,
    Noise,
}

/// Two data-parallel passes: the core pass tests the `min_pts`-th entry
/// against `eps` (boundary equality counts as inside); the border pass
/// scans the full (sorted) list for a core target within `eps`. A core
/// witness, when one exists, is already among the first `min_pts`
/// entries, so the longer scan can only confirm, never misclassify.
pub fn classify_points(
    graph: &NeighborGraph,
    params: &Params,
    workers: &Workers,
) -> Result<Vec<PointClass>> {
    params.validate_against(graph)?;
    let n = graph.n_points();
    let m = params.min_pts;
    let eps = params.eps;

    let mut core = vec![false; n];
    workers.fill(&mut core, |i| graph.entry(i, m - 1).weight <= eps);

    let mut classes = vec![PointClass::Noise; n];
    workers.fill(&mut classes, |i| {
        if core[i] {
            return PointClass::Core;
        }
        for e in graph.neighbors(i) {
            if e.weight > eps {
                break;
            }
            if core[e.target] {
                return PointClass::Border;
            }
        }
        PointClass::Noise
    });
    Ok(classes)
}
