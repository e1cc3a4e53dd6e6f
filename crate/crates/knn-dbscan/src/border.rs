//! Border-point assignment after core clustering completes.

use crate::classify::{Params, PointClass};
use crate::error::{Error, Result};
use crate::knng::NeighborGraph;
use crate::local_mst::UNLABELED;
use crate::parallel::Workers;

/// Gives every border point the label of its nearest core neighbor
/// within `eps` (the first qualifying entry of its sorted list; ties are
/// already resolved by the graph's ordering). Core labels never change;
/// noise keeps no label. Classification guarantees a witness exists, so
/// a border point without one is an internal error.
pub fn cluster_border(
    labels: &mut [usize],
    classes: &[PointClass],
    graph: &NeighborGraph,
    params: &Params,
    workers: &Workers,
) -> Result<()> {
    let n = graph.n_points();
    let mut assigned: Vec<std::result::Result<usize, usize>> = vec![Ok(UNLABELED); n];
    let labels_ro: &[usize] = labels;
    workers.fill(&mut assigned, |i| {
        if classes[i] != PointClass::Border {
            return Ok(labels_ro[i]);
        }
        for e in graph.neighbors(i) {
            if e.weight > params.eps {
                break;
            }
            if classes[e.target] == PointClass::Core {
                return Ok(labels_ro[e.target]);
            }
        }
        Err(i)
    });
    for (i, a) in assigned.into_iter().enumerate() {
        match a {
            Ok(label) => labels[i] = label,
            Err(point) => {
                return Err(Error::Internal(format!(
                    "border point {point} has no core neighbor within eps"
                )))
            }
        }
    }
    Ok(())
}
