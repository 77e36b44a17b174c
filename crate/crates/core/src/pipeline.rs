//! The full chain from a triangulation to a drawing.

use thiserror::Error;

use crate::construct::{five_c_structures, ConstructError, FiveCStructures};
use crate::drawing::{place, Drawing, PentagonFrame};
use crate::regions::{region_sizes_linear, weights, RegionError, RegionTable, WeightMode, Weights, WoodTrees};
use crate::triangulation::FiveTriangulation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Region(#[from] RegionError),
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    pub structures: FiveCStructures,
    pub trees: WoodTrees,
    pub regions: RegionTable,
    pub weights: Weights,
    pub drawing: Drawing,
}

/// Wood (optionally from the minimal orientation), regions, weights and placement.
pub fn run(t: &FiveTriangulation, mode: &WeightMode, minimal: bool) -> Result<Pipeline, PipelineError> {
    let structures = five_c_structures(t, minimal)?;
    let trees = WoodTrees::new(t, &structures.wood)?;
    let regions = region_sizes_linear(t, &trees);
    let weights = weights(t, &trees, &regions, mode)?;
    let drawing = place(&weights, &PentagonFrame::standard(), mode.name());
    Ok(Pipeline { structures, trees, regions, weights, drawing })
}
