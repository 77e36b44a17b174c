//! Five-connected triangulations of the pentagon, their orientations,
//! labelings and woods, and straight-line drawings in the pentagon.

pub mod construct;
pub mod drawing;
pub mod fixtures;
pub mod generate;
pub mod io;
pub mod pipeline;
pub mod planar_map;
pub mod regions;
pub mod structures;
pub mod triangulation;
