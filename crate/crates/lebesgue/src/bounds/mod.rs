//! Upper bounds: the regular hexagon with two slanted corner cuts, minus
//! regions that some placement of every shape avoids.

pub mod audit;
pub mod frame;
pub mod hansen;
pub mod heptagon;
pub mod regions;

pub use audit::{inflate_regions, monte_carlo_area, monte_carlo_region_audit, AuditReport, AuditViolation};
pub use frame::{Corner, Frame, FrameT};
pub use hansen::{hansen_area, hansen_x, hansen_xs};
pub use heptagon::{critical_heptagon, find_crossover, heptagon_regions, Crossover, CrossoverRow};
pub use regions::{
    basic_construction, cover_area_basic, cover_area_reflected, minimize_reflected, pal_cut_area, reflected_construction, region_near_a1, region_near_c2,
    region_near_e2, region_xyzw, scan_bounds, sigma_grid, BoundRow, CoverConstruction, RegionName, RemovableRegion, HEXAGON_AREA,
};

use crate::geom::Point2;
use crate::widthcurves::ConstantWidthShape;
use thiserror::Error;

/// Sprague's cover area.
pub const SPRAGUE_AREA: f64 = 0.844_137_708_435_197_6;
/// Hansen's improvement of it.
pub const HANSEN_AREA: f64 = 0.844_137_708_416_458_8;
/// Best known lower bound, used only as a sanity floor.
pub const LOWER_FLOOR: f64 = 0.832;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("slant {0}° is outside the supported range")]
    SlantOutOfRange(f64),
    #[error("construction failed: {0}")]
    Construction(&'static str),
    #[error("regions {a} and {b} overlap near ({}, {})", at.x, at.y)]
    Overlap { a: RegionName, b: RegionName, at: Point2 },
    #[error("Hansen recurrence left its domain at step {0}")]
    Domain(usize),
}

/// Reuleaux pentagon on F3, G, J, E3, H that fixes the basic construction.
pub fn critical_pentagon(sigma: f64) -> Result<ConstantWidthShape, BoundError> {
    let f = Frame::new(sigma);
    let h = f.h().ok_or(BoundError::Construction("H does not exist"))?;
    let j = f.j().ok_or(BoundError::Construction("J does not exist"))?;
    let v = vec![f.p3(Corner::F), f.g(), j, f.p3(Corner::E), h];
    ConstantWidthShape::from_star_vertices(v, None, "critical pentagon").map_err(|_| BoundError::Construction("pentagon is not of unit width"))
}
