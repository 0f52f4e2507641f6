//! Domains, convex bodies, boundary neighbourhoods and inscribed cubes.

pub mod body;
pub mod domain;
pub mod inscribed;
pub mod neighborhood;

pub use body::{unit_ball_volume, BodyKind, BodySpec, ConvexBody, HalfspacePolytope};
pub use domain::{AxisBox, Domain, DomainKind, DomainSpec, Polygon};
pub use inscribed::{inscribed_cube_side, largest_inscribed_square, polygon_isoperimetric_check, IsoperimetricRecord};
pub use neighborhood::{
    boundary_neighborhood_measure, boundary_neighborhood_measure_grid, default_scales, minkowski_content_estimate,
    MinkowskiEstimate, NeighborhoodMeasure, NeighborhoodMethod, RatioTrend,
};
