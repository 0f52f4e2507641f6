//! Exponent sets: explicit lists, lattices, column-offset cube-tiling spectra and the
//! sphere-pinned Example-1 construction, with window enumeration, separation and sampled
//! Landau densities.

pub mod density;
pub mod io;
pub mod separation;
pub mod set;

pub use density::{landau_density, CenterSpec, LandauDensity};
pub use io::{format_point_list, parse_generator, parse_point_list, GeneratorSpec};
pub use separation::{min_distance, separation};
pub use set::{
    column_tiling_spectrum, construct_example1, example1_sphere_points, ColumnOffsets, Lattice, PointSet,
    PointSetKind, Points, Window,
};
