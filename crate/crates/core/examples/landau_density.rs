//! Upper and lower densities of Z^2 and of a sparse perturbation, sampled on a center grid.

use spectral_weyl::geometry::AxisBox;
use spectral_weyl::pointsets::{construct_example1, landau_density, CenterSpec, PointSet};

fn main() -> spectral_weyl::Result<()> {
    let grid = CenterSpec::Grid { spacing: 0.1 };
    let search = AxisBox::cube(2, 0.0, 3.0)?;
    for (name, ps) in [("Z^2", PointSet::integer_lattice(2)), ("example-1", construct_example1(2, vec![10.0, 40.0])?)] {
        for r in [5.0, 50.0] {
            let d = landau_density(&ps, r, &search, &grid)?;
            println!(
                "{name:<9} R={r:<4} D+/(2R)^2={:.4} D-/(2R)^2={:.4} over {} centers",
                d.normalized_plus, d.normalized_minus, d.center_count
            );
        }
    }
    Ok(())
}
