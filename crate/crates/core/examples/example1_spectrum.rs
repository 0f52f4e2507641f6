//! Builds the sphere-pinned cube spectrum and shows the counting jumps it forces.

use spectral_weyl::analysis::{check_orthogonality, counting_curve};
use spectral_weyl::geometry::{ConvexBody, Domain};
use spectral_weyl::pointsets::{construct_example1, example1_sphere_points, Window};

fn main() -> spectral_weyl::Result<()> {
    let radii = vec![10.0, 40.0, 160.0];
    let ps = construct_example1(2, radii.clone())?;
    for (i, r) in radii.iter().enumerate() {
        let on = example1_sphere_points(&ps, i).unwrap();
        let curve = counting_curve(&ps, &Domain::unit_cube(2), &ConvexBody::unit_ball(2), &[r - 1e-9, *r], &[0.0, 0.0])?;
        let jump = curve.samples[1].n - curve.samples[0].n;
        println!("R={r:<5} points on the circle: {:>3}  N jumps by {jump}", on.len());
    }
    let check = check_orthogonality(&ps, &Domain::unit_cube(2), &Window::cube(15.0, vec![0.0, 0.0])?, 1e-12)?;
    println!("orthogonality on {} points: max residual {:.1e}", check.points, check.max_residual);
    Ok(())
}
