//! Lattice points of Z^2 in dilated disks and squares, with the fitted error exponent.

use spectral_weyl::analysis::{counting_curve, fit_error_exponent, DEFAULT_ETA};
use spectral_weyl::geometry::{ConvexBody, Domain};
use spectral_weyl::pointsets::PointSet;

fn main() -> spectral_weyl::Result<()> {
    let z2 = PointSet::integer_lattice(2);
    let dom = Domain::unit_cube(2);
    let radii: Vec<f64> = (0..96).map(|k| 10.3 + 2.0 * k as f64).collect();
    for (name, body) in [("disk", ConvexBody::unit_ball(2)), ("square", ConvexBody::unit_cube(2))] {
        let curve = counting_curve(&z2, &dom, &body, &radii, &[0.0, 0.0])?;
        let fit = fit_error_exponent(&curve, DEFAULT_ETA)?;
        let last = curve.samples.last().unwrap();
        println!(
            "{name:<6} N({})={} E={:+.2} alpha_hat={:.3} C_hat={:.3}",
            last.r, last.n, last.e, fit.alpha_hat, fit.c_hat
        );
    }
    // Half-integer radii make the square count exact.
    let half: Vec<f64> = (1..=20).map(|k| k as f64 + 0.5).collect();
    let curve = counting_curve(&z2, &dom, &ConvexBody::unit_cube(2), &half, &[0.0, 0.0])?;
    println!("square, half-integer radii: max|E| = {}", curve.samples.iter().map(|s| s.e.abs()).fold(0.0, f64::max));
    Ok(())
}
