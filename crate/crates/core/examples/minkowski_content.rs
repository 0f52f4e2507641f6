//! Boundary-neighborhood ratios at several scales, at the right and a wrong dimension.

use spectral_weyl::geometry::{default_scales, minkowski_content_estimate, Domain};

fn main() -> spectral_weyl::Result<()> {
    let square = Domain::unit_cube(2);
    let cube = Domain::unit_cube(3);
    let l = Domain::polygon(vec![[0., 0.], [2., 0.], [2., 1.], [1., 1.], [1., 2.], [0., 2.]])?;
    for (name, dom, alpha) in [("square", &square, 1.0), ("square", &square, 1.5), ("cube", &cube, 2.0), ("L", &l, 1.0)] {
        let est = minkowski_content_estimate(dom, alpha, &default_scales(dom, 4))?;
        println!(
            "{name:<6} alpha={alpha}: content={:.4} spread={:.3} trend={:?} wrong_alpha={}",
            est.content, est.spread, est.trend, est.wrong_alpha
        );
    }
    Ok(())
}
