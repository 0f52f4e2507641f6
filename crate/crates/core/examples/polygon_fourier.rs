//! Fourier transform of a polygon indicator, checked against the box formula and at the origin.

use spectral_weyl::fourier::ft_indicator;
use spectral_weyl::geometry::Domain;

fn main() -> spectral_weyl::Result<()> {
    let square = Domain::unit_cube(2);
    let as_polygon = Domain::polygon(vec![[0., 0.], [1., 0.], [1., 1.], [0., 1.]])?;
    let triangle = Domain::polygon(vec![[0., 0.], [1., 0.], [0., 1.]])?;
    for xi in [[0.0, 0.0], [0.01, 0.02], [0.3, -0.7], [2.5, 1.25], [40.0, 3.0]] {
        let b = ft_indicator(&square, &xi);
        let p = ft_indicator(&as_polygon, &xi);
        let t = ft_indicator(&triangle, &xi);
        println!("xi={xi:?}: box {b:.6}  polygon {p:.6}  |diff| {:.1e}  triangle {t:.6}", (b - p).norm());
    }
    Ok(())
}
