//! Mass of |chi_hat|^2 in dyadic shells, and its decay rate.

use spectral_weyl::fourier::{least_squares, shell_integral, PowerSpectrum, QmcOptions};
use spectral_weyl::geometry::{ConvexBody, Domain};

fn main() -> spectral_weyl::Result<()> {
    let ps = PowerSpectrum::new(Domain::unit_cube(2));
    let body = ConvexBody::unit_ball(2);
    let opts = QmcOptions::with_seed(1);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for k in 2..=7 {
        let r = 2f64.powi(k);
        let s = shell_integral(&ps, &body, r, &opts)?;
        println!("R={r:<4} shell mass {:.5e} +- {:.1e}", s.estimate, s.standard_error);
        xs.push(r.ln());
        ys.push(s.estimate.ln());
    }
    let fit = least_squares(&xs, &ys);
    println!("log-log slope {:.3} +- {:.3}", fit.slope, fit.slope_se);
    Ok(())
}
