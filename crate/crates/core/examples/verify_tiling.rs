//! Checks Z^d against the unit cube, a scaled lattice that is not a basis, and a tight frame.

use spectral_weyl::analysis::{verify, Claim, VerifyOptions};
use spectral_weyl::geometry::Domain;
use spectral_weyl::pointsets::PointSet;

fn main() -> spectral_weyl::Result<()> {
    let cases = [
        ("Z^2 on [0,1]^2", PointSet::integer_lattice(2), Domain::unit_cube(2), Claim::Basis),
        ("0.9 Z^2 on [0,1]^2", PointSet::scaled_lattice(2, 0.9)?, Domain::unit_cube(2), Claim::Basis),
        ("1/2 Z on [0,1]", PointSet::scaled_lattice(1, 0.5)?, Domain::unit_cube(1), Claim::Frame),
    ];
    for (name, ps, dom, claim) in cases {
        let mut opts = VerifyOptions::defaults_for(&ps, 7);
        opts.claim = claim;
        let r = verify(&ps, &dom, &opts)?;
        println!(
            "{name:<20} verdict={:?} max|<e_a,e_b>|={:.3e} A={:.4} B={:.4} tail={:.2e}",
            r.verdict, r.orthogonality.max_residual, r.a_hat, r.b_hat, r.tail.tail_bound
        );
    }
    Ok(())
}
