//! Largest empty squares and the two size bounds across a small polygon corpus.

use spectral_weyl::analysis::{corpus_table, default_corpus, largest_empty_cube};
use spectral_weyl::geometry::AxisBox;
use spectral_weyl::pointsets::{PointSet, Points};

fn main() -> spectral_weyl::Result<()> {
    let search = AxisBox::cube(2, 0.0, 10.0)?;
    let z2 = largest_empty_cube(&PointSet::integer_lattice(2), &search, 1e-3)?;
    println!("Z^2: empty side {} at {:?}", z2.side, z2.lower_corner);

    let rows: Vec<Vec<f64>> = (-1..=11)
        .flat_map(|i| (-1..=11).map(move |j| vec![i as f64, j as f64]))
        .filter(|p| !(p[0] >= 4.0 && p[0] <= 5.0 && p[1] >= 4.0 && p[1] <= 5.0))
        .collect();
    let gap = largest_empty_cube(&PointSet::explicit(Points::from_rows(2, &rows)?), &search, 1e-3)?;
    println!("Z^2 minus a 2x2 block: empty side {}", gap.side);

    let table = corpus_table(&default_corpus()?, 1e-3)?;
    println!("{:<15} {:>6} {:>10} {:>10} {:>8}", "domain", "R*", "radicand", "B/(A eps)", "c");
    for row in &table.rows {
        let r = &row.report;
        let c = r.comparison_ratio.map_or("-".to_string(), |c| format!("{c:.3}"));
        println!("{:<15} {:>6.3} {:>10.3} {:>10.3} {:>8}", row.name, r.r_star, r.minkowski_radicand, r.bound_inscribed, c);
    }
    println!("c1 <= {:.3}, c2 <= {:.3}", table.c1_max, table.c2_max);
    Ok(())
}
