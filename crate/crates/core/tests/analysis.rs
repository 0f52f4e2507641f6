mod common;

use common::{gap_lattice, sinc2};
use spectral_weyl::analysis::{
    check_empty_cube_bounds, check_orthogonality, corpus_table, counting_curve, default_corpus,
    estimate_frame_bounds, fit_error_exponent, largest_empty_cube, tiling_residual, verify, Claim, CorpusEntry,
    SampleCenters, TilingSetup, Verdict, VerifyOptions,
};
use spectral_weyl::geometry::{AxisBox, ConvexBody, Domain};
use spectral_weyl::pointsets::{column_tiling_spectrum, construct_example1, ColumnOffsets, PointSet, Window};
use std::collections::BTreeMap;
use std::f64::consts::PI;

const ORIGIN: [f64; 2] = [0.0, 0.0];

fn radii(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| start + k as f64 * step).collect()
}

/// `Σ sinc²(x − λ)` over `λ ∈ step·Z` with `|x − λ| ≤ T`, summed directly.
fn sum_1d(x: f64, step: f64, t: f64) -> f64 {
    let lo = ((x - t) / step).ceil() as i64;
    let hi = ((x + t) / step).floor() as i64;
    (lo..=hi).map(|n| sinc2(x - n as f64 * step)).sum()
}

#[test]
fn orthogonality_cases() {
    let z2 = PointSet::integer_lattice(2);
    let w = Window::centered(ConvexBody::unit_cube(2), 15.5).unwrap();
    let c = check_orthogonality(&z2, &Domain::unit_cube(2), &w, 1e-9).unwrap();
    assert!(c.points >= 900 && c.max_residual <= 1e-18 && c.passed);

    let scaled = PointSet::scaled_lattice(1, 0.9).unwrap();
    let w = Window::centered(ConvexBody::unit_cube(1), 10.0).unwrap();
    let c = check_orthogonality(&scaled, &Domain::unit_cube(1), &w, 1e-9).unwrap();
    let closed_form = (0.9 * PI).sin().powi(2) / (0.9 * PI).powi(2);
    assert!((c.max_residual - closed_form).abs() < 1e-12, "{} vs {closed_form}", c.max_residual);
    assert!(!c.passed);
    let [a, b] = c.worst_pair.unwrap();
    assert!(((a[0] - b[0]).abs() - 0.9).abs() < 1e-12);
}

#[test]
fn tiling_residual_cases() {
    let r = tiling_residual(&PointSet::integer_lattice(1), &Domain::unit_cube(1), &[0.37], 100.0).unwrap();
    assert!(r.sample.sum >= 1.0 - 2.1e-3 && r.sample.sum <= 1.0, "{}", r.sample.sum);
    assert!((r.sample.sum - sum_1d(0.37, 1.0, 100.0)).abs() < 1e-12);
    assert!(r.sample.residual <= r.sample.certificate);

    let half = PointSet::scaled_lattice(1, 0.5).unwrap();
    for x in [0.1, 0.37, 0.81] {
        let r = tiling_residual(&half, &Domain::unit_cube(1), &[x], 100.0).unwrap();
        assert!((r.sample.sum - 2.0).abs() <= 3e-3);
        assert!((r.sample.sum - sum_1d(x, 0.5, 100.0)).abs() < 1e-12);
    }

    let r = tiling_residual(&PointSet::integer_lattice(2), &Domain::unit_cube(2), &[0.2, 0.7], 60.0).unwrap();
    assert!(r.sample.residual <= r.sample.certificate, "{:?}", r.sample);
}

#[test]
fn frame_bound_cases() {
    for d in [1, 2] {
        let dom = Domain::unit_cube(d);
        let ps = PointSet::integer_lattice(d);
        let setup = TilingSetup::cube(&dom, 100.0, 0).unwrap();
        let fb = estimate_frame_bounds(&setup, &ps, &SampleCenters::auto(&ps, 64, 1)).unwrap();
        assert!((0.99..=1.01).contains(&fb.a_hat) && (0.99..=1.01).contains(&fb.b_hat), "{fb:?}");
    }
    let dom = Domain::unit_cube(1);
    let setup = TilingSetup::cube(&dom, 100.0, 0).unwrap();
    let half = PointSet::scaled_lattice(1, 0.5).unwrap();
    let fb = estimate_frame_bounds(&setup, &half, &SampleCenters::auto(&half, 64, 1)).unwrap();
    assert!((1.98..=2.02).contains(&fb.a_hat) && (1.98..=2.02).contains(&fb.b_hat));

    // 2Z: scan x over one period directly; the sampled bounds must sit inside the scanned range.
    let two = PointSet::scaled_lattice(1, 2.0).unwrap();
    let fb = estimate_frame_bounds(&setup, &two, &SampleCenters::auto(&two, 64, 1)).unwrap();
    let scan: Vec<f64> = (0..2000).map(|i| sum_1d(2.0 * i as f64 / 2000.0, 2.0, 100.0)).collect();
    let (lo, hi) = scan.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &s| (a.min(s), b.max(s)));
    assert!(fb.a_hat < fb.b_hat && fb.a_hat <= 0.5);
    assert!(fb.a_hat >= lo - 2.0 * fb.certificate && fb.b_hat <= hi + 2.0 * fb.certificate);
}

#[test]
fn verify_verdicts() {
    let z2 = PointSet::integer_lattice(2);
    let r = verify(&z2, &Domain::unit_cube(2), &VerifyOptions::defaults_for(&z2, 0)).unwrap();
    assert_eq!(r.verdict, Verdict::OrthogonalBasisConsistent);

    let scaled = PointSet::scaled_lattice(2, 0.9).unwrap();
    let r = verify(&scaled, &Domain::unit_cube(2), &VerifyOptions::defaults_for(&scaled, 0)).unwrap();
    assert_eq!(r.verdict, Verdict::Inconsistent);
    assert!(r.orthogonality.worst_pair.is_some());
    assert!((r.orthogonality.max_residual - sinc2(0.9)).abs() < 1e-12);

    let half = PointSet::scaled_lattice(1, 0.5).unwrap();
    let mut opts = VerifyOptions::defaults_for(&half, 0);
    assert_eq!(verify(&half, &Domain::unit_cube(1), &opts).unwrap().verdict, Verdict::Inconsistent);
    opts.claim = Claim::Frame;
    let r = verify(&half, &Domain::unit_cube(1), &opts).unwrap();
    assert_eq!(r.verdict, Verdict::FrameConsistent);
    assert!((r.a_hat - 2.0).abs() < 0.02 && (r.b_hat - 2.0).abs() < 0.02);
}

#[test]
fn orthogonality_implies_tiling() {
    let offsets: BTreeMap<Vec<i64>, f64> = (-150..=150).map(|v| (vec![v], ((v * v) as f64 * 0.618).fract())).collect();
    let sets = vec![
        PointSet::integer_lattice(2),
        column_tiling_spectrum(2, ColumnOffsets::new(offsets).unwrap()).unwrap(),
        construct_example1(2, vec![10.0, 40.0]).unwrap(),
    ];
    let dom = Domain::unit_cube(2);
    let setup = TilingSetup::cube(&dom, 100.0, 3).unwrap();
    for ps in sets {
        let w = Window::centered(ConvexBody::unit_cube(2), 15.5).unwrap();
        assert!(check_orthogonality(&ps, &dom, &w, 1e-12).unwrap().passed);
        let centers = SampleCenters::UniformBox { count: 32, seed: 4, bounds: vec![[-5.0, 5.0]; 2] }.generate(&ps).unwrap();
        for x in centers {
            let s = setup.residual(&ps, &x).unwrap();
            assert!(s.residual <= s.certificate, "{s:?}");
        }
    }
}

#[test]
fn counting_examples() {
    let z2 = PointSet::integer_lattice(2);
    let sq = Domain::unit_cube(2);
    let c = counting_curve(&z2, &sq, &ConvexBody::unit_cube(2), &[10.5], &ORIGIN).unwrap();
    assert_eq!((c.samples[0].n, c.samples[0].e), (441, 0.0));
    let c = counting_curve(&z2, &sq, &ConvexBody::unit_ball(2), &[10.0], &ORIGIN).unwrap();
    let brute = (-10i64..=10).flat_map(|i| (-10i64..=10).map(move |j| i * i + j * j)).filter(|&n| n <= 100).count();
    assert_eq!(c.samples[0].n as usize, brute);
    assert!((c.samples[0].e - (317.0 - 100.0 * PI)).abs() < 1e-9);

    let ex = construct_example1(2, vec![10.0, 40.0]).unwrap();
    let c = counting_curve(&ex, &sq, &ConvexBody::unit_ball(2), &[40.0 - 1e-6, 40.0 + 1e-6], &ORIGIN).unwrap();
    assert!(c.samples[1].e - c.samples[0].e >= 59.0);
}

#[test]
fn error_exponents() {
    let z2 = PointSet::integer_lattice(2);
    let sq = Domain::unit_cube(2);
    let disk = counting_curve(&z2, &sq, &ConvexBody::unit_ball(2), &radii(10.0, 300.0, 5.0), &ORIGIN).unwrap();
    assert!(fit_error_exponent(&disk, 0.5).unwrap().alpha_hat <= 1.1);
    let cube = counting_curve(&z2, &sq, &ConvexBody::unit_cube(2), &radii(10.3, 200.3, 2.0), &ORIGIN).unwrap();
    assert!((fit_error_exponent(&cube, 0.5).unwrap().alpha_hat - 1.0).abs() <= 0.15);

    let ex = construct_example1(2, vec![10.0, 40.0, 160.0]).unwrap();
    let clustered: Vec<f64> = [10.0, 40.0, 160.0]
        .iter()
        .flat_map(|r| (0..=8).map(move |k| r - 0.5 + 0.125 * k as f64))
        .collect();
    let curve = counting_curve(&ex, &sq, &ConvexBody::unit_ball(2), &clustered, &ORIGIN).unwrap();
    let fit = fit_error_exponent(&curve, 0.5).unwrap();
    assert!((fit.alpha_hat - 1.0).abs() <= 0.25, "{fit:?}");
}

#[test]
fn weyl_error_envelope() {
    let sq = Domain::unit_cube(2);
    let rs = radii(10.25, 300.25, 2.0);
    for ps in [PointSet::integer_lattice(2), construct_example1(2, vec![10.0, 40.0, 160.0]).unwrap()] {
        let curve = counting_curve(&ps, &sq, &ConvexBody::unit_ball(2), &rs, &ORIGIN).unwrap();
        let c_hat = curve.samples.iter().map(|s| s.e.abs() / s.r).fold(0.0, f64::max);
        assert!(c_hat <= 8.0, "{c_hat}");
        if let Ok(fit) = fit_error_exponent(&curve, 0.5) {
            assert!(fit.alpha_hat <= 1.25, "{fit:?}");
        }
    }
    for body in [ConvexBody::unit_ball(2), ConvexBody::unit_cube(2)] {
        let c = counting_curve(&PointSet::integer_lattice(2), &sq, &body, &[200.0], &ORIGIN).unwrap();
        let ratio = c.samples[0].n as f64 / (body.volume() * 200.0 * 200.0);
        assert!((ratio - 1.0).abs() <= 0.02);
    }
}

#[test]
fn translated_counts_stay_in_envelope() {
    let sq = Domain::unit_cube(2);
    let rs = radii(10.25, 100.25, 3.0);
    let mut spread = Vec::new();
    for k in 0..8 {
        let center = [0.13 * k as f64, 0.71 * k as f64 % 1.0];
        let curve = counting_curve(&PointSet::integer_lattice(2), &sq, &ConvexBody::unit_ball(2), &rs, &center).unwrap();
        spread.push(curve.samples.iter().map(|s| s.e.abs() / s.r).fold(0.0, f64::max));
    }
    assert!(spread.iter().all(|&c| c <= 8.0), "{spread:?}");
}

#[test]
fn frame_sandwich() {
    let dom = Domain::unit_cube(1);
    let setup = TilingSetup::cube(&dom, 100.0, 0).unwrap();
    for step in [0.5, 1.0, 0.25] {
        let ps = PointSet::scaled_lattice(1, step).unwrap();
        let fb = estimate_frame_bounds(&setup, &ps, &SampleCenters::auto(&ps, 64, 1)).unwrap();
        for r in [20.0, 50.0, 100.0, 200.0] {
            let c = counting_curve(&ps, &dom, &ConvexBody::unit_cube(1), &[r - 1.0, r, r + 1.0], &[0.0]).unwrap();
            let slack = (c.samples[2].n - c.samples[0].n) as f64 / (2.0 * r) + fb.certificate;
            let density = c.samples[1].n as f64 / (2.0 * r);
            assert!(density >= fb.a_hat - slack && density <= fb.b_hat + slack, "step {step} R {r}: {density} {fb:?}");
        }
    }
}

#[test]
fn empty_cube_cases() {
    let search = AxisBox::cube(2, 0.0, 10.0).unwrap();
    let e = largest_empty_cube(&PointSet::integer_lattice(2), &search, 1e-3).unwrap();
    assert!((e.side - 1.0).abs() <= 1e-3 && (e.r_star - 0.5).abs() <= 1e-3);
    let e = largest_empty_cube(&gap_lattice(), &search, 1e-3).unwrap();
    assert!((e.side - 3.0).abs() <= 1e-3);
    let e = largest_empty_cube(&PointSet::scaled_lattice(2, 0.5).unwrap(), &search, 1e-3).unwrap();
    assert!((e.side - 0.5).abs() <= 1e-3);

    let r = check_empty_cube_bounds(&Domain::unit_cube(2), &PointSet::integer_lattice(2), 1.0, 1.0, 1.0, &search, 1e-3, None)
        .unwrap();
    assert!((r.minkowski_radicand - 4.0).abs() < 1e-9 && r.bound_inscribed == 1.0);
    assert!((r.c1 - 0.125).abs() < 1e-9 && (r.c2 - 0.5).abs() < 1e-9 && r.r_star == 0.5);
}

#[test]
fn corpus_and_scaling() {
    let table = corpus_table(&default_corpus().unwrap(), 1e-3).unwrap();
    let comb = table.rows.iter().find(|r| r.name == "comb").unwrap();
    let ba = comb.report.b / comb.report.a;
    assert!((comb.report.bound_inscribed - 2.0 * ba).abs() < 1e-2 * ba);
    assert!((comb.report.minkowski_radicand - 40.0 * ba).abs() < 0.05 * 40.0 * ba);
    assert!(comb.report.bound_inscribed < comb.report.minkowski_radicand);
    for row in &table.rows {
        let r = &row.report;
        assert!(r.r_star <= (table.c1_max * r.bound_minkowski).min(table.c2_max * r.bound_inscribed) + 1e-12);
        if let Some(c) = r.comparison_ratio {
            assert!(c >= 0.25);
        }
    }

    // Doubling Ω halves the dual frame and every length scale, leaving c1 and c2 fixed.
    let doubled: Vec<CorpusEntry> = default_corpus()
        .unwrap()
        .into_iter()
        .map(|e| CorpusEntry::boxed(e.name, e.domain.scaled(2.0)).unwrap())
        .collect();
    let scaled = corpus_table(&doubled, 1e-3).unwrap();
    for (a, b) in table.rows.iter().zip(&scaled.rows) {
        assert!((b.report.r_star - 0.5 * a.report.r_star).abs() < 1e-9, "{}", a.name);
        assert!((b.report.c1 / a.report.c1 - 1.0).abs() <= 0.05, "{}: c1 {} vs {}", a.name, a.report.c1, b.report.c1);
        assert!((b.report.c2 / a.report.c2 - 1.0).abs() <= 0.05, "{}", a.name);
    }
}
