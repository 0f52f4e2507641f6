//! Low-discrepancy sampling.
//!
//! Randomised quasi-Monte Carlo: a Halton sequence with a Cranley-Patterson rotation drawn
//! from a seeded ChaCha stream. Independent rotations give independent replicates, whose
//! spread is the reported standard error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u32; 32] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131,
];

/// Radical inverse of `index` in the given base.
pub fn radical_inverse(mut index: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut value = 0.0;
    while index > 0 {
        value += (index % b) as f64 * scale;
        index /= b;
        scale *= inv;
    }
    value
}

/// Halton sequence in `[0,1)^d`, optionally rotated modulo one.
#[derive(Debug, Clone)]
pub struct Halton {
    shift: Vec<f64>,
}

impl Halton {
    pub fn new(dim: usize) -> Self {
        assert!(dim <= PRIMES.len(), "Halton sequence supports up to {} dimensions", PRIMES.len());
        Self { shift: vec![0.0; dim] }
    }

    /// Halton sequence with a Cranley-Patterson rotation drawn from `seed`.
    pub fn shifted(dim: usize, seed: u64) -> Self {
        assert!(dim <= PRIMES.len(), "Halton sequence supports up to {} dimensions", PRIMES.len());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self { shift: (0..dim).map(|_| rng.gen::<f64>()).collect() }
    }

    pub fn dimension(&self) -> usize {
        self.shift.len()
    }

    /// The `index`-th point. Index 0 is skipped so that the unshifted sequence avoids the origin.
    pub fn point(&self, index: u64) -> Vec<f64> {
        let mut out = vec![0.0; self.shift.len()];
        self.fill(index, &mut out);
        out
    }

    pub fn fill(&self, index: u64, out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            let u = radical_inverse(index + 1, PRIMES[j]) + self.shift[j];
            *o = if u >= 1.0 { u - 1.0 } else { u };
        }
    }
}

/// Pairwise (cascade) summation; deterministic for a fixed input order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Mean and standard error of independent replicate estimates.
pub fn mean_and_standard_error(estimates: &[f64]) -> (f64, f64) {
    let m = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / m;
    if estimates.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, (var / m).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn van_der_corput_prefix() {
        let got: Vec<f64> = (1..=4).map(|i| radical_inverse(i, 2)).collect();
        assert_eq!(got, vec![0.5, 0.25, 0.75, 0.125]);
        assert!((radical_inverse(1, 3) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn shifted_points_stay_in_unit_cube_and_are_seeded() {
        let a = Halton::shifted(3, 7);
        let b = Halton::shifted(3, 7);
        for i in 0..1000 {
            let p = a.point(i);
            assert!(p.iter().all(|&u| (0.0..1.0).contains(&u)));
            assert_eq!(p, b.point(i));
        }
        assert_ne!(Halton::shifted(3, 8).point(0), a.point(0));
    }

    #[test]
    fn halton_integrates_smooth_function() {
        let h = Halton::new(2);
        let n = 1 << 14;
        let s: f64 = (0..n).map(|i| {
            let p = h.point(i);
            p[0] * p[1]
        }).sum::<f64>() / n as f64;
        assert!((s - 0.25).abs() < 1e-3);
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499500.0);
    }
}
