//! Small numerical building blocks: trapezoid quadrature on uniform grids,
//! compensated summation, and seeded bootstrap resampling.
//!
//! Every Monte Carlo reduction in this crate sums per-sample values in
//! sample-index order with Neumaier compensation, so results are independent
//! of how the samples were produced (serially or on any number of threads).

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Composite trapezoid rule for samples of `f` on a uniform grid of spacing
/// `dt` covering `[0, dt·(n-1)]`.
pub fn trapezoid(values: &[f64], dt: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mut acc = NeumaierSum::new();
    acc.add(0.5 * (values[0] + values[n - 1]));
    for &v in &values[1..n - 1] {
        acc.add(v);
    }
    acc.total() * dt
}

/// Suffix trapezoid integrals on a uniform grid: `out[j] = ∫_{t_j}^{t_end} f`,
/// with `out.last() == 0`.
pub fn suffix_trapezoid(values: &[f64], dt: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    let mut acc = NeumaierSum::new();
    for j in (0..n - 1).rev() {
        acc.add(0.5 * dt * (values[j] + values[j + 1]));
        out[j] = acc.total();
    }
    out
}

/// Prefix trapezoid integrals on a uniform grid: `out[j] = ∫_0^{t_j} f`,
/// with `out[0] == 0`.
pub fn prefix_trapezoid(values: &[f64], dt: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    let mut acc = NeumaierSum::new();
    for j in 1..n {
        acc.add(0.5 * dt * (values[j - 1] + values[j]));
        out[j] = acc.total();
    }
    out
}

/// Neumaier's compensated summation: an order-insensitive accumulator whose
/// error stays at a few ulps regardless of the number of terms.
#[derive(Debug, Clone, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of a slice in its given order.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut acc = NeumaierSum::new();
    for &v in values {
        acc.add(v);
    }
    acc.total()
}

/// Compensated arithmetic mean.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    compensated_sum(values) / values.len() as f64
}

/// Plain (non-bootstrap) standard error of the mean.
pub fn standard_error(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return f64::NAN;
    }
    let m = mean(values);
    let mut acc = NeumaierSum::new();
    for &v in values {
        acc.add((v - m) * (v - m));
    }
    (acc.total() / ((n - 1) as f64 * n as f64)).sqrt()
}

/// Number of resamples used by the bootstrap helpers.
pub const BOOTSTRAP_RESAMPLES: usize = 200;

/// Bootstrap standard error of the sample mean, with resampling driven by a
/// dedicated ChaCha stream so repeated calls are reproducible.
pub fn bootstrap_stderr(values: &[f64], seed: u64) -> f64 {
    let means = bootstrap_means(values, seed, BOOTSTRAP_RESAMPLES);
    let m = mean(&means);
    let mut acc = NeumaierSum::new();
    for &v in &means {
        acc.add((v - m) * (v - m));
    }
    (acc.total() / (means.len() as f64 - 1.0)).sqrt()
}

/// 95% percentile bootstrap confidence interval for the sample mean.
pub fn bootstrap_ci95(values: &[f64], seed: u64) -> (f64, f64) {
    let mut means = bootstrap_means(values, seed, 2 * BOOTSTRAP_RESAMPLES);
    means.sort_by(|a, b| a.total_cmp(b));
    let n = means.len();
    let lo = means[((n as f64) * 0.025).floor() as usize];
    let hi = means[(((n as f64) * 0.975).ceil() as usize - 1).min(n - 1)];
    (lo, hi)
}

fn bootstrap_means(values: &[f64], seed: u64, resamples: usize) -> Vec<f64> {
    assert!(!values.is_empty(), "bootstrap over an empty sample");
    let n = values.len();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    // A distinct stream keeps bootstrap draws disjoint from path sampling.
    rng.set_stream(u64::MAX);
    (0..resamples)
        .map(|_| {
            let mut acc = NeumaierSum::new();
            for _ in 0..n {
                let idx = (rng.next_u64() % n as u64) as usize;
                acc.add(values[idx]);
            }
            acc.total() / n as f64
        })
        .collect()
}

/// Two-sample Kolmogorov–Smirnov statistic `sup_x |F_a(x) - F_b(x)|`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trapezoid_is_exact_on_linear_data() {
        let dt = 0.25;
        let values: Vec<f64> = (0..9).map(|j| 3.0 * (j as f64) * dt - 1.0).collect();
        // ∫_0^2 (3s - 1) ds = 6 - 2 = 4.
        assert_relative_eq!(trapezoid(&values, dt), 4.0, max_relative = 1e-15);
    }

    #[test]
    fn suffix_and_prefix_trapezoid_are_consistent() {
        let dt = 0.1;
        let values: Vec<f64> = (0..33).map(|j| ((j as f64) * dt).sin()).collect();
        let total = trapezoid(&values, dt);
        let suffix = suffix_trapezoid(&values, dt);
        let prefix = prefix_trapezoid(&values, dt);
        assert_relative_eq!(suffix[0], total, max_relative = 1e-14);
        assert_relative_eq!(prefix[32], total, max_relative = 1e-14);
        for j in 0..33 {
            assert_relative_eq!(prefix[j] + suffix[j], total, max_relative = 1e-13);
        }
    }

    #[test]
    fn neumaier_handles_cancellation() {
        let mut acc = NeumaierSum::new();
        acc.add(1e16);
        acc.add(1.0);
        acc.add(-1e16);
        assert_eq!(acc.total(), 1.0);
    }

    #[test]
    fn compensated_sum_is_order_insensitive_here() {
        let values: Vec<f64> = (0..10_000).map(|j| ((j * 2654435761_usize) as f64).sin()).collect();
        let mut reversed = values.clone();
        reversed.reverse();
        assert_relative_eq!(
            compensated_sum(&values),
            compensated_sum(&reversed),
            max_relative = 1e-15
        );
    }

    #[test]
    fn bootstrap_stderr_tracks_plain_stderr() {
        let values: Vec<f64> = (0..4000).map(|j| ((j as f64) * 0.7).sin()).collect();
        let plain = standard_error(&values);
        let boot = bootstrap_stderr(&values, 7);
        assert!((boot - plain).abs() < 0.25 * plain, "boot {boot} vs plain {plain}");
    }

    #[test]
    fn bootstrap_is_reproducible() {
        let values: Vec<f64> = (0..500).map(|j| (j as f64).cos()).collect();
        assert_eq!(bootstrap_stderr(&values, 11), bootstrap_stderr(&values, 11));
        let (lo, hi) = bootstrap_ci95(&values, 11);
        let again = bootstrap_ci95(&values, 11);
        assert_eq!((lo, hi), again);
        assert!(lo <= mean(&values) && mean(&values) <= hi);
    }

    #[test]
    fn ks_statistic_on_identical_samples_is_small() {
        let a: Vec<f64> = (0..1000).map(|j| (j as f64) / 1000.0).collect();
        assert!(ks_statistic(&a, &a) < 1e-12);
        let b: Vec<f64> = a.iter().map(|x| x + 0.5).collect();
        assert!(ks_statistic(&a, &b) > 0.4);
    }
}
