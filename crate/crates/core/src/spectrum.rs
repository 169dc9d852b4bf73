//! Discrete Fourier helpers for real even sequences sampled on the unit circle.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// Angle of the `m`-th point of a uniform `size`-point grid on the circle.
pub fn grid_angle(m: usize, size: usize) -> f64 {
    2.0 * std::f64::consts::PI * m as f64 / size as f64
}

/// Evaluates `h_0 + 2 sum_{k>=1} h_k cos(k theta_m)` on a uniform `size`-point grid.
///
/// The even sequence `h_{-k} = h_k` is embedded symmetrically and transformed with a
/// single FFT. Requires `size > 2 * (h.len() - 1)` so that `h_k` and `h_{-k}` do not overlap.
pub fn even_series_on_grid(h: &[f64], size: usize) -> Vec<f64> {
    debug_assert!(h.is_empty() || size > 2 * (h.len() - 1));
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (k, &hk) in h.iter().enumerate() {
        buf[k].re += hk;
        if k > 0 {
            buf[size - k].re += hk;
        }
    }
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);
    buf.into_iter().map(|z| z.re).collect()
}

/// Fourier coefficients `(1/M) sum_m f(theta_m) e^{-i k theta_m}` for `k = 0..=depth` of a
/// real even function sampled on a uniform grid. Only the real part is kept; the imaginary
/// part vanishes for even input up to rounding.
pub fn even_coefficients(values: &[f64], depth: usize) -> Vec<f64> {
    let size = values.len();
    debug_assert!(depth <= size / 2);
    let mut buf: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);
    let scale = 1.0 / size as f64;
    buf[..=depth].iter().map(|z| z.re * scale).collect()
}

/// In-place forward FFT of a complex buffer.
pub(crate) fn fft_forward(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
}
