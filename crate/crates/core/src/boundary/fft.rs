use std::cell::RefCell;

use rustfft::FftPlanner;

use crate::Complex64;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Unnormalized forward transform, `X_k = Σ x_j e^{-2πi jk/N}`.
pub(crate) fn forward(buf: &mut [Complex64]) {
    if buf.len() <= 1 {
        return;
    }
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    fft.process(buf);
}

/// Unnormalized inverse transform, `x_j = Σ X_k e^{+2πi jk/N}`.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    if buf.len() <= 1 {
        return;
    }
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()));
    fft.process(buf);
}

/// Values of `Σ c_k z^k` at `z = e^{i(2πj/size + shift)}`, `j = 0..size`.
///
/// Coefficients beyond `size` are folded, so the result is exact for any
/// length.
pub(crate) fn eval_poly_on_circle(coeffs: &[Complex64], size: usize, shift: f64) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (k, c) in coeffs.iter().enumerate() {
        let c = if shift != 0.0 {
            c * Complex64::from_polar(1.0, shift * k as f64)
        } else {
            *c
        };
        buf[k % size] += c;
    }
    inverse(&mut buf);
    buf
}
