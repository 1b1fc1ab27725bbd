//! Central finite differences for cross-checking the closed forms.

/// Relative step used by [`hessian`].
pub const FD_STEP: f64 = 1e-3;

/// Finite-difference Hessian of `f` at `(x, y)` with steps
/// `FD_STEP * max(|x|, tiny)` per coordinate. Diagonal entries use the
/// fourth-order five-point stencil, the mixed entry the four-corner one.
/// The step is wide so roundoff stays small when `f` is tiny near a
/// small coordinate.
pub fn hessian<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64) -> [[f64; 2]; 2] {
    let hx = FD_STEP * x.abs().max(1e-12);
    let hy = FD_STEP * y.abs().max(1e-12);
    let f0 = f(x, y);
    let d2 = |g: &dyn Fn(f64) -> f64, t: f64, h: f64| {
        (-g(t + 2.0 * h) + 16.0 * g(t + h) - 30.0 * f0 + 16.0 * g(t - h) - g(t - 2.0 * h)) / (12.0 * h * h)
    };
    let fxx = d2(&|t| f(t, y), x, hx);
    let fyy = d2(&|t| f(x, t), y, hy);
    let fxy = (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) + f(x - hx, y - hy)) / (4.0 * hx * hy);
    [[fxx, fxy], [fxy, fyy]]
}

/// Relative step used by [`gradient`].
pub const GRADIENT_STEP: f64 = 1e-3;

/// Fourth-order five-point central-difference gradient of `f` at `(x, y)`.
/// The wider step keeps roundoff small when `f` is a difference of large
/// terms.
pub fn gradient<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64) -> [f64; 2] {
    let (g, _) = gradient_with_noise(f, x, y);
    g
}

/// [`gradient`] together with a per-coordinate bound on its roundoff
/// error, `64 eps max|f| / h` over the stencil.
pub fn gradient_with_noise<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64) -> ([f64; 2], [f64; 2]) {
    let d = |g: &dyn Fn(f64) -> f64, t: f64| {
        let h = GRADIENT_STEP * t.abs().max(1e-12);
        let v = [g(t - 2.0 * h), g(t - h), g(t + h), g(t + 2.0 * h)];
        let big = v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        ((v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * h), 64.0 * f64::EPSILON * big / h)
    };
    let (gx, nx) = d(&|t| f(t, y), x);
    let (gy, ny) = d(&|t| f(x, t), y);
    ([gx, gy], [nx, ny])
}

/// Whether `approx` matches `exact` within `max(abs, rel * |exact|)`.
pub fn close(exact: f64, approx: f64, abs: f64, rel: f64) -> bool {
    (exact - approx).abs() <= abs.max(rel * exact.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_hessian() {
        let h = hessian(|x, y| x * x * y + y.powi(3), 1.5, 2.0);
        assert!(close(4.0, h[0][0], 1e-6, 1e-6));
        assert!(close(3.0, h[0][1], 1e-6, 1e-6));
        assert!(close(12.0, h[1][1], 1e-6, 1e-6));
        let g = gradient(|x, y| x * x * y + y.powi(3), 1.5, 2.0);
        assert!(close(6.0, g[0], 1e-6, 1e-6));
        assert!(close(14.25, g[1], 1e-6, 1e-6));
    }
}
