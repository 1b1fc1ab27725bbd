use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal function on `[lo, hi]` by golden-section search.
///
/// Returns the best point actually evaluated, with both endpoints always
/// among the candidates, so boundary maximizers are found exactly and the
/// result is never worse than either endpoint. Stops once the bracket is
/// narrower than `tol * max(1, |hi|)`.
pub fn solve_1d_convex<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::EmptyInterval { lo, hi });
    }
    Ok(golden_max(&mut f, lo, hi, tol))
}

fn golden_max<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let mut best = (lo, f(lo));
    if hi == lo {
        return best;
    }
    let consider = |x: f64, v: f64, best: &mut (f64, f64)| {
        if v > best.1 {
            *best = (x, v);
        }
    };
    let fhi = f(hi);
    consider(hi, fhi, &mut best);

    let tol = tol.max(f64::EPSILON) * hi.abs().max(1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    consider(c, fc, &mut best);
    consider(d, fd, &mut best);
    let mut guard = 0;
    while b - a > tol && guard < 200 {
        guard += 1;
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            consider(d, fd, &mut best);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            consider(c, fc, &mut best);
        }
    }
    best
}

/// Coarse uniform scan with `n` cells followed by a golden refinement
/// around the best sample. For functions that may not be unimodal on the
/// whole interval.
pub fn scan_then_golden<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize, tol: f64) -> (f64, f64) {
    if hi <= lo {
        return (lo, f(lo));
    }
    let n = n.max(2);
    let step = (hi - lo) / n as f64;
    let mut best = (lo, f64::NEG_INFINITY);
    let mut best_i = 0;
    for i in 0..=n {
        let x = if i == n { hi } else { lo + step * i as f64 };
        let v = f(x);
        if v > best.1 {
            best = (x, v);
            best_i = i;
        }
    }
    let a = lo + step * best_i.saturating_sub(1) as f64;
    let b = if best_i + 1 >= n { hi } else { lo + step * (best_i + 1) as f64 };
    let refined = golden_max(&mut f, a, b, tol);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_peak() {
        let (x, v) = solve_1d_convex(|x| -(x - 3.0) * (x - 3.0), 0.0, 10.0, 1e-10).unwrap();
        assert!((x - 3.0).abs() < 1e-8);
        assert!(v <= 0.0 && v > -1e-15);
    }

    #[test]
    fn boundary_maximizer_is_exact() {
        let (x, _) = solve_1d_convex(|x| x, 0.0, 5.0, 1e-9).unwrap();
        assert_eq!(x, 5.0);
        let (x, _) = solve_1d_convex(|x| -x, 0.0, 5.0, 1e-9).unwrap();
        assert_eq!(x, 0.0);
    }

    #[test]
    fn degenerate_and_empty_intervals() {
        assert_eq!(solve_1d_convex(|x| x, 2.0, 2.0, 1e-9).unwrap(), (2.0, 2.0));
        assert!(matches!(
            solve_1d_convex(|x| x, 3.0, 2.0, 1e-9),
            Err(Error::EmptyInterval { .. })
        ));
        assert!(solve_1d_convex(|x| x, f64::NAN, 2.0, 1e-9).is_err());
    }

    #[test]
    fn scan_finds_global_peak_of_bimodal() {
        let f = |x: f64| (-(x - 1.0).powi(2)).exp() + 2.0 * (-(x - 8.0).powi(2)).exp();
        let (x, _) = scan_then_golden(f, 0.0, 10.0, 20, 1e-10);
        assert!((x - 8.0).abs() < 1e-3);
    }
}
