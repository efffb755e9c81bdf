//! Scalar root finding on a sign-changing bracket.

/// Bisection down to `coarse_width`, then Newton steps kept inside the bracket.
///
/// `f` returns `(value, derivative)`. Requires `f(lo)` and `f(hi)` of opposite
/// sign; returns `None` otherwise or if the iteration budget runs out.
pub(crate) fn bisect_then_newton<F>(mut f: F, mut lo: f64, mut hi: f64, step_tol: f64) -> Option<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo.is_nan() || fhi.is_nan() {
        return None;
    }
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let rising = flo < 0.0;

    let coarse_width = 1e-3 * (1.0 + lo.abs());
    for _ in 0..200 {
        if hi - lo <= coarse_width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (fm, _) = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, x);
    let mut settled = false;
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if fx.abs() < best.0 {
            best = (fx.abs(), x);
        }
        if settled {
            return Some(best.1);
        }
        if (fx < 0.0) == rising {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        // One more evaluation after the step settles, then keep the best point seen.
        settled = (next - x).abs() < step_tol || hi - lo < step_tol;
        x = next;
    }
    None
}
