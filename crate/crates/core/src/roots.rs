//! Bracketing root finders for monotone scalar functions.

/// Root of an increasing function on `[lo, hi]` by Newton steps that fall
/// back to bisection whenever a step leaves the current bracket.
///
/// `f` returns `(value, derivative)`. The bracket is widened geometrically if
/// it does not straddle the root.
pub(crate) fn safeguarded_newton<F>(mut f: F, mut lo: f64, mut hi: f64, guess: f64, rel_tol: f64, max_iter: usize) -> f64
where
    F: FnMut(f64) -> (f64, f64),
{
    let mut width = (hi - lo).max(1.0);
    for _ in 0..200 {
        if f(lo).0 <= 0.0 {
            break;
        }
        lo -= width;
        width *= 2.0;
    }
    let mut width = (hi - lo).max(1.0);
    for _ in 0..200 {
        if f(hi).0 >= 0.0 {
            break;
        }
        hi += width;
        width *= 2.0;
    }
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..max_iter {
        let (value, slope) = f(x);
        if value == 0.0 {
            return x;
        }
        if value < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - value / slope;
        let next = if slope > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= rel_tol * (1.0 + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

/// Outcome of [`bracketed_root`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct Root {
    pub x: f64,
    pub residual: f64,
    pub converged: bool,
}

/// Root of `f` on `[lo, hi]` given `f(lo) < 0 < f(hi)`.
///
/// Bisection shrinks the bracket to `coarse_width`, then Illinois-modified
/// regula falsi polishes until `|f| < f_tol`. `f` may fail; errors abort.
pub(crate) fn bracketed_root<F, E>(
    mut f: F,
    mut lo: f64,
    mut f_lo: f64,
    mut hi: f64,
    mut f_hi: f64,
    coarse_width: f64,
    f_tol: f64,
) -> Result<Root, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    while hi - lo > coarse_width {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid.abs() < f_tol {
            return Ok(Root { x: mid, residual: f_mid, converged: true });
        }
        if f_mid < 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let mut side = 0i8;
    let mut best = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    for _ in 0..200 {
        let x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        let x = if x > lo && x < hi { x } else { 0.5 * (lo + hi) };
        let fx = f(x)?;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() < f_tol {
            return Ok(Root { x, residual: fx, converged: true });
        }
        if fx < 0.0 {
            lo = x;
            f_lo = fx;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
            break;
        }
    }
    Ok(Root { x: best.0, residual: best.1, converged: best.1.abs() < f_tol })
}
