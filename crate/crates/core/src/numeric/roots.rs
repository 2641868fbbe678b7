//! Bracketed scalar root finding: bisection with safeguarded secant steps.

use crate::error::{Error, Result};

/// Termination policy for [`solve_bracketed`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Stop when the bracket is narrower than `x_abs + x_rel * |x|`.
    pub x_abs: f64,
    pub x_rel: f64,
    /// Stop early when `|f(x)| <= f_abs`.
    pub f_abs: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { x_abs: 0.0, x_rel: 2.0 * f64::EPSILON, f_abs: 0.0, max_iter: 400 }
    }
}

impl Tolerance {
    pub fn with_x_abs(mut self, x_abs: f64) -> Self {
        self.x_abs = x_abs;
        self
    }

    pub fn with_f_abs(mut self, f_abs: f64) -> Self {
        self.f_abs = f_abs;
        self
    }
}

/// Finds a sign change of `f` in `[a, b]`.
///
/// `f(a)` and `f(b)` must have opposite signs (or one of them vanish). Each
/// iteration tries a secant step and falls back to bisection whenever the
/// previous step failed to halve the bracket, so the bracket shrinks by at
/// least a factor two every second iteration.
pub fn solve_bracketed<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::NoConvergence(format!(
            "no sign change on [{lo}, {hi}]: f = ({f_lo}, {f_hi})"
        )));
    }

    let mut force_bisect = false;
    for _ in 0..tol.max_iter {
        let width = hi - lo;
        let best = if f_lo.abs() < f_hi.abs() { lo } else { hi };
        if width <= tol.x_abs + tol.x_rel * best.abs() {
            return Ok(best);
        }

        let mid = lo + 0.5 * width;
        let x = if force_bisect {
            mid
        } else {
            let s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            // keep secant iterates away from the bracket ends
            let guard = 1e-3 * width;
            if s.is_finite() && s > lo + guard && s < hi - guard {
                s
            } else {
                mid
            }
        };
        if x <= lo || x >= hi {
            return Ok(best);
        }

        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NoConvergence(format!("non-finite value at x = {x}")));
        }
        if fx == 0.0 || fx.abs() <= tol.f_abs {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        force_bisect = hi - lo > 0.5 * width;
    }
    Err(Error::NoConvergence(format!("bracket [{lo}, {hi}] after {} iterations", tol.max_iter)))
}

/// Plain bisection on a monotone predicate: returns the boundary between
/// `pred == false` at `a` and `pred == true` at `b`.
pub fn bisect_predicate<P>(pred: P, a: f64, b: f64, x_tol: f64) -> f64
where
    P: Fn(f64) -> bool,
{
    let (mut lo, mut hi) = (a, b);
    while (hi - lo).abs() > x_tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
