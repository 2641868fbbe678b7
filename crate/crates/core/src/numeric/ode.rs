//! Classical fourth-order Runge–Kutta for small autonomous-in-dimension systems.

/// One RK4 step of `y' = f(x, y)` from `x` to `x + h`.
pub fn rk4_step<const N: usize, F>(f: &F, x: f64, y: [f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let shift = |base: &[f64; N], k: &[f64; N], s: f64| -> [f64; N] {
        let mut out = *base;
        for (o, ki) in out.iter_mut().zip(k) {
            *o += s * ki;
        }
        out
    };
    let k1 = f(x, &y);
    let k2 = f(x + 0.5 * h, &shift(&y, &k1, 0.5 * h));
    let k3 = f(x + 0.5 * h, &shift(&y, &k2, 0.5 * h));
    let k4 = f(x + h, &shift(&y, &k3, h));
    let mut out = y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrates across the given abscissae (one RK4 step per interval),
/// returning the solution at every node. `xs[0]` carries `y0`.
pub fn rk4_on_grid<const N: usize, F>(f: &F, xs: &[f64], y0: [f64; N]) -> Vec<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut out = Vec::with_capacity(xs.len());
    let mut y = y0;
    out.push(y);
    for w in xs.windows(2) {
        y = rk4_step(f, w[0], y, w[1] - w[0]);
        out.push(y);
    }
    out
}
