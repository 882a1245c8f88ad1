//! Bracketing root finders for monotone scalar equations.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no sign change on [{lo:e}, {hi:e}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("function returned a non-finite value at {0:e}")]
    NotFinite(f64),
    #[error("no convergence after {0} iterations")]
    MaxIterations(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub iterations: usize,
}

const MAX_ITER: usize = 400;

/// Brent's method on [lo, hi]. Stops when the bracket is narrower than
/// `xtol` plus a few ulps, or on an exact zero.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<Root, RootError> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() {
        return Err(RootError::NotFinite(a));
    }
    if !fb.is_finite() {
        return Err(RootError::NotFinite(b));
    }
    if fa == 0.0 {
        return Ok(Root { x: a, residual: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, residual: 0.0, iterations: 0 });
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Err(RootError::NoSignChange { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for it in 1..=MAX_ITER {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(Root { x: b, residual: fb, iterations: it });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(RootError::NotFinite(b));
        }
    }
    Err(RootError::MaxIterations(MAX_ITER))
}

/// Plain bisection until the bracket stops shrinking in floating point.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> Result<Root, RootError> {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(Root { x: a, residual: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, residual: 0.0, iterations: 0 });
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Err(RootError::NoSignChange { lo, hi });
    }
    let up = fa < 0.0;
    let mut best = (a, fa);
    for it in 1..=2200 {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            return Ok(Root { x: best.0, residual: best.1, iterations: it });
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(Root { x: m, residual: 0.0, iterations: it });
        }
        if fm.abs() <= best.1.abs() || it == 1 {
            best = (m, fm);
        }
        if (fm < 0.0) == up {
            a = m;
        } else {
            b = m;
        }
    }
    Err(RootError::MaxIterations(2200))
}

/// Root of an increasing function of a positive variable, searched in log space.
/// The bracket starts at [lo, hi] and grows by a factor 16 on the deficient side.
pub fn increasing_positive_root<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Root, RootError> {
    let mut g = |t: f64| f(t.exp());
    let (mut tl, mut th) = (lo.ln(), hi.ln());
    let (tmin, tmax) = ((1e-300f64).ln(), (1e300f64).ln());
    let step = 16f64.ln();
    let mut fl = g(tl);
    while fl > 0.0 {
        if tl <= tmin {
            return Err(RootError::NoSignChange { lo: tl.exp(), hi: th.exp() });
        }
        th = tl;
        tl = (tl - step).max(tmin);
        fl = g(tl);
    }
    let mut fh = g(th);
    while fh < 0.0 {
        if th >= tmax {
            return Err(RootError::NoSignChange { lo: tl.exp(), hi: th.exp() });
        }
        tl = th;
        th = (th + step).min(tmax);
        fh = g(th);
    }
    let r = brent(&mut g, tl, th, tol)?;
    Ok(Root { x: r.x.exp(), residual: r.residual, iterations: r.iterations })
}
