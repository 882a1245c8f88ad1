//! Auxiliary functions used to locate interaction outcomes and transition curves.
//!
//! Every function takes the gas first. Fallible public wrappers validate their
//! arguments; the crate-internal `*_of` variants skip the checks for hot loops.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::gas::GasConstants;
use crate::kernels::{log_gamma_fn, psi_b, psi_f, xi_shock};
use crate::roots::bisect;
use crate::waves::NULL_BAND;

/// Distance of a from 1/4 below which γ is treated as exactly 5/3.
pub const FIVE_THIRDS_BAND: f64 = 1e-9;

#[inline]
pub(crate) fn m_of(g: &GasConstants, q: f64) -> f64 {
    if q < 1.0 {
        (g.zeta * q.ln()).exp()
    } else {
        (q * (1.0 + g.a * q) / (q + g.a)).sqrt()
    }
}

#[inline]
pub(crate) fn n_of(g: &GasConstants, q: f64) -> f64 {
    if q > 1.0 {
        (g.zeta * q.ln()).exp()
    } else {
        (q * (1.0 + g.a * q) / (q + g.a)).sqrt()
    }
}

/// M(q) = √(q φ⃖(q)).
pub fn aux_m(g: &GasConstants, q: f64) -> Result<f64> {
    Ok(m_of(g, positive("q", q)?))
}

/// N(q) = √(q φ⃗(q)).
pub fn aux_n(g: &GasConstants, q: f64) -> Result<f64> {
    Ok(n_of(g, positive("q", q)?))
}

fn m_log(g: &GasConstants, q: f64) -> f64 {
    if q < 1.0 {
        g.zeta
    } else {
        let a = g.a;
        a * (1.0 + 2.0 * a * q + q * q) / (2.0 * (q + a) * (1.0 + a * q))
    }
}

/// Logarithmic derivatives m = qM'/M and n = qN'/N.
pub fn log_derivative_kernels(g: &GasConstants, q: f64) -> Result<(f64, f64)> {
    positive("q", q)?;
    Ok((m_log(g, q), m_log(g, 1.0 / q)))
}

/// ℓ(q) = q ψ⃖'(q)/ψ⃖(q), singular at q = 1.
pub fn aux_ell(g: &GasConstants, q: f64) -> Result<f64> {
    positive("q", q)?;
    if (q - 1.0).abs() <= NULL_BAND {
        return Err(Error::NullStrength(q));
    }
    Ok(if q < 1.0 {
        let qz = (g.zeta * q.ln()).exp();
        g.zeta * qz / (g.zeta * q.ln()).exp_m1()
    } else {
        q * (q + 2.0 * g.a + 1.0) / (2.0 * (q - 1.0) * (q + g.a))
    })
}

/// A(q, ξ) = (1 + aq + a²ξ)/(a² + aq + ξ).
pub fn aux_a(g: &GasConstants, q: f64, xi: f64) -> Result<f64> {
    positive("q", q)?;
    positive("xi", xi)?;
    let a = g.a;
    Ok((1.0 + a * q + a * a * xi) / (a * a + a * q + xi))
}

#[inline]
pub(crate) fn d_of(g: &GasConstants, q: f64) -> f64 {
    (q.ln() / g.gamma).exp() * (1.0 + g.a * q) / (q + g.a)
}

/// D(q) = q^{1/γ}(1 + aq)/(q + a), increasing from 0 to ∞ with D(1) = 1.
pub fn aux_d(g: &GasConstants, q: f64) -> Result<f64> {
    Ok(d_of(g, positive("q", q)?))
}

/// E(x) = (1 + ax)/(x + a).
pub fn aux_e(g: &GasConstants, x: f64) -> Result<f64> {
    positive("x", x)?;
    Ok((1.0 + g.a * x) / (x + g.a))
}

/// Bisection in log space for an increasing map of (0, ∞) onto (0, ∞).
fn invert_increasing(f: impl Fn(f64) -> f64, target: f64) -> Result<f64> {
    let lt = target.ln();
    let h = |t: f64| f(t.exp()).ln() - lt;
    let (mut lo, mut hi) = (-1.0, 1.0);
    while h(lo) > 0.0 {
        lo *= 2.0;
        if lo < -690.0 {
            return Err(Error::Domain { name: "d", value: target, range: "range of D" });
        }
    }
    while h(hi) < 0.0 {
        hi *= 2.0;
        if hi > 690.0 {
            return Err(Error::Domain { name: "d", value: target, range: "range of D" });
        }
    }
    Ok(bisect(h, lo, hi)?.x.exp())
}

/// δ = D⁻¹.
pub fn d_inverse(g: &GasConstants, d: f64) -> Result<f64> {
    positive("d", d)?;
    if d == 1.0 {
        return Ok(1.0);
    }
    invert_increasing(|q| d_of(g, q), d)
}

/// Taylor coefficients of α̃(1 + t) = κt/√(1+a+t) − ν((1+t)^ζ − 1). The first two
/// vanish identically.
fn alpha_tilde_series(g: &GasConstants, t: f64) -> f64 {
    let s = 1.0 + g.a;
    let lead = g.kappa / s.sqrt();
    let mut c_half = 1.0; // binom(-1/2, k-1) / s^(k-1)
    let mut c_zeta = g.zeta; // binom(zeta, k)
    let mut tk = t;
    let mut sum = 0.0;
    for k in 1..120 {
        if k >= 3 {
            let term = (lead * c_half - g.nu * c_zeta) * tk;
            sum += term;
        }
        let j = k as f64;
        c_half *= (-0.5 - (j - 1.0)) / (j * s);
        c_zeta *= (g.zeta - j) / (j + 1.0);
        tk *= t;
    }
    sum
}

fn alpha_tilde(g: &GasConstants, q: f64) -> f64 {
    let t = q - 1.0;
    if t.abs() <= 0.25 {
        alpha_tilde_series(g, t)
    } else {
        g.kappa * t / (q + g.a).sqrt() - g.nu * (g.zeta * q.ln()).exp_m1()
    }
}

/// α(q) = ψ⃗(q) − ψ⃖(q), evaluated without cancellation near q = 1.
pub fn alpha(g: &GasConstants, q: f64) -> f64 {
    if q < 1.0 {
        alpha_tilde(g, q)
    } else {
        -alpha_tilde(g, q)
    }
}

/// Direct difference of the two kernels, for cross-checking [`alpha`].
pub fn alpha_direct(g: &GasConstants, q: f64) -> f64 {
    psi_f(g, q) - psi_b(g, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    BelowFiveThirds,
    AtFiveThirds,
    AboveFiveThirds,
}

impl Regime {
    pub fn of(g: &GasConstants) -> Self {
        if (g.a - 0.25).abs() < FIVE_THIRDS_BAND {
            Regime::AtFiveThirds
        } else if g.a < 0.25 {
            Regime::BelowFiveThirds
        } else {
            Regime::AboveFiveThirds
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaRootInfo {
    pub y0: f64,
    pub x0: f64,
    pub regime: Regime,
}

/// Scan points approaching 1 geometrically from the side `sign`, then moving away.
fn alpha_scan(sign: f64) -> impl Iterator<Item = f64> {
    let near = (0..=44).rev().map(move |j| 1.0 + sign * 0.5 * 0.5f64.powi(j));
    let far = (1..=1200).map(move |i| {
        let r = 10f64.powf(i as f64 / 4.0);
        if sign > 0.0 {
            1.5 * r
        } else {
            0.5 / r
        }
    });
    near.chain(far)
}

/// The root y0 ≠ 1 of α (y0 = 1 at γ = 5/3) and x0 = 1/y0.
pub fn alpha_roots(g: &GasConstants) -> AlphaRootInfo {
    let regime = Regime::of(g);
    if regime == Regime::AtFiveThirds {
        return AlphaRootInfo { y0: 1.0, x0: 1.0, regime };
    }
    // Below 5/3 α < 0 just left of 1 and α > 0 near 0; above 5/3 α > 0 just right of 1
    // and α < 0 at infinity.
    let side = if regime == Regime::BelowFiveThirds { -1.0 } else { 1.0 };
    let mut prev = 1.0;
    let mut bracket = None;
    for q in alpha_scan(side) {
        let v = alpha(g, q);
        if (v > 0.0) == (side < 0.0) && v != 0.0 {
            bracket = Some((prev, q));
            break;
        }
        prev = q;
    }
    let (p, q) = bracket.expect("α changes sign on the scan grid");
    let root = bisect(|t| alpha(g, t.exp()), p.ln(), q.ln()).expect("bracketed");
    let y0 = root.x.exp();
    AlphaRootInfo { y0, x0: 1.0 / y0, regime }
}

fn check_open(name: &'static str, v: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if v > lo && v < hi {
        Ok(())
    } else {
        Err(Error::Domain { name, value: v, range })
    }
}

/// Γ(s) = s^γ(1 − as)/(s − a) on (a, 1/a).
pub fn gamma_fn(g: &GasConstants, s: f64) -> Result<f64> {
    check_open("s", s, g.a, 1.0 / g.a, "(a, 1/a)")?;
    Ok(log_gamma_fn(g, s).exp())
}

/// Ω = √Γ on (a, 1).
pub fn omega(g: &GasConstants, s: f64) -> Result<f64> {
    check_open("s", s, g.a, 1.0, "(a, 1)")?;
    Ok((0.5 * log_gamma_fn(g, s)).exp())
}

/// Ω⁻¹ on [1, ∞), by bisection.
pub fn omega_inverse(g: &GasConstants, z: f64) -> Result<f64> {
    if !(z >= 1.0) || !z.is_finite() {
        return Err(Error::Domain { name: "z", value: z, range: "[1, inf)" });
    }
    if z == 1.0 {
        return Ok(1.0);
    }
    let lz = z.ln();
    let h = |s: f64| 0.5 * log_gamma_fn(g, s) - lz;
    let hi = 1.0;
    let mut lo = g.a + 0.5 * (1.0 - g.a);
    while h(lo) < 0.0 {
        lo = g.a + 0.5 * (lo - g.a);
        if lo - g.a < 1e-300 {
            return Err(Error::Domain { name: "z", value: z, range: "range of Omega" });
        }
    }
    Ok(bisect(h, lo, hi)?.x)
}

/// Λ(z) = ξ⃖(Ω⁻¹(z)) for z ≥ 1.
pub fn lambda_fn(g: &GasConstants, z: f64) -> Result<f64> {
    let s = omega_inverse(g, z)?;
    Ok(if s >= 1.0 { 0.0 } else { xi_shock(g, s) })
}

#[inline]
pub(crate) fn v_of(g: &GasConstants, x: f64) -> f64 {
    (g.nu * (x + g.a).sqrt() + g.kappa * (x - 1.0)) / (x + g.a * x * x).sqrt()
}

/// v(x) = (ν√(x+a) + κ(x−1))/√(x + ax²).
pub fn v_fn(g: &GasConstants, x: f64) -> Result<f64> {
    Ok(v_of(g, positive("x", x)?))
}

/// θ(z) = (z + 2a + 1) z^{1−ζ}/(z + a)^{3/2}.
pub fn theta(g: &GasConstants, z: f64) -> f64 {
    (z + 2.0 * g.a + 1.0) * ((1.0 - g.zeta) * z.ln()).exp() / (z + g.a).powf(1.5)
}

/// Q(z, x) = (√(1+a)/2)(x^ζ/M(x)) θ(z) − 1; ∂_y H(x, y) has its sign at z = xy.
pub fn q_theta(g: &GasConstants, z: f64, x: f64) -> f64 {
    0.5 * (1.0 + g.a).sqrt() * (g.zeta * x.ln()).exp() / m_of(g, x) * theta(g, z) - 1.0
}

/// Sign polynomial (q − 1)(q − q̄) with q̄ = 2a(2a+1)/(1−a).
pub fn q_poly(g: &GasConstants, q: f64) -> f64 {
    let qbar = 2.0 * g.a * (2.0 * g.a + 1.0) / (1.0 - g.a);
    (q - 1.0) * (q - qbar)
}

/// Directional-derivative factor of H along hyperbolas xy = const, for y ≥ 1.
pub fn eta_hyper(g: &GasConstants, y: f64) -> f64 {
    let a = g.a;
    2.0 / (1.0 + a).sqrt()
        - ((1.0 - a) * y * y + (5.0 * a + 1.0) * y + 2.0 * a * a) / ((1.0 + a) * (y + a).powf(1.5))
}

/// Printed factorization of [`eta_hyper`].
pub fn eta_hyper_factored(g: &GasConstants, y: f64) -> f64 {
    let a = g.a;
    let r = (y + a).sqrt();
    let s1 = (1.0 + a).sqrt();
    let k = (a * (1.0 + a)).sqrt();
    -(1.0 - a) * (r - s1).powi(2) / ((1.0 + a) * (y + a).powf(1.5))
        * (r - k / (1.0 - a.sqrt()))
        * (r + k / (1.0 + a.sqrt()))
}

/// Shared check that φ and ψ kernels agree with M and N.
#[cfg(test)]
pub(crate) fn mn_from_kernels(g: &GasConstants, q: f64) -> (f64, f64) {
    use crate::kernels::{phi_b, phi_f};
    ((q * phi_b(g, q)).sqrt(), (q * phi_f(g, q)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const GAMMAS: [f64; 6] = [1.2, 1.4, 5.0 / 3.0, 1.9, 2.0, 3.0];

    fn gas(g: f64) -> GasConstants {
        GasConstants::new(g).unwrap()
    }

    fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
    }

    #[test]
    fn m_and_n_examples() {
        let g = gas(5.0 / 3.0);
        assert_eq!(aux_m(&g, 1.0).unwrap(), 1.0);
        assert_eq!(aux_n(&g, 1.0).unwrap(), 1.0);
        assert_relative_eq!(aux_m(&g, 4.0).unwrap(), (8.0f64 / 4.25).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(aux_n(&g, 4.0).unwrap(), 4f64.powf(0.2), max_relative = 1e-15);
        assert!(aux_m(&g, 0.0).is_err());
    }

    #[test]
    fn m_and_n_match_kernels() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            for q in log_grid(1e-6, 1e6, 500) {
                let (m, n) = mn_from_kernels(&g, q);
                assert_relative_eq!(m_of(&g, q), m, max_relative = 1e-13);
                assert_relative_eq!(n_of(&g, q), n, max_relative = 1e-13);
                // M(q) = −ψ⃖(q)/ψ⃗(1/q) away from q = 1
                if (q - 1.0).abs() > 1e-3 {
                    assert_relative_eq!(m, -psi_b(&g, q) / psi_f(&g, 1.0 / q), max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn log_derivatives() {
        let g = gas(5.0 / 3.0);
        assert_eq!(log_derivative_kernels(&g, 0.5).unwrap().0, g.zeta);
        assert_eq!(log_derivative_kernels(&g, 2.0).unwrap().1, g.zeta);
        assert!((log_derivative_kernels(&g, 1e9).unwrap().0 - 0.5).abs() < 1e-4);
        for &gm in &GAMMAS {
            let g = gas(gm);
            let mut last = 0.0;
            for q in log_grid(1e-3, 1e6, 300) {
                let (m, n) = log_derivative_kernels(&g, q).unwrap();
                assert!(m >= last && m >= g.zeta - 1e-15 && m < 0.5);
                assert_eq!(n, m_log(&g, 1.0 / q));
                let h = 1e-6;
                let fd = ((m_of(&g, q * (1.0 + h))).ln() - (m_of(&g, q * (1.0 - h))).ln())
                    / ((1.0 + h).ln() - (1.0 - h).ln());
                assert!((fd - m).abs() < 1e-6, "γ={gm} q={q}");
                last = m;
            }
        }
    }

    #[test]
    fn ell_examples() {
        let g = gas(5.0 / 3.0);
        assert_relative_eq!(aux_ell(&g, 2.0).unwrap(), 14.0 / 9.0, max_relative = 1e-15);
        for q in [1.01, 2.0, 10.0, 100.0] {
            assert!(aux_ell(&g, q).unwrap() > 0.5);
        }
        assert!(aux_ell(&g, 1.0 + 1e-13).is_err());
        assert!(aux_ell(&g, 1.0 - 1e-13).is_err());
        for &gm in &GAMMAS {
            let g = gas(gm);
            for q in log_grid(1e-3, 1e3, 200).filter(|q| (q - 1.0).abs() > 1e-2) {
                let h = 1e-6 * q;
                let fd = q * (psi_b(&g, q + h) - psi_b(&g, q - h)) / (2.0 * h) / psi_b(&g, q);
                assert_relative_eq!(aux_ell(&g, q).unwrap(), fd, max_relative = 1e-6);
            }
            let left: Vec<f64> = log_grid(1e-3, 0.99, 100).map(|q| aux_ell(&g, q).unwrap()).collect();
            let right: Vec<f64> = log_grid(1.01, 1e3, 100).map(|q| aux_ell(&g, q).unwrap()).collect();
            assert!(left.windows(2).all(|w| w[1] < w[0]));
            assert!(right.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn a_d_e_examples() {
        let g = gas(5.0 / 3.0);
        assert_eq!(aux_d(&g, 1.0).unwrap(), 1.0);
        assert_eq!(aux_e(&g, 1.0).unwrap(), 1.0);
        for q in [0.1, 1.0, 7.0] {
            assert_relative_eq!(aux_a(&g, q, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        }
        assert_relative_eq!(aux_d(&g, 2.0).unwrap(), 2f64.powf(0.6) * 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(aux_d(&g, 2.0).unwrap(), 1.01048, epsilon = 1e-5);
        assert_relative_eq!(aux_e(&g, 2.0).unwrap(), 2.0 / 3.0, max_relative = 1e-15);
        assert!(aux_a(&g, 0.0, 1.0).is_err());
    }

    #[test]
    fn d_is_increasing_and_invertible() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            let v: Vec<f64> = log_grid(1e-8, 1e8, 400).map(|q| d_of(&g, q)).collect();
            assert!(v.windows(2).all(|w| w[1] > w[0]));
            assert_eq!(d_inverse(&g, 1.0).unwrap(), 1.0);
            for q in [1e-6, 0.3, 3.0, 1e5] {
                assert_relative_eq!(d_inverse(&g, d_of(&g, q)).unwrap(), q, max_relative = 1e-12);
            }
        }
        let g = gas(5.0 / 3.0);
        assert_relative_eq!(d_inverse(&g, 2f64.powf(0.6) * 2.0 / 3.0).unwrap(), 2.0, max_relative = 1e-12);
        assert!(d_inverse(&g, 0.0).is_err());
    }

    #[test]
    fn a_slope_sign() {
        let g = gas(1.4);
        for xi in [0.2, 0.9, 1.1, 5.0] {
            for q in [0.01, 0.5, 2.0, 40.0] {
                let s = aux_a(&g, q * 1.001, xi).unwrap() - aux_a(&g, q, xi).unwrap();
                assert_eq!(s > 0.0, xi > 1.0);
            }
        }
    }

    #[test]
    fn alpha_series_matches_direct() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            for q in [0.76, 0.8, 0.9, 0.95, 1.05, 1.1, 1.2, 1.24] {
                assert!((alpha(&g, q) - alpha_direct(&g, q)).abs() < 1e-14, "γ={gm} q={q}");
            }
            assert_eq!(alpha(&g, 1.0), 0.0);
        }
    }

    #[test]
    fn alpha_cubic_coefficient() {
        // α̃(1+t) ≈ κ(1−4a) t³ / (24 (1+a)^{5/2})
        for &gm in &[1.2, 1.4, 1.9, 3.0] {
            let g = gas(gm);
            let t = 1e-4;
            let c3 = g.kappa * (1.0 - 4.0 * g.a) / (24.0 * (1.0 + g.a).powf(2.5));
            assert_relative_eq!(alpha_tilde(&g, 1.0 + t) / t.powi(3), c3, max_relative = 1e-3);
        }
    }

    #[test]
    fn alpha_root_regimes() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            let info = alpha_roots(&g);
            assert_relative_eq!(info.x0 * info.y0, 1.0, max_relative = 1e-15);
            match info.regime {
                Regime::BelowFiveThirds => assert!(info.y0 < 1.0 && gm < 5.0 / 3.0),
                Regime::AtFiveThirds => assert_eq!(info.y0, 1.0),
                Regime::AboveFiveThirds => assert!(info.y0 > 1.0 && gm > 5.0 / 3.0),
            }
            assert!(alpha(&g, info.y0).abs() < 1e-12);
        }
        // Root drifts toward 1 as γ → 5/3.
        let near = alpha_roots(&gas(5.0 / 3.0 - 1e-6));
        assert!(near.y0 < 1.0 && near.y0 > 0.999);
    }

    #[test]
    fn gamma_and_lambda() {
        let g = gas(5.0 / 3.0);
        assert_relative_eq!(gamma_fn(&g, 1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma_fn(&g, 0.5).unwrap(), 1.1024309187, epsilon = 1e-10);
        assert_relative_eq!(gamma_fn(&g, 2.0).unwrap(), 0.9070863154, epsilon = 1e-10);
        assert_relative_eq!(gamma_fn(&g, 0.5).unwrap() * gamma_fn(&g, 2.0).unwrap(), 1.0, max_relative = 1e-14);
        assert!(gamma_fn(&g, 4.0).is_err() && gamma_fn(&g, 0.25).is_err());
        assert!(omega(&g, 1.0).is_err());
        assert_eq!(lambda_fn(&g, 1.0).unwrap(), 0.0);
        assert!(lambda_fn(&g, 1.0 + 1e-9).unwrap() < 1e-2);
        assert!(lambda_fn(&g, 0.5).is_err());

        let g = gas(1.4);
        let l = |z| lambda_fn(&g, z).unwrap();
        assert!(l(1.5) + 1.5 * l(2.0) >= l(3.0));
        for s in [0.2, 0.5, 0.9] {
            assert_relative_eq!(omega_inverse(&g, omega(&g, s).unwrap()).unwrap(), s, max_relative = 1e-12);
        }
    }

    #[test]
    fn gamma_decreasing_with_printed_derivative() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            for i in 1..100 {
                let s = g.a + (1.0 / g.a - g.a) * i as f64 / 100.0;
                let h = 1e-6 * s;
                let fd = (gamma_fn(&g, s + h).unwrap() - gamma_fn(&g, s - h).unwrap()) / (2.0 * h);
                let exact = -g.a * g.gamma * s.powf(g.gamma - 1.0) * (s - 1.0).powi(2) / (s - g.a).powi(2);
                assert!((fd - exact).abs() < 1e-6 * (1.0 + exact.abs()), "γ={gm} s={s}");
                assert!(exact <= 0.0);
            }
        }
    }

    #[test]
    fn v_examples() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            assert_relative_eq!(v_fn(&g, 1.0).unwrap(), g.nu, max_relative = 1e-15);
            let v: Vec<f64> = log_grid(1.0, 1e6, 500).map(|x| v_of(&g, x)).collect();
            assert!(v.windows(2).all(|w| w[1] < w[0]), "γ={gm}");
            assert_relative_eq!(v_of(&g, 1e14), g.kappa / g.a.sqrt(), max_relative = 1e-5);
            assert_relative_eq!(g.kappa / (g.nu * g.a.sqrt()), g.zeta.sqrt(), max_relative = 1e-14);
        }
        assert!(v_fn(&gas(1.4), 0.0).is_err());
    }

    #[test]
    fn eta_hyper_factorization() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            for y in log_grid(1.0, 1e4, 200) {
                let (e, f) = (eta_hyper(&g, y), eta_hyper_factored(&g, y));
                assert!((e - f).abs() < 1e-12 * (1.0 + e.abs()), "γ={gm} y={y}");
            }
        }
    }

    #[test]
    fn beta_curvature_sign_matches_q_poly() {
        // β(z) = α̃(q(z)) with z = (q−1)/√(q+a); sign β'' = sign (q−1)(q−q̄).
        for &gm in &[1.2, 1.4, 1.9, 3.0] {
            let g = gas(gm);
            let z = |q: f64| (q - 1.0) / (q + g.a).sqrt();
            let qz = |zz: f64| bisect(|q| z(q) - zz, 1e-9, 1e9).unwrap().x;
            for q in [0.05, 0.2, 0.5, 2.0, 5.0, 20.0] {
                let qb = 2.0 * g.a * (2.0 * g.a + 1.0) / (1.0 - g.a);
                if (q - qb).abs() < 0.05 * q {
                    continue;
                }
                let h = 1e-3;
                let z0 = z(q);
                let b = |zz: f64| alpha_tilde(&g, qz(zz));
                let d2 = (b(z0 + h) - 2.0 * b(z0) + b(z0 - h)) / (h * h);
                assert_eq!(d2 > 0.0, q_poly(&g, q) > 0.0, "γ={gm} q={q}");
            }
        }
    }

    proptest! {
        #[test]
        fn e_product_sign(ga in 0usize..6, lx in -3.0f64..3.0, ly in -3.0f64..3.0) {
            let g = gas(GAMMAS[ga]);
            let (x, y) = (10f64.powf(lx), 10f64.powf(ly));
            prop_assume!((x - 1.0).abs() > 1e-6 && (y - 1.0).abs() > 1e-6 && (x * y - 1.0).abs() > 1e-6);
            let e = |v| aux_e(&g, v).unwrap();
            let lhs = e(x * y) > e(x) * e(y);
            prop_assert_eq!(lhs, (1.0 - x * y) * (1.0 - x) * (1.0 - y) < 0.0);
        }

        #[test]
        fn gamma_product_sign(ga in 0usize..6, u in 0.0f64..1.0, v in 0.0f64..1.0) {
            let g = gas(GAMMAS[ga]);
            let (lo, hi) = (g.a.ln(), (1.0 / g.a).ln());
            let s = (lo + (hi - lo) * u).exp();
            let t = (lo + (hi - lo) * v).exp();
            prop_assume!(s * t > g.a * 1.0001 && s * t < 0.9999 / g.a);
            prop_assume!((s - 1.0).abs() > 1e-4 && (t - 1.0).abs() > 1e-4 && (s * t - 1.0).abs() > 1e-4);
            let gm = |w| gamma_fn(&g, w).unwrap();
            prop_assert_eq!(gm(s) * gm(t) < gm(s * t), (1.0 - s * t) * (1.0 - s) * (1.0 - t) > 0.0);
        }

        #[test]
        fn m_inequalities(ga in 0usize..6, lx in 0.0001f64..6.0) {
            let g = gas(GAMMAS[ga]);
            let x = 10f64.powf(lx);
            let m = m_of(&g, x);
            prop_assert!(m > (g.zeta * x.ln()).exp());
            prop_assert!(m > 1.0 + g.kappa * (x - 1.0) / (g.nu * (x + g.a).sqrt()));
        }
    }
}
