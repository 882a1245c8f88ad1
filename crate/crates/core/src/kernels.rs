//! Scalar functions that parametrize the acoustic wave curves.
//!
//! Pressure-ratio kernels `phi` and `psi` are defined on (0, ∞). The specific-volume
//! kernels `xi` and `eta` live on (a, ∞) for backward waves and (0, 1/a) for forward
//! waves. At strength 1 the rarefaction branch is used; both branches agree there to
//! second order.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::gas::GasConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Backward,
    Forward,
}

// Branch formulas, valid as analytic expressions on either side of 1.

#[inline]
pub(crate) fn phi_rarefaction(g: &GasConstants, q: f64) -> f64 {
    (-q.ln() / g.gamma).exp()
}

#[inline]
pub(crate) fn phi_shock(g: &GasConstants, q: f64) -> f64 {
    (1.0 + g.a * q) / (q + g.a)
}

#[inline]
pub(crate) fn psi_rarefaction(g: &GasConstants, q: f64) -> f64 {
    g.nu * (g.zeta * q.ln()).exp_m1()
}

#[inline]
pub(crate) fn psi_shock(g: &GasConstants, q: f64) -> f64 {
    g.kappa * (q - 1.0) / (q + g.a).sqrt()
}

#[inline]
pub(crate) fn xi_rarefaction(g: &GasConstants, l: f64) -> f64 {
    g.nu * (0.5 * (1.0 - g.gamma) * l.ln()).exp_m1()
}

#[inline]
pub(crate) fn xi_shock(g: &GasConstants, l: f64) -> f64 {
    (1.0 + g.a).sqrt() * (1.0 - l) / (l - g.a).sqrt()
}

/// log Γ(s) with Γ(s) = s^γ (1 − a s)/(s − a).
#[inline]
pub(crate) fn log_gamma_fn(g: &GasConstants, s: f64) -> f64 {
    g.gamma * s.ln() + (-g.a * s).ln_1p() - (s - g.a).ln()
}

/// φ⃖: ratio τ_right/τ_left across a backward wave of pressure ratio `q`.
#[inline]
pub fn phi_b(g: &GasConstants, q: f64) -> f64 {
    if q <= 1.0 {
        phi_rarefaction(g, q)
    } else {
        phi_shock(g, q)
    }
}

/// φ⃗: ratio τ_right/τ_left across a forward wave of pressure ratio `q`.
#[inline]
pub fn phi_f(g: &GasConstants, q: f64) -> f64 {
    if q >= 1.0 {
        phi_rarefaction(g, q)
    } else {
        phi_shock(g, q)
    }
}

#[inline]
pub fn psi_b(g: &GasConstants, q: f64) -> f64 {
    if q <= 1.0 {
        psi_rarefaction(g, q)
    } else {
        psi_shock(g, q)
    }
}

#[inline]
pub fn psi_f(g: &GasConstants, q: f64) -> f64 {
    if q >= 1.0 {
        psi_rarefaction(g, q)
    } else {
        psi_shock(g, q)
    }
}

pub fn phi(dir: Direction, q: f64, g: &GasConstants) -> Result<f64> {
    positive("q", q)?;
    Ok(match dir {
        Direction::Backward => phi_b(g, q),
        Direction::Forward => phi_f(g, q),
    })
}

pub fn psi(dir: Direction, q: f64, g: &GasConstants) -> Result<f64> {
    positive("q", q)?;
    Ok(match dir {
        Direction::Backward => psi_b(g, q),
        Direction::Forward => psi_f(g, q),
    })
}

fn check_volume_ratio(dir: Direction, q: f64, g: &GasConstants) -> Result<()> {
    let ok = match dir {
        Direction::Backward => q > g.a && q.is_finite(),
        Direction::Forward => q > 0.0 && q < 1.0 / g.a,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "volume ratio",
            value: q,
            range: match dir {
                Direction::Backward => "(a, inf)",
                Direction::Forward => "(0, 1/a)",
            },
        })
    }
}

pub fn xi(dir: Direction, q: f64, g: &GasConstants) -> Result<f64> {
    check_volume_ratio(dir, q, g)?;
    let rarefaction = match dir {
        Direction::Backward => q >= 1.0,
        Direction::Forward => q <= 1.0,
    };
    Ok(if rarefaction {
        xi_rarefaction(g, q)
    } else {
        xi_shock(g, q)
    })
}

pub fn eta(dir: Direction, q: f64, g: &GasConstants) -> Result<f64> {
    check_volume_ratio(dir, q, g)?;
    let rarefaction = match dir {
        Direction::Backward => q >= 1.0,
        Direction::Forward => q <= 1.0,
    };
    Ok(if rarefaction { 0.0 } else { log_gamma_fn(g, q) })
}

/// Function-pointer bundle for the pressure kernels, so checks can run against
/// alternative implementations.
#[derive(Clone, Copy)]
pub struct KernelSet {
    pub phi_b: fn(&GasConstants, f64) -> f64,
    pub phi_f: fn(&GasConstants, f64) -> f64,
    pub psi_b: fn(&GasConstants, f64) -> f64,
    pub psi_f: fn(&GasConstants, f64) -> f64,
}

impl Default for KernelSet {
    fn default() -> Self {
        Self {
            phi_b,
            phi_f,
            psi_b,
            psi_f,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gas(g: f64) -> GasConstants {
        GasConstants::new(g).unwrap()
    }

    const GAMMAS: [f64; 6] = [1.2, 1.4, 5.0 / 3.0, 1.9, 2.0, 3.0];

    #[test]
    fn phi_examples() {
        let g = gas(5.0 / 3.0);
        assert_eq!(phi(Direction::Backward, 1.0, &g).unwrap(), 1.0);
        assert_relative_eq!(phi_b(&g, 2.0), 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(phi_b(&g, 0.5), 2f64.powf(0.6), max_relative = 1e-15);
        assert_relative_eq!(phi_b(&g, 0.5), 1.51572, epsilon = 1e-5);
        assert!(phi(Direction::Forward, 0.0, &g).is_err());
        assert!(phi(Direction::Backward, -1.0, &g).is_err());
    }

    #[test]
    fn psi_examples() {
        let g = gas(5.0 / 3.0);
        assert_eq!(psi_b(&g, 1.0), 0.0);
        assert_relative_eq!(psi_b(&g, 2.0), 1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(psi_f(&g, 0.5), -0.5, max_relative = 1e-15);
        assert!(psi(Direction::Backward, 0.0, &g).is_err());
    }

    #[test]
    fn psi_limits() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            // ψ⃖(q) + ν = ν q^ζ decays slowly; at q = 1e-300 it is far below 1e-9.
            assert!((psi_b(&g, 1e-300) + g.nu).abs() < 1e-9);
            assert_relative_eq!(psi_b(&g, 1e-12) + g.nu, g.nu * 1e-12f64.powf(g.zeta), max_relative = 1e-9);
            assert_relative_eq!(psi_f(&g, 1e-300), -((1.0 - g.a) / g.a).sqrt(), max_relative = 1e-12);
            assert_relative_eq!(phi_b(&g, 1e15), g.a, max_relative = 1e-12);
            assert!(psi_b(&g, 1e30) > 1e10 && psi_f(&g, 1e300) > 1e10);
        }
    }

    #[test]
    fn xi_and_eta_examples() {
        let g = gas(5.0 / 3.0);
        assert_eq!(xi(Direction::Backward, 1.0, &g).unwrap(), 0.0);
        assert_relative_eq!(
            xi(Direction::Backward, 2.0, &g).unwrap(),
            15f64.sqrt() * (2f64.powf(-1.0 / 3.0) - 1.0),
            max_relative = 1e-14
        );
        assert_relative_eq!(xi(Direction::Backward, 2.0, &g).unwrap(), -0.7989944272, epsilon = 1e-10);
        // ξ⃗ stays bounded at the strong-shock end: the limit is −√((1−a)/a).
        assert_relative_eq!(xi(Direction::Forward, 4.0 - 1e-12, &g).unwrap(), -3f64.sqrt(), max_relative = 1e-9);
        assert!(xi(Direction::Backward, 0.25 + 1e-14, &g).unwrap() > 1e6);
        assert!(xi(Direction::Forward, 4.0, &g).is_err());
        assert!(xi(Direction::Backward, 0.25, &g).is_err());

        assert_eq!(eta(Direction::Backward, 1.5, &g).unwrap(), 0.0);
        // log Γ(1/2) and log Γ(2) at γ = 5/3 (50-digit reference values)
        assert_relative_eq!(eta(Direction::Backward, 0.5, &g).unwrap(), 0.0975176676, epsilon = 1e-10);
        assert_relative_eq!(eta(Direction::Forward, 2.0, &g).unwrap(), -0.0975176676, epsilon = 1e-10);
        assert!(eta(Direction::Forward, 0.0, &g).is_err());
    }

    #[test]
    fn eta_signs_on_shock_branches() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            for i in 1..200 {
                let t = i as f64 / 200.0;
                let l = g.a + (1.0 - g.a) * t;
                let e = eta(Direction::Backward, l, &g).unwrap();
                assert!(e > 0.0 || (1.0 - l) < 1e-4, "γ={gm} l={l} η={e}");
                let s = 1.0 + (1.0 / g.a - 1.0) * t;
                let e = eta(Direction::Forward, s, &g).unwrap();
                assert!(e < 0.0 || (s - 1.0) < 1e-4, "γ={gm} ι={s} η={e}");
            }
        }
    }

    #[test]
    fn product_relation_spot_value() {
        let g = gas(5.0 / 3.0);
        assert_relative_eq!(psi_b(&g, 0.5), -0.5013555125, epsilon = 1e-10);
        assert_relative_eq!(psi_f(&g, 2.0), 0.5759062525, epsilon = 1e-10);
        let lhs = (2.0 * phi_f(&g, 2.0)).sqrt() * psi_b(&g, 0.5);
        assert_relative_eq!(lhs, -psi_f(&g, 2.0), max_relative = 1e-14);
    }

    fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    }

    #[test]
    fn branches_join_to_second_order() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            let pairs: [(fn(&GasConstants, f64) -> f64, fn(&GasConstants, f64) -> f64); 3] = [
                (phi_rarefaction, phi_shock),
                (psi_rarefaction, psi_shock),
                (xi_rarefaction, xi_shock),
            ];
            for (r, s) in pairs {
                assert!((r(&g, 1.0) - s(&g, 1.0)).abs() < 1e-15);
                let (dr, ds) = (d1(|q| r(&g, q), 1.0, 1e-5), d1(|q| s(&g, q), 1.0, 1e-5));
                assert!((dr - ds).abs() < 1e-6, "γ={gm} {dr} {ds}");
                let (dr, ds) = (d2(|q| r(&g, q), 1.0, 1e-4), d2(|q| s(&g, q), 1.0, 1e-4));
                assert!((dr - ds).abs() < 1e-6 * (1.0 + dr.abs()), "γ={gm} {dr} {ds}");
            }
            let lg = |q: f64| log_gamma_fn(&g, q);
            assert!(lg(1.0).abs() < 1e-15);
            assert!(d1(lg, 1.0, 1e-5).abs() < 1e-6);
            assert!(d2(lg, 1.0, 1e-4).abs() < 1e-6);
        }
    }

    #[test]
    fn monotone_on_fine_grid() {
        for &gm in &GAMMAS {
            let g = gas(gm);
            let mut prev: Option<[f64; 4]> = None;
            for i in 0..=4000 {
                let q = 10f64.powf(-6.0 + 12.0 * i as f64 / 4000.0);
                let v = [phi_b(&g, q), phi_f(&g, q), psi_b(&g, q), psi_f(&g, q)];
                if let Some(p) = prev {
                    assert!(v[0] < p[0] && v[1] < p[1], "φ not decreasing at {q}");
                    assert!(v[2] > p[2] && v[3] > p[3], "ψ not increasing at {q}");
                }
                prev = Some(v);
            }
            let mut last = (f64::INFINITY, f64::INFINITY);
            for i in 1..4000 {
                let t = i as f64 / 4000.0;
                let l = g.a + (4.0 - g.a) * t;
                let s = (1.0 / g.a) * t;
                let v = (
                    xi(Direction::Backward, l, &g).unwrap(),
                    xi(Direction::Forward, s, &g).unwrap(),
                );
                assert!(v.0 < last.0 && v.1 < last.1, "ξ not decreasing at γ={gm} t={t}");
                last = v;
            }
        }
    }
}
