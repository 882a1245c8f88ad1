//! Polytropic gas law, its derived constants and the two state representations.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};

/// Exponents above this still work but the transition curves crowd together.
pub const GAMMA_SOFT_MAX: f64 = 10.0;

/// The adiabatic exponent together with the combinations that appear in every wave formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasConstants {
    pub gamma: f64,
    /// (γ−1)/(γ+1)
    pub a: f64,
    /// √(1−a)
    pub kappa: f64,
    /// √(1−a²)/a
    pub nu: f64,
    /// a/(1+a) = (γ−1)/(2γ)
    pub zeta: f64,
}

impl GasConstants {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidGamma(gamma));
        }
        let a = (gamma - 1.0) / (gamma + 1.0);
        Ok(Self {
            gamma,
            a,
            kappa: (1.0 - a).sqrt(),
            nu: (1.0 - a * a).sqrt() / a,
            zeta: a / (1.0 + a),
        })
    }

    pub fn is_extreme(&self) -> bool {
        self.gamma > GAMMA_SOFT_MAX
    }

    pub fn sound_speed(&self, s: &PrimitiveState) -> f64 {
        (self.gamma * s.tau * s.p).sqrt()
    }

    /// Lagrangian sound speed √(γp/τ), the characteristic speed in mass coordinates.
    pub fn lagrangian_speed(&self, s: &PrimitiveState) -> f64 {
        (self.gamma * s.p / s.tau).sqrt()
    }

    pub fn entropy_from_primitive(
        &self,
        s: &PrimitiveState,
        reference: &ReferenceConstants,
    ) -> EntropyState {
        let entropy = reference.c_v * (s.p.ln() + self.gamma * s.tau.ln() - reference.k.ln());
        EntropyState {
            tau: s.tau,
            u: s.u,
            s: entropy,
        }
    }

    pub fn primitive_from_entropy(
        &self,
        s: &EntropyState,
        reference: &ReferenceConstants,
    ) -> PrimitiveState {
        let p = reference.k * (s.s / reference.c_v - self.gamma * s.tau.ln()).exp();
        PrimitiveState {
            tau: s.tau,
            u: s.u,
            p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveState {
    pub tau: f64,
    pub u: f64,
    pub p: f64,
}

impl PrimitiveState {
    pub fn new(tau: f64, u: f64, p: f64) -> Result<Self> {
        positive("tau", tau)?;
        positive("p", p)?;
        if !u.is_finite() {
            return Err(Error::Domain {
                name: "u",
                value: u,
                range: "finite reals",
            });
        }
        Ok(Self { tau, u, p })
    }

    /// Internal energy pτ/(γ−1).
    pub fn internal_energy(&self, gas: &GasConstants) -> f64 {
        self.p * self.tau / (gas.gamma - 1.0)
    }

    /// Reflection x → −x.
    pub fn reflected(&self) -> Self {
        Self {
            u: -self.u,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyState {
    pub tau: f64,
    pub u: f64,
    pub s: f64,
}

impl EntropyState {
    pub fn new(tau: f64, u: f64, s: f64) -> Result<Self> {
        positive("tau", tau)?;
        Ok(Self { tau, u, s })
    }
}

/// Scale constants in p = K τ^{−γ} exp(S/c_v).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceConstants {
    pub k: f64,
    pub c_v: f64,
}

impl ReferenceConstants {
    pub fn new(k: f64, c_v: f64) -> Result<Self> {
        positive("K", k)?;
        positive("c_v", c_v)?;
        Ok(Self { k, c_v })
    }
}

impl Default for ReferenceConstants {
    fn default() -> Self {
        Self { k: 1.0, c_v: 1.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn five_thirds_constants() {
        let g = GasConstants::new(5.0 / 3.0).unwrap();
        assert_relative_eq!(g.a, 0.25, epsilon = 1e-15);
        assert_relative_eq!(g.kappa, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_relative_eq!(g.nu, 15f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(g.zeta, 0.2, epsilon = 1e-15);
    }

    #[test]
    fn diatomic_and_gamma_two() {
        let g = GasConstants::new(1.4).unwrap();
        assert_relative_eq!(g.a, 1.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(g.zeta, 1.0 / 7.0, epsilon = 1e-15);
        assert_relative_eq!(g.kappa, (5.0f64 / 6.0).sqrt(), epsilon = 1e-15);
        assert_relative_eq!(g.nu, 35f64.sqrt(), epsilon = 1e-13);
        assert_relative_eq!(GasConstants::new(2.0).unwrap().a, 1.0 / 3.0, epsilon = 1e-16);
    }

    #[test]
    fn rejects_bad_gamma() {
        assert!(GasConstants::new(1.0).is_err());
        assert!(GasConstants::new(0.5).is_err());
        assert!(GasConstants::new(f64::NAN).is_err());
        assert!(GasConstants::new(12.0).unwrap().is_extreme());
    }

    #[test]
    fn sound_speeds() {
        let g = GasConstants::new(5.0 / 3.0).unwrap();
        let s = PrimitiveState::new(1.0, 0.0, 1.0).unwrap();
        assert_relative_eq!(g.sound_speed(&s), (5.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        let g = GasConstants::new(1.4).unwrap();
        let s = PrimitiveState::new(4.0, 0.0, 0.25).unwrap();
        assert_relative_eq!(g.sound_speed(&s), 1.4f64.sqrt(), epsilon = 1e-15);
        let s = PrimitiveState { tau: 1.0, u: 0.0, p: 1e-300 };
        assert!(g.sound_speed(&s) < 1e-149);
    }

    #[test]
    fn entropy_examples() {
        let g = GasConstants::new(5.0 / 3.0).unwrap();
        let r = ReferenceConstants::default();
        let e = |t, u, p| g.entropy_from_primitive(&PrimitiveState::new(t, u, p).unwrap(), &r).s;
        assert_eq!(e(1.0, 0.0, 1.0), 0.0);
        assert!(e(2.0, 0.0, 2f64.powf(-g.gamma)).abs() < 1e-15);
        assert_relative_eq!(e(1.0, 3.0, std::f64::consts::E), 1.0, epsilon = 1e-15);

        let p = g.primitive_from_entropy(&EntropyState::new(2.0, 0.0, 0.0).unwrap(), &r);
        assert_relative_eq!(p.p, 2f64.powf(-5.0 / 3.0), max_relative = 1e-15);
        assert_relative_eq!(p.p, 0.31498, epsilon = 1e-5);

        let s = PrimitiveState::new(0.3, -2.0, 7.0).unwrap();
        let back = g.primitive_from_entropy(&g.entropy_from_primitive(&s, &r), &r);
        assert_relative_eq!(back.p, s.p, max_relative = 1e-12);
        assert_eq!(back.tau, s.tau);
        assert_eq!(back.u, s.u);
    }

    #[test]
    fn rejects_bad_states() {
        assert!(PrimitiveState::new(0.0, 0.0, 1.0).is_err());
        assert!(PrimitiveState::new(1.0, 0.0, -1.0).is_err());
        assert!(PrimitiveState::new(1.0, f64::INFINITY, 1.0).is_err());
        assert!(ReferenceConstants::new(0.0, 1.0).is_err());
    }
}
