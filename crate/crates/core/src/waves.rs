//! Single elementary waves: application to a state, typing, inversion and speeds.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::gas::{EntropyState, GasConstants, PrimitiveState, ReferenceConstants};
use crate::kernels::{self, Direction};

/// Strengths this close to 1 count as no wave at all.
pub const NULL_BAND: f64 = 1e-12;

pub fn is_null(strength: f64) -> bool {
    (strength - 1.0).abs() <= NULL_BAND
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveFamily {
    BackwardAcoustic,
    Contact,
    ForwardAcoustic,
}

impl WaveFamily {
    pub fn direction(self) -> Option<Direction> {
        match self {
            WaveFamily::BackwardAcoustic => Some(Direction::Backward),
            WaveFamily::Contact => None,
            WaveFamily::ForwardAcoustic => Some(Direction::Forward),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveType {
    Shock,
    Rarefaction,
    /// Specific volume (and entropy) increases from left to right.
    ContactUp,
    ContactDown,
    Null,
}

/// Sign of the entropy change from the left to the right side of a contact or vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntropyJump {
    Up,
    Down,
    None,
}

impl EntropyJump {
    pub fn from_contact(c: f64) -> Self {
        if is_null(c) {
            EntropyJump::None
        } else if c > 1.0 {
            EntropyJump::Up
        } else {
            EntropyJump::Down
        }
    }
}

pub fn wave_type_of(family: WaveFamily, strength: f64) -> WaveType {
    if is_null(strength) {
        return WaveType::Null;
    }
    match family {
        WaveFamily::BackwardAcoustic if strength > 1.0 => WaveType::Shock,
        WaveFamily::BackwardAcoustic => WaveType::Rarefaction,
        WaveFamily::ForwardAcoustic if strength < 1.0 => WaveType::Shock,
        WaveFamily::ForwardAcoustic => WaveType::Rarefaction,
        WaveFamily::Contact if strength > 1.0 => WaveType::ContactUp,
        WaveFamily::Contact => WaveType::ContactDown,
    }
}

/// State on the right of a wave of the given strength (pressure ratio for acoustic
/// waves, specific-volume ratio for contacts).
pub fn apply_wave_primitive(
    family: WaveFamily,
    strength: f64,
    left: &PrimitiveState,
    gas: &GasConstants,
) -> Result<PrimitiveState> {
    positive("strength", strength)?;
    Ok(apply_unchecked(family, strength, left, gas))
}

pub(crate) fn apply_unchecked(
    family: WaveFamily,
    s: f64,
    left: &PrimitiveState,
    gas: &GasConstants,
) -> PrimitiveState {
    let scale = (left.tau * left.p).sqrt();
    match family {
        WaveFamily::BackwardAcoustic => PrimitiveState {
            tau: kernels::phi_b(gas, s) * left.tau,
            u: left.u - kernels::psi_b(gas, s) * scale,
            p: s * left.p,
        },
        WaveFamily::Contact => PrimitiveState {
            tau: s * left.tau,
            ..*left
        },
        WaveFamily::ForwardAcoustic => PrimitiveState {
            tau: kernels::phi_f(gas, s) * left.tau,
            u: left.u + kernels::psi_f(gas, s) * scale,
            p: s * left.p,
        },
    }
}

/// Same as [`apply_wave_primitive`] in (τ, u, S) variables; `strength` is the
/// specific-volume ratio for every family.
pub fn apply_wave_entropy(
    family: WaveFamily,
    strength: f64,
    left: &EntropyState,
    gas: &GasConstants,
    reference: &ReferenceConstants,
) -> Result<EntropyState> {
    let p = gas.primitive_from_entropy(left, reference).p;
    let scale = (left.tau * p).sqrt();
    Ok(match family {
        WaveFamily::BackwardAcoustic => EntropyState {
            tau: strength * left.tau,
            u: left.u - kernels::xi(Direction::Backward, strength, gas)? * scale,
            s: left.s + reference.c_v * kernels::eta(Direction::Backward, strength, gas)?,
        },
        WaveFamily::Contact => {
            positive("strength", strength)?;
            EntropyState {
                tau: strength * left.tau,
                u: left.u,
                s: left.s + reference.c_v * gas.gamma * strength.ln(),
            }
        }
        WaveFamily::ForwardAcoustic => EntropyState {
            tau: strength * left.tau,
            u: left.u + kernels::xi(Direction::Forward, strength, gas)? * scale,
            s: left.s + reference.c_v * kernels::eta(Direction::Forward, strength, gas)?,
        },
    })
}

/// Largest mismatch accepted by [`measure_strength`].
pub const CONNECTION_TOL: f64 = 1e-8;

/// Recovers the strength of the single wave joining `left` to `right`.
pub fn measure_strength(
    family: WaveFamily,
    left: &PrimitiveState,
    right: &PrimitiveState,
    gas: &GasConstants,
) -> Result<f64> {
    let s = match family {
        WaveFamily::Contact => right.tau / left.tau,
        _ => right.p / left.p,
    };
    let predicted = apply_unchecked(family, s, left, gas);
    let scale = (left.tau * left.p).sqrt() + (right.tau * right.p).sqrt();
    let residual = (predicted.tau / right.tau - 1.0).abs()
        + (predicted.p / right.p - 1.0).abs()
        + (predicted.u - right.u).abs() / scale;
    if residual > CONNECTION_TOL || !residual.is_finite() {
        return Err(Error::NotConnected { family, residual });
    }
    Ok(s)
}

/// Lagrangian speeds of the leading and trailing edge of a wave. Both are equal
/// for shocks, contacts and null waves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedInterval {
    pub head: f64,
    pub tail: f64,
}

impl SpeedInterval {
    pub fn lo(&self) -> f64 {
        self.head.min(self.tail)
    }

    pub fn hi(&self) -> f64 {
        self.head.max(self.tail)
    }
}

pub fn wave_speed(
    family: WaveFamily,
    strength: f64,
    left: &PrimitiveState,
    gas: &GasConstants,
) -> Result<SpeedInterval> {
    positive("strength", strength)?;
    let right = apply_unchecked(family, strength, left, gas);
    let (cl, cr) = (gas.lagrangian_speed(left), gas.lagrangian_speed(&right));
    let point = |s: f64| SpeedInterval { head: s, tail: s };
    Ok(match (family, wave_type_of(family, strength)) {
        (WaveFamily::Contact, _) => point(0.0),
        (WaveFamily::BackwardAcoustic, WaveType::Shock) => {
            point(-((right.p - left.p) / (left.tau - right.tau)).sqrt())
        }
        (WaveFamily::BackwardAcoustic, WaveType::Null) => point(-cl),
        (WaveFamily::BackwardAcoustic, _) => SpeedInterval { head: -cl, tail: -cr },
        (WaveFamily::ForwardAcoustic, WaveType::Shock) => {
            point(((right.p - left.p) / (left.tau - right.tau)).sqrt())
        }
        (WaveFamily::ForwardAcoustic, WaveType::Null) => point(cl),
        (WaveFamily::ForwardAcoustic, _) => SpeedInterval { head: cr, tail: cl },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn gas(g: f64) -> GasConstants {
        GasConstants::new(g).unwrap()
    }

    fn st(tau: f64, u: f64, p: f64) -> PrimitiveState {
        PrimitiveState::new(tau, u, p).unwrap()
    }

    #[test]
    fn apply_examples() {
        let g = gas(5.0 / 3.0);
        let s = st(1.3, 0.7, 2.1);
        assert_eq!(apply_wave_primitive(WaveFamily::BackwardAcoustic, 1.0, &s, &g).unwrap(), s);
        let r = apply_wave_primitive(WaveFamily::BackwardAcoustic, 2.0, &st(1.0, 0.0, 1.0), &g).unwrap();
        assert_relative_eq!(r.tau, 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(r.u, -1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_eq!(r.p, 2.0);
        let r = apply_wave_primitive(WaveFamily::Contact, 3.0, &st(1.0, 5.0, 2.0), &g).unwrap();
        assert_eq!(r, st(3.0, 5.0, 2.0));
        assert!(apply_wave_primitive(WaveFamily::ForwardAcoustic, 0.0, &s, &g).is_err());
    }

    #[test]
    fn entropy_form_examples() {
        let g = gas(1.4);
        let r = ReferenceConstants::new(2.0, 0.5).unwrap();
        let s = EntropyState::new(1.5, -0.3, 0.8).unwrap();
        let c = apply_wave_entropy(WaveFamily::Contact, 2.5, &s, &g, &r).unwrap();
        assert_relative_eq!(c.tau, 3.75);
        assert_eq!(c.u, s.u);
        assert_relative_eq!(c.s, 0.8 + 0.5 * 1.4 * 2.5f64.ln(), max_relative = 1e-15);
        assert_eq!(apply_wave_entropy(WaveFamily::BackwardAcoustic, 1.0, &s, &g, &r).unwrap(), s);
        assert!(apply_wave_entropy(WaveFamily::ForwardAcoustic, 1.0 / g.a, &s, &g, &r).is_err());
    }

    #[test]
    fn typing() {
        assert_eq!(wave_type_of(WaveFamily::BackwardAcoustic, 2.0), WaveType::Shock);
        assert_eq!(wave_type_of(WaveFamily::BackwardAcoustic, 0.5), WaveType::Rarefaction);
        assert_eq!(wave_type_of(WaveFamily::ForwardAcoustic, 2.0), WaveType::Rarefaction);
        assert_eq!(wave_type_of(WaveFamily::ForwardAcoustic, 0.5), WaveType::Shock);
        assert_eq!(wave_type_of(WaveFamily::Contact, 1.0), WaveType::Null);
        assert_eq!(wave_type_of(WaveFamily::Contact, 1.0 + 5e-13), WaveType::Null);
        assert_eq!(wave_type_of(WaveFamily::Contact, 1.5), WaveType::ContactUp);
        assert_eq!(wave_type_of(WaveFamily::Contact, 0.5), WaveType::ContactDown);
    }

    #[test]
    fn measure_examples() {
        let g = gas(1.4);
        let l = st(0.8, 0.2, 3.0);
        let r = apply_wave_primitive(WaveFamily::BackwardAcoustic, 0.3, &l, &g).unwrap();
        assert_relative_eq!(
            measure_strength(WaveFamily::BackwardAcoustic, &l, &r, &g).unwrap(),
            0.3,
            max_relative = 1e-12
        );
        let c = measure_strength(WaveFamily::Contact, &st(1.0, 1.0, 1.0), &st(4.0, 1.0, 1.0), &g);
        assert_eq!(c.unwrap(), 4.0);
        let bad = measure_strength(WaveFamily::ForwardAcoustic, &l, &st(0.8, 0.2, 5.0), &g);
        assert!(matches!(bad, Err(Error::NotConnected { .. })));
        assert!(measure_strength(WaveFamily::Contact, &l, &st(2.0, 0.0, 3.0), &g).is_err());
    }

    #[test]
    fn speed_examples() {
        let g = gas(5.0 / 3.0);
        let s = st(1.0, 0.0, 1.0);
        let c = wave_speed(WaveFamily::Contact, 7.0, &s, &g).unwrap();
        assert_eq!((c.head, c.tail), (0.0, 0.0));
        let n = wave_speed(WaveFamily::BackwardAcoustic, 1.0, &s, &g).unwrap();
        assert_relative_eq!(n.head, -(5.0f64 / 3.0).sqrt());
        assert_eq!(n.head, n.tail);
        let sh = wave_speed(WaveFamily::BackwardAcoustic, 2.0, &s, &g).unwrap();
        assert_relative_eq!(sh.head, -3f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn shocks_satisfy_lax_condition() {
        for &gm in &[1.2, 1.4, 5.0 / 3.0, 2.0, 3.0] {
            let g = gas(gm);
            let l = st(1.1, 0.3, 0.9);
            for i in 1..=60 {
                let b = 1.0 + 0.2 * i as f64;
                let r = apply_unchecked(WaveFamily::BackwardAcoustic, b, &l, &g);
                let s = wave_speed(WaveFamily::BackwardAcoustic, b, &l, &g).unwrap().head;
                assert!(-g.lagrangian_speed(&r) < s && s < -g.lagrangian_speed(&l));
                let f = 1.0 / b;
                let r = apply_unchecked(WaveFamily::ForwardAcoustic, f, &l, &g);
                let s = wave_speed(WaveFamily::ForwardAcoustic, f, &l, &g).unwrap().head;
                assert!(g.lagrangian_speed(&r) < s && s < g.lagrangian_speed(&l));
            }
        }
    }

    fn family() -> impl Strategy<Value = WaveFamily> {
        prop_oneof![
            Just(WaveFamily::BackwardAcoustic),
            Just(WaveFamily::Contact),
            Just(WaveFamily::ForwardAcoustic)
        ]
    }

    fn gamma() -> impl Strategy<Value = f64> {
        prop_oneof![Just(1.2), Just(1.4), Just(5.0 / 3.0), Just(1.9), Just(2.0), Just(3.0)]
    }

    proptest! {
        #[test]
        fn entropy_and_pressure_forms_agree(
            fam in family(), gm in gamma(), ls in -3.0f64..3.0,
            tau in 0.1f64..10.0, u in -5.0f64..5.0, p in 0.1f64..10.0,
        ) {
            let g = gas(gm);
            let r = ReferenceConstants::default();
            let s = 10f64.powf(ls);
            let left = st(tau, u, p);
            let right = apply_unchecked(fam, s, &left, &g);
            let ratio = right.tau / left.tau;
            let e = apply_wave_entropy(fam, ratio, &g.entropy_from_primitive(&left, &r), &g, &r).unwrap();
            let back = g.primitive_from_entropy(&e, &r);
            prop_assert!((back.tau / right.tau - 1.0).abs() < 1e-10);
            prop_assert!((back.p / right.p - 1.0).abs() < 1e-10);
            prop_assert!((back.u - right.u).abs() < 1e-10 * (1.0 + right.u.abs()));
        }

        #[test]
        fn measure_inverts_apply(fam in family(), gm in gamma(), ls in -3.0f64..3.0) {
            let g = gas(gm);
            let left = st(0.7, -1.0, 2.0);
            let s = 10f64.powf(ls);
            let right = apply_unchecked(fam, s, &left, &g);
            let m = measure_strength(fam, &left, &right, &g).unwrap();
            prop_assert!((m / s - 1.0).abs() < 1e-12);
        }

        #[test]
        fn entropy_across_waves(gm in gamma(), ls in 0.001f64..3.0) {
            let g = gas(gm);
            let r = ReferenceConstants::default();
            let left = st(1.3, 0.0, 0.6);
            let sl = g.entropy_from_primitive(&left, &r).s;
            let s = 10f64.powf(ls);
            let entropy = |fam, q| g.entropy_from_primitive(&apply_unchecked(fam, q, &left, &g), &r).s;
            // Gas crosses backward shocks from left to right and forward shocks from right to left.
            prop_assert!(entropy(WaveFamily::BackwardAcoustic, s) > sl);
            prop_assert!(entropy(WaveFamily::ForwardAcoustic, 1.0 / s) < sl);
            prop_assert!((entropy(WaveFamily::BackwardAcoustic, 1.0 / s) - sl).abs() < 1e-12);
            prop_assert!((entropy(WaveFamily::ForwardAcoustic, s) - sl).abs() < 1e-12);
        }

        #[test]
        fn speeds_have_family_sign(fam in family(), gm in gamma(), ls in -3.0f64..3.0) {
            let g = gas(gm);
            let v = wave_speed(fam, 10f64.powf(ls), &st(2.0, 1.0, 0.5), &g).unwrap();
            match fam {
                WaveFamily::BackwardAcoustic => prop_assert!(v.hi() < 0.0),
                WaveFamily::Contact => prop_assert!(v.lo() == 0.0 && v.hi() == 0.0),
                WaveFamily::ForwardAcoustic => prop_assert!(v.lo() > 0.0),
            }
        }
    }
}
