//! Exact Riemann solver in Lagrangian coordinates.
//!
//! The middle pressure is B·p̄. B solves 𝓕(B) = (ū − u)/√(τ̄p̄) where
//! 𝓕(B) = ψ⃖(B) + √(τp/(τ̄p̄)) ψ⃖(p̄B/p) is strictly increasing. F and C follow
//! from p = B F p̄ and τ = φ⃖(B) C φ⃗(F) τ̄.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::gas::{GasConstants, PrimitiveState, ReferenceConstants};
use crate::kernels::{phi_b, phi_f, psi_b, psi_f};
use crate::roots::{increasing_positive_root, Root};
use crate::waves::{
    apply_unchecked, wave_speed, wave_type_of, EntropyJump, SpeedInterval, WaveFamily, WaveType,
};

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strengths {
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "F")]
    pub f: f64,
}

impl Strengths {
    pub fn types(&self) -> [WaveType; 3] {
        [
            wave_type_of(WaveFamily::BackwardAcoustic, self.b),
            wave_type_of(WaveFamily::Contact, self.c),
            wave_type_of(WaveFamily::ForwardAcoustic, self.f),
        ]
    }

    /// Strengths seen after reflecting x → −x.
    pub fn reflected(&self) -> Self {
        Self {
            b: 1.0 / self.f,
            c: 1.0 / self.c,
            f: 1.0 / self.b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacuumFan {
    pub s_left: f64,
    pub s_right: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RiemannResiduals {
    /// 𝓕(B) minus its target.
    pub curve: f64,
    /// Difference of the middle velocities reached from the two sides, over √(τ̄p̄) + √(τp).
    pub velocity: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiemannSolution {
    pub vacuum: bool,
    pub strengths: Option<Strengths>,
    pub left_middle: Option<PrimitiveState>,
    pub right_middle: Option<PrimitiveState>,
    pub wave_types: [WaveType; 3],
    pub speeds: Option<[SpeedInterval; 3]>,
    pub fan: Option<VacuumFan>,
    pub entropy_jump: EntropyJump,
    pub residuals: RiemannResiduals,
}

pub fn curve_function(
    b: f64,
    left: &PrimitiveState,
    right: &PrimitiveState,
    gas: &GasConstants,
) -> Result<f64> {
    positive("B", b)?;
    Ok(curve_unchecked(b, left, right, gas))
}

fn curve_unchecked(b: f64, left: &PrimitiveState, right: &PrimitiveState, gas: &GasConstants) -> f64 {
    let r = ((right.tau * right.p) / (left.tau * left.p)).sqrt();
    psi_b(gas, b) + r * psi_b(gas, left.p * b / right.p)
}

pub fn vacuum_check(left: &PrimitiveState, right: &PrimitiveState, gas: &GasConstants) -> bool {
    right.u - left.u >= 2.0 / (gas.gamma - 1.0) * (gas.sound_speed(left) + gas.sound_speed(right))
}

pub fn solve(
    left: &PrimitiveState,
    right: &PrimitiveState,
    gas: &GasConstants,
    tol: f64,
) -> Result<RiemannSolution> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    if vacuum_check(left, right, gas) {
        return assemble_fan(left, right, gas);
    }
    let scale = (left.tau * left.p).sqrt();
    let target = (left.u - right.u) / scale;
    let pr = right.p / left.p;
    let root = if curve_unchecked(1.0, left, right, gas) == target {
        Root { x: 1.0, residual: 0.0, iterations: 0 }
    } else {
        increasing_positive_root(
            |b| curve_unchecked(b, left, right, gas) - target,
            pr.min(1.0) * 0.5,
            pr.max(1.0) * 2.0,
            tol,
        )?
    };
    let b = root.x;
    let f = pr / b;

    let mut lm = apply_unchecked(WaveFamily::BackwardAcoustic, b, left, gas);
    let p_mid = lm.p;
    let tau_rm = right.tau / phi_f(gas, f);
    let u_rm = right.u - psi_f(gas, f) * (tau_rm * p_mid).sqrt();
    let gap = lm.u - u_rm;
    let u_mid = 0.5 * (lm.u + u_rm);
    lm.u = u_mid;
    let rm = PrimitiveState {
        tau: tau_rm,
        u: u_mid,
        p: p_mid,
    };
    let c = right.tau / (phi_b(gas, b) * phi_f(gas, f) * left.tau);
    let strengths = Strengths { b, c, f };
    let speeds = [
        wave_speed(WaveFamily::BackwardAcoustic, b, left, gas)?,
        SpeedInterval { head: 0.0, tail: 0.0 },
        wave_speed(WaveFamily::ForwardAcoustic, f, &rm, gas)?,
    ];
    Ok(RiemannSolution {
        vacuum: false,
        strengths: Some(strengths),
        left_middle: Some(lm),
        right_middle: Some(rm),
        wave_types: strengths.types(),
        speeds: Some(speeds),
        fan: None,
        entropy_jump: EntropyJump::from_contact(c),
        residuals: RiemannResiduals {
            curve: root.residual,
            velocity: gap / (scale + (right.tau * right.p).sqrt()),
            iterations: root.iterations,
        },
    })
}

/// Relative entropy change below which a vacuum is said to carry no entropy jump.
const ENTROPY_TIE: f64 = 1e-12;

pub fn assemble_fan(
    left: &PrimitiveState,
    right: &PrimitiveState,
    gas: &GasConstants,
) -> Result<RiemannSolution> {
    if !vacuum_check(left, right, gas) {
        return Err(Error::NoVacuum);
    }
    let reference = ReferenceConstants::default();
    let sl = gas.entropy_from_primitive(left, &reference).s;
    let sr = gas.entropy_from_primitive(right, &reference).s;
    let jump = if (sr - sl).abs() <= ENTROPY_TIE * (1.0 + sl.abs().max(sr.abs())) {
        EntropyJump::None
    } else if sr > sl {
        EntropyJump::Up
    } else {
        EntropyJump::Down
    };
    Ok(RiemannSolution {
        vacuum: true,
        strengths: None,
        left_middle: None,
        right_middle: None,
        wave_types: [WaveType::Rarefaction, WaveType::Null, WaveType::Rarefaction],
        speeds: None,
        fan: Some(VacuumFan {
            s_left: -gas.lagrangian_speed(left),
            s_right: gas.lagrangian_speed(right),
        }),
        entropy_jump: jump,
        residuals: RiemannResiduals::default(),
    })
}

/// Rebuilds the right state by applying B, C and F to the left state and returns the
/// largest relative mismatch.
pub fn recomposition_error(
    left: &PrimitiveState,
    right: &PrimitiveState,
    s: &Strengths,
    gas: &GasConstants,
) -> f64 {
    let m = apply_unchecked(WaveFamily::BackwardAcoustic, s.b, left, gas);
    let m = apply_unchecked(WaveFamily::Contact, s.c, &m, gas);
    let r = apply_unchecked(WaveFamily::ForwardAcoustic, s.f, &m, gas);
    let scale = (left.tau * left.p).sqrt() + (right.tau * right.p).sqrt();
    (r.tau / right.tau - 1.0)
        .abs()
        .max((r.p / right.p - 1.0).abs())
        .max((r.u - right.u).abs() / scale)
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
    fn curve_function_examples() {
        let g = gas(5.0 / 3.0);
        let s = st(1.0, 0.0, 1.0);
        assert_eq!(curve_function(1.0, &s, &s, &g).unwrap(), 0.0);
        let v = curve_function(4.0, &s, &st(1.0, 0.0, 4.0), &g).unwrap();
        assert_relative_eq!(v, g.kappa * 3.0 / 4.25f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(v, 1.2602520756, epsilon = 1e-10);
        let r = st(2.0, 0.0, 3.0);
        let lim = -g.nu * (1.0 + 6f64.sqrt());
        assert!((curve_function(1e-280, &s, &r, &g).unwrap() - lim).abs() < 1e-9);
        assert!(curve_function(0.0, &s, &r, &g).is_err());
    }

    #[test]
    fn vacuum_examples() {
        let g = gas(1.4);
        let s = st(1.0, 0.0, 1.0);
        assert!(!vacuum_check(&s, &s, &g));
        let l = st(0.7, 0.0, 2.0);
        let r0 = st(1.3, 0.0, 0.4);
        let u = 2.0 / (g.gamma - 1.0) * (g.sound_speed(&l) + g.sound_speed(&r0));
        assert!(vacuum_check(&l, &st(1.3, u, 0.4), &g));
        assert!(vacuum_check(&st(1.0, -100.0, 1.0), &st(1.0, 100.0, 1.0), &g));
    }

    #[test]
    fn fan_examples() {
        let g = gas(5.0 / 3.0);
        let sol = solve(&st(1.0, -50.0, 1.0), &st(1.0, 50.0, 1.0), &g, DEFAULT_TOL).unwrap();
        assert!(sol.vacuum && sol.strengths.is_none());
        assert_eq!(sol.entropy_jump, EntropyJump::None);
        let fan = sol.fan.unwrap();
        assert_relative_eq!(fan.s_left, -(5.0f64 / 3.0).sqrt());
        assert!(fan.s_left < 0.0 && fan.s_right > 0.0);
        let up = assemble_fan(&st(1.0, -50.0, 1.0), &st(2.0, 50.0, 1.0), &g).unwrap();
        assert_eq!(up.entropy_jump, EntropyJump::Up);
        assert!(matches!(assemble_fan(&st(1.0, 0.0, 1.0), &st(1.0, 0.0, 1.0), &g), Err(Error::NoVacuum)));
    }

    #[test]
    fn trivial_problem() {
        let g = gas(1.4);
        let s = st(2.0, 1.0, 3.0);
        let sol = solve(&s, &s, &g, DEFAULT_TOL).unwrap();
        let k = sol.strengths.unwrap();
        assert!((k.b - 1.0).abs() < 1e-13 && (k.c - 1.0).abs() < 1e-13 && (k.f - 1.0).abs() < 1e-13);
        assert_eq!(sol.wave_types, [WaveType::Null; 3]);
        assert!(solve(&s, &s, &g, 0.0).is_err());
    }

    #[test]
    fn colliding_flow_gives_two_shocks() {
        let g = gas(5.0 / 3.0);
        let (l, r) = (st(1.0, 0.0, 1.0), st(1.0, -2.0, 1.0));
        let sol = solve(&l, &r, &g, DEFAULT_TOL).unwrap();
        let k = sol.strengths.unwrap();
        assert_eq!(sol.wave_types, [WaveType::Shock, WaveType::Null, WaveType::Shock]);
        assert_relative_eq!(k.b * k.f, 1.0, max_relative = 1e-13);
        // Symmetric data: 𝓕(B) = 2ψ⃖(B) = 2, so ψ⃖(B) = κ(B−1)/√(B+a) = 1.
        assert_relative_eq!(psi_b(&g, k.b), 1.0, max_relative = 1e-12);
        assert!(recomposition_error(&l, &r, &k, &g) < 1e-12);
    }

    #[test]
    fn sod_tube() {
        // Sod data in Lagrangian form: ρ = 1, 0.125 and p = 1, 0.1 at γ = 1.4.
        // Eulerian reference for the star region: p* = 0.30313, u* = 0.92745.
        let g = gas(1.4);
        let (l, r) = (st(1.0, 0.0, 1.0), st(8.0, 0.0, 0.1));
        let sol = solve(&l, &r, &g, DEFAULT_TOL).unwrap();
        let m = sol.left_middle.unwrap();
        assert_relative_eq!(m.p, 0.30313, epsilon = 1e-5);
        assert_relative_eq!(m.u, 0.92745, epsilon = 1e-5);
        assert_eq!(sol.wave_types, [WaveType::Rarefaction, WaveType::ContactUp, WaveType::Shock]);
        assert!(recomposition_error(&l, &r, &sol.strengths.unwrap(), &g) < 1e-12);
    }

    #[test]
    fn approach_to_vacuum() {
        let g = gas(1.4);
        let (l, r0) = (st(1.0, 0.0, 1.0), st(2.0, 0.0, 0.5));
        let crit = 2.0 / (g.gamma - 1.0) * (g.sound_speed(&l) + g.sound_speed(&r0));
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let u = crit * (1.0 - 10f64.powi(-2 * k));
            let sol = solve(&l, &st(2.0, u, 0.5), &g, DEFAULT_TOL).unwrap();
            let b = sol.strengths.unwrap().b;
            assert!(b < last);
            last = b;
        }
        assert!(last < 1e-20);
    }

    fn gamma() -> impl Strategy<Value = f64> {
        prop_oneof![Just(1.2), Just(1.4), Just(5.0 / 3.0), Just(2.0), Just(3.0)]
    }

    fn state() -> impl Strategy<Value = PrimitiveState> {
        (-2.0f64..2.0, -3.0f64..3.0, -2.0f64..2.0)
            .prop_map(|(t, u, p)| st(10f64.powf(t), u, 10f64.powf(p)))
    }

    proptest! {
        #[test]
        fn recomposes_right_state(gm in gamma(), l in state(), r in state()) {
            let g = gas(gm);
            let sol = solve(&l, &r, &g, DEFAULT_TOL).unwrap();
            if let Some(k) = sol.strengths {
                prop_assert!(recomposition_error(&l, &r, &k, &g) < 1e-9);
                prop_assert!(sol.residuals.velocity.abs() < 10.0 * DEFAULT_TOL);
                let rm = sol.right_middle.unwrap();
                let lm = sol.left_middle.unwrap();
                prop_assert!((r.p / (k.b * k.f * l.p) - 1.0).abs() < 1e-10);
                prop_assert!((rm.tau / (k.c * lm.tau) - 1.0).abs() < 1e-10);
            } else {
                prop_assert!(sol.fan.unwrap().s_left < 0.0);
            }
        }

        #[test]
        fn reflection_symmetry(gm in gamma(), l in state(), r in state()) {
            let g = gas(gm);
            let a = solve(&l, &r, &g, DEFAULT_TOL).unwrap();
            let b = solve(&r.reflected(), &l.reflected(), &g, DEFAULT_TOL).unwrap();
            prop_assert_eq!(a.vacuum, b.vacuum);
            if let (Some(x), Some(y)) = (a.strengths, b.strengths) {
                let m = x.reflected();
                prop_assert!((y.b / m.b - 1.0).abs() < 1e-9);
                prop_assert!((y.c / m.c - 1.0).abs() < 1e-9);
                prop_assert!((y.f / m.f - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn curve_function_increasing(gm in gamma(), l in state(), r in state(), lb in -8.0f64..8.0) {
            let g = gas(gm);
            let b = 10f64.powf(lb);
            prop_assert!(curve_unchecked(b * 1.001, &l, &r, &g) > curve_unchecked(b, &l, &r, &g));
        }
    }
}
