//! Pairwise interactions of elementary waves.
//!
//! Incoming pairs are stored in a canonical orientation: a forward wave `f` on the
//! left of a backward wave `b` (group I), a forward wave `f` on the left of a contact
//! `c` (group II), and two backward waves `x`, `y` (group III). Pairs seen in the
//! mirror image are reflected by [`classify_pair`] and reflected back by
//! [`solve_classified`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::m_of;
use crate::analysis::n_of;
use crate::error::{positive, Error, Result};
use crate::gas::{EntropyState, GasConstants, PrimitiveState, ReferenceConstants};
use crate::kernels::{eta, phi_b, phi_f, psi_b, psi_f, xi, Direction};
use crate::riemann::Strengths;
use crate::roots::increasing_positive_root;
use crate::waves::{apply_unchecked, apply_wave_entropy, is_null, EntropyJump, WaveFamily, WaveType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InteractionKind {
    Ia,
    Ib,
    Ic,
    IIa,
    IIb,
    IIc,
    IId,
    IIIa,
    IIIb,
    IIIc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    HeadOn,
    Contact,
    Overtaking,
}

impl InteractionKind {
    pub const ALL: [InteractionKind; 10] = [
        InteractionKind::Ia,
        InteractionKind::Ib,
        InteractionKind::Ic,
        InteractionKind::IIa,
        InteractionKind::IIb,
        InteractionKind::IIc,
        InteractionKind::IId,
        InteractionKind::IIIa,
        InteractionKind::IIIb,
        InteractionKind::IIIc,
    ];

    pub fn group(self) -> Group {
        use InteractionKind::*;
        match self {
            Ia | Ib | Ic => Group::HeadOn,
            IIa | IIb | IIc | IId => Group::Contact,
            IIIa | IIIb | IIIc => Group::Overtaking,
        }
    }

    /// Whether the left and right incoming strengths lie above 1.
    pub fn strength_pattern(self) -> (bool, bool) {
        use InteractionKind::*;
        match self {
            Ia => (false, true),
            Ib => (false, false),
            Ic => (true, false),
            IIa => (false, false),
            IIb => (false, true),
            IIc => (true, false),
            IId => (true, true),
            IIIa => (true, true),
            IIIb => (true, false),
            IIIc => (false, true),
        }
    }

    /// Names of the left and right incoming strengths.
    pub fn strength_names(self) -> (&'static str, &'static str) {
        match self.group() {
            Group::HeadOn => ("f", "b"),
            Group::Contact => ("f", "c"),
            Group::Overtaking => ("x", "y"),
        }
    }

    /// Families of the left and right incoming waves.
    pub fn families(self) -> (WaveFamily, WaveFamily) {
        match self.group() {
            Group::HeadOn => (WaveFamily::ForwardAcoustic, WaveFamily::BackwardAcoustic),
            Group::Contact => (WaveFamily::ForwardAcoustic, WaveFamily::Contact),
            Group::Overtaking => (WaveFamily::BackwardAcoustic, WaveFamily::BackwardAcoustic),
        }
    }

    /// Kinds that can open a vacuum.
    pub fn may_open_vacuum(self) -> bool {
        matches!(self, InteractionKind::Ic | InteractionKind::IIc | InteractionKind::IIIb)
    }
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for InteractionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InteractionKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidPair(format!("unknown interaction kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncomingPair {
    pub kind: InteractionKind,
    pub s_left: f64,
    pub s_right: f64,
}

impl IncomingPair {
    pub fn new(kind: InteractionKind, s_left: f64, s_right: f64) -> Result<Self> {
        let (nl, nr) = kind.strength_names();
        positive(nl, s_left)?;
        positive(nr, s_right)?;
        for s in [s_left, s_right] {
            if is_null(s) {
                return Err(Error::NullStrength(s));
            }
        }
        let (up_l, up_r) = kind.strength_pattern();
        if (s_left > 1.0) != up_l || (s_right > 1.0) != up_r {
            let side = |up: bool| if up { "> 1" } else { "< 1" };
            return Err(Error::InvalidPair(format!(
                "{kind} needs {nl} {} and {nr} {}, got {nl} = {s_left}, {nr} = {s_right}",
                side(up_l),
                side(up_r)
            )));
        }
        Ok(Self { kind, s_left, s_right })
    }

    /// Product of the outgoing acoustic strengths, BF.
    pub fn product(&self) -> f64 {
        match self.kind.group() {
            Group::Contact => self.s_left,
            _ => self.s_left * self.s_right,
        }
    }

    /// Left and right extreme states obtained by applying the two incoming waves to `left`.
    pub fn compose(&self, left: &PrimitiveState, gas: &GasConstants) -> (PrimitiveState, PrimitiveState) {
        let (fl, fr) = self.kind.families();
        let mid = apply_unchecked(fl, self.s_left, left, gas);
        (*left, apply_unchecked(fr, self.s_right, &mid, gas))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    Meets { pair: IncomingPair, mirrored: bool },
    NotMeeting,
}

/// Sorts two adjacent waves into one of the ten interaction kinds. Pairs that only
/// occur mirrored are reflected into canonical orientation.
pub fn classify_pair(
    left_family: WaveFamily,
    left_strength: f64,
    right_family: WaveFamily,
    right_strength: f64,
) -> Result<Classification> {
    use WaveFamily::*;
    positive("left strength", left_strength)?;
    positive("right strength", right_strength)?;
    for (fam, s) in [(left_family, left_strength), (right_family, right_strength)] {
        if fam != Contact && is_null(s) {
            return Err(Error::NullStrength(s));
        }
    }
    let (l, r) = (left_strength, right_strength);
    let (kind, s_left, s_right, mirrored) = match (left_family, right_family) {
        (Contact, Contact) => return Err(Error::ContactPair),
        (BackwardAcoustic, ForwardAcoustic)
        | (BackwardAcoustic, Contact)
        | (Contact, ForwardAcoustic) => return Ok(Classification::NotMeeting),
        (ForwardAcoustic, BackwardAcoustic) => match (l > 1.0, r > 1.0) {
            (false, true) => (InteractionKind::Ia, l, r, false),
            (false, false) => (InteractionKind::Ib, l, r, false),
            (true, false) => (InteractionKind::Ic, l, r, false),
            (true, true) => (InteractionKind::Ib, 1.0 / r, 1.0 / l, true),
        },
        (ForwardAcoustic, Contact) => (contact_kind(l, r), l, r, false),
        (Contact, BackwardAcoustic) => (contact_kind(1.0 / r, 1.0 / l), 1.0 / r, 1.0 / l, true),
        (BackwardAcoustic, BackwardAcoustic) => match overtaking_kind(l, r) {
            Some(k) => (k, l, r, false),
            None => return Ok(Classification::NotMeeting),
        },
        (ForwardAcoustic, ForwardAcoustic) => match overtaking_kind(1.0 / r, 1.0 / l) {
            Some(k) => (k, 1.0 / r, 1.0 / l, true),
            None => return Ok(Classification::NotMeeting),
        },
    };
    if is_null(s_left) || is_null(s_right) {
        return Err(Error::NullStrength(if is_null(s_left) { s_left } else { s_right }));
    }
    Ok(Classification::Meets {
        pair: IncomingPair { kind, s_left, s_right },
        mirrored,
    })
}

fn contact_kind(f: f64, c: f64) -> InteractionKind {
    match (f > 1.0, c > 1.0) {
        (false, false) => InteractionKind::IIa,
        (false, true) => InteractionKind::IIb,
        (true, false) => InteractionKind::IIc,
        (true, true) => InteractionKind::IId,
    }
}

fn overtaking_kind(x: f64, y: f64) -> Option<InteractionKind> {
    match (x > 1.0, y > 1.0) {
        (true, true) => Some(InteractionKind::IIIa),
        (true, false) => Some(InteractionKind::IIIb),
        (false, true) => Some(InteractionKind::IIIc),
        (false, false) => None,
    }
}

/// Group residual 𝒢, ℋ or 𝒦 at `b`; `b = 0` is allowed and uses ψ⃖(0) = −ν.
pub(crate) fn residual_unchecked(b: f64, pair: &IncomingPair, g: &GasConstants) -> f64 {
    let pb = |q: f64| if q == 0.0 { -g.nu } else { psi_b(g, q) };
    let (l, r) = (pair.s_left, pair.s_right);
    match pair.kind.group() {
        Group::HeadOn => {
            let (f, bb) = (l, r);
            let nf = n_of(g, f);
            pb(b) + pb(b / (bb * f)) * m_of(g, bb) * nf + psi_f(g, f) - nf * psi_b(g, bb)
        }
        Group::Contact => {
            let (f, c) = (l, r);
            pb(b) + c.sqrt() * n_of(g, f) * pb(b / f) + psi_f(g, f)
        }
        Group::Overtaking => {
            let (x, y) = (l, r);
            let mx = m_of(g, x);
            pb(b) + pb(b / (x * y)) * mx * m_of(g, y) - psi_b(g, x) - psi_b(g, y) * mx
        }
    }
}

/// Strictly increasing residual whose zero is the outgoing backward strength.
pub fn interaction_residual(
    kind: InteractionKind,
    b: f64,
    pair: &IncomingPair,
    gas: &GasConstants,
) -> Result<f64> {
    positive("B", b)?;
    if kind != pair.kind {
        return Err(Error::InvalidPair(format!(
            "residual requested for {kind} but the pair is {}",
            pair.kind
        )));
    }
    Ok(residual_unchecked(b, pair, gas))
}

/// Relative slack on the vacuum boundaries, so that pairs built to lie exactly on a
/// boundary are not split by rounding.
const VACUUM_SLACK: f64 = 16.0 * f64::EPSILON;

/// True iff the pair opens a vacuum; the boundary counts as vacuum.
pub fn vacuum_condition(kind: InteractionKind, pair: &IncomingPair, gas: &GasConstants) -> bool {
    let z = gas.zeta;
    let (l, r) = (pair.s_left, pair.s_right);
    match kind {
        InteractionKind::Ic => {
            let (f, b) = (l, r);
            (z * b.ln()).exp() + (-z * f.ln()).exp() <= 1.0 + VACUUM_SLACK
        }
        InteractionKind::IIc => {
            let (f, c) = (l, r);
            (1.0 - c.sqrt()) * (z * f.ln()).exp() >= 2.0 * (1.0 - VACUUM_SLACK)
        }
        InteractionKind::IIIb => {
            let (x, y) = (l, r);
            y <= crate::atlas::vacuum_curve_unchecked(gas, x) * (1.0 + VACUUM_SLACK)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InteractionResiduals {
    /// Group residual at the computed B.
    pub equation: f64,
    /// BF over the incoming product, minus 1.
    pub product: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionOutcome {
    pub kind: InteractionKind,
    pub vacuum: bool,
    pub strengths: Option<Strengths>,
    pub types: [WaveType; 3],
    pub entropy_jump: EntropyJump,
    pub residuals: InteractionResiduals,
}

impl InteractionOutcome {
    /// The same outcome seen after reflecting x → −x.
    pub fn reflected(&self) -> Self {
        let strengths = self.strengths.map(|s| s.reflected());
        Self {
            strengths,
            types: strengths.map_or(self.types, |s| s.types()),
            entropy_jump: match self.entropy_jump {
                EntropyJump::Up => EntropyJump::Down,
                EntropyJump::Down => EntropyJump::Up,
                EntropyJump::None => EntropyJump::None,
            },
            ..self.clone()
        }
    }
}

/// Ratio τ_right/τ_left across the two incoming waves.
fn incoming_volume_ratio(pair: &IncomingPair, g: &GasConstants) -> f64 {
    let (l, r) = (pair.s_left, pair.s_right);
    match pair.kind.group() {
        Group::HeadOn => phi_f(g, l) * phi_b(g, r),
        Group::Contact => phi_f(g, l) * r,
        Group::Overtaking => phi_b(g, l) * phi_b(g, r),
    }
}

pub fn solve_interaction(pair: &IncomingPair, gas: &GasConstants, tol: f64) -> Result<InteractionOutcome> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    let kind = pair.kind;
    if vacuum_condition(kind, pair, gas) {
        let entropy_jump = match kind {
            InteractionKind::IIc => EntropyJump::Down,
            InteractionKind::IIIb => EntropyJump::Up,
            _ => EntropyJump::None,
        };
        return Ok(InteractionOutcome {
            kind,
            vacuum: true,
            strengths: None,
            types: [WaveType::Rarefaction, WaveType::Null, WaveType::Rarefaction],
            entropy_jump,
            residuals: InteractionResiduals::default(),
        });
    }
    let p = pair.product();
    let root = increasing_positive_root(
        |b| residual_unchecked(b, pair, gas),
        p.min(1.0) * 0.5,
        p.max(1.0) * 2.0,
        tol,
    )?;
    let b = root.x;
    let f = p / b;
    let c = incoming_volume_ratio(pair, gas) / (phi_b(gas, b) * phi_f(gas, f));
    let strengths = Strengths { b, c, f };
    Ok(InteractionOutcome {
        kind,
        vacuum: false,
        strengths: Some(strengths),
        types: strengths.types(),
        entropy_jump: EntropyJump::from_contact(c),
        residuals: InteractionResiduals {
            equation: root.residual,
            product: b * f / p - 1.0,
            iterations: root.iterations,
        },
    })
}

/// Solves a classified pair and reports the outcome in the original orientation.
pub fn solve_classified(
    classification: &Classification,
    gas: &GasConstants,
    tol: f64,
) -> Result<Option<InteractionOutcome>> {
    match classification {
        Classification::NotMeeting => Ok(None),
        Classification::Meets { pair, mirrored } => {
            let out = solve_interaction(pair, gas, tol)?;
            Ok(Some(if *mirrored { out.reflected() } else { out }))
        }
    }
}

/// What the sign theorems say about C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ContactRule {
    /// C − 1 has the sign of the value minus 1.
    SignOf(f64),
    Equal(f64),
    Above(f64),
    Below(f64),
    Between(f64, f64),
}

impl ContactRule {
    pub fn holds(&self, c: f64, rel: f64) -> bool {
        match *self {
            ContactRule::SignOf(v) => {
                if is_null(v) {
                    (c - 1.0).abs() <= rel.max(1e-9)
                } else {
                    (c > 1.0) == (v > 1.0) && !is_null(c)
                }
            }
            ContactRule::Equal(v) => (c - v).abs() <= rel * v,
            ContactRule::Above(v) => c > v,
            ContactRule::Below(v) => c < v,
            ContactRule::Between(lo, hi) => c > lo && c < hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub vacuum: bool,
    /// Predicted outgoing backward and forward types; `None` where the sign is not settled.
    pub backward: Option<WaveType>,
    pub forward: Option<WaveType>,
    pub contact: Option<ContactRule>,
    pub tag: String,
}

fn acoustic_type(family: WaveFamily, above_one: bool) -> WaveType {
    match (family, above_one) {
        (WaveFamily::BackwardAcoustic, true) | (WaveFamily::ForwardAcoustic, false) => WaveType::Shock,
        _ => WaveType::Rarefaction,
    }
}

/// Outgoing pattern predicted by the classification results, without solving for B.
pub fn predict(pair: &IncomingPair, gas: &GasConstants) -> Prediction {
    use InteractionKind::*;
    let kind = pair.kind;
    let (l, r) = (pair.s_left, pair.s_right);
    if vacuum_condition(kind, pair, gas) {
        let tag = match kind {
            Ic => "Ic vacuum: b^zeta + f^-zeta <= 1",
            IIc => "IIc vacuum: f >= f*(c)",
            _ => "IIIb vacuum: y <= V(x)",
        };
        return Prediction {
            vacuum: true,
            backward: Some(WaveType::Rarefaction),
            forward: Some(WaveType::Rarefaction),
            contact: None,
            tag: tag.to_string(),
        };
    }
    let bw = |up: bool| Some(acoustic_type(WaveFamily::BackwardAcoustic, up));
    let fw = |up: bool| Some(acoustic_type(WaveFamily::ForwardAcoustic, up));
    let (backward, forward) = match kind.group() {
        Group::HeadOn => (bw(r > 1.0), fw(l > 1.0)),
        Group::Contact => match kind {
            IIa | IIb => (bw(r < 1.0), fw(l > 1.0)),
            _ => (bw(r > 1.0), fw(l > 1.0)),
        },
        Group::Overtaking => {
            let k = crate::atlas::k_classifier(gas, l, r);
            let h = crate::atlas::h_reflect(gas, l, r);
            let b = if k.abs() <= 1e-13 { None } else { bw(k < 0.0) };
            let f = if h.abs() <= 1e-13 { None } else { fw(h > 0.0) };
            (b, f)
        }
    };
    let (contact, tag) = match kind {
        Ia => {
            let bf = l * r;
            let rel = if is_null(bf) {
                "="
            } else if bf > 1.0 {
                ">"
            } else {
                "<"
            };
            (ContactRule::SignOf(bf), format!("Ia contact: C vs 1 follows bf vs 1 (bf{rel}1)"))
        }
        Ib => (ContactRule::Above(1.0), "Ib contact: C > 1".into()),
        Ic => (ContactRule::Equal(1.0), "Ic contact: C = 1".into()),
        IIa => (ContactRule::Between(r, 1.0), "IIa contact: c < C < 1".into()),
        IIb => (ContactRule::Between(1.0, r), "IIb contact: 1 < C < c".into()),
        IIc => (ContactRule::Equal(r), "IIc contact: C = c".into()),
        IId => (ContactRule::Below(r), "IId contact: C < c".into()),
        IIIa => (ContactRule::Below(1.0), "IIIa contact: C < 1".into()),
        IIIb => (ContactRule::Above(1.0), "IIIb contact: C > 1".into()),
        IIIc => (ContactRule::Above(1.0), "IIIc contact: C > 1".into()),
    };
    Prediction {
        vacuum: false,
        backward,
        forward,
        contact: Some(contact),
        tag,
    }
}

impl Prediction {
    /// Whether a computed outcome matches every settled prediction.
    pub fn agrees_with(&self, out: &InteractionOutcome) -> bool {
        if self.vacuum != out.vacuum {
            return false;
        }
        let Some(s) = out.strengths else {
            return true;
        };
        let t = s.types();
        let type_ok = |p: Option<WaveType>, got: WaveType| p.map_or(true, |p| p == got || got == WaveType::Null);
        type_ok(self.backward, t[0])
            && type_ok(self.forward, t[2])
            && self.contact.map_or(true, |rule| rule.holds(s.c, 1e-12))
    }
}

/// Outgoing specific-volume ratios across the backward wave (L), contact (C) and
/// forward wave (I), recomputed in (τ, u, S) variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyCheck {
    pub l: f64,
    pub c: f64,
    pub i: f64,
    /// The three (τ, u, S) equations at the solution.
    pub residuals: [f64; 3],
    pub iterations: usize,
    /// Largest relative difference from the converted pressure-form strengths.
    pub max_relative_difference: f64,
    /// Mismatch between the right states reached through the incoming and the
    /// outgoing waves, both built in (τ, u, S) variables.
    pub state_mismatch: f64,
}

fn entropy_residuals(u: [f64; 3], rhs: (f64, f64, f64), g: &GasConstants) -> Result<[f64; 3]> {
    let (l, c, i) = (u[0].exp(), u[1].exp(), u[2].exp());
    let (r1, r2, r3) = rhs;
    let eta_l = eta(Direction::Backward, l, g)?;
    let vel = xi(Direction::Backward, l, g)?
        - xi(Direction::Forward, i, g)? * (c * ((1.0 - g.gamma) * u[0] + eta_l).exp()).sqrt();
    let ent = eta_l + g.gamma * u[1] + eta(Direction::Forward, i, g)?;
    Ok([r1 - vel, r2 - ent, r3 - (u[0] + u[1] + u[2])])
}

fn solve3(j: [[f64; 3]; 3], r: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(j);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut m = j;
        for row in 0..3 {
            m[row][k] = r[row];
        }
        *o = det(m) / d;
    }
    Some(out)
}

fn norm(r: &[f64; 3]) -> f64 {
    r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Re-solves a group III interaction in (τ, u, S) variables by damped Newton, seeded
/// near the pressure-form solution converted to specific-volume ratios.
pub fn entropy_cross_check(
    pair: &IncomingPair,
    gas: &GasConstants,
    reference: &ReferenceConstants,
) -> Result<EntropyCheck> {
    if pair.kind.group() != Group::Overtaking {
        return Err(Error::InvalidPair(format!("{} is not an overtaking interaction", pair.kind)));
    }
    let out = solve_interaction(pair, gas, 1e-14)?;
    let Some(s) = out.strengths else {
        return Err(Error::InvalidPair("pair opens a vacuum".into()));
    };
    let g = gas;
    let (xt, yt) = (phi_b(g, pair.s_left), phi_b(g, pair.s_right));
    let eta_x = eta(Direction::Backward, xt, g)?;
    let rhs = (
        xi(Direction::Backward, xt, g)?
            + xi(Direction::Backward, yt, g)? * ((1.0 - g.gamma) * xt.ln() + eta_x).exp().sqrt(),
        eta_x + eta(Direction::Backward, yt, g)?,
        xt.ln() + yt.ln(),
    );
    let target = [phi_b(g, s.b), s.c, phi_f(g, s.f)];
    if (target[0] * target[1] * target[2] / (xt * yt) - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidPair("volume ratios do not multiply to the incoming product".into()));
    }

    let scale = 1.0 + rhs.0.abs().max(rhs.1.abs()).max(rhs.2.abs());
    let mut u = [target[0].ln() + 1e-3, target[1].ln() - 1e-3, target[2].ln() + 1e-3];
    let mut r = entropy_residuals(u, rhs, g)?;
    let mut iterations = 0;
    while norm(&r) > 1e-14 * scale && iterations < 100 {
        iterations += 1;
        let mut jac = [[0.0; 3]; 3];
        for k in 0..3 {
            let h = 1e-7;
            let (mut up, mut dn) = (u, u);
            up[k] += h;
            dn[k] -= h;
            let (rp, rm) = (entropy_residuals(up, rhs, g)?, entropy_residuals(dn, rhs, g)?);
            for row in 0..3 {
                jac[row][k] = (rp[row] - rm[row]) / (2.0 * h);
            }
        }
        let Some(step) = solve3(jac, [-r[0], -r[1], -r[2]]) else {
            return Err(Error::NoConvergence(norm(&r)));
        };
        let mut lambda = 1.0;
        loop {
            let trial = [u[0] + lambda * step[0], u[1] + lambda * step[1], u[2] + lambda * step[2]];
            match entropy_residuals(trial, rhs, g) {
                Ok(rt) if norm(&rt) < norm(&r) || lambda < 1e-3 => {
                    u = trial;
                    r = rt;
                    break;
                }
                _ if lambda < 1e-6 => return Err(Error::NoConvergence(norm(&r))),
                _ => lambda *= 0.5,
            }
        }
        if norm(&step) * lambda < 1e-16 {
            break;
        }
    }
    let (l, c, i) = (u[0].exp(), u[1].exp(), u[2].exp());
    let max_relative_difference = [l, c, i]
        .iter()
        .zip(target)
        .fold(0.0f64, |m, (v, t)| m.max((v / t - 1.0).abs()));
    if norm(&r) > 1e-9 * scale {
        return Err(Error::NoConvergence(norm(&r)));
    }
    let start = gas.entropy_from_primitive(&PrimitiveState { tau: 1.0, u: 0.0, p: 1.0 }, reference);
    let through = |steps: &[(WaveFamily, f64)]| -> Result<EntropyState> {
        steps
            .iter()
            .try_fold(start, |st, &(fam, s)| apply_wave_entropy(fam, s, &st, gas, reference))
    };
    let incoming = through(&[(WaveFamily::BackwardAcoustic, xt), (WaveFamily::BackwardAcoustic, yt)])?;
    let outgoing = through(&[
        (WaveFamily::BackwardAcoustic, l),
        (WaveFamily::Contact, c),
        (WaveFamily::ForwardAcoustic, i),
    ])?;
    let state_mismatch = (outgoing.tau / incoming.tau - 1.0)
        .abs()
        .max((outgoing.u - incoming.u).abs())
        .max((outgoing.s - incoming.s).abs() / reference.c_v);
    Ok(EntropyCheck {
        l,
        c,
        i,
        residuals: r,
        iterations,
        max_relative_difference,
        state_mismatch,
    })
}
