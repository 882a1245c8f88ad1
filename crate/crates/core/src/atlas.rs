//! Transition curves (an outgoing strength equal to 1) and vacuum onset curves in
//! the plane of incoming strengths, plus the landmark points that organize them.
//!
//! Group III curves live in the (x, y) plane of the two incoming backward
//! strengths. Group I curves use (f, b), group II curves use (c, f) so that every
//! sampled curve is a graph over its first coordinate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{alpha_roots, d_inverse, d_of, m_of, FIVE_THIRDS_BAND};
use crate::error::{positive, Error, Result};
use crate::gas::GasConstants;
use crate::interaction::{residual_unchecked, IncomingPair, InteractionKind};
use crate::kernels::{psi_b, psi_f};
use crate::roots::{brent, increasing_positive_root};

/// Topology of the group III picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtlasRegime {
    /// a < 1/4
    BelowFiveThirds,
    /// a = 1/4
    FiveThirds,
    /// 1/4 < a < 1/3
    BetweenFiveThirdsAndTwo,
    /// a ≥ 1/3
    TwoOrAbove,
}

impl AtlasRegime {
    pub fn of(g: &GasConstants) -> Self {
        let a = g.a;
        if (a - 0.25).abs() < FIVE_THIRDS_BAND {
            AtlasRegime::FiveThirds
        } else if (a - 1.0 / 3.0).abs() < FIVE_THIRDS_BAND || a > 1.0 / 3.0 {
            AtlasRegime::TwoOrAbove
        } else if a < 0.25 {
            AtlasRegime::BelowFiveThirds
        } else {
            AtlasRegime::BetweenFiveThirdsAndTwo
        }
    }

    pub fn above_five_thirds(self) -> bool {
        matches!(self, AtlasRegime::BetweenFiveThirdsAndTwo | AtlasRegime::TwoOrAbove)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialPoints {
    pub regime: AtlasRegime,
    pub y0: f64,
    pub x0: f64,
    pub yhat: f64,
    pub y1: Option<f64>,
    pub xbar: Option<f64>,
    pub ybar: Option<f64>,
    pub ystar: Option<f64>,
}

/// ŷ = [(1 − √ζ)/2]^{1/ζ}, the common asymptote of k and V.
pub fn yhat(g: &GasConstants) -> f64 {
    (0.5 * (1.0 - g.zeta.sqrt())).powf(1.0 / g.zeta)
}

pub fn special_points(g: &GasConstants) -> SpecialPoints {
    let regime = AtlasRegime::of(g);
    let roots = alpha_roots(g);
    let a = g.a;
    let sa = a.sqrt();
    let y1 = match regime {
        AtlasRegime::BelowFiveThirds => Some((0.75 / (1.0 - a)).powf(1.0 / g.zeta)),
        AtlasRegime::FiveThirds => Some(1.0),
        _ => None,
    };
    let xbar = (regime == AtlasRegime::BetweenFiveThirdsAndTwo).then(|| 4.0 * a * a / (1.0 - 3.0 * a));
    let (ybar, ystar) = if regime.above_five_thirds() {
        let ystar = if (a - 1.0 / 3.0).abs() < FIVE_THIRDS_BAND {
            1.0
        } else {
            4.0 * a * a / ((1.0 - a) * (1.0 - a))
        };
        (Some(2.0 * a * sa / ((1.0 - sa) * (1.0 - sa))), Some(ystar))
    } else {
        (None, None)
    };
    SpecialPoints {
        regime,
        y0: roots.y0,
        x0: roots.x0,
        yhat: yhat(g),
        y1,
        xbar,
        ybar,
        ystar,
    }
}

/// K(x, y) = ψ⃖(1/(xy)) M(y) + ψ⃗(1/x) − ψ⃖(y); B > 1 iff K < 0.
pub fn k_classifier(g: &GasConstants, x: f64, y: f64) -> f64 {
    psi_b(g, 1.0 / (x * y)) * m_of(g, y) + psi_f(g, 1.0 / x) - psi_b(g, y)
}

/// Limit of K(x, y) as x → ∞, for y < 1.
pub fn k_infinity(g: &GasConstants, y: f64) -> f64 {
    g.nu * (1.0 - 2.0 * (g.zeta * y.ln()).exp()) - g.kappa / g.a.sqrt()
}

/// The graph y = k(x) of {B = 1} in group III.
pub fn k_curve(g: &GasConstants, x: f64) -> Result<f64> {
    positive("x", x)?;
    if x == 1.0 {
        return Ok(1.0);
    }
    let inv = 1.0 / x;
    let root = increasing_positive_root(|y| -k_classifier(g, x, y), inv.min(1.0) * 0.5, inv.max(1.0) * 2.0, 1e-15)?;
    Ok(root.x)
}

/// H(x, y) = ψ⃖(xy) − ψ⃖(x) − ψ⃖(y) M(x); F > 1 iff H > 0.
pub fn h_reflect(g: &GasConstants, x: f64, y: f64) -> f64 {
    psi_b(g, x * y) - psi_b(g, x) - psi_b(g, y) * m_of(g, x)
}

/// Divided difference of s(q) = (q − 1)/√(q + a) between q1 and q2 (both ≥ 1).
fn shock_divided_difference(g: &GasConstants, q1: f64, q2: f64) -> f64 {
    let (a1, a2) = ((q1 + g.a).sqrt(), (q2 + g.a).sqrt());
    (a2 - (q2 - 1.0) / (a1 + a2)) / (a1 * a2)
}

/// (y^ζ − 1)/(y − 1) without cancellation.
fn power_quotient(g: &GasConstants, y: f64) -> f64 {
    let t = y - 1.0;
    if t.abs() < 1e-8 {
        g.zeta * (1.0 + 0.5 * (g.zeta - 1.0) * t)
    } else {
        (g.zeta * t.ln_1p()).exp_m1() / t
    }
}

/// H(x, y)/(y − 1) for x ≥ 1 and 1/x ≤ y ≤ 1.
fn h_over_y_gap(g: &GasConstants, x: f64, y: f64) -> f64 {
    g.kappa * x * shock_divided_difference(g, x * y, x) - m_of(g, x) * g.nu * power_quotient(g, y)
}

/// H(x, y)/(x − 1) for 0 < x ≤ 1 and y ≥ 1/x.
fn h_over_x_gap(g: &GasConstants, x: f64, y: f64) -> f64 {
    g.kappa * y * shock_divided_difference(g, x * y, y) - (g.nu + psi_b(g, y)) * power_quotient(g, x)
}

/// (x(1 + ax) − (x + a)x^{2ζ})/(x − 1)³.
fn cubic_quotient(g: &GasConstants, x: f64) -> f64 {
    let t = x - 1.0;
    let a = g.a;
    let w = 2.0 * g.zeta;
    if t.abs() > 0.25 {
        return (x * (1.0 + a * x) - (x + a) * (w * x.ln()).exp()) / (t * t * t);
    }
    let mut binom = vec![1.0];
    for k in 1..80 {
        let prev = binom[k - 1];
        binom.push(prev * (w - (k as f64 - 1.0)) / k as f64);
    }
    let mut sum = 0.0;
    let mut tk = 1.0;
    for k in 3..80 {
        let term = -((1.0 + a) * binom[k] + binom[k - 1]) * tk;
        sum += term;
        tk *= t;
    }
    sum
}

/// Closed-form branch of h for γ < 5/3 on (1, x0].
pub fn h1_explicit(g: &GasConstants, x: f64) -> Result<f64> {
    let sp = special_points(g);
    if sp.regime != AtlasRegime::BelowFiveThirds {
        return Err(Error::Regime("h1 (needs gamma < 5/3)"));
    }
    if !(x > 1.0 && x <= sp.x0 * (1.0 + 1e-12)) {
        return Err(Error::Domain { name: "x", value: x, range: "(1, x0]" });
    }
    Ok(h1_unchecked(g, x))
}

fn h1_unchecked(g: &GasConstants, x: f64) -> f64 {
    let a = g.a;
    let t = x - 1.0;
    let s = (1.0 + a).sqrt();
    let m = m_of(g, x);
    let xz = (g.zeta * x.ln()).exp();
    let u1 = x * s + (x + a * x * x).sqrt();
    let u2 = s + (x + a).sqrt();
    let w = (x * x + a * x).sqrt() + (1.0 + a * x).sqrt();
    let ratio = a * x.sqrt() * (2.0 + t) * (m + xz) / (w * u1 * u2 * (m + 1.0) * s * cubic_quotient(g, x));
    (ratio.ln() / g.zeta).exp()
}

/// Root of H(x, ·) on [1/x, 1] for x > 1, via H/(y − 1).
fn h2_unchecked(g: &GasConstants, x: f64) -> Result<f64> {
    let lo = 1.0 / x;
    let f = |y: f64| h_over_y_gap(g, x, y);
    if f(1.0) <= 0.0 {
        return Ok(1.0);
    }
    if f(lo) >= 0.0 {
        return Ok(lo);
    }
    Ok(brent(f, lo, 1.0, 1e-17)?.x)
}

/// The graph y = h(x) of {F = 1} inside IIIb; `None` outside its domain.
pub fn h_curve(g: &GasConstants, x: f64) -> Option<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return None;
    }
    let sp = special_points(g);
    match sp.regime {
        AtlasRegime::BelowFiveThirds if x <= sp.x0 => Some(h1_unchecked(g, x)),
        AtlasRegime::BelowFiveThirds | AtlasRegime::FiveThirds => h2_unchecked(g, x).ok(),
        AtlasRegime::BetweenFiveThirdsAndTwo => {
            let xbar = sp.xbar.expect("defined in this regime");
            if x < xbar {
                None
            } else if x == xbar {
                Some(1.0)
            } else {
                h2_unchecked(g, x).ok()
            }
        }
        AtlasRegime::TwoOrAbove => None,
    }
}

fn require_above_five_thirds(g: &GasConstants, what: &'static str) -> Result<SpecialPoints> {
    let sp = special_points(g);
    if sp.regime.above_five_thirds() {
        Ok(sp)
    } else {
        Err(Error::Regime(what))
    }
}

/// The graph y = j(x) of {F = 1} inside IIIa, for γ > 5/3.
pub fn j_explicit(g: &GasConstants, x: f64) -> Result<f64> {
    require_above_five_thirds(g, "j (needs gamma > 5/3)")?;
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::Domain { name: "x", value: x, range: "[1, inf)" });
    }
    let a = g.a;
    let s = a * (1.0 + x);
    Ok(2.0 * a / ((1.0 - a) * (1.0 - a) * x) * (s + (s * s + a * x * (1.0 - a) * (1.0 - a)).sqrt()))
}

/// The graph y = i(x) of {F = 1} inside IIIc, for γ > 5/3.
pub fn i_curve(g: &GasConstants, x: f64) -> Result<f64> {
    let sp = require_above_five_thirds(g, "i (needs gamma > 5/3)")?;
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain { name: "x", value: x, range: "(0, 1)" });
    }
    if x <= sp.x0 {
        return Ok(sp.y0);
    }
    let f = |y: f64| h_over_x_gap(g, x, y);
    let (mut lo, hi) = (1.0 / x, sp.y0);
    if f(hi) <= 0.0 {
        return Ok(hi);
    }
    // Near x = 1 the quotient at y = 1/x is below rounding level; step inward.
    let mut step = 1e-6;
    while f(lo) >= 0.0 {
        if step > 0.5 {
            return Ok(1.0 / x);
        }
        lo = 1.0 / x + (hi - 1.0 / x) * step;
        step *= 10.0;
    }
    Ok(brent(f, lo, hi, 1e-15 * hi)?.x)
}

/// Vacuum onset in IIIb: a vacuum forms iff y ≤ V(x).
pub fn v_vacuum_curve(g: &GasConstants, x: f64) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::Domain { name: "x", value: x, range: "[1, inf)" });
    }
    Ok(vacuum_curve_unchecked(g, x))
}

pub(crate) fn vacuum_curve_unchecked(g: &GasConstants, x: f64) -> f64 {
    if x <= 1.0 {
        return 0.0;
    }
    let a = g.a;
    let r = (x + a * x * x).sqrt();
    // 1 − v(x)/ν with the leading cancellation removed.
    let gap = (x - 1.0) * (g.nu * a * (x + 1.0) / (r + (x + a).sqrt()) - g.kappa) / (g.nu * r);
    if gap <= 0.0 {
        return 0.0;
    }
    ((0.5 * gap).ln() / g.zeta).exp()
}

/// 𝒦(0; x, y): the vacuum residual of a group III pair, nonnegative iff vacuum.
pub fn vacuum_residual(g: &GasConstants, x: f64, y: f64) -> f64 {
    let mx = m_of(g, x);
    -g.nu - g.nu * mx * m_of(g, y) - psi_b(g, x) - psi_b(g, y) * mx
}

/// Backward strength on the Ic vacuum boundary b^ζ + f^{−ζ} = 1.
pub fn group1_vacuum_boundary(g: &GasConstants, f: f64) -> Result<f64> {
    if !(f > 1.0) || !f.is_finite() {
        return Err(Error::Domain { name: "f", value: f, range: "(1, inf)" });
    }
    Ok(((-(-g.zeta * f.ln()).exp_m1()).ln() / g.zeta).exp())
}

/// f*(c) = (2/(1 − √c))^{1/ζ}: IIc opens a vacuum iff f ≥ f*(c).
pub fn iic_fstar(g: &GasConstants, c: f64) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain { name: "c", value: c, range: "(0, 1)" });
    }
    Ok(((2.0 / (1.0 - c.sqrt())).ln() / g.zeta).exp())
}

/// Υ(B) = B^ζ + (ψ⃗(B) + ψ⃖(B))/(ν(√D(B) − 1)).
pub fn upsilon(g: &GasConstants, b: f64) -> Result<f64> {
    if !(b > 1.0) || !b.is_finite() {
        return Err(Error::Domain { name: "B", value: b, range: "(1, inf)" });
    }
    let root_d_minus_one = (0.5 * d_of(g, b).ln()).exp_m1();
    Ok((g.zeta * b.ln()).exp() + (psi_f(g, b) + psi_b(g, b)) / (g.nu * root_d_minus_one))
}

/// 𝔣(c): the incoming forward strength at which a IId interaction emits no contact.
pub fn iid_contact_transition(g: &GasConstants, c: f64) -> Result<f64> {
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::Domain { name: "c", value: c, range: "(1, inf)" });
    }
    let delta = d_inverse(g, c)?;
    let inner = (g.zeta * delta.ln()).exp()
        + (psi_f(g, delta) + psi_b(g, delta)) / (g.nu * (0.5 * c.ln()).exp_m1());
    Ok((inner.ln() / g.zeta).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveId {
    KZero,
    HZero,
    JExplicit,
    ICurve,
    VVacuum,
    IcVacuum,
    IicFstar,
    IidContact,
}

impl CurveId {
    pub const ALL: [CurveId; 8] = [
        CurveId::KZero,
        CurveId::HZero,
        CurveId::JExplicit,
        CurveId::ICurve,
        CurveId::VVacuum,
        CurveId::IcVacuum,
        CurveId::IicFstar,
        CurveId::IidContact,
    ];

    /// File stem used when the curve is written out.
    pub fn stem(self) -> &'static str {
        match self {
            CurveId::KZero => "k",
            CurveId::HZero => "h",
            CurveId::JExplicit => "j",
            CurveId::ICurve => "i",
            CurveId::VVacuum => "V",
            CurveId::IcVacuum => "ic_vacuum",
            CurveId::IicFstar => "fstar",
            CurveId::IidContact => "f_transition",
        }
    }

    /// Names of the two plotted coordinates.
    pub fn axes(self) -> (&'static str, &'static str) {
        match self {
            CurveId::IcVacuum => ("f", "b"),
            CurveId::IicFstar | CurveId::IidContact => ("c", "f"),
            _ => ("x", "y"),
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.stem())
    }
}

impl FromStr for CurveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurveId::ALL
            .into_iter()
            .find(|c| c.stem() == s)
            .ok_or_else(|| Error::InvalidPair(format!("unknown curve {s:?}")))
    }
}

/// Defining residual of a curve at a point.
pub fn curve_residual(g: &GasConstants, id: CurveId, x: f64, y: f64) -> f64 {
    match id {
        CurveId::KZero => k_classifier(g, x, y),
        CurveId::HZero | CurveId::JExplicit | CurveId::ICurve => h_reflect(g, x, y),
        CurveId::VVacuum => vacuum_residual(g, x, y),
        CurveId::IcVacuum => (g.zeta * y.ln()).exp() + (-g.zeta * x.ln()).exp() - 1.0,
        CurveId::IicFstar => (1.0 - x.sqrt()) * (g.zeta * y.ln()).exp() - 2.0,
        CurveId::IidContact => match (d_inverse(g, x), IncomingPair::new(InteractionKind::IId, y, x)) {
            (Ok(delta), Ok(pair)) => residual_unchecked(delta, &pair, g) / (1.0 + psi_f(g, y)),
            _ => f64::NAN,
        },
    }
}

/// Point on a curve with its defining residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub x_label: String,
    pub y_label: String,
    /// Horizontal asymptote, where one exists.
    pub asymptote: Option<f64>,
    /// Known exact endpoints (x, y).
    pub endpoints: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub curve_id: CurveId,
    pub gamma: f64,
    pub points: Vec<CurvePoint>,
    pub meta: CurveMeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Panel {
    GroupI,
    GroupII,
    GroupIII,
}

impl FromStr for Panel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "groupi" | "i" | "1" => Ok(Panel::GroupI),
            "groupii" | "ii" | "2" => Ok(Panel::GroupII),
            "groupiii" | "iii" | "3" => Ok(Panel::GroupIII),
            _ => Err(Error::InvalidPair(format!("unknown panel {s:?}"))),
        }
    }
}

impl fmt::Display for Panel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Panel::GroupI => "groupI",
            Panel::GroupII => "groupII",
            Panel::GroupIII => "groupIII",
        })
    }
}

/// Number of points per curve and the plotted window of the first coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub points: usize,
    pub min: f64,
    pub max: f64,
}

impl GridSpec {
    pub fn new(points: usize, min: f64, max: f64) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidPair(format!("grid needs at least 2 points, got {points}")));
        }
        positive("grid min", min)?;
        positive("grid max", max)?;
        if !(max > min) {
            return Err(Error::InvalidPair(format!("grid range [{min}, {max}] is empty")));
        }
        Ok(Self { points, min, max })
    }

    pub fn default_for(panel: Panel) -> Self {
        match panel {
            Panel::GroupI => Self { points: 200, min: 1.0, max: 1e6 },
            Panel::GroupII => Self { points: 200, min: 1e-3, max: 1e3 },
            Panel::GroupIII => Self { points: 200, min: 1e-3, max: 1e3 },
        }
    }
}

/// `n` log-spaced abscissae strictly inside (lo, hi), or including lo when `closed`.
fn log_grid(lo: f64, hi: f64, n: usize, closed: bool) -> Vec<f64> {
    if !(hi > lo) || n == 0 {
        return Vec::new();
    }
    let (l, h) = (lo.ln(), hi.ln());
    let denom = if closed { (n - 1).max(1) as f64 } else { (n + 1) as f64 };
    let shift = if closed { 0 } else { 1 };
    let mut v: Vec<f64> = (0..n)
        .map(|i| (l + (h - l) * (i + shift) as f64 / denom).exp())
        .collect();
    if closed {
        v[0] = lo;
        if n > 1 {
            v[n - 1] = hi;
        }
    }
    v
}

fn share(grid: &GridSpec, lo: f64, hi: f64) -> usize {
    let span = (grid.max.ln() - grid.min.ln()).max(f64::MIN_POSITIVE);
    let frac = ((hi.ln() - lo.ln()) / span).clamp(0.0, 1.0);
    ((grid.points as f64 * frac).round() as usize).max(2)
}

fn sample_curve(
    g: &GasConstants,
    id: CurveId,
    xs: impl IntoIterator<Item = f64>,
    eval: impl Fn(f64) -> Option<f64>,
    meta: (Option<f64>, Vec<(f64, f64)>),
) -> CurveSample {
    let mut points: Vec<CurvePoint> = xs
        .into_iter()
        .filter_map(|x| {
            let y = eval(x)?;
            y.is_finite().then(|| CurvePoint { x, y, residual: curve_residual(g, id, x, y) })
        })
        .collect();
    points.dedup_by(|b, a| b.x <= a.x);
    let (xl, yl) = id.axes();
    CurveSample {
        curve_id: id,
        gamma: g.gamma,
        points,
        meta: CurveMeta {
            x_label: xl.to_string(),
            y_label: yl.to_string(),
            asymptote: meta.0,
            endpoints: meta.1,
        },
    }
}

/// Samples every curve that appears in a panel for this γ. Group III abscissae span
/// the grid window; group I uses f in the window intersected with (1, ∞); group II
/// uses c below and above 1.
pub fn sample_atlas(g: &GasConstants, panel: Panel, grid: &GridSpec) -> Result<Vec<CurveSample>> {
    GridSpec::new(grid.points, grid.min, grid.max)?;
    let sp = special_points(g);
    let mut out = Vec::new();
    match panel {
        Panel::GroupI => {
            let lo = grid.min.max(1.0);
            let xs = log_grid(lo, grid.max, grid.points, false);
            out.push(sample_curve(
                g,
                CurveId::IcVacuum,
                xs,
                |f| group1_vacuum_boundary(g, f).ok(),
                (Some(1.0), vec![(1.0, 0.0)]),
            ));
        }
        Panel::GroupII => {
            let below = log_grid(grid.min.min(0.5), 1.0, grid.points, false);
            out.push(sample_curve(
                g,
                CurveId::IicFstar,
                below,
                |c| iic_fstar(g, c).ok(),
                (None, vec![(0.0, (2f64.ln() / g.zeta).exp())]),
            ));
            let above = log_grid(1.0, grid.max.max(2.0), grid.points, false);
            out.push(sample_curve(
                g,
                CurveId::IidContact,
                above,
                |c| iid_contact_transition(g, c).ok(),
                (None, Vec::new()),
            ));
        }
        Panel::GroupIII => {
            let xs = log_grid(grid.min, grid.max, grid.points, true);
            let mut kx = xs.clone();
            for x in [1.0, sp.x0] {
                if x > grid.min && x < grid.max {
                    kx.push(x);
                }
            }
            kx.sort_by(f64::total_cmp);
            out.push(sample_curve(
                g,
                CurveId::KZero,
                kx,
                |x| k_curve(g, x).ok(),
                (Some(sp.yhat), vec![(1.0, 1.0), (sp.x0, sp.y0)]),
            ));
            let hi = grid.max.max(2.0);
            match sp.regime {
                AtlasRegime::BelowFiveThirds | AtlasRegime::FiveThirds => {
                    let mut hx = log_grid(1.0, hi, grid.points, false);
                    if sp.regime == AtlasRegime::BelowFiveThirds && sp.x0 < hi {
                        hx.push(sp.x0);
                        hx.sort_by(f64::total_cmp);
                    }
                    let x0 = sp.x0;
                    let y0 = sp.y0;
                    out.push(sample_curve(
                        g,
                        CurveId::HZero,
                        hx,
                        |x| if x == x0 && sp.regime == AtlasRegime::BelowFiveThirds { Some(y0) } else { h_curve(g, x) },
                        (None, sp.y1.map(|y1| vec![(1.0, y1)]).unwrap_or_default()),
                    ));
                }
                AtlasRegime::BetweenFiveThirdsAndTwo => {
                    let xbar = sp.xbar.expect("defined in this regime");
                    let hx = log_grid(xbar, hi.max(2.0 * xbar), grid.points, true);
                    out.push(sample_curve(g, CurveId::HZero, hx, |x| h_curve(g, x), (None, vec![(xbar, 1.0)])));
                    let jx = log_grid(1.0, xbar, share(grid, 1.0, xbar).max(grid.points / 4), true);
                    out.push(sample_curve(
                        g,
                        CurveId::JExplicit,
                        jx,
                        |x| j_explicit(g, x).ok(),
                        (None, vec![(1.0, sp.ybar.unwrap_or(f64::NAN)), (xbar, 1.0)]),
                    ));
                }
                AtlasRegime::TwoOrAbove => {
                    let jx = log_grid(1.0, hi, grid.points, true);
                    out.push(sample_curve(
                        g,
                        CurveId::JExplicit,
                        jx,
                        |x| j_explicit(g, x).ok(),
                        (sp.ystar, vec![(1.0, sp.ybar.unwrap_or(f64::NAN))]),
                    ));
                }
            }
            if sp.regime.above_five_thirds() {
                let ix = log_grid(grid.min.min(0.5 * sp.x0), 1.0, grid.points, false);
                out.push(sample_curve(
                    g,
                    CurveId::ICurve,
                    ix,
                    |x| i_curve(g, x).ok(),
                    (None, vec![(sp.x0, sp.y0), (1.0, sp.ybar.unwrap_or(f64::NAN))]),
                ));
            }
            let vx = log_grid(1.0, hi, grid.points, false);
            out.push(sample_curve(
                g,
                CurveId::VVacuum,
                vx,
                |x| v_vacuum_curve(g, x).ok().filter(|&v| v > 0.0),
                (Some(sp.yhat), vec![(1.0, 0.0)]),
            ));
        }
    }
    Ok(out)
}
