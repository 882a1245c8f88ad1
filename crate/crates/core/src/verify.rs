//! Property suites over sampled and gridded inputs.
//!
//! Every suite reduces with max/sum only, so results do not depend on how the
//! samples are split across worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{alpha, alpha_roots, aux_e, lambda_fn, m_of};
use crate::atlas::{
    h1_explicit, h_curve, h_reflect, iic_fstar, iid_contact_transition, j_explicit, k_classifier,
    k_curve, k_infinity, special_points, v_vacuum_curve, vacuum_residual, yhat, AtlasRegime,
};
use crate::error::Result;
use crate::gas::{GasConstants, PrimitiveState, ReferenceConstants};
use crate::interaction::{entropy_cross_check, solve_interaction, IncomingPair, InteractionKind};
use crate::kernels::{log_gamma_fn, KernelSet};
use crate::riemann;
use crate::roots::bisect;
use crate::waves::is_null;

pub const GAMMAS: [f64; 6] = [1.2, 1.4, 5.0 / 3.0, 1.9, 2.0, 3.0];

/// Strengths within this distance of 1 are excluded from oracle comparisons.
pub const NEAR_ONE: f64 = 1e-9;

#[derive(Clone, Copy)]
pub struct VerifyConfig {
    /// Random samples per sub-case and per interaction kind.
    pub samples: usize,
    /// Points on deterministic grids.
    pub grid: usize,
    pub seed: u64,
    pub tol: f64,
    pub kernels: KernelSet,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 2000,
            grid: 1000,
            seed: 1,
            tol: 1e-13,
            kernels: KernelSet::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaReport {
    pub gamma: f64,
    pub regime: AtlasRegime,
    /// Regime-specific suite that was selected.
    pub suite: String,
    pub properties: Vec<PropertyResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub properties: usize,
    pub failed: usize,
    pub gammas: Vec<GammaReport>,
}

/// Outcome of one sampled check.
pub enum Check {
    Skip,
    Pass(f64),
    Fail(f64, String),
}

impl Check {
    pub fn from_bool(ok: bool, residual: f64, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Check::Pass(residual)
        } else {
            Check::Fail(residual, detail())
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub max_residual: f64,
    first: Option<(usize, String)>,
}

impl Tally {
    fn one(index: usize, c: Check) -> Self {
        let mut t = Tally::default();
        match c {
            Check::Skip => t.skipped = 1,
            Check::Pass(r) => {
                t.checked = 1;
                t.max_residual = r.abs();
            }
            Check::Fail(r, d) => {
                t.checked = 1;
                t.failures = 1;
                t.max_residual = if r.is_nan() { f64::INFINITY } else { r.abs() };
                t.first = Some((index, d));
            }
        }
        t
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.checked += o.checked;
        self.skipped += o.skipped;
        self.failures += o.failures;
        self.max_residual = self.max_residual.max(o.max_residual);
        self.first = match (self.first, o.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn into_result(self, name: impl Into<String>, threshold: f64) -> PropertyResult {
        PropertyResult {
            name: name.into(),
            passed: self.failures == 0 && self.checked > 0,
            checked: self.checked,
            skipped: self.skipped,
            failures: self.failures,
            max_residual: self.max_residual,
            threshold,
            first_failure: self.first.map(|f| f.1),
        }
    }
}

/// Runs `f` over `items` in parallel and reduces the outcomes.
pub fn tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Check + Sync) -> Tally {
    items
        .par_iter()
        .enumerate()
        .map(|(i, x)| Tally::one(i, f(x)))
        .reduce(Tally::default, Tally::merge)
}

fn single(name: &str, ok: bool, residual: f64, threshold: f64, detail: impl FnOnce() -> String) -> PropertyResult {
    Tally::one(0, Check::from_bool(ok, residual, detail)).into_result(name, threshold)
}

/// Worker pool capped by `WAVELAB_THREADS` when set.
pub fn thread_pool() -> rayon::ThreadPool {
    let cap = std::env::var("WAVELAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cap {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i + 1 == n => hi,
            _ => (l + (h - l) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// Deterministic generator for one (suite, γ) stream.
pub fn rng_for(seed: u64, gamma: f64, stream: u64) -> ChaCha8Rng {
    let mix = seed
        ^ gamma.to_bits().rotate_left(17)
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    ChaCha8Rng::seed_from_u64(mix)
}

/// Log-uniform strength in (1, 1e3] or [1e-3, 1), outside the null band.
pub fn sample_strength<R: Rng>(rng: &mut R, above_one: bool) -> f64 {
    loop {
        let e: f64 = rng.gen_range(0.0..3.0);
        let s = 10f64.powf(if above_one { e } else { -e });
        if !is_null(s) {
            return s;
        }
    }
}

pub fn sample_pairs(kind: InteractionKind, n: usize, seed: u64, gamma: f64) -> Vec<IncomingPair> {
    let mut rng = rng_for(seed, gamma, 100 + kind as u64);
    let (l, r) = kind.strength_pattern();
    (0..n)
        .map(|_| {
            let sl = sample_strength(&mut rng, l);
            let sr = sample_strength(&mut rng, r);
            IncomingPair::new(kind, sl, sr).expect("sampled inside the validity region")
        })
        .collect()
}

fn near_one(s: &riemann::Strengths) -> bool {
    [s.b, s.c, s.f].iter().any(|v| (v - 1.0).abs() <= NEAR_ONE)
}

/// Relative gap below which a strict comparison is beyond double precision.
pub const RESOLUTION: f64 = 8.0 * f64::EPSILON;

fn unresolved(v: f64, bound: f64) -> bool {
    (v / bound - 1.0).abs() <= RESOLUTION
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

const UNIT: PrimitiveState = PrimitiveState { tau: 1.0, u: 0.0, p: 1.0 };

/// Compares the interaction solve with the Riemann solve on the composed states.
pub fn compare_with_riemann(pair: &IncomingPair, g: &GasConstants, tol: f64) -> Check {
    let (left, right) = pair.compose(&UNIT, g);
    let (out, sol) = match (solve_interaction(pair, g, tol), riemann::solve(&left, &right, g, tol)) {
        (Ok(o), Ok(s)) => (o, s),
        (a, b) => return Check::Fail(f64::NAN, format!("{pair:?}: {:?} / {:?}", a.err(), b.err())),
    };
    let detail = || format!("{pair:?}: interaction {:?} vs riemann {:?}", out.strengths, sol.strengths);
    // Types are compared only away from 1; strengths and vacuum flags always.
    let typed = ![out.strengths, sol.strengths].iter().flatten().any(near_one);
    if out.vacuum != sol.vacuum || (typed && out.types != sol.wave_types) {
        return Check::Fail(f64::NAN, detail());
    }
    match (out.strengths, sol.strengths) {
        (Some(a), Some(b)) => {
            let r = rel(a.b, b.b).max(rel(a.c, b.c)).max(rel(a.f, b.f));
            Check::from_bool(r <= 1e-9, r, detail)
        }
        _ => Check::Pass(0.0),
    }
}

fn solved(pair: &IncomingPair, g: &GasConstants, tol: f64) -> std::result::Result<crate::interaction::InteractionOutcome, Check> {
    solve_interaction(pair, g, tol).map_err(|e| Check::Fail(f64::NAN, format!("{pair:?}: {e}")))
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Oracle vacuum flag on the composed states.
fn oracle_vacuum(pair: &IncomingPair, g: &GasConstants) -> bool {
    let (l, r) = pair.compose(&UNIT, g);
    riemann::vacuum_check(&l, &r, g)
}

pub fn oracle_suite(g: &GasConstants, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    InteractionKind::ALL
        .iter()
        .map(|&kind| {
            let pairs = sample_pairs(kind, cfg.samples, cfg.seed, g.gamma);
            tally(&pairs, |p| compare_with_riemann(p, g, cfg.tol))
                .into_result(format!("{kind} matches riemann solve"), 1e-9)
        })
        .collect()
}

/// Head-on interactions: signs, contact rules and vacuum.
pub fn head_on_suite(g: &GasConstants, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    use InteractionKind::*;
    let tol = cfg.tol;
    let mut out = Vec::new();
    for kind in [Ia, Ib, Ic] {
        let pairs = sample_pairs(kind, cfg.samples, cfg.seed, g.gamma);
        out.push(
            tally(&pairs, |p| {
                let o = match solved(p, g, tol) {
                    Ok(o) => o,
                    Err(c) => return c,
                };
                let Some(s) = o.strengths else { return Check::Skip };
                let (f, b) = (p.s_left, p.s_right);
                let ok = sign(s.b - 1.0) == sign(b - 1.0) && sign(s.f - 1.0) == sign(f - 1.0);
                Check::from_bool(ok, 0.0, || format!("{p:?} -> {s:?}"))
            })
            .into_result(format!("{kind} outgoing signs follow incoming"), 0.0),
        );
        let contact = tally(&pairs, |p| {
            let o = match solved(p, g, tol) {
                Ok(o) => o,
                Err(c) => return c,
            };
            let Some(s) = o.strengths else { return Check::Skip };
            let bf = p.s_left * p.s_right;
            let d = || format!("{p:?} -> C = {}", s.c);
            match kind {
                Ia if (bf - 1.0).abs() < NEAR_ONE => Check::Skip,
                Ia => Check::from_bool(sign(s.c - 1.0) == sign(bf - 1.0), 0.0, d),
                Ib if unresolved(s.c, 1.0) => Check::Skip,
                Ib => Check::from_bool(s.c > 1.0, 0.0, d),
                _ => Check::from_bool((s.c - 1.0).abs() < 1e-10, s.c - 1.0, d),
            }
        });
        let (name, thr) = match kind {
            Ia => ("Ia contact follows bf vs 1", 0.0),
            Ib => ("Ib contact C > 1", 0.0),
            _ => ("Ic contact C = 1", 1e-10),
        };
        out.push(contact.into_result(name, thr));
    }
    let pairs = sample_pairs(Ic, cfg.samples, cfg.seed ^ 1, g.gamma);
    out.push(
        tally(&pairs, |p| {
            let (f, b) = (p.s_left, p.s_right);
            let margin = (g.zeta * b.ln()).exp() + (-g.zeta * f.ln()).exp() - 1.0;
            if margin.abs() < 1e-12 {
                return Check::Skip;
            }
            let ok = oracle_vacuum(p, g) == (margin <= 0.0);
            Check::from_bool(ok, 0.0, || format!("{p:?}: margin {margin:e}"))
        })
        .into_result("Ic vacuum iff b^zeta + f^-zeta <= 1", 0.0),
    );
    out
}

/// f < F < 1 < B < b and B + F < b + f for Ia; F < f < 1 for Ib.
pub fn out_in_suite(g: &GasConstants, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    use InteractionKind::*;
    [Ia, Ib]
        .into_iter()
        .map(|kind| {
            let pairs = sample_pairs(kind, cfg.samples, cfg.seed ^ 2, g.gamma);
            tally(&pairs, |p| {
                let o = match solved(p, g, cfg.tol) {
                    Ok(o) => o,
                    Err(c) => return c,
                };
                let Some(s) = o.strengths else { return Check::Skip };
                let (f, b) = (p.s_left, p.s_right);
                let ok = if kind == Ia {
                    f < s.f && s.f < 1.0 && 1.0 < s.b && s.b < b && s.b + s.f < b + f
                } else {
                    s.f < f && f < 1.0
                };
                Check::from_bool(ok, 0.0, || format!("{p:?} -> {s:?}"))
            })
            .into_result(
                if kind == Ia {
                    "Ia f < F < 1 < B < b and B + F < b + f"
                } else {
                    "Ib F < f < 1"
                },
                0.0,
            )
        })
        .collect()
}

/// C(f) for a IId pair with contact c, or NaN.
fn iid_contact(g: &GasConstants, f: f64, c: f64, tol: f64) -> f64 {
    IncomingPair::new(InteractionKind::IId, f, c)
        .and_then(|p| solve_interaction(&p, g, tol))
        .ok()
        .and_then(|o| o.strengths)
        .map_or(f64::NAN, |s| s.c)
}

/// The forward strength at which C(f) = 1, found by bisection on the solver.
pub fn iid_crossing_by_bisection(g: &GasConstants, c: f64, tol: f64) -> Option<f64> {
    let guess = iid_contact_transition(g, c).ok()?;
    let (lo, hi) = ((1.0 + 1e-6f64).ln(), (guess * 1e3).ln());
    let r = bisect(|t| 1.0 - iid_contact(g, t.exp(), c, tol), lo, hi).ok()?;
    Some(r.x.exp())
}

/// Contact interactions: signs, contact rules, vacuum, and the IId transition.
pub fn contact_suite(g: &GasConstants, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    use InteractionKind::*;
    let tol = cfg.tol;
    let mut out = Vec::new();
    for kind in [IIa, IIb, IIc, IId] {
        let pairs = sample_pairs(kind, cfg.samples, cfg.seed, g.gamma);
        out.push(
            tally(&pairs, |p| {
                let o = match solved(p, g, tol) {
                    Ok(o) => o,
                    Err(c) => return c,
                };
                let Some(s) = o.strengths else { return Check::Skip };
                let (f, c) = (p.s_left, p.s_right);
                let back = if matches!(kind, IIa | IIb) { 1.0 - c } else { c - 1.0 };
                let ok = sign(s.b - 1.0) == sign(back) && sign(s.f - 1.0) == sign(f - 1.0);
                Check::from_bool(ok, 0.0, || format!("{p:?} -> {s:?}"))
            })
            .into_result(format!("{kind} outgoing signs"), 0.0),
        );
        out.push(
            tally(&pairs, |p| {
                let o = match solved(p, g, tol) {
                    Ok(o) => o,
                    Err(c) => return c,
                };
                let Some(s) = o.strengths else { return Check::Skip };
                let c = p.s_right;
                let d = || format!("{p:?} -> C = {}", s.c);
                if kind != IIc && (unresolved(s.c, c) || unresolved(s.c, 1.0)) {
                    return Check::Skip;
                }
                match kind {
                    IIa => Check::from_bool(c < s.c && s.c < 1.0, 0.0, d),
                    IIb => Check::from_bool(1.0 < s.c && s.c < c, 0.0, d),
                    IIc => Check::from_bool((s.c - c).abs() <= 1e-12, s.c - c, d),
                    _ => Check::from_bool(s.c < c, 0.0, d),
                }
            })
            .into_result(
                match kind {
                    IIa => "IIa contact c < C < 1",
                    IIb => "IIb contact 1 < C < c",
                    IIc => "IIc contact C = c",
                    _ => "IId contact C < c",
                },
                if kind == IIc { 1e-12 } else { 0.0 },
            ),
        );
    }
    let pairs = sample_pairs(IIc, cfg.samples, cfg.seed ^ 1, g.gamma);
    out.push(
        tally(&pairs, |p| {
            let (f, c) = (p.s_left, p.s_right);
            let Ok(fs) = iic_fstar(g, c) else { return Check::Fail(f64::NAN, format!("{p:?}")) };
            if (f / fs - 1.0).abs() < 1e-12 {
                return Check::Skip;
            }
            let ok = oracle_vacuum(p, g) == (f >= fs);
            Check::from_bool(ok, 0.0, || format!("{p:?}: f* = {fs}"))
        })
        .into_result("IIc vacuum iff f >= f*(c)", 0.0),
    );

    let m = (cfg.samples / 100).max(8);
    let mut rng = rng_for(cfg.seed, g.gamma, 7);
    let cs: Vec<f64> = (0..m).map(|_| sample_strength(&mut rng, true)).collect();
    let grid = cfg.grid.clamp(20, 400);
    out.push(
        tally(&cs, |&c| {
            let Ok(ft) = iid_contact_transition(g, c) else {
                return Check::Fail(f64::NAN, format!("c = {c}"));
            };
            let vals: Vec<f64> = log_grid(1.0 + 1e-3, 10.0 * ft, grid)
                .into_iter()
                .map(|f| iid_contact(g, f, c, tol))
                .collect();
            let decreasing = vals.windows(2).all(|w| w[1] < w[0]);
            let both = vals.iter().any(|&v| v > 1.0) && vals.iter().any(|&v| v < 1.0);
            Check::from_bool(decreasing && both, 0.0, || format!("c = {c}"))
        })
        .into_result("IId C strictly decreasing in f through 1", 0.0),
    );
    out.push(
        tally(&cs, |&c| match (iid_crossing_by_bisection(g, c, tol), iid_contact_transition(g, c)) {
            (Some(fb), Ok(ft)) => {
                let r = rel(ft, fb);
                Check::from_bool(r <= 1e-6, r, || format!("c = {c}: solver {fb}, curve {ft}"))
            }
            _ => Check::Fail(f64::NAN, format!("c = {c}")),
        })
        .into_result("IId C = 1 at f = f_transition(c)", 1e-6),
    );
    out
}

/// Overtaking interactions: the k curve, classifier signs, contact signs, vacuum.
pub fn overtaking_suite(g: &GasConstants, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    use InteractionKind::*;
    let tol = cfg.tol;
    let sp = special_points(g);
    let mut out = Vec::new();

    let k1 = k_curve(g, 1.0).unwrap_or(f64::NAN);
    out.push(single("k(1) = 1", (k1 - 1.0).abs() <= 1e-10, k1 - 1.0, 1e-10, || format!("k(1) = {k1}")));
    let xs = log_grid(1e-3, 1e6, cfg.grid);
    let ks: Vec<f64> = xs.iter().map(|&x| k_curve(g, x).unwrap_or(f64::NAN)).collect();
    let bad = ks.windows(2).position(|w| !(w[1] < w[0]));
    out.push(single("k strictly decreasing", bad.is_none(), 0.0, 0.0, || {
        format!("at x = {}", xs[bad.unwrap_or(0)])
    }));
    let kinf = bisect(|t| k_infinity(g, t.exp()), -700.0, 0.0).map(|r| r.x.exp()).unwrap_or(f64::NAN);
    let r = rel(kinf, sp.yhat);
    out.push(single("root of K at x = infinity equals yhat", r <= 1e-12, r, 1e-12, || {
        format!("root {kinf} vs yhat {}", sp.yhat)
    }));
    let v8 = v_vacuum_curve(g, 1e8).unwrap_or(f64::NAN);
    out.push(single("V(1e8) within 1e-5 of yhat", (v8 - yhat(g)).abs() <= 1e-5, v8 - yhat(g), 1e-5, || {
        format!("V(1e8) = {v8}")
    }));

    for kind in [IIIa, IIIb, IIIc] {
        let pairs = sample_pairs(kind, cfg.samples, cfg.seed, g.gamma);
        out.push(
            tally(&pairs, |p| {
                let (x, y) = (p.s_left, p.s_right);
                let (k, h) = (k_classifier(g, x, y), h_reflect(g, x, y));
                if k.abs() < 1e-12 || h.abs() < 1e-12 {
                    return Check::Skip;
                }
                let o = match solved(p, g, tol) {
                    Ok(o) => o,
                    Err(c) => return c,
                };
                let Some(s) = o.strengths else { return Check::Skip };
                let ok = (s.b > 1.0) == (k < 0.0) && (s.f > 1.0) == (h > 0.0);
                Check::from_bool(ok, 0.0, || format!("{p:?}: K = {k:e}, H = {h:e} -> {s:?}"))
            })
            .into_result(format!("{kind} signs of B-1, F-1 follow K, H"), 0.0),
        );
        out.push(
            tally(&pairs, |p| {
                let o = match solved(p, g, tol) {
                    Ok(o) => o,
                    Err(c) => return c,
                };
                let Some(s) = o.strengths else { return Check::Skip };
                if unresolved(s.c, 1.0) {
                    return Check::Skip;
                }
                let ok = if kind == IIIa { s.c < 1.0 } else { s.c > 1.0 };
                Check::from_bool(ok, 0.0, || format!("{p:?} -> C = {}", s.c))
            })
            .into_result(if kind == IIIa { "IIIa contact C < 1" } else if kind == IIIb { "IIIb contact C > 1" } else { "IIIc contact C > 1" }, 0.0),
        );
    }

    let pairs = sample_pairs(IIIb, cfg.samples, cfg.seed ^ 1, g.gamma);
    out.push(
        tally(&pairs, |p| {
            let (x, y) = (p.s_left, p.s_right);
            let v = v_vacuum_curve(g, x).unwrap_or(f64::NAN);
            if (y / v - 1.0).abs() < 1e-12 {
                return Check::Skip;
            }
            let ok = oracle_vacuum(p, g) == (y <= v);
            Check::from_bool(ok, 0.0, || format!("{p:?}: V = {v:e}"))
        })
        .into_result("IIIb vacuum iff y <= V(x)", 0.0),
    );
    let xs = log_grid(1.0 + 1e-6, 1e6, cfg.grid);
    out.push(
        tally(&xs, |&x| {
            let v = v_vacuum_curve(g, x).unwrap_or(f64::NAN);
            if v == 0.0 {
                return Check::Skip;
            }
            let r = vacuum_residual(g, x, v);
            Check::from_bool(r.abs() < 1e-8, r, || format!("x = {x}, V = {v:e}"))
        })
        .into_result("vacuum residual vanishes on V", 1e-8),
    );
    out
}

/// Reflected-wave topology checks for the regime of γ; returns the suite label.
pub fn regime_suite(g: &GasConstants, cfg: &VerifyConfig) -> (String, Vec<PropertyResult>) {
    let sp = special_points(g);
    let mut out = Vec::new();
    let xs = log_grid(1.0 + 1e-6, 1e6, cfg.grid.min(400));
    let h_above_k = |name: &str, xs: &[f64]| {
        tally(xs, |&x| match (h_curve(g, x), k_curve(g, x)) {
            (Some(h), Ok(k)) => Check::from_bool(h > k, h - k, || format!("x = {x}: h = {h}, k = {k}")),
            _ => Check::Fail(f64::NAN, format!("x = {x}: h undefined")),
        })
        .into_result(name, 0.0)
    };
    let label = match sp.regime {
        AtlasRegime::BelowFiveThirds => {
            let (x0, y0) = (sp.x0, sp.y0);
            out.push(
                tally(&xs, |&x| match (h_curve(g, x), k_curve(g, x)) {
                    _ if (x / x0 - 1.0).abs() < 1e-6 => Check::Skip,
                    (Some(h), Ok(k)) => Check::from_bool((h > k) == (x > x0), h - k, || {
                        format!("x = {x}: h = {h}, k = {k}")
                    }),
                    _ => Check::Fail(f64::NAN, format!("x = {x}: h undefined")),
                })
                .into_result("h defined for x > 1 and crosses k only at x0", 0.0),
            );
            let r = k_classifier(g, x0, y0).abs().max(h_reflect(g, x0, y0).abs());
            out.push(single("k and h meet at (1/y0, y0)", r < 1e-9, r, 1e-9, || format!("x0 = {x0}")));
            let hk = match (h_curve(g, x0), k_curve(g, x0)) {
                (Some(h), Ok(k)) => (h - y0).abs().max((k - y0).abs()),
                _ => f64::NAN,
            };
            out.push(single("h(x0) = k(x0) = y0", hk < 1e-9, hk, 1e-9, || format!("gap {hk:e}")));
            let y1 = sp.y1.unwrap_or(f64::NAN);
            let d = h1_explicit(g, 1.0 + 1e-8).unwrap_or(f64::NAN) - y1;
            out.push(single("h tends to y1 as x -> 1", d.abs() < 1e-8, d, 1e-8, || format!("y1 = {y1}")));
            "reflected wave: h over (1, inf) with junction at x0"
        }
        AtlasRegime::FiveThirds => {
            let r = alpha_roots(g);
            out.push(single("y0 = x0 = 1", r.y0 == 1.0 && r.x0 == 1.0, r.y0 - 1.0, 0.0, || format!("y0 = {}", r.y0)));
            out.push(h_above_k("h defined and strictly above k for x > 1", &xs));
            "reflected wave: y0 = 1 path"
        }
        AtlasRegime::BetweenFiveThirdsAndTwo => {
            let xbar = sp.xbar.unwrap_or(f64::NAN);
            let hb = h_curve(g, xbar).unwrap_or(f64::NAN) - 1.0;
            out.push(single("h(xbar) = 1", hb.abs() <= 1e-8, hb, 1e-8, || format!("xbar = {xbar}")));
            let jb = j_explicit(g, xbar).unwrap_or(f64::NAN) - 1.0;
            out.push(single("j(xbar) = 1", jb.abs() <= 1e-8, jb, 1e-8, || format!("xbar = {xbar}")));
            let before: Vec<f64> = log_grid(1.0 + 1e-6, xbar * (1.0 - 1e-9), 50);
            out.push(
                tally(&before, |&x| Check::from_bool(h_curve(g, x).is_none(), 0.0, || format!("h({x}) defined")))
                    .into_result("h undefined below xbar", 0.0),
            );
            let after: Vec<f64> = log_grid(xbar * (1.0 + 1e-6), 1e6, cfg.grid.min(400));
            out.push(h_above_k("h defined and above k beyond xbar", &after));
            "reflected wave: h from xbar, j and i"
        }
        AtlasRegime::TwoOrAbove => {
            out.push(
                tally(&xs, |&x| Check::from_bool(h_curve(g, x).is_none(), 0.0, || format!("h({x}) defined")))
                    .into_result("no h curve", 0.0),
            );
            let ys = sp.ystar.unwrap_or(f64::NAN);
            let d = j_explicit(g, 1e9).unwrap_or(f64::NAN) - ys;
            out.push(single("j(1e9) within 1e-6 of y*", d.abs() <= 1e-6, d, 1e-6, || format!("y* = {ys}")));
            if (g.gamma - 2.0).abs() < 1e-12 {
                out.push(single("y* = 1 at gamma = 2", (ys - 1.0).abs() <= 1e-10, ys - 1.0, 1e-10, || format!("y* = {ys}")));
            }
            "reflected wave: j and i only"
        }
    };
    (label.to_string(), out)
}

/// The reciprocity identity √(qφ⃗(q)) ψ⃖(1/q) = −ψ⃗(q), evaluated through `kernels`.
pub fn reciprocity(g: &GasConstants, kernels: &KernelSet, grid: usize) -> PropertyResult {
    let qs = log_grid(1e-6, 1e6, grid);
    tally(&qs, |&q| {
        let r = (q * (kernels.phi_f)(g, q)).sqrt() * (kernels.psi_b)(g, 1.0 / q) + (kernels.psi_f)(g, q);
        Check::from_bool(r.abs() < 1e-12, r, || format!("q = {q}: residual {r:e}"))
    })
    .into_result("reciprocity of backward and forward kernels", 1e-12)
}

pub fn lemma_suite(g: &GasConstants, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    let mut out = vec![reciprocity(g, &cfg.kernels, cfg.grid)];

    let xs = log_grid(1.0, 1e6, cfg.grid + 1);
    let xs = &xs[1..];
    out.push(
        tally(xs, |&x| {
            let m = m_of(g, x);
            let lin = 1.0 + g.kappa * (x - 1.0) / (g.nu * (x + g.a).sqrt());
            let pow = (g.zeta * x.ln()).exp();
            let margin = (m - pow).min(m - lin);
            Check::from_bool(margin > 0.0, margin, || format!("x = {x}: M = {m}, x^zeta = {pow}, linear {lin}"))
        })
        .into_result("M(x) above x^zeta and its linear bound for x > 1", 0.0),
    );

    let mut rng = rng_for(cfg.seed, g.gamma, 11);
    let triples: Vec<(f64, f64, bool)> = (0..cfg.samples)
        .map(|i| {
            let mixed = i % 2 == 0;
            (sample_strength(&mut rng, false), sample_strength(&mut rng, mixed), mixed)
        })
        .collect();
    out.push(
        tally(&triples, |&(x, y, mixed)| {
            let le = |v: f64| aux_e(g, v).map(f64::ln).unwrap_or(f64::NAN);
            let d = le(x * y) - le(x) - le(y);
            if d.abs() < 1e-13 || (mixed && (x * y - 1.0).abs() < NEAR_ONE) {
                return Check::Skip;
            }
            let ok = if mixed { (d > 0.0) == (x * y < 1.0) } else { d < 0.0 };
            Check::from_bool(ok, 0.0, || format!("x = {x}, y = {y}: log E(xy)/(E(x)E(y)) = {d:e}"))
        })
        .into_result("E(xy) against E(x)E(y)", 0.0),
    );

    let mut rng = rng_for(cfg.seed, g.gamma, 12);
    let (la, lb) = (g.a.ln(), -g.a.ln());
    let pairs: Vec<(f64, f64)> = std::iter::from_fn(|| {
        let s = rng.gen_range(la..lb).exp();
        let t = rng.gen_range(la..lb).exp();
        Some((s, t))
    })
    .filter(|&(s, t)| s * t > g.a && s * t < 1.0 / g.a)
    .take(cfg.samples)
    .collect();
    out.push(
        tally(&pairs, |&(s, t)| {
            let d = log_gamma_fn(g, s * t) - log_gamma_fn(g, s) - log_gamma_fn(g, t);
            let prod = (1.0 - s * t) * (1.0 - s) * (1.0 - t);
            if d.abs() < 1e-12 || prod.abs() < 1e-12 {
                return Check::Skip;
            }
            Check::from_bool((d > 0.0) == (prod > 0.0), 0.0, || format!("s = {s}, t = {t}: {d:e}"))
        })
        .into_result("Gamma(s)Gamma(t) < Gamma(st) iff (1-st)(1-s)(1-t) > 0", 0.0),
    );

    let n = cfg.grid.max(3);
    let zs: Vec<f64> = (1..=n).map(|i| 1.0 + 19.0 * i as f64 / n as f64).collect();
    let ls: Vec<f64> = zs.iter().map(|&z| lambda_fn(g, z).unwrap_or(f64::NAN)).collect();
    let idx: Vec<usize> = (1..n - 1).collect();
    out.push(
        tally(&idx, |&i| {
            let d2 = ls[i + 1] - 2.0 * ls[i] + ls[i - 1];
            let noise = 8.0 * f64::EPSILON * ls[i].abs().max(1.0);
            Check::from_bool(d2 <= noise, d2.max(0.0), || format!("z = {}: second difference {d2:e}", zs[i]))
        })
        .into_result("Lambda concave on (1, 20]", 0.0),
    );

    out.push(alpha_root_count(g));
    out
}

/// Distinct roots of α: sign changes away from 1 plus the root at 1.
pub fn alpha_root_count(g: &GasConstants) -> PropertyResult {
    let qs: Vec<f64> = log_grid(1e-8, 1e8, 4001)
        .into_iter()
        .filter(|q| (q - 1.0).abs() > 1e-3)
        .collect();
    let mut away = 0;
    for w in qs.windows(2) {
        let (s0, s1) = (sign(alpha(g, w[0])), sign(alpha(g, w[1])));
        if s0 != s1 && !(w[0] < 1.0 && w[1] > 1.0) {
            away += 1;
        }
    }
    let roots = away + 1;
    let expected = if special_points(g).regime == AtlasRegime::FiveThirds { 1 } else { 2 };
    single("alpha root count", roots == expected, 0.0, 0.0, || format!("found {roots}, expected {expected}"))
}

pub fn entropy_suite(g: &GasConstants, cfg: &VerifyConfig) -> Vec<PropertyResult> {
    use InteractionKind::*;
    let per = cfg.samples.div_ceil(3);
    let pairs: Vec<IncomingPair> = [IIIa, IIIb, IIIc]
        .into_iter()
        .flat_map(|k| sample_pairs(k, per, cfg.seed ^ 3, g.gamma))
        .collect();
    let reference = ReferenceConstants::default();
    let run = |p: &IncomingPair| -> Check {
        let o = match solved(p, g, cfg.tol) {
            Ok(o) => o,
            Err(c) => return c,
        };
        let Some(s) = o.strengths else { return Check::Skip };
        match entropy_cross_check(p, g, &reference) {
            Ok(e) => {
                let same_dir = sign(e.c - 1.0) == sign(s.c - 1.0);
                let r = e.max_relative_difference;
                Check::from_bool(r <= 1e-8 && same_dir, r, || format!("{p:?}: {e:?}"))
            }
            Err(err) => Check::Fail(f64::NAN, format!("{p:?}: {err}")),
        }
    };
    vec![tally(&pairs, run).into_result("entropy form reproduces strengths and contact direction", 1e-8)]
}

pub fn verify_gamma(g: &GasConstants, cfg: &VerifyConfig) -> GammaReport {
    let (suite, regime_props) = regime_suite(g, cfg);
    let mut properties = Vec::new();
    properties.extend(oracle_suite(g, cfg));
    properties.extend(head_on_suite(g, cfg));
    properties.extend(out_in_suite(g, cfg));
    properties.extend(contact_suite(g, cfg));
    properties.extend(overtaking_suite(g, cfg));
    properties.extend(regime_props);
    properties.extend(lemma_suite(g, cfg));
    properties.extend(entropy_suite(g, cfg));
    GammaReport {
        gamma: g.gamma,
        regime: AtlasRegime::of(g),
        suite,
        properties,
    }
}

pub fn run(gammas: &[f64], cfg: &VerifyConfig) -> Result<VerifyReport> {
    let gases = gammas.iter().map(|&g| GasConstants::new(g)).collect::<Result<Vec<_>>>()?;
    let pool = thread_pool();
    let reports: Vec<GammaReport> = pool.install(|| gases.iter().map(|g| verify_gamma(g, cfg)).collect());
    let properties = reports.iter().map(|r| r.properties.len()).sum();
    let failed = reports.iter().flat_map(|r| &r.properties).filter(|p| !p.passed).count();
    Ok(VerifyReport {
        passed: failed == 0,
        properties,
        failed,
        gammas: reports,
    })
}
