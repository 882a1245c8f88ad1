//! Command-line front end. Exit status: 0 success, 1 property failure, 2 input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::atlas::{sample_atlas, CurveSample, GridSpec, Panel};
use crate::interaction::{
    classify_pair, predict, solve_classified, Classification, IncomingPair, InteractionKind,
    InteractionOutcome, Prediction,
};
use crate::io::{curve_to_string, to_json, write_curves, Envelope, Format};
use crate::riemann::{self, recomposition_error, RiemannSolution, DEFAULT_TOL};
use crate::verify::{self, VerifyConfig, VerifyReport, GAMMAS};
use crate::waves::WaveFamily;
use crate::{GasConstants, PrimitiveState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wavelab", version, about = "Riemann problems and wave interactions for 1-D Lagrangian ideal-gas flow")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Adiabatic exponent (verify runs six standard values when omitted).
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Root-finder tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Points per curve (atlas) or per deterministic grid (verify).
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Seed for randomized grids.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Directory for output files; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the Riemann problem between two states given as tau,u,p.
    Riemann {
        #[arg(long, value_parser = parse_state, allow_hyphen_values = true)]
        left: PrimitiveState,
        #[arg(long, value_parser = parse_state, allow_hyphen_values = true)]
        right: PrimitiveState,
    },
    /// Resolve the interaction of two adjacent waves.
    ///
    /// KIND is an interaction kind (Ia .. IIIc) with strengths in its canonical order,
    /// or two family letters from B, J, F (e.g. FB, JB, FF) in left-to-right order.
    Interact {
        kind: String,
        left: f64,
        right: f64,
    },
    /// Sample the transitional curves of a panel (groupI, groupII, groupIII).
    Atlas {
        panel: String,
        /// Lower end of the sampled window.
        #[arg(long)]
        min: Option<f64>,
        /// Upper end of the sampled window.
        #[arg(long)]
        max: Option<f64>,
    },
    /// Run the property suites and report pass/fail per property.
    Verify {
        /// Random samples per sub-case.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

fn parse_state(s: &str) -> Result<PrimitiveState, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected tau,u,p, got {s:?}"));
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    PrimitiveState::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

fn family_of(c: char) -> Option<WaveFamily> {
    match c.to_ascii_uppercase() {
        'B' => Some(WaveFamily::BackwardAcoustic),
        'J' => Some(WaveFamily::Contact),
        'F' => Some(WaveFamily::ForwardAcoustic),
        _ => None,
    }
}

/// Classification for a kind name or a two-letter family pair.
pub fn parse_interaction(kind: &str, left: f64, right: f64) -> crate::Result<Classification> {
    if let Ok(k) = kind.parse::<InteractionKind>() {
        return Ok(Classification::Meets {
            pair: IncomingPair::new(k, left, right)?,
            mirrored: false,
        });
    }
    let fams: Vec<WaveFamily> = kind.chars().filter_map(family_of).collect();
    if fams.len() != 2 || kind.chars().count() != 2 {
        return Err(crate::Error::InvalidPair(format!(
            "unknown interaction {kind:?}; use a kind (Ia..IIIc) or two of B, J, F"
        )));
    }
    classify_pair(fams[0], left, fams[1], right)
}

/// Text to print and the exit status of a command.
pub struct Output {
    pub stdout: String,
    pub status: i32,
}

#[derive(Serialize)]
struct RiemannInput {
    left: PrimitiveState,
    right: PrimitiveState,
    tol: f64,
}

#[derive(Serialize)]
struct RiemannResidualReport {
    curve: f64,
    velocity: f64,
    recomposition: f64,
    iterations: usize,
}

#[derive(Serialize)]
struct InteractInput<'a> {
    kind: &'a str,
    left: f64,
    right: f64,
    tol: f64,
}

#[derive(Serialize)]
struct InteractResult {
    meets: bool,
    mirrored: bool,
    canonical: Option<IncomingPair>,
    outcome: Option<InteractionOutcome>,
    prediction: Option<Prediction>,
    prediction_holds: Option<bool>,
}

#[derive(Serialize)]
struct InteractResidualReport {
    equation: f64,
    product: f64,
    iterations: usize,
}

#[derive(Serialize)]
struct AtlasInput {
    panel: String,
    grid: GridSpec,
}

#[derive(Serialize)]
struct VerifyInput {
    samples: usize,
    grid: usize,
    seed: u64,
    tol: f64,
}

#[derive(Serialize)]
struct VerifyResiduals {
    properties: usize,
    failed: usize,
    max_failing_residual: f64,
}

fn gas(global: &GlobalArgs) -> crate::Result<GasConstants> {
    GasConstants::new(global.gamma.unwrap_or(1.4))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn riemann_cmd(global: &GlobalArgs, left: &PrimitiveState, right: &PrimitiveState) -> crate::Result<String> {
    let g = gas(global)?;
    let sol: RiemannSolution = riemann::solve(left, right, &g, global.tol)?;
    let recomposition = sol
        .strengths
        .map_or(0.0, |s| recomposition_error(left, right, &s, &g));
    match global.format {
        OutputFormat::Json => Ok(to_json(&Envelope {
            gamma: g.gamma,
            input: RiemannInput { left: *left, right: *right, tol: global.tol },
            residuals: RiemannResidualReport {
                curve: sol.residuals.curve,
                velocity: sol.residuals.velocity,
                recomposition,
                iterations: sol.residuals.iterations,
            },
            result: sol,
        })
        .expect("serializable")),
        OutputFormat::Csv => {
            let s = sol.strengths;
            let fan = sol.fan;
            Ok(format!(
                "gamma,vacuum,B,C,F,backward,contact,forward,fan_left,fan_right,recomposition\n{},{},{},{},{},{:?},{:?},{:?},{},{},{}\n",
                g.gamma,
                sol.vacuum,
                fmt_opt(s.map(|s| s.b)),
                fmt_opt(s.map(|s| s.c)),
                fmt_opt(s.map(|s| s.f)),
                sol.wave_types[0],
                sol.wave_types[1],
                sol.wave_types[2],
                fmt_opt(fan.map(|f| f.s_left)),
                fmt_opt(fan.map(|f| f.s_right)),
                recomposition
            ))
        }
    }
}

fn interact_cmd(global: &GlobalArgs, kind: &str, left: f64, right: f64) -> crate::Result<String> {
    let g = gas(global)?;
    let cls = parse_interaction(kind, left, right)?;
    let outcome = solve_classified(&cls, &g, global.tol)?;
    let (canonical, mirrored) = match cls {
        Classification::Meets { pair, mirrored } => (Some(pair), mirrored),
        Classification::NotMeeting => (None, false),
    };
    let prediction = canonical.map(|p| predict(&p, &g));
    let prediction_holds = match (&prediction, canonical) {
        (Some(p), Some(pair)) => Some(p.agrees_with(&crate::interaction::solve_interaction(&pair, &g, global.tol)?)),
        _ => None,
    };
    let res = outcome.as_ref().map_or(Default::default(), |o| o.residuals);
    match global.format {
        OutputFormat::Json => Ok(to_json(&Envelope {
            gamma: g.gamma,
            input: InteractInput { kind, left, right, tol: global.tol },
            result: InteractResult {
                meets: canonical.is_some(),
                mirrored,
                canonical,
                outcome: outcome.clone(),
                prediction,
                prediction_holds,
            },
            residuals: InteractResidualReport {
                equation: res.equation,
                product: res.product,
                iterations: res.iterations,
            },
        })
        .expect("serializable")),
        OutputFormat::Csv => {
            let s = outcome.as_ref().and_then(|o| o.strengths);
            let types = outcome.as_ref().map(|o| o.types);
            Ok(format!(
                "gamma,kind,meets,vacuum,B,C,F,backward,contact,forward,tag\n{},{},{},{},{},{},{},{},{},{},\"{}\"\n",
                g.gamma,
                canonical.map_or(String::new(), |p| p.kind.to_string()),
                canonical.is_some(),
                outcome.as_ref().is_some_and(|o| o.vacuum),
                fmt_opt(s.map(|s| s.b)),
                fmt_opt(s.map(|s| s.c)),
                fmt_opt(s.map(|s| s.f)),
                types.map_or(String::new(), |t| format!("{:?}", t[0])),
                types.map_or(String::new(), |t| format!("{:?}", t[1])),
                types.map_or(String::new(), |t| format!("{:?}", t[2])),
                prediction.map_or(String::new(), |p| p.tag)
            ))
        }
    }
}

fn atlas_samples(
    global: &GlobalArgs,
    panel: &str,
    min: Option<f64>,
    max: Option<f64>,
) -> crate::Result<(Panel, GridSpec, Vec<CurveSample>)> {
    let g = gas(global)?;
    let panel: Panel = panel.parse()?;
    let d = GridSpec::default_for(panel);
    let grid = GridSpec::new(global.grid.unwrap_or(d.points), min.unwrap_or(d.min), max.unwrap_or(d.max))?;
    let samples = sample_atlas(&g, panel, &grid)?;
    Ok((panel, grid, samples))
}

fn verify_cmd(global: &GlobalArgs, samples: usize) -> crate::Result<(String, bool)> {
    if samples == 0 {
        return Err(crate::Error::InvalidPair("samples must be at least 1".into()));
    }
    if !(global.tol > 0.0) {
        return Err(crate::Error::Tolerance(global.tol));
    }
    let gammas: Vec<f64> = global.gamma.map_or(GAMMAS.to_vec(), |g| vec![g]);
    let cfg = VerifyConfig {
        samples,
        grid: global.grid.unwrap_or(VerifyConfig::default().grid).max(3),
        seed: global.seed,
        tol: global.tol.min(VerifyConfig::default().tol),
        ..VerifyConfig::default()
    };
    let report: VerifyReport = verify::run(&gammas, &cfg)?;
    let max_failing_residual = report
        .gammas
        .iter()
        .flat_map(|r| &r.properties)
        .filter(|p| !p.passed)
        .map(|p| p.max_residual)
        .fold(0.0, f64::max);
    let passed = report.passed;
    let text = to_json(&Envelope {
        gamma: gammas,
        input: VerifyInput { samples, grid: cfg.grid, seed: cfg.seed, tol: cfg.tol },
        residuals: VerifyResiduals {
            properties: report.properties,
            failed: report.failed,
            max_failing_residual,
        },
        result: report,
    })
    .expect("serializable");
    Ok((text, passed))
}

fn emit(global: &GlobalArgs, name: &str, text: String) -> std::io::Result<String> {
    match &global.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let ext = match global.format {
                OutputFormat::Json => "json",
                OutputFormat::Csv => "csv",
            };
            let path = dir.join(format!("{name}.{ext}"));
            fs::write(&path, text)?;
            Ok(format!("{}\n", path.display()))
        }
        None => Ok(text),
    }
}

/// Runs a parsed command line and returns what to print with the exit status.
pub fn execute(cli: &Cli) -> Output {
    let global = &cli.global;
    let fail = |msg: String| Output { stdout: format!("error: {msg}\n"), status: EXIT_INPUT };
    let done = |r: std::io::Result<String>, status: i32| match r {
        Ok(stdout) => Output { stdout, status },
        Err(e) => Output { stdout: format!("error: {e}\n"), status: EXIT_INPUT },
    };
    if !(global.tol > 0.0) {
        return fail(format!("tolerance must be positive, got {}", global.tol));
    }
    if global.grid == Some(0) {
        return fail("grid must be at least 1".into());
    }
    match &cli.command {
        Command::Riemann { left, right } => match riemann_cmd(global, left, right) {
            Ok(t) => done(emit(global, "riemann", t), EXIT_OK),
            Err(e) => fail(e.to_string()),
        },
        Command::Interact { kind, left, right } => match interact_cmd(global, kind, *left, *right) {
            Ok(t) => done(emit(global, "interact", t), EXIT_OK),
            Err(e) => fail(e.to_string()),
        },
        Command::Atlas { panel, min, max } => match atlas_samples(global, panel, *min, *max) {
            Ok((panel, grid, samples)) => {
                let input = AtlasInput { panel: panel.to_string(), grid };
                let format = Format::from(global.format);
                match &global.out {
                    Some(dir) => done(
                        write_curves(dir, &samples, format, &input)
                            .map(|paths| paths.iter().map(|p| format!("{}\n", p.display())).collect())
                            .map_err(|e| std::io::Error::other(e.to_string())),
                        EXIT_OK,
                    ),
                    None => done(
                        samples
                            .iter()
                            .map(|s| curve_to_string(s, format, &input))
                            .collect::<Result<String, _>>()
                            .map_err(|e| std::io::Error::other(e.to_string())),
                        EXIT_OK,
                    ),
                }
            }
            Err(e) => fail(e.to_string()),
        },
        Command::Verify { samples } => match verify_cmd(global, *samples) {
            Ok((t, passed)) => done(emit(global, "verify", t), if passed { EXIT_OK } else { EXIT_PROPERTY }),
            Err(e) => fail(e.to_string()),
        },
    }
}

/// Parses `args`, runs the command and writes its output. Returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let out = execute(&cli);
    if out.status == EXIT_INPUT {
        eprint!("{}", out.stdout);
    } else {
        let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    }
    out.status
}
