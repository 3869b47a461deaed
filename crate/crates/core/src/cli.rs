//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or I/O failure, 2 a check failed.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytic::closed_form_payoffs;
use crate::channels::{ChannelKind, NoiseModel};
use crate::equilibrium::{maximize_cooperator_payoff, SearchConfig};
use crate::game::{play, GameSpec, StrategyProfile, THETA_MAX};
use crate::sweep::{
    format_sig, run_sweep, Axis, ChannelSelection, SweepRequest, SweepRow, CSV_HEADER,
    ROW_ZERO_SUM_TOLERANCE,
};
use crate::verify::{run_verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

/// Directory used for sweep output when `--output` is not given.
pub const OUT_DIR_ENV: &str = "QCOOP_OUT_DIR";

/// Angles this close above π/2 are taken to be π/2, so that a rounded value
/// such as `1.5708` is accepted.
const THETA_SNAP: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(
    name = "qcoop",
    version,
    about = "Cooperative quantum games under decoherence"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Payoffs for one parameter point.
    Payoff(PayoffArgs),
    /// Payoffs over a (p, theta) grid, written as CSV or JSON.
    Surface(SurfaceArgs),
    /// Run the seeded invariant suite.
    Verify(VerifyArgs),
    /// Search for the cooperators' maximizing strategy and test it for Nash stability.
    Equilibrium(EquilibriumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChannelArg {
    Ad,
    Pd,
    Dp,
    /// No damping: any channel at p = 0.
    Nd,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ThetaArg {
    /// Entanglement angle in radians, 0..=pi/2.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "theta_deg")]
    theta: Option<f64>,
    /// Entanglement angle in degrees, 0..=90.
    #[arg(long, allow_hyphen_values = true)]
    theta_deg: Option<f64>,
}

impl ThetaArg {
    fn radians(&self) -> Result<f64, String> {
        match (self.theta, self.theta_deg) {
            (Some(t), _) => snap_theta(t),
            (None, Some(d)) => snap_theta(d.to_radians()),
            (None, None) => Err("missing --theta (or --theta-deg)".into()),
        }
    }
}

#[derive(Debug, Args)]
struct GameArgs {
    #[arg(long)]
    players: usize,
    #[arg(long, value_enum)]
    channel: ChannelArg,
}

#[derive(Debug, Args)]
struct StrategyArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    /// Player D's parameter; four-player game only.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
}

#[derive(Debug, Args)]
struct PayoffArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Decoherence parameter in [0, 1].
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[command(flatten)]
    theta: ThetaArg,
    #[command(flatten)]
    strategy: StrategyArgs,
    /// Also print the closed-form payoffs and their distance from the numeric ones.
    #[arg(long)]
    analytic: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    #[command(flatten)]
    game: GameArgs,
    #[command(flatten)]
    strategy: StrategyArgs,
    /// Fix p to a single value instead of sweeping it.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    p_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    p_max: f64,
    #[arg(long, default_value_t = 101)]
    p_count: usize,
    /// Fix theta (radians) to a single value instead of sweeping it.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta_min: f64,
    #[arg(long, default_value_t = THETA_MAX, allow_hyphen_values = true)]
    theta_max: f64,
    #[arg(long, default_value_t = 101)]
    theta_count: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; defaults to $QCOOP_OUT_DIR/surface_<players>p_<channel>.<ext>, else stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random parameter tuples per (game, channel) pair.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EquilibriumArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[command(flatten)]
    theta: ThetaArg,
    #[arg(long, default_value_t = 101)]
    grid_points: usize,
    #[arg(long, default_value_t = 1e-6)]
    refine_tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Payoff(a) => cmd_payoff(&a, out),
        Command::Surface(a) => cmd_surface(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Equilibrium(a) => cmd_equilibrium(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn snap_theta(theta: f64) -> Result<f64, String> {
    if theta > THETA_MAX && theta <= THETA_MAX + THETA_SNAP {
        Ok(THETA_MAX)
    } else if theta.is_finite() && (0.0..=THETA_MAX).contains(&theta) {
        Ok(theta)
    } else {
        Err(format!(
            "invalid value for theta: {theta} is outside [0, pi/2]"
        ))
    }
}

/// Resolves a single channel and its `p`, applying the `nd` alias.
fn single_channel(channel: ChannelArg, p: Option<f64>) -> Result<NoiseModel, Failure> {
    let kind = match channel {
        ChannelArg::Ad => ChannelKind::AmplitudeDamping,
        ChannelArg::Pd => ChannelKind::PhaseDamping,
        ChannelArg::Dp => ChannelKind::Depolarizing,
        ChannelArg::Nd => {
            return match p {
                None | Some(0.0) => Ok(NoiseModel::noiseless()),
                Some(p) => Err(Failure::invalid(format!(
                    "invalid value for p: channel nd implies p = 0, got {p}"
                ))),
            };
        }
        ChannelArg::All => {
            return Err(Failure::invalid(
                "invalid value for channel: `all` is only valid for `surface`",
            ))
        }
    };
    let p = p.ok_or_else(|| Failure::invalid("missing --p"))?;
    NoiseModel::new(kind, p).map_err(|e| Failure::invalid(format!("invalid value for p: {e}")))
}

fn profile_from(players: usize, s: &StrategyArgs) -> Result<StrategyProfile, Failure> {
    let profile = match (players, s.s) {
        (3, None) => StrategyProfile::three(s.q, s.r),
        (4, Some(d)) => StrategyProfile::four(s.q, s.r, d),
        (3, Some(_)) => {
            return Err(Failure::invalid(
                "invalid value for s: the three-player game has no player D",
            ))
        }
        (4, None) => return Err(Failure::invalid("missing --s for the four-player game")),
        (n, _) => {
            return Err(Failure::invalid(format!(
                "invalid value for players: {n} (expected 3 or 4)"
            )))
        }
    };
    profile.map_err(|e| Failure::invalid(format!("invalid value: {e}")))
}

fn game_spec(players: usize) -> Result<GameSpec, Failure> {
    GameSpec::for_players(players).map_err(|_| {
        Failure::invalid(format!(
            "invalid value for players: {players} (expected 3 or 4)"
        ))
    })
}

const PLAYER_NAMES: [&str; 4] = ["P_A", "P_B", "P_C", "P_D"];

fn cmd_payoff(a: &PayoffArgs, out: &mut dyn Write) -> CmdResult {
    let spec = game_spec(a.game.players)?;
    let model = single_channel(a.game.channel, a.p)?;
    let theta = a.theta.radians().map_err(Failure::invalid)?;
    let profile = profile_from(a.game.players, &a.strategy)?;
    let numeric = play(&spec, &model, theta, &profile)?;
    let closed = if a.analytic {
        Some(closed_form_payoffs(
            model.kind(),
            model.p(),
            theta,
            &profile,
        )?)
    } else {
        None
    };

    if a.json {
        let mut doc = serde_json::json!({
            "players": spec.players(),
            "channel": model.kind().label(),
            "p": model.p(),
            "theta": theta,
            "profile": profile,
            "payoffs": numeric,
        });
        if let Some(c) = &closed {
            doc["analytic"] = serde_json::to_value(c).expect("serializable");
            doc["max_abs_diff"] = numeric.max_abs_diff(c).into();
        }
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        )?;
        return Ok(EXIT_OK);
    }

    for (name, v) in PLAYER_NAMES.iter().zip(numeric.as_slice()) {
        write!(out, "{name}={} ", format_sig(*v))?;
    }
    writeln!(out)?;
    if let Some(c) = closed {
        for (name, v) in PLAYER_NAMES.iter().zip(c.as_slice()) {
            write!(out, "{name}_analytic={} ", format_sig(*v))?;
        }
        writeln!(out)?;
        writeln!(out, "max_abs_diff={:e}", numeric.max_abs_diff(&c))?;
    }
    Ok(EXIT_OK)
}

fn axis(name: &str, fixed: Option<f64>, min: f64, max: f64, count: usize) -> Result<Axis, Failure> {
    let snap = |x: f64| -> Result<f64, Failure> {
        if name == "theta" {
            snap_theta(x).map_err(Failure::invalid)
        } else {
            Ok(x)
        }
    };
    Ok(match fixed {
        Some(x) => Axis::point(snap(x)?),
        None => Axis::new(snap(min)?, snap(max)?, count),
    })
}

fn sweep_request(a: &SurfaceArgs) -> Result<SweepRequest, Failure> {
    let (channels, p_fixed) = match a.game.channel {
        ChannelArg::All => (ChannelSelection::All, a.p),
        other => {
            // `nd` forces p = 0
            let model = single_channel(other, a.p.or(Some(0.0)))?;
            let fixed = if other == ChannelArg::Nd {
                Some(0.0)
            } else {
                a.p
            };
            (ChannelSelection::One(model.kind()), fixed)
        }
    };
    let request = SweepRequest {
        players: a.game.players,
        channels,
        profile: profile_from(a.game.players, &a.strategy)?,
        p_grid: axis("p", p_fixed, a.p_min, a.p_max, a.p_count)?,
        theta_grid: axis("theta", a.theta, a.theta_min, a.theta_max, a.theta_count)?,
    };
    request
        .validate()
        .map_err(|e| Failure::invalid(format!("invalid sweep: {e}")))?;
    Ok(request)
}

fn check_rows(rows: &[SweepRow]) -> Result<(), Failure> {
    if let Some(bad) = rows.iter().find(|r| {
        let residual = r.zero_sum_residual();
        residual.is_nan() || residual > ROW_ZERO_SUM_TOLERANCE
    }) {
        return Err(Failure::check(format!(
            "zero-sum violated at p={}, theta={}, channel={}: residual {:e}",
            bad.p,
            bad.theta,
            bad.channel,
            bad.zero_sum_residual()
        )));
    }
    Ok(())
}

/// Writes rows in the fixed CSV schema.
pub fn write_csv<W: Write>(rows: &[SweepRow], writer: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_fields())?;
    }
    w.flush()
}

fn write_json<W: Write>(rows: &[SweepRow], mut writer: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut writer, rows)?;
    writeln!(writer)
}

fn cmd_surface(a: &SurfaceArgs, out: &mut dyn Write) -> CmdResult {
    let request = sweep_request(a)?;
    let rows = run_sweep(&request)?;
    check_rows(&rows)?;

    let ext = match a.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = a.output.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| {
            let channel = match request.channels {
                ChannelSelection::One(k) => k.label(),
                ChannelSelection::All => "all",
            };
            PathBuf::from(dir).join(format!("surface_{}p_{channel}.{ext}", request.players))
        })
    });

    let write = |w: &mut dyn Write| -> io::Result<()> {
        match a.format {
            Format::Csv => write_csv(&rows, w),
            Format::Json => write_json(&rows, w),
        }
    };
    match path {
        Some(path) => {
            let mut file = File::create(&path)
                .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?;
            write(&mut file)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        None => write(out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if a.samples == 0 {
        return Err(Failure::invalid(
            "invalid value for samples: must be positive",
        ));
    }
    let report = run_verify(&VerifyOptions {
        seed: a.seed,
        samples: a.samples,
        ..VerifyOptions::default()
    })?;
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        )?;
    } else {
        writeln!(
            out,
            "verify: seed={} samples={}",
            report.seed, report.samples
        )?;
        for c in &report.checks {
            let status = match (c.gating, c.passed()) {
                (false, _) => "info",
                (true, true) => "pass",
                (true, false) => "FAIL",
            };
            writeln!(
                out,
                "[{status}] {:<55} max_dev={:.3e} tol={:.0e}",
                c.name, c.max_deviation, c.tolerance
            )?;
        }
    }
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        Err(Failure::check(format!(
            "failing checks: {}",
            report.failures().join(", ")
        )))
    }
}

fn cmd_equilibrium(a: &EquilibriumArgs, out: &mut dyn Write) -> CmdResult {
    let spec = game_spec(a.game.players)?;
    let model = single_channel(a.game.channel, a.p)?;
    let theta = a.theta.radians().map_err(Failure::invalid)?;
    let config = SearchConfig {
        grid_points: a.grid_points,
        refine_tol: a.refine_tol,
        seed: a.seed,
        ..SearchConfig::default()
    };
    config
        .validate()
        .map_err(|e| Failure::invalid(format!("invalid search configuration: {e}")))?;
    let report = maximize_cooperator_payoff(&spec, &model, theta, &config)?;
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        )?;
        return Ok(EXIT_OK);
    }
    let argmax: Vec<String> = report
        .argmax
        .params()
        .iter()
        .map(|&x| format_sig(x))
        .collect();
    writeln!(out, "argmax=({})", argmax.join(", "))?;
    writeln!(out, "value={}", format_sig(report.value))?;
    writeln!(
        out,
        "stationarity_residual={:.3e}",
        report.stationarity_residual
    )?;
    writeln!(out, "nash_violation={:.3e}", report.nash_violation)?;
    writeln!(out, "flat={}", report.flat)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("qcoop").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn theta_snapping() {
        assert_eq!(snap_theta(1.5708), Ok(THETA_MAX));
        assert_eq!(snap_theta(0.3), Ok(0.3));
        assert!(snap_theta(1.58).is_err());
        assert!(snap_theta(-0.1).is_err());
    }

    #[test]
    fn nd_alias() {
        assert_eq!(single_channel(ChannelArg::Nd, None).unwrap().p(), 0.0);
        assert!(single_channel(ChannelArg::Nd, Some(0.2)).is_err());
    }

    #[test]
    fn parse_errors_exit_one() {
        let (code, _, err) = run_str(&["payoff", "--players", "3"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("required"));
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("surface"));
    }

    #[test]
    fn theta_deg_converts() {
        let (code, out, _) = run_str(&[
            "payoff",
            "--players",
            "3",
            "--channel",
            "pd",
            "--p",
            "0.4",
            "--theta-deg",
            "90",
            "--q",
            "0.5",
            "--r",
            "0.5",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "P_A=0.5 P_B=0.5 P_C=-1");
    }
}
