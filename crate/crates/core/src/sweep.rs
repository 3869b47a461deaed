//! Payoff sweeps over `(p, θ)` grids.

use serde::Serialize;

use crate::channels::{ChannelKind, NoiseModel};
use crate::error::{check_range, check_unit, Error, Result};
use crate::game::{GameSpec, PayoffVector, PreparedGame, StrategyProfile, THETA_MAX};

/// Zero-sum residual tolerated on an emitted row.
pub const ROW_ZERO_SUM_TOLERANCE: f64 = 1e-12;

pub const CSV_HEADER: [&str; 11] = [
    "players", "channel", "p", "theta", "q", "r", "s", "P_A", "P_B", "P_C", "P_D",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChannelSelection {
    One(ChannelKind),
    All,
}

impl ChannelSelection {
    pub fn kinds(&self) -> Vec<ChannelKind> {
        match self {
            ChannelSelection::One(kind) => vec![*kind],
            ChannelSelection::All => ChannelKind::ALL.to_vec(),
        }
    }
}

/// An evenly spaced closed interval. A single point is written with
/// `min == max` and `count == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x, 1)
    }

    fn validate(&self, name: &'static str, upper: f64) -> Result<()> {
        check_range(name, self.min, 0.0, upper)?;
        check_range(name, self.max, 0.0, upper)?;
        let single = self.count == 1 && self.min == self.max;
        if !single && (self.count < 2 || self.min >= self.max) {
            return Err(Error::InvalidQuery(format!(
                "{name} grid needs count >= 2 and min < max (or a single point)"
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRequest {
    pub players: usize,
    pub channels: ChannelSelection,
    pub profile: StrategyProfile,
    pub p_grid: Axis,
    pub theta_grid: Axis,
}

impl SweepRequest {
    pub fn validate(&self) -> Result<()> {
        if self.players != 3 && self.players != 4 {
            return Err(Error::UnsupportedPlayers(self.players));
        }
        if self.profile.players() != self.players {
            return Err(Error::InvalidProfile(format!(
                "{}-player sweep needs {} strategy parameters",
                self.players,
                self.players - 1
            )));
        }
        self.p_grid.validate("p", 1.0)?;
        self.theta_grid.validate("theta", THETA_MAX)?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.p_grid.count * self.theta_grid.count * self.channels.kinds().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub players: usize,
    pub channel: ChannelKind,
    pub p: f64,
    pub theta: f64,
    pub q: f64,
    pub r: f64,
    pub s: Option<f64>,
    pub payoffs: PayoffVector,
}

impl SweepRow {
    pub fn zero_sum_residual(&self) -> f64 {
        self.payoffs.total().abs()
    }

    /// Fields in [`CSV_HEADER`] order, floats to 12 significant digits.
    pub fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(format_sig).unwrap_or_default();
        let pay = self.payoffs.as_slice();
        vec![
            self.players.to_string(),
            self.channel.label().to_string(),
            format_sig(self.p),
            format_sig(self.theta),
            format_sig(self.q),
            format_sig(self.r),
            opt(self.s),
            format_sig(pay[0]),
            format_sig(pay[1]),
            format_sig(pay[2]),
            opt(pay.get(3).copied()),
        ]
    }
}

fn evaluate(
    spec: &GameSpec,
    kind: ChannelKind,
    p: f64,
    theta: f64,
    profile: &StrategyProfile,
) -> Result<SweepRow> {
    let game = PreparedGame::new(spec.clone(), NoiseModel::new(kind, p)?, theta)?;
    Ok(SweepRow {
        players: spec.players(),
        channel: kind,
        p,
        theta,
        q: profile.q(),
        r: profile.r(),
        s: profile.s(),
        payoffs: game.payoffs(profile)?,
    })
}

/// Rows in grid order: `p` outermost, then `θ`, then channel.
pub fn run_sweep(request: &SweepRequest) -> Result<Vec<SweepRow>> {
    request.validate()?;
    let spec = GameSpec::for_players(request.players)?;
    let kinds = request.channels.kinds();
    let points: Vec<(f64, f64, ChannelKind)> = request
        .p_grid
        .values()
        .into_iter()
        .flat_map(|p| {
            let kinds = &kinds;
            request
                .theta_grid
                .values()
                .into_iter()
                .flat_map(move |t| kinds.iter().map(move |&k| (p, t, k)))
        })
        .collect();

    let eval = |&(p, theta, kind): &(f64, f64, ChannelKind)| {
        evaluate(&spec, kind, p, theta, &request.profile)
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().map(eval).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(eval).collect()
    }
}

/// Cooperator payoff along one axis with the other held fixed; used for the
/// one-dimensional slices (payoff against `p` at fixed θ, or against θ at
/// fixed `p`).
pub fn cooperator_curve(
    players: usize,
    kind: ChannelKind,
    profile: &StrategyProfile,
    p_values: &[f64],
    theta_values: &[f64],
) -> Result<Vec<f64>> {
    let spec = GameSpec::for_players(players)?;
    let mut out = Vec::with_capacity(p_values.len() * theta_values.len());
    for &p in p_values {
        check_unit("p", p)?;
        for &theta in theta_values {
            out.push(
                evaluate(&spec, kind, p, theta, profile)?
                    .payoffs
                    .cooperator(),
            );
        }
    }
    Ok(out)
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros trimmed,
/// scientific notation only for very small or large magnitudes. Negative zero
/// prints as `0`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
