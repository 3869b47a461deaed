//! Strategy search over the numeric payoff pipeline.
//!
//! Two separate questions are answered here. [`maximize_cooperator_payoff`]
//! searches the symmetric line `q = r (= s) = x` for the cooperators' best
//! payoff; [`nash_check`] measures how much any single decision-maker (the AB
//! pair, C, D) could gain by deviating alone from a given profile. The
//! cooperators' maximizer is a stationary point of their payoff but need not
//! be an equilibrium for the solo players.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channels::{ChannelKind, NoiseModel};
use crate::error::{Error, Result};
use crate::game::{GameSpec, PreparedGame, StrategyProfile};

/// Surfaces whose range over the grid is below this are reported as flat.
pub const FLAT_TOLERANCE: f64 = 1e-12;

/// Finite-difference step for the stationarity residual.
pub const GRADIENT_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Points per axis, endpoints included.
    pub grid_points: usize,
    /// Bracket width at which golden-section refinement stops.
    pub refine_tol: f64,
    /// Seed for the random deviation probes in [`nash_check`].
    pub seed: u64,
    /// Random deviations tried per decision-maker on top of the grid.
    pub random_probes: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_points: 101,
            refine_tol: 1e-6,
            seed: 42,
            random_probes: 64,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 3 {
            return Err(Error::OutOfRange {
                name: "grid_points",
                value: self.grid_points as f64,
                min: 3.0,
                max: f64::INFINITY,
            });
        }
        if self.refine_tol.is_nan() || self.refine_tol <= 0.0 {
            return Err(Error::OutOfRange {
                name: "refine_tol",
                value: self.refine_tol,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            });
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        unit_grid(self.grid_points)
    }

    pub fn grid_step(&self) -> f64 {
        1.0 / (self.grid_points - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub argmax: StrategyProfile,
    pub value: f64,
    /// Largest central-difference gradient component of the cooperator payoff.
    pub stationarity_residual: f64,
    /// Largest unilateral-deviation gain found; never negative.
    pub nash_violation: f64,
    /// The cooperator payoff was constant along the search line.
    pub flat: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PExtremum {
    pub p: f64,
    pub value: f64,
    pub flat: bool,
    /// The minimizer lies strictly inside (0, 1).
    pub interior: bool,
}

pub fn maximize_cooperator_payoff(
    spec: &GameSpec,
    model: &NoiseModel,
    theta: f64,
    config: &SearchConfig,
) -> Result<EquilibriumReport> {
    config.validate()?;
    let game = PreparedGame::new(spec.clone(), *model, theta)?;
    let best = maximize_symmetric(&game, config)?;
    let argmax = StrategyProfile::uniform(game.players(), best.x)?;
    Ok(EquilibriumReport {
        argmax,
        value: best.value,
        stationarity_residual: stationarity_residual(&game, &argmax)?,
        nash_violation: nash_violation(&game, &argmax, config)?,
        flat: best.flat,
    })
}

pub fn nash_check(
    spec: &GameSpec,
    model: &NoiseModel,
    theta: f64,
    profile: &StrategyProfile,
    config: &SearchConfig,
) -> Result<f64> {
    config.validate()?;
    let game = PreparedGame::new(spec.clone(), *model, theta)?;
    nash_violation(&game, profile, config)
}

/// Minimizes the cooperators' maximized payoff over `p ∈ [0, 1]` at fixed θ.
pub fn find_extremum_over_p(
    players: usize,
    kind: ChannelKind,
    theta: f64,
    config: &SearchConfig,
) -> Result<PExtremum> {
    config.validate()?;
    let spec = GameSpec::for_players(players)?;
    let value_at = |p: f64| -> Result<f64> {
        let game = PreparedGame::new(spec.clone(), NoiseModel::new(kind, p)?, theta)?;
        Ok(maximize_symmetric(&game, config)?.value)
    };

    let grid = config.grid();
    let values = grid
        .iter()
        .map(|&p| value_at(p))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = range(&values);
    if hi - lo <= FLAT_TOLERANCE {
        return Ok(PExtremum {
            p: grid[0],
            value: values[0],
            flat: true,
            interior: false,
        });
    }
    let best = first_extremum(&values, |a, b| a < b);
    let (p, value) = if best == 0 || best == grid.len() - 1 {
        (grid[best], values[best])
    } else {
        let (p, v) = golden_section(
            |p| value_at(p).map(|v| -v),
            grid[best - 1],
            grid[best + 1],
            config.refine_tol,
        )?;
        if -v <= values[best] {
            (p, -v)
        } else {
            (grid[best], values[best])
        }
    };
    Ok(PExtremum {
        p,
        value,
        flat: false,
        interior: p > 0.0 && p < 1.0,
    })
}

struct LineMax {
    x: f64,
    value: f64,
    flat: bool,
}

fn maximize_symmetric(game: &PreparedGame, config: &SearchConfig) -> Result<LineMax> {
    let decision_makers = game.players() - 1;
    let f =
        |x: f64| -> Result<f64> { Ok(game.payoffs_at(&vec![x; decision_makers])?.cooperator()) };
    let grid = config.grid();
    let values = grid.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let (lo, hi) = range(&values);
    // ties go to the smallest x
    let best = first_extremum(&values, |a, b| a > b);
    if hi - lo <= FLAT_TOLERANCE {
        // every point is a tie; the smallest x wins
        return Ok(LineMax {
            x: grid[0],
            value: values[0],
            flat: true,
        });
    }
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(grid.len() - 1)];
    let (x, v) = golden_section(f, a, b, config.refine_tol)?;
    Ok(if v >= values[best] {
        LineMax {
            x,
            value: v,
            flat: false,
        }
    } else {
        LineMax {
            x: grid[best],
            value: values[best],
            flat: false,
        }
    })
}

fn stationarity_residual(game: &PreparedGame, profile: &StrategyProfile) -> Result<f64> {
    let base = profile.params();
    let mut residual: f64 = 0.0;
    for axis in 0..base.len() {
        let at = |x: f64| -> Result<f64> {
            let mut params = base.clone();
            params[axis] = x;
            Ok(game.payoffs_at(&params)?.cooperator())
        };
        let x = base[axis];
        let hi = (x + GRADIENT_STEP).min(1.0);
        let lo = (x - GRADIENT_STEP).max(0.0);
        residual = residual.max(((at(hi)? - at(lo)?) / (hi - lo)).abs());
    }
    Ok(residual)
}

fn nash_violation(
    game: &PreparedGame,
    profile: &StrategyProfile,
    config: &SearchConfig,
) -> Result<f64> {
    if profile.players() != game.players() {
        return Err(Error::InvalidProfile(format!(
            "{}-player profile checked against a {}-player game",
            profile.players(),
            game.players()
        )));
    }
    let base_params = profile.params();
    let base = game.payoffs(profile)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut candidates = config.grid();
    candidates.extend((0..config.random_probes).map(|_| rng.random::<f64>()));

    let mut violation: f64 = 0.0;
    // decision-maker k controls parameter k; its payoff is player A's for the
    // pair and player k+1's for the solo players
    for agent in 0..base_params.len() {
        let player = if agent == 0 { 0 } else { agent + 1 };
        for &x in &candidates {
            let mut params = base_params.clone();
            params[agent] = x;
            let gain = game.payoffs_at(&params)?[player] - base[player];
            violation = violation.max(gain);
        }
    }
    Ok(violation)
}

/// Maximizes a unimodal `f` on `[a, b]`.
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

fn unit_grid(points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points).map(|i| i as f64 / last).collect()
}

fn range(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

fn first_extremum(values: &[f64], better: impl Fn(f64, f64) -> bool) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if better(v, values[best]) {
            best = i;
        }
    }
    best
}
