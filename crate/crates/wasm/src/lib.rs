//! Browser bindings for the payoff simulator.

use qcoop::equilibrium::{maximize_cooperator_payoff, SearchConfig};
use qcoop::sweep::cooperator_curve;
use qcoop::{ChannelKind, GameSpec, NoiseModel, StrategyProfile};
use wasm_bindgen::prelude::*;

fn profile(players: usize, params: &[f64]) -> Result<StrategyProfile, String> {
    StrategyProfile::from_params(players, params).map_err(|e| e.to_string())
}

fn grid(max: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err("need at least two points".into());
    }
    Ok((0..points)
        .map(|i| max * i as f64 / (points - 1) as f64)
        .collect())
}

fn parse_kind(channel: &str) -> Result<ChannelKind, String> {
    channel.parse::<ChannelKind>().map_err(|e| e.to_string())
}

/// Cooperator payoff against `p` for AD, PD and DP in that order,
/// concatenated: `3 * points` values.
pub fn curves_over_p_impl(
    players: usize,
    theta: f64,
    params: &[f64],
    points: usize,
) -> Result<Vec<f64>, String> {
    let profile = profile(players, params)?;
    let ps = grid(1.0, points)?;
    let mut out = Vec::with_capacity(3 * points);
    for kind in ChannelKind::ALL {
        out.extend(
            cooperator_curve(players, kind, &profile, &ps, &[theta]).map_err(|e| e.to_string())?,
        );
    }
    Ok(out)
}

/// Cooperator payoff against θ for each channel at fixed `p`, same layout.
pub fn curves_over_theta_impl(
    players: usize,
    p: f64,
    params: &[f64],
    points: usize,
) -> Result<Vec<f64>, String> {
    let profile = profile(players, params)?;
    let thetas = grid(std::f64::consts::FRAC_PI_2, points)?;
    let mut out = Vec::with_capacity(3 * points);
    for kind in ChannelKind::ALL {
        out.extend(
            cooperator_curve(players, kind, &profile, &[p], &thetas).map_err(|e| e.to_string())?,
        );
    }
    Ok(out)
}

/// `[argmax.., value, stationarity_residual, nash_violation, flat]`.
pub fn equilibrium_impl(
    players: usize,
    channel: &str,
    p: f64,
    theta: f64,
) -> Result<Vec<f64>, String> {
    let spec = GameSpec::for_players(players).map_err(|e| e.to_string())?;
    let model = NoiseModel::new(parse_kind(channel)?, p).map_err(|e| e.to_string())?;
    let config = SearchConfig {
        random_probes: 16,
        ..SearchConfig::default()
    };
    let r = maximize_cooperator_payoff(&spec, &model, theta, &config).map_err(|e| e.to_string())?;
    let mut out = r.argmax.params();
    out.extend([
        r.value,
        r.stationarity_residual,
        r.nash_violation,
        f64::from(u8::from(r.flat)),
    ]);
    Ok(out)
}

#[wasm_bindgen]
pub fn curves_over_p(
    players: usize,
    theta: f64,
    params: &[f64],
    points: usize,
) -> Result<Vec<f64>, JsError> {
    curves_over_p_impl(players, theta, params, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn curves_over_theta(
    players: usize,
    p: f64,
    params: &[f64],
    points: usize,
) -> Result<Vec<f64>, JsError> {
    curves_over_theta_impl(players, p, params, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn equilibrium(players: usize, channel: &str, p: f64, theta: f64) -> Result<Vec<f64>, JsError> {
    equilibrium_impl(players, channel, p, theta).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn curve_layout() {
        let v = curves_over_p_impl(3, FRAC_PI_2, &[0.5, 0.5], 5).unwrap();
        assert_eq!(v.len(), 15);
        // phase damping block is flat at 1/2
        assert!(v[5..10].iter().all(|x| (x - 0.5).abs() < 1e-12));
        // every channel agrees without noise
        assert!((v[0] - v[5]).abs() < 1e-12 && (v[0] - v[10]).abs() < 1e-12);
    }

    #[test]
    fn theta_curves_start_unentangled() {
        let v = curves_over_theta_impl(4, 0.3, &[0.2, 0.2, 0.2], 3).unwrap();
        assert_eq!(v.len(), 9);
        assert!((v[0] - v[3]).abs() < 1e-12);
    }

    #[test]
    fn equilibrium_summary() {
        let v = equilibrium_impl(3, "pd", 0.4, 1.0).unwrap();
        assert_eq!(v.len(), 6);
        assert!((v[0] - 0.5).abs() <= 0.01 && (v[2] - 0.5).abs() < 1e-12);
        assert_eq!(v[5], 0.0);
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(curves_over_p_impl(3, 1.0, &[0.5], 5).is_err());
        assert!(curves_over_p_impl(3, 1.0, &[0.5, 0.5], 1).is_err());
        assert!(equilibrium_impl(3, "xx", 0.1, 1.0).is_err());
        assert!(equilibrium_impl(3, "ad", 1.1, 1.0).is_err());
    }
}
