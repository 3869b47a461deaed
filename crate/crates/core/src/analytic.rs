//! Closed-form payoffs, transcribed by hand and used as an independent check
//! on the Kraus-operator pipeline in [`crate::game`].
//!
//! Shorthand used below: `X = 1 − 2p(1−p)(1−cos θ)` for amplitude damping
//! (1 for phase damping), `t = 3 − 4p` for depolarizing, and `R`, `S` for the
//! square-root coupling terms that vanish whenever any strategy parameter is
//! 0 or 1.

use serde::Serialize;

use crate::channels::ChannelKind;
use crate::error::{check_range, check_unit, Error, Result};
use crate::game::{PayoffVector, StrategyProfile, THETA_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    /// Player A or B.
    Cooperator,
    SoloC,
    /// Only exists in the four-player game.
    SoloD,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticQuery {
    pub players: usize,
    pub kind: ChannelKind,
    pub role: Role,
    pub p: f64,
    pub theta: f64,
    pub q: f64,
    pub r: f64,
    pub s: Option<f64>,
}

impl AnalyticQuery {
    pub fn new(
        kind: ChannelKind,
        role: Role,
        p: f64,
        theta: f64,
        profile: &StrategyProfile,
    ) -> Self {
        Self {
            players: profile.players(),
            kind,
            role,
            p,
            theta,
            q: profile.q(),
            r: profile.r(),
            s: profile.s(),
        }
    }

    fn validate(&self) -> Result<()> {
        match (self.players, self.s) {
            (3, None) | (4, Some(_)) => {}
            (3 | 4, _) => {
                return Err(Error::InvalidQuery(
                    "s must be given exactly for the four-player game".into(),
                ))
            }
            (n, _) => return Err(Error::UnsupportedPlayers(n)),
        }
        if self.players == 3 && self.role == Role::SoloD {
            return Err(Error::InvalidQuery(
                "player D only exists in the four-player game".into(),
            ));
        }
        check_unit("p", self.p)?;
        check_range("theta", self.theta, 0.0, THETA_MAX)?;
        check_unit("q", self.q)?;
        check_unit("r", self.r)?;
        if let Some(s) = self.s {
            check_unit("s", s)?;
        }
        Ok(())
    }
}

pub fn payoff_closed_form(query: &AnalyticQuery) -> Result<f64> {
    query.validate()?;
    let AnalyticQuery {
        kind,
        role,
        p,
        theta,
        q,
        r,
        ..
    } = *query;
    Ok(match query.s {
        None => three_player(kind, role, p, theta, q, r),
        Some(s) => four_player(kind, role, p, theta, q, r, s),
    })
}

/// Closed-form payoffs for every player, ordered A, B, C(, D).
pub fn closed_form_payoffs(
    kind: ChannelKind,
    p: f64,
    theta: f64,
    profile: &StrategyProfile,
) -> Result<PayoffVector> {
    let roles: &[Role] = if profile.players() == 3 {
        &[Role::Cooperator, Role::Cooperator, Role::SoloC]
    } else {
        &[Role::Cooperator, Role::Cooperator, Role::SoloC, Role::SoloD]
    };
    roles
        .iter()
        .map(|&role| payoff_closed_form(&AnalyticQuery::new(kind, role, p, theta, profile)))
        .collect::<Result<Vec<_>>>()
        .map(PayoffVector::new)
}

fn damping_factor(p: f64, theta: f64) -> f64 {
    1.0 - 2.0 * p * (1.0 - p) * (1.0 - theta.cos())
}

fn three_player(kind: ChannelKind, role: Role, p: f64, theta: f64, q: f64, r: f64) -> f64 {
    let cooperator = match kind {
        // numerator and denominator both negated relative to the expanded form
        ChannelKind::AmplitudeDamping | ChannelKind::PhaseDamping => {
            let x = if kind == ChannelKind::AmplitudeDamping {
                damping_factor(p, theta)
            } else {
                1.0
            };
            let coupling =
                (1.0 - p) * (q * r * (1.0 - p) * (1.0 - q) * (1.0 - r)).sqrt() * theta.sin();
            ((q + r - 2.0 * q * r) * x + 2.0 * coupling) / (1.0 + 4.0 * coupling)
        }
        ChannelKind::Depolarizing => {
            let t = 3.0 - 4.0 * p;
            let root = (q * r * (1.0 - q) * (1.0 - r)).sqrt() * theta.sin();
            t * t * (3.0 * q + 3.0 * r - 6.0 * q * r + 2.0 * t * root)
                / (27.0 - 4.0 * (4.0 * p - 3.0).powi(3) * root)
        }
    };
    match role {
        Role::Cooperator => cooperator,
        // zero-sum with A = B
        _ => -2.0 * cooperator,
    }
}

/// Player C's amplitude-damping payoff in the three-player game, written out
/// term by term. [`payoff_closed_form`] uses `−2 × cooperator` instead; this
/// exists so the two can be compared.
pub fn solo_c_amplitude_damping_expanded(p: f64, theta: f64, q: f64, r: f64) -> f64 {
    let coupling = (1.0 - p) * (q * r * (1.0 - p) * (1.0 - q) * (1.0 - r)).sqrt() * theta.sin();
    let numerator = 2.0
        * ((2.0 * q * r - q - r) * (-1.0 + 2.0 * p * (1.0 - p) * (1.0 - theta.cos())))
        + 4.0 * coupling;
    -numerator / (1.0 + 4.0 * coupling)
}

fn four_player(kind: ChannelKind, role: Role, p: f64, theta: f64, q: f64, r: f64, s: f64) -> f64 {
    let root = (q * r * s * (1.0 - q) * (1.0 - r) * (1.0 - s)).sqrt() * theta.sin();
    // linear parts of C's and D's numerators
    let c_lin = s - 4.0 * q * s - 3.0 * r + 4.0 * q * r + 2.0 * r * s;
    let d_lin = r - 4.0 * q * r - 3.0 * s + 4.0 * q * s + 2.0 * r * s;
    let ab_lin = r + s - 2.0 * r * s;
    match kind {
        ChannelKind::AmplitudeDamping => {
            let x = damping_factor(p, theta);
            let k = 4.0 * (1.0 - p).powi(2) * root;
            let den = 1.0 + 2.0 * k;
            match role {
                Role::Cooperator => (ab_lin * x + k) / den,
                Role::SoloC => ((s - 4.0 * q * s + r * (-3.0 + 4.0 * q + 2.0 * s)) * x - k) / den,
                Role::SoloD => {
                    ((r * (-1.0 + 4.0 * q - 2.0 * s) + (3.0 - 4.0 * q) * s)
                        * (-1.0 + 2.0 * p * (1.0 - p) * (1.0 - theta.cos()))
                        - k)
                        / den
                }
            }
        }
        ChannelKind::PhaseDamping => {
            let k = 4.0 * (1.0 - p).powi(2) * root;
            let den = 1.0 + 2.0 * k;
            match role {
                Role::Cooperator => (ab_lin + k) / den,
                Role::SoloC => (c_lin - k) / den,
                // (−1+r)(−1+s) under the root is the same product
                Role::SoloD => (d_lin - k) / den,
            }
        }
        ChannelKind::Depolarizing => {
            let t = 3.0 - 4.0 * p;
            let t2 = t * t;
            let den = 81.0 + 8.0 * t2 * t2 * root;
            match role {
                Role::Cooperator => t2 * (9.0 * ab_lin + 4.0 * t2 * root) / den,
                Role::SoloC => t2 * (9.0 * c_lin - 4.0 * t2 * root) / den,
                Role::SoloD => {
                    -t2 * (9.0 * (-r - 4.0 * q * s + 3.0 * s + 4.0 * q * r - 2.0 * r * s)
                        + 4.0 * t2 * root)
                        / den
                }
            }
        }
    }
}

fn check_max_args(players: usize, p: f64, theta: f64) -> Result<()> {
    if players != 3 && players != 4 {
        return Err(Error::UnsupportedPlayers(players));
    }
    check_unit("p", p)?;
    check_range("theta", theta, 0.0, THETA_MAX)?;
    Ok(())
}

/// Cooperator payoff at the symmetric point `q = r (= s) = 1/2`, using the
/// simplified maximized expressions where they exist.
pub fn max_payoff_closed_form(
    players: usize,
    kind: ChannelKind,
    p: f64,
    theta: f64,
) -> Result<f64> {
    check_max_args(players, p, theta)?;
    let st = theta.sin();
    Ok(match (players, kind) {
        (3, ChannelKind::AmplitudeDamping) => {
            let k = (1.0 - p).powf(1.5) * st;
            (damping_factor(p, theta) + k) / (2.0 * (1.0 + k))
        }
        (3, ChannelKind::Depolarizing) => {
            let t = 3.0 - 4.0 * p;
            t * t * (3.0 + t * st) / (54.0 - 2.0 * (4.0 * p - 3.0).powi(3) * st)
        }
        (3, ChannelKind::PhaseDamping) => 0.5,
        (4, ChannelKind::AmplitudeDamping) => {
            let k = (1.0 - p).powi(2) * st;
            (damping_factor(p, theta) + k) / (2.0 * (1.0 + k))
        }
        (_, kind) => four_player(kind, Role::Cooperator, p, theta, 0.5, 0.5, 0.5),
    })
}

/// Solo-player payoff (C, and D in the four-player game) at the symmetric point.
pub fn solo_max_payoff_closed_form(
    players: usize,
    kind: ChannelKind,
    p: f64,
    theta: f64,
) -> Result<f64> {
    check_max_args(players, p, theta)?;
    let st = theta.sin();
    Ok(match (players, kind) {
        (3, ChannelKind::AmplitudeDamping) => {
            let k = (1.0 - p).powf(1.5) * st;
            -(damping_factor(p, theta) + k) / (1.0 + k)
        }
        (3, ChannelKind::Depolarizing) => {
            let t = 3.0 - 4.0 * p;
            -t * t * (3.0 + t * st) / (27.0 - (4.0 * p - 3.0).powi(3) * st)
        }
        (3, ChannelKind::PhaseDamping) => -1.0,
        (4, ChannelKind::AmplitudeDamping) => {
            let k = (1.0 - p).powi(2) * st;
            -(damping_factor(p, theta) + k) / (2.0 * (1.0 + k))
        }
        (_, kind) => four_player(kind, Role::SoloC, p, theta, 0.5, 0.5, 0.5),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn three(kind: ChannelKind, role: Role, p: f64, theta: f64, q: f64, r: f64) -> f64 {
        let profile = StrategyProfile::three(q, r).unwrap();
        payoff_closed_form(&AnalyticQuery::new(kind, role, p, theta, &profile)).unwrap()
    }

    #[test]
    fn phase_damping_cooperator_is_half_at_half() {
        for p in [0.0, 0.2, 0.6, 1.0] {
            for theta in [0.0, 0.5, FRAC_PI_2] {
                let v = three(
                    ChannelKind::PhaseDamping,
                    Role::Cooperator,
                    p,
                    theta,
                    0.5,
                    0.5,
                );
                assert!((v - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn depolarizing_vanishes_at_three_quarters() {
        for role in [Role::Cooperator, Role::SoloC] {
            let v = three(ChannelKind::Depolarizing, role, 0.75, 1.1, 0.3, 0.9);
            assert_eq!(v, 0.0);
        }
        let profile = StrategyProfile::four(0.2, 0.7, 0.4).unwrap();
        let all = closed_form_payoffs(ChannelKind::Depolarizing, 0.75, 0.4, &profile).unwrap();
        assert!(all.as_slice().iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn amplitude_damping_noiseless_ghz() {
        // coupling = 1/4, X = 1: (1/2 + 1/2) / (1 + 1)
        let v = three(
            ChannelKind::AmplitudeDamping,
            Role::Cooperator,
            0.0,
            FRAC_PI_2,
            0.5,
            0.5,
        );
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn maximized_values() {
        let m = max_payoff_closed_form(3, ChannelKind::AmplitudeDamping, 1.0, FRAC_PI_2).unwrap();
        assert!((m - 0.5).abs() < 1e-15);
        // t = 3: 9 (3 + 3) / (54 + 54)
        let m = max_payoff_closed_form(3, ChannelKind::Depolarizing, 0.0, FRAC_PI_2).unwrap();
        assert!((m - 0.5).abs() < 1e-15);
        let m = max_payoff_closed_form(4, ChannelKind::AmplitudeDamping, 0.0, FRAC_PI_2).unwrap();
        assert!((m - 0.5).abs() < 1e-15);
        assert_eq!(
            max_payoff_closed_form(3, ChannelKind::PhaseDamping, 0.3, 1.0).unwrap(),
            0.5
        );
    }

    #[test]
    fn maximized_forms_match_payoff_at_half() {
        for players in [3, 4] {
            for kind in ChannelKind::ALL {
                for p in [0.0, 0.3, 0.75, 0.9, 1.0] {
                    for theta in [0.0, FRAC_PI_4, 1.2, FRAC_PI_2] {
                        let profile = StrategyProfile::uniform(players, 0.5).unwrap();
                        let all = closed_form_payoffs(kind, p, theta, &profile).unwrap();
                        let coop = max_payoff_closed_form(players, kind, p, theta).unwrap();
                        let solo = solo_max_payoff_closed_form(players, kind, p, theta).unwrap();
                        assert!(
                            (all[0] - coop).abs() < 1e-12,
                            "{players} {kind} {p} {theta}"
                        );
                        assert!(
                            (all[2] - solo).abs() < 1e-12,
                            "{players} {kind} {p} {theta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn expanded_solo_form_agrees_with_zero_sum_definition() {
        for (p, theta, q, r) in [
            (0.1, 0.3, 0.2, 0.9),
            (0.6, 1.5, 0.45, 0.55),
            (1.0, 0.7, 0.3, 0.1),
        ] {
            let expanded = solo_c_amplitude_damping_expanded(p, theta, q, r);
            let defined = three(ChannelKind::AmplitudeDamping, Role::SoloC, p, theta, q, r);
            assert!((expanded - defined).abs() < 1e-14);
        }
    }

    #[test]
    fn query_validation() {
        let profile = StrategyProfile::three(0.5, 0.5).unwrap();
        let mut query =
            AnalyticQuery::new(ChannelKind::PhaseDamping, Role::SoloD, 0.2, 0.1, &profile);
        assert!(matches!(
            payoff_closed_form(&query),
            Err(Error::InvalidQuery(_))
        ));
        query.role = Role::Cooperator;
        query.p = 1.2;
        assert!(matches!(
            payoff_closed_form(&query),
            Err(Error::OutOfRange { name: "p", .. })
        ));
        query.p = 0.2;
        query.theta = 2.0;
        assert!(matches!(
            payoff_closed_form(&query),
            Err(Error::OutOfRange { name: "theta", .. })
        ));
        query.theta = 0.2;
        query.s = Some(0.5);
        assert!(matches!(
            payoff_closed_form(&query),
            Err(Error::InvalidQuery(_))
        ));
        assert!(max_payoff_closed_form(5, ChannelKind::PhaseDamping, 0.1, 0.1).is_err());
    }

    #[test]
    fn denominators_stay_positive_on_the_domain() {
        let steps: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        for kind in ChannelKind::ALL {
            for &p in &steps {
                for &q in &steps {
                    for &r in &steps {
                        let v = three(kind, Role::Cooperator, p, FRAC_PI_2, q, r);
                        assert!(v.is_finite());
                    }
                }
            }
        }
    }
}
