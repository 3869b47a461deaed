//! The three- and four-player cooperative games.
//!
//! Players A and B cooperate through a joint operator
//! `U_AB = √q I⊗I + √(1−q) σx⊗σx`; every other player acts alone with
//! `U = √x I + √(1−x) σx`. The arbiter prepares
//! `cos(θ/2)|0…0⟩ + sin(θ/2)|1…1⟩`, the state passes through the noise
//! channel, the players' operators are applied and the result renormalized,
//! and payoffs are read off the diagonal with per-player weight tables.
//!
//! Basis index `i` stores the outcome whose binary digits are the players'
//! bits with player A most significant.

use serde::Serialize;

use crate::channels::{apply_noise, NoiseModel};
use crate::error::{check_range, check_unit, Error, Result};
use crate::qlinalg::{self, diagonal, kron, pauli, ComplexMatrix, C64, TOLERANCE};

/// Largest entanglement angle accepted for the initial state.
pub const THETA_MAX: f64 = std::f64::consts::FRAC_PI_2;

/// Normalization traces at or below this are treated as an annihilated state.
pub const DEGENERATE_TRACE: f64 = 1e-15;

/// Hermitian, unit-trace matrix on `qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `matrix` as a density matrix (tolerance 1e-12).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dim = matrix.rows();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "dimension {dim} is not a power of two"
            )));
        }
        let herm = matrix.hermiticity_error();
        if herm > TOLERANCE {
            return Err(Error::InvalidState(format!(
                "not Hermitian (error {herm:e})"
            )));
        }
        let diag = diagonal(&matrix)?;
        let tr: f64 = diag.iter().map(|z| z.re).sum();
        if (tr - 1.0).abs() > TOLERANCE {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        if let Some(d) = diag.iter().find(|z| z.re < -TOLERANCE) {
            return Err(Error::InvalidState(format!("negative population {}", d.re)));
        }
        Ok(Self {
            qubits: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized amplitude vector.
    pub fn from_pure(amplitudes: &[C64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(amplitudes))
    }

    pub(crate) fn from_matrix_unchecked(qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dims(), (1 << qubits, 1 << qubits));
        Self { qubits, matrix }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        1 << self.qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Real parts of the diagonal, i.e. outcome probabilities.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dimension())
            .map(|i| self.matrix.get(i, i).re)
            .collect()
    }

    pub fn trace(&self) -> f64 {
        self.populations().iter().sum()
    }
}

/// Payoff weights over computational-basis outcomes, one row per player.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameSpec {
    players: usize,
    weights: Vec<Vec<f64>>,
}

// Indexed by outcome, bits read A B C (D) with A most significant.
const THREE_PLAYER_WEIGHTS: [[f64; 8]; 3] = [
    [0.0, 1.0, 1.0, -2.0, -2.0, 1.0, 1.0, 0.0],
    [0.0, 1.0, -2.0, 1.0, 1.0, -2.0, 1.0, 0.0],
    [0.0, -2.0, 1.0, 1.0, 1.0, 1.0, -2.0, 0.0],
];

const FOUR_PLAYER_WEIGHTS: [[f64; 16]; 4] = [
    [
        0., 1., 1., 0., 1., 0., 0., -3., -3., 0., 0., 1., 0., 1., 1., 0.,
    ],
    [
        0., 1., 1., 0., -3., 0., 0., 1., 1., 0., 0., -3., 0., 1., 1., 0.,
    ],
    [
        0., 1., -3., 0., 1., 0., 0., 1., 1., 0., 0., 1., 0., -3., 1., 0.,
    ],
    [
        0., -3., 1., 0., 1., 0., 0., 1., 1., 0., 0., 1., 0., 1., -3., 0.,
    ],
];

impl GameSpec {
    /// A and B split the stake of 2 paid by whoever breaks ranks.
    pub fn three_player() -> Self {
        Self {
            players: 3,
            weights: THREE_PLAYER_WEIGHTS.iter().map(|w| w.to_vec()).collect(),
        }
    }

    /// The four-player table: losers pay 3.
    pub fn four_player() -> Self {
        Self {
            players: 4,
            weights: FOUR_PLAYER_WEIGHTS.iter().map(|w| w.to_vec()).collect(),
        }
    }

    pub fn for_players(players: usize) -> Result<Self> {
        match players {
            3 => Ok(Self::three_player()),
            4 => Ok(Self::four_player()),
            n => Err(Error::UnsupportedPlayers(n)),
        }
    }

    /// A game with a custom table. Only shapes are checked; use
    /// [`GameSpec::zero_sum_deviation`] to audit the table itself.
    pub fn with_weights(players: usize, weights: Vec<Vec<f64>>) -> Result<Self> {
        if players != 3 && players != 4 {
            return Err(Error::UnsupportedPlayers(players));
        }
        if weights.len() != players {
            return Err(Error::InvalidLength {
                expected: players,
                found: weights.len(),
            });
        }
        let dim = 1usize << players;
        if let Some(row) = weights.iter().find(|w| w.len() != dim) {
            return Err(Error::InvalidLength {
                expected: dim,
                found: row.len(),
            });
        }
        Ok(Self { players, weights })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn qubits(&self) -> usize {
        self.players
    }

    pub fn dimension(&self) -> usize {
        1 << self.players
    }

    pub fn weights(&self, player: usize) -> &[f64] {
        &self.weights[player]
    }

    /// Max over outcomes of `|Σ_players weight|`; zero for a zero-sum table.
    pub fn zero_sum_deviation(&self) -> f64 {
        (0..self.dimension())
            .map(|i| self.weights.iter().map(|w| w[i]).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }
}

/// Strategy parameters: `q` for the AB pair, `r` for C and `s` for D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategyProfile {
    q: f64,
    r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<f64>,
}

impl StrategyProfile {
    pub fn three(q: f64, r: f64) -> Result<Self> {
        Ok(Self {
            q: check_unit("q", q)?,
            r: check_unit("r", r)?,
            s: None,
        })
    }

    pub fn four(q: f64, r: f64, s: f64) -> Result<Self> {
        Ok(Self {
            q: check_unit("q", q)?,
            r: check_unit("r", r)?,
            s: Some(check_unit("s", s)?),
        })
    }

    /// Builds a profile for `players` from a parameter slice `[q, r(, s)]`.
    pub fn from_params(players: usize, params: &[f64]) -> Result<Self> {
        match (players, params) {
            (3, &[q, r]) => Self::three(q, r),
            (4, &[q, r, s]) => Self::four(q, r, s),
            (3 | 4, _) => Err(Error::InvalidProfile(format!(
                "{players}-player game needs {} parameters, got {}",
                players - 1,
                params.len()
            ))),
            (n, _) => Err(Error::UnsupportedPlayers(n)),
        }
    }

    /// Every decision-maker plays `x`.
    pub fn uniform(players: usize, x: f64) -> Result<Self> {
        Self::from_params(players, &vec![x; players.saturating_sub(1)])
    }

    pub fn players(&self) -> usize {
        if self.s.is_some() {
            4
        } else {
            3
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> Option<f64> {
        self.s
    }

    /// `[q, r]` or `[q, r, s]`.
    pub fn params(&self) -> Vec<f64> {
        let mut v = vec![self.q, self.r];
        v.extend(self.s);
        v
    }
}

/// Per-player payoffs in stake units, ordered A, B, C(, D).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PayoffVector(Vec<f64>);

impl PayoffVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn players(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn cooperator(&self) -> f64 {
        self.0[0]
    }

    pub fn max_abs_diff(&self, other: &PayoffVector) -> f64 {
        if self.players() != other.players() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for PayoffVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub fn initial_state(players: usize, theta: f64) -> Result<DensityMatrix> {
    if players != 3 && players != 4 {
        return Err(Error::UnsupportedPlayers(players));
    }
    check_range("theta", theta, 0.0, THETA_MAX)?;
    let mut ket = vec![C64::new(0.0, 0.0); 1 << players];
    ket[0] = C64::new((theta / 2.0).cos(), 0.0);
    ket[(1 << players) - 1] = C64::new((theta / 2.0).sin(), 0.0);
    Ok(DensityMatrix::from_matrix_unchecked(
        players,
        ComplexMatrix::outer(&ket),
    ))
}

/// `√q I⊗I + √(1−q) σx⊗σx`.
pub fn cooperator_op(q: f64) -> Result<ComplexMatrix> {
    check_unit("q", q)?;
    let xx = kron(&pauli::x(), &pauli::x());
    ComplexMatrix::identity(4)
        .scale_real(q.sqrt())
        .add(&xx.scale_real((1.0 - q).sqrt()))
}

/// `√x I + √(1−x) σx`.
pub fn solo_op(x: f64) -> Result<ComplexMatrix> {
    check_unit("x", x)?;
    pauli::identity()
        .scale_real(x.sqrt())
        .add(&pauli::x().scale_real((1.0 - x).sqrt()))
}

/// The joint operator `U_AB ⊗ U_C (⊗ U_D)`.
pub fn strategy_operator(profile: &StrategyProfile) -> Result<ComplexMatrix> {
    let mut u = kron(&cooperator_op(profile.q)?, &solo_op(profile.r)?);
    if let Some(s) = profile.s {
        u = kron(&u, &solo_op(s)?);
    }
    Ok(u)
}

/// `U ρ U† / Tr(U ρ U†)`.
pub fn final_state(rho_noisy: &DensityMatrix, profile: &StrategyProfile) -> Result<DensityMatrix> {
    if rho_noisy.qubits() != profile.players() {
        return Err(Error::InvalidProfile(format!(
            "{}-player profile applied to a {}-qubit state",
            profile.players(),
            rho_noisy.qubits()
        )));
    }
    let u = strategy_operator(profile)?;
    let unnormalized = qlinalg::sandwich(&u, rho_noisy.matrix())?;
    let tr = qlinalg::trace(&unnormalized)?.re;
    if tr <= DEGENERATE_TRACE {
        return Err(Error::DegenerateStrategy { trace: tr });
    }
    Ok(DensityMatrix::from_matrix_unchecked(
        rho_noisy.qubits(),
        unnormalized.scale_real(1.0 / tr),
    ))
}

/// Weighted sums of the final populations, one per player.
pub fn payoffs(rho_final: &DensityMatrix, spec: &GameSpec) -> Result<PayoffVector> {
    if rho_final.dimension() != spec.dimension() {
        return Err(Error::DimensionMismatch {
            op: "payoffs",
            left: (rho_final.dimension(), rho_final.dimension()),
            right: (spec.dimension(), spec.dimension()),
        });
    }
    let populations = rho_final.populations();
    Ok(PayoffVector(
        spec.weights
            .iter()
            .map(|w| w.iter().zip(&populations).map(|(a, b)| a * b).sum())
            .collect(),
    ))
}

/// Initial state, noise, strategies, payoffs.
pub fn play(
    spec: &GameSpec,
    model: &NoiseModel,
    theta: f64,
    profile: &StrategyProfile,
) -> Result<PayoffVector> {
    PreparedGame::new(spec.clone(), *model, theta)?.payoffs(profile)
}

/// A game whose noisy initial state has been computed once, so that many
/// strategy profiles can be evaluated cheaply.
#[derive(Debug, Clone)]
pub struct PreparedGame {
    spec: GameSpec,
    model: NoiseModel,
    theta: f64,
    rho_noisy: DensityMatrix,
}

impl PreparedGame {
    pub fn new(spec: GameSpec, model: NoiseModel, theta: f64) -> Result<Self> {
        let rho_noisy = apply_noise(&initial_state(spec.players(), theta)?, &model)?;
        Ok(Self {
            spec,
            model,
            theta,
            rho_noisy,
        })
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn model(&self) -> &NoiseModel {
        &self.model
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn players(&self) -> usize {
        self.spec.players()
    }

    pub fn noisy_state(&self) -> &DensityMatrix {
        &self.rho_noisy
    }

    pub fn payoffs(&self, profile: &StrategyProfile) -> Result<PayoffVector> {
        payoffs(&final_state(&self.rho_noisy, profile)?, &self.spec)
    }

    /// Payoffs for a raw parameter slice `[q, r(, s)]`.
    pub fn payoffs_at(&self, params: &[f64]) -> Result<PayoffVector> {
        self.payoffs(&StrategyProfile::from_params(self.players(), params)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ChannelKind;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn basis_state(players: usize, index: usize) -> DensityMatrix {
        let mut ket = vec![C64::new(0.0, 0.0); 1 << players];
        ket[index] = C64::new(1.0, 0.0);
        DensityMatrix::from_pure(&ket).unwrap()
    }

    fn noise(kind: ChannelKind, p: f64) -> NoiseModel {
        NoiseModel::new(kind, p).unwrap()
    }

    #[test]
    fn weight_tables_are_zero_sum() {
        assert_eq!(GameSpec::three_player().zero_sum_deviation(), 0.0);
        assert_eq!(GameSpec::four_player().zero_sum_deviation(), 0.0);
    }

    #[test]
    fn three_player_losers_are_the_odd_one_out() {
        let spec = GameSpec::three_player();
        for i in 0..8usize {
            let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
            for player in 0..3 {
                let others: Vec<_> = (0..3).filter(|&o| o != player).map(|o| bits[o]).collect();
                let w = spec.weights(player)[i];
                if bits.iter().all(|&b| b == bits[0]) {
                    assert_eq!(w, 0.0);
                } else if others[0] == others[1] {
                    assert_eq!(w, -2.0, "player {player} outcome {i:03b}");
                } else {
                    assert_eq!(w, 1.0);
                }
            }
        }
    }

    #[test]
    fn custom_weights_shape_checks() {
        assert!(GameSpec::with_weights(3, vec![vec![0.0; 8]; 3]).is_ok());
        assert!(GameSpec::with_weights(3, vec![vec![0.0; 8]; 2]).is_err());
        assert!(GameSpec::with_weights(4, vec![vec![0.0; 8]; 4]).is_err());
        assert_eq!(
            GameSpec::with_weights(5, vec![]),
            Err(Error::UnsupportedPlayers(5))
        );
        let mut bad = GameSpec::three_player();
        bad.weights[2][1] = -1.0;
        assert_eq!(bad.zero_sum_deviation(), 1.0);
    }

    #[test]
    fn initial_states() {
        let rho = initial_state(3, 0.0).unwrap();
        assert_eq!(rho.matrix(), basis_state(3, 0).matrix());

        let ghz = initial_state(3, FRAC_PI_2).unwrap();
        for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert!((ghz.matrix().get(i, j).re - 0.5).abs() < 1e-15);
        }
        assert!((1..7).all(|i| ghz.matrix().get(i, i).norm() == 0.0));

        let four = initial_state(4, FRAC_PI_3).unwrap();
        assert!((four.populations()[0] - 0.75).abs() < 1e-15);
        assert!((four.populations()[15] - 0.25).abs() < 1e-15);

        assert!(matches!(
            initial_state(3, 1.6),
            Err(Error::OutOfRange { name: "theta", .. })
        ));
        assert!(initial_state(3, -1e-9).is_err());
        assert_eq!(initial_state(2, 0.1), Err(Error::UnsupportedPlayers(2)));
    }

    #[test]
    fn strategy_operators() {
        assert_eq!(cooperator_op(1.0).unwrap(), ComplexMatrix::identity(4));
        assert_eq!(cooperator_op(0.0).unwrap(), kron(&pauli::x(), &pauli::x()));
        let half = cooperator_op(0.5).unwrap();
        let expected = ComplexMatrix::identity(4)
            .add(&kron(&pauli::x(), &pauli::x()))
            .unwrap()
            .scale_real(1.0 / 2f64.sqrt());
        assert!(half.max_abs_diff(&expected) < 1e-15);
        assert!(cooperator_op(1.5).is_err());

        assert_eq!(solo_op(1.0).unwrap(), pauli::identity());
        assert_eq!(solo_op(0.0).unwrap(), pauli::x());
        let out = solo_op(0.25)
            .unwrap()
            .apply(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
            .unwrap();
        assert!((out[0].re - 0.5).abs() < 1e-15);
        assert!((out[1].re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            solo_op(-0.1),
            Err(Error::OutOfRange { name: "x", .. })
        ));
    }

    #[test]
    fn profile_construction() {
        assert_eq!(StrategyProfile::three(0.2, 0.3).unwrap().players(), 3);
        assert_eq!(
            StrategyProfile::four(0.2, 0.3, 0.4).unwrap().params(),
            vec![0.2, 0.3, 0.4]
        );
        assert!(matches!(
            StrategyProfile::four(0.2, 0.3, 1.4),
            Err(Error::OutOfRange { name: "s", .. })
        ));
        assert!(StrategyProfile::from_params(3, &[0.1, 0.2, 0.3]).is_err());
        assert_eq!(StrategyProfile::uniform(4, 0.5).unwrap().s(), Some(0.5));
    }

    #[test]
    fn final_state_examples() {
        let rho = initial_state(3, 0.8).unwrap();
        let same = final_state(&rho, &StrategyProfile::three(1.0, 1.0).unwrap()).unwrap();
        assert!(same.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let flipped = final_state(
            &initial_state(3, 0.0).unwrap(),
            &StrategyProfile::three(1.0, 0.0).unwrap(),
        )
        .unwrap();
        assert_eq!(flipped.matrix(), basis_state(3, 1).matrix());
    }

    #[test]
    fn final_state_ghz_half_half_by_brute_force() {
        // With a = √½: U_AB|00⟩ = U_AB|11⟩ = a(|00⟩+|11⟩) and
        // U_C|0⟩ = U_C|1⟩ = a(|0⟩+|1⟩), so U|ψ⟩ ∝ (|00⟩+|11⟩)(|0⟩+|1⟩):
        // outcomes 000, 001, 110, 111 each with probability 1/4.
        let rho = initial_state(3, FRAC_PI_2).unwrap();
        let out = final_state(&rho, &StrategyProfile::three(0.5, 0.5).unwrap()).unwrap();
        let pops = out.populations();
        let expected = [0.25, 0.25, 0.0, 0.0, 0.0, 0.0, 0.25, 0.25];
        for (a, b) in pops.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{pops:?}");
        }
        let pay = payoffs(&out, &GameSpec::three_player()).unwrap();
        assert!((pay[0] - 0.5).abs() < 1e-15);
        assert!((pay[2] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_strategy_is_reported() {
        // (|00⟩ − |11⟩)/√2 ⊗ |0⟩ lies in the kernel of U_AB at q = 1/2
        let a = 0.5f64.sqrt();
        let mut ket = vec![C64::new(0.0, 0.0); 8];
        ket[0] = C64::new(a, 0.0);
        ket[6] = C64::new(-a, 0.0);
        let rho = DensityMatrix::from_pure(&ket).unwrap();
        assert!(matches!(
            final_state(&rho, &StrategyProfile::three(0.5, 0.3).unwrap()),
            Err(Error::DegenerateStrategy { .. })
        ));
    }

    #[test]
    fn payoff_examples() {
        let three = GameSpec::three_player();
        assert_eq!(
            payoffs(&basis_state(3, 0), &three).unwrap().as_slice(),
            &[0.0, 0.0, 0.0]
        );
        assert_eq!(
            payoffs(&basis_state(3, 1), &three).unwrap().as_slice(),
            &[1.0, 1.0, -2.0]
        );
        let four = GameSpec::four_player();
        assert_eq!(
            payoffs(&basis_state(4, 1), &four).unwrap().as_slice(),
            &[1.0, 1.0, 1.0, -3.0]
        );
        assert!(payoffs(&basis_state(4, 1), &three).is_err());
    }

    #[test]
    fn play_examples() {
        let three = GameSpec::three_player();
        for kind in [ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping] {
            for p in [0.0, 0.4, 1.0] {
                let pay = play(
                    &three,
                    &noise(kind, p),
                    0.0,
                    &StrategyProfile::three(1.0, 1.0).unwrap(),
                )
                .unwrap();
                assert_eq!(pay.as_slice(), &[0.0, 0.0, 0.0]);
            }
        }

        for p in [0.0, 0.3, 0.77, 1.0] {
            let pay = play(
                &three,
                &noise(ChannelKind::PhaseDamping, p),
                FRAC_PI_2,
                &StrategyProfile::three(0.5, 0.5).unwrap(),
            )
            .unwrap();
            assert!(pay.max_abs_diff(&PayoffVector::new(vec![0.5, 0.5, -1.0])) < 1e-12);
        }

        let pay = play(
            &three,
            &noise(ChannelKind::Depolarizing, 0.75),
            0.7,
            &StrategyProfile::three(0.3, 0.8).unwrap(),
        )
        .unwrap();
        assert!(pay.as_slice().iter().all(|x| x.abs() < 1e-12), "{pay:?}");
    }

    #[test]
    fn mismatched_profile_is_rejected() {
        let prepared = PreparedGame::new(
            GameSpec::four_player(),
            noise(ChannelKind::Depolarizing, 0.1),
            0.3,
        )
        .unwrap();
        assert!(matches!(
            prepared.payoffs(&StrategyProfile::three(0.5, 0.5).unwrap()),
            Err(Error::InvalidProfile(_))
        ));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(4)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::identity(3).scale_real(1.0 / 3.0)).is_err());
        let mut m = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(DensityMatrix::new(m.clone()).is_ok());
        m = m
            .add(
                &ComplexMatrix::new(
                    2,
                    2,
                    vec![
                        C64::new(0.0, 0.0),
                        C64::new(0.1, 0.0),
                        C64::new(0.0, 0.0),
                        C64::new(0.0, 0.0),
                    ],
                )
                .unwrap(),
            )
            .unwrap();
        assert!(DensityMatrix::new(m).is_err());
        let neg = ComplexMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(DensityMatrix::new(neg).is_err());
    }
}
