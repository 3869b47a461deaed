//! Cooperative three- and four-player quantum games played through noisy
//! channels.
//!
//! The numeric path is [`game::play`]: prepare a GHZ-type state, push it
//! through a product Kraus channel, apply the players' superposed strategy
//! operators, renormalize, and weight the outcome probabilities.
//! [`analytic`] holds closed-form payoffs for the same games, and
//! [`equilibrium`] searches strategy space.

pub mod analytic;
pub mod channels;
pub mod equilibrium;
mod error;
pub mod game;
pub mod qlinalg;
pub mod sweep;
pub mod verify;

#[cfg(feature = "cli")]
pub mod cli;

pub use channels::{ChannelKind, KrausSet, NoiseModel};
pub use error::{Error, Result};
pub use game::{play, DensityMatrix, GameSpec, PayoffVector, PreparedGame, StrategyProfile};
