//! TU games on the feature set.

use alloc::borrow::Cow;
use alloc::format;
use alloc::vec::Vec;

use crate::coalition::Coalition;
use crate::dataset::{Dataset, FeatureSpace};
use crate::error::{Error, Result};

/// Largest player count for which a value table is materialized.
pub const DEFAULT_ENUMERATION_BOUND: u32 = 24;

/// Coalitions are bitmasks, so no game has more players than this.
pub const MAX_PLAYERS: usize = 63;

#[derive(Debug, Clone, PartialEq)]
pub enum Game {
    /// `values[mask]` is the worth of the coalition `mask`.
    Table { k: usize, values: Vec<f64> },
    /// `v(R) = 1` iff the weights of `R` sum to at least `quota`.
    WeightedMajority { weights: Vec<f64>, quota: f64 },
}

impl Game {
    pub fn table(values: Vec<f64>) -> Result<Game> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidGame(format!("table length {len} is not 2^k for k >= 1")));
        }
        let k = len.trailing_zeros() as usize;
        if k > MAX_PLAYERS {
            return Err(Error::InvalidGame(format!("{k} players")));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidGame("v(empty set) must be 0".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGame("non-finite worth".into()));
        }
        Ok(Game::Table { k, values })
    }

    pub fn weighted_majority(weights: Vec<f64>, quota: f64) -> Result<Game> {
        if weights.is_empty() || weights.len() > MAX_PLAYERS {
            return Err(Error::InvalidGame(format!("{} players", weights.len())));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidGame("weights must be finite and non-negative".into()));
        }
        if !(quota.is_finite() && quota > 0.0) {
            return Err(Error::InvalidGame("quota must be positive".into()));
        }
        Ok(Game::WeightedMajority { weights, quota })
    }

    pub fn k(&self) -> usize {
        match self {
            Game::Table { k, .. } => *k,
            Game::WeightedMajority { weights, .. } => weights.len(),
        }
    }

    #[inline]
    pub fn evaluate(&self, coalition: Coalition) -> f64 {
        match self {
            Game::Table { values, .. } => values[coalition.0 as usize],
            Game::WeightedMajority { weights, quota } => {
                let sum: f64 = coalition.players().map(|l| weights[l]).sum();
                if sum >= *quota {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Worth of the coalition given as a list of players.
    pub fn evaluate_players(&self, players: &[usize]) -> f64 {
        self.evaluate(Coalition::from_players(players.iter().copied()))
    }

    /// The value table in mask order, borrowing it for table games.
    pub fn values(&self, bound: u32) -> Result<Cow<'_, [f64]>> {
        let k = self.k();
        if k > bound as usize {
            return Err(Error::EnumerationBoundExceeded { players: k, bound });
        }
        Ok(match self {
            Game::Table { values, .. } => Cow::Borrowed(values),
            Game::WeightedMajority { .. } => {
                Cow::Owned(Coalition::full(k).subsets().map(|c| self.evaluate(c)).collect())
            }
        })
    }

    /// Table-backed copy of the game.
    pub fn materialize(&self, bound: u32) -> Result<Game> {
        Ok(Game::Table {
            k: self.k(),
            values: self.values(bound)?.into_owned(),
        })
    }

    /// Monotone, 0/1-valued and `v(K) = 1`.
    pub fn is_simple(&self) -> bool {
        match self {
            Game::WeightedMajority { weights, quota } => weights.iter().sum::<f64>() >= *quota,
            Game::Table { k, values } => {
                values.iter().all(|&v| v == 0.0 || v == 1.0)
                    && values[values.len() - 1] == 1.0
                    && (0..values.len())
                        .all(|mask| (0..*k).all(|l| mask >> l & 1 == 1 || values[mask] <= values[mask | 1 << l]))
            }
        }
    }

    pub fn is_zero_one(&self) -> bool {
        match self {
            Game::WeightedMajority { .. } => true,
            Game::Table { values, .. } => values.iter().all(|&v| v == 0.0 || v == 1.0),
        }
    }
}

/// The game `v(R) = y(profile with ones exactly on R)` of a sample that
/// contains every binary profile.
pub fn game_from_sample(d: &Dataset) -> Result<Game> {
    game_from_sample_bounded(d, DEFAULT_ENUMERATION_BOUND)
}

pub fn game_from_sample_bounded(d: &Dataset, bound: u32) -> Result<Game> {
    d.space().require_binary_features()?;
    d.space().require_binary_response()?;
    let k = d.k();
    if k > bound as usize || k > MAX_PLAYERS {
        return Err(Error::EnumerationBoundExceeded { players: k, bound });
    }
    let size = 1usize << k;
    let mut values = alloc::vec![f64::NAN; size];
    for (x, y) in d.rows() {
        let mask = x.iter().enumerate().fold(0usize, |m, (l, &a)| m | (a as usize) << l);
        values[mask] = y as f64;
    }
    let missing = values.iter().filter(|v| v.is_nan()).count();
    if missing > 0 {
        return Err(Error::IncompleteCoverage { missing });
    }
    if values[0] != 0.0 {
        return Err(Error::NonZeroEmpty);
    }
    Ok(Game::Table { k, values })
}

/// The full-coverage binary sample of a 0/1 game, rows in mask order.
pub fn sample_from_game(g: &Game, bound: u32) -> Result<Dataset> {
    let values = g.values(bound)?;
    if !values.iter().all(|&v| v == 0.0 || v == 1.0) {
        return Err(Error::NotZeroOne);
    }
    let k = g.k();
    let rows = values
        .iter()
        .enumerate()
        .map(|(mask, &v)| ((0..k).map(|l| (mask >> l & 1) as u32).collect::<Vec<_>>(), v as u32))
        .collect();
    Dataset::new(FeatureSpace::binary(k), rows, None)
}
