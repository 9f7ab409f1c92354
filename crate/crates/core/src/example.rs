//! The four-feature example: a sample labelled 1 exactly on the profiles
//! 0011, 1110, 1011, 0111 and 1111 (feature 0 written first), which is the
//! weighted majority game with weights (1, 1, 4, 3) and quota 6, together
//! with its Banzhaf-Owen value under each of the 15 partitions of four
//! features.

use alloc::vec::Vec;

use crate::dataset::{Dataset, FeatureSpace};
use crate::games::Game;
use crate::partition::Partition;

pub const WEIGHTS: [f64; 4] = [1.0, 1.0, 4.0, 3.0];
pub const QUOTA: f64 = 6.0;

/// Profiles predicted 1, as written `X_1 X_2 X_3 X_4`.
pub const WINNING_PROFILES: [&str; 5] = ["0011", "1110", "1011", "0111", "1111"];

pub struct Scenario {
    pub number: usize,
    /// Zero-based blocks.
    pub blocks: &'static [&'static [usize]],
    pub expected: [f64; 4],
}

#[rustfmt::skip]
pub const TABLE: [Scenario; 15] = [
    Scenario { number: 1, blocks: &[&[0], &[1], &[2], &[3]], expected: [0.125, 0.125, 0.625, 0.375] },
    Scenario { number: 2, blocks: &[&[0], &[1], &[2, 3]], expected: [0.000, 0.000, 0.625, 0.375] },
    Scenario { number: 3, blocks: &[&[0], &[2], &[1, 3]], expected: [0.000, 0.125, 0.500, 0.375] },
    Scenario { number: 4, blocks: &[&[0], &[3], &[1, 2]], expected: [0.250, 0.125, 0.625, 0.250] },
    Scenario { number: 5, blocks: &[&[1], &[2], &[0, 3]], expected: [0.125, 0.000, 0.500, 0.375] },
    Scenario { number: 6, blocks: &[&[1], &[3], &[0, 2]], expected: [0.125, 0.250, 0.625, 0.250] },
    Scenario { number: 7, blocks: &[&[2], &[3], &[0, 1]], expected: [0.125, 0.125, 0.750, 0.250] },
    Scenario { number: 8, blocks: &[&[0, 1], &[2, 3]], expected: [0.000, 0.000, 0.750, 0.250] },
    Scenario { number: 9, blocks: &[&[0, 2], &[1, 3]], expected: [0.000, 0.250, 0.500, 0.250] },
    Scenario { number: 10, blocks: &[&[0, 3], &[1, 2]], expected: [0.250, 0.000, 0.500, 0.250] },
    Scenario { number: 11, blocks: &[&[0], &[1, 2, 3]], expected: [0.000, 0.125, 0.625, 0.375] },
    Scenario { number: 12, blocks: &[&[1], &[0, 2, 3]], expected: [0.125, 0.000, 0.625, 0.375] },
    Scenario { number: 13, blocks: &[&[2], &[0, 1, 3]], expected: [0.125, 0.125, 0.500, 0.375] },
    Scenario { number: 14, blocks: &[&[3], &[0, 1, 2]], expected: [0.125, 0.125, 0.625, 0.000] },
    Scenario { number: 15, blocks: &[&[0, 1, 2, 3]], expected: [0.125, 0.125, 0.625, 0.375] },
];

impl Scenario {
    pub fn partition(&self) -> Partition {
        Partition::new(4, self.blocks.iter().map(|b| b.to_vec()).collect()).expect("valid")
    }
}

pub fn game() -> Game {
    Game::weighted_majority(WEIGHTS.to_vec(), QUOTA).expect("valid")
}

/// All 16 profiles, row `mask` having feature `l` equal to bit `l` of
/// `mask`.
pub fn dataset() -> Dataset {
    let rows: Vec<(Vec<u32>, u32)> = (0..16u32)
        .map(|mask| {
            let x: Vec<u32> = (0..4).map(|l| mask >> l & 1).collect();
            let written: alloc::string::String = x.iter().map(|&a| if a == 1 { '1' } else { '0' }).collect();
            let y = WINNING_PROFILES.contains(&written.as_str()) as u32;
            (x, y)
        })
        .collect();
    Dataset::new(FeatureSpace::binary(4), rows, None).expect("valid")
}
