//! Game-theoretic influence measures for features of binary classification
//! data, with support for a-priori unions (groups of dependent features).
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! tool and anything touching the filesystem live in the `apriori-influence`
//! companion crate.
//!
//! Modules:
//!
//! * [`dataset`]: feature spaces, samples of `(profile, prediction)` rows with
//!   optional frequencies, relabelings and seeded balanced subsampling.
//! * [`partition`]: unions over features, dependency models, the restricted
//!   subsample of a union and Jaccard-based hierarchical clustering.
//! * [`games`]: TU games backed by a value table or a weighted majority rule,
//!   and the correspondence between full-coverage samples and 0/1 games.
//! * [`indices`]: exact Banzhaf and Banzhaf-Owen values plus a Monte-Carlo
//!   Banzhaf-Owen estimator.
//! * [`influence`]: the pair-counting measures χ, Ψ and the frequency
//!   weighted Ψ̂, normalization, ranking and Pearson comparison.
//! * [`axioms`]: executable checks of the characterizing properties.
//! * [`oracle`]: slow reference implementations used to cross-check the
//!   production paths.
//! * [`example`]: the four-feature weighted majority example and its
//!   fifteen-partition golden table.

#![no_std]

extern crate alloc;

pub mod axioms;
pub mod coalition;
pub mod dataset;
mod error;
pub mod example;
pub mod games;
pub mod indices;
pub mod influence;
pub mod oracle;
pub mod partition;
pub mod rng;

pub use crate::dataset::{Dataset, FeatureSpace, WlView};
pub use crate::error::{Error, Result};
pub use crate::games::{Game, DEFAULT_ENUMERATION_BOUND};
pub use crate::indices::{IndexMethod, IndexVector};
pub use crate::influence::{InfluenceReport, Measure};
pub use crate::partition::{DependencyModel, Linkage, Partition, Sign};
