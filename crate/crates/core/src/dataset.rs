//! Feature spaces and samples of `(profile, predicted response)` rows.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::hash_map::Entry;
use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::rng;

/// State code of a feature or of the response.
pub type State = u32;

/// The features `0..k`, their alphabets `0..state_counts[l]` and the
/// response alphabet `0..response_states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSpace {
    names: Vec<String>,
    state_counts: Vec<u32>,
    response_states: u32,
}

impl FeatureSpace {
    pub fn new(names: Vec<String>, state_counts: Vec<u32>, response_states: u32) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidSpace("no features".into()));
        }
        if names.len() != state_counts.len() {
            return Err(Error::InvalidSpace(format!(
                "{} names for {} features",
                names.len(),
                state_counts.len()
            )));
        }
        if let Some(l) = state_counts.iter().position(|&c| c < 2) {
            return Err(Error::InvalidSpace(format!("feature {l} has fewer than 2 states")));
        }
        if response_states < 2 {
            return Err(Error::InvalidSpace("response has fewer than 2 states".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::InvalidSpace(format!("duplicate feature name `{dup}`")));
        }
        drop(seen);
        Ok(FeatureSpace {
            names,
            state_counts,
            response_states,
        })
    }

    /// `k` binary features named `feature_0 .. feature_{k-1}` and a binary
    /// response.
    pub fn binary(k: usize) -> Self {
        let names = (0..k).map(|l| format!("feature_{l}")).collect();
        FeatureSpace::new(names, alloc::vec![2; k], 2).expect("k >= 1")
    }

    pub fn k(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_counts(&self) -> &[u32] {
        &self.state_counts
    }

    pub fn response_states(&self) -> u32 {
        self.response_states
    }

    pub fn is_binary(&self) -> bool {
        self.state_counts.iter().all(|&c| c == 2)
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn require_binary_response(&self) -> Result<()> {
        if self.response_states == 2 {
            Ok(())
        } else {
            Err(Error::NonBinaryResponse {
                states: self.response_states,
            })
        }
    }

    pub(crate) fn require_binary_features(&self) -> Result<()> {
        match self.state_counts.iter().position(|&c| c != 2) {
            None => Ok(()),
            Some(feature) => Err(Error::NonBinaryFeature { feature }),
        }
    }
}

/// A sample: distinct profiles, each with one predicted response and an
/// optional absolute frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    space: FeatureSpace,
    profiles: Vec<State>,
    responses: Vec<State>,
    freq: Option<Vec<u64>>,
}

/// Row indices split by response: `winners` have `y = 1`, `losers` `y = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WlView {
    pub winners: Vec<usize>,
    pub losers: Vec<usize>,
}

impl Dataset {
    /// Builds a dataset from distinct profiles. `freq`, when given, must have
    /// one positive entry per row.
    pub fn new(space: FeatureSpace, rows: Vec<(Vec<State>, State)>, freq: Option<Vec<u64>>) -> Result<Self> {
        let k = space.k();
        if let Some(f) = &freq {
            if f.len() != rows.len() {
                return Err(Error::LengthMismatch {
                    left: rows.len(),
                    right: f.len(),
                });
            }
            if let Some(row) = f.iter().position(|&c| c == 0) {
                return Err(Error::InvalidRow {
                    row,
                    reason: "frequency must be at least 1".into(),
                });
            }
        }
        let mut profiles = Vec::with_capacity(rows.len() * k);
        let mut responses = Vec::with_capacity(rows.len());
        for (row, (x, y)) in rows.into_iter().enumerate() {
            check_row(&space, row, &x, y)?;
            profiles.extend_from_slice(&x);
            responses.push(y);
        }
        let d = Dataset {
            space,
            profiles,
            responses,
            freq,
        };
        if let Some(row) = first_duplicate(&d) {
            return Err(Error::DuplicateProfile { row });
        }
        Ok(d)
    }

    /// Builds a dataset from raw observations, merging repeated profiles into
    /// frequencies. Profiles keep the order of their first appearance. The
    /// result carries frequencies only if some profile repeats.
    pub fn from_observations<I>(space: FeatureSpace, observations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<State>, State)>,
    {
        Self::from_weighted_observations(space, observations.into_iter().map(|(x, y)| (x, y, 1)))
    }

    /// Like [`Dataset::from_observations`] with an explicit count per
    /// observation; the result always carries frequencies if any count
    /// differs from 1.
    pub fn from_weighted_observations<I>(space: FeatureSpace, observations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<State>, State, u64)>,
    {
        let mut index: HashMap<Vec<State>, usize> = HashMap::new();
        let mut profiles = Vec::new();
        let mut responses = Vec::new();
        let mut freq: Vec<u64> = Vec::new();
        for (row, (x, y, count)) in observations.into_iter().enumerate() {
            check_row(&space, row, &x, y)?;
            if count == 0 {
                return Err(Error::InvalidRow {
                    row,
                    reason: "frequency must be at least 1".into(),
                });
            }
            match index.entry(x) {
                Entry::Occupied(e) => {
                    let i = *e.get();
                    if responses[i] != y {
                        return Err(Error::ConflictingLabel { row });
                    }
                    freq[i] += count;
                }
                Entry::Vacant(e) => {
                    profiles.extend_from_slice(e.key());
                    e.insert(responses.len());
                    responses.push(y);
                    freq.push(count);
                }
            }
        }
        if responses.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let freq = if freq.iter().all(|&c| c == 1) { None } else { Some(freq) };
        Ok(Dataset {
            space,
            profiles,
            responses,
            freq,
        })
    }

    pub fn space(&self) -> &FeatureSpace {
        &self.space
    }

    pub fn k(&self) -> usize {
        self.space.k()
    }

    /// Number of distinct profiles.
    pub fn n(&self) -> usize {
        self.responses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.responses.is_empty()
    }

    pub fn profile(&self, row: usize) -> &[State] {
        let k = self.k();
        &self.profiles[row * k..(row + 1) * k]
    }

    pub fn response(&self, row: usize) -> State {
        self.responses[row]
    }

    pub fn responses(&self) -> &[State] {
        &self.responses
    }

    pub fn frequencies(&self) -> Option<&[u64]> {
        self.freq.as_deref()
    }

    /// `n(i)`, 1 when the dataset carries no frequencies.
    pub fn freq(&self, row: usize) -> u64 {
        self.freq.as_ref().map_or(1, |f| f[row])
    }

    /// Total number of observations, `Σ n(i)`.
    pub fn total_mass(&self) -> u64 {
        self.freq.as_ref().map_or(self.n() as u64, |f| f.iter().sum())
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = (&[State], State)> + '_ {
        (0..self.n()).map(move |i| (self.profile(i), self.response(i)))
    }

    /// Same rows with frequencies dropped (every `n(i) = 1`).
    pub fn without_frequencies(&self) -> Dataset {
        Dataset {
            freq: None,
            ..self.clone()
        }
    }

    /// The sub-dataset of the given rows, in the given order.
    pub fn select(&self, rows: &[usize]) -> Dataset {
        let k = self.k();
        let mut profiles = Vec::with_capacity(rows.len() * k);
        let mut responses = Vec::with_capacity(rows.len());
        for &i in rows {
            profiles.extend_from_slice(self.profile(i));
            responses.push(self.response(i));
        }
        Dataset {
            space: self.space.clone(),
            profiles,
            responses,
            freq: self.freq.as_ref().map(|f| rows.iter().map(|&i| f[i]).collect()),
        }
    }

    /// Splits rows into those predicted 1 and those predicted 0.
    pub fn wl_view(&self) -> Result<WlView> {
        self.space.require_binary_response()?;
        let (winners, losers) = (0..self.n()).partition(|&i| self.response(i) == 1);
        Ok(WlView { winners, losers })
    }

    /// Maps every value of feature `l` through the bijection `tau`
    /// (`tau[a]` is the new code of state `a`).
    pub fn relabel_states(&self, l: usize, tau: &[State]) -> Result<Dataset> {
        if l >= self.k() {
            return Err(Error::UnknownFeature(format!("{l}")));
        }
        check_bijection(tau, self.space.state_counts[l] as usize)?;
        let k = self.k();
        let mut out = self.clone();
        for row in out.profiles.chunks_exact_mut(k) {
            row[l] = tau[row[l] as usize];
        }
        Ok(out)
    }

    /// Moves column `l` to column `sigma[l]`, together with its name and
    /// alphabet.
    pub fn permute_features(&self, sigma: &[usize]) -> Result<Dataset> {
        let k = self.k();
        let sigma32: Vec<State> = sigma.iter().map(|&s| s as State).collect();
        if sigma.iter().any(|&s| s > State::MAX as usize) {
            return Err(Error::NotABijection("index out of range".into()));
        }
        check_bijection(&sigma32, k)?;
        let mut names = alloc::vec![String::new(); k];
        let mut counts = alloc::vec![0; k];
        for l in 0..k {
            names[sigma[l]] = self.space.names[l].clone();
            counts[sigma[l]] = self.space.state_counts[l];
        }
        let mut profiles = alloc::vec![0; self.profiles.len()];
        for (src, dst) in self.profiles.chunks_exact(k).zip(profiles.chunks_exact_mut(k)) {
            for l in 0..k {
                dst[sigma[l]] = src[l];
            }
        }
        Ok(Dataset {
            space: FeatureSpace {
                names,
                state_counts: counts,
                response_states: self.space.response_states,
            },
            profiles,
            responses: self.responses.clone(),
            freq: self.freq.clone(),
        })
    }

    /// Draws, without replacement, `per_class` observations predicted 1 and
    /// `per_class` predicted 0, counting frequency mass. Rows of the result
    /// keep their original order; repeated draws of a profile become its
    /// frequency.
    pub fn balanced_subsample(&self, per_class: u64, seed: u64) -> Result<Dataset> {
        self.space.require_binary_response()?;
        let mut rng = rng::generator(seed);
        let mut drawn = alloc::vec![0u64; self.n()];
        for class in [1, 0] {
            let rows: Vec<usize> = (0..self.n()).filter(|&i| self.response(i) == class).collect();
            let available: u64 = rows.iter().map(|&i| self.freq(i)).sum();
            if available < per_class {
                return Err(Error::InsufficientClassMass {
                    class,
                    available,
                    requested: per_class,
                });
            }
            // one unit per observation, then a partial Fisher-Yates shuffle
            let mut units: Vec<usize> = Vec::with_capacity(available as usize);
            for &i in &rows {
                units.extend(core::iter::repeat_n(i, self.freq(i) as usize));
            }
            for j in 0..per_class as usize {
                let pick = j + rng::below(&mut rng, (units.len() - j) as u64) as usize;
                units.swap(j, pick);
                drawn[units[j]] += 1;
            }
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&i| drawn[i] > 0).collect();
        let mut out = self.select(&keep);
        let counts: Vec<u64> = keep.iter().map(|&i| drawn[i]).collect();
        out.freq = if counts.iter().all(|&c| c == 1) {
            None
        } else {
            Some(counts)
        };
        Ok(out)
    }
}

fn first_duplicate(d: &Dataset) -> Option<usize> {
    let mut seen = HashSet::with_capacity(d.n());
    (0..d.n()).find(|&row| !seen.insert(d.profile(row)))
}

fn check_row(space: &FeatureSpace, row: usize, x: &[State], y: State) -> Result<()> {
    if x.len() != space.k() {
        return Err(Error::InvalidRow {
            row,
            reason: format!("expected {} features, got {}", space.k(), x.len()),
        });
    }
    if let Some(l) = (0..x.len()).find(|&l| x[l] >= space.state_counts[l]) {
        return Err(Error::InvalidRow {
            row,
            reason: format!("state {} of feature {l} out of range", x[l]),
        });
    }
    if y >= space.response_states {
        return Err(Error::InvalidRow {
            row,
            reason: format!("response {y} out of range"),
        });
    }
    Ok(())
}

fn check_bijection(map: &[State], size: usize) -> Result<()> {
    if map.len() != size {
        return Err(Error::NotABijection(format!(
            "has {} entries for a set of {size}",
            map.len()
        )));
    }
    let mut hit = alloc::vec![false; size];
    for &a in map {
        let a = a as usize;
        if a >= size || core::mem::replace(&mut hit[a], true) {
            return Err(Error::NotABijection(format!("image {a} repeated or out of range")));
        }
    }
    Ok(())
}
