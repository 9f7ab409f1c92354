//! Pair-counting influence measures.
//!
//! `χ_l` counts ordered pairs of rows whose profiles differ only in feature
//! `l` and whose predictions differ. `Ψ_l` is the same count restricted to
//! the subsample `M^t` of the block `t` containing `l`, and the weighted
//! variant multiplies each ordered pair by the frequency of its source row.
//! Counts are exact integers (the constant `C` is fixed to 1); dividing by
//! `|A^t|` is the separate [`normalize`] step.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::hash::Hash;

use hashbrown::HashMap;

use crate::dataset::{Dataset, FeatureSpace, State};
use crate::error::{Error, Result};
use crate::partition::{restricted_rows, restricted_space_count, DependencyModel, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Chi,
    Psi,
    WeightedPsi,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Chi => "chi",
            Measure::Psi => "psi",
            Measure::WeightedPsi => "weighted-psi",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceReport {
    pub measure: Measure,
    /// Pair counts per feature.
    pub raw: Vec<u64>,
    /// `raw_l / |A^t(l)|`, once normalized.
    pub normalized: Option<Vec<f64>>,
    pub constant_c: f64,
    pub partition: Partition,
    pub dependency: DependencyModel,
    /// `|A^t|` for every block `t`, once normalized.
    pub space_counts: Option<Vec<u128>>,
    /// Features by decreasing value (normalized if present, else raw), ties
    /// by increasing index.
    pub ranking: Vec<usize>,
}

impl InfluenceReport {
    pub fn from_raw(measure: Measure, raw: Vec<u64>, partition: Partition, dependency: DependencyModel) -> Self {
        let values: Vec<f64> = raw.iter().map(|&c| c as f64).collect();
        let ranking = rank(&values, None).into_iter().map(|(l, _)| l).collect();
        InfluenceReport {
            measure,
            raw,
            normalized: None,
            constant_c: 1.0,
            partition,
            dependency,
            space_counts: None,
            ranking,
        }
    }

    /// Normalized values if present, raw counts otherwise.
    pub fn values(&self) -> Vec<f64> {
        match &self.normalized {
            Some(v) => v.clone(),
            None => self.raw.iter().map(|&c| c as f64).collect(),
        }
    }
}

/// Sum over the given rows of `weight(i) · #{j : X^j_{-l} = X^i_{-l}, Y^j ≠ Y^i}`.
fn pair_count(d: &Dataset, rows: &[usize], l: usize, weighted: bool) -> u64 {
    let counts = d.space().state_counts();
    let widths: Vec<u32> = counts.iter().map(|&c| 32 - (c - 1).leading_zeros()).collect();
    let key_bits: u32 = widths
        .iter()
        .enumerate()
        .filter(|&(q, _)| q != l)
        .map(|(_, &w)| w)
        .sum();
    if key_bits <= 128 {
        count_groups(d, rows, weighted, |x| {
            x.iter()
                .zip(&widths)
                .enumerate()
                .filter(|&(q, _)| q != l)
                .fold(0u128, |key, (_, (&a, &w))| key << w | a as u128)
        })
    } else {
        count_groups(d, rows, weighted, |x| {
            let mut key: Vec<State> = x.to_vec();
            key[l] = 0;
            key
        })
    }
}

fn count_groups<K, F>(d: &Dataset, rows: &[usize], weighted: bool, key: F) -> u64
where
    K: Hash + Eq,
    F: Fn(&[State]) -> K,
{
    // [rows with y = 0, rows with y = 1, mass with y = 0, mass with y = 1]
    let mut groups: HashMap<K, [u64; 4]> = HashMap::with_capacity(rows.len());
    for &i in rows {
        let y = d.response(i) as usize;
        let g = groups.entry(key(d.profile(i))).or_insert([0; 4]);
        g[y] += 1;
        g[2 + y] += d.freq(i);
    }
    groups
        .values()
        .map(|g| {
            if weighted {
                g[3] * g[0] + g[2] * g[1]
            } else {
                2 * g[0] * g[1]
            }
        })
        .sum()
}

fn check_inputs(d: &Dataset, p: &Partition, dep: &DependencyModel) -> Result<()> {
    d.space().require_binary_response()?;
    if p.k() != d.k() {
        return Err(Error::NotAPartition(alloc::format!(
            "partition of {} features for a dataset with {}",
            p.k(),
            d.k()
        )));
    }
    if dep.signs().len() != d.k() {
        return Err(Error::LengthMismatch {
            left: d.k(),
            right: dep.signs().len(),
        });
    }
    Ok(())
}

/// `χ_l` over the whole sample.
pub fn chi_feature(d: &Dataset, l: usize) -> Result<u64> {
    d.space().require_binary_response()?;
    let rows: Vec<usize> = (0..d.n()).collect();
    Ok(pair_count(d, &rows, l, false))
}

/// `Ψ_l`, or `Ψ̂_l` when `weighted`.
pub fn psi_feature(d: &Dataset, p: &Partition, dep: &DependencyModel, l: usize, weighted: bool) -> Result<u64> {
    check_inputs(d, p, dep)?;
    let rows = restricted_rows(d, p, dep, p.block_of(l))?;
    Ok(pair_count(d, &rows, l, weighted))
}

fn psi_all(d: &Dataset, p: &Partition, dep: &DependencyModel, weighted: bool) -> Result<Vec<u64>> {
    check_inputs(d, p, dep)?;
    let mut raw = alloc::vec![0; d.k()];
    for t in 0..p.m() {
        let rows = restricted_rows(d, p, dep, t)?;
        for &l in p.block(t) {
            raw[l] = pair_count(d, &rows, l, weighted);
        }
    }
    Ok(raw)
}

pub fn chi(d: &Dataset) -> Result<InfluenceReport> {
    let p = Partition::singletons(d.k());
    let dep = DependencyModel::all_positive(d.k());
    let raw = psi_all(d, &p, &dep, false)?;
    Ok(InfluenceReport::from_raw(Measure::Chi, raw, p, dep))
}

pub fn psi(d: &Dataset, p: &Partition, dep: &DependencyModel) -> Result<InfluenceReport> {
    let raw = psi_all(d, p, dep, false)?;
    Ok(InfluenceReport::from_raw(Measure::Psi, raw, p.clone(), dep.anchored(p)))
}

/// `Ψ̂`: each ordered pair weighted by the frequency `n(i)` of its source
/// row only. Without frequencies this equals [`psi`].
pub fn weighted_psi(d: &Dataset, p: &Partition, dep: &DependencyModel) -> Result<InfluenceReport> {
    let raw = psi_all(d, p, dep, true)?;
    Ok(InfluenceReport::from_raw(
        Measure::WeightedPsi,
        raw,
        p.clone(),
        dep.anchored(p),
    ))
}

/// Divides every raw count by `|A^t|` of its feature's block.
pub fn normalize(
    r: &InfluenceReport,
    space: &FeatureSpace,
    p: &Partition,
    dep: &DependencyModel,
) -> Result<InfluenceReport> {
    space.require_binary_features()?;
    if p.k() != r.raw.len() {
        return Err(Error::NotAPartition("partition does not match the report".into()));
    }
    let counts = (0..p.m())
        .map(|t| restricted_space_count(space, p, dep, t))
        .collect::<Result<Vec<u128>>>()?;
    let normalized: Vec<f64> = r
        .raw
        .iter()
        .enumerate()
        .map(|(l, &c)| c as f64 / counts[p.block_of(l)] as f64)
        .collect();
    let ranking = rank(&normalized, None).into_iter().map(|(l, _)| l).collect();
    Ok(InfluenceReport {
        normalized: Some(normalized),
        space_counts: Some(counts),
        partition: p.clone(),
        dependency: dep.anchored(p),
        ranking,
        ..r.clone()
    })
}

/// `(feature, value)` by decreasing value, ties by increasing feature,
/// truncated to `top_k`.
pub fn rank(values: &[f64], top_k: Option<usize>) -> Vec<(usize, f64)> {
    let mut order: Vec<(usize, f64)> = values.iter().copied().enumerate().collect();
    order.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0)));
    if let Some(top) = top_k {
        order.truncate(top);
    }
    order
}

/// Sample Pearson correlation coefficient.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::TooShort);
    }
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - mean_a, y - mean_b);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::ConstantVector);
    }
    Ok((sab / libm::sqrt(saa * sbb)).clamp(-1.0, 1.0))
}
